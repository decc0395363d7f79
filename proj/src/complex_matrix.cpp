#include "monolab/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace monolab {

ComplexMatrix::ComplexMatrix(int dim) {
    if (dim < 1) {
        throw ArgumentError("ComplexMatrix: dimension must be positive");
    }
    if (dim > kMaxDimension) {
        throw CapacityError("ComplexMatrix: dimension exceeds the 256 cap");
    }
    dim_ = dim;
    a_.assign(static_cast<std::size_t>(dim) * dim, Complex{0.0, 0.0});
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
    const int n = static_cast<int>(rows.size());
    ComplexMatrix m(n);
    int r = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n) {
            throw ArgumentError("ComplexMatrix::from_rows: ragged rows");
        }
        int c = 0;
        for (const Complex& v : row) m(r, c++) = v;
        ++r;
    }
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (dim_ != o.dim_) throw ArgumentError("matrix dimension mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (dim_ != o.dim_) throw ArgumentError("matrix dimension mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& v : a_) v *= s;
    return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix m(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) m(r, c) = std::conj((*this)(r, c));
    return m;
}

Complex ComplexMatrix::trace() const {
    Complex t{0.0, 0.0};
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    for (int r = 0; r < dim_; ++r) {
        for (int c = r; c < dim_; ++c) {
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
        }
    }
    return true;
}

void ComplexMatrix::check_density(double tol) const {
    if (dim_ == 0) throw ArgumentError("density check: empty matrix");
    for (const auto& v : a_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw ArgumentError("density check: non-finite entry");
        }
    }
    if (!is_hermitian(tol)) throw ArgumentError("density check: not Hermitian");
    if (std::abs(trace() - Complex{1.0, 0.0}) > tol) {
        throw ArgumentError("density check: trace differs from 1");
    }
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw ArgumentError("matrix dimension mismatch");
    const int n = a.dim();
    ComplexMatrix m(n);
    for (int r = 0; r < n; ++r) {
        for (int k = 0; k < n; ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex{0.0, 0.0}) continue;
            for (int c = 0; c < n; ++c) m(r, c) += ark * b(k, c);
        }
    }
    return m;
}

ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw ArgumentError("matrix dimension mismatch");
    double m = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
    return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const long dim = static_cast<long>(a.dim()) * b.dim();
    if (dim > kMaxDimension) {
        throw CapacityError("kron: result exceeds the 256-dimensional cap");
    }
    ComplexMatrix m(static_cast<int>(dim));
    for (int ar = 0; ar < a.dim(); ++ar)
        for (int ac = 0; ac < a.dim(); ++ac) {
            const Complex v = a(ar, ac);
            if (v == Complex{0.0, 0.0}) continue;
            for (int br = 0; br < b.dim(); ++br)
                for (int bc = 0; bc < b.dim(); ++bc) {
                    m(ar * b.dim() + br, ac * b.dim() + bc) = v * b(br, bc);
                }
        }
    return m;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const QubitRegister& reg,
                            std::span<const std::string> keep) {
    const int n = reg.size();
    if (rho.dim() != static_cast<int>(reg.dimension())) {
        throw ArgumentError("partial_trace: matrix dimension does not match register");
    }
    if (keep.empty()) throw ArgumentError("partial_trace: keep set is empty");

    std::vector<int> keep_bits;
    keep_bits.reserve(keep.size());
    for (const auto& label : keep) {
        keep_bits.push_back(reg.bit(label));  // LabelError for unknown labels
    }
    for (std::size_t i = 0; i < keep_bits.size(); ++i)
        for (std::size_t j = i + 1; j < keep_bits.size(); ++j)
            if (keep_bits[i] == keep_bits[j]) {
                throw ArgumentError("partial_trace: duplicate label in keep set");
            }

    std::vector<int> traced_bits;
    for (int b = n - 1; b >= 0; --b) {
        if (std::find(keep_bits.begin(), keep_bits.end(), b) == keep_bits.end()) {
            traced_bits.push_back(b);
        }
    }

    const int k = static_cast<int>(keep_bits.size());
    const std::size_t out_dim = std::size_t{1} << k;
    const std::size_t env_dim = std::size_t{1} << traced_bits.size();

    // `keep` order defines the output ordering, most significant bit first.
    auto assemble = [&](std::size_t out_index, std::size_t env_index) {
        std::size_t full = 0;
        for (int j = 0; j < k; ++j) {
            if ((out_index >> (k - 1 - j)) & 1u) full |= std::size_t{1} << keep_bits[j];
        }
        for (std::size_t e = 0; e < traced_bits.size(); ++e) {
            if ((env_index >> e) & 1u) full |= std::size_t{1} << traced_bits[e];
        }
        return full;
    };

    ComplexMatrix out(static_cast<int>(out_dim));
    for (std::size_t i = 0; i < out_dim; ++i) {
        for (std::size_t j = 0; j < out_dim; ++j) {
            Complex sum{0.0, 0.0};
            for (std::size_t e = 0; e < env_dim; ++e) {
                sum += rho(static_cast<int>(assemble(i, e)), static_cast<int>(assemble(j, e)));
            }
            out(static_cast<int>(i), static_cast<int>(j)) = sum;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const QubitRegister& reg,
                            std::initializer_list<std::string> keep) {
    const std::vector<std::string> k(keep);
    return partial_trace(rho, reg, std::span<const std::string>(k));
}

namespace {

double off_diagonal_frobenius(const ComplexMatrix& a) {
    double s = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

// One complex Jacobi rotation on the (p, q) plane: A <- G^dag A G with
//   G = [[c, -s], [s e^{-i phi}, c e^{-i phi}]],  a_pq = |a_pq| e^{i phi},
// which zeroes A(p, q). V accumulates the product of rotations.
void rotate(ComplexMatrix& a, ComplexMatrix& v, int p, int q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const Complex phase = apq / mag;

    const double tau = (app - aqq) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const Complex gqp = s * std::conj(phase);
    const Complex gqq = c * std::conj(phase);

    const int n = a.dim();
    for (int i = 0; i < n; ++i) {  // A <- A G, V <- V G
        const Complex colp = a(i, p), colq = a(i, q);
        a(i, p) = c * colp + gqp * colq;
        a(i, q) = -s * colp + gqq * colq;
        const Complex vp = v(i, p), vq = v(i, q);
        v(i, p) = c * vp + gqp * vq;
        v(i, q) = -s * vp + gqq * vq;
    }
    const Complex hpq = std::conj(gqp);  // s e^{i phi}
    const Complex hqq = std::conj(gqq);
    for (int j = 0; j < n; ++j) {  // A <- G^dag A
        const Complex rowp = a(p, j), rowq = a(q, j);
        a(p, j) = c * rowp + hpq * rowq;
        a(q, j) = -s * rowp + hqq * rowq;
    }
    a(p, q) = Complex{0.0, 0.0};
    a(q, p) = Complex{0.0, 0.0};
    a(p, p) = Complex{a(p, p).real(), 0.0};
    a(q, q) = Complex{a(q, q).real(), 0.0};
}

}  // namespace

EigenSystem hermitian_eigensystem(const ComplexMatrix& h) {
    const int n = h.dim();
    if (n == 0) throw ArgumentError("hermitian_eigensystem: empty matrix");
    if (!h.is_hermitian(kHermiticityTol)) {
        throw ArgumentError("hermitian_eigensystem: input not Hermitian within 1e-9");
    }

    ComplexMatrix a(n);
    for (int r = 0; r < n; ++r) {        // symmetrize away sub-tolerance noise
        a(r, r) = Complex{h(r, r).real(), 0.0};
        for (int c = r + 1; c < n; ++c) {
            const Complex m = 0.5 * (h(r, c) + std::conj(h(c, r)));
            a(r, c) = m;
            a(c, r) = std::conj(m);
        }
    }

    ComplexMatrix v = ComplexMatrix::identity(n);
    bool converged = (n == 1) || off_diagonal_frobenius(a) <= kJacobiOffTol;
    for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) rotate(a, v, p, q);
        converged = off_diagonal_frobenius(a) <= kJacobiOffTol;
    }
    if (!converged) {
        throw NumericError("hermitian_eigensystem: Jacobi sweep cap reached");
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    EigenSystem sys;
    sys.values.resize(n);
    sys.vectors = ComplexMatrix(n);
    for (int k = 0; k < n; ++k) {
        sys.values[k] = a(order[k], order[k]).real();
        for (int i = 0; i < n; ++i) sys.vectors(i, k) = v(i, order[k]);
    }
    return sys;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
    return hermitian_eigensystem(h).values;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& rho) {
    EigenSystem sys = hermitian_eigensystem(rho);
    const int n = rho.dim();
    std::vector<double> roots(n);
    for (int k = 0; k < n; ++k) {
        if (sys.values[k] < -kPsdClampTol) {
            throw ArgumentError("psd_sqrt: eigenvalue below -1e-12, input not PSD");
        }
        // Everything inside the clamp window counts as an exact zero; a noise
        // eigenvalue of 1e-16 would otherwise surface as 1e-8 in the root.
        roots[k] = sys.values[k] <= kPsdClampTol ? 0.0 : std::sqrt(sys.values[k]);
    }
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Complex sum{0.0, 0.0};
            for (int k = 0; k < n; ++k) {
                sum += sys.vectors(i, k) * roots[k] * std::conj(sys.vectors(j, k));
            }
            out(i, j) = sum;
        }
    return out;
}

int rank_estimate(const ComplexMatrix& rho, double tol) {
    const auto values = hermitian_eigenvalues(rho);
    int rank = 0;
    for (double v : values) {
        if (v > tol) ++rank;
    }
    return rank;
}

}  // namespace monolab
