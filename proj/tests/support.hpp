#ifndef MONOLAB_TESTS_SUPPORT_HPP
#define MONOLAB_TESTS_SUPPORT_HPP

// Test-only helpers. The eigenvalue oracle here goes through the
// characteristic polynomial and Durand-Kerner roots, deliberately sharing
// nothing with the Jacobi path it cross-checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "monolab/complex_matrix.hpp"
#include "monolab/pure_state.hpp"
#include "monolab/rng.hpp"

namespace monolab::testing {

inline ComplexMatrix random_matrix(int n, std::mt19937_64& rng) {
    ComplexMatrix m(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = standard_complex_normal(rng);
    return m;
}

// Gram-Schmidt on the columns of a random complex matrix.
inline ComplexMatrix random_unitary(int n, std::mt19937_64& rng) {
    ComplexMatrix m = random_matrix(n, rng);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) {
            Complex proj{0.0, 0.0};
            for (int i = 0; i < n; ++i) proj += std::conj(m(i, k)) * m(i, j);
            for (int i = 0; i < n; ++i) m(i, j) -= proj * m(i, k);
        }
        double norm2 = 0.0;
        for (int i = 0; i < n; ++i) norm2 += std::norm(m(i, j));
        const double inv = 1.0 / std::sqrt(norm2);
        for (int i = 0; i < n; ++i) m(i, j) *= inv;
    }
    return m;
}

inline ComplexMatrix random_hermitian(int n, std::mt19937_64& rng) {
    const ComplexMatrix m = random_matrix(n, rng);
    ComplexMatrix h(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) h(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
    return h;
}

inline std::vector<Complex> random_amplitudes(int dim, std::mt19937_64& rng) {
    std::vector<Complex> v(dim);
    double norm2 = 0.0;
    for (auto& a : v) {
        a = standard_complex_normal(rng);
        norm2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : v) a *= inv;
    return v;
}

// Mixture of `rank` random pure states with random weights.
inline ComplexMatrix random_density(int dim, int rank, std::mt19937_64& rng) {
    std::vector<double> weights(rank);
    double total = 0.0;
    for (auto& w : weights) {
        w = uniform01(rng) + 0.1;
        total += w;
    }
    ComplexMatrix rho(dim);
    for (int k = 0; k < rank; ++k) {
        const auto psi = random_amplitudes(dim, rng);
        const double w = weights[k] / total;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) rho(i, j) += w * psi[i] * std::conj(psi[j]);
    }
    return rho;
}

// Characteristic polynomial coefficients via Faddeev-LeVerrier:
// p(x) = x^n + c[0] x^(n-1) + ... + c[n-1].
inline std::vector<Complex> charpoly_coefficients(const ComplexMatrix& a) {
    const int n = a.dim();
    std::vector<Complex> c(n);
    ComplexMatrix m = a;
    c[0] = -m.trace();
    for (int k = 2; k <= n; ++k) {
        ComplexMatrix shifted = m;
        for (int i = 0; i < n; ++i) shifted(i, i) += c[k - 2];
        m = a * shifted;
        c[k - 1] = -m.trace() / static_cast<double>(k);
    }
    return c;
}

// Durand-Kerner roots of the monic polynomial defined by `c`.
inline std::vector<Complex> polynomial_roots(const std::vector<Complex>& c) {
    const int n = static_cast<int>(c.size());
    const auto eval = [&](Complex x) {
        Complex p{1.0, 0.0};
        for (int k = 0; k < n; ++k) p = p * x + c[k];
        return p;
    };
    std::vector<Complex> z(n);
    const Complex base{0.4, 0.9};
    z[0] = base;
    for (int k = 1; k < n; ++k) z[k] = z[k - 1] * base;
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0.0;
        for (int k = 0; k < n; ++k) {
            Complex denom{1.0, 0.0};
            for (int j = 0; j < n; ++j) {
                if (j != k) denom *= z[k] - z[j];
            }
            const Complex delta = eval(z[k]) / denom;
            z[k] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }
    return z;
}

// Decreasing real eigenvalues of a Hermitian matrix through the
// characteristic polynomial. Accurate to ~1e-9 on well-scaled inputs.
inline std::vector<double> eigenvalues_via_charpoly(const ComplexMatrix& h) {
    const auto roots = polynomial_roots(charpoly_coefficients(h));
    std::vector<double> values;
    values.reserve(roots.size());
    for (const auto& r : roots) values.push_back(r.real());
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
}

}  // namespace monolab::testing

#endif
