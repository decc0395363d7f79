#ifndef MONOLAB_COMPLEX_MATRIX_HPP
#define MONOLAB_COMPLEX_MATRIX_HPP

#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "monolab/errors.hpp"
#include "monolab/qubit_register.hpp"

namespace monolab {

using Complex = std::complex<double>;

inline constexpr int kMaxDimension = 256;          // 8-qubit register cap
inline constexpr double kHermiticityTol = 1e-9;    // density-operator validation
inline constexpr double kPsdClampTol = 1e-12;      // eigenvalues above -tol clamp to 0
inline constexpr double kJacobiOffTol = 1e-13;     // off-diagonal Frobenius target
inline constexpr int kJacobiMaxSweeps = 100;

// Dense square complex matrix, sized for registers of at most 8 qubits.
// Row-major storage; all operations return by value.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim);
    static ComplexMatrix identity(int dim);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    int dim() const { return dim_; }
    Complex& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
    const Complex& operator()(int r, int c) const {
        return a_[static_cast<std::size_t>(r) * dim_ + c];
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(Complex s);

    ComplexMatrix adjoint() const;
    ComplexMatrix conjugate() const;
    Complex trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    bool is_hermitian(double tol) const;
    // Throws ArgumentError unless Hermitian and unit-trace within `tol`.
    void check_density(double tol = kHermiticityTol) const;

    std::span<const Complex> data() const { return a_; }

  private:
    int dim_ = 0;
    std::vector<Complex> a_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Kronecker product with a's indices major. Rejects results beyond 256 dims.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace out every register qubit not listed in `keep`; the result is ordered
// by `keep`, most significant first.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const QubitRegister& reg,
                            std::span<const std::string> keep);
ComplexMatrix partial_trace(const ComplexMatrix& rho, const QubitRegister& reg,
                            std::initializer_list<std::string> keep);

// Eigenvalues sorted decreasing; vectors(:,k) is the k-th eigenvector.
struct EigenSystem {
    std::vector<double> values;
    ComplexMatrix vectors;
};

// Cyclic Jacobi for Hermitian matrices. Off-diagonal Frobenius norm is driven
// below kJacobiOffTol; NumericError after kJacobiMaxSweeps sweeps without
// convergence, ArgumentError for inputs that are not Hermitian within 1e-9.
EigenSystem hermitian_eigensystem(const ComplexMatrix& h);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

// Hermitian PSD square root. Eigenvalues in (-kPsdClampTol, 0) clamp to zero;
// anything below the clamp window is an ArgumentError.
ComplexMatrix psd_sqrt(const ComplexMatrix& rho);

// Number of eigenvalues strictly above `tol`.
int rank_estimate(const ComplexMatrix& rho, double tol);

}  // namespace monolab

#endif
