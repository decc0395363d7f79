#ifndef MONOLAB_CONVEX_ROOF_HPP
#define MONOLAB_CONVEX_ROOF_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>

#include "monolab/complex_matrix.hpp"
#include "monolab/qubit_register.hpp"

namespace monolab {

// Pure-state tangle functional evaluated on a normalized amplitude vector.
using PureTangleFn = std::function<double(std::span<const Complex>)>;

struct RoofConfig {
    int restarts = 16;            // random restarts per decomposition size
    int max_iterations = 5000;    // direction trials per restart
    int improvement_window = 50;  // accepted steps per convergence window
    double improvement_tol = 1e-10;
    double initial_step = 0.25;
    double min_step = 1e-10;
    int size_cap = 8;             // largest decomposition explored
    double support_tol = 1e-12;   // eigenvalue cutoff defining the rank
    std::uint64_t seed = 0x6d6f6e6f6c6162ull;
};

struct RoofEstimate {
    double upper_bound = 0.0;
    int decomposition_size = 0;
    int restarts_used = 0;
    bool converged = false;
    std::uint64_t seed = 0;
};

// Column-orthonormal m x r complex tableau. Any such tableau maps the
// eigen-ensemble {mu_j, |e_j>} of a density operator to an alternative
// decomposition rho = sum_x |w_x><w_x| via |w_x> = sum_j V_xj sqrt(mu_j)|e_j>.
class Tableau {
  public:
    Tableau(int rows, int cols);  // identity-extended: V_ij = delta_ij
    static Tableau random(int rows, int cols, std::mt19937_64& rng);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Complex& at(int i, int j) { return v_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Complex& at(int i, int j) const {
        return v_[static_cast<std::size_t>(i) * cols_ + j];
    }
    std::span<Complex> entries() { return v_; }
    std::span<const Complex> entries() const { return v_; }

    // Modified Gram-Schmidt with a second pass; NumericError when a column
    // collapses below 1e-12.
    void orthonormalize();
    double orthonormality_defect() const;  // ||V^dag V - I||_F

  private:
    int rows_;
    int cols_;
    std::vector<Complex> v_;
};

struct StepResult {
    bool accepted;
    double objective;
    double improvement;
};

// One pattern-search move: a random tableau direction is tried at +step and
// -step through the orthonormalizing retraction; the step halves when
// neither side improves. NumericError on a non-finite objective.
StepResult optimizer_step(Tableau& tableau, double& step, double current_objective,
                          const std::function<double(const Tableau&)>& objective,
                          std::mt19937_64& rng);

// Minimum over explored decompositions of sum_x p_x tangle(psi_x), scanning
// decomposition sizes m = r .. min(r^2, size_cap) with `restarts` seeded
// random starts per size plus the identity start. Restarts are independent
// and may run concurrently; the reduction is performed in a fixed order so
// identical (input, seed, config) give identical estimates.
RoofEstimate estimate_roof(const ComplexMatrix& rho, const PureTangleFn& tangle,
                           const RoofConfig& config);

// Roof of the three-tangle over a 3-qubit density operator.
RoofEstimate roof_three_tangle(const ComplexMatrix& rho, const RoofConfig& config);

// Roof of the one-tangle of `focus` over a density operator on `reg`.
RoofEstimate roof_one_tangle(const ComplexMatrix& rho, const QubitRegister& reg,
                             const std::string& focus, const RoofConfig& config);

// Linear-entropy tangle of one qubit of a normalized amplitude vector,
// usable as a roof functional. `focus_bit` counts from the LSB.
PureTangleFn one_tangle_functional(int num_qubits, int focus_bit);

}  // namespace monolab

#endif
