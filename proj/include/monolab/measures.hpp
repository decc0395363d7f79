#ifndef MONOLAB_MEASURES_HPP
#define MONOLAB_MEASURES_HPP

#include <span>
#include <string>

#include "monolab/complex_matrix.hpp"
#include "monolab/model.hpp"
#include "monolab/pure_state.hpp"

namespace monolab {

enum class TangleKind {
    PureBipartition,
    TwoQubitSquaredConcurrence,
    Residual,
    ThreeTangle,
};

// Reporting wrapper: tangles are nonnegative up to round-off, so values in
// (-1e-10, 0) clamp to zero and anything lower is rejected.
struct TangleValue {
    double value;
    TangleKind kind;
    static TangleValue clamped(double value, TangleKind kind);
};

// Squared concurrence of a two-qubit density operator. The spectrum of
// rho rho~ (rho~ the spin-flipped conjugate) is taken from the Hermitian
// matrix sqrt(rho) rho~ sqrt(rho), which shares it.
double wootters_concurrence_sq(const ComplexMatrix& rho);

// The four squared pairwise concurrences of the evolved two-pair state.
struct PairwiseConcurrences {
    double c1c2;
    double r1r2;
    double c1r2;
    double c2r1;
    double sum() const { return c1c2 + r1r2 + c1r2 + c2r1; }
};

// Closed forms: C^2 = 4 [max(|ab| f - b^2 xi^2 chi^2, 0)]^2 with f one of
// xi^2, chi^2, xi chi depending on the pair.
PairwiseConcurrences closed_form_pairwise(const InitialPairState& init, double kappa_t);

// Same quantities measured on the state: Wootters on extracted marginals.
PairwiseConcurrences pairwise_from_state(const PureState& phi);

// Linear-entropy tangle 2 (1 - tr rho_subset^2) of a pure state across
// subset | complement. Subset must be proper and nonempty.
double pure_bipartition_tangle(const PureState& state, std::span<const std::string> subset);
double pure_bipartition_tangle(const PureState& state,
                               std::initializer_list<std::string> subset);

// Two-qubit residual entanglement of the pair (a, b):
// tangle(ab | rest) minus all squared concurrences between a qubit of the
// pair and a qubit of the rest. Reported raw (round-off may dip below zero).
double residual_two_qubit(const PureState& state, const std::string& a, const std::string& b);

// One-tangle of `focus` minus both pairwise squared concurrences, on a pure
// three-qubit state. Invariant under the choice of focus.
double three_tangle_pure(const PureState& state, const std::string& focus);

// Same quantity through Cayley's hyperdeterminant, for normalized 8-vectors.
// Exact on pure states and two orders of magnitude cheaper; the roof
// optimizer evaluates this form.
double three_tangle_cayley(std::span<const Complex> amplitudes);

// (4|ab|^2 xi^2, 4|ab|^2 chi^2): tangles of c1 and r1 against the opposite
// pair. They sum to the conserved block tangle 4|ab|^2.
std::pair<double, double> qubit_block_tangles(const InitialPairState& init, double kappa_t);

}  // namespace monolab

#endif
