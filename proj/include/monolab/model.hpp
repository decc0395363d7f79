#ifndef MONOLAB_MODEL_HPP
#define MONOLAB_MODEL_HPP

#include <span>

#include "monolab/pure_state.hpp"

namespace monolab {

// Single cavity-reservoir amplitude pair at dimensionless time kappa_t:
//   xi = exp(-kappa_t / 2),  chi = sqrt(1 - exp(-kappa_t)),  xi^2 + chi^2 = 1.
struct DampingAmplitudes {
    double xi;
    double chi;
    double kappa_t;
};

DampingAmplitudes damping_amplitudes(double kappa_t);

// Bell-like initial cavity pair alpha|00> + beta|11>, vacuum reservoirs.
class InitialPairState {
  public:
    InitialPairState(Complex alpha, Complex beta);
    // beta = sqrt(1 - alpha^2) >= 0 for real alpha in [0, 1].
    static InitialPairState from_alpha(double alpha);

    Complex alpha() const { return alpha_; }
    Complex beta() const { return beta_; }
    double alpha_mod() const;
    double beta_mod() const;

  private:
    Complex alpha_;
    Complex beta_;
};

// alpha|0000> + beta |phi_t>_{c1r1} |phi_t>_{c2r2} over (c1, r1, c2, r2),
// where |phi_t> = xi|10> + chi|01>.
PureState evolved_two_pair_state(const InitialPairState& init, double kappa_t);

// alpha|000000> + beta |phi_t>^(x3) over (c1, r1, c2, r2, c3, r3).
PureState evolved_three_pair_state(const InitialPairState& init, double kappa_t);

// Single-excitation superposition over labels q0..q{2N-1}; amplitudes[i]
// multiplies the basis ket with qubit i excited. Requires even length in
// {2, 4, 6, 8} and unit norm.
PureState w_state(std::span<const Complex> amplitudes);

// The one-pair evolution on span{|00>, |10>, |01>}:
//   |00> -> |00>,   |10> -> xi|10> + chi|01>,   |01> -> -chi|10> + xi|01>.
// Support on |11> beyond tolerance is rejected (outside the excitation
// sector the model evolves).
PureState single_pair_map(const PureState& state, double kappa_t);

}  // namespace monolab

#endif
