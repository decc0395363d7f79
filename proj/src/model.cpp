#include "monolab/model.hpp"

#include <cmath>

namespace monolab {

DampingAmplitudes damping_amplitudes(double kappa_t) {
    if (!std::isfinite(kappa_t) || kappa_t < 0.0) {
        throw ArgumentError("damping_amplitudes: kappa_t must be finite and nonnegative");
    }
    const double decay = std::exp(-kappa_t);
    return {std::sqrt(decay), std::sqrt(1.0 - decay), kappa_t};
}

InitialPairState::InitialPairState(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
    const double n = std::norm(alpha) + std::norm(beta);
    if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-12) {
        throw ArgumentError("InitialPairState: |alpha|^2 + |beta|^2 must equal 1");
    }
}

InitialPairState InitialPairState::from_alpha(double alpha) {
    if (!std::isfinite(alpha) || alpha < 0.0 || alpha > 1.0) {
        throw ArgumentError("InitialPairState: alpha must lie in [0, 1]");
    }
    const double b2 = std::max(0.0, 1.0 - alpha * alpha);
    return InitialPairState(Complex{alpha, 0.0}, Complex{std::sqrt(b2), 0.0});
}

double InitialPairState::alpha_mod() const { return std::abs(alpha_); }
double InitialPairState::beta_mod() const { return std::abs(beta_); }

PureState evolved_two_pair_state(const InitialPairState& init, double kappa_t) {
    const auto amp = damping_amplitudes(kappa_t);
    const Complex alpha = init.alpha();
    const Complex beta = init.beta();

    std::vector<Complex> v(16, Complex{0.0, 0.0});
    v[0b0000] = alpha;
    v[0b1010] = beta * amp.xi * amp.xi;
    v[0b1001] = beta * amp.xi * amp.chi;
    v[0b0110] = beta * amp.chi * amp.xi;
    v[0b0101] = beta * amp.chi * amp.chi;
    return PureState(QubitRegister::cavity_reservoir_pairs(2), std::move(v));
}

PureState evolved_three_pair_state(const InitialPairState& init, double kappa_t) {
    const auto amp = damping_amplitudes(kappa_t);
    const Complex alpha = init.alpha();
    const Complex beta = init.beta();

    std::vector<Complex> v(64, Complex{0.0, 0.0});
    v[0] = alpha;
    // Cavity excitation pattern b over the three pairs; each unexcited cavity
    // hands its photon to the paired reservoir.
    for (unsigned b = 0; b < 8; ++b) {
        double coeff = 1.0;
        std::size_t index = 0;
        for (int pair = 0; pair < 3; ++pair) {
            const bool cavity_excited = (b >> (2 - pair)) & 1u;
            coeff *= cavity_excited ? amp.xi : amp.chi;
            const int cavity_bit = 5 - 2 * pair;
            const int reservoir_bit = 4 - 2 * pair;
            if (cavity_excited) {
                index |= std::size_t{1} << cavity_bit;
            } else {
                index |= std::size_t{1} << reservoir_bit;
            }
        }
        v[index] += beta * coeff;
    }
    return PureState(QubitRegister::cavity_reservoir_pairs(3), std::move(v));
}

PureState w_state(std::span<const Complex> amplitudes) {
    const int n = static_cast<int>(amplitudes.size());
    if (n < 2 || n > kMaxQubits || n % 2 != 0) {
        throw ArgumentError("w_state: need an even number of amplitudes in [2, 8]");
    }
    double norm2 = 0.0;
    for (const auto& a : amplitudes) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > kNormTol) {
        throw ArgumentError("w_state: amplitudes are not normalized");
    }

    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("q" + std::to_string(i));

    std::vector<Complex> v(std::size_t{1} << n, Complex{0.0, 0.0});
    for (int i = 0; i < n; ++i) {
        v[std::size_t{1} << (n - 1 - i)] = amplitudes[i];
    }
    return PureState(QubitRegister(std::move(labels)), std::move(v));
}

PureState single_pair_map(const PureState& state, double kappa_t) {
    if (state.num_qubits() != 2) {
        throw ArgumentError("single_pair_map: state must cover exactly one pair");
    }
    const auto amp = damping_amplitudes(kappa_t);
    const auto& a = state.amplitudes();
    if (std::abs(a[0b11]) > kNormTol) {
        throw ArgumentError("single_pair_map: support on |11> is outside the model sector");
    }
    std::vector<Complex> v(4, Complex{0.0, 0.0});
    v[0b00] = a[0b00];
    v[0b10] = amp.xi * a[0b10] - amp.chi * a[0b01];
    v[0b01] = amp.chi * a[0b10] + amp.xi * a[0b01];
    return PureState(state.reg(), std::move(v));
}

}  // namespace monolab
