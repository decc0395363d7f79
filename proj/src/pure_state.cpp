#include "monolab/pure_state.hpp"

#include <algorithm>
#include <cmath>

namespace monolab {

PureState::PureState(QubitRegister reg, std::vector<Complex> amplitudes)
    : reg_(std::move(reg)), amps_(std::move(amplitudes)) {
    if (amps_.size() != reg_.dimension()) {
        throw ArgumentError("PureState: amplitude count does not match register size");
    }
    for (const auto& a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw ArgumentError("PureState: non-finite amplitude");
        }
    }
    if (std::abs(norm() - 1.0) > kNormTol) {
        throw ArgumentError("PureState: amplitudes are not normalized");
    }
}

double PureState::norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

ComplexMatrix PureState::density() const {
    const int d = static_cast<int>(amps_.size());
    ComplexMatrix rho(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) rho(i, j) = amps_[i] * std::conj(amps_[j]);
    return rho;
}

ComplexMatrix PureState::reduced_density(std::span<const std::string> keep) const {
    const int n = reg_.size();
    if (keep.empty()) throw ArgumentError("reduced_density: keep set is empty");

    std::vector<int> keep_bits;
    keep_bits.reserve(keep.size());
    for (const auto& label : keep) keep_bits.push_back(reg_.bit(label));
    for (std::size_t i = 0; i < keep_bits.size(); ++i)
        for (std::size_t j = i + 1; j < keep_bits.size(); ++j)
            if (keep_bits[i] == keep_bits[j]) {
                throw ArgumentError("reduced_density: duplicate label in keep set");
            }

    std::vector<int> env_bits;
    for (int b = n - 1; b >= 0; --b) {
        if (std::find(keep_bits.begin(), keep_bits.end(), b) == keep_bits.end()) {
            env_bits.push_back(b);
        }
    }

    const int k = static_cast<int>(keep_bits.size());
    const std::size_t out_dim = std::size_t{1} << k;
    const std::size_t env_dim = std::size_t{1} << env_bits.size();

    auto assemble = [&](std::size_t out_index, std::size_t env_index) {
        std::size_t full = 0;
        for (int j = 0; j < k; ++j) {
            if ((out_index >> (k - 1 - j)) & 1u) full |= std::size_t{1} << keep_bits[j];
        }
        for (std::size_t e = 0; e < env_bits.size(); ++e) {
            if ((env_index >> e) & 1u) full |= std::size_t{1} << env_bits[e];
        }
        return full;
    };

    ComplexMatrix rho(static_cast<int>(out_dim));
    for (std::size_t i = 0; i < out_dim; ++i) {
        for (std::size_t j = 0; j < out_dim; ++j) {
            Complex sum{0.0, 0.0};
            for (std::size_t e = 0; e < env_dim; ++e) {
                sum += amps_[assemble(i, e)] * std::conj(amps_[assemble(j, e)]);
            }
            rho(static_cast<int>(i), static_cast<int>(j)) = sum;
        }
    }
    return rho;
}

ComplexMatrix PureState::reduced_density(std::initializer_list<std::string> keep) const {
    const std::vector<std::string> k(keep);
    return reduced_density(std::span<const std::string>(k));
}

PureState normalized_state(QubitRegister reg, std::vector<Complex> amplitudes) {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    if (s < 1e-24) throw ArgumentError("normalized_state: zero amplitude vector");
    const double inv = 1.0 / std::sqrt(s);
    for (auto& a : amplitudes) a *= inv;
    return PureState(std::move(reg), std::move(amplitudes));
}

}  // namespace monolab
