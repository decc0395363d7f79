#include "monolab/measures.hpp"

#include <algorithm>
#include <cmath>

namespace monolab {

TangleValue TangleValue::clamped(double value, TangleKind kind) {
    if (value < -1e-10) {
        throw NumericError("TangleValue: negative beyond round-off tolerance");
    }
    return {std::max(value, 0.0), kind};
}

namespace {

const ComplexMatrix& spin_flip_yy() {
    // sigma_y (x) sigma_y in the computational basis.
    static const ComplexMatrix yy = ComplexMatrix::from_rows({
        {0.0, 0.0, 0.0, -1.0},
        {0.0, 0.0, 1.0, 0.0},
        {0.0, 1.0, 0.0, 0.0},
        {-1.0, 0.0, 0.0, 0.0},
    });
    return yy;
}

double purity(const ComplexMatrix& rho) {
    double s = 0.0;
    for (int r = 0; r < rho.dim(); ++r)
        for (int c = 0; c < rho.dim(); ++c) s += std::norm(rho(r, c));
    return s;
}

}  // namespace

double wootters_concurrence_sq(const ComplexMatrix& rho) {
    if (rho.dim() != 4) {
        throw ArgumentError("wootters_concurrence_sq: expected a 4x4 density operator");
    }
    rho.check_density();

    // The decreasing sqrt(lambda_i), lambda_i the spectrum of rho rho~, are
    // the singular values of A = sqrt(rho) Y sqrt(rho)* since
    // A A^dag = sqrt(rho) rho~ sqrt(rho). Reading them off the Hermitian
    // doubled embedding [[0, A], [A^dag, 0]] keeps the sensitivity of the
    // near-zero roots linear instead of square-root in the eigen noise.
    const ComplexMatrix root = psd_sqrt(rho);
    const ComplexMatrix a = root * spin_flip_yy() * root.conjugate();

    ComplexMatrix doubled(8);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            doubled(i, 4 + j) = a(i, j);
            doubled(4 + i, j) = std::conj(a(j, i));
        }

    const auto spectrum = hermitian_eigenvalues(doubled);  // { +sigma_i, -sigma_i }
    double c = std::max(spectrum[0], 0.0);
    for (int k = 1; k < 4; ++k) c -= std::max(spectrum[k], 0.0);
    c = std::max(c, 0.0);
    return std::clamp(c * c, 0.0, 1.0);
}

PairwiseConcurrences closed_form_pairwise(const InitialPairState& init, double kappa_t) {
    const auto amp = damping_amplitudes(kappa_t);
    const double a = init.alpha_mod();
    const double b = init.beta_mod();
    const double xi2 = amp.xi * amp.xi;
    const double chi2 = amp.chi * amp.chi;
    const double leak = b * b * xi2 * chi2;  // |beta xi chi|^2, common subtrahend

    const auto clip_sq = [](double margin) {
        const double m = std::max(margin, 0.0);
        return 4.0 * m * m;
    };
    const double cross = clip_sq(a * b * amp.xi * amp.chi - leak);
    return {
        clip_sq(a * b * xi2 - leak),
        clip_sq(a * b * chi2 - leak),
        cross,
        cross,
    };
}

PairwiseConcurrences pairwise_from_state(const PureState& phi) {
    return {
        wootters_concurrence_sq(phi.reduced_density({"c1", "c2"})),
        wootters_concurrence_sq(phi.reduced_density({"r1", "r2"})),
        wootters_concurrence_sq(phi.reduced_density({"c1", "r2"})),
        wootters_concurrence_sq(phi.reduced_density({"c2", "r1"})),
    };
}

double pure_bipartition_tangle(const PureState& state, std::span<const std::string> subset) {
    if (subset.empty() || static_cast<int>(subset.size()) >= state.num_qubits()) {
        throw ArgumentError("pure_bipartition_tangle: subset must be proper and nonempty");
    }
    return 2.0 * (1.0 - purity(state.reduced_density(subset)));
}

double pure_bipartition_tangle(const PureState& state,
                               std::initializer_list<std::string> subset) {
    const std::vector<std::string> s(subset);
    return pure_bipartition_tangle(state, std::span<const std::string>(s));
}

double residual_two_qubit(const PureState& state, const std::string& a, const std::string& b) {
    if (a == b) throw ArgumentError("residual_two_qubit: pair labels must differ");
    if (state.num_qubits() < 3) {
        throw ArgumentError("residual_two_qubit: need at least three qubits");
    }
    const std::vector<std::string> pair{a, b};
    double result = pure_bipartition_tangle(state, pair);
    for (const auto& inner : pair) {
        for (const auto& outer : state.reg().labels()) {
            if (outer == a || outer == b) continue;
            result -= wootters_concurrence_sq(state.reduced_density({inner, outer}));
        }
    }
    return result;
}

double three_tangle_pure(const PureState& state, const std::string& focus) {
    if (state.num_qubits() != 3) {
        throw ArgumentError("three_tangle_pure: state must cover exactly three qubits");
    }
    const std::vector<std::string> one{focus};
    double result = pure_bipartition_tangle(state, one);
    for (const auto& other : state.reg().labels()) {
        if (other == focus) continue;
        result -= wootters_concurrence_sq(state.reduced_density({focus, other}));
    }
    return result;
}

double three_tangle_cayley(std::span<const Complex> a) {
    if (a.size() != 8) {
        throw ArgumentError("three_tangle_cayley: expected 8 amplitudes");
    }
    const Complex a000 = a[0], a001 = a[1], a010 = a[2], a011 = a[3];
    const Complex a100 = a[4], a101 = a[5], a110 = a[6], a111 = a[7];

    const Complex d1 = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 +
                       a010 * a010 * a101 * a101 + a100 * a100 * a011 * a011;
    const Complex d2 = a000 * a111 * a011 * a100 + a000 * a111 * a101 * a010 +
                       a000 * a111 * a110 * a001 + a011 * a100 * a101 * a010 +
                       a011 * a100 * a110 * a001 + a101 * a010 * a110 * a001;
    const Complex d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;
    return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

std::pair<double, double> qubit_block_tangles(const InitialPairState& init, double kappa_t) {
    const auto amp = damping_amplitudes(kappa_t);
    const double ab = init.alpha_mod() * init.beta_mod();
    const double shared = 4.0 * ab * ab;
    return {shared * amp.xi * amp.xi, shared * amp.chi * amp.chi};
}

}  // namespace monolab
