#include "monolab/convex_roof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "monolab/measures.hpp"
#include "monolab/rng.hpp"

namespace monolab {

Tableau::Tableau(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1 || cols > rows) {
        throw ArgumentError("Tableau: need rows >= cols >= 1");
    }
    v_.assign(static_cast<std::size_t>(rows) * cols, Complex{0.0, 0.0});
    for (int j = 0; j < cols; ++j) at(j, j) = 1.0;
}

Tableau Tableau::random(int rows, int cols, std::mt19937_64& rng) {
    Tableau t(rows, cols);
    for (auto& v : t.v_) v = standard_complex_normal(rng);
    t.orthonormalize();
    return t;
}

void Tableau::orthonormalize() {
    for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < cols_; ++j) {
            for (int k = 0; k < j; ++k) {
                Complex proj{0.0, 0.0};
                for (int i = 0; i < rows_; ++i) proj += std::conj(at(i, k)) * at(i, j);
                for (int i = 0; i < rows_; ++i) at(i, j) -= proj * at(i, k);
            }
            double norm2 = 0.0;
            for (int i = 0; i < rows_; ++i) norm2 += std::norm(at(i, j));
            if (norm2 < 1e-24) {
                throw NumericError("Tableau: column collapsed during orthonormalization");
            }
            const double inv = 1.0 / std::sqrt(norm2);
            for (int i = 0; i < rows_; ++i) at(i, j) *= inv;
        }
    }
}

double Tableau::orthonormality_defect() const {
    double s = 0.0;
    for (int j = 0; j < cols_; ++j) {
        for (int k = 0; k < cols_; ++k) {
            Complex g{0.0, 0.0};
            for (int i = 0; i < rows_; ++i) g += std::conj(at(i, j)) * at(i, k);
            if (j == k) g -= 1.0;
            s += std::norm(g);
        }
    }
    return std::sqrt(s);
}

StepResult optimizer_step(Tableau& tableau, double& step, double current_objective,
                          const std::function<double(const Tableau&)>& objective,
                          std::mt19937_64& rng) {
    Tableau direction(tableau.rows(), tableau.cols());
    double norm2 = 0.0;
    for (auto& v : direction.entries()) {
        v = standard_complex_normal(rng);
        norm2 += std::norm(v);
    }
    const double inv = 1.0 / std::sqrt(norm2);

    for (const double sign : {1.0, -1.0}) {
        Tableau candidate = tableau;
        auto cand = candidate.entries();
        const auto dir = direction.entries();
        for (std::size_t i = 0; i < cand.size(); ++i) cand[i] += sign * step * inv * dir[i];
        try {
            candidate.orthonormalize();
        } catch (const NumericError&) {
            continue;  // degenerate perturbation, treat as a failed probe
        }
        const double value = objective(candidate);
        if (!std::isfinite(value)) {
            throw NumericError("optimizer_step: objective is not finite");
        }
        if (value < current_objective) {
            tableau = std::move(candidate);
            return {true, value, current_objective - value};
        }
    }
    step *= 0.5;
    return {false, current_objective, 0.0};
}

namespace {

// Scaled eigenbasis of rho: column j holds sqrt(mu_j) |e_j>.
struct ScaledBasis {
    int dim = 0;
    int rank = 0;
    std::vector<Complex> columns;  // dim x rank, column-major
};

ScaledBasis scaled_support_basis(const ComplexMatrix& rho, double support_tol) {
    const EigenSystem sys = hermitian_eigensystem(rho);
    ScaledBasis basis;
    basis.dim = rho.dim();
    for (std::size_t j = 0; j < sys.values.size(); ++j) {
        const double mu = sys.values[j];
        if (mu < -kPsdClampTol) {
            throw ArgumentError("estimate_roof: input is not positive semidefinite");
        }
        if (mu <= support_tol) continue;
        const double scale = std::sqrt(mu);
        for (int i = 0; i < basis.dim; ++i) {
            basis.columns.push_back(scale * sys.vectors(i, static_cast<int>(j)));
        }
        ++basis.rank;
    }
    return basis;
}

// sum_x p_x tangle(w_x / sqrt(p_x)) for the decomposition induced by the
// tableau. Members below weight 1e-14 contribute nothing.
double ensemble_average(const ScaledBasis& basis, const Tableau& tableau,
                        const PureTangleFn& tangle, std::vector<Complex>& scratch) {
    const int d = basis.dim;
    double total = 0.0;
    for (int x = 0; x < tableau.rows(); ++x) {
        scratch.assign(d, Complex{0.0, 0.0});
        for (int j = 0; j < tableau.cols(); ++j) {
            const Complex vxj = tableau.at(x, j);
            if (vxj == Complex{0.0, 0.0}) continue;
            const Complex* col = basis.columns.data() + static_cast<std::size_t>(j) * d;
            for (int i = 0; i < d; ++i) scratch[i] += vxj * col[i];
        }
        double p = 0.0;
        for (const auto& v : scratch) p += std::norm(v);
        if (p < 1e-14) continue;
        const double inv = 1.0 / std::sqrt(p);
        for (auto& v : scratch) v *= inv;
        total += p * tangle(scratch);
    }
    return total;
}

struct RestartOutcome {
    double objective = std::numeric_limits<double>::infinity();
    bool converged = false;
    bool valid = false;
};

RestartOutcome run_restart(const ScaledBasis& basis, const PureTangleFn& tangle,
                           const RoofConfig& cfg, int size, std::uint64_t restart_seed,
                           bool identity_start) {
    std::vector<Complex> scratch;
    const auto objective = [&](const Tableau& t) {
        return ensemble_average(basis, t, tangle, scratch);
    };

    auto rng = seeded_engine(restart_seed);
    Tableau tableau = identity_start ? Tableau(size, basis.rank)
                                     : Tableau::random(size, basis.rank, rng);

    RestartOutcome out;
    try {
        double value = objective(tableau);
        if (!std::isfinite(value)) throw NumericError("non-finite starting objective");

        double step = cfg.initial_step;
        std::vector<double> window;
        double window_sum = 0.0;
        for (int iter = 0; iter < cfg.max_iterations; ++iter) {
            const StepResult result = optimizer_step(tableau, step, value, objective, rng);
            if (result.accepted) {
                value = result.objective;
                window.push_back(result.improvement);
                window_sum += result.improvement;
                if (static_cast<int>(window.size()) > cfg.improvement_window) {
                    window_sum -= window[window.size() - cfg.improvement_window - 1];
                }
                if (static_cast<int>(window.size()) >= cfg.improvement_window &&
                    window_sum < cfg.improvement_tol) {
                    out.converged = true;
                    break;
                }
            } else if (step < cfg.min_step) {
                out.converged = true;  // no representable move improves
                break;
            }
        }
        out.objective = value;
        out.valid = true;
    } catch (const NumericError&) {
        // abandoned restart; the sweep simply moves on
    }
    return out;
}

}  // namespace

RoofEstimate estimate_roof(const ComplexMatrix& rho, const PureTangleFn& tangle,
                           const RoofConfig& cfg) {
    rho.check_density();
    const ScaledBasis basis = scaled_support_basis(rho, cfg.support_tol);
    if (basis.rank == 0) {
        throw ArgumentError("estimate_roof: input has empty support");
    }

    RoofEstimate estimate;
    estimate.seed = cfg.seed;

    if (basis.rank == 1) {
        // Unique decomposition: the roof is the tangle of the single member.
        std::vector<Complex> member(basis.columns.begin(), basis.columns.end());
        double n2 = 0.0;
        for (const auto& v : member) n2 += std::norm(v);
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& v : member) v *= inv;
        estimate.upper_bound = std::max(0.0, tangle(member));
        estimate.decomposition_size = 1;
        estimate.converged = true;
        return estimate;
    }

    if (cfg.size_cap < basis.rank) {
        throw ArgumentError("estimate_roof: size_cap below the matrix rank");
    }
    const int max_size = std::min(basis.rank * basis.rank, cfg.size_cap);

    struct Run {
        int size;
        int restart;
    };
    std::vector<Run> runs;
    for (int m = basis.rank; m <= max_size; ++m) {
        for (int k = 0; k <= cfg.restarts; ++k) runs.push_back({m, k});  // k = 0: identity
    }

    std::vector<RestartOutcome> outcomes(runs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto [m, k] = runs[i];
        const std::uint64_t restart_seed =
            splitmix64(cfg.seed ^ (static_cast<std::uint64_t>(m) << 32 ^
                                   static_cast<std::uint64_t>(k)));
        outcomes[i] = run_restart(basis, tangle, cfg, m, restart_seed, k == 0);
    }

    // Fixed-order reduction keeps the result independent of scheduling.
    double best = std::numeric_limits<double>::infinity();
    int best_size = basis.rank;
    bool best_converged = false;
    int used = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (!outcomes[i].valid) continue;
        ++used;
        if (outcomes[i].objective < best) {
            best = outcomes[i].objective;
            best_size = runs[i].size;
            best_converged = outcomes[i].converged;
        }
    }
    if (!std::isfinite(best)) {
        throw NumericError("estimate_roof: every restart failed");
    }
    estimate.upper_bound = std::max(0.0, best);
    estimate.decomposition_size = best_size;
    estimate.restarts_used = used;
    estimate.converged = best_converged;
    return estimate;
}

RoofEstimate roof_three_tangle(const ComplexMatrix& rho, const RoofConfig& cfg) {
    if (rho.dim() != 8) {
        throw ArgumentError("roof_three_tangle: expected an 8x8 density operator");
    }
    return estimate_roof(
        rho, [](std::span<const Complex> a) { return three_tangle_cayley(a); }, cfg);
}

PureTangleFn one_tangle_functional(int num_qubits, int focus_bit) {
    if (focus_bit < 0 || focus_bit >= num_qubits) {
        throw ArgumentError("one_tangle_functional: focus bit out of range");
    }
    const std::size_t dim = std::size_t{1} << num_qubits;
    const std::size_t mask = std::size_t{1} << focus_bit;
    return [dim, mask](std::span<const Complex> a) {
        double p0 = 0.0, p1 = 0.0;
        Complex coh{0.0, 0.0};
        for (std::size_t x = 0; x < dim; ++x) {
            if (x & mask) continue;
            p0 += std::norm(a[x]);
            p1 += std::norm(a[x | mask]);
            coh += a[x] * std::conj(a[x | mask]);
        }
        const double pur = p0 * p0 + p1 * p1 + 2.0 * std::norm(coh);
        return 2.0 * (1.0 - pur);
    };
}

RoofEstimate roof_one_tangle(const ComplexMatrix& rho, const QubitRegister& reg,
                             const std::string& focus, const RoofConfig& cfg) {
    if (rho.dim() != static_cast<int>(reg.dimension())) {
        throw ArgumentError("roof_one_tangle: matrix dimension does not match register");
    }
    return estimate_roof(rho, one_tangle_functional(reg.size(), reg.bit(focus)), cfg);
}

}  // namespace monolab
