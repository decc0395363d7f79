#include "monolab/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "monolab/grid.hpp"
#include "monolab/rng.hpp"

namespace monolab {

PlateauReport esd_esb_times(const InitialPairState& init) {
    const double a = init.alpha_mod();
    const double b = init.beta_mod();
    if (a < 1e-15 || b < 1e-15) {
        throw DegenerateInputError("esd_esb_times: |alpha| in {0, 1} carries no entanglement");
    }
    PlateauReport report;
    if (a < b) {
        report.t_esd = -std::log(1.0 - a / b);
        report.t_esb = std::log(b / a);
        report.width = std::max(0.0, std::log(b / a - 1.0));
        report.exists = report.width > 0.0;
        if (report.exists) report.plateau_value = 4.0 * a * a * b * b;
    }
    return report;
}

EntanglementRecord evaluate_point(const InitialPairState& init, double kappa_t,
                                  const PlateauReport& plateau) {
    EntanglementRecord rec;
    rec.alpha = init.alpha_mod();
    rec.kappa_t = kappa_t;

    const PureState phi = evolved_two_pair_state(init, kappa_t);
    rec.pairwise = pairwise_from_state(phi);
    rec.block_tangle = pure_bipartition_tangle(phi, {"c1", "r1"});
    rec.within_pair_c1r1 = wootters_concurrence_sq(phi.reduced_density({"c1", "r1"}));
    rec.residual_m = rec.block_tangle - rec.pairwise.sum();
    rec.qubit_block = qubit_block_tangles(init, kappa_t);

    rec.esd_active = plateau.t_esd && kappa_t >= *plateau.t_esd;
    rec.esb_active = plateau.t_esb && kappa_t >= *plateau.t_esb;
    rec.in_plateau =
        plateau.exists && kappa_t >= *plateau.t_esd && kappa_t <= *plateau.t_esb;
    return rec;
}

std::vector<EntanglementRecord> trajectory(const InitialPairState& init,
                                           std::span<const double> grid) {
    const PlateauReport plateau = esd_esb_times(init);
    std::vector<EntanglementRecord> records(grid.size());
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < grid.size(); ++i) {
        records[i] = evaluate_point(init, grid[i], plateau);
    }
    return records;
}

std::vector<EntanglementRecord> trajectory_reference(const InitialPairState& init,
                                                     std::span<const double> grid) {
    const PlateauReport plateau = esd_esb_times(init);
    std::vector<EntanglementRecord> records;
    records.reserve(grid.size());
    for (const double t : grid) records.push_back(evaluate_point(init, t, plateau));
    return records;
}

double residual_closed_form(double alpha, double kappa_t) {
    const InitialPairState init = InitialPairState::from_alpha(alpha);
    const double ab = init.alpha_mod() * init.beta_mod();
    return 4.0 * ab * ab - closed_form_pairwise(init, kappa_t).sum();
}

std::vector<double> residual_surface(std::span<const double> alphas,
                                     std::span<const double> ts) {
    std::vector<double> surface(alphas.size() * ts.size());
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        for (std::size_t j = 0; j < ts.size(); ++j) {
            surface[i * ts.size() + j] = residual_closed_form(alphas[i], ts[j]);
        }
    }
    return surface;
}

std::vector<double> residual_surface_reference(std::span<const double> alphas,
                                               std::span<const double> ts) {
    std::vector<double> surface(alphas.size() * ts.size());
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        for (std::size_t j = 0; j < ts.size(); ++j) {
            surface[i * ts.size() + j] = residual_closed_form(alphas[i], ts[j]);
        }
    }
    return surface;
}

namespace {

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double tol) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

ExtremumResult extremum_search(int resolution, bool refine) {
    if (resolution < 32) {
        throw ArgumentError("extremum_search: resolution must be at least 32");
    }
    const auto alphas = linear_grid(0.01, 0.99, resolution);
    const auto ts = linear_grid(0.0, 5.0, resolution);

    const auto surface = residual_surface(alphas, ts);
    std::size_t best = 0;
    for (std::size_t k = 1; k < surface.size(); ++k) {
        if (surface[k] > surface[best]) best = k;
    }
    double alpha = alphas[best / ts.size()];
    double t = ts[best % ts.size()];

    if (refine) {
        double ra = alphas[1] - alphas[0];
        double rt = ts[1] - ts[0];
        for (int round = 0; round < 60; ++round) {
            const double t_next =
                golden_max([&](double x) { return residual_closed_form(alpha, x); },
                           std::max(0.0, t - rt), std::min(5.0, t + rt), 1e-9);
            const double a_next =
                golden_max([&](double x) { return residual_closed_form(x, t_next); },
                           std::max(1e-6, alpha - ra), std::min(1.0 - 1e-6, alpha + ra),
                           1e-9);
            const double moved = std::abs(t_next - t) + std::abs(a_next - alpha);
            t = t_next;
            alpha = a_next;
            ra = std::max(ra * 0.5, 1e-6);
            rt = std::max(rt * 0.5, 1e-6);
            if (moved < 1e-10) break;
        }
    }
    return {alpha, t, residual_closed_form(alpha, t)};
}

bool AuditReport::passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.verdict != "fail"; });
}

namespace {

struct PointDefects {
    double pairwise;
    double conservation;
    double qubit_block_sum;
    double slack;
    double definition;
};

PointDefects point_defects(const InitialPairState& init, const PlateauReport& plateau,
                           double t) {
    const EntanglementRecord rec = evaluate_point(init, t, plateau);
    const PairwiseConcurrences cf = closed_form_pairwise(init, t);
    const double ab = init.alpha_mod() * init.beta_mod();
    const double invariant = 4.0 * ab * ab;

    PointDefects d;
    d.pairwise = std::max({std::abs(rec.pairwise.c1c2 - cf.c1c2),
                           std::abs(rec.pairwise.r1r2 - cf.r1r2),
                           std::abs(rec.pairwise.c1r2 - cf.c1r2),
                           std::abs(rec.pairwise.c2r1 - cf.c2r1)});
    d.conservation = std::abs(rec.block_tangle - invariant);
    d.qubit_block_sum = std::abs(rec.qubit_block.first + rec.qubit_block.second - invariant);
    d.slack = rec.residual_m;
    d.definition = std::abs(rec.residual_m - (rec.block_tangle - rec.pairwise.sum()));
    return d;
}

GridAuditResult merge_rows(const std::vector<GridAuditResult>& rows) {
    GridAuditResult total;
    total.min_monogamy_slack = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
        total.max_pairwise_defect = std::max(total.max_pairwise_defect, r.max_pairwise_defect);
        total.max_conservation_defect =
            std::max(total.max_conservation_defect, r.max_conservation_defect);
        total.max_qubit_block_defect = std::max(total.max_qubit_block_defect, r.max_qubit_block_defect);
        total.min_monogamy_slack = std::min(total.min_monogamy_slack, r.min_monogamy_slack);
        total.max_definition_defect =
            std::max(total.max_definition_defect, r.max_definition_defect);
    }
    return total;
}

GridAuditResult audit_row(double alpha, std::span<const double> ts) {
    const InitialPairState init = InitialPairState::from_alpha(alpha);
    const PlateauReport plateau = esd_esb_times(init);
    GridAuditResult row;
    row.min_monogamy_slack = std::numeric_limits<double>::infinity();
    for (const double t : ts) {
        const PointDefects d = point_defects(init, plateau, t);
        row.max_pairwise_defect = std::max(row.max_pairwise_defect, d.pairwise);
        row.max_conservation_defect = std::max(row.max_conservation_defect, d.conservation);
        row.max_qubit_block_defect = std::max(row.max_qubit_block_defect, d.qubit_block_sum);
        row.min_monogamy_slack = std::min(row.min_monogamy_slack, d.slack);
        row.max_definition_defect = std::max(row.max_definition_defect, d.definition);
    }
    return row;
}

}  // namespace

GridAuditResult audit_grid(std::span<const double> alphas, std::span<const double> ts) {
    if (alphas.empty() || ts.empty()) throw ArgumentError("audit_grid: empty grid");
    std::vector<GridAuditResult> rows(alphas.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < alphas.size(); ++i) rows[i] = audit_row(alphas[i], ts);
    return merge_rows(rows);
}

GridAuditResult audit_grid_reference(std::span<const double> alphas,
                                     std::span<const double> ts) {
    if (alphas.empty() || ts.empty()) throw ArgumentError("audit_grid: empty grid");
    std::vector<GridAuditResult> rows(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i) rows[i] = audit_row(alphas[i], ts);
    return merge_rows(rows);
}

AuditReport monogamy_audit(const InitialPairState& init, std::span<const double> ts) {
    const std::vector<double> alpha{init.alpha_mod()};
    const GridAuditResult grid = audit_grid(alpha, ts);

    AuditReport report;
    const auto defect_check = [&](std::string name, double defect, double tol) {
        report.checks.push_back(
            {std::move(name), defect, 0.0, defect < tol ? "pass" : "fail"});
    };
    report.checks.push_back({"monogamy_slack", std::max(0.0, -grid.min_monogamy_slack),
                             grid.min_monogamy_slack,
                             grid.min_monogamy_slack >= kMonogamySlackFloor ? "pass" : "fail"});
    defect_check("qubit_block_sum", grid.max_qubit_block_defect, kQubitBlockSumTol);
    defect_check("block_tangle_conservation", grid.max_conservation_defect,
                 kConservationTol);
    defect_check("pairwise_closed_form_agreement", grid.max_pairwise_defect, kOracleTol);
    defect_check("residual_definition", grid.max_definition_defect, kDefinitionTol);
    return report;
}

bool ThreePairBoundReport::all_within_bound() const {
    return std::all_of(points.begin(), points.end(),
                       [](const ThreePairBoundPoint& p) { return p.verdict == "pass"; });
}

ThreePairBoundReport three_pair_bound_audit(const InitialPairState& init, std::span<const double> ts,
                      const RoofConfig& roof_config) {
    const double ab = init.alpha_mod() * init.beta_mod();
    ThreePairBoundReport report;
    report.bound = 4.0 * ab * ab;
    report.points.resize(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const PureState psi = evolved_three_pair_state(init, ts[i]);
        ThreePairBoundPoint point;
        point.kappa_t = ts[i];
        point.bound = report.bound;

        RoofConfig cfg = roof_config;
        cfg.seed = splitmix64(roof_config.seed ^ (2 * i));
        point.cavity_roof = roof_three_tangle(psi.reduced_density({"c1", "c2", "c3"}), cfg);
        cfg.seed = splitmix64(roof_config.seed ^ (2 * i + 1));
        point.reservoir_roof =
            roof_three_tangle(psi.reduced_density({"r1", "r2", "r3"}), cfg);

        point.roof_sum = point.cavity_roof.upper_bound + point.reservoir_roof.upper_bound;
        point.verdict = point.roof_sum <= point.bound + kBoundSlackTol ? "pass"
                                                                      : "inconclusive";
        report.points[i] = point;
    }
    return report;
}

ViolationCatalog rank_violation_search(std::uint64_t seed, int trials) {
    if (trials < 1) throw ArgumentError("rank_violation_search: trials must be >= 1");
    const QubitRegister reg{"a1", "b1", "a2", "b2"};

    ViolationCatalog catalog;
    catalog.seed = seed;
    catalog.trials = trials;

    std::vector<ViolationEntry> slots(trials, ViolationEntry{-1, 0.0, 0});
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < trials; ++i) {
        auto rng = seeded_engine(seed, static_cast<std::uint64_t>(i));
        std::vector<Complex> amps(16);
        for (auto& a : amps) a = standard_complex_normal(rng);
        const PureState state = normalized_state(reg, std::move(amps));
        const double slack = residual_two_qubit(state, "a1", "b1");
        if (slack < kViolationCutoff) {
            const int rank = rank_estimate(state.reduced_density({"a1", "b1"}), 1e-10);
            slots[i] = {i, slack, rank};
        }
    }
    for (const auto& entry : slots) {
        if (entry.trial >= 0) catalog.entries.push_back(entry);
    }
    return catalog;
}

PureState bell_product_state() {
    std::vector<Complex> amps(16, Complex{0.0, 0.0});
    amps[0b0000] = 0.5;  // a1 = a2 and b1 = b2 on (a1, b1, a2, b2)
    amps[0b0101] = 0.5;
    amps[0b1010] = 0.5;
    amps[0b1111] = 0.5;
    return PureState(QubitRegister{"a1", "b1", "a2", "b2"}, std::move(amps));
}

double locate_zero_boundary(const std::function<double(double)>& f, double lo, double hi) {
    if (!(hi > lo)) throw ArgumentError("locate_zero_boundary: empty bracket");
    const bool lo_positive = f(lo) > 0.0;
    if (lo_positive == (f(hi) > 0.0)) {
        throw ArgumentError("locate_zero_boundary: bracket does not straddle the boundary");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((f(mid) > 0.0) == lo_positive) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace monolab
