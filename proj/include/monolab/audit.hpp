#ifndef MONOLAB_AUDIT_HPP
#define MONOLAB_AUDIT_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monolab/convex_roof.hpp"
#include "monolab/measures.hpp"

namespace monolab {

// Audit thresholds. Every verdict in this module is pinned against these.
inline constexpr double kMonogamySlackFloor = -1e-10;
inline constexpr double kQubitBlockSumTol = 1e-12;
inline constexpr double kConservationTol = 1e-12;
inline constexpr double kOracleTol = 1e-9;
inline constexpr double kDefinitionTol = 1e-12;
inline constexpr double kRoofMatchTol = 1e-3;
inline constexpr double kBoundSlackTol = 1e-3;
inline constexpr double kViolationCutoff = -1e-8;

// Sudden-death / sudden-birth thresholds and the all-pairwise-zero window.
// t_esd = -ln(1 - |a/b|) and t_esb = ln(|b/a|) exist only for |a| < |b|;
// the plateau between them has positive width only for |a| < |b|/2.
struct PlateauReport {
    bool exists = false;
    std::optional<double> t_esd;
    std::optional<double> t_esb;
    double width = 0.0;
    double plateau_value = 0.0;
};

PlateauReport esd_esb_times(const InitialPairState& init);

// Every measure the trajectory tracks at one (alpha, kappa_t) point.
// pairwise and block values come from the state (Wootters on extracted
// marginals, linear entropy); residual_m is block - sum(pairwise).
struct EntanglementRecord {
    double alpha = 0.0;
    double kappa_t = 0.0;
    PairwiseConcurrences pairwise{};
    double block_tangle = 0.0;      // C^2_{c1r1|c2r2}
    double within_pair_c1r1 = 0.0;  // C^2_{c1r1}
    double residual_m = 0.0;
    std::pair<double, double> qubit_block{0.0, 0.0};
    bool esd_active = false;
    bool esb_active = false;
    bool in_plateau = false;
};

EntanglementRecord evaluate_point(const InitialPairState& init, double kappa_t,
                                  const PlateauReport& plateau);

// OpenMP kernel and the serial reference it is tested against; both assemble
// results in grid order.
std::vector<EntanglementRecord> trajectory(const InitialPairState& init,
                                           std::span<const double> grid);
std::vector<EntanglementRecord> trajectory_reference(const InitialPairState& init,
                                                     std::span<const double> grid);

// Closed-form residual M(alpha, kappa_t); the surface behind the sweep.
double residual_closed_form(double alpha, double kappa_t);

// Row-major surface over alphas x ts, parallel kernel plus serial reference.
std::vector<double> residual_surface(std::span<const double> alphas,
                                     std::span<const double> ts);
std::vector<double> residual_surface_reference(std::span<const double> alphas,
                                               std::span<const double> ts);

struct ExtremumResult {
    double alpha;
    double kappa_t;
    double residual;
};

// Coarse grid argmax of M, refined per coordinate by golden section.
ExtremumResult extremum_search(int resolution, bool refine);

struct CheckResult {
    std::string name;
    double max_defect = 0.0;
    double min_slack = 0.0;
    std::string verdict;  // pass | fail | inconclusive
};

struct AuditReport {
    std::vector<CheckResult> checks;
    bool passed() const;
};

// Grid-wide extrema of every defect the monogamy audit tracks.
struct GridAuditResult {
    double max_pairwise_defect = 0.0;     // |Wootters - closed form|
    double max_conservation_defect = 0.0; // |block - 4 a^2 b^2|
    double max_qubit_block_defect = 0.0;          // |qubit-block sum - 4 a^2 b^2|
    double min_monogamy_slack = 0.0;           // min residual_m
    double max_definition_defect = 0.0;   // |residual - (block - sum)|
};

GridAuditResult audit_grid(std::span<const double> alphas, std::span<const double> ts);
GridAuditResult audit_grid_reference(std::span<const double> alphas,
                                     std::span<const double> ts);

AuditReport monogamy_audit(const InitialPairState& init, std::span<const double> ts);

struct ThreePairBoundPoint {
    double kappa_t = 0.0;
    RoofEstimate cavity_roof{};
    RoofEstimate reservoir_roof{};
    double roof_sum = 0.0;
    double bound = 0.0;
    std::string verdict;  // pass | inconclusive
};

struct ThreePairBoundReport {
    double bound = 0.0;
    std::vector<ThreePairBoundPoint> points;
    bool all_within_bound() const;
};

// Roof upper bounds for both three-tangles of the three-pair scenario
// against the conserved 4|ab|^2. An exceeded bound is inconclusive, not a
// violation: the optimizer only certifies from above.
ThreePairBoundReport three_pair_bound_audit(const InitialPairState& init, std::span<const double> ts,
                      const RoofConfig& roof_config);

struct ViolationEntry {
    int trial;
    double slack;
    int marginal_rank;
};

struct ViolationCatalog {
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<ViolationEntry> entries;
};

// Samples normalized complex-normal 4-qubit states and catalogs weak-
// monogamy slacks below kViolationCutoff together with the rank of the
// (a1, b1) marginal.
ViolationCatalog rank_violation_search(std::uint64_t seed, int trials);

// Bell pairs across the (a1, b1) | (a2, b2) cut: a1a2 and b1b2 each
// maximally entangled. The canonical weak-monogamy counterexample.
PureState bell_product_state();

// Bisects the boundary between f > 0 and f == 0 on [lo, hi].
double locate_zero_boundary(const std::function<double(double)>& f, double lo, double hi);

}  // namespace monolab

#endif
