#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "monolab/audit.hpp"
#include "monolab/grid.hpp"

using json = nlohmann::ordered_json;
using namespace monolab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAuditFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

// 12 significant digits, locale-independent.
std::string fmt(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

void apply_thread_cap() {
#ifdef _OPENMP
    if (const char* env = std::getenv("MONOGAMY_LAB_THREADS")) {
        int cap = 0;
        const auto res = std::from_chars(env, env + std::string_view(env).size(), cap);
        if (res.ec != std::errc{} || cap < 0) {
            std::cerr << "warning: ignoring invalid MONOGAMY_LAB_THREADS='" << env << "'\n";
            return;
        }
        if (cap > 0) omp_set_num_threads(cap);  // 0 = auto
    }
#endif
}

int write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return kExitOk;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        return kExitIo;
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) {
        std::cerr << "error: write to '" << path << "' failed\n";
        return kExitIo;
    }
    return kExitOk;
}

struct GridSpec {
    double tmax = 5.0;
    int tcount = 256;
    std::string spacing = "log";
};

std::vector<double> make_kappa_grid(const GridSpec& g) {
    if (g.tcount < 2 || !(g.tmax > 0.0)) {
        throw ArgumentError("grid: need tcount >= 2 and tmax > 0");
    }
    return g.spacing == "linear" ? linear_grid(0.0, g.tmax, g.tcount)
                                 : log_dense_grid(g.tmax, g.tcount);
}

json grid_json(const GridSpec& g) {
    return json{{"tmax", g.tmax}, {"tcount", g.tcount}, {"spacing", g.spacing}};
}

struct AlphaSweep {
    double lo = 0.01;
    double hi = 0.99;
    int count = 99;
};

AlphaSweep parse_alpha_sweep(const std::string& text) {
    AlphaSweep sweep;
    std::istringstream in(text);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(in, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw ArgumentError("--alpha-sweep expects min:max:count");
    try {
        sweep.lo = std::stod(parts[0]);
        sweep.hi = std::stod(parts[1]);
        sweep.count = std::stoi(parts[2]);
    } catch (const std::exception&) {
        throw ArgumentError("--alpha-sweep expects numeric min:max:count");
    }
    if (!(sweep.lo > 0.0) || !(sweep.hi < 1.0) || !(sweep.hi > sweep.lo) || sweep.count < 2) {
        throw ArgumentError("--alpha-sweep needs 0 < min < max < 1 and count >= 2");
    }
    return sweep;
}

void require_scalar_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw ArgumentError("--alpha must lie strictly inside (0, 1)");
    }
}

json roof_json(const RoofEstimate& est) {
    return json{{"upper_bound", est.upper_bound},
                {"decomposition_size", est.decomposition_size},
                {"restarts_used", est.restarts_used},
                {"converged", est.converged},
                {"seed", est.seed}};
}

json checks_json(const AuditReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"max_defect", c.max_defect},
                          {"min_slack", c.min_slack},
                          {"verdict", c.verdict}});
    }
    return checks;
}

json eq10_json(const ThreePairBoundReport& report) {
    json points = json::array();
    for (const auto& p : report.points) {
        points.push_back({{"kappa_t", p.kappa_t},
                          {"cavity_roof", roof_json(p.cavity_roof)},
                          {"reservoir_roof", roof_json(p.reservoir_roof)},
                          {"roof_sum", p.roof_sum},
                          {"bound", p.bound},
                          {"verdict", p.verdict}});
    }
    return json{{"bound", report.bound},
                {"tolerance", kBoundSlackTol},
                {"points", points},
                {"all_within_bound", report.all_within_bound()}};
}

std::string records_csv(const std::vector<EntanglementRecord>& records) {
    std::string out =
        "kappa_t,c2_c1c2,c2_r1r2,c2_c1r2,c2_c2r1,block_tangle,c2_c1r1,residual_m,in_plateau\n";
    for (const auto& r : records) {
        out += fmt(r.kappa_t) + ',' + fmt(r.pairwise.c1c2) + ',' + fmt(r.pairwise.r1r2) +
               ',' + fmt(r.pairwise.c1r2) + ',' + fmt(r.pairwise.c2r1) + ',' +
               fmt(r.block_tangle) + ',' + fmt(r.within_pair_c1r1) + ',' +
               fmt(r.residual_m) + ',' + (r.in_plateau ? '1' : '0') + '\n';
    }
    return out;
}

json record_json(const EntanglementRecord& r) {
    return json{{"kappa_t", r.kappa_t},
                {"c2_c1c2", r.pairwise.c1c2},
                {"c2_r1r2", r.pairwise.r1r2},
                {"c2_c1r2", r.pairwise.c1r2},
                {"c2_c2r1", r.pairwise.c2r1},
                {"block_tangle", r.block_tangle},
                {"c2_c1r1", r.within_pair_c1r1},
                {"residual_m", r.residual_m},
                {"qubit_block_c1", r.qubit_block.first},
                {"qubit_block_r1", r.qubit_block.second},
                {"esd_active", r.esd_active},
                {"esb_active", r.esb_active},
                {"in_plateau", r.in_plateau}};
}

int cmd_trajectory(double alpha, const GridSpec& grid, std::uint64_t seed,
                   const std::string& out, const std::string& format) {
    require_scalar_alpha(alpha);
    const auto ts = make_kappa_grid(grid);
    const auto records = trajectory(InitialPairState::from_alpha(alpha), ts);
    if (format == "csv") return write_output(out, records_csv(records));

    json doc{{"command", "trajectory"}, {"alpha", alpha}, {"seed", seed},
             {"grid", grid_json(grid)}};
    json rows = json::array();
    for (const auto& r : records) rows.push_back(record_json(r));
    doc["records"] = rows;
    return write_output(out, doc.dump(2) + "\n");
}

int cmd_sweep(const AlphaSweep& sweep, const GridSpec& grid, std::uint64_t seed,
              const std::string& out, const std::string& format) {
    const auto alphas = linear_grid(sweep.lo, sweep.hi, sweep.count);
    const auto ts = make_kappa_grid(grid);
    const auto surface = residual_surface(alphas, ts);

    if (format == "csv") {
        std::string text = "alpha,kappa_t,residual_m\n";
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            for (std::size_t j = 0; j < ts.size(); ++j) {
                text += fmt(alphas[i]) + ',' + fmt(ts[j]) + ',' +
                        fmt(surface[i * ts.size() + j]) + '\n';
            }
        }
        return write_output(out, text);
    }

    json doc{{"command", "sweep"},
             {"alpha_sweep", {{"min", sweep.lo}, {"max", sweep.hi}, {"count", sweep.count}}},
             {"seed", seed},
             {"grid", grid_json(grid)}};
    json rows = json::array();
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        for (std::size_t j = 0; j < ts.size(); ++j) {
            rows.push_back({{"alpha", alphas[i]},
                            {"kappa_t", ts[j]},
                            {"residual_m", surface[i * ts.size() + j]}});
        }
    }
    doc["records"] = rows;
    return write_output(out, doc.dump(2) + "\n");
}

int cmd_extremum(int resolution, bool refine, const std::string& out,
                 const std::string& format) {
    const ExtremumResult result = extremum_search(resolution, refine);
    if (format == "csv") {
        std::string text = "alpha_star,kappa_t_star,residual_max\n";
        text += fmt(result.alpha) + ',' + fmt(result.kappa_t) + ',' + fmt(result.residual) +
                '\n';
        return write_output(out, text);
    }
    json doc{{"command", "extremum"}, {"resolution", resolution},     {"refined", refine},
             {"alpha_star", result.alpha}, {"kappa_t_star", result.kappa_t},
             {"residual_max", result.residual}};
    return write_output(out, doc.dump(2) + "\n");
}

int cmd_audit(double alpha, const GridSpec& grid, std::uint64_t seed, bool with_eq10,
              int restarts, int eq10_points, const std::string& out,
              const std::string& format) {
    require_scalar_alpha(alpha);
    const auto init = InitialPairState::from_alpha(alpha);
    const auto ts = make_kappa_grid(grid);
    const AuditReport report = monogamy_audit(init, ts);

    std::optional<ThreePairBoundReport> eq10;
    if (with_eq10) {
        RoofConfig cfg;
        cfg.seed = seed;
        cfg.restarts = restarts;
        eq10 = three_pair_bound_audit(init, log_dense_grid(grid.tmax, eq10_points), cfg);
    }

    int status = report.passed() ? kExitOk : kExitAuditFail;
    if (format == "csv") {
        std::string text = "name,max_defect,min_slack,verdict\n";
        for (const auto& c : report.checks) {
            text += c.name + ',' + fmt(c.max_defect) + ',' + fmt(c.min_slack) + ',' +
                    c.verdict + '\n';
        }
        const int io = write_output(out, text);
        return io != kExitOk ? io : status;
    }

    json doc{{"command", "audit"}, {"alpha", alpha}, {"seed", seed},
             {"grid", grid_json(grid)}};
    doc["checks"] = checks_json(report);
    doc["passed"] = report.passed();
    if (eq10) doc["eq10"] = eq10_json(*eq10);  // present only when requested
    const int io = write_output(out, doc.dump(2) + "\n");
    return io != kExitOk ? io : status;
}

int cmd_eq10(double alpha, double tmax, int points, std::uint64_t seed, int restarts,
             const std::string& out, const std::string& format) {
    require_scalar_alpha(alpha);
    if (points < 1) throw ArgumentError("--points must be >= 1");
    RoofConfig cfg;
    cfg.seed = seed;
    cfg.restarts = restarts;
    const auto ts = points == 1 ? std::vector<double>{0.0} : log_dense_grid(tmax, points);
    const ThreePairBoundReport report = three_pair_bound_audit(InitialPairState::from_alpha(alpha), ts, cfg);

    if (format == "csv") {
        std::string text = "kappa_t,roof_cavities,roof_reservoirs,roof_sum,bound,verdict\n";
        for (const auto& p : report.points) {
            text += fmt(p.kappa_t) + ',' + fmt(p.cavity_roof.upper_bound) + ',' +
                    fmt(p.reservoir_roof.upper_bound) + ',' + fmt(p.roof_sum) + ',' +
                    fmt(p.bound) + ',' + p.verdict + '\n';
        }
        return write_output(out, text);
    }
    json doc{{"command", "eq10"}, {"alpha", alpha},       {"seed", seed},
             {"restarts", restarts}, {"tmax", tmax}, {"points", points}};
    doc["report"] = eq10_json(report);
    return write_output(out, doc.dump(2) + "\n");
}

int cmd_violations(std::uint64_t seed, int trials, const std::string& out,
                   const std::string& format) {
    if (trials < 1) throw ArgumentError("--trials must be >= 1");
    const ViolationCatalog catalog = rank_violation_search(seed, trials);

    const PureState bells = bell_product_state();
    const double bell_block = pure_bipartition_tangle(bells, {"a1", "b1"});
    const double bell_slack = residual_two_qubit(bells, "a1", "b1");
    const int bell_rank = rank_estimate(bells.reduced_density({"a1", "b1"}), 1e-10);

    if (format == "csv") {
        std::string text = "trial,slack,marginal_rank\n";
        text += "bell_product," + fmt(bell_slack) + ',' + fmt(bell_rank) + '\n';
        for (const auto& e : catalog.entries) {
            text += std::to_string(e.trial) + ',' + fmt(e.slack) + ',' +
                    std::to_string(e.marginal_rank) + '\n';
        }
        return write_output(out, text);
    }

    json doc{{"command", "violations"}, {"seed", seed}, {"trials", trials}};
    doc["bell_product"] = {{"block_tangle", bell_block},
                           {"pairwise_sum", bell_block - bell_slack},
                           {"slack", bell_slack},
                           {"marginal_rank", bell_rank}};
    json entries = json::array();
    for (const auto& e : catalog.entries) {
        entries.push_back(
            {{"trial", e.trial}, {"slack", e.slack}, {"marginal_rank", e.marginal_rank}});
    }
    doc["violations"] = entries;
    doc["count"] = catalog.entries.size();
    return write_output(out, doc.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_cap();

    CLI::App app{"Numerical laboratory for entanglement monogamy in cavity-reservoir systems"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read defaults from a config file");
    app.fallthrough();

    const double default_alpha = 1.0 / std::sqrt(10.0);
    double alpha = default_alpha;
    std::string alpha_sweep_text;
    GridSpec grid;
    std::uint64_t seed = 20100413;
    int restarts = RoofConfig{}.restarts;
    std::string out_path;
    std::string format;
    int resolution = 128;
    bool no_refine = false;
    bool with_eq10 = false;
    int eq10_points = 10;
    int trials = 10000;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "Output path ('-' or empty: stdout)");
        cmd->add_option("--format", format, "csv or json (default depends on the command)")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--seed", seed, "Random seed echoed into reports");
    };
    const auto add_grid = [&](CLI::App* cmd) {
        cmd->add_option("--tmax", grid.tmax, "Largest kappa*t on the grid");
        cmd->add_option("--tcount", grid.tcount, "Number of kappa*t grid points");
        cmd->add_option("--spacing", grid.spacing, "Grid spacing near 0")
            ->check(CLI::IsMember({"linear", "log"}));
    };

    auto* trajectory_cmd =
        app.add_subcommand("trajectory", "All measures along kappa*t for one alpha");
    trajectory_cmd->add_option("--alpha", alpha, "Initial amplitude in (0,1)");
    add_grid(trajectory_cmd);
    add_common(trajectory_cmd);

    auto* sweep_cmd =
        app.add_subcommand("sweep", "Residual-entanglement surface over (alpha, kappa*t)");
    sweep_cmd->add_option("--alpha-sweep", alpha_sweep_text, "min:max:count");
    add_grid(sweep_cmd);
    add_common(sweep_cmd);

    auto* extremum_cmd =
        app.add_subcommand("extremum", "Locate the residual-entanglement maximum");
    extremum_cmd->add_option("--resolution", resolution, "Coarse grid resolution (>= 32)");
    extremum_cmd->add_flag("--no-refine", no_refine, "Skip golden-section refinement");
    add_common(extremum_cmd);

    auto* audit_cmd = app.add_subcommand("audit", "Monogamy and conservation checks");
    audit_cmd->add_option("--alpha", alpha, "Initial amplitude in (0,1)");
    audit_cmd->add_flag("--eq10", with_eq10, "Include the three-pair bound section");
    audit_cmd->add_option("--restarts", restarts, "Roof optimizer restarts");
    audit_cmd->add_option("--points", eq10_points, "Three-pair sample points");
    add_grid(audit_cmd);
    add_common(audit_cmd);

    auto* eq10_cmd =
        app.add_subcommand("eq10", "Three-pair three-tangle bound certification");
    eq10_cmd->add_option("--alpha", alpha, "Initial amplitude in (0,1)");
    eq10_cmd->add_option("--tmax", grid.tmax, "Largest kappa*t sampled");
    eq10_cmd->add_option("--points", eq10_points, "Number of sample points");
    eq10_cmd->add_option("--restarts", restarts, "Roof optimizer restarts");
    add_common(eq10_cmd);

    auto* violations_cmd =
        app.add_subcommand("violations", "Weak-monogamy violation search on random states");
    violations_cmd->add_option("--trials", trials, "Number of sampled states");
    add_common(violations_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const auto pick_format = [&](const char* fallback) {
        return format.empty() ? std::string(fallback) : format;
    };

    try {
        if (trajectory_cmd->parsed()) {
            return cmd_trajectory(alpha, grid, seed, out_path, pick_format("csv"));
        }
        if (sweep_cmd->parsed()) {
            const AlphaSweep sweep = alpha_sweep_text.empty()
                                         ? AlphaSweep{}
                                         : parse_alpha_sweep(alpha_sweep_text);
            return cmd_sweep(sweep, grid, seed, out_path, pick_format("csv"));
        }
        if (extremum_cmd->parsed()) {
            return cmd_extremum(resolution, !no_refine, out_path, pick_format("json"));
        }
        if (audit_cmd->parsed()) {
            return cmd_audit(alpha, grid, seed, with_eq10, restarts, eq10_points, out_path,
                             pick_format("json"));
        }
        if (eq10_cmd->parsed()) {
            return cmd_eq10(alpha, grid.tmax, eq10_points, seed, restarts, out_path,
                            pick_format("json"));
        }
        if (violations_cmd->parsed()) {
            return cmd_violations(seed, trials, out_path, pick_format("json"));
        }
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitAuditFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
