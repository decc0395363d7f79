#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>

#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const std::string kCli = MONOLAB_CLI_PATH;

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "monolab_cli_test";
    fs::create_directories(dir);
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string field;
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

TEST_CASE("trajectory CSV has the pinned header and plateau landmarks") {
    const fs::path out = work_dir() / "trajectory.csv";
    REQUIRE(run("trajectory --out " + out.string()) == 0);

    const auto lines = split_lines(read_file(out));
    REQUIRE(lines.size() == 257);  // header + default 256-point grid
    CHECK(lines[0] ==
          "kappa_t,c2_c1c2,c2_r1r2,c2_c1r2,c2_c2r1,block_tangle,c2_c1r1,residual_m,"
          "in_plateau");

    const double t_esd = std::log(1.5), t_esb = std::log(3.0);
    int plateau_rows = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv(lines[i]);
        REQUIRE(fields.size() == 9);
        CHECK(std::abs(std::stod(fields[5]) - 0.36) < 1e-11);  // conserved block tangle
        CHECK((fields[8] == "0" || fields[8] == "1"));
        const double t = std::stod(fields[0]);
        if (fields[8] == "1") {
            ++plateau_rows;
            CHECK(t >= t_esd - 1e-12);
            CHECK(t <= t_esb + 1e-12);
            CHECK(std::stod(fields[7]) == doctest::Approx(0.36).epsilon(1e-11));
            CHECK(fields[1] == "0");
            CHECK(fields[2] == "0");
        }
    }
    CHECK(plateau_rows > 10);

    const auto first_row = split_csv(lines[1]);
    CHECK(std::stod(first_row[0]) == 0.0);
    CHECK(std::stod(first_row[7]) == doctest::Approx(0.0).epsilon(1e-11));
}

TEST_CASE("identical seeds give byte-identical outputs") {
    const fs::path a = work_dir() / "a.csv";
    const fs::path b = work_dir() / "b.csv";
    REQUIRE(run("trajectory --alpha 0.42 --seed 7 --out " + a.string()) == 0);
    REQUIRE(run("trajectory --alpha 0.42 --seed 7 --out " + b.string()) == 0);
    CHECK(read_file(a) == read_file(b));

    const fs::path ja = work_dir() / "a.json";
    const fs::path jb = work_dir() / "b.json";
    REQUIRE(run("audit --alpha 0.42 --tcount 32 --seed 7 --out " + ja.string()) == 0);
    REQUIRE(run("audit --alpha 0.42 --tcount 32 --seed 7 --out " + jb.string()) == 0);
    CHECK(read_file(ja) == read_file(jb));
}

TEST_CASE("exit codes distinguish usage, audit and io failures") {
    CHECK(run("trajectory --no-such-flag") == 2);
    CHECK(run("trajectory --alpha 1.5") == 2);
    CHECK(run("sweep --alpha-sweep bogus") == 2);
    CHECK(run("") == 2);  // a subcommand is required
    CHECK(run("audit --tcount 16") == 0);
    CHECK(run("trajectory --out /nonexistent-dir/x.csv") == 3);
}

TEST_CASE("audit JSON reports passing checks and echoes the seed") {
    const fs::path out = work_dir() / "audit.json";
    REQUIRE(run("audit --alpha 0.3162277660168379 --tcount 64 --seed 12345 --out " +
                out.string()) == 0);
    const json doc = json::parse(read_file(out));
    CHECK(doc["seed"] == 12345);
    CHECK(doc["passed"] == true);
    CHECK(doc.contains("eq10") == false);  // only on request
    REQUIRE(doc["checks"].is_array());
    CHECK(doc["checks"].size() == 5);
    for (const auto& check : doc["checks"]) {
        CHECK(check["verdict"] == "pass");
        CHECK(check.contains("max_defect"));
        CHECK(check.contains("min_slack"));
    }
}

TEST_CASE("audit grows an eq10 section when the three-pair scenario is requested") {
    const fs::path out = work_dir() / "audit_eq10.json";
    REQUIRE(run("audit --alpha 0.7071067811865476 --tcount 16 --eq10 --points 2 "
                "--restarts 2 --out " +
                out.string()) == 0);
    const json doc = json::parse(read_file(out));
    REQUIRE(doc.contains("eq10"));
    CHECK(doc["eq10"]["points"].size() == 2);
    CHECK(doc["eq10"]["all_within_bound"] == true);
}

TEST_CASE("violations JSON reproduces the Bell-product counterexample") {
    const fs::path out = work_dir() / "violations.json";
    REQUIRE(run("violations --trials 200 --seed 31337 --out " + out.string()) == 0);
    const json doc = json::parse(read_file(out));
    CHECK(doc["trials"] == 200);
    CHECK(doc["bell_product"]["slack"] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(doc["bell_product"]["block_tangle"] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(doc["bell_product"]["marginal_rank"] == 4);
    for (const auto& entry : doc["violations"]) {
        CHECK(entry["marginal_rank"] >= 3);
        CHECK(entry["slack"] < 0.0);
    }
    CHECK(doc["count"] == doc["violations"].size());
}

TEST_CASE("extremum JSON carries the refined landmark values") {
    const fs::path out = work_dir() / "extremum.json";
    REQUIRE(run("extremum --resolution 64 --out " + out.string()) == 0);
    const json doc = json::parse(read_file(out));
    CHECK(std::abs(doc["kappa_t_star"].get<double>() - std::log(2.0)) < 1e-6);
    CHECK(std::abs(doc["residual_max"].get<double>() -
                   (13.0 * std::sqrt(13.0) - 19.0) / 34.0) < 1e-6);
}

TEST_CASE("sweep CSV covers the requested grid") {
    const fs::path out = work_dir() / "sweep.csv";
    REQUIRE(run("sweep --alpha-sweep 0.1:0.9:5 --tcount 8 --out " + out.string()) == 0);
    const auto lines = split_lines(read_file(out));
    REQUIRE(lines.size() == 1 + 5 * 8);
    CHECK(lines[0] == "alpha,kappa_t,residual_m");
    const auto first = split_csv(lines[1]);
    REQUIRE(first.size() == 3);
    CHECK(std::stod(first[0]) == doctest::Approx(0.1));
    CHECK(std::stod(first[1]) == 0.0);
    CHECK(std::stod(first[2]) == doctest::Approx(0.0).epsilon(1e-11));
}

TEST_CASE("config file values apply beneath command-line flags") {
    const fs::path cfg = work_dir() / "lab.ini";
    std::ofstream(cfg) << "[trajectory]\nalpha=0.5\ntcount=4\n";

    const fs::path out = work_dir() / "from_config.csv";
    REQUIRE(run("trajectory --config " + cfg.string() + " --out " + out.string()) == 0);
    const auto lines = split_lines(read_file(out));
    REQUIRE(lines.size() == 5);
    CHECK(std::stod(split_csv(lines[1])[5]) == doctest::Approx(0.75));  // 4 a^2 b^2 at 0.5

    const fs::path over = work_dir() / "flag_overrides.csv";
    REQUIRE(run("trajectory --config " + cfg.string() + " --alpha 0.6 --out " +
                over.string()) == 0);
    CHECK(std::stod(split_csv(split_lines(read_file(over))[1])[5]) ==
          doctest::Approx(4.0 * 0.36 * 0.64));
}

TEST_CASE("eq10 subcommand emits a certified report") {
    const fs::path out = work_dir() / "eq10.json";
    REQUIRE(run("eq10 --alpha 0.7071067811865476 --points 2 --restarts 2 --seed 5 --out " +
                out.string()) == 0);
    const json doc = json::parse(read_file(out));
    CHECK(doc["report"]["bound"] == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(doc["report"]["points"].size() == 2);
    for (const auto& p : doc["report"]["points"]) {
        CHECK(p["verdict"] == "pass");
        CHECK(p["roof_sum"].get<double>() <= 1.0 + 1e-3);
    }
}
