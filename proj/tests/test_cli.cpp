#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "prodplan/cli.hpp"

using namespace prodplan;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path()
               / ("prodplan_cli_" + std::to_string(::getpid()) + "_"
                  + std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

// Small-budget configuration: solves in well under a second and simulates a
// few hundred short paths, enough to exercise every code path.
const char* kSmallConfig = R"({
    "model": {"dim": 1, "sigma": 1.0, "alpha": 1.0},
    "solve": {"radii": [2.0, 3.0], "nodes_per_unit": 60},
    "sim": {"y0": [0.0], "horizon": 6.0, "dt": 0.004, "n_paths": 300,
             "master_seed": 77, "checkpoints": [0.0, 1.0, 2.0, 4.0]},
    "diagnostics": {"n_paths": 300, "dt": 0.004, "checkpoints": [0.0, 1.0, 2.0, 4.0]}
})";

int run(std::initializer_list<std::string> args) { return run_cli(std::vector<std::string>(args)); }

}  // namespace

TEST_CASE("usage errors exit with the configuration code") {
    CHECK(run({}) == kExitConfig);                       // missing subcommand
    CHECK(run({"frobnicate"}) == kExitConfig);           // unknown subcommand
    CHECK(run({"solve", "--bogus"}) == kExitConfig);     // unknown flag
    CHECK(run({"--help"}) == kExitOk);
    TempDir tmp;
    CHECK(run({"solve", "--config", tmp.file("absent.json"), "--out", tmp.file("out")})
          == kExitConfig);
    spit(tmp.file("broken.json"), "{");
    CHECK(run({"solve", "--config", tmp.file("broken.json"), "--out", tmp.file("out")})
          == kExitConfig);
    spit(tmp.file("unknown.json"), R"({"modle": {}})");
    CHECK(run({"solve", "--config", tmp.file("unknown.json"), "--out", tmp.file("out")})
          == kExitConfig);
}

TEST_CASE("solve writes certificates, fields, and the effective config") {
    TempDir tmp;
    const std::string cfg = tmp.file("config.json");
    spit(cfg, kSmallConfig);
    const std::string out = tmp.file("out");
    REQUIRE(run({"solve", "--config", cfg, "--out", out}) == kExitOk);

    CHECK(fs::exists(fs::path(out) / "effective_config.json"));
    CHECK(fs::exists(fs::path(out) / "value_field.csv"));
    CHECK(fs::exists(fs::path(out) / "field_0_R2.csv"));
    CHECK(fs::exists(fs::path(out) / "field_1_R3.csv"));

    const json report = json::parse(slurp((fs::path(out) / "solve_report.json").string()));
    REQUIRE(report["balls"].size() == 2);
    for (const auto& ball : report["balls"]) {
        CHECK(ball["bracket_width"].get<double>() <= 1e-8);
        CHECK(ball["iterations_from_sub"].get<int>() > 0);
    }
    CHECK(report["oracle_used"].get<bool>());
    // npu = 60 on R = 3: truncation ~7e-3 dominates; the origin value is
    // still within a couple of percent of the closed form.
    CHECK(std::abs(report["value_at_origin"].get<double>() - 0.61803398874989485) < 0.02);
    CHECK(report["estimates"]["upper_ok"].get<bool>());
    CHECK(report["estimates"]["lower_ok"].get<bool>());

    // The effective config echo is itself a loadable config.
    const std::string echoed = (fs::path(out) / "effective_config.json").string();
    const std::string out2 = tmp.file("out2");
    CHECK(run({"solve", "--config", echoed, "--out", out2}) == kExitOk);
    CHECK(slurp((fs::path(out2) / "value_field.csv").string())
          == slurp((fs::path(out) / "value_field.csv").string()));
}

TEST_CASE("oracle emits the closed form or refuses clearly") {
    TempDir tmp;
    const std::string cfg = tmp.file("config.json");
    spit(cfg, kSmallConfig);
    const std::string out = tmp.file("out");
    REQUIRE(run({"oracle", "--config", cfg, "--out", out}) == kExitOk);
    const json report = json::parse(slurp((fs::path(out) / "oracle_report.json").string()));
    CHECK(report["m"].get<double>() == doctest::Approx(-0.30901699437494742).epsilon(1e-15));
    CHECK(report["z_at_origin"].get<double>()
          == doctest::Approx(0.61803398874989485).epsilon(1e-15));
    for (const auto& row : report["equation_residuals"]) {
        CHECK(std::abs(row["residual"].get<double>()) < 1e-10);
    }
    CHECK(fs::exists(fs::path(out) / "oracle_field.csv"));

    // alpha != dim sigma^2: no closed form; exit code says so.
    spit(cfg, R"({"model": {"dim": 1, "sigma": 1.0, "alpha": 2.0}})");
    CHECK(run({"oracle", "--config", cfg, "--out", tmp.file("out_none")}) == kExitOracle);
}

TEST_CASE("simulate is reproducible under a fixed seed and moved by --seed") {
    TempDir tmp;
    const std::string cfg = tmp.file("config.json");
    spit(cfg, kSmallConfig);

    const std::string out_a = tmp.file("a");
    const std::string out_b = tmp.file("b");
    const std::string out_c = tmp.file("c");
    REQUIRE(run({"simulate", "--config", cfg, "--out", out_a}) == kExitOk);
    REQUIRE(run({"simulate", "--config", cfg, "--out", out_b}) == kExitOk);
    REQUIRE(run({"simulate", "--config", cfg, "--out", out_c, "--seed", "88"}) == kExitOk);

    const auto report = [](const std::string& dir) {
        return slurp((fs::path(dir) / "cost_report.json").string());
    };
    const auto checkpoints = [](const std::string& dir) {
        return slurp((fs::path(dir) / "checkpoint_summary.csv").string());
    };
    CHECK(report(out_a) == report(out_b));
    CHECK(checkpoints(out_a) == checkpoints(out_b));
    CHECK(report(out_a) != report(out_c));

    const json rep = json::parse(report(out_a));
    CHECK(rep["policy"].get<std::string>() == "optimal-from-field");
    CHECK(rep["cost"]["n_paths"].get<long>() == 300);
    CHECK(rep["cost"]["mean"].get<double>() > 0.0);
    // 300 paths put J within ~0.1 of the limit 0.618 with overwhelming margin.
    CHECK(std::abs(rep["cost"]["mean"].get<double>() - 0.618) < 0.15);

    // The --seed override lands in the echoed config.
    const json echoed = json::parse(slurp((fs::path(out_c) / "effective_config.json").string()));
    CHECK(echoed["sim"]["master_seed"].get<std::uint64_t>() == 88);
}

TEST_CASE("simulate supports explicit policy selection") {
    TempDir tmp;
    const std::string cfg = tmp.file("config.json");
    json doc = json::parse(kSmallConfig);
    doc["policy"] = {{"kind", "zero"}};
    spit(cfg, doc.dump());
    const std::string out = tmp.file("out");
    REQUIRE(run({"simulate", "--config", cfg, "--out", out}) == kExitOk);
    const json rep = json::parse(slurp((fs::path(out) / "cost_report.json").string()));
    CHECK(rep["policy"].get<std::string>() == "zero");
    // Uncontrolled cost to T = 6: 1 - e^-6 * 7 = 0.9826; noisy at 300 paths.
    CHECK(std::abs(rep["cost"]["mean"].get<double>() - 0.9826) < 0.2);
}

TEST_CASE("compare ranks the built-in policy family") {
    TempDir tmp;
    const std::string cfg = tmp.file("config.json");
    spit(cfg, kSmallConfig);
    const std::string out = tmp.file("out");
    REQUIRE(run({"compare", "--config", cfg, "--out", out}) == kExitOk);

    const json rep = json::parse(slurp((fs::path(out) / "compare_report.json").string()));
    REQUIRE(rep["entries"].size() == 4);
    REQUIRE(rep["differences"].size() == 6);
    std::vector<int> ranks;
    for (const auto& entry : rep["entries"]) ranks.push_back(entry["rank"].get<int>());
    std::sort(ranks.begin(), ranks.end());
    CHECK(ranks == std::vector<int>{0, 1, 2, 3});

    const std::string comparison = slurp((fs::path(out) / "comparison.csv").string());
    CHECK(comparison.rfind("name,rank,mean,std_error,truncation_bound,exit_count\n", 0) == 0);
    CHECK(comparison.find("optimal-from-field") != std::string::npos);
    CHECK(comparison.find("scaled(0.5)") != std::string::npos);
    CHECK(comparison.find('\r') == std::string::npos);
    CHECK(fs::exists(fs::path(out) / "differences.csv"));
}

TEST_CASE("a field exported by solve can drive later simulations") {
    TempDir tmp;
    const std::string cfg = tmp.file("config.json");
    spit(cfg, kSmallConfig);
    const std::string solve_out = tmp.file("solve_out");
    REQUIRE(run({"solve", "--config", cfg, "--out", solve_out}) == kExitOk);

    json doc = json::parse(kSmallConfig);
    doc["policy"] = {{"kind", "optimal-from-field"},
                     {"field_csv", (fs::path(solve_out) / "value_field.csv").string()}};
    const std::string cfg2 = tmp.file("config2.json");
    spit(cfg2, doc.dump());
    const std::string out = tmp.file("out");
    REQUIRE(run({"simulate", "--config", cfg2, "--out", out}) == kExitOk);

    // Loading the largest-ball field must reproduce the solve-now run exactly.
    const std::string out_solved = tmp.file("out_solved");
    REQUIRE(run({"simulate", "--config", cfg, "--out", out_solved}) == kExitOk);
    CHECK(slurp((fs::path(out) / "cost_report.json").string())
          == slurp((fs::path(out_solved) / "cost_report.json").string()));
}

TEST_CASE("verify fails fast when a gate cannot hold") {
    // A ball of radius 1 leaves a large truncation error, so the closed-form
    // agreement gate (1e-3) must fail and the exit code must say
    // "verification failed" while the report records every check.
    TempDir tmp;
    const std::string cfg = tmp.file("config.json");
    json doc = json::parse(kSmallConfig);
    doc["solve"]["radii"] = {1.0};
    spit(cfg, doc.dump());
    const std::string out = tmp.file("out");
    CHECK(run({"verify", "--config", cfg, "--out", out}) == kExitVerification);

    const json rep = json::parse(slurp((fs::path(out) / "verification_report.json").string()));
    CHECK_FALSE(rep["all_pass"].get<bool>());
    bool found_oracle_check = false;
    for (const auto& check : rep["checks"]) {
        if (check["name"] == "oracle_sup_error") {
            found_oracle_check = true;
            CHECK_FALSE(check["pass"].get<bool>());
            CHECK(check["sup_err_z"].get<double>() > 1e-3);
        }
    }
    CHECK(found_oracle_check);
}

TEST_CASE("verify passes end to end on a moderate budget") {
    // Sized so the Monte Carlo gates hold with slack: 20k paths at dt = 1e-3
    // give a 3-sigma budget of ~0.010 on J(p*) against the 2% relative gate
    // of 0.0124, and the diagnostics run fast at 4k paths.
    TempDir tmp;
    const std::string cfg = tmp.file("config.json");
    spit(cfg, R"({
        "model": {"dim": 1, "sigma": 1.0, "alpha": 1.0},
        "solve": {"radii": [3.0, 4.0, 5.0], "nodes_per_unit": 100},
        "sim": {"y0": [0.0], "horizon": 15.0, "dt": 1e-3, "n_paths": 20000,
                 "master_seed": 123, "checkpoints": [0.0, 1.0, 2.0, 4.0, 8.0]},
        "diagnostics": {"n_paths": 4000, "dt": 5e-4,
                         "checkpoints": [0.0, 1.0, 2.0, 4.0, 8.0]}
    })");
    const std::string out = tmp.file("out");
    REQUIRE(run({"verify", "--config", cfg, "--out", out}) == kExitOk);

    const json rep = json::parse(slurp((fs::path(out) / "verification_report.json").string()));
    CHECK(rep["all_pass"].get<bool>());
    std::vector<std::string> names;
    for (const auto& check : rep["checks"]) {
        names.push_back(check["name"].get<std::string>());
        CHECK(check["pass"].get<bool>());
    }
    const std::vector<std::string> expected = {
        "nested_differences_decreasing", "value_function_estimates", "oracle_sup_error",
        "hamiltonian_reduction",         "value_identity",           "martingale_flat_under_optimal",
        "martingale_decreasing_under_zero", "transversality"};
    CHECK(names == expected);
    CHECK(fs::exists(fs::path(out) / "value_field.csv"));
}
