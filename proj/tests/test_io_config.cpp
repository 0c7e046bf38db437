#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "prodplan/config.hpp"
#include "prodplan/io.hpp"
#include "prodplan/pde_solver.hpp"

using namespace prodplan;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory per test run; removed on destruction.
struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path()
               / ("prodplan_test_" + std::to_string(::getpid()) + "_"
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

}  // namespace

TEST_CASE("every formatted double parses back to the identical bits") {
    const double values[] = {0.0,
                             -0.0,
                             0.1,
                             1.0 / 3.0,
                             1.0,
                             -2.5e-7,
                             6.02214076e23,
                             1e-300,
                             0.61803398874989485,
                             -0.73416828905926146};
    for (double v : values) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("CSV files use unix newlines and reject ragged rows") {
    TempDir tmp;
    const std::string path = tmp.file("table.csv");
    write_csv(path, {"a", "b"}, {{1.0, 2.0}, {0.1, -3.0}});
    const std::string text = slurp(path);
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.rfind("a,b\n", 0) == 0);
    CHECK(text.back() == '\n');
    CHECK(text.find("0.10000000000000001") != std::string::npos);

    CHECK_THROWS_AS(write_csv(path, {"a", "b"}, {{1.0}}), ConfigError);
    CHECK_THROWS_AS(write_csv("/nonexistent_dir_zz/t.csv", {"a"}, {{1.0}}), ConfigError);
}

TEST_CASE("a solved field round-trips through its CSV byte for byte") {
    const ModelParams params = validate_params(1, 1.0, 1.0);
    const BallSolution ball = solve_on_ball(build_grid_per_unit(2.0, 50), params);
    const ValueField vf = to_value_function(ball.field, params);

    TempDir tmp;
    const std::string path = tmp.file("field.csv");
    write_value_field_csv(path, ball.field, vf);
    const StoredField stored = read_value_field_csv(path);

    CHECK(stored.field.grid.n_nodes == ball.field.grid.n_nodes);
    CHECK(stored.field.grid.radius == ball.field.grid.radius);
    CHECK(stored.field.grid.spacing == ball.field.grid.spacing);
    CHECK(stored.field.u == ball.field.u);
    CHECK(stored.values.z == vf.z);
    CHECK(stored.values.z_r == vf.z_r);
    CHECK(stored.values.z_rr == vf.z_rr);

    // Writing the re-read field again produces the identical file.
    const std::string path2 = tmp.file("field2.csv");
    write_value_field_csv(path2, stored.field, stored.values);
    CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("stored-field reader rejects malformed files") {
    TempDir tmp;
    CHECK_THROWS_AS(read_value_field_csv(tmp.file("missing.csv")), ConfigError);

    const std::string bad_header = tmp.file("bad_header.csv");
    spit(bad_header, "r,u,z\n0,1,0\n0.1,1,0\n0.2,1,0\n");
    CHECK_THROWS_AS(read_value_field_csv(bad_header), ConfigError);

    const std::string header = "r,u,z,dz_dr,d2z_dr2\n";

    const std::string ragged = tmp.file("ragged.csv");
    spit(ragged, header + "0,1,0,0,0\n0.1,0.9,0.2\n0.2,0.8,0.4,2,0\n");
    CHECK_THROWS_AS(read_value_field_csv(ragged), ConfigError);

    const std::string nonnumeric = tmp.file("nonnumeric.csv");
    spit(nonnumeric, header + "0,1,0,0,0\n0.1,xyz,0.2,2,0\n0.2,0.8,0.4,2,0\n");
    CHECK_THROWS_AS(read_value_field_csv(nonnumeric), ConfigError);

    const std::string nonuniform = tmp.file("nonuniform.csv");
    spit(nonuniform, header + "0,1,0,0,0\n0.1,0.9,0.2,2,0\n0.35,0.8,0.4,2,0\n");
    CHECK_THROWS_AS(read_value_field_csv(nonuniform), ConfigError);

    const std::string offset_origin = tmp.file("offset.csv");
    spit(offset_origin, header + "0.5,1,0,0,0\n0.6,0.9,0.2,2,0\n0.7,0.8,0.4,2,0\n");
    CHECK_THROWS_AS(read_value_field_csv(offset_origin), ConfigError);

    const std::string too_short = tmp.file("short.csv");
    spit(too_short, header + "0,1,0,0,0\n0.1,0.9,0.2,2,0\n");
    CHECK_THROWS_AS(read_value_field_csv(too_short), ConfigError);
}

TEST_CASE("an empty config yields the documented defaults") {
    const RunConfig cfg = parse_config("{}");
    CHECK(cfg.params.dim == 1);
    CHECK(cfg.params.sigma == 1.0);
    CHECK(cfg.params.alpha == 1.0);
    CHECK(cfg.solve.radii == std::vector<double>{3.0, 4.0, 5.0, 6.0});
    CHECK(cfg.solve.nodes_per_unit == 200);
    CHECK_FALSE(cfg.grid2d.enabled);
    CHECK(cfg.sim.y0 == std::vector<double>{0.0});
    CHECK(cfg.sim.horizon == 30.0);
    CHECK(cfg.sim.dt == 1e-3);
    CHECK(cfg.sim.n_paths == 100000);
    CHECK(cfg.sim.master_seed == 0);
    CHECK(cfg.sim.checkpoint_times == std::vector<double>{0.0, 1.0, 2.0, 4.0, 8.0});
    CHECK(cfg.diagnostics.n_paths == 20000);
    CHECK(cfg.diagnostics.dt == 5e-4);
    CHECK(cfg.policy.kind == "optimal-from-field");
    REQUIRE(cfg.policies.size() == 4);
    CHECK(cfg.policies[1].kind == "zero");
    CHECK(cfg.policies[2].gamma == 0.5);
    CHECK(cfg.policies[3].gamma == 1.5);
}

TEST_CASE("unknown keys are rejected at every level") {
    CHECK_THROWS_AS(parse_config(R"({"modell": {}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"model": {"sgima": 1.0}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"solve": {"foo": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"grid2d": {"foo": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sim": {"foo": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"diagnostics": {"foo": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"policy": {"kind": "zero", "foo": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"policies": [{"kind": "zero", "foo": 1}]})"), ConfigError);
}

TEST_CASE("configs are range- and type-checked") {
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"model": {"dim": 0}})"), NonPositiveDim);
    CHECK_THROWS_AS(parse_config(R"({"model": {"sigma": -1.0}})"), NonPositiveSigma);
    CHECK_THROWS_AS(parse_config(R"({"model": {"alpha": 0.0}})"), NonPositiveAlpha);
    CHECK_THROWS_AS(parse_config(R"({"model": {"dim": "x"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"model": {"dim": 1.5}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sim": {"n_paths": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sim": {"n_paths": 2.5}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sim": {"y0": [1.0, 2.0]}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sim": {"dt": 0.0}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sim": {"checkpoints": [0.0, 40.0]}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"solve": {"radii": []}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"solve": {"tol_iter": 0.0}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"diagnostics": {"dt": 0.0}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"policies": []})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"policy": {"kind": "nope"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"policy": {"kind": "zero", "gamma": 2.0}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"policy": {"kind": "scaled", "source": "nope"}})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"policy": {"gamma": 1.0}})"), ConfigError);
}

TEST_CASE("a present grid2d section enables the cross-check unless told otherwise") {
    CHECK(parse_config(R"({"model": {"dim": 2, "alpha": 2.0},
                           "grid2d": {"extent": 4.0}})").grid2d.enabled);
    CHECK_FALSE(parse_config(R"({"grid2d": {"enabled": false}})").grid2d.enabled);
}

TEST_CASE("the effective config echo is a fixed point of the parser") {
    const std::string text = R"({
        "model": {"dim": 1, "sigma": 1.0, "alpha": 1.0},
        "solve": {"radii": [2.0, 3.0], "nodes_per_unit": 60},
        "sim": {"y0": [0.5], "horizon": 5.0, "dt": 0.01, "n_paths": 100,
                 "master_seed": 7, "checkpoints": [0.0, 1.0]},
        "diagnostics": {"n_paths": 50, "dt": 0.01, "checkpoints": [0.0, 1.0]},
        "policy": {"kind": "scaled", "gamma": 0.75, "source": "closed-form"}
    })";
    const RunConfig cfg = parse_config(text);
    CHECK(cfg.sim.master_seed == 7);
    CHECK(cfg.policy.gamma == 0.75);
    CHECK(cfg.policy.source == "closed-form");

    const std::string echo1 = effective_config_json(cfg);
    const RunConfig cfg2 = parse_config(echo1);
    const std::string echo2 = effective_config_json(cfg2);
    CHECK(echo1 == echo2);
    CHECK(echo1.back() == '\n');
}

TEST_CASE("configs load from disk with a helpful failure for missing files") {
    TempDir tmp;
    CHECK_THROWS_AS(load_config(tmp.file("missing.json")), ConfigError);
    const std::string path = tmp.file("config.json");
    spit(path, R"({"model": {"dim": 1, "sigma": 2.0, "alpha": 3.0}})");
    const RunConfig cfg = load_config(path);
    CHECK(cfg.params.sigma == 2.0);
    CHECK(cfg.params.alpha == 3.0);
}
