#include "prodplan/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace prodplan {

using nlohmann::json;

RunConfig::RunConfig() {
    // The value identity J(p*) = z(0) is anchored at the origin, so the
    // default simulation starts there.
    sim.y0 = {0.0};
    policies = {
        PolicySpec{"optimal-from-field", 1.0, "auto", ""},
        PolicySpec{"zero", 0.0, "auto", ""},
        PolicySpec{"scaled", 0.5, "auto", ""},
        PolicySpec{"scaled", 1.5, "auto", ""},
    };
}

namespace {

void expect_keys(const json& obj, const std::string& section,
                 const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError(section + " must be a JSON object");
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw ConfigError("unknown key '" + item.key() + "' in " + section);
        }
    }
}

double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where + " must be a number");
    return v.get<double>();
}

long as_integer(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ConfigError(where + " must be an integer");
    return v.get<long>();
}

std::vector<double> as_number_list(const json& v, const std::string& where) {
    if (!v.is_array()) throw ConfigError(where + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& item : v) out.push_back(as_number(item, where + " entry"));
    return out;
}

SolverTols parse_tols(const json& obj, const std::string& section, SolverTols tols) {
    if (obj.contains("tol_iter")) tols.tol_iter = as_number(obj["tol_iter"], section + ".tol_iter");
    if (obj.contains("tol_bracket")) {
        tols.tol_bracket = as_number(obj["tol_bracket"], section + ".tol_bracket");
    }
    if (obj.contains("tol_monotone")) {
        tols.tol_monotone = as_number(obj["tol_monotone"], section + ".tol_monotone");
    }
    if (obj.contains("max_iters")) {
        tols.max_iters = static_cast<int>(as_integer(obj["max_iters"], section + ".max_iters"));
    }
    if (!(tols.tol_iter > 0.0) || !(tols.tol_bracket > 0.0) || !(tols.tol_monotone > 0.0)
        || tols.max_iters < 1) {
        throw ConfigError(section + ": tolerances must be positive and max_iters >= 1");
    }
    return tols;
}

PolicySpec parse_policy(const json& obj, const std::string& section) {
    expect_keys(obj, section, {"kind", "gamma", "source", "field_csv"});
    PolicySpec spec;
    if (!obj.contains("kind")) throw ConfigError(section + " needs a 'kind'");
    if (!obj["kind"].is_string()) throw ConfigError(section + ".kind must be a string");
    spec.kind = obj["kind"].get<std::string>();
    static const std::set<std::string> kinds = {"optimal-from-field", "optimal-closed-form",
                                                "zero", "scaled"};
    if (!kinds.count(spec.kind)) throw ConfigError(section + ".kind '" + spec.kind + "' unknown");

    spec.gamma = (spec.kind == "zero") ? 0.0 : 1.0;
    if (obj.contains("gamma")) {
        if (spec.kind != "scaled") {
            throw ConfigError(section + ".gamma only applies to kind 'scaled'");
        }
        spec.gamma = as_number(obj["gamma"], section + ".gamma");
    }
    if (obj.contains("source")) {
        if (!obj["source"].is_string()) throw ConfigError(section + ".source must be a string");
        spec.source = obj["source"].get<std::string>();
        static const std::set<std::string> sources = {"auto", "field", "closed-form"};
        if (!sources.count(spec.source)) {
            throw ConfigError(section + ".source '" + spec.source + "' unknown");
        }
    }
    if (obj.contains("field_csv")) {
        if (!obj["field_csv"].is_string()) {
            throw ConfigError(section + ".field_csv must be a string");
        }
        spec.field_csv = obj["field_csv"].get<std::string>();
    }
    return spec;
}

RunConfig parse_json(const json& root) {
    expect_keys(root, "config",
                {"model", "solve", "grid2d", "sim", "diagnostics", "policy", "policies"});
    RunConfig cfg;

    if (root.contains("model")) {
        const json& m = root["model"];
        expect_keys(m, "model", {"dim", "sigma", "alpha"});
        int dim = cfg.params.dim;
        double sigma = cfg.params.sigma;
        double alpha = cfg.params.alpha;
        if (m.contains("dim")) dim = static_cast<int>(as_integer(m["dim"], "model.dim"));
        if (m.contains("sigma")) sigma = as_number(m["sigma"], "model.sigma");
        if (m.contains("alpha")) alpha = as_number(m["alpha"], "model.alpha");
        cfg.params = validate_params(dim, sigma, alpha);
        cfg.sim.y0.assign(static_cast<std::size_t>(dim), 0.0);
    }

    if (root.contains("solve")) {
        const json& s = root["solve"];
        expect_keys(s, "solve", {"radii", "nodes_per_unit", "tol_iter", "tol_bracket",
                                 "tol_monotone", "max_iters"});
        if (s.contains("radii")) cfg.solve.radii = as_number_list(s["radii"], "solve.radii");
        if (cfg.solve.radii.empty()) throw ConfigError("solve.radii must not be empty");
        if (s.contains("nodes_per_unit")) {
            cfg.solve.nodes_per_unit =
                static_cast<int>(as_integer(s["nodes_per_unit"], "solve.nodes_per_unit"));
        }
        cfg.solve.tols = parse_tols(s, "solve", cfg.solve.tols);
    }

    if (root.contains("grid2d")) {
        const json& g = root["grid2d"];
        expect_keys(g, "grid2d", {"enabled", "extent", "n_per_axis", "agreement_radius",
                                  "tol_iter", "tol_bracket", "tol_monotone", "max_iters"});
        cfg.grid2d.enabled = true;
        if (g.contains("enabled")) {
            if (!g["enabled"].is_boolean()) throw ConfigError("grid2d.enabled must be a boolean");
            cfg.grid2d.enabled = g["enabled"].get<bool>();
        }
        if (g.contains("extent")) cfg.grid2d.extent = as_number(g["extent"], "grid2d.extent");
        if (g.contains("n_per_axis")) {
            cfg.grid2d.n_per_axis =
                static_cast<int>(as_integer(g["n_per_axis"], "grid2d.n_per_axis"));
        }
        if (g.contains("agreement_radius")) {
            cfg.grid2d.agreement_radius =
                as_number(g["agreement_radius"], "grid2d.agreement_radius");
        }
        cfg.grid2d.tols = parse_tols(g, "grid2d", cfg.grid2d.tols);
    }

    if (root.contains("sim")) {
        const json& s = root["sim"];
        expect_keys(s, "sim",
                    {"y0", "horizon", "dt", "n_paths", "master_seed", "checkpoints"});
        if (s.contains("y0")) cfg.sim.y0 = as_number_list(s["y0"], "sim.y0");
        if (s.contains("horizon")) cfg.sim.horizon = as_number(s["horizon"], "sim.horizon");
        if (s.contains("dt")) cfg.sim.dt = as_number(s["dt"], "sim.dt");
        if (s.contains("n_paths")) cfg.sim.n_paths = as_integer(s["n_paths"], "sim.n_paths");
        if (s.contains("master_seed")) {
            cfg.sim.master_seed =
                static_cast<std::uint64_t>(as_integer(s["master_seed"], "sim.master_seed"));
        }
        if (s.contains("checkpoints")) {
            cfg.sim.checkpoint_times = as_number_list(s["checkpoints"], "sim.checkpoints");
        }
    }

    if (root.contains("diagnostics")) {
        const json& d = root["diagnostics"];
        expect_keys(d, "diagnostics", {"n_paths", "dt", "checkpoints"});
        if (d.contains("n_paths")) {
            cfg.diagnostics.n_paths = as_integer(d["n_paths"], "diagnostics.n_paths");
        }
        if (d.contains("dt")) cfg.diagnostics.dt = as_number(d["dt"], "diagnostics.dt");
        if (d.contains("checkpoints")) {
            cfg.diagnostics.checkpoint_times =
                as_number_list(d["checkpoints"], "diagnostics.checkpoints");
        }
        if (cfg.diagnostics.n_paths < 2 || !(cfg.diagnostics.dt > 0.0)
            || cfg.diagnostics.checkpoint_times.empty()) {
            throw ConfigError("diagnostics: need n_paths >= 2, dt > 0, and checkpoints");
        }
    }

    if (root.contains("policy")) cfg.policy = parse_policy(root["policy"], "policy");

    if (root.contains("policies")) {
        if (!root["policies"].is_array() || root["policies"].empty()) {
            throw ConfigError("policies must be a non-empty array");
        }
        cfg.policies.clear();
        int index = 0;
        for (const auto& p : root["policies"]) {
            cfg.policies.push_back(parse_policy(p, "policies[" + std::to_string(index) + "]"));
            ++index;
        }
    }

    // Cross-field checks that do not need the simulator.
    validate_sim_config(cfg.sim, cfg.params);
    return cfg;
}

json policy_to_json(const PolicySpec& spec) {
    json p;
    p["kind"] = spec.kind;
    if (spec.kind == "scaled") p["gamma"] = spec.gamma;
    p["source"] = spec.source;
    if (!spec.field_csv.empty()) p["field_csv"] = spec.field_csv;
    return p;
}

}  // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    return parse_json(root);
}

std::string effective_config_json(const RunConfig& cfg) {
    json root;
    root["model"] = {{"dim", cfg.params.dim}, {"sigma", cfg.params.sigma},
                     {"alpha", cfg.params.alpha}};
    root["solve"] = {{"radii", cfg.solve.radii},
                     {"nodes_per_unit", cfg.solve.nodes_per_unit},
                     {"tol_iter", cfg.solve.tols.tol_iter},
                     {"tol_bracket", cfg.solve.tols.tol_bracket},
                     {"tol_monotone", cfg.solve.tols.tol_monotone},
                     {"max_iters", cfg.solve.tols.max_iters}};
    root["grid2d"] = {{"enabled", cfg.grid2d.enabled},
                      {"extent", cfg.grid2d.extent},
                      {"n_per_axis", cfg.grid2d.n_per_axis},
                      {"agreement_radius", cfg.grid2d.agreement_radius},
                      {"tol_iter", cfg.grid2d.tols.tol_iter},
                      {"tol_bracket", cfg.grid2d.tols.tol_bracket},
                      {"tol_monotone", cfg.grid2d.tols.tol_monotone},
                      {"max_iters", cfg.grid2d.tols.max_iters}};
    root["sim"] = {{"y0", cfg.sim.y0},
                   {"horizon", cfg.sim.horizon},
                   {"dt", cfg.sim.dt},
                   {"n_paths", cfg.sim.n_paths},
                   {"master_seed", cfg.sim.master_seed},
                   {"checkpoints", cfg.sim.checkpoint_times}};
    root["diagnostics"] = {{"n_paths", cfg.diagnostics.n_paths},
                           {"dt", cfg.diagnostics.dt},
                           {"checkpoints", cfg.diagnostics.checkpoint_times}};
    root["policy"] = policy_to_json(cfg.policy);
    root["policies"] = json::array();
    for (const PolicySpec& spec : cfg.policies) root["policies"].push_back(policy_to_json(spec));
    return root.dump(2) + "\n";
}

}  // namespace prodplan
