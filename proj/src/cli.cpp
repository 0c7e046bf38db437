#include "prodplan/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>

#include "CLI11.hpp"
#include "json.hpp"

#include "prodplan/grid2d.hpp"
#include "prodplan/io.hpp"
#include "prodplan/mc_sim.hpp"
#include "prodplan/pde_solver.hpp"
#include "prodplan/policy.hpp"
#include "prodplan/subsuper.hpp"

namespace prodplan {

namespace {

using nlohmann::json;

// Fixed verification gates.  These mirror the advertised guarantees of the
// method, so they are constants of the program rather than configuration.
constexpr double kOracleSupErrGate = 1e-3;       // sup |z_h - z_exact| on the solved ball
constexpr double kValueRelErrGate = 0.02;        // |J(p*) - z(0)| / z(0)
constexpr double kCiMultiplier = 3.0;            // half-width of Monte Carlo intervals
constexpr double kTransversalityFinalGate = 1e-3;
constexpr double kHamiltonianGapGate = -1e-12;

void ensure_dir(const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + out_dir + ": " + ec.message());
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw ConfigError("write failed for " + path);
}

void write_json(const std::string& path, const json& doc) { write_text(path, doc.dump(2) + "\n"); }

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

json estimate_to_json(const CostEstimate& est) {
    return json{{"mean", est.mean},
                {"std_error", est.std_error},
                {"truncation_bound", est.truncation_bound},
                {"n_paths", est.n_paths},
                {"exit_count", est.exit_count}};
}

json ball_to_json(const BallSolution& ball) {
    return json{{"radius", ball.field.grid.radius},
                {"n_nodes", ball.field.grid.n_nodes},
                {"spacing", ball.field.grid.spacing},
                {"lambda", ball.lambda},
                {"iterations_from_sub", ball.iterations_from_sub},
                {"iterations_from_super", ball.iterations_from_super},
                {"bracket_width", ball.bracket_width},
                {"max_monotonicity_violation", ball.max_monotonicity_violation},
                {"residual_norm", ball.residual_norm}};
}

json estimates_to_json(const EstimateReport& rep) {
    return json{{"upper_ok", rep.upper_ok},
                {"lower_ok", rep.lower_ok},
                {"convex_ok", rep.convex_ok},
                {"monotone_ok", rep.monotone_ok},
                {"max_upper_violation", rep.max_upper_violation},
                {"max_lower_violation", rep.max_lower_violation},
                {"min_z_rr", rep.min_z_rr},
                {"min_z_r_over_r", rep.min_z_r_over_r},
                {"gradient_constant", rep.gradient_constant},
                {"worst_node", rep.worst_node}};
}

json martingale_to_json(const MartingaleSeries& m) {
    return json{{"times", m.times},
                {"mean_deviation", m.mean_deviation},
                {"std_error", m.std_error},
                {"slope_mean", m.slope_mean},
                {"slope_std_error", m.slope_std_error},
                {"n_paths", m.n_paths},
                {"clamped_value_evaluations", m.clamped_value_evaluations}};
}

json transversality_to_json(const TransversalityReport& t) {
    return json{{"times", t.times},
                {"second_moment", t.second_moment},
                {"discounted_second_moment", t.discounted_second_moment},
                {"moment_fit",
                 {{"c1", t.fit.c1}, {"c2", t.fit.c2}, {"valid", t.fit.valid},
                  {"majorizes", t.fit.majorizes}}}};
}

// Resolves policy specs against the model, solving (or loading) the radial
// field at most once per distinct source.
class PolicyResolver {
public:
    PolicyResolver(const RunConfig& cfg) : cfg_(cfg) {}

    Policy resolve(const PolicySpec& spec) {
        if (spec.kind == "zero") return Policy::zero(cfg_.params);
        if (spec.kind == "optimal-closed-form") return Policy::optimal_closed_form(cfg_.params);
        if (spec.kind == "optimal-from-field") {
            return Policy::optimal_from_field(field(spec.field_csv), cfg_.params);
        }
        // scaled
        const std::string source = spec.source == "auto"
                                       ? (cfg_.params.oracle_available() ? "closed-form" : "field")
                                       : spec.source;
        const Policy base = source == "closed-form"
                                ? Policy::optimal_closed_form(cfg_.params)
                                : Policy::optimal_from_field(field(spec.field_csv), cfg_.params);
        return Policy::scaled(spec.gamma, base);
    }

    // Solved (or loaded) value field backing "field" sources; empty csv_path
    // means "solve the configured largest ball now".
    const ValueField& field(const std::string& csv_path) {
        auto it = fields_.find(csv_path);
        if (it != fields_.end()) return it->second;
        if (!csv_path.empty()) {
            StoredField stored = read_value_field_csv(csv_path);
            return fields_.emplace(csv_path, std::move(stored.values)).first->second;
        }
        const RadialGrid grid =
            build_grid_per_unit(cfg_.solve.radii.back(), cfg_.solve.nodes_per_unit);
        const BallSolution ball = solve_on_ball(grid, cfg_.params, cfg_.solve.tols);
        return fields_.emplace(csv_path, to_value_function(ball.field, cfg_.params)).first->second;
    }

private:
    const RunConfig& cfg_;
    std::map<std::string, ValueField> fields_;
};

std::string policy_label(const PolicySpec& spec) {
    if (spec.kind == "scaled") {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "scaled(%g)", spec.gamma);
        return buf;
    }
    return spec.kind;
}

json checkpoint_summary_json(const PathStats& stats, const ModelParams& params) {
    const std::size_t n_cp = stats.checkpoint_times.size();
    const std::size_t n_paths = static_cast<std::size_t>(stats.n_paths);
    json rows = json::array();
    for (std::size_t j = 0; j < n_cp; ++j) {
        double norm2 = 0.0, cost = 0.0;
        for (std::size_t p = 0; p < n_paths; ++p) {
            norm2 += stats.checkpoint_norm2[j * n_paths + p];
            cost += stats.checkpoint_cost[j * n_paths + p];
        }
        norm2 /= static_cast<double>(n_paths);
        cost /= static_cast<double>(n_paths);
        rows.push_back({{"t", stats.checkpoint_times[j]},
                        {"mean_norm2", norm2},
                        {"discounted_mean_norm2",
                         std::exp(-params.alpha * stats.checkpoint_times[j]) * norm2},
                        {"mean_cost_integral", cost}});
    }
    return rows;
}

void write_checkpoint_csv(const std::string& path, const PathStats& stats,
                          const ModelParams& params) {
    const std::size_t n_cp = stats.checkpoint_times.size();
    const std::size_t n_paths = static_cast<std::size_t>(stats.n_paths);
    std::vector<std::vector<double>> rows;
    for (std::size_t j = 0; j < n_cp; ++j) {
        double norm2 = 0.0, cost = 0.0;
        for (std::size_t p = 0; p < n_paths; ++p) {
            norm2 += stats.checkpoint_norm2[j * n_paths + p];
            cost += stats.checkpoint_cost[j * n_paths + p];
        }
        norm2 /= static_cast<double>(n_paths);
        cost /= static_cast<double>(n_paths);
        const double t = stats.checkpoint_times[j];
        rows.push_back({t, norm2, std::exp(-params.alpha * t) * norm2, cost});
    }
    write_csv(path, {"t", "mean_norm2", "discounted_mean_norm2", "mean_cost_integral"}, rows);
}

SimConfig diagnostics_sim(const RunConfig& cfg) {
    SimConfig sim = cfg.sim;
    sim.n_paths = cfg.diagnostics.n_paths;
    sim.dt = cfg.diagnostics.dt;
    sim.checkpoint_times = cfg.diagnostics.checkpoint_times;
    sim.horizon = cfg.diagnostics.checkpoint_times.back();
    return sim;
}

}  // namespace

int cmd_solve(const RunConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    write_text(join_path(out_dir, "effective_config.json"), effective_config_json(cfg));

    const NestedSolveResult nested =
        nested_solve(cfg.solve.radii, cfg.solve.nodes_per_unit, cfg.params, cfg.solve.tols);

    json report;
    report["model"] = {{"dim", cfg.params.dim}, {"sigma", cfg.params.sigma},
                       {"alpha", cfg.params.alpha}};
    report["balls"] = json::array();
    for (std::size_t j = 0; j < nested.balls.size(); ++j) {
        json ball = ball_to_json(nested.balls[j]);
        if (nested.oracle_used) ball["oracle_sup_err_z"] = nested.oracle_sup_err_z[j];
        report["balls"].push_back(std::move(ball));

        char name[64];
        std::snprintf(name, sizeof(name), "field_%zu_R%g.csv", j,
                      nested.balls[j].field.grid.radius);
        const ValueField vf = to_value_function(nested.balls[j].field, cfg.params);
        write_value_field_csv(join_path(out_dir, name), nested.balls[j].field, vf);
    }
    report["consecutive_sup_diff"] = nested.consecutive_sup_diff;
    report["oracle_used"] = nested.oracle_used;

    const BallSolution& final_ball = nested.balls.back();
    const ValueField vf = to_value_function(final_ball.field, cfg.params);
    write_value_field_csv(join_path(out_dir, "value_field.csv"), final_ball.field, vf);

    const EstimateReport estimates = check_estimates(vf, cfg.params);
    report["estimates"] = estimates_to_json(estimates);
    report["value_at_origin"] = vf.z[0];
    if (cfg.params.oracle_available()) {
        const ClosedFormSolution cf = closed_form_m(cfg.params, Branch::positive_z);
        report["oracle"] = {{"m", cf.m}, {"z_at_origin", cf.z(0.0)}};
    }

    write_json(join_path(out_dir, "solve_report.json"), report);
    std::cout << "solved " << nested.balls.size() << " ball(s); z(0) = " << format_double(vf.z[0])
              << "\n";
    return kExitOk;
}

int cmd_oracle(const RunConfig& cfg, const std::string& out_dir) {
    // Throws OracleUnavailable (exit 4) unless alpha = dim sigma^2.
    const ClosedFormSolution cf = closed_form_m(cfg.params, Branch::positive_z);
    const ClosedFormSolution cf_neg = closed_form_m(cfg.params, Branch::negative_z);

    ensure_dir(out_dir);
    write_text(join_path(out_dir, "effective_config.json"), effective_config_json(cfg));

    const RadialGrid grid =
        build_grid_per_unit(cfg.solve.radii.back(), cfg.solve.nodes_per_unit);
    DiscreteField field;
    field.grid = grid;
    field.u.resize(static_cast<std::size_t>(grid.n_nodes));
    ValueField vf;
    vf.grid = grid;
    vf.z.resize(field.u.size());
    vf.z_r.resize(field.u.size());
    vf.z_rr.resize(field.u.size());
    for (int i = 0; i < grid.n_nodes; ++i) {
        const std::size_t s = static_cast<std::size_t>(i);
        const double r = grid.node(i);
        field.u[s] = cf.u(r);
        vf.z[s] = cf.z(r);
        vf.z_r[s] = cf.z_slope(r);
        vf.z_rr[s] = cf.z_curvature();
    }
    write_value_field_csv(join_path(out_dir, "oracle_field.csv"), field, vf);

    json report;
    report["branch"] = "positive-z";
    report["m"] = cf.m;
    report["m_negative_branch"] = cf_neg.m;
    report["z_at_origin"] = cf.z(0.0);
    report["equation_residuals"] = json::array();
    for (double r : {0.0, 0.5, 1.0, 2.0, grid.radius}) {
        report["equation_residuals"].push_back({{"r", r}, {"residual", cf.equation_residual(r)}});
    }
    write_json(join_path(out_dir, "oracle_report.json"), report);
    std::cout << "closed form m = " << format_double(cf.m)
              << ", z(0) = " << format_double(cf.z(0.0)) << "\n";
    return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    write_text(join_path(out_dir, "effective_config.json"), effective_config_json(cfg));

    PolicyResolver resolver(cfg);
    const Policy policy = resolver.resolve(cfg.policy);

    const PathStats stats = simulate_paths(policy, cfg.sim, cfg.params);
    const CostEstimate cost = cost_from_stats(stats, cfg.sim, cfg.params);

    json report;
    report["policy"] = policy_label(cfg.policy);
    report["cost"] = estimate_to_json(cost);
    report["checkpoints"] = checkpoint_summary_json(stats, cfg.params);
    write_json(join_path(out_dir, "cost_report.json"), report);
    write_checkpoint_csv(join_path(out_dir, "checkpoint_summary.csv"), stats, cfg.params);

    std::cout << "J(" << policy_label(cfg.policy) << ") = " << format_double(cost.mean)
              << " +/- " << format_double(kCiMultiplier * cost.std_error)
              << " (truncation bound " << format_double(cost.truncation_bound) << ")\n";
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    write_text(join_path(out_dir, "effective_config.json"), effective_config_json(cfg));

    json report;
    json checks = json::array();
    bool all_pass = true;
    const auto add_check = [&](const std::string& name, bool pass, json details) {
        details["name"] = name;
        details["pass"] = pass;
        checks.push_back(std::move(details));
        all_pass = all_pass && pass;
    };

    // 1. Solve with certificates; any certificate failure throws (exit 3).
    const NestedSolveResult nested =
        nested_solve(cfg.solve.radii, cfg.solve.nodes_per_unit, cfg.params, cfg.solve.tols);
    const BallSolution& final_ball = nested.balls.back();
    const ValueField vf = to_value_function(final_ball.field, cfg.params);
    write_value_field_csv(join_path(out_dir, "value_field.csv"), final_ball.field, vf);
    report["balls"] = json::array();
    for (const BallSolution& ball : nested.balls) report["balls"].push_back(ball_to_json(ball));

    // 2. Interior values settle as the boundary recedes.
    if (nested.consecutive_sup_diff.size() >= 2) {
        bool decreasing = true;
        for (std::size_t j = 1; j < nested.consecutive_sup_diff.size(); ++j) {
            decreasing = decreasing
                         && nested.consecutive_sup_diff[j] < nested.consecutive_sup_diff[j - 1];
        }
        add_check("nested_differences_decreasing", decreasing,
                  {{"consecutive_sup_diff", nested.consecutive_sup_diff}});
    }

    // 3. Qualitative estimates on the value function.
    const EstimateReport estimates = check_estimates(vf, cfg.params);
    add_check("value_function_estimates", estimates.all_ok(), estimates_to_json(estimates));

    // 4. Closed-form agreement, when the oracle applies.
    if (nested.oracle_used) {
        const double err = nested.oracle_sup_err_z.back();
        add_check("oracle_sup_error", err <= kOracleSupErrGate,
                  {{"sup_err_z", err}, {"gate", kOracleSupErrGate}});
    }

    // 5. Pointwise Hamiltonian reduction at a few states (probe radii scale
    //    with the solved ball so they always lie inside the field).
    {
        const auto field_source = field_value_source(vf);
        double worst_gap = std::numeric_limits<double>::infinity();
        for (double fraction : {0.2, 0.4, 0.7}) {
            std::vector<double> gradient(static_cast<std::size_t>(cfg.params.dim), 0.0);
            gradient[0] = field_source->z_slope(fraction * vf.grid.radius);
            const HamiltonianCheck check = hamiltonian_reduction_check(gradient);
            worst_gap = std::min(worst_gap, check.min_sampled_gap);
        }
        add_check("hamiltonian_reduction", worst_gap >= kHamiltonianGapGate,
                  {{"min_sampled_gap", worst_gap}, {"gate", kHamiltonianGapGate}});
    }

    const Policy optimal = Policy::optimal_from_field(vf, cfg.params);
    const auto value_source = cfg.params.oracle_available()
                                  ? closed_form_value_source(cfg.params)
                                  : field_value_source(vf);

    // 6. Value identity J(p*) = z(0): Monte Carlo cost under the optimal
    //    feedback against the PDE value at the origin, within noise +
    //    truncation + discretization bias.
    {
        const CostEstimate cost = estimate_cost(optimal, cfg.sim, cfg.params);
        SimConfig bias_cfg = cfg.sim;
        bias_cfg.n_paths = cfg.diagnostics.n_paths;
        const DtBiasEstimate bias = estimate_dt_bias(optimal, bias_cfg, cfg.params);
        const double reference = cfg.params.oracle_available()
                                     ? closed_form_z(0.0, cfg.params)
                                     : vf.z[0];
        const double err = std::abs(cost.mean - reference);
        const double budget = kCiMultiplier * cost.std_error + cost.truncation_bound
                              + std::abs(bias.extrapolated_bias);
        const bool pass = err <= budget && err <= kValueRelErrGate * std::abs(reference);
        add_check("value_identity", pass,
                  {{"cost", estimate_to_json(cost)},
                   {"reference_z0", reference},
                   {"abs_error", err},
                   {"error_budget", budget},
                   {"rel_error", err / std::abs(reference)},
                   {"dt_bias",
                    {{"dt", bias.dt},
                     {"extrapolated_bias", bias.extrapolated_bias},
                     {"std_error", bias.coarse_minus_fine_std_error},
                     {"n_paths", bias.n_paths}}}});
    }

    // 7./8. Martingale property along optimal paths, strict supermartingale
    //       under the zero policy.
    const SimConfig diag_sim = diagnostics_sim(cfg);
    DiagnosticsReport optimal_diag = run_diagnostics(optimal, *value_source, diag_sim, cfg.params);
    {
        const MartingaleSeries& m = optimal_diag.martingale;
        const double half_width = kCiMultiplier * m.slope_std_error;
        add_check("martingale_flat_under_optimal", std::abs(m.slope_mean) <= half_width,
                  martingale_to_json(m));
        const MartingaleSeries zero_m = martingale_diagnostic(Policy::zero(cfg.params),
                                                              *value_source, diag_sim, cfg.params);
        add_check("martingale_decreasing_under_zero",
                  zero_m.slope_mean + kCiMultiplier * zero_m.slope_std_error < 0.0,
                  martingale_to_json(zero_m));
    }

    // 9. Transversality and the exponential moment envelope under p*.
    {
        const TransversalityReport& t = optimal_diag.transversality;
        bool decreasing = true;
        for (std::size_t j = 1; j < t.times.size(); ++j) {
            if (t.times[j - 1] < 2.0) continue;
            decreasing = decreasing
                         && t.discounted_second_moment[j] < t.discounted_second_moment[j - 1];
        }
        const bool final_small = t.discounted_second_moment.back() < kTransversalityFinalGate;
        add_check("transversality", decreasing && final_small && t.fit.valid && t.fit.majorizes,
                  transversality_to_json(t));
    }

    report["checks"] = checks;
    report["all_pass"] = all_pass;
    write_json(join_path(out_dir, "verification_report.json"), report);

    for (const auto& check : checks) {
        std::cout << (check["pass"].get<bool>() ? "[PASS] " : "[FAIL] ")
                  << check["name"].get<std::string>() << "\n";
    }
    return all_pass ? kExitOk : kExitVerification;
}

int cmd_compare(const RunConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    write_text(join_path(out_dir, "effective_config.json"), effective_config_json(cfg));

    PolicyResolver resolver(cfg);
    std::vector<std::pair<std::string, Policy>> policies;
    policies.reserve(cfg.policies.size());
    for (const PolicySpec& spec : cfg.policies) {
        policies.emplace_back(policy_label(spec), resolver.resolve(spec));
    }

    const ComparisonTable table = compare_policies(policies, cfg.sim, cfg.params);

    json report;
    report["entries"] = json::array();
    for (const ComparisonEntry& entry : table.entries) {
        json e = estimate_to_json(entry.estimate);
        e["name"] = entry.name;
        e["rank"] = entry.rank;
        report["entries"].push_back(std::move(e));
    }
    report["differences"] = json::array();
    for (const PairedDifference& diff : table.differences) {
        report["differences"].push_back({{"a", diff.name_a},
                                         {"b", diff.name_b},
                                         {"mean_a_minus_b", diff.mean_a_minus_b},
                                         {"std_error", diff.std_error}});
    }
    write_json(join_path(out_dir, "compare_report.json"), report);

    // CSV views of the same tables (names are quoted-free labels).
    {
        std::ofstream out(join_path(out_dir, "comparison.csv"), std::ios::binary);
        if (!out) throw ConfigError("cannot open comparison.csv for writing");
        out << "name,rank,mean,std_error,truncation_bound,exit_count\n";
        for (const ComparisonEntry& entry : table.entries) {
            out << entry.name << ',' << entry.rank << ',' << format_double(entry.estimate.mean)
                << ',' << format_double(entry.estimate.std_error) << ','
                << format_double(entry.estimate.truncation_bound) << ','
                << entry.estimate.exit_count << '\n';
        }
        out << std::flush;
        if (!out) throw ConfigError("write failed for comparison.csv");
    }
    {
        std::ofstream out(join_path(out_dir, "differences.csv"), std::ios::binary);
        if (!out) throw ConfigError("cannot open differences.csv for writing");
        out << "a,b,mean_a_minus_b,std_error\n";
        for (const PairedDifference& diff : table.differences) {
            out << diff.name_a << ',' << diff.name_b << ','
                << format_double(diff.mean_a_minus_b) << ',' << format_double(diff.std_error)
                << '\n';
        }
        out << std::flush;
        if (!out) throw ConfigError("write failed for differences.csv");
    }

    for (const ComparisonEntry& entry : table.entries) {
        std::cout << entry.rank << ": J(" << entry.name << ") = "
                  << format_double(entry.estimate.mean) << " +/- "
                  << format_double(kCiMultiplier * entry.estimate.std_error) << "\n";
    }
    return kExitOk;
}

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Value function of a stochastic production-planning model: "
                 "PDE solve with two-sided certificates and Monte Carlo verification"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    long long seed = 0;
    bool seed_given = false;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON configuration file (defaults built in)");
        sub->add_option("--out", out_dir, "output directory")->capture_default_str();
        sub->add_option("--seed", seed, "override sim.master_seed")
            ->each([&](const std::string&) { seed_given = true; });
    };
    CLI::App* solve = app.add_subcommand("solve", "solve the PDE on nested balls");
    CLI::App* oracle = app.add_subcommand("oracle", "emit the closed-form solution");
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo cost of one policy");
    CLI::App* verify = app.add_subcommand("verify", "run every optimality verification gate");
    CLI::App* compare = app.add_subcommand("compare", "rank policies under common random numbers");
    for (CLI::App* sub : {solve, oracle, simulate, verify, compare}) add_common(sub);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("prodplan");
    for (const std::string& arg : args) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (seed_given) cfg.sim.master_seed = static_cast<std::uint64_t>(seed);

        if (solve->parsed()) return cmd_solve(cfg, out_dir);
        if (oracle->parsed()) return cmd_oracle(cfg, out_dir);
        if (simulate->parsed()) return cmd_simulate(cfg, out_dir);
        if (verify->parsed()) return cmd_verify(cfg, out_dir);
        return cmd_compare(cfg, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const OracleUnavailable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOracle;
    } catch (const BoundViolated& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerification;
    } catch (const NonPositiveSigma& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NonPositiveAlpha& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NonPositiveDim& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const BadGridSpec& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        // Solver certificates and numeric failures: MaxItersExceeded,
        // MonotonicityViolated, BracketTooWide, NonPositiveNode, ...
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace prodplan
