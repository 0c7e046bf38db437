#include "prodplan/mc_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "prodplan/rng.hpp"

namespace prodplan {

namespace {

long step_count(const SimConfig& cfg) { return std::lround(cfg.horizon / cfg.dt); }

std::vector<long> checkpoint_steps(const SimConfig& cfg, long n_steps) {
    std::vector<long> steps;
    steps.reserve(cfg.checkpoint_times.size());
    for (double t : cfg.checkpoint_times) {
        const long k = std::lround(t / cfg.dt);
        if (k < 0 || k > n_steps) {
            throw ConfigError("checkpoint time " + std::to_string(t)
                              + " lies outside the simulated horizon");
        }
        if (!steps.empty() && k <= steps.back()) {
            throw ConfigError("checkpoint times must be strictly increasing after snapping "
                              "to the step grid");
        }
        steps.push_back(k);
    }
    return steps;
}

struct MeanStdError {
    double mean = 0.0;
    double std_error = 0.0;
};

// Mean and standard error of the mean, accumulated in index order so results
// do not depend on scheduling.
MeanStdError mean_and_std_error(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace

void validate_sim_config(const SimConfig& cfg, const ModelParams& params) {
    if (static_cast<int>(cfg.y0.size()) != params.dim) {
        throw ConfigError("initial state has " + std::to_string(cfg.y0.size())
                          + " components but the model dimension is " + std::to_string(params.dim));
    }
    if (!(cfg.horizon > 0.0)) throw ConfigError("horizon must be > 0");
    if (!(cfg.dt > 0.0)) throw ConfigError("dt must be > 0");
    if (cfg.n_paths < 2) throw ConfigError("need at least 2 paths for standard errors");
    const long n_steps = step_count(cfg);
    if (n_steps < 1) throw ConfigError("horizon shorter than one time step");
    (void)checkpoint_steps(cfg, n_steps);
}

PathStats simulate_paths(const Policy& policy, const SimConfig& cfg, const ModelParams& params) {
    validate_sim_config(cfg, params);

    const long n_steps = step_count(cfg);
    const std::vector<long> cp_steps = checkpoint_steps(cfg, n_steps);
    const std::size_t n_cp = cp_steps.size();
    const int dim = params.dim;
    const double dt = cfg.dt;
    const double noise_scale = params.sigma * std::sqrt(dt);
    const double decay = std::exp(-params.alpha * dt);
    const double source_radius =
        policy.value_source() ? policy.value_source()->radius()
                              : std::numeric_limits<double>::infinity();

    PathStats stats;
    stats.n_paths = cfg.n_paths;
    stats.n_steps = n_steps;
    stats.dt = dt;
    stats.checkpoint_times.reserve(n_cp);
    for (long k : cp_steps) stats.checkpoint_times.push_back(static_cast<double>(k) * dt);
    const std::size_t n_paths_z = static_cast<std::size_t>(cfg.n_paths);
    stats.cost_integral.resize(n_paths_z);
    stats.terminal_norm2.resize(n_paths_z);
    stats.checkpoint_norm2.resize(n_cp * n_paths_z);
    stats.checkpoint_cost.resize(n_cp * n_paths_z);

    std::vector<double> y(static_cast<std::size_t>(dim));
    for (long path = 0; path < cfg.n_paths; ++path) {
        NormalStream rng(cfg.master_seed, static_cast<std::uint64_t>(path));
        std::copy(cfg.y0.begin(), cfg.y0.end(), y.begin());
        double discount = 1.0;
        double cost = 0.0;
        bool exited = false;
        std::size_t cp = 0;

        double norm2 = 0.0;
        for (double yi : y) norm2 += yi * yi;

        for (long k = 0; k < n_steps; ++k) {
            while (cp < n_cp && cp_steps[cp] == k) {
                stats.checkpoint_norm2[cp * n_paths_z + static_cast<std::size_t>(path)] = norm2;
                stats.checkpoint_cost[cp * n_paths_z + static_cast<std::size_t>(path)] = cost;
                ++cp;
            }

            const double r = std::sqrt(norm2);
            double r_eval = r;
            if (r > source_radius) {
                r_eval = source_radius;
                exited = true;
            }
            const double gain = policy.radial_gain(r_eval);
            cost += discount * (gain * gain * norm2 + norm2) * dt;

            const double drift = 1.0 + gain * dt;
            norm2 = 0.0;
            for (int i = 0; i < dim; ++i) {
                const std::size_t s = static_cast<std::size_t>(i);
                y[s] = y[s] * drift + noise_scale * rng.next();
                norm2 += y[s] * y[s];
            }
            discount *= decay;
        }

        while (cp < n_cp) {
            stats.checkpoint_norm2[cp * n_paths_z + static_cast<std::size_t>(path)] = norm2;
            stats.checkpoint_cost[cp * n_paths_z + static_cast<std::size_t>(path)] = cost;
            ++cp;
        }
        stats.cost_integral[static_cast<std::size_t>(path)] = cost;
        stats.terminal_norm2[static_cast<std::size_t>(path)] = norm2;
        if (exited) ++stats.exit_count;
    }
    return stats;
}

CostEstimate cost_from_stats(const PathStats& stats, const SimConfig& cfg,
                             const ModelParams& params) {
    CostEstimate est;
    est.n_paths = stats.n_paths;
    est.exit_count = stats.exit_count;
    const MeanStdError cost = mean_and_std_error(stats.cost_integral);
    est.mean = cost.mean;
    est.std_error = cost.std_error;

    const double horizon = static_cast<double>(stats.n_steps) * stats.dt;
    const MeanStdError term = mean_and_std_error(stats.terminal_norm2);
    const double envelope_const =
        1.0 + static_cast<double>(params.dim) * params.sigma2() / params.alpha;
    est.truncation_bound = std::exp(-params.alpha * horizon) * (term.mean + envelope_const);
    (void)cfg;
    return est;
}

CostEstimate estimate_cost(const Policy& policy, const SimConfig& cfg, const ModelParams& params) {
    return cost_from_stats(simulate_paths(policy, cfg, params), cfg, params);
}

MartingaleSeries martingale_from_stats(const PathStats& stats, const RadialValueSource& value,
                                       const ModelParams& params) {
    const std::size_t n_cp = stats.checkpoint_times.size();
    const std::size_t n_paths = static_cast<std::size_t>(stats.n_paths);

    MartingaleSeries series;
    series.times = stats.checkpoint_times;
    series.n_paths = stats.n_paths;
    series.mean_deviation.assign(n_cp, 0.0);
    series.std_error.assign(n_cp, 0.0);

    const double t_mean =
        std::accumulate(series.times.begin(), series.times.end(), 0.0)
        / static_cast<double>(n_cp);
    double t_ss = 0.0;
    for (double t : series.times) t_ss += (t - t_mean) * (t - t_mean);
    const bool fit_slope = n_cp >= 2 && t_ss > 0.0;

    std::vector<double> m(n_cp);
    std::vector<double> deviation_sum(n_cp, 0.0);
    std::vector<double> deviation_sq_sum(n_cp, 0.0);
    std::vector<double> slopes(fit_slope ? n_paths : 0, 0.0);

    const double source_radius = value.radius();
    for (std::size_t path = 0; path < n_paths; ++path) {
        for (std::size_t j = 0; j < n_cp; ++j) {
            double r = std::sqrt(stats.checkpoint_norm2[j * n_paths + path]);
            if (r > source_radius) {
                r = source_radius;
                ++series.clamped_value_evaluations;
            }
            const double t = series.times[j];
            m[j] = -std::exp(-params.alpha * t) * value.z(r)
                   - stats.checkpoint_cost[j * n_paths + path];
        }
        for (std::size_t j = 0; j < n_cp; ++j) {
            const double dev = m[j] - m[0];
            deviation_sum[j] += dev;
            deviation_sq_sum[j] += dev * dev;
        }
        if (fit_slope) {
            const double m_mean =
                std::accumulate(m.begin(), m.end(), 0.0) / static_cast<double>(n_cp);
            double cross = 0.0;
            for (std::size_t j = 0; j < n_cp; ++j) {
                cross += (series.times[j] - t_mean) * (m[j] - m_mean);
            }
            slopes[path] = cross / t_ss;
        }
    }

    const double n = static_cast<double>(n_paths);
    for (std::size_t j = 0; j < n_cp; ++j) {
        const double mean = deviation_sum[j] / n;
        series.mean_deviation[j] = mean;
        const double var = std::max(0.0, (deviation_sq_sum[j] - n * mean * mean) / (n - 1.0));
        series.std_error[j] = std::sqrt(var / n);
    }
    if (fit_slope) {
        const MeanStdError slope = mean_and_std_error(slopes);
        series.slope_mean = slope.mean;
        series.slope_std_error = slope.std_error;
    }
    return series;
}

MartingaleSeries martingale_diagnostic(const Policy& policy, const RadialValueSource& value,
                                       const SimConfig& cfg, const ModelParams& params) {
    return martingale_from_stats(simulate_paths(policy, cfg, params), value, params);
}

TransversalityReport transversality_from_stats(const PathStats& stats, const SimConfig& cfg,
                                               const ModelParams& params) {
    (void)cfg;
    const std::size_t n_cp = stats.checkpoint_times.size();
    const std::size_t n_paths = static_cast<std::size_t>(stats.n_paths);

    TransversalityReport report;
    report.times = stats.checkpoint_times;
    report.second_moment.resize(n_cp);
    report.discounted_second_moment.resize(n_cp);
    for (std::size_t j = 0; j < n_cp; ++j) {
        double sum = 0.0;
        for (std::size_t path = 0; path < n_paths; ++path) {
            sum += stats.checkpoint_norm2[j * n_paths + path];
        }
        report.second_moment[j] = sum / static_cast<double>(n_paths);
        report.discounted_second_moment[j] =
            std::exp(-params.alpha * report.times[j]) * report.second_moment[j];
    }

    // Least-squares exponential envelope through the (positive) moments,
    // then scaled up so it majorizes every observation.
    double tx = 0.0, ty = 0.0, txx = 0.0, txy = 0.0;
    int n_fit = 0;
    for (std::size_t j = 0; j < n_cp; ++j) {
        if (!(report.second_moment[j] > 0.0)) continue;
        const double t = report.times[j];
        const double logm = std::log(report.second_moment[j]);
        tx += t;
        ty += logm;
        txx += t * t;
        txy += t * logm;
        ++n_fit;
    }
    const double denom = n_fit * txx - tx * tx;
    if (n_fit >= 2 && denom > 0.0) {
        report.fit.valid = true;
        report.fit.c2 = (n_fit * txy - tx * ty) / denom;
        report.fit.c1 = std::exp((ty - report.fit.c2 * tx) / n_fit);
        double worst_ratio = 0.0;
        for (std::size_t j = 0; j < n_cp; ++j) {
            worst_ratio = std::max(worst_ratio,
                                   report.second_moment[j]
                                       / (report.fit.c1 * std::exp(report.fit.c2 * report.times[j])));
        }
        report.fit.c1 *= worst_ratio * (1.0 + 1e-12);
        report.fit.majorizes = true;
        for (std::size_t j = 0; j < n_cp; ++j) {
            if (report.second_moment[j]
                > report.fit.c1 * std::exp(report.fit.c2 * report.times[j])) {
                report.fit.majorizes = false;
            }
        }
    }
    return report;
}

TransversalityReport transversality_and_moment_check(const Policy& policy, const SimConfig& cfg,
                                                     const ModelParams& params) {
    return transversality_from_stats(simulate_paths(policy, cfg, params), cfg, params);
}

DiagnosticsReport run_diagnostics(const Policy& policy, const RadialValueSource& value,
                                  const SimConfig& cfg, const ModelParams& params) {
    const PathStats stats = simulate_paths(policy, cfg, params);
    DiagnosticsReport report;
    report.cost = cost_from_stats(stats, cfg, params);
    report.martingale = martingale_from_stats(stats, value, params);
    report.transversality = transversality_from_stats(stats, cfg, params);
    return report;
}

ComparisonTable compare_policies(const std::vector<std::pair<std::string, Policy>>& policies,
                                 const SimConfig& cfg, const ModelParams& params) {
    if (policies.empty()) throw ConfigError("policy comparison needs at least one policy");

    ComparisonTable table;
    std::vector<std::vector<double>> costs;
    costs.reserve(policies.size());
    for (const auto& [name, policy] : policies) {
        // Identical cfg (and seed) for every policy: common random numbers.
        const PathStats stats = simulate_paths(policy, cfg, params);
        ComparisonEntry entry;
        entry.name = name;
        entry.estimate = cost_from_stats(stats, cfg, params);
        table.entries.push_back(std::move(entry));
        costs.push_back(stats.cost_integral);
    }

    std::vector<std::size_t> order(policies.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return table.entries[a].estimate.mean < table.entries[b].estimate.mean;
    });
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        table.entries[order[rank]].rank = static_cast<int>(rank);
    }

    std::vector<double> diff(static_cast<std::size_t>(cfg.n_paths));
    for (std::size_t a = 0; a < policies.size(); ++a) {
        for (std::size_t b = a + 1; b < policies.size(); ++b) {
            for (std::size_t p = 0; p < diff.size(); ++p) diff[p] = costs[a][p] - costs[b][p];
            const MeanStdError d = mean_and_std_error(diff);
            table.differences.push_back(
                {policies[a].first, policies[b].first, d.mean, d.std_error});
        }
    }
    return table;
}

DtBiasEstimate estimate_dt_bias(const Policy& policy, const SimConfig& cfg,
                                const ModelParams& params) {
    validate_sim_config(cfg, params);

    const long n_steps = step_count(cfg);
    const int dim = params.dim;
    const double dt = cfg.dt;
    const double half_dt = 0.5 * dt;
    const double noise_scale = params.sigma * std::sqrt(half_dt);  // per half step
    const double decay_coarse = std::exp(-params.alpha * dt);
    const double decay_fine = std::exp(-params.alpha * half_dt);
    const double source_radius =
        policy.value_source() ? policy.value_source()->radius()
                              : std::numeric_limits<double>::infinity();

    const auto gain_at = [&](double norm2) {
        const double r = std::sqrt(norm2);
        return policy.radial_gain(std::min(r, source_radius));
    };

    std::vector<double> diffs(static_cast<std::size_t>(cfg.n_paths));
    std::vector<double> y_coarse(static_cast<std::size_t>(dim));
    std::vector<double> y_fine(static_cast<std::size_t>(dim));
    std::vector<double> noise_sum(static_cast<std::size_t>(dim));

    for (long path = 0; path < cfg.n_paths; ++path) {
        NormalStream rng(cfg.master_seed, static_cast<std::uint64_t>(path));
        std::copy(cfg.y0.begin(), cfg.y0.end(), y_coarse.begin());
        std::copy(cfg.y0.begin(), cfg.y0.end(), y_fine.begin());
        double disc_coarse = 1.0, disc_fine = 1.0;
        double cost_coarse = 0.0, cost_fine = 0.0;

        for (long k = 0; k < n_steps; ++k) {
            double norm2_coarse = 0.0;
            for (double yi : y_coarse) norm2_coarse += yi * yi;
            const double gain_coarse = gain_at(norm2_coarse);
            cost_coarse += disc_coarse * (gain_coarse * gain_coarse + 1.0) * norm2_coarse * dt;

            // Two fine half steps; the coarse chain reuses the summed noise,
            // so both chains ride the same Brownian increment.
            std::fill(noise_sum.begin(), noise_sum.end(), 0.0);
            for (int half = 0; half < 2; ++half) {
                double norm2_fine = 0.0;
                for (double yi : y_fine) norm2_fine += yi * yi;
                const double gain_fine = gain_at(norm2_fine);
                cost_fine += disc_fine * (gain_fine * gain_fine + 1.0) * norm2_fine * half_dt;
                const double drift_fine = 1.0 + gain_fine * half_dt;
                for (int i = 0; i < dim; ++i) {
                    const std::size_t s = static_cast<std::size_t>(i);
                    const double noise = rng.next();
                    y_fine[s] = y_fine[s] * drift_fine + noise_scale * noise;
                    noise_sum[s] += noise;
                }
                disc_fine *= decay_fine;
            }

            const double drift_coarse = 1.0 + gain_coarse * dt;
            for (int i = 0; i < dim; ++i) {
                const std::size_t s = static_cast<std::size_t>(i);
                y_coarse[s] = y_coarse[s] * drift_coarse + noise_scale * noise_sum[s];
            }
            disc_coarse *= decay_coarse;
        }
        diffs[static_cast<std::size_t>(path)] = cost_coarse - cost_fine;
    }

    const MeanStdError d = mean_and_std_error(diffs);
    DtBiasEstimate out;
    out.dt = dt;
    out.coarse_minus_fine_mean = d.mean;
    out.coarse_minus_fine_std_error = d.std_error;
    out.extrapolated_bias = 2.0 * d.mean;
    out.n_paths = cfg.n_paths;
    return out;
}

}  // namespace prodplan
