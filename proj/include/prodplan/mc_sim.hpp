#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "prodplan/model.hpp"
#include "prodplan/policy.hpp"

namespace prodplan {

// Euler-Maruyama simulation setup for the controlled dynamics
//
//   dy = p(y) dt + sigma dw,   y(0) = y0,
//
// with the discounted running cost integral(e^{-alpha t} (|p|^2 + |y|^2) dt)
// accumulated by the left-endpoint rule and truncated at the horizon.
struct SimConfig {
    std::vector<double> y0;
    double horizon = 30.0;
    double dt = 1e-3;
    long n_paths = 100000;
    std::uint64_t master_seed = 0;
    // Times at which pathwise state and cost snapshots are kept (for the
    // martingale and transversality diagnostics).  Snapped to whole steps.
    std::vector<double> checkpoint_times = {0.0, 1.0, 2.0, 4.0, 8.0};
};

// Throws ConfigError when the setup is inconsistent with the model.
void validate_sim_config(const SimConfig& cfg, const ModelParams& params);

// Per-path raw simulation output.  Checkpoint arrays are indexed
// [checkpoint * n_paths + path].
struct PathStats {
    std::vector<double> checkpoint_times;   // snapped to the step grid
    long n_paths = 0;
    long n_steps = 0;
    double dt = 0.0;
    std::vector<double> cost_integral;      // discounted cost over [0, horizon]
    std::vector<double> terminal_norm2;     // |y(horizon)|^2
    std::vector<double> checkpoint_norm2;   // |y(t_j)|^2
    std::vector<double> checkpoint_cost;    // discounted cost over [0, t_j)
    long exit_count = 0;                    // paths that ever left the policy's solved ball
};

// Runs the simulation.  Paths are independent Philox substreams of
// cfg.master_seed, so the output is a pure function of (policy, cfg, params).
// States beyond the policy's value-source radius are counted in exit_count
// and the control is evaluated at the clamped radius.
PathStats simulate_paths(const Policy& policy, const SimConfig& cfg, const ModelParams& params);

// Sample estimate of the truncated cost J_T(policy), plus the quadratic
// envelope bound e^{-alpha T} (E|y_T|^2 + 1 + dim sigma^2 / alpha) on the
// discarded tail.
struct CostEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    double truncation_bound = 0.0;
    long n_paths = 0;
    long exit_count = 0;
};

CostEstimate estimate_cost(const Policy& policy, const SimConfig& cfg, const ModelParams& params);
CostEstimate cost_from_stats(const PathStats& stats, const SimConfig& cfg,
                             const ModelParams& params);

// Pathwise statistic  m(t) = -e^{-alpha t} z(y_t) - integral_0^t e^{-alpha s}
// (|p|^2 + |y|^2) ds,  which is a martingale under the optimal control and a
// supermartingale (drifts down) under any other.  The diagnostic reports the
// mean deviation m(t_j) - m(0) with standard errors and the per-path
// least-squares slope of m against t, averaged across paths.
struct MartingaleSeries {
    std::vector<double> times;
    std::vector<double> mean_deviation;
    std::vector<double> std_error;
    double slope_mean = 0.0;
    double slope_std_error = 0.0;
    long n_paths = 0;
    long clamped_value_evaluations = 0;  // z requested beyond the source radius
};

MartingaleSeries martingale_diagnostic(const Policy& policy, const RadialValueSource& value,
                                       const SimConfig& cfg, const ModelParams& params);
MartingaleSeries martingale_from_stats(const PathStats& stats, const RadialValueSource& value,
                                       const ModelParams& params);

// exp(c2 t) envelope fitted over the checkpoint second moments and scaled so
// it majorizes every observed E|y_t|^2.
struct MomentFit {
    double c1 = 0.0;
    double c2 = 0.0;
    bool valid = false;    // enough positive moments to fit
    bool majorizes = false;
};

// Discounted second moments e^{-alpha t_j} E|y_{t_j}|^2: under an admissible
// policy these must die out (transversality), and E|y_t|^2 itself must stay
// under an exponential envelope.
struct TransversalityReport {
    std::vector<double> times;
    std::vector<double> second_moment;             // E|y_t|^2
    std::vector<double> discounted_second_moment;  // e^{-alpha t} E|y_t|^2
    MomentFit fit;
};

TransversalityReport transversality_and_moment_check(const Policy& policy, const SimConfig& cfg,
                                                     const ModelParams& params);
TransversalityReport transversality_from_stats(const PathStats& stats, const SimConfig& cfg,
                                               const ModelParams& params);

// One simulation pass feeding all three verifications.
struct DiagnosticsReport {
    CostEstimate cost;
    MartingaleSeries martingale;
    TransversalityReport transversality;
};

DiagnosticsReport run_diagnostics(const Policy& policy, const RadialValueSource& value,
                                  const SimConfig& cfg, const ModelParams& params);

// Cost comparison across policies under common random numbers: every policy
// sees the same Brownian increments, so cost differences cancel most of the
// Monte Carlo noise and pairwise standard errors are per-path differences'.
struct ComparisonEntry {
    std::string name;
    CostEstimate estimate;
    int rank = 0;  // 0 = cheapest mean cost
};

struct PairedDifference {
    std::string name_a;
    std::string name_b;
    double mean_a_minus_b = 0.0;
    double std_error = 0.0;
};

struct ComparisonTable {
    std::vector<ComparisonEntry> entries;       // input order
    std::vector<PairedDifference> differences;  // all input-order pairs (i, j), i < j
};

ComparisonTable compare_policies(const std::vector<std::pair<std::string, Policy>>& policies,
                                 const SimConfig& cfg, const ModelParams& params);

// Weak discretization bias of the cost estimate at the configured dt,
// measured by coupling each path to a half-step copy driven by the same
// Brownian increments: for a first-order-biased scheme
// J(dt) - J(exact) ~ 2 (J(dt) - J(dt/2)).
struct DtBiasEstimate {
    double dt = 0.0;
    double coarse_minus_fine_mean = 0.0;
    double coarse_minus_fine_std_error = 0.0;
    double extrapolated_bias = 0.0;  // 2 * coarse_minus_fine_mean
    long n_paths = 0;
};

DtBiasEstimate estimate_dt_bias(const Policy& policy, const SimConfig& cfg,
                                const ModelParams& params);

}  // namespace prodplan
