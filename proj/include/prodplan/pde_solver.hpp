#pragma once

#include <span>
#include <vector>

#include "prodplan/grid.hpp"
#include "prodplan/model.hpp"

namespace prodplan {

// Tolerances and limits for the monotone iteration.
struct SolverTols {
    double tol_iter = 1e-12;     // stop when the sup-norm of one sweep's update is below this
    double tol_bracket = 1e-8;   // max allowed gap between the two one-sided limits
    double tol_monotone = 1e-12; // ordering violations beyond this abort the run
    int max_iters = 10000;       // sweeps per seed before giving up
};

// Result of solving the semilinear problem on one ball, with the certificate
// data produced by running the iteration from both barriers:
//
//   (-Laplacian + lambda) u^{k+1} = lambda u^k + F(u^k),
//   F(r, u) = -(r^2 / sigma^4) u - (2 alpha / sigma^2) u log u,
//
// with Dirichlet data u(R) = sub(R).  lambda = R^2/sigma^4 + 2 alpha/sigma^2
// makes the right-hand side nondecreasing in u on [sub, 1], so the sweep
// starting from the sub-solution increases and the sweep starting from the
// super-solution decreases; both limits land on the same fixed point and the
// gap between them certifies it.
struct BallSolution {
    DiscreteField field;             // midpoint of the two one-sided limits
    double lambda = 0.0;             // monotonizing shift used
    int iterations_from_sub = 0;
    int iterations_from_super = 0;
    double bracket_width = 0.0;      // sup |limit_super - limit_sub|
    double max_monotonicity_violation = 0.0;  // worst ordering overshoot seen (rounding level)
    double residual_norm = 0.0;      // discrete_residual_norm of the certified field
};

// Runs the bracketing iteration on one ball.
// Throws MaxItersExceeded, MonotonicityViolated, or BracketTooWide when the
// corresponding certificate cannot be produced.
BallSolution solve_on_ball(const RadialGrid& grid, const ModelParams& params,
                           const SolverTols& tols = {});

// Solves on an increasing sequence of balls with a shared node density, the
// discrete version of exhausting the whole space by nested balls.  Each ball
// carries its own pinned boundary data, so convergence is a statement about a
// fixed compact set, not the whole (growing) domain: both metrics below are
// therefore measured over the window r <= radii.front().  On that window the
// boundary-layer influence of ball j decays like exp(-c (R_j - r) R_j), so
// the differences shrink rapidly as the boundary recedes.
struct NestedSolveResult {
    std::vector<BallSolution> balls;             // one per radius, in input order
    // sup over the window r <= radii.front() of |z_j - z_{j+1}|; size
    // radii.size() - 1.  Measured on z (the deliverable), where the shrinking
    // boundary-layer mismatch is easiest to read.  The j = 0 entry includes
    // the first ball's own pinned boundary node and is dominated by it.
    std::vector<double> consecutive_sup_diff;
    bool oracle_used = false;
    // sup over the same window of |z_j - z_cf|; per ball, empty when no
    // oracle.  The leading entry is dominated by the first ball's boundary
    // data; later entries drop to the discretization floor.
    std::vector<double> oracle_sup_err_z;
};

// radii must be strictly increasing and positive; throws BadGridSpec otherwise.
NestedSolveResult nested_solve(std::span<const double> radii, int nodes_per_unit,
                               const ModelParams& params, const SolverTols& tols = {});

// Sup-norm of the discrete semilinear operator applied to the field, over all
// interior nodes (the same stencil the solver uses, so an exact fixed point
// would give 0 up to rounding and the shifted-iteration stopping error).
double discrete_residual_norm(const DiscreteField& field, const ModelParams& params);

// Inverts the exponential transform node-by-node and forms first and second
// radial derivatives of z by centered second-order differences (one-sided at
// the outer boundary, symmetry at r = 0).  Throws NonPositiveNode if any
// field value is <= 0.
ValueField to_value_function(const DiscreteField& field, const ModelParams& params);

// Checks the qualitative properties the value function must satisfy:
//
//   0 <= z(x) <= |x|^2 + 1 + dim sigma^2 / alpha       (two-sided bound)
//   z convex and radially nondecreasing                 (z_rr >= 0, z_r / r >= 0)
//   |z_r| <= C (1 + r) for some finite C                (reported, not gated)
//
// The convexity and monotonicity checks allow a small negative tolerance for
// discretization noise in the differentiated field.
struct EstimateReport {
    bool upper_ok = false;
    bool lower_ok = false;
    bool convex_ok = false;
    bool monotone_ok = false;
    double bound_tol = 0.0;
    double shape_tol = 0.0;
    double max_upper_violation = 0.0;  // max over nodes of z - (r^2 + 1 + dim sigma^2/alpha)
    double max_lower_violation = 0.0;  // max over nodes of -z
    double min_z_rr = 0.0;
    double min_z_r_over_r = 0.0;       // at r = 0 the limit z_rr(0) is used
    int worst_node = -1;               // node of the largest bound violation, -1 if none
    // max over nodes with r <= radius/2 of |z_r| / (1 + r); restricted to the
    // inner half so the constant describes the limit value function rather
    // than the slope of the pinned boundary layer.
    double gradient_constant = 0.0;

    bool all_ok() const { return upper_ok && lower_ok && convex_ok && monotone_ok; }
};

EstimateReport check_estimates(const ValueField& vf, const ModelParams& params,
                               double bound_tol = 1e-8, double shape_tol = 1e-6);

// Throws BoundViolated describing the first failed property, if any.
void require_estimates(const EstimateReport& report);

}  // namespace prodplan
