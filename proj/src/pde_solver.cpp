#include "prodplan/pde_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "prodplan/interp.hpp"
#include "prodplan/subsuper.hpp"

namespace prodplan {

namespace {

// Tridiagonal representation of (-Laplacian_h + lambda) on the unknown nodes
// i = 0 .. m-1 (node m is the Dirichlet boundary), with the Thomas
// factorization precomputed so the per-sweep solve is two passes.
struct RadialOperator {
    int m = 0;             // number of unknowns
    double lambda = 0.0;
    std::vector<double> lower, diag, upper;
    std::vector<double> elim_upper;      // upper / pivot from forward elimination
    std::vector<double> inv_pivot;       // 1 / pivot

    std::vector<double> scratch;

    void solve(std::vector<double>& rhs_then_solution) {
        auto& d = scratch;
        d.resize(static_cast<std::size_t>(m));
        d[0] = rhs_then_solution[0] * inv_pivot[0];
        for (int i = 1; i < m; ++i) {
            d[static_cast<std::size_t>(i)] =
                (rhs_then_solution[static_cast<std::size_t>(i)]
                 - lower[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i - 1)])
                * inv_pivot[static_cast<std::size_t>(i)];
        }
        rhs_then_solution[static_cast<std::size_t>(m - 1)] = d[static_cast<std::size_t>(m - 1)];
        for (int i = m - 2; i >= 0; --i) {
            rhs_then_solution[static_cast<std::size_t>(i)] =
                d[static_cast<std::size_t>(i)]
                - elim_upper[static_cast<std::size_t>(i)]
                      * rhs_then_solution[static_cast<std::size_t>(i + 1)];
        }
    }
};

// The radial Laplacian in dim dimensions, (1/r^{n-1}) (r^{n-1} u')', in
// conservative flux form with half-node weights.  This keeps every
// off-diagonal coefficient negative for any dimension (an M-matrix), which
// the monotone iteration relies on.  At r = 0 symmetry gives
// Laplacian u = dim * u''(0), discretized with the ghost node u(-h) = u(h).
RadialOperator build_operator(const RadialGrid& grid, const ModelParams& params, double lambda) {
    RadialOperator op;
    op.m = grid.n_nodes - 1;
    op.lambda = lambda;
    op.lower.assign(static_cast<std::size_t>(op.m), 0.0);
    op.diag.assign(static_cast<std::size_t>(op.m), 0.0);
    op.upper.assign(static_cast<std::size_t>(op.m), 0.0);

    const double h = grid.spacing;
    const double inv_h2 = 1.0 / (h * h);
    const double n = static_cast<double>(params.dim);

    op.diag[0] = 2.0 * n * inv_h2 + lambda;
    op.upper[0] = -2.0 * n * inv_h2;
    for (int i = 1; i < op.m; ++i) {
        const double r = grid.node(i);
        const double w_minus = std::pow((r - 0.5 * h) / r, n - 1.0);
        const double w_plus = std::pow((r + 0.5 * h) / r, n - 1.0);
        op.lower[static_cast<std::size_t>(i)] = -w_minus * inv_h2;
        op.diag[static_cast<std::size_t>(i)] = (w_minus + w_plus) * inv_h2 + lambda;
        op.upper[static_cast<std::size_t>(i)] = -w_plus * inv_h2;
    }

    op.elim_upper.assign(static_cast<std::size_t>(op.m), 0.0);
    op.inv_pivot.assign(static_cast<std::size_t>(op.m), 0.0);
    double pivot = op.diag[0];
    op.inv_pivot[0] = 1.0 / pivot;
    op.elim_upper[0] = op.upper[0] / pivot;
    for (int i = 1; i < op.m; ++i) {
        pivot = op.diag[static_cast<std::size_t>(i)]
                - op.lower[static_cast<std::size_t>(i)] * op.elim_upper[static_cast<std::size_t>(i - 1)];
        op.inv_pivot[static_cast<std::size_t>(i)] = 1.0 / pivot;
        op.elim_upper[static_cast<std::size_t>(i)] = op.upper[static_cast<std::size_t>(i)] / pivot;
    }
    return op;
}

// Zero-order part of the semilinear operator, moved to the right-hand side:
// F(r, u) = -(r^2 / sigma^4) u - (2 alpha / sigma^2) u log u.
double rhs_nonlinearity(double r, double u, const ModelParams& params) {
    const double sigma2 = params.sigma2();
    return -(r * r / (sigma2 * sigma2)) * u - (2.0 * params.alpha / sigma2) * u_log_u(u);
}

struct SweepResult {
    std::vector<double> values;  // converged unknowns
    int iterations = 0;
    double max_violation = 0.0;
};

// Runs the shifted fixed-point sweep from the given seed.  direction = +1
// when the seed is the sub-solution (iterates must not decrease), -1 from the
// super-solution (iterates must not increase).
SweepResult run_sweeps(RadialOperator& op, const RadialGrid& grid, const ModelParams& params,
                       const SolverTols& tols, std::vector<double> seed, double boundary_value,
                       int direction) {
    SweepResult out;
    out.values = std::move(seed);
    std::vector<double> next(out.values.size());

    const double boundary_lift = -op.upper[static_cast<std::size_t>(op.m - 1)] * boundary_value;

    double gap = 0.0;
    for (int sweep = 1; sweep <= tols.max_iters; ++sweep) {
        for (int i = 0; i < op.m; ++i) {
            const std::size_t s = static_cast<std::size_t>(i);
            next[s] = op.lambda * out.values[s]
                      + rhs_nonlinearity(grid.node(i), out.values[s], params);
        }
        next[static_cast<std::size_t>(op.m - 1)] += boundary_lift;
        op.solve(next);

        gap = 0.0;
        double violation = 0.0;
        for (int i = 0; i < op.m; ++i) {
            const std::size_t s = static_cast<std::size_t>(i);
            const double step = next[s] - out.values[s];
            gap = std::max(gap, std::abs(step));
            violation = std::max(violation, -static_cast<double>(direction) * step);
        }
        out.max_violation = std::max(out.max_violation, violation);
        if (violation > tols.tol_monotone) throw MonotonicityViolated(sweep, violation);

        out.values.swap(next);
        out.iterations = sweep;
        if (gap <= tols.tol_iter) return out;
    }
    throw MaxItersExceeded(tols.max_iters, gap);
}

}  // namespace

BallSolution solve_on_ball(const RadialGrid& grid, const ModelParams& params,
                           const SolverTols& tols) {
    const double radius = grid.radius;
    const double sigma2 = params.sigma2();
    // Smallest a-priori shift that makes lambda*u + F(r, u) nondecreasing in u
    // over [sub(R), 1] for every r <= R:  -dF/du <= R^2/sigma^4 + 2 alpha/sigma^2.
    const double lambda = radius * radius / (sigma2 * sigma2) + 2.0 * params.alpha / sigma2;

    RadialOperator op = build_operator(grid, params, lambda);
    const int m = op.m;
    const double boundary_value = sub_solution(radius, params);

    std::vector<double> from_sub(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        from_sub[static_cast<std::size_t>(i)] = sub_solution(grid.node(i), params);
    }
    std::vector<double> from_super(static_cast<std::size_t>(m), super_solution(0.0, params));

    SweepResult lower = run_sweeps(op, grid, params, tols, std::move(from_sub), boundary_value, +1);
    SweepResult upper = run_sweeps(op, grid, params, tols, std::move(from_super), boundary_value, -1);

    double width = 0.0;
    for (int i = 0; i < m; ++i) {
        const std::size_t s = static_cast<std::size_t>(i);
        width = std::max(width, std::abs(upper.values[s] - lower.values[s]));
    }
    if (width > tols.tol_bracket) throw BracketTooWide(width, tols.tol_bracket);

    BallSolution ball;
    ball.lambda = lambda;
    ball.iterations_from_sub = lower.iterations;
    ball.iterations_from_super = upper.iterations;
    ball.bracket_width = width;
    ball.max_monotonicity_violation = std::max(lower.max_violation, upper.max_violation);

    ball.field.grid = grid;
    ball.field.u.assign(static_cast<std::size_t>(grid.n_nodes), boundary_value);
    for (int i = 0; i < m; ++i) {
        const std::size_t s = static_cast<std::size_t>(i);
        ball.field.u[s] = 0.5 * (lower.values[s] + upper.values[s]);
    }
    ball.residual_norm = discrete_residual_norm(ball.field, params);
    return ball;
}

double discrete_residual_norm(const DiscreteField& field, const ModelParams& params) {
    const RadialGrid& grid = field.grid;
    const int n = grid.n_nodes;
    const double h = grid.spacing;
    const double inv_h2 = 1.0 / (h * h);
    const double dim = static_cast<double>(params.dim);
    const double sigma2 = params.sigma2();
    const double sigma4 = sigma2 * sigma2;
    const auto& u = field.u;

    double worst = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        const std::size_t s = static_cast<std::size_t>(i);
        double neg_laplacian;
        if (i == 0) {
            neg_laplacian = 2.0 * dim * inv_h2 * (u[0] - u[1]);
        } else {
            const double r = grid.node(i);
            const double w_minus = std::pow((r - 0.5 * h) / r, dim - 1.0);
            const double w_plus = std::pow((r + 0.5 * h) / r, dim - 1.0);
            neg_laplacian =
                inv_h2 * ((w_minus + w_plus) * u[s] - w_minus * u[s - 1] - w_plus * u[s + 1]);
        }
        const double r = grid.node(i);
        const double residual = neg_laplacian + (r * r / sigma4) * u[s]
                                + (2.0 * params.alpha / sigma2) * u_log_u(u[s]);
        worst = std::max(worst, std::abs(residual));
    }
    return worst;
}

ValueField to_value_function(const DiscreteField& field, const ModelParams& params) {
    const int n = field.grid.n_nodes;
    const double h = field.grid.spacing;

    ValueField vf;
    vf.grid = field.grid;
    vf.z.resize(static_cast<std::size_t>(n));
    vf.z_r.resize(static_cast<std::size_t>(n));
    vf.z_rr.resize(static_cast<std::size_t>(n));

    for (int i = 0; i < n; ++i) {
        const std::size_t s = static_cast<std::size_t>(i);
        if (!(field.u[s] > 0.0)) throw NonPositiveNode(i, field.u[s]);
        vf.z[s] = -2.0 * params.sigma2() * std::log(field.u[s]);
    }

    const auto& z = vf.z;
    const std::size_t last = static_cast<std::size_t>(n - 1);
    // Symmetry at r = 0 (z is an even function of the state), centered
    // second-order differences inside, one-sided second-order at the boundary.
    vf.z_r[0] = 0.0;
    vf.z_rr[0] = 2.0 * (z[1] - z[0]) / (h * h);
    for (std::size_t s = 1; s < last; ++s) {
        vf.z_r[s] = (z[s + 1] - z[s - 1]) / (2.0 * h);
        vf.z_rr[s] = (z[s + 1] - 2.0 * z[s] + z[s - 1]) / (h * h);
    }
    vf.z_r[last] = (3.0 * z[last] - 4.0 * z[last - 1] + z[last - 2]) / (2.0 * h);
    if (n >= 4) {
        vf.z_rr[last] =
            (2.0 * z[last] - 5.0 * z[last - 1] + 4.0 * z[last - 2] - z[last - 3]) / (h * h);
    } else {
        vf.z_rr[last] = vf.z_rr[last - 1];
    }
    return vf;
}

EstimateReport check_estimates(const ValueField& vf, const ModelParams& params, double bound_tol,
                               double shape_tol) {
    EstimateReport rep;
    rep.bound_tol = bound_tol;
    rep.shape_tol = shape_tol;

    const int n = vf.grid.n_nodes;
    const double envelope_const = 1.0 + static_cast<double>(params.dim) * params.sigma2() / params.alpha;

    rep.max_upper_violation = -std::numeric_limits<double>::infinity();
    rep.max_lower_violation = -std::numeric_limits<double>::infinity();
    rep.min_z_rr = std::numeric_limits<double>::infinity();
    rep.min_z_r_over_r = std::numeric_limits<double>::infinity();
    rep.gradient_constant = 0.0;

    double worst_bound_violation = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const std::size_t s = static_cast<std::size_t>(i);
        const double r = vf.grid.node(i);
        const double upper_violation = vf.z[s] - (r * r + envelope_const);
        const double lower_violation = -vf.z[s];
        rep.max_upper_violation = std::max(rep.max_upper_violation, upper_violation);
        rep.max_lower_violation = std::max(rep.max_lower_violation, lower_violation);
        const double worst_here = std::max(upper_violation, lower_violation);
        if (worst_here > worst_bound_violation) {
            worst_bound_violation = worst_here;
            rep.worst_node = i;
        }
        rep.min_z_rr = std::min(rep.min_z_rr, vf.z_rr[s]);
        rep.min_z_r_over_r =
            std::min(rep.min_z_r_over_r, (i == 0) ? vf.z_rr[0] : vf.z_r[s] / r);
        // The linear-growth constant describes the limit value function, so
        // measure it on the inner half of the ball, away from the pinned
        // boundary layer where the slope reflects the boundary data instead.
        if (r <= 0.5 * vf.grid.radius) {
            rep.gradient_constant =
                std::max(rep.gradient_constant, std::abs(vf.z_r[s]) / (1.0 + r));
        }
    }

    rep.upper_ok = rep.max_upper_violation <= bound_tol;
    rep.lower_ok = rep.max_lower_violation <= bound_tol;
    rep.convex_ok = rep.min_z_rr >= -shape_tol;
    rep.monotone_ok = rep.min_z_r_over_r >= -shape_tol;
    return rep;
}

void require_estimates(const EstimateReport& rep) {
    if (!rep.lower_ok) {
        throw BoundViolated("value function drops below 0 by " + std::to_string(rep.max_lower_violation)
                            + " at node " + std::to_string(rep.worst_node));
    }
    if (!rep.upper_ok) {
        throw BoundViolated("value function exceeds the quadratic envelope |x|^2 + 1 + dim sigma^2/alpha by "
                            + std::to_string(rep.max_upper_violation) + " at node "
                            + std::to_string(rep.worst_node));
    }
    if (!rep.convex_ok) {
        throw BoundViolated("radial convexity fails: min z_rr = " + std::to_string(rep.min_z_rr));
    }
    if (!rep.monotone_ok) {
        throw BoundViolated("radial monotonicity fails: min z_r / r = "
                            + std::to_string(rep.min_z_r_over_r));
    }
}

NestedSolveResult nested_solve(std::span<const double> radii, int nodes_per_unit,
                               const ModelParams& params, const SolverTols& tols) {
    if (radii.empty()) throw BadGridSpec("nested solve needs at least one radius");
    for (std::size_t j = 0; j < radii.size(); ++j) {
        if (!(radii[j] > 0.0)) throw BadGridSpec("radii must be positive");
        if (j > 0 && !(radii[j] > radii[j - 1])) {
            throw BadGridSpec("radii must be strictly increasing");
        }
    }

    NestedSolveResult out;
    out.balls.reserve(radii.size());
    for (double radius : radii) {
        out.balls.push_back(solve_on_ball(build_grid_per_unit(radius, nodes_per_unit), params, tols));
    }

    // Both convergence metrics live on the fixed window r <= radii.front():
    // each ball carries its own pinned boundary data, so comparing over a
    // ball's full (growing) domain would always be dominated by the newest
    // boundary layer.  With a shared node density the grids normally align;
    // fall back to monotone-cubic interpolation when a node of the window
    // falls between nodes of the outer grid.
    const double window = radii.front();
    const auto z_of = [&params](double u, int node) {
        if (!(u > 0.0)) throw NonPositiveNode(node, u);
        return -2.0 * params.sigma2() * std::log(u);
    };
    for (std::size_t j = 0; j + 1 < out.balls.size(); ++j) {
        const DiscreteField& inner = out.balls[j].field;
        const DiscreteField& outer = out.balls[j + 1].field;
        MonotoneCubicInterpolant outer_interp;
        bool have_interp = false;

        double sup = 0.0;
        for (int i = 0; i < inner.grid.n_nodes; ++i) {
            const double r = inner.grid.node(i);
            if (r > window + 1e-9) break;
            const double k_real = r / outer.grid.spacing;
            const long k = std::lround(k_real);
            double outer_u;
            if (k >= 0 && k < outer.grid.n_nodes
                && std::abs(k_real - static_cast<double>(k)) < 1e-9) {
                outer_u = outer.u[static_cast<std::size_t>(k)];
            } else {
                if (!have_interp) {
                    std::vector<double> xs(static_cast<std::size_t>(outer.grid.n_nodes));
                    for (int q = 0; q < outer.grid.n_nodes; ++q) {
                        xs[static_cast<std::size_t>(q)] = outer.grid.node(q);
                    }
                    outer_interp = MonotoneCubicInterpolant(std::move(xs), outer.u);
                    have_interp = true;
                }
                outer_u = outer_interp(r);
            }
            sup = std::max(sup, std::abs(z_of(inner.u[static_cast<std::size_t>(i)], i)
                                         - z_of(outer_u, i)));
        }
        out.consecutive_sup_diff.push_back(sup);
    }

    if (params.oracle_available()) {
        out.oracle_used = true;
        const ClosedFormSolution cf = closed_form_m(params, Branch::positive_z);
        for (const BallSolution& ball : out.balls) {
            double sup = 0.0;
            for (int i = 0; i < ball.field.grid.n_nodes; ++i) {
                const double r = ball.field.grid.node(i);
                if (r > window + 1e-9) break;
                const std::size_t s = static_cast<std::size_t>(i);
                if (!(ball.field.u[s] > 0.0)) throw NonPositiveNode(i, ball.field.u[s]);
                const double z_num = -2.0 * params.sigma2() * std::log(ball.field.u[s]);
                sup = std::max(sup, std::abs(z_num - cf.z(r)));
            }
            out.oracle_sup_err_z.push_back(sup);
        }
    }
    return out;
}

}  // namespace prodplan
