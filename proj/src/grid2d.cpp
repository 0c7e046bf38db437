#include "prodplan/grid2d.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "prodplan/interp.hpp"
#include "prodplan/subsuper.hpp"

namespace prodplan {

namespace {

struct SquareSweepResult {
    Eigen::VectorXd values;
    int iterations = 0;
    double max_violation = 0.0;
};

// Same shifted fixed-point sweep as the radial solver, with the factored
// five-point operator applied through a sparse Cholesky solve.
SquareSweepResult run_square_sweeps(const Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>& solver,
                                    const std::vector<double>& radius_sq, double lambda,
                                    const Eigen::VectorXd& boundary_lift, const ModelParams& params,
                                    const SolverTols& tols, Eigen::VectorXd seed, int direction) {
    SquareSweepResult out;
    out.values = std::move(seed);
    const Eigen::Index m = out.values.size();
    Eigen::VectorXd rhs(m);

    const double sigma2 = params.sigma2();
    const double sigma4 = sigma2 * sigma2;
    const double entropy_coeff = 2.0 * params.alpha / sigma2;

    double gap = 0.0;
    for (int sweep = 1; sweep <= tols.max_iters; ++sweep) {
        for (Eigen::Index k = 0; k < m; ++k) {
            const double u = out.values[k];
            rhs[k] = lambda * u - (radius_sq[static_cast<std::size_t>(k)] / sigma4) * u
                     - entropy_coeff * u_log_u(u);
        }
        rhs += boundary_lift;
        Eigen::VectorXd next = solver.solve(rhs);

        gap = 0.0;
        double violation = 0.0;
        for (Eigen::Index k = 0; k < m; ++k) {
            const double step = next[k] - out.values[k];
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

FullGrid2DSolution solve_full_grid_2d(double extent, int n_per_axis, const ModelParams& params,
                                      const SolverTols& tols) {
    if (params.dim != 2) throw NonPositiveDim(params.dim);
    if (!(extent > 0.0)) throw BadGridSpec("extent must be > 0, got " + std::to_string(extent));
    if (n_per_axis < 3) {
        throw BadGridSpec("need at least 3 nodes per axis, got " + std::to_string(n_per_axis));
    }

    FullGrid2DSolution sol;
    sol.extent = extent;
    sol.n_per_axis = n_per_axis;
    sol.spacing = 2.0 * extent / static_cast<double>(n_per_axis - 1);

    const int n = n_per_axis;
    const int ni = n - 2;  // interior nodes per axis
    const double h = sol.spacing;
    const double inv_h2 = 1.0 / (h * h);
    const double sigma2 = params.sigma2();
    // Largest |x|^2 on the square is 2 L^2 (the corners), so this shift
    // monotonizes the right-hand side over the whole domain.
    const double lambda = 2.0 * extent * extent / (sigma2 * sigma2) + 2.0 * params.alpha / sigma2;
    sol.lambda = lambda;

    const auto interior_index = [ni](int ix, int iy) {
        return static_cast<Eigen::Index>(ix - 1) * ni + (iy - 1);
    };

    // (-Laplacian_h + lambda) on the interior, five-point stencil.
    const Eigen::Index m = static_cast<Eigen::Index>(ni) * ni;
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(m) * 5);
    for (int ix = 1; ix <= ni; ++ix) {
        for (int iy = 1; iy <= ni; ++iy) {
            const Eigen::Index row = interior_index(ix, iy);
            triplets.emplace_back(row, row, 4.0 * inv_h2 + lambda);
            if (ix > 1) triplets.emplace_back(row, interior_index(ix - 1, iy), -inv_h2);
            if (ix < ni) triplets.emplace_back(row, interior_index(ix + 1, iy), -inv_h2);
            if (iy > 1) triplets.emplace_back(row, interior_index(ix, iy - 1), -inv_h2);
            if (iy < ni) triplets.emplace_back(row, interior_index(ix, iy + 1), -inv_h2);
        }
    }
    Eigen::SparseMatrix<double> matrix(m, m);
    matrix.setFromTriplets(triplets.begin(), triplets.end());

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
    solver.compute(matrix);
    if (solver.info() != Eigen::Success) {
        throw BadGridSpec("five-point operator factorization failed");
    }

    // Dirichlet boundary: sub-solution on the square's edge, entering the
    // right-hand side of edge-adjacent rows.
    const auto node_radius = [&sol](int ix, int iy) {
        const double x = sol.coord(ix);
        const double y = sol.coord(iy);
        return std::sqrt(x * x + y * y);
    };
    Eigen::VectorXd boundary_lift = Eigen::VectorXd::Zero(m);
    for (int ix = 1; ix <= ni; ++ix) {
        for (int iy = 1; iy <= ni; ++iy) {
            const Eigen::Index row = interior_index(ix, iy);
            double lift = 0.0;
            if (ix == 1) lift += sub_solution(node_radius(0, iy), params);
            if (ix == ni) lift += sub_solution(node_radius(n - 1, iy), params);
            if (iy == 1) lift += sub_solution(node_radius(ix, 0), params);
            if (iy == ni) lift += sub_solution(node_radius(ix, n - 1), params);
            boundary_lift[row] = lift * inv_h2;
        }
    }

    std::vector<double> radius_sq(static_cast<std::size_t>(m));
    Eigen::VectorXd seed_sub(m);
    for (int ix = 1; ix <= ni; ++ix) {
        for (int iy = 1; iy <= ni; ++iy) {
            const Eigen::Index row = interior_index(ix, iy);
            const double r = node_radius(ix, iy);
            radius_sq[static_cast<std::size_t>(row)] = r * r;
            seed_sub[row] = sub_solution(r, params);
        }
    }
    Eigen::VectorXd seed_super = Eigen::VectorXd::Constant(m, super_solution(0.0, params));

    SquareSweepResult lower = run_square_sweeps(solver, radius_sq, lambda, boundary_lift, params,
                                                tols, std::move(seed_sub), +1);
    SquareSweepResult upper = run_square_sweeps(solver, radius_sq, lambda, boundary_lift, params,
                                                tols, std::move(seed_super), -1);

    sol.bracket_width = (upper.values - lower.values).cwiseAbs().maxCoeff();
    if (sol.bracket_width > tols.tol_bracket) {
        throw BracketTooWide(sol.bracket_width, tols.tol_bracket);
    }
    sol.iterations_from_sub = lower.iterations;
    sol.iterations_from_super = upper.iterations;
    sol.max_monotonicity_violation = std::max(lower.max_violation, upper.max_violation);

    sol.u.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
            const std::size_t flat =
                static_cast<std::size_t>(ix) * static_cast<std::size_t>(n)
                + static_cast<std::size_t>(iy);
            if (ix == 0 || ix == n - 1 || iy == 0 || iy == n - 1) {
                sol.u[flat] = sub_solution(node_radius(ix, iy), params);
            } else {
                sol.u[flat] = 0.5 * (lower.values[interior_index(ix, iy)]
                                     + upper.values[interior_index(ix, iy)]);
            }
        }
    }
    return sol;
}

double radial_agreement_z(const FullGrid2DSolution& square, const ValueField& radial,
                          double r_max, const ModelParams& params) {
    if (!(r_max > 0.0) || r_max > radial.grid.radius) {
        throw BadGridSpec("agreement radius must lie inside the radial grid");
    }
    std::vector<double> xs(static_cast<std::size_t>(radial.grid.n_nodes));
    for (int i = 0; i < radial.grid.n_nodes; ++i) xs[static_cast<std::size_t>(i)] = radial.grid.node(i);
    const MonotoneCubicInterpolant z_of_r(std::move(xs), radial.z);

    double sup = 0.0;
    const int n = square.n_per_axis;
    for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
            const double x = square.coord(ix);
            const double y = square.coord(iy);
            const double r = std::sqrt(x * x + y * y);
            if (r > r_max) continue;
            const double u = square.value(ix, iy);
            if (!(u > 0.0)) throw NonPositiveNode(ix * n + iy, u);
            const double z_2d = -2.0 * params.sigma2() * std::log(u);
            sup = std::max(sup, std::abs(z_2d - z_of_r(r)));
        }
    }
    return sup;
}

}  // namespace prodplan
