#pragma once

#include <vector>

#include "prodplan/model.hpp"
#include "prodplan/pde_solver.hpp"

namespace prodplan {

// Cross-check of the radial reduction: the same monotone bracketing iteration
// run on the full square [-L, L]^2 with a five-point Laplacian, no radial
// symmetry assumed.  dim must be 2.  Dirichlet data on the square's edge is
// the sub-solution evaluated at the edge points; away from the boundary that
// choice washes out and the solution should match the radial one.
struct FullGrid2DSolution {
    double extent = 0.0;     // half-width L
    int n_per_axis = 0;      // nodes per axis including both boundaries
    double spacing = 0.0;
    std::vector<double> u;   // row-major: u[ix * n_per_axis + iy], node (x_ix, y_iy)
    double lambda = 0.0;
    int iterations_from_sub = 0;
    int iterations_from_super = 0;
    double bracket_width = 0.0;
    double max_monotonicity_violation = 0.0;

    double coord(int i) const { return -extent + spacing * static_cast<double>(i); }
    double value(int ix, int iy) const {
        return u[static_cast<std::size_t>(ix) * static_cast<std::size_t>(n_per_axis)
                 + static_cast<std::size_t>(iy)];
    }
};

// Throws BadGridSpec for bad geometry, NonPositiveDim unless params.dim == 2,
// and the same certificate errors as solve_on_ball.
FullGrid2DSolution solve_full_grid_2d(double extent, int n_per_axis, const ModelParams& params,
                                      const SolverTols& tols = {});

// Sup over 2-D nodes with radius <= r_max of |z_2d - z_radial(r)|, the radial
// value interpolated between its nodes.  Both fields must come from the same
// model parameters.
double radial_agreement_z(const FullGrid2DSolution& square, const ValueField& radial,
                          double r_max, const ModelParams& params);

}  // namespace prodplan
