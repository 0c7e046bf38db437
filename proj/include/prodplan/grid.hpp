#pragma once

#include <vector>

#include "prodplan/errors.hpp"

namespace prodplan {

// Uniform radial grid on [0, radius] with nodes r_i = i * spacing,
// i = 0 .. n_nodes-1, so spacing = radius / (n_nodes - 1).
struct RadialGrid {
    double radius = 0.0;
    int n_nodes = 0;
    double spacing = 0.0;

    double node(int i) const { return spacing * static_cast<double>(i); }
};

// Validates radius > 0 and n_nodes >= 3 (one interior node at minimum).
RadialGrid build_grid(double radius, int n_nodes);

// Grid with a fixed node density: nodes_per_unit nodes per unit radius,
// so grids built for different radii share their spacing (and their node
// locations coincide on the overlap whenever radius * nodes_per_unit is
// integral).  n_nodes = round(radius * nodes_per_unit) + 1.
RadialGrid build_grid_per_unit(double radius, int nodes_per_unit);

// Transformed unknown u sampled on a radial grid.
struct DiscreteField {
    RadialGrid grid;
    std::vector<double> u;  // size grid.n_nodes
};

// Value function z = -2 sigma^2 log u with its first two radial derivatives,
// sampled on the same grid.
struct ValueField {
    RadialGrid grid;
    std::vector<double> z;
    std::vector<double> z_r;   // dz/dr
    std::vector<double> z_rr;  // d2z/dr2
};

}  // namespace prodplan
