#include "prodplan/grid.hpp"

#include <cmath>
#include <string>

namespace prodplan {

RadialGrid build_grid(double radius, int n_nodes) {
    if (!(radius > 0.0)) throw BadGridSpec("radius must be > 0, got " + std::to_string(radius));
    if (n_nodes < 3) throw BadGridSpec("need at least 3 nodes, got " + std::to_string(n_nodes));
    return RadialGrid{radius, n_nodes, radius / static_cast<double>(n_nodes - 1)};
}

RadialGrid build_grid_per_unit(double radius, int nodes_per_unit) {
    if (nodes_per_unit < 2) {
        throw BadGridSpec("need at least 2 nodes per unit radius, got "
                          + std::to_string(nodes_per_unit));
    }
    if (!(radius > 0.0)) throw BadGridSpec("radius must be > 0, got " + std::to_string(radius));
    const int n_nodes = static_cast<int>(std::lround(radius * nodes_per_unit)) + 1;
    return build_grid(radius, n_nodes);
}

}  // namespace prodplan
