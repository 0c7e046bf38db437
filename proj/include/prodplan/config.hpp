#pragma once

#include <string>
#include <vector>

#include "prodplan/mc_sim.hpp"
#include "prodplan/model.hpp"
#include "prodplan/pde_solver.hpp"

namespace prodplan {

// Declarative policy selection, resolved against the model (and a solved
// field when needed) at run time.
struct PolicySpec {
    std::string kind = "optimal-from-field";  // optimal-from-field | optimal-closed-form |
                                              // zero | scaled
    double gamma = 1.0;                       // scale factor, scaled kind only
    std::string source = "auto";              // scaled kind: field | closed-form | auto
    std::string field_csv;                    // optional pre-solved field to load
};

struct SolveSpec {
    std::vector<double> radii = {3.0, 4.0, 5.0, 6.0};
    int nodes_per_unit = 200;
    SolverTols tols;
};

struct Grid2DSpec {
    bool enabled = false;      // the 2-D cross-check is opt-in (dim must be 2)
    double extent = 6.0;
    int n_per_axis = 241;
    SolverTols tols{1e-10, 1e-8, 1e-12, 20000};
    double agreement_radius = 3.0;
};

// Lighter simulation setup for the pathwise diagnostics (martingale and
// transversality run to the last checkpoint, not the full cost horizon).
struct DiagnosticsSpec {
    long n_paths = 20000;
    double dt = 5e-4;
    std::vector<double> checkpoint_times = {0.0, 1.0, 2.0, 4.0, 8.0};
};

struct RunConfig {
    ModelParams params = {1, 1.0, 1.0};
    SolveSpec solve;
    Grid2DSpec grid2d;
    SimConfig sim;
    DiagnosticsSpec diagnostics;
    PolicySpec policy;                 // `simulate`
    std::vector<PolicySpec> policies;  // `compare`

    RunConfig();  // fills the policy list and sim defaults
};

// Parses and validates a JSON config file.  Unknown keys anywhere are
// rejected (they are usually typos of known keys); every value is range
// checked.  Throws ConfigError / the model validation errors.
RunConfig load_config(const std::string& path);

// Same, from a JSON string (used by tests and for the default echo).
RunConfig parse_config(const std::string& json_text);

// Serializes the fully resolved configuration, defaults included, as the
// JSON text echoed into every output directory.
std::string effective_config_json(const RunConfig& cfg);

}  // namespace prodplan
