#pragma once

#include <stdexcept>
#include <string>

namespace prodplan {

// Base class for every error this library throws on purpose.  Catching
// prodplan::Error separates contract violations (bad parameters, failed
// certificates) from genuine bugs surfacing as std exceptions.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- parameter validation -------------------------------------------------

struct NonPositiveSigma : Error {
    explicit NonPositiveSigma(double sigma)
        : Error("diffusion coefficient sigma must be > 0, got " + std::to_string(sigma)) {}
};

struct NonPositiveAlpha : Error {
    explicit NonPositiveAlpha(double alpha)
        : Error("discount rate alpha must be > 0, got " + std::to_string(alpha)) {}
};

struct NonPositiveDim : Error {
    explicit NonPositiveDim(int dim)
        : Error("state dimension must be >= 1, got " + std::to_string(dim)) {}
};

// --- transform / closed form ----------------------------------------------

struct NonPositiveU : Error {
    explicit NonPositiveU(double u)
        : Error("cannot take log of non-positive transformed value u = " + std::to_string(u)) {}
};

struct OracleUnavailable : Error {
    OracleUnavailable()
        : Error("closed form requires alpha == dim * sigma^2; "
                "these parameters have no exact solution to compare against") {}
};

struct UnknownFamily : Error {
    explicit UnknownFamily(int raw)
        : Error("unknown analytic solution family tag " + std::to_string(raw)) {}
};

// --- grids and fields -------------------------------------------------------

struct BadGridSpec : Error {
    explicit BadGridSpec(const std::string& what) : Error("bad grid spec: " + what) {}
};

struct NonPositiveNode : Error {
    NonPositiveNode(int index, double value)
        : Error("field value must be strictly positive to invert the exponential "
                "transform; node " + std::to_string(index) + " has u = " + std::to_string(value)) {}
};

struct StateOutsideGrid : Error {
    StateOutsideGrid(double r, double radius)
        : Error("state radius " + std::to_string(r) + " lies outside the solved ball of radius "
                + std::to_string(radius)) {}
};

// --- solver certificates -----------------------------------------------------

struct MaxItersExceeded : Error {
    MaxItersExceeded(int iters, double gap)
        : Error("monotone iteration did not meet its tolerance after "
                + std::to_string(iters) + " sweeps (last update sup-norm "
                + std::to_string(gap) + ")") {}
};

struct MonotonicityViolated : Error {
    MonotonicityViolated(int sweep, double overshoot)
        : Error("iterate ordering broke at sweep " + std::to_string(sweep)
                + " (overshoot " + std::to_string(overshoot)
                + "); the shifted right-hand side is not monotone on this range") {}
};

struct BracketTooWide : Error {
    BracketTooWide(double width, double tol)
        : Error("limits from the sub- and super-solution seeds disagree by "
                + std::to_string(width) + " > tolerance " + std::to_string(tol)
                + "; cannot certify a unique solution between the barriers") {}
};

// --- verification -----------------------------------------------------------

struct BoundViolated : Error {
    explicit BoundViolated(const std::string& what) : Error(what) {}
};

// --- configuration ------------------------------------------------------------

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error("config: " + what) {}
};

}  // namespace prodplan
