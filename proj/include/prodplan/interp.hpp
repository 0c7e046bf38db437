#pragma once

#include <vector>

namespace prodplan {

// Shape-preserving piecewise-cubic interpolant (Fritsch-Carlson node slopes).
// Monotone data yields a monotone interpolant, which matters here: the solved
// field u is monotone in radius, and overshoot from a plain cubic spline could
// push interpolated values outside (0, 1] or create spurious sign changes in
// interpolated derivatives.
class MonotoneCubicInterpolant {
public:
    MonotoneCubicInterpolant() = default;

    // x must be strictly increasing with x.size() == y.size() >= 2.
    // Throws BadGridSpec otherwise.
    MonotoneCubicInterpolant(std::vector<double> x, std::vector<double> y);

    // Evaluates at xq.  Throws StateOutsideGrid outside [min_x, max_x].
    double operator()(double xq) const;

    double min_x() const { return x_.front(); }
    double max_x() const { return x_.back(); }

private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> slope_;  // interpolant derivative at each node
    bool uniform_ = false;       // evenly spaced nodes allow O(1) cell lookup
    double inv_spacing_ = 0.0;
};

}  // namespace prodplan
