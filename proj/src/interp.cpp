#include "prodplan/interp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "prodplan/errors.hpp"

namespace prodplan {

MonotoneCubicInterpolant::MonotoneCubicInterpolant(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) {
        throw BadGridSpec("interpolant needs >= 2 nodes with matching value count");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(x_[i] > x_[i - 1])) {
            throw BadGridSpec("interpolation nodes must be strictly increasing");
        }
    }

    std::vector<double> h(n - 1), secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        secant[i] = (y_[i + 1] - y_[i]) / h[i];
    }

    slope_.assign(n, 0.0);
    if (n == 2) {
        slope_[0] = slope_[1] = secant[0];
        return;
    }

    // Interior slopes: weighted harmonic mean of adjacent secants, zero at
    // local extrema (Fritsch-Carlson), which keeps each cubic piece monotone.
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (secant[i - 1] * secant[i] <= 0.0) {
            slope_[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            slope_[i] = (w1 + w2) / (w1 / secant[i - 1] + w2 / secant[i]);
        }
    }

    // End slopes: one-sided three-point estimate, clipped so the first and
    // last pieces cannot overshoot.
    const auto end_slope = [](double h0, double h1, double s0, double s1) {
        double d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
        if (d * s0 <= 0.0) {
            d = 0.0;
        } else if (s0 * s1 <= 0.0 && std::abs(d) > 3.0 * std::abs(s0)) {
            d = 3.0 * s0;
        }
        return d;
    };
    slope_[0] = end_slope(h[0], h[1], secant[0], secant[1]);
    slope_[n - 1] = end_slope(h[n - 2], h[n - 3], secant[n - 2], secant[n - 3]);

    // Uniform node spacing admits O(1) cell lookup; this interpolant sits in
    // the simulator's innermost loop, so avoid the binary search when we can.
    const double h_mean = (x_.back() - x_.front()) / static_cast<double>(n - 1);
    uniform_ = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(h[i] - h_mean) > 1e-9 * h_mean) {
            uniform_ = false;
            break;
        }
    }
    inv_spacing_ = uniform_ ? 1.0 / h_mean : 0.0;
}

double MonotoneCubicInterpolant::operator()(double xq) const {
    if (xq < x_.front() || xq > x_.back()) throw StateOutsideGrid(xq, x_.back());
    // Locate the cell [x_i, x_{i+1}] containing xq.
    std::size_t i;
    if (uniform_) {
        const double pos = (xq - x_.front()) * inv_spacing_;
        i = (pos <= 0.0) ? 0 : static_cast<std::size_t>(pos);
    } else {
        const auto it = std::upper_bound(x_.begin(), x_.end(), xq);
        i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    }
    if (i >= x_.size() - 1) i = x_.size() - 2;

    const double h = x_[i + 1] - x_[i];
    const double t = (xq - x_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    // Cubic Hermite basis on the cell.
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] + h11 * h * slope_[i + 1];
}

}  // namespace prodplan
