#include <cmath>
#include <vector>

#include "doctest.h"
#include "prodplan/grid.hpp"
#include "prodplan/interp.hpp"

using namespace prodplan;

TEST_CASE("build_grid validates and spaces nodes uniformly") {
    const RadialGrid g = build_grid(2.0, 5);
    CHECK(g.spacing == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g.node(0) == 0.0);
    CHECK(g.node(4) == doctest::Approx(2.0).epsilon(1e-15));

    CHECK_THROWS_AS(build_grid(0.0, 5), BadGridSpec);
    CHECK_THROWS_AS(build_grid(-1.0, 5), BadGridSpec);
    CHECK_THROWS_AS(build_grid(1.0, 2), BadGridSpec);
}

TEST_CASE("grids with a shared node density align on the overlap") {
    const RadialGrid small = build_grid_per_unit(3.0, 100);
    const RadialGrid large = build_grid_per_unit(5.0, 100);
    CHECK(small.n_nodes == 301);
    CHECK(large.n_nodes == 501);
    CHECK(small.spacing == doctest::Approx(large.spacing).epsilon(1e-15));
    CHECK(small.node(150) == doctest::Approx(large.node(150)).epsilon(1e-15));

    CHECK_THROWS_AS(build_grid_per_unit(3.0, 1), BadGridSpec);
}

TEST_CASE("monotone cubic interpolation is exact at nodes and on lines") {
    std::vector<double> x = {0.0, 0.5, 1.0, 1.5, 2.0};
    std::vector<double> y;
    for (double xi : x) y.push_back(3.0 * xi - 1.0);
    const MonotoneCubicInterpolant f(x, y);
    for (double q = 0.0; q <= 2.0; q += 0.01) {
        CHECK(f(q) == doctest::Approx(3.0 * q - 1.0).epsilon(1e-13));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(f(x[i]) == doctest::Approx(y[i]).epsilon(1e-15));
    }
}

TEST_CASE("monotone data stays monotone between nodes (no overshoot)") {
    // A step-like profile that classical cubic splines overshoot.
    const std::vector<double> x = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
    const std::vector<double> y = {0.0, 0.01, 0.02, 0.95, 1.0, 1.0};
    const MonotoneCubicInterpolant f(x, y);
    double prev = f(0.0);
    for (double q = 0.01; q <= 5.0; q += 0.01) {
        const double value = f(q);
        CHECK(value >= prev - 1e-12);
        CHECK(value <= 1.0 + 1e-12);
        CHECK(value >= 0.0 - 1e-12);
        prev = value;
    }
}

TEST_CASE("interpolation converges at fourth order on smooth data away from edges") {
    const auto sup_err = [](int n) {
        std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            x[static_cast<std::size_t>(i)] = static_cast<double>(i) / (n - 1);
            y[static_cast<std::size_t>(i)] = std::exp(-x[static_cast<std::size_t>(i)]);
        }
        const MonotoneCubicInterpolant f(x, y);
        double err = 0.0;
        for (double q = 0.25; q <= 0.75; q += 0.001) {
            err = std::max(err, std::abs(f(q) - std::exp(-q)));
        }
        return err;
    };
    // Monotone-limited cubics are at least third order on monotone smooth
    // data; halving h must cut the error by well over 2^2.
    const double coarse = sup_err(33);
    const double fine = sup_err(65);
    CHECK(fine < coarse / 4.0);
    CHECK(coarse < 1e-5);
}

TEST_CASE("interpolation rejects queries outside the node range") {
    const MonotoneCubicInterpolant f({0.0, 1.0, 2.0}, {0.0, 1.0, 4.0});
    CHECK_THROWS_AS(f(-0.1), StateOutsideGrid);
    CHECK_THROWS_AS(f(2.1), StateOutsideGrid);
    CHECK(f(2.0) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("interpolant construction rejects bad node sets") {
    CHECK_THROWS_AS(MonotoneCubicInterpolant({0.0}, {1.0}), BadGridSpec);
    CHECK_THROWS_AS(MonotoneCubicInterpolant({0.0, 1.0}, {1.0}), BadGridSpec);
    CHECK_THROWS_AS(MonotoneCubicInterpolant({0.0, 0.0, 1.0}, {1.0, 2.0, 3.0}), BadGridSpec);
    CHECK_THROWS_AS(MonotoneCubicInterpolant({0.0, 1.0, 0.5}, {1.0, 2.0, 3.0}), BadGridSpec);
}

TEST_CASE("uniform and irregular node layouts agree where they overlap") {
    // Same function sampled on a uniform grid (O(1) lookup path) and an
    // irregular grid (binary-search path); both must reproduce it closely.
    std::vector<double> xu, yu, xi, yi;
    for (int i = 0; i <= 40; ++i) {
        const double x = static_cast<double>(i) / 40.0;
        xu.push_back(x);
        yu.push_back(std::tanh(3.0 * x));
    }
    for (double x = 0.0; x < 1.0 + 1e-12;) {
        xi.push_back(x);
        yi.push_back(std::tanh(3.0 * x));
        x += (x < 0.5) ? 0.021 : 0.029;
    }
    if (xi.back() < 1.0) {
        xi.push_back(1.0);
        yi.push_back(std::tanh(3.0));
    }
    const MonotoneCubicInterpolant fu(xu, yu);
    const MonotoneCubicInterpolant fi(xi, yi);
    for (double q = 0.0; q <= 1.0; q += 0.001) {
        CHECK(fu(q) == doctest::Approx(std::tanh(3.0 * q)).epsilon(1e-4));
        CHECK(fi(q) == doctest::Approx(std::tanh(3.0 * q)).epsilon(1e-4));
    }
}
