#include <cmath>

#include "doctest.h"
#include "prodplan/subsuper.hpp"

using namespace prodplan;

TEST_CASE("sub-solution coefficients and frozen sample values") {
    const ModelParams p = validate_params(1, 1.0, 1.0);
    const auto [a, b, c] = sub_solution_coefficients(p);
    CHECK(a == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(b == 0.0);
    CHECK(c == doctest::Approx(-1.0).epsilon(1e-15));

    // exp(-1) and exp(-1.5), frozen.
    CHECK(sub_solution(0.0, p) == doctest::Approx(0.36787944117144232).epsilon(1e-15));
    CHECK(sub_solution(1.0, p) == doctest::Approx(0.22313016014842983).epsilon(1e-15));
}

TEST_CASE("barriers bracket the closed form pointwise") {
    for (const ModelParams& p : {validate_params(1, 1.0, 1.0), validate_params(2, 1.0, 2.0)}) {
        const ClosedFormSolution cf = closed_form_m(p, Branch::positive_z);
        for (double r = 0.0; r <= 8.0; r += 0.25) {
            const double lower = sub_solution(r, p);
            const double exact = cf.u(r);
            CHECK(lower <= exact);
            CHECK(exact <= super_solution(r, p));
            CHECK(lower > 0.0);
        }
    }
}

TEST_CASE("analytic operator certifies the barriers with the known margins") {
    // G(sub) = -(alpha / sigma^4)(r^2 + 1) sub and G(1) = r^2 / sigma^4,
    // derived by substituting the explicit exponents.
    for (const ModelParams& p : {validate_params(1, 1.0, 1.0), validate_params(2, 0.9, 1.3),
                                 validate_params(3, 1.2, 0.4)}) {
        const double sigma4 = p.sigma2() * p.sigma2();
        for (double r : {0.0, 0.5, 1.0, 2.0, 4.0, 7.0}) {
            const double g_sub = analytic_operator(SolutionFamily::sub, r, p);
            const double margin = -(p.alpha / sigma4) * (r * r + 1.0) * sub_solution(r, p);
            CHECK(g_sub == doctest::Approx(margin).epsilon(1e-12));
            CHECK(g_sub <= 0.0);

            const double g_super = analytic_operator(SolutionFamily::super, r, p);
            CHECK(g_super == doctest::Approx(r * r / sigma4).epsilon(1e-12));
            CHECK(g_super >= 0.0);
        }
    }
}

TEST_CASE("analytic operator annihilates the closed form") {
    const ModelParams p = validate_params(1, 1.0, 1.0);
    for (double r : {0.0, 0.5, 1.0, 3.0, 6.0}) {
        CHECK(std::abs(analytic_operator(SolutionFamily::closed_form, r, p)) < 1e-12);
    }
    // ... and refuses to evaluate it when the oracle is unavailable.
    const ModelParams off = validate_params(1, 1.0, 1.7);
    CHECK_THROWS_AS(analytic_operator(SolutionFamily::closed_form, 1.0, off), OracleUnavailable);
    CHECK_THROWS_AS(analytic_operator(static_cast<SolutionFamily>(99), 1.0, off), UnknownFamily);
}

TEST_CASE("entropy nonlinearity extends continuously by zero") {
    CHECK(u_log_u(0.0) == 0.0);
    CHECK(u_log_u(1.0) == 0.0);
    CHECK(u_log_u(0.5) == doctest::Approx(0.5 * std::log(0.5)).epsilon(1e-15));
    CHECK(u_log_u(2.0) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(u_log_u(-1e-9), NonPositiveU);
}
