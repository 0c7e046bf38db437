#include "prodplan/subsuper.hpp"

#include <cmath>

namespace prodplan {

SubSolutionCoefficients sub_solution_coefficients(const ModelParams& params) {
    const double a = -1.0 / (2.0 * params.sigma2());
    const double b = 0.0;
    const double c = -1.0 / (2.0 * params.sigma2())
                     - static_cast<double>(params.dim) / (2.0 * params.alpha);
    return SubSolutionCoefficients{a, b, c};
}

double sub_solution(double x_norm, const ModelParams& params) {
    const auto [a, b, c] = sub_solution_coefficients(params);
    return std::exp(a * x_norm * x_norm + b * x_norm + c);
}

double super_solution(double /*x_norm*/, const ModelParams& /*params*/) {
    return 1.0;
}

double u_log_u(double u) {
    if (u < 0.0) throw NonPositiveU(u);
    if (u == 0.0) return 0.0;
    return u * std::log(u);
}

double analytic_operator(SolutionFamily family, double x_norm, const ModelParams& params) {
    const double r2 = x_norm * x_norm;
    const double sigma2 = params.sigma2();
    const double sigma4 = sigma2 * sigma2;
    const double n = static_cast<double>(params.dim);

    // For u = exp(phi) with phi = q r^2 + c the derivatives are explicit:
    //   Laplacian u = u (4 q^2 r^2 + 2 q dim),   u log u = u phi,
    // so G(u) = u (-(4 q^2 r^2 + 2 q dim) + r^2 / sigma^4 + (2 alpha / sigma^2) phi).
    const auto quadratic_exponent_operator = [&](double q, double c) {
        const double u = std::exp(q * r2 + c);
        const double laplacian_over_u = 4.0 * q * q * r2 + 2.0 * q * n;
        const double phi = q * r2 + c;
        return u * (-laplacian_over_u + r2 / sigma4 + (2.0 * params.alpha / sigma2) * phi);
    };

    switch (family) {
        case SolutionFamily::sub: {
            const auto [a, b, c] = sub_solution_coefficients(params);
            (void)b;  // b = 0; the barrier is a pure Gaussian
            return quadratic_exponent_operator(a, c);
        }
        case SolutionFamily::super:
            // u = 1: the Laplacian vanishes and u log u = 0.
            return r2 / sigma4;
        case SolutionFamily::closed_form: {
            const ClosedFormSolution cf = closed_form_m(params, Branch::positive_z);
            return quadratic_exponent_operator(cf.m, cf.m);
        }
    }
    throw UnknownFamily(static_cast<int>(family));
}

}  // namespace prodplan
