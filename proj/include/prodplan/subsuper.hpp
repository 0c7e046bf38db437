#pragma once

#include "prodplan/model.hpp"

namespace prodplan {

// Analytic barrier functions bracketing the transformed solution u:
//
//   sub(x) <= u(x) <= 1   on every ball,
//
// where sub is an explicit Gaussian-type lower barrier and the constant 1 is
// an upper barrier.  Both are verified against the semilinear operator
//
//   G(u) = -(Laplacian u) + (|x|^2 / sigma^4) u + (2 alpha / sigma^2) u log u:
//
//   G(sub) = -(alpha / sigma^4) (|x|^2 + 1) sub  <= 0   (sub-solution),
//   G(1)   =  |x|^2 / sigma^4                    >= 0   (super-solution).

// Coefficients of log sub(x) = a |x|^2 + b |x| + c.
struct SubSolutionCoefficients {
    double a;  // -1 / (2 sigma^2)
    double b;  // 0
    double c;  // -1 / (2 sigma^2) - dim / (2 alpha)
};

SubSolutionCoefficients sub_solution_coefficients(const ModelParams& params);

// Lower barrier sub(x) = exp(a |x|^2 + b |x| + c) evaluated at |x| = x_norm.
double sub_solution(double x_norm, const ModelParams& params);

// Upper barrier, identically 1.  Takes the same arguments as sub_solution so
// the two can be used interchangeably as iteration seeds.
double super_solution(double x_norm, const ModelParams& params);

// Which analytic family to push through the semilinear operator.
enum class SolutionFamily {
    sub,          // Gaussian-type lower barrier
    super,        // constant 1
    closed_form,  // positive-branch exact solution (requires the oracle)
};

// Evaluates G(f) at radius x_norm for the chosen analytic family f, forming
// the Laplacian and gradient from the family's explicit derivatives (no
// finite differences).  Sign convention: <= 0 certifies a sub-solution,
// >= 0 a super-solution, == 0 an exact solution.
// Throws UnknownFamily for an out-of-range tag and OracleUnavailable when the
// closed form is requested without alpha = dim * sigma^2.
double analytic_operator(SolutionFamily family, double x_norm, const ModelParams& params);

// u log u extended continuously by 0 at u = 0 (the nonlinearity of G).
// Throws NonPositiveU for u < 0.
double u_log_u(double u);

}  // namespace prodplan
