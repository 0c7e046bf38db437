#pragma once

#include "prodplan/errors.hpp"

namespace prodplan {

// Parameters of the stochastic production-planning model
//
//   dy_i = p_i dt + sigma dw_i,   i = 1..dim,
//   J(p) = E  integral_0^inf e^{-alpha t} ( |p(t)|^2 + |y(t)|^2 ) dt,
//
// whose value function z(x) = inf_p J solves the stationary equation
//
//   -2 sigma^2 (Laplacian z) + |grad z|^2 + 4 alpha z = 4 |x|^2.         (*)
//
// Everything downstream works with the exponential change of variable
// u = exp(-z / (2 sigma^2)), which turns (*) into the semilinear form
//
//   -(Laplacian u) + (|x|^2 / sigma^4) u + (2 alpha / sigma^2) u log u = 0,
//
// with 0 < u <= 1 corresponding to z >= 0.
struct ModelParams {
    int dim = 1;           // number of economic goods (state dimension)
    double sigma = 1.0;    // diffusion coefficient, > 0
    double alpha = 1.0;    // discount rate, > 0

    double sigma2() const { return sigma * sigma; }

    // The model admits a closed-form solution exactly when alpha = dim * sigma^2.
    bool oracle_available() const;
};

// Validates and packs model parameters.
// Throws NonPositiveDim / NonPositiveSigma / NonPositiveAlpha.
ModelParams validate_params(int dim, double sigma, double alpha);

// Which root of the closed-form quadratic to take.  The value function of the
// planning problem is the positive branch; the negative branch also solves the
// equation but is economically meaningless (negative cost).
enum class Branch {
    positive_z,  // z >= 0 everywhere (the value function)
    negative_z,  // z <= 0 everywhere
};

// Closed-form solution u(x) = exp(m (|x|^2 + 1)) available when
// alpha = dim * sigma^2.  m solves  4 sigma^4 m^2 - 2 alpha sigma^2 m - 1 = 0:
//
//   m = (alpha -+ sqrt(alpha^2 + 4)) / (4 sigma^2),
//
// minus for the positive-z branch (m < 0), plus for the negative-z branch.
struct ClosedFormSolution {
    ModelParams params;
    Branch branch = Branch::positive_z;
    double m = 0.0;

    double u(double x_norm) const;       // exp(m (|x|^2 + 1))
    double z(double x_norm) const;       // -2 sigma^2 m (|x|^2 + 1)
    double z_slope(double x_norm) const; // dz/dr = -4 sigma^2 m r
    double z_curvature() const;          // d2z/dr2 = -4 sigma^2 m (constant)

    // Residual of the value-function equation (*) at radius |x| = x_norm,
    // with the gradient and Laplacian of the quadratic z taken analytically.
    // Zero up to rounding for a correct m.
    double equation_residual(double x_norm) const;
};

// Computes the closed-form coefficient for the requested branch.
// Throws OracleUnavailable when alpha != dim * sigma^2.
ClosedFormSolution closed_form_m(const ModelParams& params, Branch branch = Branch::positive_z);

// Convenience: positive-branch closed-form value function at radius x_norm.
// Throws OracleUnavailable when the oracle does not apply.
double closed_form_z(double x_norm, const ModelParams& params);

// Transform and inverse transform between the value function z and the
// semilinear unknown u.
double u_from_z(double z_value, const ModelParams& params);

// Inverse transform z = -2 sigma^2 log u.  Throws NonPositiveU for u <= 0.
// u > 1 yields a negative z; that is legal arithmetic but signals a field
// that escaped the expected range, so it is reported through u_above_one
// (when non-null) instead of silently passing.
double z_from_u(double u_value, const ModelParams& params, bool* u_above_one = nullptr);

}  // namespace prodplan
