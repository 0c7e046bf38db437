#include "prodplan/model.hpp"

#include <cmath>

namespace prodplan {

bool ModelParams::oracle_available() const {
    // alpha and dim*sigma^2 typically come straight from a config file, so an
    // exact comparison would reject e.g. sigma = 0.1, alpha = 0.01 * dim.
    // Allow rounding slack far below any numerical tolerance used downstream.
    const double target = static_cast<double>(dim) * sigma2();
    return std::abs(alpha - target) <= 1e-12 * std::max(1.0, std::abs(target));
}

ModelParams validate_params(int dim, double sigma, double alpha) {
    if (dim < 1) throw NonPositiveDim(dim);
    if (!(sigma > 0.0)) throw NonPositiveSigma(sigma);
    if (!(alpha > 0.0)) throw NonPositiveAlpha(alpha);
    return ModelParams{dim, sigma, alpha};
}

double ClosedFormSolution::u(double x_norm) const {
    return std::exp(m * (x_norm * x_norm + 1.0));
}

double ClosedFormSolution::z(double x_norm) const {
    return -2.0 * params.sigma2() * m * (x_norm * x_norm + 1.0);
}

double ClosedFormSolution::z_slope(double x_norm) const {
    return -4.0 * params.sigma2() * m * x_norm;
}

double ClosedFormSolution::z_curvature() const {
    return -4.0 * params.sigma2() * m;
}

double ClosedFormSolution::equation_residual(double x_norm) const {
    // z = c (r^2 + 1) with c = -2 sigma^2 m, so analytically
    //   Laplacian z = 2 c dim,   |grad z|^2 = 4 c^2 r^2.
    const double r2 = x_norm * x_norm;
    const double c = -2.0 * params.sigma2() * m;
    const double laplacian = 2.0 * c * static_cast<double>(params.dim);
    const double grad_sq = 4.0 * c * c * r2;
    return -2.0 * params.sigma2() * laplacian + grad_sq + 4.0 * params.alpha * c * (r2 + 1.0)
           - 4.0 * r2;
}

ClosedFormSolution closed_form_m(const ModelParams& params, Branch branch) {
    if (!params.oracle_available()) throw OracleUnavailable();
    const double root = std::sqrt(params.alpha * params.alpha + 4.0);
    const double m = (branch == Branch::positive_z) ? (params.alpha - root) / (4.0 * params.sigma2())
                                                    : (params.alpha + root) / (4.0 * params.sigma2());
    return ClosedFormSolution{params, branch, m};
}

double closed_form_z(double x_norm, const ModelParams& params) {
    return closed_form_m(params, Branch::positive_z).z(x_norm);
}

double u_from_z(double z_value, const ModelParams& params) {
    return std::exp(-z_value / (2.0 * params.sigma2()));
}

double z_from_u(double u_value, const ModelParams& params, bool* u_above_one) {
    if (!(u_value > 0.0)) throw NonPositiveU(u_value);
    if (u_above_one != nullptr) *u_above_one = u_value > 1.0;
    return -2.0 * params.sigma2() * std::log(u_value);
}

}  // namespace prodplan
