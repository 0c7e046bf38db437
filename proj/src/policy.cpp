#include "prodplan/policy.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "prodplan/interp.hpp"
#include "prodplan/rng.hpp"

namespace prodplan {

namespace {

class ClosedFormValueSource final : public RadialValueSource {
public:
    explicit ClosedFormValueSource(const ModelParams& params)
        : cf_(closed_form_m(params, Branch::positive_z)) {}

    double z(double r) const override { return cf_.z(r); }
    double z_slope(double r) const override { return cf_.z_slope(r); }
    double radius() const override { return std::numeric_limits<double>::infinity(); }

private:
    ClosedFormSolution cf_;
};

class FieldValueSource final : public RadialValueSource {
public:
    explicit FieldValueSource(const ValueField& vf) : radius_(vf.grid.radius) {
        std::vector<double> nodes(static_cast<std::size_t>(vf.grid.n_nodes));
        for (int i = 0; i < vf.grid.n_nodes; ++i) {
            nodes[static_cast<std::size_t>(i)] = vf.grid.node(i);
        }
        z_interp_ = MonotoneCubicInterpolant(nodes, vf.z);
        slope_interp_ = MonotoneCubicInterpolant(std::move(nodes), vf.z_r);
    }

    double z(double r) const override { return z_interp_(r); }
    double z_slope(double r) const override { return slope_interp_(r); }
    double radius() const override { return radius_; }

private:
    double radius_;
    MonotoneCubicInterpolant z_interp_;
    MonotoneCubicInterpolant slope_interp_;
};

}  // namespace

std::shared_ptr<const RadialValueSource> closed_form_value_source(const ModelParams& params) {
    return std::make_shared<ClosedFormValueSource>(params);
}

std::shared_ptr<const RadialValueSource> field_value_source(const ValueField& vf) {
    return std::make_shared<FieldValueSource>(vf);
}

Policy Policy::optimal_closed_form(const ModelParams& params) {
    return Policy(PolicyKind::optimal_closed_form, 1.0, params.dim,
                  closed_form_value_source(params));
}

Policy Policy::optimal_from_field(const ValueField& vf, const ModelParams& params) {
    return Policy(PolicyKind::optimal_from_field, 1.0, params.dim, field_value_source(vf));
}

Policy Policy::zero(const ModelParams& params) {
    return Policy(PolicyKind::zero, 0.0, params.dim, nullptr);
}

Policy Policy::scaled(double gamma, const Policy& base) {
    if (!base.source_) throw ConfigError("scaled policy needs a base policy with a value source");
    return Policy(PolicyKind::scaled, gamma * base.gamma_, base.dim_, base.source_);
}

double Policy::radial_gain(double r) const {
    if (!source_ || gamma_ == 0.0) return 0.0;
    if (r == 0.0) {
        // z'(0) = 0 by symmetry; the gain's limit is -gamma z''(0) / 2,
        // approximated one step inside the source's range.  Exactly at the
        // origin the control is zero anyway, so this value is never decisive.
        const double probe = std::min(1e-6, source_->radius());
        return -gamma_ * source_->z_slope(probe) / (2.0 * probe);
    }
    return -gamma_ * source_->z_slope(r) / (2.0 * r);
}

void Policy::feedback_control(std::span<const double> x, std::span<double> out) const {
    if (static_cast<int>(x.size()) != dim_ || out.size() != x.size()) {
        throw ConfigError("feedback control: state size " + std::to_string(x.size())
                          + " does not match policy dimension " + std::to_string(dim_));
    }
    double r2 = 0.0;
    for (double xi : x) r2 += xi * xi;
    const double r = std::sqrt(r2);
    if (source_ && r > source_->radius()) throw StateOutsideGrid(r, source_->radius());
    const double gain = (r == 0.0) ? 0.0 : radial_gain(r);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = gain * x[i];
}

std::vector<double> Policy::feedback_control(std::span<const double> x) const {
    std::vector<double> out(x.size());
    feedback_control(x, out);
    return out;
}

std::string Policy::name() const {
    switch (kind_) {
        case PolicyKind::optimal_from_field: return "optimal-from-field";
        case PolicyKind::optimal_closed_form: return "optimal-closed-form";
        case PolicyKind::zero: return "zero";
        case PolicyKind::scaled: {
            char buf[48];
            std::snprintf(buf, sizeof(buf), "scaled(%g)", gamma_);
            return buf;
        }
    }
    return "unknown";
}

HamiltonianCheck hamiltonian_reduction_check(std::span<const double> gradient, int n_samples,
                                             std::uint64_t seed) {
    const std::size_t dim = gradient.size();
    HamiltonianCheck check;
    check.n_samples = n_samples;
    check.argmin.resize(dim);
    double g2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        check.argmin[i] = -0.5 * gradient[i];
        g2 += gradient[i] * gradient[i];
    }
    check.min_value = -0.25 * g2;

    const auto objective = [&](const std::vector<double>& p) {
        double value = 0.0;
        for (std::size_t i = 0; i < dim; ++i) value += p[i] * p[i] + p[i] * gradient[i];
        return value;
    };

    // Perturb the claimed minimizer at scales from local to far-field; every
    // sampled control must score at least the claimed minimum.
    NormalStream noise(seed, /*stream_index=*/0);
    const double scales[] = {1e-3, 1e-1, 1.0, 10.0};
    std::vector<double> p(dim);
    check.min_sampled_gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n_samples; ++k) {
        const double scale = scales[k % 4] * (1.0 + std::sqrt(g2));
        for (std::size_t i = 0; i < dim; ++i) p[i] = check.argmin[i] + scale * noise.next();
        check.min_sampled_gap = std::min(check.min_sampled_gap, objective(p) - check.min_value);
    }
    return check;
}

}  // namespace prodplan
