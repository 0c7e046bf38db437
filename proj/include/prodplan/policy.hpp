#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "prodplan/grid.hpp"
#include "prodplan/model.hpp"

namespace prodplan {

// Radial view of a value function: z(r) and dz/dr(r).  Feedback controls and
// the pathwise diagnostics only ever need these two numbers, whether they come
// from the closed form or from a solved field.
class RadialValueSource {
public:
    virtual ~RadialValueSource() = default;
    virtual double z(double r) const = 0;
    virtual double z_slope(double r) const = 0;
    // Largest radius at which the source is defined; infinity for analytic
    // sources.  Evaluation beyond it throws StateOutsideGrid.
    virtual double radius() const = 0;
};

// Positive-branch closed form; throws OracleUnavailable if it does not apply.
std::shared_ptr<const RadialValueSource> closed_form_value_source(const ModelParams& params);

// Monotone-cubic interpolation of a solved field's z and z_r node values.
std::shared_ptr<const RadialValueSource> field_value_source(const ValueField& vf);

enum class PolicyKind {
    optimal_from_field,   // p = -1/2 grad z, z from a solved field
    optimal_closed_form,  // p = -1/2 grad z, z from the closed form
    zero,                 // p = 0 (produce nothing, pay only holding costs)
    scaled,               // p = -gamma/2 grad z (deliberately detuned optimal)
};

// Markov feedback control p(x).  The optimal control of the planning problem
// is p*(x) = -1/2 grad z(x); with radial z this is -z'(|x|)/(2|x|) x.
class Policy {
public:
    static Policy optimal_closed_form(const ModelParams& params);
    static Policy optimal_from_field(const ValueField& vf, const ModelParams& params);
    static Policy zero(const ModelParams& params);
    // gamma * (optimal policy of `base`); base must carry a value source.
    static Policy scaled(double gamma, const Policy& base);

    // Evaluates p(x).  x.size() must equal the model dimension; out.size()
    // must match x.size().  Throws StateOutsideGrid when |x| exceeds the
    // value source's radius.
    void feedback_control(std::span<const double> x, std::span<double> out) const;
    std::vector<double> feedback_control(std::span<const double> x) const;

    // Control gain along the radial direction: p(x) = radial_gain(|x|) x for
    // x != 0, with the convention radial_gain(0) = limit (finite since
    // z'(0) = 0).  This is the only evaluation the simulator's inner loop
    // needs.  r is clamped to the source radius by the caller if desired.
    double radial_gain(double r) const;

    PolicyKind kind() const { return kind_; }
    double gamma() const { return gamma_; }
    int dim() const { return dim_; }
    // Null for the zero policy.
    const std::shared_ptr<const RadialValueSource>& value_source() const { return source_; }
    std::string name() const;

private:
    Policy(PolicyKind kind, double gamma, int dim, std::shared_ptr<const RadialValueSource> source)
        : kind_(kind), gamma_(gamma), dim_(dim), source_(std::move(source)) {}

    PolicyKind kind_;
    double gamma_;
    int dim_;
    std::shared_ptr<const RadialValueSource> source_;
};

// Spot check that the pointwise Hamiltonian h(p) = |p|^2 + p . g attains its
// infimum at p = -g/2 with value -|g|^2/4: samples random controls around the
// minimizer at several scales and records the smallest h(p) - h(p*) seen
// (nonnegative up to rounding when the reduction is correct).
struct HamiltonianCheck {
    std::vector<double> argmin;      // -g/2
    double min_value = 0.0;          // -|g|^2/4
    double min_sampled_gap = 0.0;    // min over samples of h(p) - min_value
    int n_samples = 0;
};

HamiltonianCheck hamiltonian_reduction_check(std::span<const double> gradient,
                                             int n_samples = 2000,
                                             std::uint64_t seed = 0x9E3779B97F4A7C15ull);

}  // namespace prodplan
