#pragma once

#include <span>
#include <utility>
#include <vector>

namespace bgcsp {

// Sign function: 1 for x > 0, 0 for x = 0, -1 for x < 0.
// Throws std::domain_error on non-finite input.
int sgn(double x);

enum class FieldKind { Constant, Linear, Quadratic, AsymptoticConstant, Tabulated };

// A scalar coefficient field over the state space: drift f(x,t), diffusion
// g(x,t) or constraining field psi(x,t). All built-in kinds are functions of
// x alone; time dependence is available through an optional separable
// profile s(t) (tabulated in t, non-negative), so eval(x,t) = base(x)*s(t).
//
// Kinds:
//   Constant           value
//   Linear             a*x + b
//   Quadratic          (x/scale)^2, scale != 0
//   AsymptoticConstant limit*(1 - exp(-rate*|x|)), rate > 0;
//                      approaches `limit` as |x| -> infinity
//   Tabulated          piecewise-linear through strictly increasing knots,
//                      clamped to the boundary values outside the grid
class CoefficientField {
public:
    using Knots = std::vector<std::pair<double, double>>;

    static CoefficientField constant(double value);
    static CoefficientField linear(double a, double b);
    static CoefficientField quadratic(double scale);
    static CoefficientField asymptotic_constant(double limit, double rate);
    static CoefficientField tabulated(Knots knots);

    CoefficientField() : kind_(FieldKind::Constant) {}

    // Returns a copy of this field with the separable time profile s(t)
    // attached. Profile values must be non-negative so the sign and
    // convexity of the base field are preserved at every t.
    CoefficientField with_time_profile(Knots profile) const;

    double eval(double x, double t = 0.0) const;

    FieldKind kind() const { return kind_; }
    double constant_value() const { return p0_; }
    double linear_a() const { return p0_; }
    double linear_b() const { return p1_; }
    double quadratic_scale() const { return p0_; }
    double asymptotic_limit() const { return p0_; }
    double asymptotic_rate() const { return p1_; }
    const Knots& knots() const { return knots_; }
    const Knots& time_profile() const { return time_profile_; }
    bool has_time_profile() const { return !time_profile_.empty(); }

    bool operator==(const CoefficientField&) const = default;

private:
    FieldKind kind_;
    double p0_ = 0.0;
    double p1_ = 0.0;
    Knots knots_;
    Knots time_profile_;
};

// Weak convexity test on a caller-supplied grid of at least 3 strictly
// increasing points: true iff at every interior point the slope on the
// right is no less than the slope on the left, within tolerance 1e-12.
// The field is sampled at t = 0.
bool check_convexity(const CoefficientField& field, std::span<const double> grid);

// Affine map between two intervals, pinned exactly at both endpoints.
class IntervalMap {
public:
    IntervalMap(double source_low, double source_high, double target_low,
                double target_high);

    double operator()(double x) const;
    IntervalMap inverse() const;

    double source_low() const { return s_lo_; }
    double source_high() const { return s_hi_; }
    double target_low() const { return t_lo_; }
    double target_high() const { return t_hi_; }
    double slope() const { return slope_; }
    double offset() const { return offset_; }

private:
    double s_lo_, s_hi_, t_lo_, t_hi_;
    double slope_, offset_;
};

}  // namespace bgcsp
