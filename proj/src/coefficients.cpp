#include "bgcsp/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bgcsp {

int sgn(double x) {
    if (!std::isfinite(x)) throw std::domain_error("sgn: non-finite input");
    if (x > 0.0) return 1;
    if (x < 0.0) return -1;
    return 0;
}

namespace {

void validate_knots(const CoefficientField::Knots& knots, const char* what) {
    if (knots.size() < 2)
        throw std::invalid_argument(std::string(what) + ": needs at least 2 knots");
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        if (!(knots[i].first < knots[i + 1].first))
            throw std::invalid_argument(std::string(what) +
                                        ": knot abscissae must be strictly increasing");
}

double interp_clamped(const CoefficientField::Knots& knots, double x) {
    if (x <= knots.front().first) return knots.front().second;
    if (x >= knots.back().first) return knots.back().second;
    auto it = std::upper_bound(
        knots.begin(), knots.end(), x,
        [](double v, const std::pair<double, double>& k) { return v < k.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (x - lo.first) / (hi.first - lo.first);
    return lo.second + w * (hi.second - lo.second);
}

}  // namespace

CoefficientField CoefficientField::constant(double value) {
    CoefficientField f;
    f.kind_ = FieldKind::Constant;
    f.p0_ = value;
    return f;
}

CoefficientField CoefficientField::linear(double a, double b) {
    CoefficientField f;
    f.kind_ = FieldKind::Linear;
    f.p0_ = a;
    f.p1_ = b;
    return f;
}

CoefficientField CoefficientField::quadratic(double scale) {
    if (scale == 0.0 || !std::isfinite(scale))
        throw std::invalid_argument("quadratic: scale must be nonzero and finite");
    CoefficientField f;
    f.kind_ = FieldKind::Quadratic;
    f.p0_ = scale;
    return f;
}

CoefficientField CoefficientField::asymptotic_constant(double limit, double rate) {
    if (!(rate > 0.0))
        throw std::invalid_argument("asymptotic_constant: rate must be positive");
    CoefficientField f;
    f.kind_ = FieldKind::AsymptoticConstant;
    f.p0_ = limit;
    f.p1_ = rate;
    return f;
}

CoefficientField CoefficientField::tabulated(Knots knots) {
    validate_knots(knots, "tabulated");
    CoefficientField f;
    f.kind_ = FieldKind::Tabulated;
    f.knots_ = std::move(knots);
    return f;
}

CoefficientField CoefficientField::with_time_profile(Knots profile) const {
    validate_knots(profile, "time_profile");
    for (const auto& [t, s] : profile)
        if (s < 0.0)
            throw std::invalid_argument("time_profile: values must be non-negative");
    CoefficientField f = *this;
    f.time_profile_ = std::move(profile);
    return f;
}

double CoefficientField::eval(double x, double t) const {
    if (!std::isfinite(x)) throw std::domain_error("eval: non-finite x");
    double v = 0.0;
    switch (kind_) {
        case FieldKind::Constant:
            v = p0_;
            break;
        case FieldKind::Linear:
            v = p0_ * x + p1_;
            break;
        case FieldKind::Quadratic: {
            const double r = x / p0_;
            v = r * r;
            break;
        }
        case FieldKind::AsymptoticConstant:
            v = p0_ * (1.0 - std::exp(-p1_ * std::abs(x)));
            break;
        case FieldKind::Tabulated:
            v = interp_clamped(knots_, x);
            break;
    }
    if (!time_profile_.empty()) v *= interp_clamped(time_profile_, t);
    return v;
}

bool check_convexity(const CoefficientField& field, std::span<const double> grid) {
    if (grid.size() < 3)
        throw std::invalid_argument("check_convexity: grid needs at least 3 points");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw std::invalid_argument("check_convexity: grid must be strictly increasing");

    constexpr double tol = 1e-12;
    double f_prev = field.eval(grid[0]);
    double f_mid = field.eval(grid[1]);
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double f_next = field.eval(grid[i + 1]);
        const double slope_left = (f_mid - f_prev) / (grid[i] - grid[i - 1]);
        const double slope_right = (f_next - f_mid) / (grid[i + 1] - grid[i]);
        if (slope_right - slope_left < -tol) return false;
        f_prev = f_mid;
        f_mid = f_next;
    }
    return true;
}

IntervalMap::IntervalMap(double source_low, double source_high, double target_low,
                         double target_high)
    : s_lo_(source_low), s_hi_(source_high), t_lo_(target_low), t_hi_(target_high) {
    if (!(source_high > source_low))
        throw std::invalid_argument("IntervalMap: degenerate source interval");
    if (!(target_high > target_low))
        throw std::invalid_argument("IntervalMap: degenerate target interval");
    slope_ = (t_hi_ - t_lo_) / (s_hi_ - s_lo_);
    offset_ = t_lo_ - slope_ * s_lo_;
}

double IntervalMap::operator()(double x) const {
    // endpoints map exactly, independent of rounding in slope/offset
    if (x == s_lo_) return t_lo_;
    if (x == s_hi_) return t_hi_;
    return t_lo_ + (x - s_lo_) * slope_;
}

IntervalMap IntervalMap::inverse() const {
    return IntervalMap(t_lo_, t_hi_, s_lo_, s_hi_);
}

}  // namespace bgcsp
