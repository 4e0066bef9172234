#include "bgcsp/sde.hpp"

#include <cmath>
#include <stdexcept>

#include "bgcsp/errors.hpp"

namespace bgcsp {

namespace {

std::vector<double> uniform_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return g;
}

void validate_coefficients(const CoefficientField& diffusion,
                           const std::optional<CoefficientField>& bgc, double lo,
                           double hi, int grid_points, const char* who) {
    if (!(lo < hi) || grid_points < 3)
        throw ConfigError(std::string(who) + ": invalid validation range");
    const auto grid = uniform_grid(lo, hi, grid_points);
    for (double x : grid)
        if (diffusion.eval(x) < 0.0)
            throw ConfigError(std::string(who) + ".diffusion: negative at x=" +
                              std::to_string(x));
    if (bgc && !check_convexity(*bgc, grid))
        throw ConfigError(std::string(who) +
                          ".bgc: field is not convex on the simulation range");
}

// Applies the constraining pull to an unconstrained candidate and caps it at
// the origin-mirrored candidate so a single step can never gain magnitude by
// being pushed through the origin.
double apply_bgc(double x, double t, double candidate, const CoefficientField& psi,
                 BgcPlacement placement, double dt, double dw) {
    const int s = sgn(x);
    if (s == 0) return candidate;

    double correction = 0.0;
    switch (placement) {
        case BgcPlacement::DriftTerm:
            correction = s * psi.eval(x, t) * dt;
            break;
        case BgcPlacement::DiffusionTerm:
            correction = s * psi.eval(x, t) * std::abs(dw);
            break;
        case BgcPlacement::Differential: {
            const double dpsi = psi.eval(candidate, t) - psi.eval(x, t);
            correction = s * dpsi * sgn(candidate - x) * s;
            break;
        }
    }
    if (correction == 0.0) return candidate;

    const double corrected = candidate - correction;
    const double mirror = std::abs(candidate);
    return s > 0 ? std::max(corrected, -mirror) : std::min(corrected, mirror);
}

}  // namespace

void SdeSpec::validate(double range_low, double range_high, int grid_points) const {
    validate_coefficients(diffusion, bgc, range_low, range_high, grid_points, "spec");
}

void SdeSpecNd::validate(double range_low, double range_high, int grid_points) const {
    const auto n = static_cast<std::size_t>(dimension);
    const auto m = static_cast<std::size_t>(wiener_dimension);
    if (dimension < 1 || wiener_dimension < 1)
        throw ConfigError("spec: dimensions must be positive");
    if (drift.size() != n || diffusion.size() != n * m || bgc.size() != n ||
        x0.size() != n)
        throw ConfigError("spec: drift/diffusion/bgc/x0 sizes do not match dimensions");
    // matrix entries may be negative; only the per-row constraining fields
    // carry a shape requirement
    const auto grid = uniform_grid(range_low, range_high, grid_points);
    for (std::size_t i = 0; i < n; ++i)
        if (bgc[i] && !check_convexity(*bgc[i], grid))
            throw ConfigError("spec.bgc[" + std::to_string(i) +
                              "]: field is not convex on the simulation range");
}

double draw_increment(IncrementMode mode, double sqrt_dt, SplitMix64& rng) {
    switch (mode) {
        case IncrementMode::GaussianScaled:
            return sqrt_dt * rng.next_gaussian();
        case IncrementMode::GaussianUnit:
            return rng.next_gaussian();
        case IncrementMode::Binomial:
            return rng.next_sign();
    }
    return 0.0;
}

double step_ito(double x, double t, const SdeSpec& spec, double dw, double dt) {
    return x + (spec.drift.eval(x, t) * dt + spec.diffusion.eval(x, t) * dw);
}

double step_bgc(double x, double t, const SdeSpec& spec, double dw, double dt) {
    if (!spec.bgc)
        throw ConfigError("step_bgc: spec has no constraining field");
    const double candidate = step_ito(x, t, spec, dw, dt);
    return apply_bgc(x, t, candidate, *spec.bgc, spec.placement, dt, dw);
}

PathRecord simulate_path(const SdeSpec& spec, int n_steps, double horizon,
                         SplitMix64 noise) {
    if (n_steps < 1) throw ConfigError("simulate_path: n_steps must be >= 1");
    if (!(horizon > 0.0)) throw ConfigError("simulate_path: horizon must be > 0");

    const double dt = horizon / n_steps;
    const double sqrt_dt = std::sqrt(dt);
    const auto count = static_cast<std::size_t>(n_steps);

    PathRecord rec;
    rec.dt = dt;
    rec.dimension = 1;
    rec.times.resize(count + 1);
    rec.values.resize(count + 1);
    rec.increments.resize(count);
    for (std::size_t k = 0; k <= count; ++k) rec.times[k] = dt * static_cast<double>(k);

    double x = spec.x0;
    rec.values[0] = x;
    for (std::size_t k = 0; k < count; ++k) {
        const double t = rec.times[k];
        const double dw = draw_increment(spec.increment_mode, sqrt_dt, noise);
        const double next = spec.bgc ? step_bgc(x, t, spec, dw, dt)
                                     : step_ito(x, t, spec, dw, dt);
        if (!std::isfinite(next))
            throw NumericError("simulate_path: non-finite state", -1,
                               static_cast<long>(k));
        rec.increments[k] = next - x;
        x = next;
        rec.values[k + 1] = x;
    }
    return rec;
}

PathRecord simulate_multidim(const SdeSpecNd& spec, int n_steps, double horizon,
                             SplitMix64 noise) {
    if (n_steps < 1) throw ConfigError("simulate_multidim: n_steps must be >= 1");
    if (!(horizon > 0.0)) throw ConfigError("simulate_multidim: horizon must be > 0");
    const auto n = static_cast<std::size_t>(spec.dimension);
    const auto m = static_cast<std::size_t>(spec.wiener_dimension);
    if (spec.drift.size() != n || spec.diffusion.size() != n * m ||
        spec.bgc.size() != n || spec.x0.size() != n)
        throw ConfigError("simulate_multidim: inconsistent dimensions");

    const double dt = horizon / n_steps;
    const double sqrt_dt = std::sqrt(dt);
    const auto count = static_cast<std::size_t>(n_steps);

    PathRecord rec;
    rec.dt = dt;
    rec.dimension = spec.dimension;
    rec.times.resize(count + 1);
    rec.values.resize((count + 1) * n);
    rec.increments.resize(count * n);
    for (std::size_t k = 0; k <= count; ++k) rec.times[k] = dt * static_cast<double>(k);

    std::vector<double> x = spec.x0;
    std::vector<double> dw(m);
    for (std::size_t i = 0; i < n; ++i) rec.values[i] = x[i];

    for (std::size_t k = 0; k < count; ++k) {
        const double t = rec.times[k];
        for (std::size_t j = 0; j < m; ++j)
            dw[j] = draw_increment(spec.increment_mode, sqrt_dt, noise);
        for (std::size_t i = 0; i < n; ++i) {
            double delta = spec.drift[i].eval(x[i], t) * dt;
            for (std::size_t j = 0; j < m; ++j)
                delta += spec.diffusion[i * m + j].eval(x[i], t) * dw[j];
            double next = x[i] + delta;
            if (spec.bgc[i]) {
                const double dw_i = dw[std::min(i, m - 1)];
                next = apply_bgc(x[i], t, next, *spec.bgc[i], spec.placement, dt, dw_i);
            }
            if (!std::isfinite(next))
                throw NumericError("simulate_multidim: non-finite state", -1,
                                   static_cast<long>(k));
            rec.increments[k * n + i] = next - x[i];
            x[i] = next;
            rec.values[(k + 1) * n + i] = x[i];
        }
    }
    return rec;
}

}  // namespace bgcsp
