#pragma once

#include <optional>
#include <vector>

#include "bgcsp/coefficients.hpp"
#include "bgcsp/path.hpp"
#include "bgcsp/rng.hpp"

namespace bgcsp {

// Where the state-constraining term enters the step update.
//   DriftTerm:     x' = x + (f - sgn(x)*psi(x,t))*dt + g*dw
//   DiffusionTerm: x' = x + f*dt + g*dw - sgn(x)*psi(x,t)*|dw|
//   Differential:  x' = candidate - pull of magnitude |psi(candidate,t) -
//                  psi(x,t)| toward the origin, candidate = x + f*dt + g*dw
// In every placement the correction is capped so the corrected state never
// lands beyond the origin-mirrored image of the unconstrained candidate:
// the constraint may at most reflect a step through the origin, never
// amplify it.
enum class BgcPlacement { DriftTerm, DiffusionTerm, Differential };

// How the per-step noise dw multiplying g is drawn.
//   GaussianScaled: sqrt(dt)*N(0,1)  (standard Euler-Maruyama)
//   GaussianUnit:   N(0,1)           (unit-variance increments regardless of dt)
//   Binomial:       +1 or -1 with equal probability
// GaussianScaled and GaussianUnit coincide when dt = 1.
enum class IncrementMode { GaussianScaled, GaussianUnit, Binomial };

struct SdeSpec {
    CoefficientField drift;                // f
    CoefficientField diffusion;            // g
    std::optional<CoefficientField> bgc;   // psi
    BgcPlacement placement = BgcPlacement::DriftTerm;
    double x0 = 0.0;
    IncrementMode increment_mode = IncrementMode::GaussianScaled;

    // Checks diffusion >= 0 and, when present, convexity of the
    // constraining field over [range_low, range_high]. Throws ConfigError.
    void validate(double range_low, double range_high, int grid_points = 201) const;
};

// n coordinates driven by m shared Wiener components:
//   dx_i = f_i*dt + sum_j g_ij*dw_j - sgn(x_i)*dpsi_i
// The constraint is applied coordinate-wise with the scalar placement rule;
// DiffusionTerm pairs coordinate i with Wiener component min(i, m-1).
struct SdeSpecNd {
    int dimension = 1;         // n
    int wiener_dimension = 1;  // m
    std::vector<CoefficientField> drift;                 // n entries
    std::vector<CoefficientField> diffusion;             // n*m, row-major
    std::vector<std::optional<CoefficientField>> bgc;    // n entries
    std::vector<double> x0;
    BgcPlacement placement = BgcPlacement::DriftTerm;
    IncrementMode increment_mode = IncrementMode::GaussianScaled;

    void validate(double range_low, double range_high, int grid_points = 201) const;
};

double draw_increment(IncrementMode mode, double sqrt_dt, SplitMix64& rng);

// Unconstrained Euler step: x + (f(x,t)*dt + g(x,t)*dw).
double step_ito(double x, double t, const SdeSpec& spec, double dw, double dt);

// Constrained step per spec.placement. Throws ConfigError if spec.bgc is
// absent. A step taken at x = 0 is identical to step_ito.
double step_bgc(double x, double t, const SdeSpec& spec, double dw, double dt);

PathRecord simulate_path(const SdeSpec& spec, int n_steps, double horizon,
                         SplitMix64 noise);

PathRecord simulate_multidim(const SdeSpecNd& spec, int n_steps, double horizon,
                             SplitMix64 noise);

}  // namespace bgcsp
