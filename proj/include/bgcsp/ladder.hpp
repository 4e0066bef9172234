#pragma once

#include <span>
#include <vector>

#include "bgcsp/coefficients.hpp"
#include "bgcsp/path.hpp"
#include "bgcsp/rng.hpp"
#include "bgcsp/sde.hpp"

namespace bgcsp {

// How band skewness magnitudes decay toward the origin.
//   PsiProportional: |beta_j| = psi(x_j) / psi(x_n)
//   Geometric:       |beta_j| = ratio^(n-j)
enum class LadderSchedule { PsiProportional, Geometric };

// Treatment of increments in the intermediate bands. The band is selected
// by the cumulative position including the current raw increment, so a step
// that would carry the path into a heavier band is treated by that band's
// rule.
//   PositionBased: an outward increment is reflected toward the origin with
//                  probability |beta| of the band's inner barrier (skew-coin
//                  resolution); inward increments pass through.
//   SquaredDamping: every intermediate-band increment d becomes
//                  d - sgn(position)*d^2/100.
// Both rules pass the innermost band through untouched. The outermost pair
// is fully reflective and follows the same Skorokhod construction as the
// two-sided reflected diffusion: a crossing increment is absorbed at the
// wall, and a path placed beyond the wall steps toward the origin.
enum class BandRule { PositionBased, SquaredDamping };

// A symmetric graded set of 2n barriers at +-j*half_width/n. Betas are
// antisymmetric with the sign matching the barrier's side of the origin and
// magnitudes strictly increasing outward, so the outermost pair is fully
// reflective (beta = -1 at -half_width, +1 at +half_width). half_count = 0
// is the empty ladder: simulation degenerates to the unconstrained process.
struct BarrierLadder {
    CoefficientField psi;
    int half_count = 0;  // n
    LadderSchedule schedule = LadderSchedule::PsiProportional;
    double geometric_ratio = 0.5;
    std::vector<double> positions;  // ascending, size 2n
    std::vector<double> betas;      // matching positions

    bool empty() const { return half_count == 0; }
    double half_width() const { return positions.empty() ? 0.0 : positions.back(); }
};

BarrierLadder build_ladder(const CoefficientField& psi, double half_width, int n,
                           LadderSchedule schedule, double geometric_ratio = 0.5);

// Band treatment of one raw increment at the given cumulative position;
// returns the applied increment.
double ladder_apply(const BarrierLadder& ladder, BandRule rule, double position,
                    double raw_increment, SplitMix64& coin);

PathRecord simulate_ladder(const BarrierLadder& ladder, BandRule rule, double mu,
                           double sigma, double x0, IncrementMode mode, int n_steps,
                           double horizon, SplitMix64 noise, SplitMix64 coin);

// Running extremes of one path, initial point included.
struct PathExtremes {
    double min_value = 0.0;
    double max_value = 0.0;
};

enum class EstimateMethod { EnsembleExtreme, Quantile };

// Effective reflective levels inferred from an ensemble. lower/upper bound
// the visited range (per the chosen method), kappa = max(|lower|, upper).
// stability is the standard deviation of kappa across 10 disjoint seed
// batches. diverged is set when the ensemble's spatial extent still grows
// with path count (no hidden barrier; see estimate_hidden_barriers).
struct HiddenBarrierEstimate {
    double lower = 0.0;
    double upper = 0.0;
    double kappa = 0.0;
    double stability = 0.0;
    bool diverged = false;
    EstimateMethod method = EstimateMethod::Quantile;
    double quantile_q = 0.001;
    std::vector<double> batch_kappa;  // one entry per seed batch
};

// Estimates hidden barriers from at least 100 per-path extreme pairs.
// EnsembleExtreme takes the min/max over all paths; Quantile(q) takes the
// q-quantile of per-path minima and the (1-q)-quantile of per-path maxima.
// Divergence (no hidden barrier) is flagged when the support extent still
// grows with path count (full-sample extent more than two standard errors
// and 10% above the mean extent of 10 disjoint batches) or when per-path
// extremes are dispersed like the paths themselves rather than piled at a
// support edge (relative spread above 25%).
HiddenBarrierEstimate estimate_hidden_barriers(std::span<const PathExtremes> extremes,
                                               EstimateMethod method,
                                               double quantile_q = 0.001);

// Mean over seed-paired paths of the maximum absolute state difference.
double sup_difference(const std::vector<std::vector<double>>& ensemble_x,
                      const std::vector<std::vector<double>>& ensemble_y);

}  // namespace bgcsp
