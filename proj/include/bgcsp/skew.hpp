#pragma once

#include <span>
#include <vector>

#include "bgcsp/path.hpp"
#include "bgcsp/rng.hpp"
#include "bgcsp/sde.hpp"

namespace bgcsp {

// One semipermeable barrier. beta in [-1,1] is the upward bias: a path
// resolving at the barrier continues on the upper side with probability
// (1+beta)/2. beta = +1 always reflects up (the barrier is a floor),
// beta = -1 always reflects down (a ceiling), beta = 0 is transparent.
struct BarrierSpec {
    double position = 0.0;
    double beta = 0.0;
};

struct MsbmSpec {
    double mu = 0.0;
    double sigma = 1.0;
    std::vector<BarrierSpec> barriers;  // strictly increasing positions
    double x0 = 0.0;

    void validate() const;  // throws ConfigError
};

// Discrete local time per barrier: accumulated excess travel resolved at the
// barrier, plus the number of touches. Entries never decrease along a path.
struct LocalTimeLedger {
    std::vector<double> local_time;
    std::vector<long> hits;

    explicit LocalTimeLedger(std::size_t n_barriers = 0)
        : local_time(n_barriers, 0.0), hits(n_barriers, 0) {}
};

// Cumulative regulator processes of a two-sided reflected diffusion.
// lower[k] (A) grows only on steps that pin the path at a, upper[k] (B)
// only on steps that pin it at b; both start at zero.
struct RegulatorSeries {
    std::vector<double> lower;
    std::vector<double> upper;
};

// One step of multi-skew motion: candidate x + mu*dt + sigma*dw, then
// first-crossing resolution. Each barrier met along the step segment flips
// a skew coin: with probability (1+beta)/2 the remaining excess travel is
// carried to the upper side, otherwise to the lower side; |beta| = 1 sides
// are forced and consume no randomness. A step that starts exactly on a
// barrier is resolved from the barrier the same way. Multiple crossings in
// one step resolve sequentially along the segment, so path ordering through
// the barrier set is preserved.
double step_msbm(double x, const MsbmSpec& spec, double dw, double dt,
                 LocalTimeLedger& ledger, SplitMix64& coin);

struct MsbmPathResult {
    PathRecord path;
    LocalTimeLedger ledger;
    // one row per grid point when requested: running local time per barrier
    std::vector<std::vector<double>> ledger_series;
};

MsbmPathResult simulate_msbm(const MsbmSpec& spec, IncrementMode mode, int n_steps,
                             double horizon, SplitMix64 noise, SplitMix64 coin,
                             bool record_ledger_series = false);

struct ReflectedPathResult {
    PathRecord path;
    RegulatorSeries regulators;
};

// Two-sided reflection on [a, b] by the discrete Skorokhod construction:
// the candidate step is clamped to the interval and the clamped amount is
// booked on the matching regulator, so dA > 0 implies X = a and dB > 0
// implies X = b exactly. Requires x0 in the open interval (a, b).
ReflectedPathResult simulate_reflected(double mu, double sigma, double a, double b,
                                       double x0, IncrementMode mode, int n_steps,
                                       double horizon, SplitMix64 noise);

// Skewness of the single barrier equivalent to two merged barriers:
// (b1 + b2) / (1 + b1*b2). Throws std::domain_error when b1*b2 = -1 (two
// opposing fully reflective barriers have no merged equivalent).
double merge_beta_pair(double b1, double b2);

// Product form for n barriers:
// [prod(1+b_j) - prod(1-b_j)] / [prod(1+b_j) + prod(1-b_j)].
double merge_beta_product(std::span<const double> betas);

// Same value computed through elementary symmetric polynomials:
// (e1 + e3 + ...) / (1 + e2 + e4 + ...). Agrees with merge_beta_product to
// within 1e-12 for every non-singular input.
double merge_beta_symmetric(std::span<const double> betas);

// Merged skewness of an antisymmetric barrier ladder given as the full list
// (b_-n, ..., b_-1, b_1, ..., b_n) with b_-j = -b_j: the sum of the two
// half-line merges, which vanishes identically. Throws
// std::invalid_argument for non-antisymmetric input.
double bgcsp_merged_beta(std::span<const double> ladder_betas);

void write_ledger_csv(std::ostream& out, const PathRecord& path,
                      const MsbmSpec& spec,
                      const std::vector<std::vector<double>>& ledger_series);

void write_regulators_csv(std::ostream& out, const PathRecord& path,
                          const RegulatorSeries& regulators);

}  // namespace bgcsp
