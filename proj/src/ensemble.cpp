#include "bgcsp/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

#include "bgcsp/errors.hpp"

namespace bgcsp {

namespace {

// Reach of the unconstrained noise, used to size validation grids.
double noise_spread(const ExperimentConfig& c) {
    switch (c.increment_mode) {
        case IncrementMode::GaussianScaled:
            return c.sigma * std::sqrt(c.horizon);
        case IncrementMode::GaussianUnit:
        case IncrementMode::Binomial:
            return c.sigma * std::sqrt(static_cast<double>(c.n_steps));
    }
    return c.sigma;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (n_paths < 1) throw ConfigError("n_paths: must be >= 1");
    if (n_steps < 1) throw ConfigError("n_steps: must be >= 1");
    if (!(horizon > 0.0)) throw ConfigError("horizon: must be > 0");
    if (!(sigma >= 0.0)) throw ConfigError("sigma: must be >= 0");
    if (histogram_bins < 1) throw ConfigError("histogram_bins: must be >= 1");
    if (workers < 0) throw ConfigError("workers: must be >= 0");
    if (!std::isfinite(mu) || !std::isfinite(sigma) || !std::isfinite(x0))
        throw ConfigError("mu/sigma/x0: must be finite");

    const double reach = std::max(1.0, 6.0 * noise_spread(*this));
    if (const auto* bgc = std::get_if<ProcessBgc>(&process)) {
        SdeSpec spec;
        spec.drift = CoefficientField::constant(mu);
        spec.diffusion = CoefficientField::constant(sigma);
        spec.bgc = bgc->psi;
        spec.placement = bgc->placement;
        try {
            spec.validate(x0 - reach, x0 + reach);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("process.psi: ") + e.what());
        }
    } else if (const auto* msbm = std::get_if<ProcessMsbm>(&process)) {
        MsbmSpec spec{mu, sigma, msbm->barriers, x0};
        try {
            spec.validate();
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("process.") + e.what());
        }
    } else if (const auto* refl = std::get_if<ProcessReflected>(&process)) {
        if (!(refl->a < refl->b)) throw ConfigError("process.a: must be < process.b");
        if (!(x0 > refl->a && x0 < refl->b))
            throw ConfigError("x0: must lie strictly inside (process.a, process.b)");
    } else if (const auto* lad = std::get_if<ProcessLadder>(&process)) {
        try {
            (void)build_ladder(lad->psi, lad->half_width, lad->half_count,
                               lad->schedule, lad->geometric_ratio);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("process.") + e.what());
        }
    }
}

namespace {

struct ShardAccumulator {
    std::vector<double> sum;    // per grid point
    std::vector<double> sumsq;  // per grid point
    std::vector<double> local_time;
    std::vector<long> hits;
    double regulator_lower = 0.0;
    double regulator_upper = 0.0;
};

struct FirstError {
    std::mutex mutex;
    bool set = false;
    long path = 0;
    long step = 0;
    std::string what;

    void record(long p, long s, const char* w) {
        std::lock_guard<std::mutex> lock(mutex);
        if (!set || p < path) {
            set = true;
            path = p;
            step = s;
            what = w;
        }
    }
};

struct UnconstrainedStepper {
    double mu, sigma, x0;
    double reset() const { return x0; }
    double step(double x, double /*t*/, double dt, double dw, SplitMix64&) const {
        return x + (mu * dt + sigma * dw);
    }
    void finish(ShardAccumulator&) const {}
};

struct BgcStepper {
    SdeSpec spec;
    double reset() const { return spec.x0; }
    double step(double x, double t, double dt, double dw, SplitMix64&) const {
        return step_bgc(x, t, spec, dw, dt);
    }
    void finish(ShardAccumulator&) const {}
};

struct MsbmStepper {
    MsbmSpec spec;
    LocalTimeLedger ledger{0};
    double reset() {
        ledger = LocalTimeLedger(spec.barriers.size());
        return spec.x0;
    }
    double step(double x, double /*t*/, double dt, double dw, SplitMix64& coin) {
        return step_msbm(x, spec, dw, dt, ledger, coin);
    }
    void finish(ShardAccumulator& acc) const {
        for (std::size_t j = 0; j < ledger.local_time.size(); ++j) {
            acc.local_time[j] += ledger.local_time[j];
            acc.hits[j] += ledger.hits[j];
        }
    }
};

struct ReflectedStepper {
    double mu, sigma, a, b, x0;
    double reg_lower = 0.0, reg_upper = 0.0;
    double reset() {
        reg_lower = reg_upper = 0.0;
        return x0;
    }
    double step(double x, double /*t*/, double dt, double dw, SplitMix64&) {
        const double candidate = x + (mu * dt + sigma * dw);
        if (candidate < a) {
            reg_lower += a - candidate;
            return a;
        }
        if (candidate > b) {
            reg_upper += candidate - b;
            return b;
        }
        return candidate;
    }
    void finish(ShardAccumulator& acc) const {
        acc.regulator_lower += reg_lower;
        acc.regulator_upper += reg_upper;
    }
};

struct LadderStepper {
    double mu, sigma, x0;
    const BarrierLadder* ladder;
    BandRule rule;
    double reset() const { return x0; }
    double step(double x, double /*t*/, double dt, double dw, SplitMix64& coin) const {
        const double raw = mu * dt + sigma * dw;
        return x + ladder_apply(*ladder, rule, x, raw, coin);
    }
    void finish(ShardAccumulator&) const {}
};

template <typename Stepper>
void simulate_one_path(const ExperimentConfig& config, Stepper& stepper,
                       long path_index, ShardAccumulator& acc, double* full_values,
                       double& terminal, PathExtremes& extremes) {
    const double dt = config.horizon / static_cast<double>(config.n_steps);
    const double sqrt_dt = std::sqrt(dt);
    SplitMix64 noise = path_noise_stream(config.master_seed,
                                         static_cast<std::uint64_t>(path_index));
    SplitMix64 coin = path_coin_stream(config.master_seed,
                                       static_cast<std::uint64_t>(path_index));

    double x = stepper.reset();
    extremes = {x, x};
    acc.sum[0] += x;
    acc.sumsq[0] += x * x;
    if (full_values) full_values[0] = x;
    for (long k = 0; k < config.n_steps; ++k) {
        const double t = dt * static_cast<double>(k);
        const double dw = draw_increment(config.increment_mode, sqrt_dt, noise);
        x = stepper.step(x, t, dt, dw, coin);
        if (!std::isfinite(x))
            throw NumericError("non-finite state", path_index, k);
        extremes.min_value = std::min(extremes.min_value, x);
        extremes.max_value = std::max(extremes.max_value, x);
        const auto ku = static_cast<std::size_t>(k) + 1;
        acc.sum[ku] += x;
        acc.sumsq[ku] += x * x;
        if (full_values) full_values[ku] = x;
    }
    terminal = x;
    stepper.finish(acc);
}

// Paths are grouped into fixed shards; workers pull shards off an atomic
// counter and write only shard-local accumulators plus per-path slots, so
// the reduction order never depends on scheduling.
template <typename Stepper>
void run_all_paths(const ExperimentConfig& config, const Stepper& prototype,
                   std::size_t n_barriers, EnsembleResult& result,
                   long display_count) {
    const long n_paths = config.n_paths;
    const auto grid_points = static_cast<std::size_t>(config.n_steps) + 1;

    constexpr long kShards = 64;
    const long n_shards = std::min<long>(kShards, n_paths);
    const long shard_size = (n_paths + n_shards - 1) / n_shards;

    std::vector<ShardAccumulator> shards(static_cast<std::size_t>(n_shards));
    for (auto& s : shards) {
        s.sum.assign(grid_points, 0.0);
        s.sumsq.assign(grid_points, 0.0);
        s.local_time.assign(n_barriers, 0.0);
        s.hits.assign(n_barriers, 0);
    }

    int worker_count = config.workers > 0
                           ? config.workers
                           : static_cast<int>(std::thread::hardware_concurrency());
    worker_count = std::max(1, std::min<int>(worker_count,
                                             static_cast<int>(n_shards)));

    std::atomic<long> next_shard{0};
    FirstError first_error;

    auto work = [&]() {
        Stepper stepper = prototype;
        for (;;) {
            const long s = next_shard.fetch_add(1);
            if (s >= n_shards) break;
            auto& acc = shards[static_cast<std::size_t>(s)];
            const long begin = s * shard_size;
            const long end = std::min<long>(begin + shard_size, n_paths);
            for (long p = begin; p < end; ++p) {
                double* full = p < display_count
                                   ? result.display_paths[static_cast<std::size_t>(p)]
                                         .data()
                                   : nullptr;
                try {
                    simulate_one_path(config, stepper, p, acc, full,
                                      result.terminal[static_cast<std::size_t>(p)],
                                      result.extremes[static_cast<std::size_t>(p)]);
                } catch (const NumericError& e) {
                    first_error.record(e.path_index, e.step_index, e.what());
                }
            }
        }
    };

    if (worker_count == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(worker_count));
        for (int w = 0; w < worker_count; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    if (first_error.set)
        throw NumericError("run_ensemble: " + first_error.what, first_error.path,
                           first_error.step);

    // deterministic shard-order reduction
    std::vector<double> sum(grid_points, 0.0), sumsq(grid_points, 0.0);
    std::vector<double> local_time(n_barriers, 0.0);
    std::vector<long> hits(n_barriers, 0);
    double reg_lower = 0.0, reg_upper = 0.0;
    for (const auto& s : shards) {
        for (std::size_t k = 0; k < grid_points; ++k) {
            sum[k] += s.sum[k];
            sumsq[k] += s.sumsq[k];
        }
        for (std::size_t j = 0; j < n_barriers; ++j) {
            local_time[j] += s.local_time[j];
            hits[j] += s.hits[j];
        }
        reg_lower += s.regulator_lower;
        reg_upper += s.regulator_upper;
    }

    const auto n = static_cast<double>(n_paths);
    result.step_mean.resize(grid_points);
    result.step_var.resize(grid_points);
    for (std::size_t k = 0; k < grid_points; ++k) {
        const double m = sum[k] / n;
        result.step_mean[k] = m;
        result.step_var[k] = std::max(0.0, sumsq[k] / n - m * m);
    }
    if (n_barriers > 0) {
        result.mean_local_time.resize(n_barriers);
        for (std::size_t j = 0; j < n_barriers; ++j)
            result.mean_local_time[j] = local_time[j] / n;
        result.total_hits = hits;
    }
    result.mean_regulator_lower = reg_lower / n;
    result.mean_regulator_upper = reg_upper / n;
}

}  // namespace

EnsembleResult run_ensemble(const ExperimentConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    EnsembleResult result;
    result.terminal.assign(static_cast<std::size_t>(config.n_paths), 0.0);
    result.extremes.assign(static_cast<std::size_t>(config.n_paths), PathExtremes{});

    const long display_count =
        config.outputs.paths_csv ? std::min<long>(1000, config.n_paths) : 0;
    result.display_paths.assign(
        static_cast<std::size_t>(display_count),
        std::vector<double>(static_cast<std::size_t>(config.n_steps) + 1, 0.0));

    if (const auto* p = std::get_if<ProcessUnconstrained>(&config.process)) {
        (void)p;
        UnconstrainedStepper stepper{config.mu, config.sigma, config.x0};
        run_all_paths(config, stepper, 0, result, display_count);
    } else if (const auto* p = std::get_if<ProcessBgc>(&config.process)) {
        BgcStepper stepper;
        stepper.spec.drift = CoefficientField::constant(config.mu);
        stepper.spec.diffusion = CoefficientField::constant(config.sigma);
        stepper.spec.bgc = p->psi;
        stepper.spec.placement = p->placement;
        stepper.spec.x0 = config.x0;
        stepper.spec.increment_mode = config.increment_mode;
        run_all_paths(config, stepper, 0, result, display_count);
    } else if (const auto* p = std::get_if<ProcessMsbm>(&config.process)) {
        MsbmStepper stepper;
        stepper.spec = MsbmSpec{config.mu, config.sigma, p->barriers, config.x0};
        run_all_paths(config, stepper, p->barriers.size(), result, display_count);
    } else if (const auto* p = std::get_if<ProcessReflected>(&config.process)) {
        ReflectedStepper stepper{config.mu, config.sigma, p->a, p->b, config.x0};
        run_all_paths(config, stepper, 0, result, display_count);
    } else if (const auto* p = std::get_if<ProcessLadder>(&config.process)) {
        const BarrierLadder ladder = build_ladder(
            p->psi, p->half_width, p->half_count, p->schedule, p->geometric_ratio);
        LadderStepper stepper{config.mu, config.sigma, config.x0, &ladder,
                              p->band_rule};
        run_all_paths(config, stepper, 0, result, display_count);
    }

    if (config.n_paths >= 100)
        result.barrier_estimate =
            estimate_hidden_barriers(result.extremes, EstimateMethod::Quantile, 0.001);

    // Default binning: +-1.2*kappa around a usable barrier estimate, the
    // terminal data range otherwise.
    double lo = result.terminal[0], hi = result.terminal[0];
    for (double v : result.terminal) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (result.barrier_estimate && !result.barrier_estimate->diverged &&
        result.barrier_estimate->kappa > 0.0) {
        lo = -1.2 * result.barrier_estimate->kappa;
        hi = 1.2 * result.barrier_estimate->kappa;
    }
    if (!(lo < hi)) {
        lo -= 0.5;
        hi += 0.5;
    }
    result.histogram = make_histogram(
        result.terminal, uniform_edges(lo, hi, config.histogram_bins));

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

}  // namespace bgcsp
