#include "bgcsp/skew.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "bgcsp/csv.hpp"
#include "bgcsp/errors.hpp"

namespace bgcsp {

void MsbmSpec::validate() const {
    if (!(sigma > 0.0)) throw ConfigError("msbm.sigma: must be > 0");
    for (std::size_t j = 0; j < barriers.size(); ++j) {
        if (std::abs(barriers[j].beta) > 1.0)
            throw ConfigError("msbm.barriers[" + std::to_string(j) +
                              "].beta: must lie in [-1, 1]");
        if (j + 1 < barriers.size() &&
            !(barriers[j].position < barriers[j + 1].position))
            throw ConfigError("msbm.barriers: positions must be strictly increasing");
    }
}

namespace {

// index of the barrier at exactly x, or -1
int barrier_at(const std::vector<BarrierSpec>& bars, double x) {
    for (std::size_t j = 0; j < bars.size(); ++j)
        if (bars[j].position == x) return static_cast<int>(j);
    return -1;
}

// first barrier strictly between cur and target (inclusive of target)
int next_barrier(const std::vector<BarrierSpec>& bars, double cur, double target) {
    if (target > cur) {
        for (std::size_t j = 0; j < bars.size(); ++j)
            if (bars[j].position > cur && bars[j].position <= target)
                return static_cast<int>(j);
    } else if (target < cur) {
        for (std::size_t j = bars.size(); j-- > 0;)
            if (bars[j].position < cur && bars[j].position >= target)
                return static_cast<int>(j);
    }
    return -1;
}

// side resolution: true = continue above the barrier
bool resolve_up(double beta, SplitMix64& coin) {
    if (beta >= 1.0) return true;
    if (beta <= -1.0) return false;
    return coin.next_bernoulli(0.5 * (1.0 + beta));
}

}  // namespace

double step_msbm(double x, const MsbmSpec& spec, double dw, double dt,
                 LocalTimeLedger& ledger, SplitMix64& coin) {
    double target = x + (spec.mu * dt + spec.sigma * dw);
    double cur = x;

    // a step taken from a barrier is itself skew-resolved
    if (const int j0 = barrier_at(spec.barriers, cur); j0 >= 0) {
        const double excess = std::abs(target - cur);
        target = resolve_up(spec.barriers[static_cast<std::size_t>(j0)].beta, coin)
                     ? cur + excess
                     : cur - excess;
        ledger.local_time[static_cast<std::size_t>(j0)] += excess;
        ledger.hits[static_cast<std::size_t>(j0)] += 1;
    }

    while (cur != target) {
        const int j = next_barrier(spec.barriers, cur, target);
        if (j < 0) break;
        const auto ju = static_cast<std::size_t>(j);
        const double pos = spec.barriers[ju].position;
        const double excess = std::abs(target - pos);
        target = resolve_up(spec.barriers[ju].beta, coin) ? pos + excess : pos - excess;
        ledger.local_time[ju] += excess;
        ledger.hits[ju] += 1;
        cur = pos;
    }
    return target;
}

MsbmPathResult simulate_msbm(const MsbmSpec& spec, IncrementMode mode, int n_steps,
                             double horizon, SplitMix64 noise, SplitMix64 coin,
                             bool record_ledger_series) {
    if (n_steps < 1) throw ConfigError("simulate_msbm: n_steps must be >= 1");
    if (!(horizon > 0.0)) throw ConfigError("simulate_msbm: horizon must be > 0");
    spec.validate();

    const double dt = horizon / n_steps;
    const double sqrt_dt = std::sqrt(dt);
    const auto count = static_cast<std::size_t>(n_steps);

    MsbmPathResult out{.path = {},
                       .ledger = LocalTimeLedger(spec.barriers.size()),
                       .ledger_series = {}};
    out.path.dt = dt;
    out.path.dimension = 1;
    out.path.times.resize(count + 1);
    out.path.values.resize(count + 1);
    out.path.increments.resize(count);
    for (std::size_t k = 0; k <= count; ++k)
        out.path.times[k] = dt * static_cast<double>(k);
    if (record_ledger_series)
        out.ledger_series.assign(count + 1,
                                 std::vector<double>(spec.barriers.size(), 0.0));

    double x = spec.x0;
    out.path.values[0] = x;
    for (std::size_t k = 0; k < count; ++k) {
        const double dw = draw_increment(mode, sqrt_dt, noise);
        const double next = step_msbm(x, spec, dw, dt, out.ledger, coin);
        if (!std::isfinite(next))
            throw NumericError("simulate_msbm: non-finite state", -1,
                               static_cast<long>(k));
        out.path.increments[k] = next - x;
        x = next;
        out.path.values[k + 1] = x;
        if (record_ledger_series) out.ledger_series[k + 1] = out.ledger.local_time;
    }
    return out;
}

ReflectedPathResult simulate_reflected(double mu, double sigma, double a, double b,
                                       double x0, IncrementMode mode, int n_steps,
                                       double horizon, SplitMix64 noise) {
    if (!(a < b)) throw std::invalid_argument("simulate_reflected: requires a < b");
    if (!(x0 > a && x0 < b))
        throw std::invalid_argument("simulate_reflected: x0 must lie in (a, b)");
    if (n_steps < 1) throw ConfigError("simulate_reflected: n_steps must be >= 1");
    if (!(horizon > 0.0)) throw ConfigError("simulate_reflected: horizon must be > 0");

    const double dt = horizon / n_steps;
    const double sqrt_dt = std::sqrt(dt);
    const auto count = static_cast<std::size_t>(n_steps);

    ReflectedPathResult out;
    out.path.dt = dt;
    out.path.dimension = 1;
    out.path.times.resize(count + 1);
    out.path.values.resize(count + 1);
    out.path.increments.resize(count);
    out.regulators.lower.assign(count + 1, 0.0);
    out.regulators.upper.assign(count + 1, 0.0);
    for (std::size_t k = 0; k <= count; ++k)
        out.path.times[k] = dt * static_cast<double>(k);

    double x = x0;
    out.path.values[0] = x;
    for (std::size_t k = 0; k < count; ++k) {
        const double dw = draw_increment(mode, sqrt_dt, noise);
        const double candidate = x + (mu * dt + sigma * dw);
        double da = 0.0, db = 0.0, next = candidate;
        if (candidate < a) {
            da = a - candidate;
            next = a;
        } else if (candidate > b) {
            db = candidate - b;
            next = b;
        }
        out.path.increments[k] = next - x;
        x = next;
        out.path.values[k + 1] = x;
        out.regulators.lower[k + 1] = out.regulators.lower[k] + da;
        out.regulators.upper[k + 1] = out.regulators.upper[k] + db;
    }
    return out;
}

namespace {

void check_beta_range(std::span<const double> betas) {
    for (double b : betas)
        if (!(std::abs(b) <= 1.0))
            throw std::invalid_argument("merge: skewness values must lie in [-1, 1]");
}

}  // namespace

double merge_beta_pair(double b1, double b2) {
    check_beta_range(std::array{b1, b2});
    const double denom = 1.0 + b1 * b2;
    if (denom == 0.0)
        throw std::domain_error("merge_beta_pair: singular pair (b1*b2 = -1)");
    return (b1 + b2) / denom;
}

double merge_beta_product(std::span<const double> betas) {
    if (betas.empty()) throw std::invalid_argument("merge_beta_product: empty list");
    check_beta_range(betas);
    double plus = 1.0, minus = 1.0;
    for (double b : betas) {
        plus *= 1.0 + b;
        minus *= 1.0 - b;
    }
    const double denom = plus + minus;
    if (denom == 0.0)
        throw std::domain_error("merge_beta_product: singular configuration");
    return (plus - minus) / denom;
}

double merge_beta_symmetric(std::span<const double> betas) {
    if (betas.empty()) throw std::invalid_argument("merge_beta_symmetric: empty list");
    check_beta_range(betas);
    // elementary symmetric polynomials by Vieta's recurrence
    std::vector<double> e(betas.size() + 1, 0.0);
    e[0] = 1.0;
    std::size_t used = 0;
    for (double b : betas) {
        ++used;
        for (std::size_t k = used; k >= 1; --k) e[k] += b * e[k - 1];
    }
    double num = 0.0, den = 1.0;
    for (std::size_t k = 1; k < e.size(); ++k)
        (k % 2 ? num : den) += e[k];
    if (den == 0.0)
        throw std::domain_error("merge_beta_symmetric: singular configuration");
    return num / den;
}

double bgcsp_merged_beta(std::span<const double> ladder_betas) {
    const std::size_t size = ladder_betas.size();
    if (size < 2 || size % 2 != 0)
        throw std::invalid_argument(
            "bgcsp_merged_beta: expected an even-length ladder list");
    constexpr double tol = 1e-12;
    for (std::size_t i = 0; i < size / 2; ++i)
        if (std::abs(ladder_betas[i] + ladder_betas[size - 1 - i]) > tol)
            throw std::invalid_argument(
                "bgcsp_merged_beta: list is not antisymmetric about the origin");
    const double merged_neg = merge_beta_product(ladder_betas.subspan(0, size / 2));
    const double merged_pos = merge_beta_product(ladder_betas.subspan(size / 2));
    return merged_pos + merged_neg;
}

void write_ledger_csv(std::ostream& out, const PathRecord& path, const MsbmSpec& spec,
                      const std::vector<std::vector<double>>& ledger_series) {
    out << "t";
    for (std::size_t j = 0; j < spec.barriers.size(); ++j)
        out << ",L_x" << (j + 1);
    out << "\n";
    for (std::size_t k = 0; k < path.times.size(); ++k) {
        write_csv_field(out, path.times[k]);
        for (double v : ledger_series[k]) {
            out << ",";
            write_csv_field(out, v);
        }
        out << "\n";
    }
}

void write_regulators_csv(std::ostream& out, const PathRecord& path,
                          const RegulatorSeries& regulators) {
    out << "t,A,B\n";
    for (std::size_t k = 0; k < path.times.size(); ++k) {
        write_csv_field(out, path.times[k]);
        out << ",";
        write_csv_field(out, regulators.lower[k]);
        out << ",";
        write_csv_field(out, regulators.upper[k]);
        out << "\n";
    }
}

}  // namespace bgcsp
