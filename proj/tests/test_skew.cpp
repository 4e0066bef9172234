#include <doctest.h>

#include <stdexcept>

#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "bgcsp/errors.hpp"
#include "bgcsp/skew.hpp"

using namespace bgcsp;

namespace {

MsbmSpec single_barrier(double position, double beta, double x0) {
    MsbmSpec spec;
    spec.mu = 0.0;
    spec.sigma = 1.0;
    spec.barriers = {{position, beta}};
    spec.x0 = x0;
    return spec;
}

}  // namespace

TEST_CASE("a step away from every barrier is a plain Euler step") {
    MsbmSpec spec = single_barrier(0.0, 0.7, 5.0);
    LocalTimeLedger ledger(1);
    SplitMix64 coin(1);
    const double next = step_msbm(5.0, spec, 0.3, 0.01, ledger, coin);
    CHECK(next == doctest::Approx(5.3));
    CHECK(ledger.local_time[0] == 0.0);
    CHECK(ledger.hits[0] == 0);
}

TEST_CASE("a fully reflective floor bounces the excess upward") {
    // crossing from 0.5 toward -0.3 against a beta=+1 barrier at 0
    MsbmSpec spec = single_barrier(0.0, 1.0, 0.5);
    LocalTimeLedger ledger(1);
    SplitMix64 coin(2);
    const double next = step_msbm(0.5, spec, -0.8, 0.01, ledger, coin);
    CHECK(next == doctest::Approx(0.3 - 0.01 * 0.0));
    CHECK(next == doctest::Approx(0.3));
    CHECK(ledger.local_time[0] == doctest::Approx(0.3));
    CHECK(ledger.hits[0] == 1);
}

TEST_CASE("a fully reflective ceiling is transparent from above") {
    // beta=-1 forces the lower side, so a downward crossing passes through
    MsbmSpec spec = single_barrier(0.0, -1.0, 0.5);
    LocalTimeLedger ledger(1);
    SplitMix64 coin(3);
    const double next = step_msbm(0.5, spec, -0.8, 0.01, ledger, coin);
    CHECK(next == doctest::Approx(-0.3));
    CHECK(ledger.hits[0] == 1);
}

TEST_CASE("beta=+1 barrier below the start is never breached") {
    // domination: 1000 paths, sigma*sqrt(dt) well under the gap
    MsbmSpec spec = single_barrier(0.0, 1.0, 1.0);
    const int n_steps = 1000;
    const double horizon = 1.0;  // sigma*sqrt(dt) = 0.0316 << (x0 - barrier)/10
    for (int p = 0; p < 1000; ++p) {
        const auto res = simulate_msbm(
            spec, IncrementMode::GaussianScaled, n_steps, horizon,
            path_noise_stream(321, static_cast<std::uint64_t>(p)),
            path_coin_stream(321, static_cast<std::uint64_t>(p)));
        for (double v : res.path.values) CHECK(v >= 0.0);
    }
}

TEST_CASE("local time never decreases along a path") {
    MsbmSpec spec;
    spec.mu = 0.0;
    spec.sigma = 1.0;
    spec.barriers = {{-1.0, -0.4}, {0.0, 0.2}, {2.0, 0.9}};
    spec.x0 = 0.0;
    const auto res = simulate_msbm(spec, IncrementMode::GaussianScaled, 2000, 4.0,
                                   SplitMix64(99), SplitMix64(100), true);
    for (std::size_t k = 1; k < res.ledger_series.size(); ++k)
        for (std::size_t j = 0; j < spec.barriers.size(); ++j)
            CHECK(res.ledger_series[k][j] >= res.ledger_series[k - 1][j]);
    for (std::size_t j = 0; j < spec.barriers.size(); ++j)
        CHECK(res.ledger.local_time[j] == res.ledger_series.back()[j]);
}

TEST_CASE("skew positivity law at reduced scale") {
    // P(X_T > barrier) = (1+beta)/2; the full-scale run lives in the
    // acceptance suite
    for (double beta : {-0.5, 0.0, 0.5}) {
        MsbmSpec spec = single_barrier(0.0, beta, 0.0);
        const int n_paths = 20000;
        int above = 0;
        for (int p = 0; p < n_paths; ++p) {
            const auto res = simulate_msbm(
                spec, IncrementMode::GaussianScaled, 200, 1.0,
                path_noise_stream(777, static_cast<std::uint64_t>(p)),
                path_coin_stream(777, static_cast<std::uint64_t>(p)));
            if (res.path.values.back() > 0.0) ++above;
        }
        const double expected = 0.5 * (1.0 + beta);
        const double se =
            std::sqrt(expected * (1.0 - expected) / static_cast<double>(n_paths));
        CHECK(std::abs(above / static_cast<double>(n_paths) - expected) < 4.0 * se);
    }
}

TEST_CASE("reflected diffusion stays inside and books exact regulators") {
    const auto res = simulate_reflected(0.0, 1.0, -2.0, 2.0, 0.0,
                                        IncrementMode::GaussianUnit, 5000, 5.0,
                                        SplitMix64(7));
    const auto& path = res.path;
    const auto& reg = res.regulators;
    bool touched_lower = false, touched_upper = false;
    for (std::size_t k = 0; k < path.n_steps(); ++k) {
        const double x = path.values[k + 1];
        CHECK(x >= -2.0);
        CHECK(x <= 2.0);
        const double da = reg.lower[k + 1] - reg.lower[k];
        const double db = reg.upper[k + 1] - reg.upper[k];
        CHECK(da >= 0.0);
        CHECK(db >= 0.0);
        if (da > 0.0) {
            CHECK(x == -2.0);
            touched_lower = true;
        }
        if (db > 0.0) {
            CHECK(x == 2.0);
            touched_upper = true;
        }
    }
    CHECK(touched_lower);
    CHECK(touched_upper);
    CHECK(reg.lower.front() == 0.0);
    CHECK(reg.upper.front() == 0.0);
}

TEST_CASE("an interior path leaves both regulators at zero") {
    // sigma = 0, mu = 0: the path never reaches a boundary
    const auto res = simulate_reflected(0.0, 0.0, -1.0, 1.0, 0.25,
                                        IncrementMode::GaussianScaled, 100, 1.0,
                                        SplitMix64(8));
    CHECK(res.regulators.lower.back() == 0.0);
    CHECK(res.regulators.upper.back() == 0.0);
}

TEST_CASE("deterministic downward drift pins the path at the floor") {
    // sigma = 0, mu < 0: after (x0-a)/|mu*dt| steps the path sits at a and
    // the lower regulator grows by |mu|*dt each step
    const double mu = -1.0, a = -1.0, b = 1.0, x0 = a + 0.1;
    const int n_steps = 100;
    const double horizon = 1.0;  // dt = 0.01 -> pinned after 10 steps
    const auto res = simulate_reflected(mu, 0.0, a, b, x0,
                                        IncrementMode::GaussianScaled, n_steps,
                                        horizon, SplitMix64(9));
    for (std::size_t k = 20; k <= static_cast<std::size_t>(n_steps); ++k)
        CHECK(res.path.values[k] == a);
    const double late_da = res.regulators.lower[50] - res.regulators.lower[49];
    CHECK(late_da == doctest::Approx(0.01));
    CHECK_THROWS_AS(simulate_reflected(0.0, 1.0, -1.0, 1.0, 1.5,
                                       IncrementMode::GaussianScaled, 10, 1.0,
                                       SplitMix64(10)),
                    std::invalid_argument);
}

TEST_CASE("pair merge") {
    CHECK(merge_beta_pair(0.0, 0.0) == 0.0);
    CHECK(merge_beta_pair(1.0, 0.3) == doctest::Approx(1.0));
    // hand-evaluated: (0.5+0.5)/(1+0.25) = 0.8
    CHECK(merge_beta_pair(0.5, 0.5) == doctest::Approx(0.8));
    CHECK_THROWS_AS(merge_beta_pair(1.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(merge_beta_pair(1.5, 0.0), std::invalid_argument);
}

TEST_CASE("product merge") {
    CHECK(merge_beta_product(std::array{0.37}) == doctest::Approx(0.37).epsilon(1e-15));
    CHECK(merge_beta_product(std::array{0.5, 0.5}) == doctest::Approx(0.8));
    for (double b : {0.1, 0.45, 0.99})
        CHECK(std::abs(merge_beta_product(std::array{-b, b})) < 1e-15);
    CHECK_THROWS_AS(merge_beta_product(std::array{1.0, -1.0}), std::domain_error);
    CHECK_THROWS_AS(merge_beta_product(std::span<const double>{}),
                    std::invalid_argument);
}

TEST_CASE("symmetric-polynomial merge equals the product form") {
    CHECK(merge_beta_symmetric(std::array{0.5, 0.5}) == doctest::Approx(0.8));
    CHECK(merge_beta_symmetric(std::array{0.0, 0.0, 0.0, 0.0}) == 0.0);

    SplitMix64 rng(2718);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng.next_u64() % 7;  // up to 8 barriers
        std::vector<double> betas(n);
        for (auto& b : betas) b = 2.0 * rng.next_unit() - 1.0;
        const double product = merge_beta_product(betas);
        const double symmetric = merge_beta_symmetric(betas);
        CHECK(std::abs(product - symmetric) < 1e-12);
    }
}

TEST_CASE("pair merge folds to the product form in any grouping order") {
    SplitMix64 rng(3141);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng.next_u64() % 5;
        std::vector<double> betas(n);
        for (auto& b : betas) b = 1.8 * rng.next_unit() - 0.9;
        double left = betas[0];
        for (std::size_t i = 1; i < n; ++i) left = merge_beta_pair(left, betas[i]);
        double right = betas[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) right = merge_beta_pair(betas[i], right);
        const double product = merge_beta_product(betas);
        CHECK(std::abs(left - product) < 1e-12);
        CHECK(std::abs(right - product) < 1e-12);
    }
}

TEST_CASE("antisymmetric ladders merge to zero") {
    CHECK(bgcsp_merged_beta(std::array{-0.9, -0.5, 0.5, 0.9}) == 0.0);
    for (double b : {0.2, 0.5, 0.99})
        CHECK(bgcsp_merged_beta(std::array{-b, b}) == 0.0);

    SplitMix64 rng(161803);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t half = 1 + rng.next_u64() % 8;
        std::vector<double> ladder(2 * half);
        for (std::size_t j = 0; j < half; ++j) {
            const double b = rng.next_unit();
            ladder[half + j] = b;
            ladder[half - 1 - j] = -b;
        }
        std::sort(ladder.begin(), ladder.end());
        const double merged = bgcsp_merged_beta(ladder);
        CHECK(std::abs(merged) < 1e-12);

        // independent route: the expanded single fraction over both halves
        double pp = 1.0, pm = 1.0, np = 1.0, nm = 1.0;
        for (std::size_t j = 0; j < half; ++j) {
            pp *= 1.0 + ladder[half + j];
            pm *= 1.0 - ladder[half + j];
            np *= 1.0 + ladder[j];
            nm *= 1.0 - ladder[j];
        }
        const double expanded =
            ((pp - pm) * (np + nm) + (pp + pm) * (np - nm)) /
            ((pp + pm) * (np + nm));
        CHECK(std::abs(expanded) < 1e-12);
    }

    CHECK_THROWS_AS(bgcsp_merged_beta(std::array{0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(bgcsp_merged_beta(std::array{-0.2, 0.3, 0.4}),
                    std::invalid_argument);
}

TEST_CASE("msbm spec validation") {
    MsbmSpec bad = single_barrier(0.0, 1.5, 0.0);
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    MsbmSpec unordered;
    unordered.sigma = 1.0;
    unordered.barriers = {{1.0, 0.1}, {0.0, 0.2}};
    CHECK_THROWS_AS(unordered.validate(), ConfigError);
}
