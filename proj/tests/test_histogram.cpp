#include <doctest.h>

#include <stdexcept>

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "bgcsp/histogram.hpp"
#include "bgcsp/rng.hpp"

using namespace bgcsp;

TEST_CASE("single bin captures everything") {
    const std::array<double, 2> edges{-1.0, 1.0};
    const std::array<double, 3> values{0.0, 0.0, 0.0};
    const Histogram h = make_histogram(values, edges);
    REQUIRE(h.counts.size() == 1);
    CHECK(h.counts[0] == 3);
    CHECK(h.total() == 3);
}

TEST_CASE("interior edges belong to the right bin, the last bin is closed") {
    const std::array<double, 4> edges{0.0, 1.0, 2.0, 3.0};
    const std::array<double, 4> values{1.0, 2.0, 3.0, 0.0};
    const Histogram h = make_histogram(values, edges);
    CHECK(h.counts[0] == 1);  // 0.0
    CHECK(h.counts[1] == 1);  // 1.0 goes right of edge 1
    CHECK(h.counts[2] == 2);  // 2.0 and the closed endpoint 3.0
}

TEST_CASE("under/overflow and non-finite values are tracked") {
    const std::array<double, 3> edges{0.0, 1.0, 2.0};
    const std::array<double, 5> values{-0.5, 2.5, std::nan(""), 0.5,
                                       -INFINITY};
    const Histogram h = make_histogram(values, edges);
    CHECK(h.underflow == 1);
    CHECK(h.overflow == 1);
    CHECK(h.nan_count == 2);
    CHECK(h.total() == 5);
}

TEST_CASE("counts reconcile with the sample size") {
    SplitMix64 rng(202);
    std::vector<double> values(5000);
    for (auto& v : values) v = 30.0 * (rng.next_unit() - 0.5);
    const auto edges = uniform_edges(-10.0, 10.0, 101);
    const Histogram h = make_histogram(values, edges);
    CHECK(h.total() == 5000);
    std::int64_t in_range = 0;
    for (auto c : h.counts) in_range += c;
    CHECK(in_range + h.underflow + h.overflow == 5000);
}

TEST_CASE("csv layout") {
    const std::array<double, 3> edges{0.0, 1.0, 2.0};
    const std::array<double, 2> values{0.5, 1.5};
    const Histogram h = make_histogram(values, edges);
    std::ostringstream out;
    h.write_csv(out);
    CHECK(out.str() ==
          "lo,hi,count\n-inf,0,0\n0,1,1\n1,2,1\n2,inf,0\nnan,nan,0\n");
}

TEST_CASE("edge validation") {
    const std::array<double, 2> bad{1.0, 1.0};
    const std::array<double, 1> values{0.5};
    CHECK_THROWS_AS(make_histogram(values, bad), std::invalid_argument);
    CHECK_THROWS_AS(uniform_edges(1.0, 1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(uniform_edges(0.0, 1.0, 0), std::invalid_argument);
}
