#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

namespace bgcsp {

// Raw-count histogram, no smoothing. Bins are half-open [e_i, e_{i+1}) with
// the last bin closed; values on an interior edge land in the bin to its
// right. Out-of-range and non-finite values are tracked separately so
// counts always reconcile with the input size.
struct Histogram {
    std::vector<double> edges;          // bins + 1, strictly increasing
    std::vector<std::int64_t> counts;   // bins
    std::int64_t underflow = 0;
    std::int64_t overflow = 0;
    std::int64_t nan_count = 0;

    std::int64_t total() const;

    // CSV rows `lo,hi,count`; underflow/overflow rows use -inf/inf edges and
    // a trailing row carries the non-finite count.
    void write_csv(std::ostream& out) const;
};

std::vector<double> uniform_edges(double lo, double hi, int bins);

Histogram make_histogram(std::span<const double> values,
                         std::span<const double> edges);

}  // namespace bgcsp
