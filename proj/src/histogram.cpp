#include "bgcsp/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bgcsp/csv.hpp"

namespace bgcsp {

std::int64_t Histogram::total() const {
    std::int64_t t = underflow + overflow + nan_count;
    for (auto c : counts) t += c;
    return t;
}

void Histogram::write_csv(std::ostream& out) const {
    out << "lo,hi,count\n";
    out << "-inf,";
    write_csv_field(out, edges.front());
    out << "," << underflow << "\n";
    for (std::size_t i = 0; i < counts.size(); ++i) {
        write_csv_field(out, edges[i]);
        out << ",";
        write_csv_field(out, edges[i + 1]);
        out << "," << counts[i] << "\n";
    }
    write_csv_field(out, edges.back());
    out << ",inf," << overflow << "\n";
    out << "nan,nan," << nan_count << "\n";
}

std::vector<double> uniform_edges(double lo, double hi, int bins) {
    if (bins < 1 || !(lo < hi))
        throw std::invalid_argument("uniform_edges: needs bins >= 1 and lo < hi");
    std::vector<double> e(static_cast<std::size_t>(bins) + 1);
    for (int i = 0; i <= bins; ++i)
        e[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / bins;
    e.front() = lo;
    e.back() = hi;
    return e;
}

Histogram make_histogram(std::span<const double> values,
                         std::span<const double> edges) {
    if (edges.size() < 2)
        throw std::invalid_argument("make_histogram: needs at least 2 edges");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (!(edges[i] < edges[i + 1]))
            throw std::invalid_argument("make_histogram: edges must be strictly increasing");

    Histogram h;
    h.edges.assign(edges.begin(), edges.end());
    h.counts.assign(edges.size() - 1, 0);
    for (double v : values) {
        if (!std::isfinite(v)) {
            ++h.nan_count;
            continue;
        }
        if (v < edges.front()) {
            ++h.underflow;
            continue;
        }
        if (v > edges.back()) {
            ++h.overflow;
            continue;
        }
        if (v == edges.back()) {  // last bin is closed
            ++h.counts.back();
            continue;
        }
        const auto it = std::upper_bound(h.edges.begin(), h.edges.end(), v);
        const auto idx = static_cast<std::size_t>(it - h.edges.begin()) - 1;
        ++h.counts[idx];
    }
    return h;
}

}  // namespace bgcsp
