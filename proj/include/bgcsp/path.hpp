#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

namespace bgcsp {

// A simulated path on the uniform grid t_k = k*dt, k = 0..n_steps.
// For vector-valued processes, values and increments are stored row-major
// (one row of `dimension` components per grid point). Increments are the
// realized per-step state changes, so values[k+1] - values[k] equals
// increments[k] exactly, constraint handling included.
struct PathRecord {
    double dt = 0.0;
    int dimension = 1;
    std::vector<double> times;       // n_steps + 1
    std::vector<double> values;      // (n_steps + 1) * dimension
    std::vector<double> increments;  // n_steps * dimension

    std::size_t n_steps() const { return times.empty() ? 0 : times.size() - 1; }

    double value_at(std::size_t step, int coord = 0) const {
        return values[step * static_cast<std::size_t>(dimension) +
                      static_cast<std::size_t>(coord)];
    }

    double terminal(int coord = 0) const { return value_at(n_steps(), coord); }

    std::span<const double> state_at(std::size_t step) const {
        return {values.data() + step * static_cast<std::size_t>(dimension),
                static_cast<std::size_t>(dimension)};
    }

    // CSV with header "t,x" (or "t,x1,...,xn"), one row per grid point,
    // 17 significant digits, LF line endings.
    void write_csv(std::ostream& out) const;
};

}  // namespace bgcsp
