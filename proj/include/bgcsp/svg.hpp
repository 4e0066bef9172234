#pragma once

#include <ostream>
#include <string>

#include "bgcsp/histogram.hpp"

namespace bgcsp {

// Self-contained density plot: a polyline through the bin centers of a
// raw-count histogram, with axes and tick labels. No external plotting
// dependency; output is deterministic for identical input.
void write_density_svg(std::ostream& out, const Histogram& histogram,
                       const std::string& title);

}  // namespace bgcsp
