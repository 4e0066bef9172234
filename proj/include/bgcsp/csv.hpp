#pragma once

#include <ostream>
#include <string>

namespace bgcsp {

// 17 significant digits ("%.17g"), enough to round-trip any double.
// All CSV output goes through this so files are reproducible byte for byte.
std::string format_double(double v);

void write_csv_field(std::ostream& out, double v);

}  // namespace bgcsp
