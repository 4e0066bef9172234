#include "bgcsp/csv.hpp"

#include <cstdio>

#include "bgcsp/path.hpp"

namespace bgcsp {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv_field(std::ostream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}

void PathRecord::write_csv(std::ostream& out) const {
    if (dimension == 1) {
        out << "t,x\n";
    } else {
        out << "t";
        for (int c = 1; c <= dimension; ++c) out << ",x" << c;
        out << "\n";
    }
    for (std::size_t k = 0; k < times.size(); ++k) {
        write_csv_field(out, times[k]);
        for (int c = 0; c < dimension; ++c) {
            out << ",";
            write_csv_field(out, value_at(k, c));
        }
        out << "\n";
    }
}

}  // namespace bgcsp
