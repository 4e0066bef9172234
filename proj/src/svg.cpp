#include "bgcsp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace bgcsp {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

void write_density_svg(std::ostream& out, const Histogram& histogram,
                       const std::string& title) {
    const double width = 900, height = 560;
    const double ml = 70, mr = 25, mt = 45, mb = 55;
    const double plot_w = width - ml - mr;
    const double plot_h = height - mt - mb;

    const double x_lo = histogram.edges.front();
    const double x_hi = histogram.edges.back();
    std::int64_t peak = 1;
    for (auto c : histogram.counts) peak = std::max(peak, c);

    auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double c) {
        return mt + plot_h - c / static_cast<double>(peak) * plot_h;
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
        << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"28\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">"
        << title << "</text>\n";

    // frame
    out << "<rect x=\"" << fmt(ml) << "\" y=\"" << fmt(mt) << "\" width=\""
        << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // x ticks
    const int n_ticks = 9;
    for (int i = 0; i < n_ticks; ++i) {
        const double x = x_lo + (x_hi - x_lo) * i / (n_ticks - 1);
        const double gx = px(x);
        out << "<line x1=\"" << fmt(gx) << "\" y1=\"" << fmt(mt + plot_h)
            << "\" x2=\"" << fmt(gx) << "\" y2=\"" << fmt(mt + plot_h + 6)
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fmt(gx) << "\" y=\"" << fmt(mt + plot_h + 22)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"12\">"
            << fmt_tick(x) << "</text>\n";
    }
    // y ticks
    for (int i = 0; i <= 4; ++i) {
        const double c = static_cast<double>(peak) * i / 4;
        const double gy = py(c);
        out << "<line x1=\"" << fmt(ml - 6) << "\" y1=\"" << fmt(gy) << "\" x2=\""
            << fmt(ml) << "\" y2=\"" << fmt(gy) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fmt(ml - 10) << "\" y=\"" << fmt(gy + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"12\">"
            << fmt_tick(c) << "</text>\n";
    }
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\">terminal value</text>\n";
    out << "<text x=\"18\" y=\"" << mt + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\" transform=\"rotate(-90 18 "
        << mt + plot_h / 2 << ")\">count</text>\n";

    out << "<polyline fill=\"none\" stroke=\"#c02020\" stroke-width=\"1.5\" "
           "points=\"";
    for (std::size_t i = 0; i < histogram.counts.size(); ++i) {
        const double center = 0.5 * (histogram.edges[i] + histogram.edges[i + 1]);
        out << fmt(px(center)) << ","
            << fmt(py(static_cast<double>(histogram.counts[i])));
        if (i + 1 < histogram.counts.size()) out << " ";
    }
    out << "\"/>\n";
    out << "</svg>\n";
}

}  // namespace bgcsp
