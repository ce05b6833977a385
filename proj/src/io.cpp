#include "chuasync/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace chuasync {

std::string format_g17(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, std::size_t stride) {
    out << "t,node,x1,x2,x3\n";
    const std::size_t n = traj.nodes();
    for (std::size_t k = 0; k < traj.samples(); k += stride) {
        const std::string t = format_g17(traj.time(k));
        const std::span<const double> x = traj.state(k);
        for (std::size_t i = 0; i < n; ++i)
            out << t << ',' << i << ',' << format_g17(x[3 * i]) << ','
                << format_g17(x[3 * i + 1]) << ',' << format_g17(x[3 * i + 2]) << '\n';
    }
}

void write_errors_csv(std::ostream& out, const ErrorSeries& series, std::size_t stride) {
    out << "t,node,norm\n";
    for (std::size_t k = 0; k < series.samples(); k += stride) {
        const std::string t = format_g17(series.time(k));
        for (std::size_t j = 0; j < series.series(); ++j)
            out << t << ',' << series.node_order[j] << ',' << format_g17(series.norm(k, j))
                << '\n';
    }
}

void write_scan_csv(std::ostream& out, const std::string& parameter,
                    std::span<const ScanRow> rows) {
    out << parameter << ",spectral_abscissa,hurwitz\n";
    for (const ScanRow& row : rows)
        out << format_g17(row.value) << ',' << format_g17(row.spectral_abscissa) << ','
            << (row.hurwitz ? 1 : 0) << '\n';
}

void write_error_svg(std::ostream& out, const ErrorSeries& series, std::size_t stride) {
    constexpr double width = 840.0, height = 520.0;
    constexpr double left = 70.0, right = 820.0, top = 20.0, bottom = 470.0;
    constexpr double log_floor = -16.0;

    const std::size_t samples = series.samples();
    const double t_max = samples > 1 ? series.time(samples - 1) : 1.0;
    double lo = 0.0, hi = log_floor;
    for (std::size_t k = 0; k < samples; k += stride)
        for (std::size_t j = 0; j < series.series(); ++j) {
            const double v = std::max(series.norm(k, j), 1e-300);
            const double l = std::max(std::log10(v), log_floor);
            lo = std::min(lo, l);
            hi = std::max(hi, l);
        }
    lo = std::floor(lo - 0.5);
    hi = std::ceil(hi + 0.5);

    const auto x_of = [&](double t) { return left + (right - left) * t / t_max; };
    const auto y_of = [&](double l) { return bottom - (bottom - top) * (l - lo) / (hi - lo); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << ' ' << height
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
        << bottom << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
        << bottom << "\" stroke=\"black\"/>\n";
    for (double l = lo; l <= hi; l += std::max(1.0, std::round((hi - lo) / 8.0))) {
        out << "<text x=\"8\" y=\"" << y_of(l) + 4 << "\" font-size=\"12\">1e" << l
            << "</text>\n";
        out << "<line x1=\"" << left - 4 << "\" y1=\"" << y_of(l) << "\" x2=\"" << left
            << "\" y2=\"" << y_of(l) << "\" stroke=\"black\"/>\n";
    }
    out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << height - 8
        << "\" font-size=\"12\" text-anchor=\"middle\">t</text>\n";
    out << "<text x=\"" << (left + right) / 2 << "\" y=\"14\" font-size=\"12\" "
           "text-anchor=\"middle\">error norms (log scale)</text>\n";

    for (std::size_t j = 0; j < series.series(); ++j) {
        const int hue = static_cast<int>((360 * j) / std::max<std::size_t>(series.series(), 1));
        out << "<polyline fill=\"none\" stroke=\"hsl(" << hue
            << ",70%,40%)\" stroke-width=\"1\" points=\"";
        for (std::size_t k = 0; k < samples; k += stride) {
            const double v = std::max(series.norm(k, j), 1e-300);
            const double l = std::max(std::log10(v), log_floor);
            out << x_of(series.time(k)) << ',' << y_of(l) << ' ';
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
}

} // namespace chuasync
