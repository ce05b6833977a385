#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "chuasync/simulate.hpp"

namespace chuasync {

/// Shortest decimal form that round-trips a double (17 significant digits).
std::string format_g17(double v);

/// Columns t, node, x1, x2, x3; one row per (sample, node), time-major.
/// stride keeps every stride-th sample (sample 0 always included).
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, std::size_t stride = 1);

/// Columns t, node, norm; node is the original index (pivot omitted).
void write_errors_csv(std::ostream& out, const ErrorSeries& series, std::size_t stride = 1);

struct ScanRow {
    double value = 0.0;
    double spectral_abscissa = 0.0;
    bool hurwitz = false;
};

/// Columns <parameter>, spectral_abscissa, hurwitz (0/1).
void write_scan_csv(std::ostream& out, const std::string& parameter,
                    std::span<const ScanRow> rows);

/// Minimal standalone SVG line plot of log10 error norms versus time.
void write_error_svg(std::ostream& out, const ErrorSeries& series, std::size_t stride = 1);

} // namespace chuasync
