#pragma once

#include <cstddef>
#include <limits>
#include <span>

namespace chuasync::kernels {

// Data-parallel building blocks. Each kernel has a serial reference variant
// and an OpenMP variant that must produce bitwise-identical results: every
// output element is computed by exactly one thread with a fixed evaluation
// order, and reductions are max/min (exact in floating point). The serial
// variants are kept for the equivalence tests and the benchmark.

/// Max of f(i) over i in [0, n). Serial reference.
template <class F>
double max_scan_serial(std::size_t n, F&& f) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double v = f(i);
        if (v > worst) worst = v;
    }
    return worst;
}

/// Max of f(i) over i in [0, n), OpenMP max reduction.
template <class F>
double max_scan_parallel(std::size_t n, F&& f) {
    double worst = -std::numeric_limits<double>::infinity();
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) reduction(max : worst) if (count >= 1024)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const double v = f(static_cast<std::size_t>(i));
        if (v > worst) worst = v;
    }
    return worst;
}

inline constexpr std::size_t kScanNotFound = static_cast<std::size_t>(-1);

/// Smallest i in [0, n) with f(i) == value (exact comparison of a recomputed
/// identical expression), or kScanNotFound. Serial reference.
template <class F>
std::size_t find_first_serial(std::size_t n, double value, F&& f) {
    for (std::size_t i = 0; i < n; ++i)
        if (f(i) == value) return i;
    return kScanNotFound;
}

/// Parallel variant: min-index reduction over matches.
template <class F>
std::size_t find_first_parallel(std::size_t n, double value, F&& f) {
    std::ptrdiff_t best = static_cast<std::ptrdiff_t>(n);
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) reduction(min : best) if (count >= 1024)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        if (f(static_cast<std::size_t>(i)) == value && i < best) best = i;
    }
    return best == count ? kScanNotFound : static_cast<std::size_t>(best);
}

/// Fill out[i] = f(i) for i in [0, n). Serial reference.
template <class F>
void map_scan_serial(std::size_t n, std::span<double> out, F&& f) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
}

/// Parallel fill; one writer per element.
template <class F>
void map_scan_parallel(std::size_t n, std::span<double> out, F&& f) {
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (count >= 16)
    for (std::ptrdiff_t i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
}

} // namespace chuasync::kernels
