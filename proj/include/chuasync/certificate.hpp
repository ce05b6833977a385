#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "chuasync/chua.hpp"
#include "chuasync/matrix.hpp"
#include "chuasync/spectral.hpp"
#include "chuasync/topology.hpp"

namespace chuasync {

/// Spectral abscissa must be strictly below -margin to certify; the default
/// margin absorbs eigensolver rounding so near-boundary matrices do not
/// certify spuriously.
inline constexpr double kDefaultHurwitzMargin = 1e-9;

struct Certificate {
    Matrix m;
    double spectral_abscissa = 0.0;
    bool hurwitz = false;
    std::size_t pivot = 0;
    std::vector<std::complex<double>> eigenvalues; // sorted by (real, imag)
};

/**
 * Comparison matrix of the network error system, block form
 *
 *   M = [ B          alpha I ]
 *       [ I          -mu0 I  ]
 *
 * with B = -(alpha - alpha |a|) I - k1 diag(kappa_i) + (k2-k1) A1 + k2 A2
 * over the non-pivot nodes (ascending original index, pivot removed — the
 * topology module's ordering contract). Dimension 2(N-1).
 */
Matrix build_m(const ChuaParams& p, const Topology& t, std::size_t pivot, double k1, double k2);

/// Eigen-decomposes m and classifies: hurwitz <=> spectral abscissa < -margin.
/// The pivot argument is carried into the certificate for reporting.
Certificate assess(const Matrix& m, double margin_tolerance = kDefaultHurwitzMargin,
                   std::size_t pivot = 0);

/// Closed-form minimal linear gain for two coupled oscillators:
/// k > alpha (|a| + 1/mu0 - 1). Returned unclamped (may be <= 0).
double two_node_threshold(const ChuaParams& p);

/// Routh-Hurwitz conditions for the two-node comparison matrix with linear
/// gain k: mu0 + alpha - alpha|a| + k > 0 and (alpha - alpha|a| + k) mu0 -
/// alpha > 0 (both strict).
bool routh_hurwitz_2x2(const ChuaParams& p, double k);

/**
 * Assesses every pivot choice and returns the certificate with the smallest
 * spectral abscissa (deterministic tie-break: lowest pivot index). M depends
 * on the reference node through the residual coefficients, so a failed pivot
 * does not rule out certification. Candidates are evaluated concurrently.
 */
std::optional<Certificate> best_pivot(const ChuaParams& p, const Topology& t, double k1,
                                      double k2,
                                      double margin_tolerance = kDefaultHurwitzMargin);

struct MinGainResult {
    double gain = 0.0;
    /// Set when the doubling scan or the post-verification observed verdicts
    /// inconsistent with Hurwitz-ness being monotone in k (not proven for
    /// N > 2).
    bool non_monotone_warning = false;
};

/**
 * Smallest k in (0, k_max] (to within resolution) such that the comparison
 * matrix with k1 = k2 = k certifies, found by a doubling scan followed by
 * bisection; nullopt when no scanned k <= k_max certifies. The result is
 * re-verified by direct assessment at gain +- resolution.
 */
std::optional<MinGainResult> min_linear_gain(const ChuaParams& p, const Topology& t,
                                             std::size_t pivot, double k_max, double resolution,
                                             double margin_tolerance = kDefaultHurwitzMargin);

/// Right-hand side of the comparison dynamics z' = M z (sigma/chi stacked).
std::vector<double> comparison_rhs(const Matrix& m, std::span<const double> z);

} // namespace chuasync
