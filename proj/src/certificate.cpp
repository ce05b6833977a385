#include "chuasync/certificate.hpp"

#include <cmath>
#include <exception>
#include <string>

#include "chuasync/errors.hpp"

namespace chuasync {

Matrix build_m(const ChuaParams& p, const Topology& t, std::size_t pivot, double k1, double k2) {
    const std::size_t n = t.size();
    if (n < 2) throw TooFewNodes("build_m: need at least two nodes");
    if (pivot >= n) throw IndexOutOfRange("build_m: pivot out of range");
    if (!(k2 >= k1) || !(k1 >= 0.0))
        throw ValidationError("build_m: sector constants must satisfy k2 >= k1 >= 0");

    const AuxMatrices aux = build_aux_matrices(t, pivot);
    const double mu = mu0(p);
    const double diag_base = -(p.alpha - p.alpha * lipschitz_constant(p));
    const std::size_t d = n - 1;

    Matrix m(2 * d, 2 * d);
    for (std::size_t r = 0; r < d; ++r) {
        const std::size_t node = aux.node_order[r];
        m(r, r) = diag_base - k1 * static_cast<double>(t.degree(node));
        for (std::size_t c = 0; c < d; ++c) {
            if (c != r) m(r, c) = (k2 - k1) * aux.a1(r, c) + k2 * aux.a2(r, c);
            // off-diagonal blocks: alpha I and I
        }
        m(r, d + r) = p.alpha;
        m(d + r, r) = 1.0;
        m(d + r, d + r) = -mu;
    }
    return m;
}

Certificate assess(const Matrix& m, double margin_tolerance, std::size_t pivot) {
    if (!m.square()) throw DimensionMismatch("assess: matrix must be square");
    const Spectrum spectrum = eigenvalues(m);
    if (!spectrum.converged)
        throw EigensolverFailure("assess: eigensolver did not converge within the iteration cap");

    Certificate cert;
    cert.m = m;
    cert.pivot = pivot;
    cert.eigenvalues = spectrum.eigenvalues;
    cert.spectral_abscissa = spectrum.eigenvalues.front().real();
    for (const auto& ev : spectrum.eigenvalues)
        cert.spectral_abscissa = std::max(cert.spectral_abscissa, ev.real());
    cert.hurwitz = cert.spectral_abscissa < -margin_tolerance;
    return cert;
}

double two_node_threshold(const ChuaParams& p) {
    return p.alpha * (lipschitz_constant(p) + 1.0 / mu0(p) - 1.0);
}

bool routh_hurwitz_2x2(const ChuaParams& p, double k) {
    const double mu = mu0(p);
    const double c = p.alpha - p.alpha * lipschitz_constant(p) + k;
    return (mu + c > 0.0) && (c * mu - p.alpha > 0.0);
}

std::optional<Certificate> best_pivot(const ChuaParams& p, const Topology& t, double k1,
                                      double k2, double margin_tolerance) {
    const std::size_t n = t.size();
    if (n < 2) throw TooFewNodes("best_pivot: need at least two nodes");

    std::vector<Certificate> candidates(n);
    std::exception_ptr failure;
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            const std::size_t pivot = static_cast<std::size_t>(i);
            candidates[pivot] = assess(build_m(p, t, pivot, k1, k2), margin_tolerance, pivot);
        } catch (...) {
#pragma omp critical(chuasync_best_pivot_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (candidates[i].spectral_abscissa < candidates[best].spectral_abscissa) best = i;
    return candidates[best];
}

namespace {

bool gain_certifies(const ChuaParams& p, const Topology& t, std::size_t pivot, double k,
                    double margin) {
    return assess(build_m(p, t, pivot, k, k), margin, pivot).hurwitz;
}

} // namespace

std::optional<MinGainResult> min_linear_gain(const ChuaParams& p, const Topology& t,
                                             std::size_t pivot, double k_max, double resolution,
                                             double margin_tolerance) {
    if (!(k_max > 0.0)) throw ValidationError("min_linear_gain: k_max must be positive");
    if (!(resolution > 0.0)) throw ValidationError("min_linear_gain: resolution must be positive");

    // Doubling ladder from resolution up to k_max (inclusive).
    std::vector<double> ladder;
    for (double k = std::min(resolution, k_max); k < k_max; k *= 2.0) ladder.push_back(k);
    ladder.push_back(k_max);

    std::vector<char> verdicts(ladder.size(), 0);
    std::exception_ptr failure;
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(ladder.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            verdicts[static_cast<std::size_t>(i)] =
                gain_certifies(p, t, pivot, ladder[static_cast<std::size_t>(i)], margin_tolerance)
                    ? 1
                    : 0;
        } catch (...) {
#pragma omp critical(chuasync_min_gain_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    MinGainResult result;
    std::size_t first_hurwitz = ladder.size();
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (verdicts[i]) {
            first_hurwitz = std::min(first_hurwitz, i);
        } else if (first_hurwitz < i) {
            result.non_monotone_warning = true; // certified below, failed above
        }
    }
    if (first_hurwitz == ladder.size()) return std::nullopt;

    double lo = first_hurwitz == 0 ? 0.0 : ladder[first_hurwitz - 1];
    double hi = ladder[first_hurwitz];
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        if (gain_certifies(p, t, pivot, mid, margin_tolerance))
            hi = mid;
        else
            lo = mid;
    }
    result.gain = hi;

    // Verify the bracket the bisection claims.
    if (!gain_certifies(p, t, pivot, result.gain, margin_tolerance))
        result.non_monotone_warning = true;
    const double below = result.gain - resolution;
    if (below > 0.0 && gain_certifies(p, t, pivot, below, margin_tolerance))
        result.non_monotone_warning = true;
    const double above = result.gain + resolution;
    if (above <= k_max && !gain_certifies(p, t, pivot, above, margin_tolerance))
        result.non_monotone_warning = true;
    return result;
}

std::vector<double> comparison_rhs(const Matrix& m, std::span<const double> z) {
    if (!m.square()) throw DimensionMismatch("comparison_rhs: matrix must be square");
    if (z.size() != m.rows())
        throw DimensionMismatch("comparison_rhs: state length " + std::to_string(z.size()) +
                                " does not match matrix dimension " + std::to_string(m.rows()));
    std::vector<double> out(z.size());
    matvec_parallel(m, z, out);
    return out;
}

} // namespace chuasync
