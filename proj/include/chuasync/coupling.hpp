#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

namespace chuasync {

/**
 * Sector-bounded coupling function: odd, locally Lipschitz, with
 * k1 |e| <= |k(e)| <= k2 |e| and k(e) e >= 0 for all e. The sector constants
 * are declared analytically per registry entry (never inferred symbolically);
 * verify_sector audits a claim by sampling, which cannot prove global
 * membership but catches wrong claims.
 */
struct SectorCoupling {
    std::string name;
    std::map<std::string, double> parameters;
    double k1 = 0.0;
    double k2 = 0.0;
    std::function<double(double)> evaluator;

    double operator()(double e) const { return evaluator(e); }
};

/// k(e) = k e, sector (k, k). Throws NonPositiveGain for k <= 0.
SectorCoupling make_linear(double k);

/// k(e) = c e + arctan(e), sector (c, c+1). Throws NonPositiveGain for c <= 0.
SectorCoupling make_linear_plus_arctan(double c);

/// k(e) = k clamp(e, -s, s), sector (0, k).
SectorCoupling make_saturated_linear(double k, double s);

/// Registry lookup by name: "linear" {k}, "linear_plus_arctan" {c},
/// "saturated_linear" {k, s}. Optional overrides replace the declared sector
/// constants (subject to k2 >= k1 >= 0); overridden claims should be audited
/// with verify_sector.
SectorCoupling make_coupling(const std::string& name,
                             const std::map<std::string, double>& parameters,
                             std::optional<double> k1_override = std::nullopt,
                             std::optional<double> k2_override = std::nullopt);

/// Shifted coupling tilde_k(e) = k(e) - k2 e; lies in the second-fourth
/// quadrant pair (tilde_k(e) e <= 0) whenever the sector claim holds.
double tilde_k(const SectorCoupling& c, double e);

struct SectorReport {
    bool verified = false;
    double worst_violation = 0.0;
    std::size_t samples_tested = 0;
    std::optional<double> violating_input;
};

inline constexpr std::uint64_t kDefaultSamplingSeed = 0x5EC7025AULL;

/**
 * Tests the three sector inequalities (sign, oddness, bounds) on a uniform
 * grid over [-range, range] plus fixed-seed pseudorandom points, half each.
 * worst_violation is the maximum signed violation (<= 0 means every sampled
 * inequality holds with margin); verified <=> worst_violation <= tolerance.
 * Deterministic for a given seed regardless of thread count.
 */
SectorReport verify_sector(const SectorCoupling& c, double range, std::size_t samples,
                           double tolerance, std::uint64_t seed = kDefaultSamplingSeed);

/**
 * Samples the key coupling inequality
 *   |tilde_k(ei - ej) + tilde_k(ej)| <= (k2 - k1)(|ei| + |ej|)
 * on fixed-seed pseudorandom pairs in [-range, range]^2 and returns the worst
 * residual normalized by (1 + |ei| + |ej|). Must be <= 0 up to rounding for a
 * genuine sector coupling.
 */
double check_lemma1(const SectorCoupling& c, std::size_t pairs, double range,
                    std::uint64_t seed = kDefaultSamplingSeed);

} // namespace chuasync
