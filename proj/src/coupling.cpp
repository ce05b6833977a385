#include "chuasync/coupling.hpp"

#include <algorithm>
#include <cmath>

#include "chuasync/errors.hpp"
#include "chuasync/kernels.hpp"
#include "chuasync/rng.hpp"

namespace chuasync {

SectorCoupling make_linear(double k) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw NonPositiveGain("make_linear: gain must be positive");
    return {"linear", {{"k", k}}, k, k, [k](double e) { return k * e; }};
}

SectorCoupling make_linear_plus_arctan(double c) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw NonPositiveGain("make_linear_plus_arctan: gain must be positive");
    // c|e| <= |c e + arctan e| <= (c+1)|e| globally: arctan is odd, increasing,
    // with 0 <= arctan(e)/e <= 1.
    return {"linear_plus_arctan", {{"c", c}}, c, c + 1.0,
            [c](double e) { return c * e + std::atan(e); }};
}

SectorCoupling make_saturated_linear(double k, double s) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw NonPositiveGain("make_saturated_linear: gain must be positive");
    if (!(s > 0.0) || !std::isfinite(s))
        throw ValidationError("make_saturated_linear: saturation level must be positive");
    // No positive lower sector slope exists (the function is flat beyond s).
    return {"saturated_linear", {{"k", k}, {"s", s}}, 0.0, k,
            [k, s](double e) { return k * std::clamp(e, -s, s); }};
}

namespace {

double require_parameter(const std::map<std::string, double>& parameters, const std::string& key,
                         const std::string& coupling) {
    const auto it = parameters.find(key);
    if (it == parameters.end())
        throw ValidationError("coupling '" + coupling + "' requires parameter '" + key + "'");
    return it->second;
}

} // namespace

SectorCoupling make_coupling(const std::string& name,
                             const std::map<std::string, double>& parameters,
                             std::optional<double> k1_override,
                             std::optional<double> k2_override) {
    SectorCoupling c;
    if (name == "linear") {
        c = make_linear(require_parameter(parameters, "k", name));
    } else if (name == "linear_plus_arctan") {
        c = make_linear_plus_arctan(require_parameter(parameters, "c", name));
    } else if (name == "saturated_linear") {
        c = make_saturated_linear(require_parameter(parameters, "k", name),
                                  require_parameter(parameters, "s", name));
    } else {
        throw ValidationError("unknown coupling '" + name +
                              "' (registered: linear, linear_plus_arctan, saturated_linear)");
    }
    if (k1_override) c.k1 = *k1_override;
    if (k2_override) c.k2 = *k2_override;
    if (!(c.k2 >= c.k1) || !(c.k1 >= 0.0))
        throw ValidationError("coupling sector constants must satisfy k2 >= k1 >= 0");
    return c;
}

double tilde_k(const SectorCoupling& c, double e) {
    return c.evaluator(e) - c.k2 * e;
}

namespace {

/// Sample point for index i: first `grid` indices form a uniform grid over
/// [-range, range], the rest are pseudorandom in the same interval.
double sector_sample(std::size_t i, std::size_t grid, double range, std::uint64_t seed) {
    if (i < grid) {
        const double denom = grid > 1 ? static_cast<double>(grid - 1) : 1.0;
        return -range + 2.0 * range * static_cast<double>(i) / denom;
    }
    return range * draw_symmetric(seed, i - grid);
}

double sector_violation(const SectorCoupling& c, double e) {
    const double ke = c.evaluator(e);
    const double kme = c.evaluator(-e);
    const double abs_e = std::abs(e);
    const double abs_ke = std::abs(ke);
    const double sign_violation = -(ke * e);
    const double odd_violation = std::abs(ke + kme);
    const double lower_violation = c.k1 * abs_e - abs_ke;
    const double upper_violation = abs_ke - c.k2 * abs_e;
    return std::max({sign_violation, odd_violation, lower_violation, upper_violation});
}

} // namespace

SectorReport verify_sector(const SectorCoupling& c, double range, std::size_t samples,
                           double tolerance, std::uint64_t seed) {
    if (samples < 2) throw ValidationError("verify_sector: need at least 2 samples");
    if (!(range > 0.0)) throw ValidationError("verify_sector: range must be positive");

    const std::size_t grid = samples - samples / 2;
    const auto violation_at = [&](std::size_t i) {
        return sector_violation(c, sector_sample(i, grid, range, seed));
    };

    SectorReport report;
    report.samples_tested = samples;
    report.worst_violation = kernels::max_scan_parallel(samples, violation_at);
    report.verified = report.worst_violation <= tolerance;
    if (!report.verified) {
        const std::size_t idx =
            kernels::find_first_parallel(samples, report.worst_violation, violation_at);
        if (idx != kernels::kScanNotFound)
            report.violating_input = sector_sample(idx, grid, range, seed);
    }
    return report;
}

double check_lemma1(const SectorCoupling& c, std::size_t pairs, double range,
                    std::uint64_t seed) {
    if (pairs < 1) throw ValidationError("check_lemma1: need at least 1 pair");
    if (!(range > 0.0)) throw ValidationError("check_lemma1: range must be positive");

    const double slack = c.k2 - c.k1;
    return kernels::max_scan_parallel(pairs, [&](std::size_t i) {
        const double ei = range * draw_symmetric(seed, 2 * i);
        const double ej = range * draw_symmetric(seed, 2 * i + 1);
        const double lhs = std::abs(tilde_k(c, ei - ej) + tilde_k(c, ej));
        const double rhs = slack * (std::abs(ei) + std::abs(ej));
        return (lhs - rhs) / (1.0 + std::abs(ei) + std::abs(ej));
    });
}

} // namespace chuasync
