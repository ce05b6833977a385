#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "chuasync/certificate.hpp"
#include "chuasync/chua.hpp"
#include "chuasync/coupling.hpp"
#include "chuasync/simulate.hpp"
#include "chuasync/topology.hpp"

namespace chuasync {

struct SimConfig {
    double dt = 1e-3;
    double t_end = 20.0;
    std::uint64_t seed = 1;
    /// Seeded initial states are uniform on [-ic_scale, ic_scale]^3 per node.
    double ic_scale = 1.0;
    /// Explicit initial states override the seeded draw when present.
    std::optional<NetworkState> initial;
    /// Every stride-th sample goes to the CSV outputs.
    std::size_t output_stride = 1;
};

struct Tolerances {
    double hurwitz_margin = kDefaultHurwitzMargin;
    double sector_range = 1e3;
    std::size_t sector_samples = 100000;
    double sector_tolerance = 1e-12;
    std::size_t lemma1_pairs = 100000;
    double lemma1_range = 1e3;
    double lemma1_tolerance = 1e-9;
};

struct ScanConfig {
    std::string parameter; // "k" (linear coupling gain) or "pivot"
    double from = 0.0;
    double to = 0.0;
    double step = 0.0;
};

struct CouplingSpec {
    std::string name;
    std::map<std::string, double> parameters;
    std::optional<double> k1_override;
    std::optional<double> k2_override;
};

/**
 * A fully validated run description: oscillator parameters, interconnection
 * graph, resolved coupling, reference node, and the optional simulation /
 * scan / tolerance sections. Loaded from a single JSON document.
 */
struct Scenario {
    ChuaParams params;
    Topology topology;
    CouplingSpec coupling_spec;
    SectorCoupling coupling;
    std::size_t pivot = 0;
    std::optional<SimConfig> sim;
    Tolerances tolerances;
    std::optional<ScanConfig> scan;

    Scenario(ChuaParams p, Topology t, CouplingSpec spec, SectorCoupling c)
        : params(p), topology(std::move(t)), coupling_spec(std::move(spec)),
          coupling(std::move(c)) {}

    /// Initial network states per the sim block (explicit list or seeded
    /// draw). Requires a sim block.
    NetworkState initial_states() const;
};

/// Parses and validates a scenario from JSON text. Malformed JSON raises
/// ConfigParseError; schema/domain violations raise ValidationError (or the
/// specific domain error).
Scenario parse_scenario(const std::string& json_text);

/// Reads the file and parses it.
Scenario load_scenario(const std::string& path);

} // namespace chuasync
