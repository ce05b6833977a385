#include "chuasync/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "chuasync/errors.hpp"

namespace chuasync {

using nlohmann::json;

namespace {

const json& require_key(const json& j, const std::string& key, const std::string& where) {
    const auto it = j.find(key);
    if (it == j.end())
        throw ValidationError("config: missing required key '" + key + "' in " + where);
    return *it;
}

double require_number(const json& j, const std::string& key, const std::string& where) {
    const json& v = require_key(j, key, where);
    if (!v.is_number()) throw ValidationError("config: '" + key + "' in " + where + " must be a number");
    return v.get<double>();
}

ChuaParams parse_params(const json& j) {
    return ChuaParams(require_number(j, "alpha", "params"), require_number(j, "beta", "params"),
                      require_number(j, "gamma", "params"), require_number(j, "a", "params"),
                      require_number(j, "b", "params"));
}

Topology parse_topology(const json& j) {
    const auto n = require_key(j, "n", "topology").get<std::size_t>();
    const bool has_edges = j.contains("edges");
    const bool has_matrix = j.contains("matrix");
    if (has_edges == has_matrix)
        throw ValidationError("config: topology needs exactly one of 'edges' or 'matrix'");
    if (has_matrix) {
        const auto entries = j.at("matrix").get<std::vector<int>>();
        return Topology::from_matrix(n, entries);
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const json& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw ValidationError("config: each edge must be a pair [i, j]");
        edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    const bool directed = j.value("directed", false);
    return Topology::from_edges(n, edges, directed);
}

CouplingSpec parse_coupling_spec(const json& j) {
    CouplingSpec spec;
    spec.name = require_key(j, "name", "coupling").get<std::string>();
    if (j.contains("parameters")) {
        for (const auto& [key, value] : j.at("parameters").items()) {
            if (!value.is_number())
                throw ValidationError("config: coupling parameter '" + key + "' must be a number");
            spec.parameters[key] = value.get<double>();
        }
    }
    if (j.contains("k1")) spec.k1_override = j.at("k1").get<double>();
    if (j.contains("k2")) spec.k2_override = j.at("k2").get<double>();
    return spec;
}

SimConfig parse_sim(const json& j, std::size_t n) {
    SimConfig sim;
    sim.dt = j.value("dt", sim.dt);
    sim.t_end = j.value("t_end", sim.t_end);
    sim.seed = j.value("seed", sim.seed);
    sim.ic_scale = j.value("ic_scale", sim.ic_scale);
    sim.output_stride = j.value("output_stride", sim.output_stride);
    if (!(sim.dt > 0.0)) throw ValidationError("config: sim.dt must be positive");
    if (!(sim.t_end >= sim.dt)) throw ValidationError("config: sim.t_end must be at least dt");
    if (sim.output_stride == 0) throw ValidationError("config: sim.output_stride must be >= 1");
    if (j.contains("initial")) {
        NetworkState states;
        for (const json& row : j.at("initial")) {
            if (!row.is_array() || row.size() != 3)
                throw ValidationError("config: each initial state must be [x1, x2, x3]");
            states.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
        }
        if (states.size() != n)
            throw ValidationError("config: sim.initial must list one state per node");
        sim.initial = std::move(states);
    }
    return sim;
}

Tolerances parse_tolerances(const json& j) {
    Tolerances tol;
    tol.hurwitz_margin = j.value("hurwitz_margin", tol.hurwitz_margin);
    tol.sector_range = j.value("sector_range", tol.sector_range);
    tol.sector_samples = j.value("sector_samples", tol.sector_samples);
    tol.sector_tolerance = j.value("sector_tolerance", tol.sector_tolerance);
    tol.lemma1_pairs = j.value("lemma1_pairs", tol.lemma1_pairs);
    tol.lemma1_range = j.value("lemma1_range", tol.lemma1_range);
    tol.lemma1_tolerance = j.value("lemma1_tolerance", tol.lemma1_tolerance);
    return tol;
}

ScanConfig parse_scan(const json& j) {
    ScanConfig scan;
    scan.parameter = require_key(j, "parameter", "scan").get<std::string>();
    if (scan.parameter != "k" && scan.parameter != "pivot")
        throw ValidationError("config: scan.parameter must be 'k' or 'pivot'");
    if (scan.parameter == "k") {
        scan.from = require_number(j, "from", "scan");
        scan.to = require_number(j, "to", "scan");
        scan.step = require_number(j, "step", "scan");
        if (!(scan.step > 0.0)) throw ValidationError("config: scan.step must be positive");
        if (scan.to < scan.from) throw ValidationError("config: scan.to must be >= scan.from");
    }
    return scan;
}

} // namespace

NetworkState Scenario::initial_states() const {
    if (!sim) throw ValidationError("scenario has no sim block");
    if (sim->initial) return *sim->initial;
    return seeded_initial_states(topology.size(), sim->seed, sim->ic_scale);
}

Scenario parse_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigParseError(std::string("config: invalid JSON: ") + e.what());
    }

    try {
        ChuaParams params = parse_params(require_key(doc, "params", "document"));
        Topology topology = parse_topology(require_key(doc, "topology", "document"));
        CouplingSpec spec = parse_coupling_spec(require_key(doc, "coupling", "document"));
        SectorCoupling coupling =
            make_coupling(spec.name, spec.parameters, spec.k1_override, spec.k2_override);

        Scenario scenario(params, std::move(topology), std::move(spec), std::move(coupling));
        scenario.pivot = doc.value("pivot", std::size_t{0});
        if (scenario.pivot >= scenario.topology.size())
            throw ValidationError("config: pivot out of range");
        if (doc.contains("sim"))
            scenario.sim = parse_sim(doc.at("sim"), scenario.topology.size());
        if (doc.contains("tolerances")) scenario.tolerances = parse_tolerances(doc.at("tolerances"));
        if (doc.contains("scan")) scenario.scan = parse_scan(doc.at("scan"));
        if (scenario.scan && scenario.scan->parameter == "k" &&
            scenario.coupling_spec.name != "linear")
            throw ValidationError("config: scan over 'k' requires the linear coupling");
        return scenario;
    } catch (const json::exception& e) {
        throw ConfigParseError(std::string("config: schema error: ") + e.what());
    }
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError("config: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

} // namespace chuasync
