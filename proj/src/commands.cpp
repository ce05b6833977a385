#include "chuasync/commands.hpp"

#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "chuasync/errors.hpp"
#include "chuasync/io.hpp"

namespace chuasync {

using nlohmann::json;

void apply_overrides(Scenario& scenario, const CliOverrides& overrides) {
    if (!overrides.seed && !overrides.dt && !overrides.t_end) return;
    if (!scenario.sim)
        throw ValidationError("overrides --seed/--dt/--t-end need a sim block in the config");
    if (overrides.seed) scenario.sim->seed = *overrides.seed;
    if (overrides.dt) scenario.sim->dt = *overrides.dt;
    if (overrides.t_end) scenario.sim->t_end = *overrides.t_end;
    if (!(scenario.sim->dt > 0.0)) throw ValidationError("--dt must be positive");
    if (!(scenario.sim->t_end >= scenario.sim->dt))
        throw ValidationError("--t-end must be at least dt");
}

namespace {

void warn_asymmetric(const Scenario& scenario, std::ostream& out) {
    if (!scenario.topology.symmetric())
        out << "warning: adjacency is not symmetric (directed interconnection accepted)\n";
}

json certificate_json(const Certificate& cert, const Scenario& scenario) {
    double re_min = cert.eigenvalues.front().real();
    double re_max = re_min;
    for (const auto& ev : cert.eigenvalues) {
        re_min = std::min(re_min, ev.real());
        re_max = std::max(re_max, ev.real());
    }
    return json{{"hurwitz", cert.hurwitz},
                {"spectral_abscissa", cert.spectral_abscissa},
                {"pivot", cert.pivot},
                {"dimension", cert.m.rows()},
                {"eigenvalue_real_min", re_min},
                {"eigenvalue_real_max", re_max},
                {"hurwitz_margin", scenario.tolerances.hurwitz_margin},
                {"k1", scenario.coupling.k1},
                {"k2", scenario.coupling.k2}};
}

void print_certificate(const Certificate& cert, const Scenario& scenario, std::ostream& out) {
    const json j = certificate_json(cert, scenario);
    out << "comparison matrix: dimension " << j["dimension"] << ", pivot " << cert.pivot
        << ", sector (" << scenario.coupling.k1 << ", " << scenario.coupling.k2 << ")\n";
    out << "eigenvalue real parts: [" << format_g17(j["eigenvalue_real_min"].get<double>())
        << ", " << format_g17(j["eigenvalue_real_max"].get<double>()) << "]\n";
    out << "spectral abscissa: " << format_g17(cert.spectral_abscissa) << "\n";
    out << "verdict: " << (cert.hurwitz ? "certified (Hurwitz)" : "not certified") << "\n";
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file '" + path.string() + "'");
    return out;
}

} // namespace

int cmd_check(const Scenario& scenario, bool json_output, std::ostream& out) {
    warn_asymmetric(scenario, out);
    const Matrix m = build_m(scenario.params, scenario.topology, scenario.pivot,
                             scenario.coupling.k1, scenario.coupling.k2);
    const Certificate cert = assess(m, scenario.tolerances.hurwitz_margin, scenario.pivot);
    if (json_output) {
        json report = certificate_json(cert, scenario);
        report["command"] = "check";
        out << report.dump(2) << "\n";
    } else {
        print_certificate(cert, scenario, out);
    }
    return cert.hurwitz ? kExitCertified : kExitUncertified;
}

int cmd_simulate(const Scenario& scenario, const std::string& out_dir, bool json_output,
                 bool svg, std::ostream& out) {
    if (!scenario.sim) throw ValidationError("simulate requires a sim block in the config");
    warn_asymmetric(scenario, out);
    const SimConfig& sim = *scenario.sim;

    const NetworkState initial = scenario.initial_states();
    const Trajectory traj = simulate_network(scenario.params, scenario.topology,
                                             scenario.coupling, initial, sim.dt, sim.t_end);
    const std::size_t n = scenario.topology.size();

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    std::vector<std::string> files;

    {
        auto f = open_output(dir / "trajectory.csv");
        write_trajectory_csv(f, traj, sim.output_stride);
        files.push_back((dir / "trajectory.csv").string());
    }

    json report{{"command", "simulate"}, {"nodes", n}, {"dt", sim.dt},
                {"t_end", sim.t_end},    {"seed", sim.seed}};

    double final_max_norm = 0.0;
    std::optional<double> rate;
    if (n >= 2) {
        const ErrorSeries series = error_series(traj, scenario.pivot);
        {
            auto f = open_output(dir / "errors.csv");
            write_errors_csv(f, series, sim.output_stride);
            files.push_back((dir / "errors.csv").string());
        }
        if (svg) {
            auto f = open_output(dir / "errors.svg");
            write_error_svg(f, series, sim.output_stride);
            files.push_back((dir / "errors.svg").string());
        }
        final_max_norm = series.envelope(series.samples() - 1);
        try {
            rate = fit_decay_rate(series, 0.25 * sim.t_end, 0.75 * sim.t_end);
        } catch (const DegenerateWindow&) {
            // errors at the floating floor (e.g. identical initial states)
        }
        const Matrix m = build_m(scenario.params, scenario.topology, scenario.pivot,
                                 scenario.coupling.k1, scenario.coupling.k2);
        const Certificate cert = assess(m, scenario.tolerances.hurwitz_margin, scenario.pivot);
        report["certificate"] = certificate_json(cert, scenario);
        if (!json_output) print_certificate(cert, scenario, out);
    }

    report["final_max_error_norm"] = final_max_norm;
    report["fitted_decay_rate"] = rate ? json(*rate) : json(nullptr);
    report["files"] = files;

    if (json_output) {
        out << report.dump(2) << "\n";
    } else {
        out << "simulated " << n << " node(s) to t = " << format_g17(sim.t_end) << " at dt = "
            << format_g17(sim.dt) << "\n";
        if (n >= 2) {
            out << "final max error norm: " << format_g17(final_max_norm) << "\n";
            if (rate) out << "fitted envelope decay rate: " << format_g17(*rate) << "\n";
        }
        for (const auto& f : files) out << "wrote " << f << "\n";
    }
    return kExitCertified;
}

int cmd_threshold(const Scenario& scenario, bool json_output, std::ostream& out) {
    const std::size_t n = scenario.topology.size();
    if (n < 2) throw ValidationError("threshold requires at least two nodes");

    json report{{"command", "threshold"}, {"nodes", n}};
    std::optional<double> closed_form;
    if (n == 2) {
        closed_form = two_node_threshold(scenario.params);
        report["threshold_two_node"] = *closed_form;
        report["threshold_two_node_presented"] = std::max(0.0, *closed_form);
    }

    std::optional<MinGainResult> scanned;
    if (scenario.scan && scenario.scan->parameter == "k") {
        scanned = min_linear_gain(scenario.params, scenario.topology, scenario.pivot,
                                  scenario.scan->to, scenario.scan->step,
                                  scenario.tolerances.hurwitz_margin);
        if (scanned) {
            report["min_linear_gain"] = scanned->gain;
            report["non_monotone_warning"] = scanned->non_monotone_warning;
        } else {
            report["min_linear_gain"] = nullptr;
        }
    }

    if (json_output) {
        out << report.dump(2) << "\n";
    } else {
        if (closed_form)
            out << "two-node closed-form threshold: k > "
                << format_g17(std::max(0.0, *closed_form)) << "\n";
        if (scenario.scan && scenario.scan->parameter == "k") {
            if (scanned) {
                out << "scanned minimal linear gain: " << format_g17(scanned->gain)
                    << (scanned->non_monotone_warning ? " (warning: non-monotone verdicts)" : "")
                    << "\n";
            } else {
                out << "no certifying gain found up to k_max = "
                    << format_g17(scenario.scan->to) << "\n";
            }
        }
    }
    const bool scan_requested = scenario.scan && scenario.scan->parameter == "k";
    if (scan_requested && !scanned) return kExitUncertified;
    return kExitCertified;
}

int cmd_verify_coupling(const Scenario& scenario, bool json_output, std::ostream& out) {
    const Tolerances& tol = scenario.tolerances;
    const SectorReport sector = verify_sector(scenario.coupling, tol.sector_range,
                                              tol.sector_samples, tol.sector_tolerance);
    const double lemma1 =
        check_lemma1(scenario.coupling, tol.lemma1_pairs, tol.lemma1_range);
    const bool lemma1_ok = lemma1 <= tol.lemma1_tolerance;

    if (json_output) {
        json report{{"command", "verify-coupling"},
                    {"coupling", scenario.coupling.name},
                    {"k1", scenario.coupling.k1},
                    {"k2", scenario.coupling.k2},
                    {"sector_verified", sector.verified},
                    {"sector_worst_violation", sector.worst_violation},
                    {"sector_samples_tested", sector.samples_tested},
                    {"sector_violating_input",
                     sector.violating_input ? json(*sector.violating_input) : json(nullptr)},
                    {"lemma1_worst_residual", lemma1},
                    {"lemma1_verified", lemma1_ok}};
        out << report.dump(2) << "\n";
    } else {
        out << "coupling '" << scenario.coupling.name << "' with sector ("
            << format_g17(scenario.coupling.k1) << ", " << format_g17(scenario.coupling.k2)
            << ")\n";
        out << "sector check over " << sector.samples_tested
            << " samples: " << (sector.verified ? "verified" : "VIOLATED")
            << ", worst violation " << format_g17(sector.worst_violation) << "\n";
        if (sector.violating_input)
            out << "violating input: " << format_g17(*sector.violating_input) << "\n";
        out << "coupling inequality worst residual (normalized): " << format_g17(lemma1) << " ("
            << (lemma1_ok ? "ok" : "VIOLATED") << ")\n";
    }
    return sector.verified && lemma1_ok ? kExitCertified : kExitUncertified;
}

int cmd_scan(const Scenario& scenario, const std::string& out_dir, bool json_output,
             std::ostream& out) {
    if (!scenario.scan) throw ValidationError("scan requires a scan block in the config");
    const ScanConfig& scan = *scenario.scan;

    std::vector<double> values;
    if (scan.parameter == "k") {
        for (double k = scan.from; k <= scan.to + 1e-12 * std::max(1.0, std::abs(scan.to));
             k += scan.step)
            values.push_back(k);
    } else {
        for (std::size_t pivot = 0; pivot < scenario.topology.size(); ++pivot)
            values.push_back(static_cast<double>(pivot));
    }

    std::vector<ScanRow> rows(values.size());
    std::exception_ptr failure;
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            const double value = values[static_cast<std::size_t>(i)];
            Matrix m(0, 0);
            std::size_t pivot = scenario.pivot;
            if (scan.parameter == "k") {
                m = build_m(scenario.params, scenario.topology, pivot, value, value);
            } else {
                pivot = static_cast<std::size_t>(value);
                m = build_m(scenario.params, scenario.topology, pivot, scenario.coupling.k1,
                            scenario.coupling.k2);
            }
            const Certificate cert = assess(m, scenario.tolerances.hurwitz_margin, pivot);
            rows[static_cast<std::size_t>(i)] = {value, cert.spectral_abscissa, cert.hurwitz};
        } catch (...) {
#pragma omp critical(chuasync_scan_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path path = std::filesystem::path(out_dir) / "scan.csv";
    {
        auto f = open_output(path);
        write_scan_csv(f, scan.parameter, rows);
    }

    std::size_t certified = 0;
    for (const ScanRow& row : rows) certified += row.hurwitz ? 1 : 0;
    if (json_output) {
        json report{{"command", "scan"},
                    {"parameter", scan.parameter},
                    {"samples", rows.size()},
                    {"certified_samples", certified},
                    {"files", {path.string()}}};
        out << report.dump(2) << "\n";
    } else {
        out << "scanned " << rows.size() << " sample(s) over '" << scan.parameter << "'; "
            << certified << " certified\n";
        out << "wrote " << path.string() << "\n";
    }
    return kExitCertified;
}

int run_with_exit_codes(const std::function<int()>& body, std::ostream& err) {
    try {
        return body();
    } catch (const ConfigParseError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const InvalidParams& e) {
        err << "error: " << e.what() << "\n";
    } catch (const IndexOutOfRange& e) {
        err << "error: " << e.what() << "\n";
    } catch (const TooFewNodes& e) {
        err << "error: " << e.what() << "\n";
    } catch (const NonPositiveGain& e) {
        err << "error: " << e.what() << "\n";
    } catch (const DimensionMismatch& e) {
        err << "error: " << e.what() << "\n";
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumericalFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumericalFailure;
    }
    return kExitInputError;
}

} // namespace chuasync
