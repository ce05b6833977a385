#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "chuasync/commands.hpp"

namespace {

struct CommonArgs {
    std::string config;
    std::string out_dir = ".";
    bool json = false;
    bool svg = false;
    chuasync::CliOverrides overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool wants_out) {
    cmd->add_option("--config", args.config, "scenario JSON file")->required();
    if (wants_out) cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_flag("--json", args.json, "emit a machine-readable JSON report");
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&args](std::uint64_t v) { args.overrides.seed = v; },
        "override the sim seed");
    cmd->add_option_function<double>(
        "--dt", [&args](double v) { args.overrides.dt = v; }, "override the sim step size");
    cmd->add_option_function<double>(
        "--t-end", [&args](double v) { args.overrides.t_end = v; },
        "override the sim horizon");
}

int dispatch(const std::string& command, CommonArgs& args) {
    return chuasync::run_with_exit_codes(
        [&]() {
            chuasync::Scenario scenario = chuasync::load_scenario(args.config);
            chuasync::apply_overrides(scenario, args.overrides);
            if (command == "check") return chuasync::cmd_check(scenario, args.json, std::cout);
            if (command == "simulate")
                return chuasync::cmd_simulate(scenario, args.out_dir, args.json, args.svg,
                                              std::cout);
            if (command == "threshold")
                return chuasync::cmd_threshold(scenario, args.json, std::cout);
            if (command == "verify-coupling")
                return chuasync::cmd_verify_coupling(scenario, args.json, std::cout);
            return chuasync::cmd_scan(scenario, args.out_dir, args.json, std::cout);
        },
        std::cerr);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synchronization certificates and simulations for networks of Chua oscillators"};
    app.require_subcommand(1);

    CommonArgs check_args, sim_args, threshold_args, verify_args, scan_args;
    CLI::App* check = app.add_subcommand("check", "build the comparison matrix and test it");
    add_common(check, check_args, false);
    CLI::App* simulate = app.add_subcommand("simulate", "integrate the network and export CSV");
    add_common(simulate, sim_args, true);
    simulate->add_flag("--svg", sim_args.svg, "also write an SVG plot of the error norms");
    CLI::App* threshold = app.add_subcommand("threshold", "coupling-gain thresholds");
    add_common(threshold, threshold_args, false);
    CLI::App* verify =
        app.add_subcommand("verify-coupling", "audit the sector claim of the coupling");
    add_common(verify, verify_args, false);
    CLI::App* scan = app.add_subcommand("scan", "sweep a parameter and export scan.csv");
    add_common(scan, scan_args, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : chuasync::kExitInputError;
    }

    if (check->parsed()) return dispatch("check", check_args);
    if (simulate->parsed()) return dispatch("simulate", sim_args);
    if (threshold->parsed()) return dispatch("threshold", threshold_args);
    if (verify->parsed()) return dispatch("verify-coupling", verify_args);
    return dispatch("scan", scan_args);
}
