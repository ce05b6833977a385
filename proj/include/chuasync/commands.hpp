#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include "chuasync/scenario.hpp"

namespace chuasync {

// Stable CLI exit contract.
inline constexpr int kExitCertified = 0;
inline constexpr int kExitUncertified = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNumericalFailure = 3;

struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<double> dt;
    std::optional<double> t_end;
};

/// Applies --seed/--dt/--t-end to the scenario's sim block (creating one if
/// an override is given without a sim block is an input error).
void apply_overrides(Scenario& scenario, const CliOverrides& overrides);

int cmd_check(const Scenario& scenario, bool json_output, std::ostream& out);
int cmd_simulate(const Scenario& scenario, const std::string& out_dir, bool json_output,
                 bool svg, std::ostream& out);
int cmd_threshold(const Scenario& scenario, bool json_output, std::ostream& out);
int cmd_verify_coupling(const Scenario& scenario, bool json_output, std::ostream& out);
int cmd_scan(const Scenario& scenario, const std::string& out_dir, bool json_output,
             std::ostream& out);

/// Runs body() and maps library exceptions onto the exit contract: config /
/// validation errors -> 2, numerical failures -> 3. Diagnostics go to err.
int run_with_exit_codes(const std::function<int()>& body, std::ostream& err);

} // namespace chuasync
