/**
 * This code is part of nosig.
 *
 * (C) Copyright nosig contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 *
 * Any modifications or derivative works of this code must retain this
 * copyright notice, and modified files need to carry a notice indicating
 * that they have been altered from the originals.
 */

#ifndef NOSIG_SCENARIO_HPP
#define NOSIG_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace nosig {

/// Parsed command line. Options given on the command line win over the
/// scenario file; the file wins over defaults.
struct CliOptions {
  std::string command;       // steer | channel-check | signal-test | demo
  std::string scenario_path; // --scenario FILE
  std::string demo_name;     // demo positional argument
  std::optional<uint64_t> seed;
  std::optional<long long> shots;
  std::optional<std::string> out_dir; // --out DIR, default "nosig-out"
};

/// Exit-code contract: 0 expected result, 1 well-formed run with a
/// negative verdict, 2 input error. These throw nosig::Error for input
/// problems; dispatch_command turns that into exit code 2.
int run_steer(const CliOptions &options);
int run_channel_check(const CliOptions &options);
int run_signal_test(const CliOptions &options);
int run_demo(const CliOptions &options);

/// Full dispatcher: routes on options.command, catches every error,
/// prints the diagnostic to stderr and returns 2. Never throws.
int dispatch_command(const CliOptions &options);

} // namespace nosig

#endif
