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

#include <cstdint>
#include <string>

#include "CLI11.hpp"
#include "nosig/scenario.hpp"

namespace {

struct RawArgs {
  std::string scenario;
  std::string out;
  uint64_t seed = 0;
  long long shots = 0;
  std::string demo_name;
};

void add_common(CLI::App *cmd, RawArgs &raw, bool scenario_required) {
  auto *s = cmd->add_option("--scenario", raw.scenario,
                            "Scenario JSON file");
  if (scenario_required)
    s->required();
  cmd->add_option("--out", raw.out,
                  "Output directory (default nosig-out, scenario may "
                  "override)");
  cmd->add_option("--seed", raw.seed, "Seed override");
  cmd->add_option("--shots", raw.shots, "Shot-count override");
}

nosig::CliOptions collect(const CLI::App *cmd, const RawArgs &raw,
                          const std::string &command) {
  nosig::CliOptions options;
  options.command = command;
  options.scenario_path = raw.scenario;
  options.demo_name = raw.demo_name;
  if (cmd->count("--out") > 0)
    options.out_dir = raw.out;
  if (cmd->count("--seed") > 0)
    options.seed = raw.seed;
  if (cmd->count("--shots") > 0)
    options.shots = raw.shots;
  return options;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Steering constructions, channel certification and "
               "signaling tests on finite-dimensional quantum states"};
  app.require_subcommand(1);

  RawArgs raw_steer, raw_channel, raw_signal, raw_demo;
  CLI::App *steer =
      app.add_subcommand("steer", "Build and verify a steering protocol");
  add_common(steer, raw_steer, true);
  CLI::App *channel = app.add_subcommand(
      "channel-check", "Certify a linear map: CP, TP, sampled positivity");
  add_common(channel, raw_channel, true);
  CLI::App *signal = app.add_subcommand(
      "signal-test", "Search for a signaling witness under a dynamics map");
  add_common(signal, raw_signal, true);
  CLI::App *demo = app.add_subcommand("demo", "Run a canonical demo");
  demo->add_option("name", raw_demo.demo_name,
                   "cloner-signals | transpose-not-cp | steer-anything");
  add_common(demo, raw_demo, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  if (steer->parsed())
    return nosig::dispatch_command(collect(steer, raw_steer, "steer"));
  if (channel->parsed())
    return nosig::dispatch_command(
        collect(channel, raw_channel, "channel-check"));
  if (signal->parsed())
    return nosig::dispatch_command(collect(signal, raw_signal, "signal-test"));
  return nosig::dispatch_command(collect(demo, raw_demo, "demo"));
}
