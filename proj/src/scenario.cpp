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

#include "nosig/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "nosig/errors.hpp"
#include "nosig/json_io.hpp"
#include "nosig/qubit.hpp"
#include "nosig/random.hpp"
#include "nosig/signaling.hpp"
#include "nosig/state_ops.hpp"

namespace nosig {

namespace {

namespace fs = std::filesystem;
using io::json;

constexpr uint64_t kClonerDemoSeed = 1001;
constexpr uint64_t kTransposeDemoSeed = 1002;
constexpr uint64_t kSteerDemoSeed = 1003;

json load_scenario(const std::string &path, const char *expected_command,
                   const std::vector<std::string> &required,
                   const std::vector<std::string> &optional) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("scenario: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  json scenario = io::parse_json(buf.str(), "scenario");
  std::vector<std::string> req{"formatVersion", "command"};
  req.insert(req.end(), required.begin(), required.end());
  std::vector<std::string> opt{"seed", "shots", "out"};
  opt.insert(opt.end(), optional.begin(), optional.end());
  io::require_keys(scenario, "scenario", req, opt);
  if (io::get_int(scenario["formatVersion"], "formatVersion") != 1)
    throw ParseError("scenario: unsupported formatVersion");
  if (io::get_string(scenario["command"], "command") != expected_command)
    throw ParseError(std::string("scenario: command does not match '") +
                     expected_command + "'");
  return scenario;
}

fs::path resolve_out_dir(const CliOptions &options, const json &scenario) {
  if (options.out_dir.has_value())
    return fs::path(*options.out_dir);
  if (scenario.is_object() && scenario.contains("out"))
    return fs::path(io::get_string(scenario["out"], "out"));
  return fs::path("nosig-out");
}

uint64_t resolve_seed(const CliOptions &options, const json &scenario,
                      uint64_t fallback) {
  if (options.seed.has_value())
    return *options.seed;
  if (scenario.is_object() && scenario.contains("seed"))
    return static_cast<uint64_t>(io::get_int(scenario["seed"], "seed"));
  return fallback;
}

long long resolve_shots(const CliOptions &options, const json &scenario,
                        long long fallback) {
  long long shots = fallback;
  if (scenario.is_object() && scenario.contains("shots"))
    shots = io::get_int(scenario["shots"], "shots");
  if (options.shots.has_value())
    shots = *options.shots;
  if (shots < 0)
    throw ParseError("scenario: shots must be >= 0");
  return shots;
}

void write_file(const fs::path &dir, const std::string &name,
                const std::string &content) {
  fs::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error("cannot write '" + (dir / name).string() + "'");
  out << content;
}

std::string format_optional(const std::optional<double> &v) {
  if (!v.has_value())
    return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", *v);
  return buf;
}

std::string empirical_csv(const EmpiricalRecord &record) {
  std::ostringstream out;
  out << "seed,shots,successes,rate,pValue\n";
  out << record.seed << "," << record.shots << "," << record.successes << ","
      << format_optional(record.rate) << ","
      << format_optional(record.p_value) << "\n";
  return out.str();
}

json with_version(json body) {
  body["formatVersion"] = 1;
  return body;
}

BipartiteState rotate_b(const BipartiteState &shared, const Matrix &u) {
  const int da = shared.dim_a();
  const int db = shared.dim_b();
  Vector amp(shared.amplitudes().size());
  for (int a = 0; a < da; ++a)
    amp.segment(a * db, db) = u * shared.amplitudes().segment(a * db, db);
  return BipartiteState(da, db, amp);
}

} // namespace

int run_steer(const CliOptions &options) {
  const json scenario =
      load_scenario(options.scenario_path, "steer", {"shared", "target"}, {});
  const BipartiteState shared = io::bipartite_from_json(scenario["shared"]);
  const Ensemble target = io::ensemble_from_json(scenario["target"]);
  const fs::path out_dir = resolve_out_dir(options, scenario);

  const SteeringProtocol protocol = build_steering(target, shared);
  const SteeringReport report = verify_steering(protocol, shared);

  write_file(out_dir, "protocol.json",
             io::dump_json(with_version(io::to_json(protocol))));
  write_file(out_dir, "steer_report.json",
             io::dump_json(with_version(io::to_json(report))));
  return report.pass() ? 0 : 1;
}

int run_channel_check(const CliOptions &options) {
  const json scenario = load_scenario(options.scenario_path, "channel-check",
                                      {"channel"}, {"samples"});
  const LinearMapSpec map = io::channel_from_json(scenario["channel"]);
  const fs::path out_dir = resolve_out_dir(options, scenario);
  const uint64_t seed = resolve_seed(options, scenario, 1);
  long long samples = 1000;
  if (scenario.contains("samples"))
    samples = io::get_int(scenario["samples"], "samples");
  if (samples < 1)
    throw ParseError("scenario: samples must be >= 1");

  const ChoiMatrix choi = map.to_choi();
  const CpResult cp = is_completely_positive(choi);
  const TpResult tp = is_trace_preserving(choi);
  const SampledPositivity sampled =
      is_positive_sampled(map, static_cast<int>(samples), seed);

  json report{{"channel", io::to_json(map)},
              {"cp", cp.completely_positive},
              {"minChoiEigenvalue", cp.min_eigenvalue},
              {"tp", tp.trace_preserving},
              {"tpDeviation", tp.max_deviation},
              {"positiveSampled", sampled.positive},
              {"worstSampledEigenvalue", sampled.worst},
              {"samples", sampled.samples},
              {"seed", seed}};
  report["krausRank"] =
      cp.completely_positive
          ? json(kraus_from_choi(choi).operators().size())
          : json(nullptr);
  write_file(out_dir, "channel_report.json",
             io::dump_json(with_version(std::move(report))));
  return (cp.completely_positive && tp.trace_preserving) ? 0 : 1;
}

int run_signal_test(const CliOptions &options) {
  const json scenario = load_scenario(options.scenario_path, "signal-test",
                                      {"dynamics", "rho"}, {"pairs", "m"});
  const DynamicsMap g = io::dynamics_from_json(scenario["dynamics"]);
  const DensityMatrix rho = io::density_from_json(scenario["rho"]);
  const fs::path out_dir = resolve_out_dir(options, scenario);
  const uint64_t seed = resolve_seed(options, scenario, 1);
  const long long shots = resolve_shots(options, scenario, 0);
  long long pairs = 50;
  if (scenario.contains("pairs"))
    pairs = io::get_int(scenario["pairs"], "pairs");
  long long m = rho.dim();
  if (scenario.contains("m"))
    m = io::get_int(scenario["m"], "m");
  if (pairs < 1 || m < 1)
    throw ParseError("scenario: pairs and m must be >= 1");

  SignalingReport report =
      signaling_test(g, rho, static_cast<int>(pairs), static_cast<int>(m),
                     sub_seed(seed, 0));
  if (shots > 0) {
    const BipartiteState shared = purify(rho);
    const SteeringProtocol proto_a = build_steering(report.ensemble_a, shared);
    const SteeringProtocol proto_b = build_steering(report.ensemble_b, shared);
    report.empirical =
        simulate_experiment(g, shared, proto_a, proto_b, shots,
                            sub_seed(seed, 1), ExecPolicy::Parallel);
    write_file(out_dir, "empirical.csv", empirical_csv(*report.empirical));
  }
  write_file(out_dir, "signal_report.json",
             io::dump_json(with_version(io::to_json(report))));
  return report.verdict == Verdict::NoSignalingConsistent ? 0 : 1;
}

namespace {

int demo_cloner_signals(const CliOptions &options, const json &scenario) {
  const fs::path out_dir = resolve_out_dir(options, scenario);
  const uint64_t seed = resolve_seed(options, scenario, kClonerDemoSeed);
  const long long shots = resolve_shots(options, scenario, 100000);

  // The cloner is state-valued on every pure input, yet the evolved
  // averages of two same-density ensembles differ, so Bob's choice of
  // decomposition leaks to Alice.
  const DynamicsMap g = DynamicsMap::perfect_cloner(2);
  const Ensemble z = qubit::z_ensemble();
  const Ensemble x = qubit::x_ensemble();
  const double residual = linearity_residual(g, z, x);

  const EvolvedEnsemble ev_z = evolve_ensemble(g, z);
  const EvolvedEnsemble ev_x = evolve_ensemble(g, x);
  const HelstromResult disc = helstrom(ev_z.average, ev_x.average);

  SignalingReport report{ensemble_density(z),
                         z,
                         x,
                         ev_z.average,
                         ev_x.average,
                         residual,
                         disc.success_probability,
                         disc,
                         residual > tol::kSignalThreshold
                             ? Verdict::SignalingDetected
                             : Verdict::NoSignalingConsistent,
                         std::nullopt};
  if (shots > 0) {
    const BipartiteState shared = qubit::bell_phi_plus();
    const SteeringProtocol proto_z = build_steering(z, shared);
    const SteeringProtocol proto_x = build_steering(x, shared);
    report.empirical =
        simulate_experiment(g, shared, proto_z, proto_x, shots,
                            sub_seed(seed, 1), ExecPolicy::Parallel);
    write_file(out_dir, "empirical.csv", empirical_csv(*report.empirical));
  }

  json body = io::to_json(report);
  body["demo"] = "cloner-signals";
  body["seed"] = seed;
  write_file(out_dir, "demo_cloner_signals_report.json",
             io::dump_json(with_version(std::move(body))));

  const bool expected = report.verdict == Verdict::SignalingDetected &&
                        std::abs(residual - 0.5) <= 1e-9;
  return expected ? 0 : 1;
}

int demo_transpose_not_cp(const CliOptions &options, const json &scenario) {
  const fs::path out_dir = resolve_out_dir(options, scenario);
  const uint64_t seed = resolve_seed(options, scenario, kTransposeDemoSeed);

  // Transposition preserves positivity on its own system but turns the
  // Bell state into a matrix with a negative eigenvalue once a bystander
  // qubit is carried along.
  const LinearMapSpec map = LinearMapSpec::transpose(2);
  const ChoiMatrix choi = map.to_choi();
  const CpResult cp = is_completely_positive(choi);
  const TpResult tp = is_trace_preserving(choi);
  const SampledPositivity sampled = is_positive_sampled(map, 1000, seed);
  const ExtendedOutput extended =
      extend_and_apply(map, qubit::bell_phi_plus().joint_density(), 2, 2);

  json body{{"demo", "transpose-not-cp"},
            {"seed", seed},
            {"channel", io::to_json(map)},
            {"cp", cp.completely_positive},
            {"minChoiEigenvalue", cp.min_eigenvalue},
            {"tp", tp.trace_preserving},
            {"tpDeviation", tp.max_deviation},
            {"positiveSampled", sampled.positive},
            {"worstSampledEigenvalue", sampled.worst},
            {"samples", sampled.samples},
            {"bellExtension",
             json{{"matrix", io::to_json(extended.matrix)},
                  {"minEigenvalue", extended.min_eigenvalue}}}};
  write_file(out_dir, "demo_transpose_not_cp_report.json",
             io::dump_json(with_version(std::move(body))));

  const bool expected = !cp.completely_positive && tp.trace_preserving &&
                        sampled.positive &&
                        std::abs(cp.min_eigenvalue + 1.0) <= 1e-9 &&
                        std::abs(extended.min_eigenvalue + 0.5) <= 1e-9;
  return expected ? 0 : 1;
}

int demo_steer_anything(const CliOptions &options, const json &scenario) {
  const fs::path out_dir = resolve_out_dir(options, scenario);
  const uint64_t seed = resolve_seed(options, scenario, kSteerDemoSeed);

  // Twenty random mixed states, random purifications, random target
  // decompositions: every one is steerable within tolerance.
  json cases = json::array();
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const uint64_t child = sub_seed(seed, static_cast<uint64_t>(i));
    const int dim = 2 + (i % 4);
    const int rank = 2 + (i % (dim - 1));
    const int m = rank + (i % 3);
    const DensityMatrix rho = random_density(dim, rank, sub_seed(child, 0));
    const BipartiteState canonical = purify(rho);
    const BipartiteState shared = rotate_b(
        canonical, random_unitary(canonical.dim_b(), sub_seed(child, 1)));
    const Ensemble target = random_decomposition(rho, m, sub_seed(child, 2));
    const SteeringProtocol protocol = build_steering(target, shared);
    const SteeringReport report = verify_steering(protocol, shared);
    worst = std::max(worst, report.max_deviation());
    cases.push_back(json{{"dim", dim},
                         {"rank", rank},
                         {"m", m},
                         {"maxDeviation", report.max_deviation()},
                         {"pass", report.pass()}});
  }

  json body{{"demo", "steer-anything"},
            {"seed", seed},
            {"cases", std::move(cases)},
            {"worstDeviation", worst},
            {"pass", worst <= tol::kSteeringPass}};
  write_file(out_dir, "demo_steer_anything_report.json",
             io::dump_json(with_version(std::move(body))));
  return worst <= tol::kSteeringPass ? 0 : 1;
}

} // namespace

int run_demo(const CliOptions &options) {
  std::string name = options.demo_name;
  json scenario; // null unless a scenario file was given
  if (!options.scenario_path.empty()) {
    if (!name.empty())
      throw ParseError("demo: give either a name or a scenario file");
    scenario = load_scenario(options.scenario_path, "demo", {"name"}, {});
    name = io::get_string(scenario["name"], "demo name");
  }
  if (name == "cloner-signals")
    return demo_cloner_signals(options, scenario);
  if (name == "transpose-not-cp")
    return demo_transpose_not_cp(options, scenario);
  if (name == "steer-anything")
    return demo_steer_anything(options, scenario);
  if (name.empty())
    throw ParseError("demo: missing demo name");
  throw ParseError("demo: unknown demo '" + name + "'");
}

int dispatch_command(const CliOptions &options) {
  try {
    if (options.command == "steer")
      return run_steer(options);
    if (options.command == "channel-check")
      return run_channel_check(options);
    if (options.command == "signal-test")
      return run_signal_test(options);
    if (options.command == "demo")
      return run_demo(options);
    std::cerr << "error: unknown command '" << options.command << "'\n";
    return 2;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

} // namespace nosig
