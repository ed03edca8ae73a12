// beliefnet: run configured simulations, named trials and parameter sweeps.
//
//   beliefnet validate [--config cfg.json] [overrides]
//   beliefnet simulate [--config cfg.json] --out DIR [overrides]
//   beliefnet trial KIND [--config cfg.json] --out DIR [overrides]
//   beliefnet sweep PARAMETER --values v1,v2,... [--c c1,c2,...] [--seeds N]
//                    [--config cfg.json] --out DIR [overrides]
//
// Exit codes: 0 success, 1 invalid arguments or configuration, 2 I/O failure.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "beliefnet/beliefnet.hpp"

namespace fs = std::filesystem;
using namespace beliefnet;

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> steps;
  std::optional<std::uint64_t> n;
  std::optional<double> k;
  std::optional<double> c;
  std::optional<std::uint64_t> m;
  std::optional<double> polarization;
  std::optional<std::string> network;
  bool record_confidence = false;

  void add_to(CLI::App* cmd, bool with_c) {
    cmd->add_option("--seed", seed, "Master seed");
    cmd->add_option("--steps", steps, "Number of steps");
    cmd->add_option("--n", n, "Population size");
    cmd->add_option("--k", k, "Connectivity index (mean degree)");
    if (with_c) cmd->add_option("--c", c, "Self-confidence");
    cmd->add_option("--m", m, "Number of positive evidence items");
    cmd->add_option("--polarization", polarization, "Polarization index of understanding");
    cmd->add_option("--network", network, "Network kind")->check(CLI::IsMember({"giant", "communities"}));
    cmd->add_flag("--record-confidence", record_confidence, "Also write confidence.csv");
  }

  void apply(nlohmann::json& doc) const {
    if (seed) doc["seed"] = *seed;
    if (steps) doc["steps"] = *steps;
    if (n) doc["n"] = *n;
    if (k) doc["k"] = *k;
    if (c) doc["c"] = *c;
    if (m) doc["m"] = *m;
    if (polarization) doc["polarization_index"] = *polarization;
    if (network) doc["network"] = *network;
    if (record_confidence) doc["record_confidence"] = true;
  }
};

nlohmann::json load_document(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  return parse_json_text(read_file(path));
}

void prepare_output(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError(dir.string(), "cannot create output directory");
}

void write_run(const RunOutput& run, const fs::path& dir) {
  prepare_output(dir);
  write_trajectory(run.trajectory, dir / "trajectory.csv");
  if (run.config.record_confidence) write_confidence(run.trajectory, dir / "confidence.csv");
  write_network(run.graph, run.weights, dir);
  write_summary(run.config, run.trajectory, dir / "summary.json");
}

void report(const RunOutput& run) {
  std::fprintf(stderr, "run seed=%llu n=%llu steps=%llu final_mean=%.6f final_std=%.6g max_pressure=%.6g\n",
               static_cast<unsigned long long>(run.config.seed),
               static_cast<unsigned long long>(run.config.n),
               static_cast<unsigned long long>(run.config.steps), run.stats.final_mean,
               run.stats.final_std, run.stats.max_pressure);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evidence-based belief dynamics on social networks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";

  auto* validate_cmd = app.add_subcommand("validate", "Parse and validate a configuration");
  Overrides validate_ov;
  validate_cmd->add_option("--config", config_path, "JSON configuration file");
  validate_ov.add_to(validate_cmd, true);

  auto* simulate_cmd = app.add_subcommand("simulate", "Run one configured simulation");
  Overrides simulate_ov;
  simulate_cmd->add_option("--config", config_path, "JSON configuration file");
  simulate_cmd->add_option("--out", out_dir, "Output directory");
  simulate_ov.add_to(simulate_cmd, true);

  auto* trial_cmd = app.add_subcommand("trial", "Run a named trial");
  Overrides trial_ov;
  std::string trial_kind;
  trial_cmd->add_option("kind", trial_kind, "random_giant | polarized_communities | polarized_giant")
      ->required();
  trial_cmd->add_option("--config", config_path, "JSON configuration file");
  trial_cmd->add_option("--out", out_dir, "Output directory");
  trial_ov.add_to(trial_cmd, true);

  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one parameter over values, self-confidence and seeds");
  Overrides sweep_ov;
  std::string sweep_param;
  std::vector<double> sweep_values;
  std::vector<double> sweep_c;
  std::uint64_t seed_count = 10;
  sweep_cmd->add_option("parameter", sweep_param,
                        "connectivity | population | polarization_index | evidence_count")
      ->required();
  sweep_cmd->add_option("--values", sweep_values, "Comma-separated parameter values")
      ->delimiter(',')
      ->required();
  sweep_cmd->add_option("--c", sweep_c, "Comma-separated self-confidence levels")->delimiter(',');
  sweep_cmd->add_option("--seeds", seed_count, "Number of seeds, counting up from the base seed")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--config", config_path, "JSON configuration file");
  sweep_cmd->add_option("--out", out_dir, "Output directory");
  sweep_ov.add_to(sweep_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    nlohmann::json doc = load_document(config_path);

    if (*validate_cmd) {
      validate_ov.apply(doc);
      const SimConfig cfg = config_from_json(doc);
      std::cout << serialize_config(cfg);
      return 0;
    }

    if (*simulate_cmd) {
      simulate_ov.apply(doc);
      const auto run = run_config(config_from_json(doc));
      report(run);
      write_run(run, out_dir);
      return 0;
    }

    if (*trial_cmd) {
      const TrialKind kind = parse_trial_kind(trial_kind);
      nlohmann::json overrides = nlohmann::json::object();
      trial_ov.apply(overrides);
      const auto run = run_config(trial_config(kind, doc, overrides));
      report(run);
      write_run(run, out_dir);
      return 0;
    }

    if (*sweep_cmd) {
      const SweepParameter param = parse_sweep_parameter(sweep_param);
      sweep_ov.apply(doc);
      const SimConfig base = config_from_json(doc);
      if (sweep_c.empty()) sweep_c.push_back(base.c);
      std::vector<std::uint64_t> seeds;
      for (std::uint64_t i = 0; i < seed_count; ++i) seeds.push_back(base.seed + i);
      prepare_output(out_dir);
      const auto results = sweep(param, sweep_values, sweep_c, seeds, base, [](const SweepResult& r) {
        std::fprintf(stderr, "run %s=%g c=%g seed=%llu final_std=%.6g\n", r.parameter.c_str(), r.value, r.c,
                     static_cast<unsigned long long>(r.seed), r.final_std);
      });
      write_sweep(results, fs::path(out_dir) / "sweep.csv");
      return 0;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
