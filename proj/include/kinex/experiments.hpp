#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "kinex/specs.hpp"

namespace kinex {

enum class Experiment { Relax, Dist, EpsSweep, LambdaFamily, Rrn, Fit };

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& name);

/// One experiment, as read from a JSON config file.
struct ExperimentConfig {
  Experiment experiment = Experiment::Relax;
  ModelSpec model;
  std::size_t n_agents = 100;
  std::size_t t_max = 200;
  std::size_t n_configs = 10'000;
  std::uint64_t master_seed = 1;
  std::filesystem::path output_dir = "kinex_out";
  double tail_fraction = 0.25;

  std::vector<double> eps_values;        // eps-sweep
  std::vector<Interval> lambda_windows;  // lambda-family
  std::vector<Interval> g_windows;       // rrn
  RrnSpec rrn;                           // rrn: side, init
  bool dense_check = false;              // rrn

  std::optional<std::size_t> equilibration;  // dist; auto when unset
  std::size_t max_equilibration = 10'000;
  std::size_t n_snapshots = 10;
  std::size_t sample_interval = 10;
  std::size_t hist_bins = 50;
  std::size_t lambda_bins = 5;

  std::optional<std::filesystem::path> input;  // fit
  std::string fit_form = "auto";               // fit: auto | shifted | pure

  nlohmann::json raw;

  /// Throws ConfigError describing the first invalid field.
  void validate() const;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

struct RunOptions {
  std::filesystem::path output_dir;
  unsigned threads = 0;
  bool strict = false;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct OutputFile {
  std::string name;
  std::uint64_t digest = 0;
};

struct CommandResult {
  std::vector<OutputFile> outputs;
  std::vector<Check> checks;
  nlohmann::json report = nlohmann::json::object();

  bool all_checks_passed() const;
};

CommandResult cmd_relax(const ExperimentConfig& cfg, const RunOptions& opt);
CommandResult cmd_dist(const ExperimentConfig& cfg, const RunOptions& opt);
CommandResult cmd_eps_sweep(const ExperimentConfig& cfg, const RunOptions& opt);
CommandResult cmd_lambda_family(const ExperimentConfig& cfg, const RunOptions& opt);
CommandResult cmd_rrn(const ExperimentConfig& cfg, const RunOptions& opt);
CommandResult cmd_fit(const ExperimentConfig& cfg, const RunOptions& opt);

/// Dispatches on cfg.experiment and writes manifest.json next to the
/// outputs. I/O and config failures propagate as kinex::Error.
CommandResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opt);

/// 0 = data produced; 3 = a check failed under --strict.
int exit_code(const CommandResult& result, bool strict);

inline constexpr const char* kVersion = "0.1.0";

}  // namespace kinex
