#pragma once

// Config-driven experiment orchestration: sweep grids over the protocol
// knobs, seeded parallel execution, CSV/manifest output, and the bundled
// figure-reproduction catalog with its trend checks.

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qrc/analysis.hpp"

namespace qrc {

struct ExperimentConfig {
  std::string name = "custom";
  std::string description;
  std::string task;  // stm | narma | coherence | distribution | feedback_verify
  std::vector<int> narma_orders{10};

  // Sweep axes; single-element axes act as fixed parameters. At most two
  // axes may hold more than one value.
  std::vector<double> a_fb_values{0.0};
  std::vector<double> g_values{0.3};
  std::vector<double> n_meas_values{std::numeric_limits<double>::infinity()};
  std::vector<double> gamma_values{0.0};
  std::vector<std::string> feedback_observable_values{"z"};

  double a_in = 0.1;
  int n_qubits = 6;
  double j_s = 1.0;  // h is fixed at 5 J_s by the coupling sampler
  double dt = 10.0;
  int length = 1000;
  int tau_max = kTauMax;
  int washout = kDefaultWashout;
  int train = kDefaultTrain;
  int test = kDefaultTest;
  int seeds = 20;
  std::uint64_t master_seed = 20240901;
  std::string output_dir = "out";
  bool measure_x_first = true;

  static ExperimentConfig from_json(const std::string& text);
  static ExperimentConfig from_json_file(const std::string& path);
  std::string to_json() const;

  // Range diagnostics; empty means the config is runnable.
  std::vector<std::string> validate() const;
};

struct GridPoint {
  double a_fb = 0.0;
  double g = 0.3;
  double n_meas = std::numeric_limits<double>::infinity();
  double gamma = 0.0;
  std::string feedback_observable = "z";
};

std::vector<GridPoint> sweep_grid(const ExperimentConfig& cfg);

// Reservoir configuration at one sweep point (couplings still zero; the
// evaluators draw them per seed).
ReservoirConfig point_config(const ExperimentConfig& cfg, const GridPoint& p);

// Per-seed master values derived from the experiment master seed.
std::vector<std::uint64_t> seed_list(const ExperimentConfig& cfg);

struct ExperimentResult {
  std::vector<MetricReport> rows;
  double wall_seconds = 0.0;
};

// Executes the sweep and writes metrics.csv, manifest.json, plotdata.csv
// (and per-point distribution CSVs) into cfg.output_dir.
ExperimentResult run_experiment(const ExperimentConfig& cfg, int threads = 1);

// Runs the grid without touching the filesystem.
std::vector<MetricReport> run_experiment_rows(const ExperimentConfig& cfg,
                                              int threads = 1);

struct BundledExperiment {
  std::string name;    // e.g. "fig4a"
  std::string figure;  // paper figure it reproduces
  std::string description;
  std::string json;    // full config text
};

const std::vector<BundledExperiment>& bundled_catalog();
std::optional<BundledExperiment> find_bundled(const std::string& name);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Trend checks for the bundled experiments; empty when no check exists for
// `name`. The rows may be a superset of the experiment's own output.
std::vector<CheckResult> run_bundled_checks(const std::string& name,
                                            const std::vector<MetricReport>& rows);

// Mean/std/count of per-seed rows matching the selector.
struct SeedStat {
  double mean = 0.0;
  double sd = 0.0;
  int n = 0;
};
SeedStat seed_stat(const std::vector<MetricReport>& rows,
                   const std::function<bool(const MetricReport&)>& select);

// Runs `count` tasks on `threads` workers; results land in slot order.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace qrc
