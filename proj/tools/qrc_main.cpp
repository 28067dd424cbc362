// qrc: run sweep experiments from JSON configs, list the bundled
// figure-reproduction set, or validate a config without running it.
//
// Exit codes: 0 success, 1 config error, 2 runtime error, 3 check failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qrc/experiment.hpp"

namespace {

std::string config_dir_default() {
  if (const char* env = std::getenv("QRC_CONFIG_DIR")) return env;
  return "configs";
}

qrc::ExperimentConfig load_config(const std::string& path) {
  if (std::filesystem::exists(path))
    return qrc::ExperimentConfig::from_json_file(path);
  // Bare bundled names resolve against the config directory.
  const auto bundled = qrc::find_bundled(path);
  if (bundled) return qrc::ExperimentConfig::from_json(bundled->json);
  const std::filesystem::path in_dir =
      std::filesystem::path(config_dir_default()) / (path + ".json");
  if (std::filesystem::exists(in_dir))
    return qrc::ExperimentConfig::from_json_file(in_dir.string());
  throw std::invalid_argument("no such config file or bundled experiment: " + path);
}

int cmd_run(const std::string& config, const std::string& out_override,
            int seeds_override, int threads, long long master_seed_override,
            bool check) {
  qrc::ExperimentConfig cfg;
  try {
    cfg = load_config(config);
    if (!out_override.empty()) cfg.output_dir = out_override;
    if (seeds_override > 0) cfg.seeds = seeds_override;
    if (master_seed_override >= 0)
      cfg.master_seed = static_cast<std::uint64_t>(master_seed_override);
    const auto problems = cfg.validate();
    if (!problems.empty()) {
      std::cerr << "invalid config:\n";
      for (const auto& p : problems) std::cerr << "  - " << p << "\n";
      return 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  try {
    std::cout << "running " << cfg.name << " (" << cfg.task << ", "
              << qrc::sweep_grid(cfg).size() << " grid points x " << cfg.seeds
              << " seeds) -> " << cfg.output_dir << "\n";
    const qrc::ExperimentResult result = qrc::run_experiment(cfg, threads);
    std::cout << "wrote " << result.rows.size() << " metric rows in "
              << result.wall_seconds << " s\n";
    if (check) {
      const auto checks = qrc::run_bundled_checks(cfg.name, result.rows);
      if (checks.empty())
        std::cout << "no checks registered for " << cfg.name << "\n";
      bool all_passed = true;
      for (const auto& c : checks) {
        std::cout << (c.passed ? "PASS" : "FAIL") << " " << c.name << ": "
                  << c.detail << "\n";
        all_passed = all_passed && c.passed;
      }
      if (!all_passed) return 3;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_list(bool machine) {
  for (const auto& b : qrc::bundled_catalog()) {
    if (machine)
      std::cout << b.name << "\n";
    else
      std::cout << b.name << "\t" << b.figure << "\t" << b.description << "\n";
  }
  return 0;
}

int cmd_validate(const std::string& config) {
  try {
    const qrc::ExperimentConfig cfg = load_config(config);
    const auto problems = cfg.validate();
    if (problems.empty()) {
      std::cout << "ok: " << cfg.name << " (" << cfg.task << ", "
                << qrc::sweep_grid(cfg).size() << " grid points)\n";
      return 0;
    }
    std::cerr << "invalid config:\n";
    for (const auto& p : problems) std::cerr << "  - " << p << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_export(const std::string& name, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  int written = 0;
  for (const auto& b : qrc::bundled_catalog()) {
    if (!name.empty() && b.name != name) continue;
    std::ofstream out(std::filesystem::path(out_dir) / (b.name + ".json"));
    out << b.json;
    ++written;
  }
  if (written == 0) {
    std::cerr << "error: no bundled experiment named " << name << "\n";
    return 1;
  }
  std::cout << "wrote " << written << " config(s) to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum reservoir computing sweep runner"};
  app.require_subcommand(1);

  std::string config, out_dir, export_name, export_dir = "configs";
  int seeds = 0, threads = 1;
  long long master_seed = -1;
  bool check = false, machine = false;

  CLI::App* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("--config", config, "config file path or bundled name")->required();
  run->add_option("--out", out_dir, "override the output directory");
  run->add_option("--seeds", seeds, "override the seed count");
  run->add_option("--threads", threads, "worker threads over grid points");
  run->add_option("--master-seed", master_seed, "override the master seed");
  run->add_flag("--check", check, "run the bundled trend checks afterwards");

  CLI::App* list = app.add_subcommand("list", "list bundled experiments");
  list->add_flag("--machine", machine, "names only, one per line");

  CLI::App* validate = app.add_subcommand("validate", "validate a config");
  validate->add_option("--config", config, "config file path or bundled name")
      ->required();

  CLI::App* exp = app.add_subcommand("export-configs",
                                     "write bundled configs as JSON files");
  exp->add_option("--name", export_name, "single experiment to export");
  exp->add_option("--out", export_dir, "target directory");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config, out_dir, seeds, threads, master_seed, check);
  if (list->parsed()) return cmd_list(machine);
  if (validate->parsed()) return cmd_validate(config);
  if (exp->parsed()) return cmd_export(export_name, export_dir);
  return 1;
}
