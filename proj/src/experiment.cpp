#include "qrc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace qrc {

namespace {

using nlohmann::json;

double parse_maybe_inf(const json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    throw std::invalid_argument("expected a number or \"inf\", got: " + s);
  }
  return v.get<double>();
}

json dump_maybe_inf(double v) {
  if (std::isinf(v)) return json("inf");
  return json(v);
}

bool near(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return std::isinf(a) && std::isinf(b) && (a > 0) == (b > 0);
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  ExperimentConfig cfg;
  try {
    cfg.name = j.value("name", cfg.name);
    cfg.description = j.value("description", cfg.description);
    cfg.task = j.at("task").get<std::string>();
    if (j.contains("narma_orders"))
      cfg.narma_orders = j["narma_orders"].get<std::vector<int>>();
    if (j.contains("sweep")) {
      const json& s = j["sweep"];
      if (s.contains("a_fb")) cfg.a_fb_values = s["a_fb"].get<std::vector<double>>();
      if (s.contains("g")) cfg.g_values = s["g"].get<std::vector<double>>();
      if (s.contains("n_meas")) {
        cfg.n_meas_values.clear();
        for (const auto& v : s["n_meas"]) cfg.n_meas_values.push_back(parse_maybe_inf(v));
      }
      if (s.contains("gamma")) cfg.gamma_values = s["gamma"].get<std::vector<double>>();
      if (s.contains("feedback_observable"))
        cfg.feedback_observable_values =
            s["feedback_observable"].get<std::vector<std::string>>();
    }
    if (j.contains("fixed")) {
      const json& f = j["fixed"];
      cfg.a_in = f.value("a_in", cfg.a_in);
      cfg.n_qubits = f.value("n_qubits", cfg.n_qubits);
      cfg.j_s = f.value("j_s", cfg.j_s);
      cfg.dt = f.value("dt", cfg.dt);
      cfg.length = f.value("length", cfg.length);
      cfg.tau_max = f.value("tau_max", cfg.tau_max);
      cfg.washout = f.value("washout", cfg.washout);
      cfg.train = f.value("train", cfg.train);
      cfg.test = f.value("test", cfg.test);
      cfg.measure_x_first = f.value("measure_x_first", cfg.measure_x_first);
    }
    cfg.seeds = j.value("seeds", cfg.seeds);
    cfg.master_seed = j.value("master_seed", cfg.master_seed);
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config field error: ") + e.what());
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::string ExperimentConfig::to_json() const {
  json sweep;
  sweep["a_fb"] = a_fb_values;
  sweep["g"] = g_values;
  sweep["n_meas"] = json::array();
  for (double v : n_meas_values) sweep["n_meas"].push_back(dump_maybe_inf(v));
  sweep["gamma"] = gamma_values;
  sweep["feedback_observable"] = feedback_observable_values;
  json j{{"name", name},
         {"description", description},
         {"task", task},
         {"narma_orders", narma_orders},
         {"sweep", sweep},
         {"fixed",
          {{"a_in", a_in},
           {"n_qubits", n_qubits},
           {"j_s", j_s},
           {"dt", dt},
           {"length", length},
           {"tau_max", tau_max},
           {"washout", washout},
           {"train", train},
           {"test", test},
           {"measure_x_first", measure_x_first}}},
         {"seeds", seeds},
         {"master_seed", master_seed},
         {"output_dir", output_dir}};
  return j.dump(2);
}

std::vector<std::string> ExperimentConfig::validate() const {
  std::vector<std::string> problems;
  static const std::set<std::string> kTasks{"stm", "narma", "coherence",
                                           "distribution", "feedback_verify"};
  if (!kTasks.count(task)) problems.push_back("unknown task: " + task);
  auto axis_size = [](const auto& v) { return v.size(); };
  if (a_fb_values.empty() || g_values.empty() || n_meas_values.empty() ||
      gamma_values.empty() || feedback_observable_values.empty())
    problems.push_back("empty sweep axis");
  int wide_axes = 0;
  for (size_t s : {axis_size(a_fb_values), axis_size(g_values),
                   axis_size(n_meas_values), axis_size(gamma_values),
                   axis_size(feedback_observable_values)})
    if (s > 1) ++wide_axes;
  if (wide_axes > 2) problems.push_back("at most two sweep axes may hold multiple values");
  for (double g : gamma_values)
    if (g < 0.0 || g > 1.0)
      problems.push_back("gamma outside [0, 1]: " + std::to_string(g));
  for (double nm : n_meas_values) {
    if (std::isfinite(nm) && nm < 1.0)
      problems.push_back("n_meas must be >= 1 or inf");
    if (std::isfinite(nm))
      for (double g : g_values)
        if (g <= 0.0)
          problems.push_back("sigma diverges: g = 0 with finite n_meas");
  }
  for (double g : g_values)
    if (g < 0.0) problems.push_back("negative measurement strength");
  for (const std::string& obs : feedback_observable_values) {
    try {
      feedback_observable_from_string(obs);
    } catch (const std::invalid_argument& e) {
      problems.push_back(e.what());
    }
  }
  if (tau_max < 0 || tau_max > kTauMax)
    problems.push_back("tau_max outside [0, 20]");
  if (washout + train + test != length)
    problems.push_back("washout + train + test must equal length");
  if (task == "narma")
    for (int n : narma_orders)
      if (n < 1 || length <= n + washout)
        problems.push_back("invalid NARMA order for this length: " + std::to_string(n));
  if (seeds < 1) problems.push_back("need at least one seed");
  if (n_qubits < 2 || n_qubits > 12) problems.push_back("n_qubits outside [2, 12]");
  if (j_s <= 0.0) problems.push_back("j_s must be positive");
  return problems;
}

std::vector<GridPoint> sweep_grid(const ExperimentConfig& cfg) {
  std::vector<GridPoint> grid;
  for (double a_fb : cfg.a_fb_values)
    for (double g : cfg.g_values)
      for (double n_meas : cfg.n_meas_values)
        for (double gamma : cfg.gamma_values)
          for (const std::string& obs : cfg.feedback_observable_values)
            grid.push_back({a_fb, g, n_meas, gamma, obs});
  return grid;
}

ReservoirConfig point_config(const ExperimentConfig& cfg, const GridPoint& p) {
  ReservoirConfig rc;
  rc.n_qubits = cfg.n_qubits;
  rc.input_qubits = {0, 1};
  rc.feedback_qubits.clear();
  for (int q = 2; q < cfg.n_qubits; ++q) rc.feedback_qubits.push_back(q);
  auto pairs = default_feedback_pairing(rc.feedback_qubits);
  if (static_cast<int>(pairs.size()) < cfg.n_qubits)
    throw std::invalid_argument("too few feedback-qubit pairs for this system size");
  pairs.resize(static_cast<size_t>(cfg.n_qubits));
  rc.feedback_pairing = std::move(pairs);
  rc.a_in = cfg.a_in;
  rc.a_fb = p.a_fb;
  rc.g = p.g;
  rc.hamiltonian = IsingHamiltonian::zero(cfg.n_qubits, cfg.j_s);
  rc.dt = cfg.dt;
  rc.noise = std::isfinite(p.n_meas)
                 ? MeasurementNoiseModel::finite(p.n_meas, p.g, 0)
                 : MeasurementNoiseModel::infinite();
  rc.noise.strength = p.g;
  rc.depolarizing_rate = p.gamma;
  rc.feedback_observable = feedback_observable_from_string(p.feedback_observable);
  rc.measure_x_first = cfg.measure_x_first;
  return rc;
}

std::vector<std::uint64_t> seed_list(const ExperimentConfig& cfg) {
  std::vector<std::uint64_t> seeds(static_cast<size_t>(cfg.seeds));
  for (int i = 0; i < cfg.seeds; ++i)
    seeds[static_cast<size_t>(i)] =
        derive_stream(cfg.master_seed, 0x73656564ULL + static_cast<std::uint64_t>(i));
  return seeds;
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min(threads, count);
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace {

std::vector<MetricReport> run_point(const ExperimentConfig& cfg, const GridPoint& p,
                                    const std::vector<std::uint64_t>& seeds,
                                    std::ostream* dist_out) {
  const ReservoirConfig rc = point_config(cfg, p);
  if (cfg.task == "stm")
    return evaluate_stm(rc, seeds, cfg.tau_max, cfg.length);
  if (cfg.task == "narma")
    return evaluate_narma(rc, seeds, cfg.narma_orders, cfg.length);
  if (cfg.task == "coherence")
    return coherence_sweep(rc, {p.a_fb}, seeds, cfg.length, cfg.washout);
  if (cfg.task == "distribution") {
    std::ostringstream null_sink;
    std::ostream& sink = dist_out ? *dist_out : null_sink;
    const DistributionExport dist =
        export_distribution(rc, sink, cfg.length, cfg.washout, seeds.front());
    std::vector<MetricReport> rows;
    MetricReport r;
    r.task = "distribution";
    r.a_in = cfg.a_in;
    r.a_fb = p.a_fb;
    r.g = p.g;
    r.n_meas = p.n_meas;
    r.gamma = p.gamma;
    r.feedback_observable = p.feedback_observable;
    r.seed = "0";
    r.n_or_tau = "rows";
    r.value = static_cast<double>(dist.readouts.rows());
    rows.push_back(r);
    r.n_or_tau = "captured_variance";
    r.value = dist.captured_variance;
    rows.push_back(r);
    r.n_or_tau = "effective_rank";
    r.value = dist.effective_rank;
    rows.push_back(r);
    return rows;
  }
  throw std::invalid_argument("unknown task: " + cfg.task);
}

std::vector<MetricReport> feedback_verify_rows(const ExperimentConfig& cfg) {
  std::vector<MetricReport> rows;
  for (int n = 1; n <= 3; ++n) {
    const auto report = feedback_transform_verify(
        n, 100, derive_stream(cfg.master_seed, static_cast<std::uint64_t>(n)));
    MetricReport r;
    r.task = "feedback_verify";
    r.n_or_tau = std::to_string(n);
    r.seed = "0";
    r.value = report.max_deviation;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string point_file_tag(const GridPoint& p) {
  std::ostringstream os;
  os << "g" << p.g << "_afb" << p.a_fb;
  if (p.feedback_observable != "z") os << "_" << p.feedback_observable;
  std::string s = os.str();
  for (char& c : s)
    if (c == '.') c = 'p';
  return s;
}

std::vector<MetricReport> run_grid(const ExperimentConfig& cfg, int threads,
                                   const std::string& out_dir) {
  const auto problems = cfg.validate();
  if (!problems.empty()) {
    std::string msg = "invalid experiment config:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw std::invalid_argument(msg);
  }
  if (cfg.task == "feedback_verify") return feedback_verify_rows(cfg);
  const auto grid = sweep_grid(cfg);
  const auto seeds = seed_list(cfg);
  std::vector<std::vector<MetricReport>> blocks(grid.size());
  parallel_for(static_cast<int>(grid.size()), threads, [&](int i) {
    std::ofstream dist_file;
    std::ostream* dist_out = nullptr;
    if (cfg.task == "distribution" && !out_dir.empty()) {
      dist_file.open(std::filesystem::path(out_dir) /
                     ("distribution_" + point_file_tag(grid[static_cast<size_t>(i)]) + ".csv"));
      dist_out = &dist_file;
    }
    blocks[static_cast<size_t>(i)] =
        run_point(cfg, grid[static_cast<size_t>(i)], seeds, dist_out);
  });
  std::vector<MetricReport> rows;  // merged in grid (config) order
  for (auto& b : blocks) rows.insert(rows.end(), b.begin(), b.end());
  return rows;
}

// One plot series per combination of the non-primary coordinates.
void write_plotdata(const ExperimentConfig& cfg, const std::vector<MetricReport>& rows,
                    std::ostream& out) {
  // Primary (x) axis: the first axis holding more than one value.
  enum Axis { AFB, G, NMEAS, GAMMA, OBS };
  Axis x_axis = AFB;
  if (cfg.a_fb_values.size() > 1) x_axis = AFB;
  else if (cfg.g_values.size() > 1) x_axis = G;
  else if (cfg.n_meas_values.size() > 1) x_axis = NMEAS;
  else if (cfg.gamma_values.size() > 1) x_axis = GAMMA;
  else if (cfg.feedback_observable_values.size() > 1) x_axis = OBS;
  auto x_of = [&](const MetricReport& r) -> std::string {
    std::ostringstream os;
    os.precision(12);
    switch (x_axis) {
      case AFB: os << r.a_fb; break;
      case G: os << r.g; break;
      case NMEAS: os << r.n_meas; break;
      case GAMMA: os << r.gamma; break;
      case OBS: os << r.feedback_observable; break;
    }
    return os.str();
  };
  auto series_of = [&](const MetricReport& r) {
    std::ostringstream os;
    os.precision(12);
    os << r.task << ":" << r.n_or_tau;
    if (x_axis != AFB) os << " a_fb=" << r.a_fb;
    if (x_axis != G) os << " g=" << r.g;
    if (x_axis != NMEAS && std::isfinite(r.n_meas)) os << " n_meas=" << r.n_meas;
    if (x_axis != GAMMA && r.gamma != 0.0) os << " gamma=" << r.gamma;
    if (x_axis != OBS && r.feedback_observable != "z")
      os << " obs=" << r.feedback_observable;
    return os.str();
  };
  auto plotted = [&](const MetricReport& r) {
    if (r.task == "stm" || r.task == "coherence") return r.n_or_tau == "Csum" || r.n_or_tau == "QC";
    if (r.task == "narma") return true;
    return false;
  };
  // pair mean rows with their std rows (emitted adjacently)
  out << "series,x,y,y_std\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    const MetricReport& r = rows[i];
    if (r.seed != "mean" || !plotted(r)) continue;
    double y_std = 0.0;
    if (i + 1 < rows.size() && rows[i + 1].seed == "std") y_std = rows[i + 1].value;
    out << series_of(r) << ',' << x_of(r) << ',' << r.value << ',' << y_std << '\n';
  }
}

}  // namespace

std::vector<MetricReport> run_experiment_rows(const ExperimentConfig& cfg,
                                              int threads) {
  return run_grid(cfg, threads, "");
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, int threads) {
  const auto start = std::chrono::steady_clock::now();
  std::filesystem::create_directories(cfg.output_dir);
  ExperimentResult result;
  result.rows = run_grid(cfg, threads, cfg.output_dir);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::filesystem::path dir(cfg.output_dir);
  {
    std::ofstream metrics(dir / "metrics.csv");
    write_metrics_csv(result.rows, metrics);
  }
  {
    std::ofstream plot(dir / "plotdata.csv");
    write_plotdata(cfg, result.rows, plot);
  }
  {
    json manifest;
    manifest["config"] = json::parse(cfg.to_json());
    manifest["version"] = "0.1.0";
    manifest["wall_seconds"] = result.wall_seconds;
    std::ofstream out(dir / "manifest.json");
    out << manifest.dump(2) << '\n';
  }
  return result;
}

// ---------------------------------------------------------------------------
// Trend checks

SeedStat seed_stat(const std::vector<MetricReport>& rows,
                   const std::function<bool(const MetricReport&)>& select) {
  std::vector<double> vals;
  for (const auto& r : rows) {
    if (r.seed == "mean" || r.seed == "std") continue;
    if (select(r)) vals.push_back(r.value);
  }
  SeedStat s;
  s.n = static_cast<int>(vals.size());
  if (s.n == 0) return s;
  for (double v : vals) s.mean += v;
  s.mean /= s.n;
  double var = 0.0;
  for (double v : vals) var += (v - s.mean) * (v - s.mean);
  s.sd = s.n > 1 ? std::sqrt(var / (s.n - 1)) : 0.0;
  return s;
}

namespace {

double se_diff(const SeedStat& a, const SeedStat& b) {
  if (a.n == 0 || b.n == 0) return std::numeric_limits<double>::infinity();
  return std::sqrt(a.sd * a.sd / a.n + b.sd * b.sd / b.n);
}

using Rows = std::vector<MetricReport>;

SeedStat csum_stat(const Rows& rows, double g, double a_fb,
                   double n_meas = std::numeric_limits<double>::infinity(),
                   double gamma = 0.0, const std::string& obs = "") {
  return seed_stat(rows, [&](const MetricReport& r) {
    return r.task == "stm" && r.n_or_tau == "Csum" && near(r.g, g) &&
           near(r.a_fb, a_fb) && near(r.n_meas, n_meas) && near(r.gamma, gamma) &&
           (obs.empty() || r.feedback_observable == obs);
  });
}

std::vector<double> distinct_values(const Rows& rows,
                                    const std::function<bool(const MetricReport&)>& sel,
                                    const std::function<double(const MetricReport&)>& get) {
  std::vector<double> vals;
  for (const auto& r : rows) {
    if (r.seed == "mean" || r.seed == "std" || !sel(r)) continue;
    const double v = get(r);
    bool found = false;
    for (double w : vals)
      if (near(v, w)) found = true;
    if (!found) vals.push_back(v);
  }
  std::sort(vals.begin(), vals.end());
  return vals;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

CheckResult check_fig4a(const Rows& rows) {
  const SeedStat weak_fb = csum_stat(rows, 0.3, 0.2);
  const SeedStat weak_0 = csum_stat(rows, 0.3, 0.0);
  const bool c1 = weak_fb.mean - weak_0.mean > se_diff(weak_fb, weak_0);
  auto max_over_afb = [&](double g) {
    auto afbs = distinct_values(
        rows,
        [&](const MetricReport& r) {
          return r.task == "stm" && r.n_or_tau == "Csum" && near(r.g, g);
        },
        [](const MetricReport& r) { return r.a_fb; });
    SeedStat best;
    for (double a : afbs) {
      const SeedStat s = csum_stat(rows, g, a);
      if (s.n > 0 && s.mean > best.mean) best = s;
    }
    return best;
  };
  const SeedStat best_weak = max_over_afb(0.3);
  const SeedStat best_proj = max_over_afb(10.0);
  const bool c2 = best_weak.mean - best_proj.mean > se_diff(best_weak, best_proj);
  std::ostringstream detail;
  detail << "Csum(g=0.3): a_fb=0.2 -> " << fmt(weak_fb.mean) << " vs a_fb=0 -> "
         << fmt(weak_0.mean) << "; max weak " << fmt(best_weak.mean)
         << " vs max projective " << fmt(best_proj.mean);
  return {"fig4a", c1 && c2, detail.str()};
}

CheckResult check_fig4b(const Rows& rows) {
  auto c_at = [&](double g, double a_fb) {
    return seed_stat(rows, [&](const MetricReport& r) {
      return r.task == "stm" && r.n_or_tau == "6" && near(r.g, g) && near(r.a_fb, a_fb);
    });
  };
  const SeedStat proj = c_at(10.0, 0.6);
  const SeedStat weak = c_at(0.3, 0.2);
  std::ostringstream detail;
  detail << "C(tau=6): projective(a_fb=0.6) " << fmt(proj.mean)
         << " < weak(a_fb=0.2) " << fmt(weak.mean);
  return {"fig4b", proj.n > 0 && weak.n > 0 && proj.mean < weak.mean, detail.str()};
}

CheckResult check_fig5(const Rows& rows, int order, const std::string& name) {
  auto min_over_afb = [&](double g) {
    auto afbs = distinct_values(
        rows,
        [&](const MetricReport& r) {
          return r.task == "narma" && r.n_or_tau == std::to_string(order) && near(r.g, g);
        },
        [](const MetricReport& r) { return r.a_fb; });
    SeedStat best;
    best.mean = std::numeric_limits<double>::infinity();
    for (double a : afbs) {
      const SeedStat s = seed_stat(rows, [&](const MetricReport& r) {
        return r.task == "narma" && r.n_or_tau == std::to_string(order) &&
               near(r.g, g) && near(r.a_fb, a);
      });
      if (s.n > 0 && s.mean < best.mean) best = s;
    }
    return best;
  };
  const SeedStat weak = min_over_afb(0.3);
  const SeedStat proj = min_over_afb(10.0);
  std::ostringstream detail;
  detail << "NARMA" << order << " min NMSE: weak " << fmt(weak.mean)
         << " < projective " << fmt(proj.mean);
  return {name, weak.n > 0 && proj.n > 0 && weak.mean < proj.mean, detail.str()};
}

CheckResult check_fig6a(const Rows& rows) {
  auto n_meas_values = distinct_values(
      rows,
      [&](const MetricReport& r) {
        return r.task == "stm" && r.n_or_tau == "Csum" && near(r.g, 0.3) &&
               near(r.a_fb, 0.2);
      },
      [](const MetricReport& r) { return r.n_meas; });
  std::vector<SeedStat> fb;
  for (double nm : n_meas_values) fb.push_back(csum_stat(rows, 0.3, 0.2, nm));
  int violations = 0;
  for (size_t i = 0; i + 1 < fb.size(); ++i)
    if (fb[i + 1].mean < fb[i].mean - se_diff(fb[i], fb[i + 1])) ++violations;
  const bool monotone_ok = violations <= 1;
  const double smallest = n_meas_values.empty() ? 0.0 : n_meas_values.front();
  const SeedStat no_fb = csum_stat(rows, 0.3, 0.0, smallest);
  const SeedStat with_fb = csum_stat(rows, 0.3, 0.2, smallest);
  const bool olp_wins = no_fb.n > 0 && with_fb.n > 0 && no_fb.mean > with_fb.mean;
  std::ostringstream detail;
  detail << "monotone violations " << violations << "; at N_meas=" << fmt(smallest)
         << " OLP " << fmt(no_fb.mean) << " vs feedback " << fmt(with_fb.mean);
  return {"fig6a", monotone_ok && olp_wins && fb.size() >= 3, detail.str()};
}

CheckResult check_fig6b(const Rows& rows) {
  auto gs = distinct_values(
      rows,
      [&](const MetricReport& r) {
        return r.task == "stm" && r.n_or_tau == "Csum" && near(r.n_meas, 1e8);
      },
      [](const MetricReport& r) { return r.g; });
  if (gs.size() < 3) return {"fig6b", false, "need at least 3 g values"};
  std::vector<SeedStat> stats;
  for (double g : gs) stats.push_back(csum_stat(rows, g, 0.2, 1e8));
  double interior_max = -std::numeric_limits<double>::infinity();
  for (size_t i = 1; i + 1 < stats.size(); ++i)
    interior_max = std::max(interior_max, stats[i].mean);
  const bool ok = interior_max > stats.front().mean && interior_max > stats.back().mean;
  std::ostringstream detail;
  detail << "interior max " << fmt(interior_max) << " vs endpoints "
         << fmt(stats.front().mean) << " / " << fmt(stats.back().mean);
  return {"fig6b", ok, detail.str()};
}

CheckResult check_fig7(const Rows& rows) {
  auto gammas = distinct_values(
      rows,
      [&](const MetricReport& r) {
        return r.task == "stm" && r.n_or_tau == "Csum" && near(r.g, 0.3) &&
               near(r.a_fb, 0.2);
      },
      [](const MetricReport& r) { return r.gamma; });
  if (gammas.size() < 2) return {"fig7", false, "need at least 2 gamma values"};
  bool ok = true;
  std::ostringstream detail;
  detail << "Csum over gamma:";
  SeedStat prev;
  for (size_t i = 0; i < gammas.size(); ++i) {
    const SeedStat s = csum_stat(rows, 0.3, 0.2,
                                 std::numeric_limits<double>::infinity(), gammas[i]);
    detail << ' ' << fmt(s.mean);
    if (i > 0 && s.mean > prev.mean + se_diff(prev, s)) ok = false;
    prev = s;
  }
  return {"fig7", ok, detail.str()};
}

CheckResult check_fig8(const Rows& rows) {
  auto qc = [&](double g, double a_fb) {
    return seed_stat(rows, [&](const MetricReport& r) {
      return r.task == "coherence" && near(r.g, g) && near(r.a_fb, a_fb);
    });
  };
  const bool proj_up = qc(10.0, 1.0).mean > qc(10.0, 0.0).mean;
  const SeedStat w0 = qc(0.3, 0.0), w07 = qc(0.3, 0.7), w09 = qc(0.3, 0.9),
                 w10 = qc(0.3, 1.0);
  const bool weak_up = w09.mean > w0.mean;
  const bool saturates = (w10.mean - w07.mean) < (w07.mean - w0.mean);
  std::ostringstream detail;
  detail << "QC(g=0.3) at a_fb 0/0.7/0.9/1: " << fmt(w0.mean) << ' ' << fmt(w07.mean)
         << ' ' << fmt(w09.mean) << ' ' << fmt(w10.mean) << "; QC(g=10) rises: "
         << (proj_up ? "yes" : "no");
  return {"fig8", proj_up && weak_up && saturates, detail.str()};
}

CheckResult check_fig10(const Rows& rows) {
  const SeedStat baseline = csum_stat(
      rows, 0.3, 0.0, std::numeric_limits<double>::infinity(), 0.0, "");
  const SeedStat z_fb = csum_stat(
      rows, 0.3, 0.2, std::numeric_limits<double>::infinity(), 0.0, "z");
  bool x_below = true;
  int x_points = 0;
  auto x_afbs = distinct_values(
      rows,
      [&](const MetricReport& r) {
        return r.task == "stm" && r.n_or_tau == "Csum" && near(r.g, 0.3) &&
               r.feedback_observable == "x" && r.a_fb >= 0.4 - 1e-12;
      },
      [](const MetricReport& r) { return r.a_fb; });
  std::ostringstream x_detail;
  for (double a : x_afbs) {
    const SeedStat s = csum_stat(rows, 0.3, a,
                                 std::numeric_limits<double>::infinity(), 0.0, "x");
    ++x_points;
    if (!(s.mean < baseline.mean)) x_below = false;
    x_detail << " x@" << fmt(a) << " " << fmt(s.mean);
  }
  std::ostringstream detail;
  detail << "baseline " << fmt(baseline.mean) << ", z@0.2 " << fmt(z_fb.mean)
         << "," << x_detail.str();
  const bool ok = z_fb.n > 0 && baseline.n > 0 && z_fb.mean > baseline.mean &&
                  x_points > 0 && x_below;
  return {"fig10", ok, detail.str()};
}

}  // namespace

std::vector<CheckResult> run_bundled_checks(const std::string& name,
                                            const std::vector<MetricReport>& rows) {
  if (name == "fig4a") return {check_fig4a(rows)};
  if (name == "fig4b") return {check_fig4b(rows)};
  if (name == "fig5a") return {check_fig5(rows, 5, "fig5a")};
  if (name == "fig5b") return {check_fig5(rows, 10, "fig5b")};
  if (name == "fig5c") return {check_fig5(rows, 15, "fig5c")};
  if (name == "fig5d") return {check_fig5(rows, 20, "fig5d")};
  if (name == "fig6a") return {check_fig6a(rows)};
  if (name == "fig6b") return {check_fig6b(rows)};
  if (name == "fig7") return {check_fig7(rows)};
  if (name == "fig8") return {check_fig8(rows)};
  if (name == "fig10") return {check_fig10(rows)};
  return {};
}

// ---------------------------------------------------------------------------
// Bundled figure-reproduction configs

namespace {

std::string make_config(const std::string& name, const std::string& description,
                        const std::string& task, const std::string& extra) {
  std::ostringstream os;
  os << "{\n"
     << "  \"name\": \"" << name << "\",\n"
     << "  \"description\": \"" << description << "\",\n"
     << "  \"task\": \"" << task << "\",\n"
     << extra << "  \"seeds\": 20,\n"
     << "  \"master_seed\": 20240901,\n"
     << "  \"output_dir\": \"out/" << name << "\"\n"
     << "}\n";
  return os.str();
}

const char* kFullAfbGrid = "[0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0]";

std::vector<BundledExperiment> build_catalog() {
  std::vector<BundledExperiment> cat;
  auto add = [&](const std::string& name, const std::string& figure,
                 const std::string& description, const std::string& task,
                 const std::string& extra) {
    cat.push_back({name, figure, description,
                   make_config(name, description + " (" + figure + ")", task, extra)});
  };
  add("fig4a", "Fig. 4(a)",
      "STM total capacity vs feedback strength, weak (g=0.3) vs projective (g=10)",
      "stm",
      std::string("  \"sweep\": {\"a_fb\": ") + kFullAfbGrid +
          ", \"g\": [0.3, 10.0]},\n");
  add("fig4b", "Fig. 4(b)",
      "Memory accuracy C(tau) for fixed feedback strengths", "stm",
      "  \"sweep\": {\"a_fb\": [0.0, 0.2, 0.6], \"g\": [0.3, 10.0]},\n");
  add("fig5a", "Fig. 5(a)", "NARMA5 NMSE vs feedback strength", "narma",
      std::string("  \"narma_orders\": [5],\n  \"sweep\": {\"a_fb\": ") +
          kFullAfbGrid + ", \"g\": [0.3, 10.0]},\n");
  add("fig5b", "Fig. 5(b)", "NARMA10 NMSE vs feedback strength", "narma",
      std::string("  \"narma_orders\": [10],\n  \"sweep\": {\"a_fb\": ") +
          kFullAfbGrid + ", \"g\": [0.3, 10.0]},\n");
  add("fig5c", "Fig. 5(c)", "NARMA15 NMSE vs feedback strength", "narma",
      std::string("  \"narma_orders\": [15],\n  \"sweep\": {\"a_fb\": ") +
          kFullAfbGrid + ", \"g\": [0.3, 10.0]},\n");
  add("fig5d", "Fig. 5(d)", "NARMA20 NMSE vs feedback strength", "narma",
      std::string("  \"narma_orders\": [20],\n  \"sweep\": {\"a_fb\": ") +
          kFullAfbGrid + ", \"g\": [0.3, 10.0]},\n");
  add("fig6a", "Fig. 6(a)",
      "STM capacity vs measurement count, with (a_fb=0.2) and without feedback",
      "stm",
      "  \"sweep\": {\"n_meas\": [1e4, 1e5, 1e6, 1e7, 1e8, \"inf\"], "
      "\"a_fb\": [0.0, 0.2]},\n");
  add("fig6b", "Fig. 6(b)",
      "STM capacity vs measurement strength at N_meas=1e8", "stm",
      "  \"sweep\": {\"g\": [0.1, 0.3, 1.0, 3.0, 10.0], \"n_meas\": [1e8], "
      "\"a_fb\": [0.2]},\n");
  add("fig7", "Fig. 7",
      "STM capacity vs depolarizing rate, with and without feedback", "stm",
      "  \"sweep\": {\"gamma\": [0.0, 0.05, 0.1, 0.2], \"a_fb\": [0.0, 0.2]},\n");
  add("fig8", "Fig. 8",
      "Time-averaged coherence vs feedback strength, weak vs projective",
      "coherence",
      std::string("  \"sweep\": {\"a_fb\": ") + kFullAfbGrid +
          ", \"g\": [0.3, 10.0]},\n");
  add("fig9", "Fig. 9",
      "Readout distribution export with 2-component projection", "distribution",
      "  \"sweep\": {\"a_fb\": [0.0, 0.2, 0.6], \"g\": [0.3, 10.0]},\n"
      "  \"fixed\": {\"length\": 2000, \"washout\": 20, \"train\": 1485, "
      "\"test\": 495},\n");
  add("fig10", "Fig. 10",
      "STM capacity vs feedback strength for different feedback observables",
      "stm",
      "  \"sweep\": {\"a_fb\": [0.0, 0.2, 0.4, 0.6, 0.8, 1.0], "
      "\"feedback_observable\": "
      "[\"z\", \"z_squared\", \"sin_z\", \"x\", \"x_squared\", \"sin_x\"]},\n");
  return cat;
}

}  // namespace

const std::vector<BundledExperiment>& bundled_catalog() {
  static const std::vector<BundledExperiment> cat = build_catalog();
  return cat;
}

std::optional<BundledExperiment> find_bundled(const std::string& name) {
  for (const auto& b : bundled_catalog())
    if (b.name == name) return b;
  return std::nullopt;
}

}  // namespace qrc
