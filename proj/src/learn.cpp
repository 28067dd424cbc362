#include "qrc/learn.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qrc/rng.hpp"

namespace qrc {

namespace {

std::string format_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// Derives the per-seed config: fresh couplings and noise stream, shared
// protocol parameters.
ReservoirConfig seed_config(const ReservoirConfig& cfg, std::uint64_t seed) {
  ReservoirConfig out = cfg;
  out.hamiltonian = sample_couplings(cfg.n_qubits, cfg.hamiltonian.energy_scale,
                                     derive_stream(seed, kCouplingStream));
  out.noise.strength = cfg.g;
  out.noise.rng_seed = derive_stream(seed, kNoiseStream);
  out.noise.rng = CounterRng(out.noise.rng_seed);
  return out;
}

MetricReport base_report(const ReservoirConfig& cfg, const std::string& task) {
  MetricReport r;
  r.task = task;
  r.a_in = cfg.a_in;
  r.a_fb = cfg.a_fb;
  r.g = cfg.g;
  r.n_meas = cfg.noise.n_meas;
  r.gamma = cfg.depolarizing_rate;
  r.feedback_observable = to_string(cfg.feedback_observable);
  return r;
}

}  // namespace

void write_metrics_csv(const std::vector<MetricReport>& rows, std::ostream& out) {
  out << "task,n_or_tau,a_in,a_fb,g,n_meas,gamma,feedback_observable,seed,value\n";
  for (const auto& r : rows)
    out << r.task << ',' << r.n_or_tau << ',' << format_value(r.a_in) << ','
        << format_value(r.a_fb) << ',' << format_value(r.g) << ','
        << format_value(r.n_meas) << ',' << format_value(r.gamma) << ','
        << r.feedback_observable << ',' << r.seed << ',' << format_value(r.value)
        << '\n';
}

LinearReadout train_ridge(const Eigen::MatrixXd& features,
                          const Eigen::VectorXd& targets, double alpha_reg) {
  if (features.rows() != targets.size())
    throw std::invalid_argument("feature/target row count mismatch");
  if (features.rows() == 0) throw std::invalid_argument("empty training set");
  if (!targets.allFinite() || !features.allFinite())
    throw std::invalid_argument("non-finite training data");
  const Eigen::RowVectorXd x_mean = features.colwise().mean();
  const double y_mean = targets.mean();
  const Eigen::MatrixXd xc = features.rowwise() - x_mean;
  const Eigen::VectorXd yc = targets.array() - y_mean;
  Eigen::MatrixXd gram = xc.transpose() * xc;
  gram.diagonal().array() += alpha_reg;
  const Eigen::VectorXd w = gram.ldlt().solve(xc.transpose() * yc);
  if (!w.allFinite()) throw std::runtime_error("ridge solve failed");
  LinearReadout readout;
  readout.weights = w;
  readout.bias = y_mean - x_mean.dot(w);
  readout.regularization = alpha_reg;
  return readout;
}

double determination_coefficient(const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& y_hat) {
  if (y.size() != y_hat.size() || y.size() < 2)
    throw std::invalid_argument("determination_coefficient needs matched vectors");
  const double n = static_cast<double>(y.size());
  const Eigen::VectorXd yc = y.array() - y.mean();
  const Eigen::VectorXd hc = y_hat.array() - y_hat.mean();
  const double var_y = yc.squaredNorm() / n;
  const double var_h = hc.squaredNorm() / n;
  if (var_y <= 0.0 || var_h <= 0.0)
    throw std::domain_error("determination coefficient undefined for constant data");
  const double cov = yc.dot(hc) / n;
  return (cov * cov) / (var_y * var_h);
}

double total_capacity(const std::map<int, double>& per_delay, int tau_max) {
  double sum = 0.0;
  for (int tau = 0; tau <= tau_max; ++tau) {
    auto it = per_delay.find(tau);
    if (it == per_delay.end())
      throw std::invalid_argument("missing delay in capacity table");
    sum += it->second;
  }
  return sum;
}

double nmse(const Eigen::VectorXd& y, const Eigen::VectorXd& y_hat) {
  if (y.size() != y_hat.size()) throw std::invalid_argument("size mismatch");
  const double denom = y.squaredNorm();
  if (denom <= 0.0) throw std::domain_error("NMSE undefined for all-zero targets");
  return (y - y_hat).squaredNorm() / denom;
}

Eigen::MatrixXd feature_matrix(const std::vector<StepRecord>& records) {
  if (records.empty()) return {};
  const Eigen::Index cols = static_cast<Eigen::Index>(records.front().readout.size());
  Eigen::MatrixXd features(static_cast<Eigen::Index>(records.size()), cols);
  for (size_t k = 0; k < records.size(); ++k)
    for (Eigen::Index j = 0; j < cols; ++j)
      features(static_cast<Eigen::Index>(k), j) =
          records[k].readout[static_cast<size_t>(j)];
  return features;
}

std::vector<MetricReport> evaluate_stm(const ReservoirConfig& cfg,
                                       const std::vector<std::uint64_t>& seeds,
                                       int tau_max, int length) {
  if (seeds.empty()) throw std::invalid_argument("seed list is empty");
  std::vector<MetricReport> rows;
  for (size_t si = 0; si < seeds.size(); ++si) {
    const ReservoirConfig run_cfg = seed_config(cfg, seeds[si]);
    const TaskDataset ds =
        stm_dataset(length, 0, derive_stream(seeds[si], kInputStream));
    const auto records = run_sequence(ds.inputs, run_cfg);
    const Eigen::MatrixXd features = feature_matrix(records);
    auto [washout, train, test] = split(ds);
    const Eigen::MatrixXd x_train = features.middleRows(train.begin, train.size());
    const Eigen::MatrixXd x_test = features.middleRows(test.begin, test.size());
    std::map<int, double> capacity;
    for (int tau = 0; tau <= tau_max; ++tau) {
      auto target_at = [&](int k) {  // y_k = s_{k - tau}
        return k >= tau ? ds.inputs[static_cast<size_t>(k - tau)] : 0.0;
      };
      Eigen::VectorXd y_train(train.size()), y_test(test.size());
      for (int k = 0; k < train.size(); ++k) y_train(k) = target_at(train.begin + k);
      for (int k = 0; k < test.size(); ++k) y_test(k) = target_at(test.begin + k);
      const LinearReadout readout =
          train_ridge(x_train, y_train, kDefaultRidgeAlpha);
      capacity[tau] = determination_coefficient(y_test, readout.predict(x_test));
      MetricReport r = base_report(cfg, "stm");
      r.n_or_tau = std::to_string(tau);
      r.seed = std::to_string(si);
      r.value = capacity[tau];
      rows.push_back(std::move(r));
    }
    MetricReport r = base_report(cfg, "stm");
    r.n_or_tau = "Csum";
    r.seed = std::to_string(si);
    r.value = total_capacity(capacity, tau_max);
    rows.push_back(std::move(r));
  }
  return aggregate_over_seeds(rows);
}

std::vector<MetricReport> evaluate_narma(const ReservoirConfig& cfg,
                                         const std::vector<std::uint64_t>& seeds,
                                         const std::vector<int>& orders,
                                         int length) {
  if (seeds.empty()) throw std::invalid_argument("seed list is empty");
  if (orders.empty()) throw std::invalid_argument("order list is empty");
  // One dataset per order; they share the deterministic input sequence.
  std::vector<TaskDataset> datasets;
  for (int order : orders)
    datasets.push_back(narma_dataset(length, NarmaParams{.order = order}));
  const TaskDataset& ref = datasets.front();
  std::vector<MetricReport> rows;
  for (size_t si = 0; si < seeds.size(); ++si) {
    const ReservoirConfig run_cfg = seed_config(cfg, seeds[si]);
    const auto records = run_sequence(ref.inputs, run_cfg);
    const Eigen::MatrixXd features = feature_matrix(records);
    auto [washout, train, test] = split(ref);
    const Eigen::MatrixXd x_train = features.middleRows(train.begin, train.size());
    const Eigen::MatrixXd x_test = features.middleRows(test.begin, test.size());
    for (size_t oi = 0; oi < orders.size(); ++oi) {
      const TaskDataset& ds = datasets[oi];
      Eigen::VectorXd y_train(train.size()), y_test(test.size());
      for (int k = 0; k < train.size(); ++k)
        y_train(k) = ds.targets[static_cast<size_t>(train.begin + k)];
      for (int k = 0; k < test.size(); ++k)
        y_test(k) = ds.targets[static_cast<size_t>(test.begin + k)];
      const LinearReadout readout =
          train_ridge(x_train, y_train, kDefaultRidgeAlpha);
      MetricReport r = base_report(cfg, "narma");
      r.n_or_tau = std::to_string(orders[oi]);
      r.seed = std::to_string(si);
      r.value = nmse(y_test, readout.predict(x_test));
      rows.push_back(std::move(r));
    }
  }
  return aggregate_over_seeds(rows);
}

std::vector<MetricReport> aggregate_over_seeds(const std::vector<MetricReport>& rows) {
  // Group key: everything except seed and value; insertion order preserved.
  std::vector<std::string> order;
  std::map<std::string, std::vector<double>> groups;
  std::map<std::string, MetricReport> templates;
  auto key_of = [](const MetricReport& r) {
    std::ostringstream os;
    os << r.task << '|' << r.n_or_tau << '|' << r.a_in << '|' << r.a_fb << '|'
       << r.g << '|' << r.n_meas << '|' << r.gamma << '|' << r.feedback_observable;
    return os.str();
  };
  for (const auto& r : rows) {
    if (r.seed == "mean" || r.seed == "std") continue;
    const std::string key = key_of(r);
    if (!groups.count(key)) {
      order.push_back(key);
      templates[key] = r;
    }
    groups[key].push_back(r.value);
  }
  std::vector<MetricReport> out = rows;
  for (const auto& key : order) {
    const auto& vals = groups[key];
    const double n = static_cast<double>(vals.size());
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    const double stddev = n > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
    MetricReport m = templates[key];
    m.seed = "mean";
    m.value = mean;
    out.push_back(m);
    m.seed = "std";
    m.value = stddev;
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace qrc
