#pragma once

// Ridge-regression readout training and the benchmark metrics: coefficient
// of determination C, total capacity C_Sigma, and NMSE.

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qrc/reservoir.hpp"
#include "qrc/tasks.hpp"

namespace qrc {

inline constexpr double kDefaultRidgeAlpha = 1e-8;

struct LinearReadout {
  Eigen::VectorXd weights;
  double bias = 0.0;
  double regularization = kDefaultRidgeAlpha;

  double predict(const Eigen::VectorXd& features) const {
    return weights.dot(features) + bias;
  }
  Eigen::VectorXd predict(const Eigen::MatrixXd& features) const {
    return (features * weights).array() + bias;
  }
};

/// One metric value at one sweep coordinate. `seed` is a seed index, or
/// "mean" / "std" for the seed-aggregated rows.
struct MetricReport {
  std::string task;      // "stm", "narma", "coherence"
  std::string n_or_tau;  // delay, NARMA order, or "Csum"
  double a_in = 0.0;
  double a_fb = 0.0;
  double g = 0.0;
  double n_meas = 0.0;
  double gamma = 0.0;
  std::string feedback_observable;
  std::string seed;
  double value = 0.0;
};

// Writes the long-format metric table. Columns:
// task,n_or_tau,a_in,a_fb,g,n_meas,gamma,feedback_observable,seed,value
void write_metrics_csv(const std::vector<MetricReport>& rows, std::ostream& out);

// min_{w,b} sum (y - w.r - b)^2 + alpha ||w||^2, bias unregularized
// (features and targets are centered; b recovered from the means).
LinearReadout train_ridge(const Eigen::MatrixXd& features,
                          const Eigen::VectorXd& targets, double alpha_reg);

// Squared Pearson correlation cov^2(y, y_hat) / (var(y) var(y_hat)).
// Throws std::domain_error if either vector is constant.
double determination_coefficient(const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& y_hat);

// C_Sigma = sum_{tau=0}^{tau_max} C(tau); all delays must be present.
double total_capacity(const std::map<int, double>& per_delay,
                      int tau_max = kTauMax);

// sum (y - y_hat)^2 / sum y^2. Throws std::domain_error on all-zero targets.
double nmse(const Eigen::VectorXd& y, const Eigen::VectorXd& y_hat);

// Readout rows of `records` stacked into a features matrix.
Eigen::MatrixXd feature_matrix(const std::vector<StepRecord>& records);

// Per-seed trajectories at `cfg` with couplings, inputs, and noise streams
// derived from each seed; C(tau) for tau = 0..tau_max scored on the test
// split plus per-seed C_Sigma, then seed-aggregated mean/std rows.
std::vector<MetricReport> evaluate_stm(const ReservoirConfig& cfg,
                                       const std::vector<std::uint64_t>& seeds,
                                       int tau_max = kTauMax, int length = 1000);

// NARMA NMSE for each requested order; the deterministic sine input is
// shared across seeds, so one trajectory per seed serves every order.
std::vector<MetricReport> evaluate_narma(const ReservoirConfig& cfg,
                                         const std::vector<std::uint64_t>& seeds,
                                         const std::vector<int>& orders,
                                         int length = 1000);

// Appends mean/std rows (over rows whose seed is numeric) for each distinct
// (task, n_or_tau, coordinates) group, preserving group order.
std::vector<MetricReport> aggregate_over_seeds(const std::vector<MetricReport>& rows);

}  // namespace qrc
