#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qrc/learn.hpp"

using namespace qrc;

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, CounterRng& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = rng.uniform(-1.0, 1.0);
  return m;
}

}  // namespace

TEST_CASE("ridge recovers exact linear relations") {
  CounterRng rng(71);
  const Eigen::MatrixXd x = random_matrix(80, 5, rng);
  Eigen::VectorXd w_true(5);
  w_true << 1.0, -2.0, 0.5, 3.0, -0.25;
  const Eigen::VectorXd y = x * w_true + Eigen::VectorXd::Constant(80, 1.7);
  const LinearReadout r = train_ridge(x, y, 1e-12);
  CHECK((r.weights - w_true).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(r.bias == doctest::Approx(1.7).epsilon(1e-8));
  CHECK((r.predict(x) - y).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("huge regularization shrinks weights to zero") {
  CounterRng rng(72);
  const Eigen::MatrixXd x = random_matrix(60, 4, rng);
  const Eigen::VectorXd y = random_matrix(60, 1, rng);
  const LinearReadout r = train_ridge(x, y, 1e12);
  CHECK(r.weights.cwiseAbs().maxCoeff() < 1e-9);
  CHECK(r.bias == doctest::Approx(y.mean()).epsilon(1e-9));
}

TEST_CASE("ridge matches the centered normal-equation oracle") {
  CounterRng rng(73);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::MatrixXd x = random_matrix(50, 12, rng);
    const Eigen::VectorXd y = random_matrix(50, 1, rng);
    const double alpha = 1e-8;
    const Eigen::RowVectorXd xm = x.colwise().mean();
    const Eigen::MatrixXd xc = x.rowwise() - xm;
    const Eigen::VectorXd yc = y.array() - y.mean();
    const Eigen::MatrixXd lhs =
        xc.transpose() * xc + alpha * Eigen::MatrixXd::Identity(12, 12);
    const Eigen::VectorXd w_oracle = lhs.inverse() * (xc.transpose() * yc);
    const LinearReadout r = train_ridge(x, y, alpha);
    CHECK((r.weights - w_oracle).norm() < 1e-8 * std::max(1.0, w_oracle.norm()));
    CHECK(r.bias == doctest::Approx(y.mean() - xm.dot(w_oracle)).epsilon(1e-8));
  }
}

TEST_CASE("ridge input validation") {
  Eigen::MatrixXd x(3, 2);
  x.setOnes();
  Eigen::VectorXd y(2);
  y.setOnes();
  CHECK_THROWS_AS(train_ridge(x, y, 1e-8), std::invalid_argument);
  Eigen::VectorXd y3(3);
  y3 << 1.0, std::numeric_limits<double>::quiet_NaN(), 3.0;
  CHECK_THROWS_AS(train_ridge(x, y3, 1e-8), std::invalid_argument);
}

TEST_CASE("determination coefficient") {
  Eigen::VectorXd y(4);
  y << 1, 2, 3, 4;
  CHECK(determination_coefficient(y, y) == doctest::Approx(1.0));
  CHECK(determination_coefficient(y, 2.0 * y.array() + 3.0) == doctest::Approx(1.0));
  Eigen::VectorXd y_hat(4);
  y_hat << 1, 2, 2, 4;
  // Direct cov/var arithmetic.
  const double my = y.mean(), mh = y_hat.mean();
  double cov = 0, vy = 0, vh = 0;
  for (int i = 0; i < 4; ++i) {
    cov += (y(i) - my) * (y_hat(i) - mh);
    vy += (y(i) - my) * (y(i) - my);
    vh += (y_hat(i) - mh) * (y_hat(i) - mh);
  }
  CHECK(determination_coefficient(y, y_hat) ==
        doctest::Approx(cov * cov / (vy * vh)).epsilon(1e-14));
  const Eigen::VectorXd flat = Eigen::VectorXd::Constant(4, 2.0);
  CHECK_THROWS_AS(determination_coefficient(y, flat), std::domain_error);
}

TEST_CASE("total capacity") {
  std::map<int, double> ones, zeros, harmonic;
  for (int tau = 0; tau <= 20; ++tau) {
    ones[tau] = 1.0;
    zeros[tau] = 0.0;
    harmonic[tau] = 1.0 / (tau + 1.0);
  }
  CHECK(total_capacity(ones) == doctest::Approx(21.0));
  CHECK(total_capacity(zeros) == doctest::Approx(0.0));
  double h21 = 0.0;
  for (int k = 1; k <= 21; ++k) h21 += 1.0 / k;
  CHECK(total_capacity(harmonic) == doctest::Approx(h21).epsilon(1e-14));
  ones.erase(7);
  CHECK_THROWS_AS(total_capacity(ones), std::invalid_argument);
}

TEST_CASE("nmse") {
  Eigen::VectorXd y(2);
  y << 1, 1;
  CHECK(nmse(y, y) == doctest::Approx(0.0));
  CHECK(nmse(y, Eigen::VectorXd::Zero(2)) == doctest::Approx(1.0));
  Eigen::VectorXd y_hat(2);
  y_hat << 0, 2;
  CHECK(nmse(y, y_hat) == doctest::Approx(1.0));
  CHECK_THROWS_AS(nmse(Eigen::VectorXd::Zero(2), y), std::domain_error);
}

TEST_CASE("perfect delay-line features give unit capacity") {
  // Fixture: features contain the delayed inputs directly.
  const TaskDataset ds = stm_dataset(400, 0, 44);
  const int tau_max = 5;
  Eigen::MatrixXd features(400, tau_max + 1);
  for (int k = 0; k < 400; ++k)
    for (int tau = 0; tau <= tau_max; ++tau)
      features(k, tau) = k >= tau ? ds.inputs[static_cast<size_t>(k - tau)] : 0.0;
  for (int tau = 0; tau <= tau_max; ++tau) {
    Eigen::VectorXd target(380);
    for (int k = 0; k < 380; ++k)
      target(k) = ds.inputs[static_cast<size_t>(k + 20 - tau)];
    const LinearReadout r =
        train_ridge(features.bottomRows(380), target, 1e-12);
    const Eigen::MatrixXd tail = features.bottomRows(380);
    const double c = determination_coefficient(target, r.predict(tail));
    CHECK(c == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("evaluate_stm smoke run with aggregates") {
  ReservoirConfig cfg = ReservoirConfig::defaults(0);
  cfg.a_fb = 0.2;
  const std::vector<std::uint64_t> seeds{11, 22};
  const auto rows = evaluate_stm(cfg, seeds, 3, 200);
  // per-seed rows: 2 seeds x (4 taus + Csum); plus mean/std per coordinate.
  int per_seed = 0, mean_rows = 0, std_rows = 0;
  double csum_mean = 0.0, csum_0 = 0.0, csum_1 = 0.0;
  for (const auto& r : rows) {
    CHECK(r.task == "stm");
    if (r.seed == "mean")
      ++mean_rows;
    else if (r.seed == "std")
      ++std_rows;
    else
      ++per_seed;
    if (r.n_or_tau == "Csum") {
      if (r.seed == "0") csum_0 = r.value;
      if (r.seed == "1") csum_1 = r.value;
      if (r.seed == "mean") csum_mean = r.value;
    }
  }
  CHECK(per_seed == 10);
  CHECK(mean_rows == 5);
  CHECK(std_rows == 5);
  CHECK(csum_mean == doctest::Approx((csum_0 + csum_1) / 2.0).epsilon(1e-12));
  // C(0) is near-perfect: the current input is directly encoded.
  for (const auto& r : rows)
    if (r.n_or_tau == "0" && r.seed == "mean") CHECK(r.value > 0.9);
  // Determinism.
  const auto again = evaluate_stm(cfg, seeds, 3, 200);
  REQUIRE(again.size() == rows.size());
  for (size_t i = 0; i < rows.size(); ++i) CHECK(again[i].value == rows[i].value);
}

TEST_CASE("metrics csv format") {
  MetricReport r;
  r.task = "stm";
  r.n_or_tau = "Csum";
  r.a_in = 0.1;
  r.a_fb = 0.2;
  r.g = 0.3;
  r.n_meas = std::numeric_limits<double>::infinity();
  r.feedback_observable = "z";
  r.seed = "0";
  r.value = 5.25;
  std::ostringstream out;
  write_metrics_csv({r}, out);
  const std::string text = out.str();
  CHECK(text.rfind("task,n_or_tau,a_in,a_fb,g,n_meas,gamma,feedback_observable,seed,value\n",
                   0) == 0);
  CHECK(text.find(",inf,") != std::string::npos);
  CHECK(text.find("5.25") != std::string::npos);
}

TEST_CASE("aggregate_over_seeds groups by coordinates") {
  std::vector<MetricReport> rows;
  for (int seed = 0; seed < 3; ++seed) {
    MetricReport r;
    r.task = "stm";
    r.n_or_tau = "Csum";
    r.a_fb = 0.2;
    r.seed = std::to_string(seed);
    r.value = static_cast<double>(seed);  // 0, 1, 2
    rows.push_back(r);
  }
  const auto out = aggregate_over_seeds(rows);
  REQUIRE(out.size() == 5);
  CHECK(out[3].seed == "mean");
  CHECK(out[3].value == doctest::Approx(1.0));
  CHECK(out[4].seed == "std");
  CHECK(out[4].value == doctest::Approx(1.0));  // sample std of {0,1,2}
}
