#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qrc/tasks.hpp"

using namespace qrc;

TEST_CASE("stm dataset targets and determinism") {
  const TaskDataset tau0 = stm_dataset(100, 0, 5);
  for (int k = 0; k < 100; ++k)
    CHECK(tau0.targets[static_cast<size_t>(k)] == tau0.inputs[static_cast<size_t>(k)]);
  const TaskDataset tau3 = stm_dataset(100, 3, 5);
  CHECK(tau3.targets[10] == tau3.inputs[7]);
  for (int k = 0; k < 3; ++k) CHECK(tau3.targets[static_cast<size_t>(k)] == 0.0);
  const TaskDataset again = stm_dataset(100, 3, 5);
  CHECK(tau3.inputs == again.inputs);
  CHECK(stm_dataset(100, 3, 6).inputs != tau3.inputs);
  for (double s : tau3.inputs) {
    CHECK(s >= 0.0);
    CHECK(s < 1.0);
  }
  CHECK_THROWS_AS(stm_dataset(100, -1, 5), std::invalid_argument);
  CHECK_THROWS_AS(stm_dataset(100, 21, 5), std::invalid_argument);
}

TEST_CASE("narma input sequence") {
  const std::vector<double> s = narma_input(10000);
  // k = 10000: every sine argument is an integer multiple of 2 pi
  // (2.11 * 10000 / 100 = 211, and likewise 373 and 411), so s_k = 0.1.
  for (double freq : {2.11, 3.73, 4.11})
    CHECK(std::abs(std::sin(2.0 * std::numbers::pi * freq * 10000.0 / 100.0)) < 1e-9);
  CHECK(s[9999] == doctest::Approx(0.1).epsilon(1e-9));  // k starts at 1
  // Direct evaluation of the closed form at k = 1.
  const double k1 = 0.1 * (std::sin(2.0 * std::numbers::pi * 2.11 / 100.0) *
                               std::sin(2.0 * std::numbers::pi * 3.73 / 100.0) *
                               std::sin(2.0 * std::numbers::pi * 4.11 / 100.0) +
                           1.0);
  CHECK(s[0] == doctest::Approx(k1).epsilon(1e-15));
  for (double v : s) {
    CHECK(v >= 0.0);
    CHECK(v <= 0.2);
  }
  CHECK(narma_input(10000) == s);  // deterministic
}

TEST_CASE("narma recurrence matches an independent oracle bitwise") {
  const int length = 1000;
  NarmaParams p;  // order 10
  const TaskDataset ds = narma_dataset(length, p);
  // Second implementation of the recurrence, straight from the definition.
  const std::vector<double> s = narma_input(length);
  std::vector<double> y(static_cast<size_t>(length), 0.0);
  auto y_at = [&](int idx) { return idx >= 1 ? y[static_cast<size_t>(idx - 1)] : 0.0; };
  auto s_at = [&](int idx) { return idx >= 1 ? s[static_cast<size_t>(idx - 1)] : 0.0; };
  for (int k = 1; k <= length; ++k) {
    double window = 0.0;
    for (int j = 1; j <= p.order; ++j) window += y_at(k - j);
    y[static_cast<size_t>(k - 1)] = p.alpha * y_at(k - 1) +
                                    p.beta * y_at(k - 1) * window +
                                    p.gamma * s_at(k - p.order) * s_at(k - 1) +
                                    p.delta;
  }
  REQUIRE(ds.targets.size() == y.size());
  for (size_t k = 0; k < y.size(); ++k) CHECK(ds.targets[k] == y[k]);
  // First step reduces to delta with zero history.
  CHECK(ds.targets[0] == p.delta);
  // Scaled inputs are 5x the raw sine values.
  for (size_t k = 0; k < ds.inputs.size(); ++k)
    CHECK(ds.inputs[k] == doctest::Approx(5.0 * ds.inputs_raw[k]).epsilon(1e-15));
}

TEST_CASE("narma stays bounded for all benchmark orders") {
  for (int order : {5, 10, 15, 20}) {
    NarmaParams p;
    p.order = order;
    const TaskDataset ds = narma_dataset(1000, p);
    double max_abs = 0.0;
    for (double v : ds.targets) max_abs = std::max(max_abs, std::abs(v));
    CHECK(max_abs < 1.0);
  }
}

TEST_CASE("narma divergence is reported") {
  NarmaParams p;
  p.alpha = 2.0;  // unstable recurrence
  CHECK_THROWS_AS(narma_dataset(1000, p), std::runtime_error);
}

TEST_CASE("split views reconstruct the dataset") {
  const TaskDataset ds = stm_dataset(1000, 2, 8);
  CHECK(ds.washout == 20);
  CHECK(ds.train == 735);
  CHECK(ds.test == 245);
  const auto [w, tr, te] = split(ds);
  CHECK(w.begin == 0);
  CHECK(w.end == tr.begin);
  CHECK(tr.end == te.begin);
  CHECK(te.end == ds.length());
  CHECK(w.size() + tr.size() + te.size() == ds.length());
}

TEST_CASE("csv export emits one line per step") {
  const TaskDataset ds = stm_dataset(50, 1, 9);
  std::ostringstream out;
  write_csv(ds, out);
  const std::string text = out.str();
  CHECK(text.rfind("k,", 0) == 0);
  int lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  CHECK(lines == 51);  // header + 50 rows
}
