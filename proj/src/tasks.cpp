#include "qrc/tasks.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "qrc/rng.hpp"

namespace qrc {

namespace {

// 20/735/245 at the standard length of 1000; otherwise washout 20 and a
// 3:1 train/test division of the remainder.
void assign_split(TaskDataset& ds, int length) {
  ds.washout = kDefaultWashout;
  if (length == kDefaultWashout + kDefaultTrain + kDefaultTest) {
    ds.train = kDefaultTrain;
    ds.test = kDefaultTest;
  } else {
    ds.train = (length - ds.washout) * 3 / 4;
    ds.test = length - ds.washout - ds.train;
  }
}

}  // namespace

TaskDataset stm_dataset(int length, int delay, std::uint64_t seed) {
  if (delay < 0 || delay > kTauMax)
    throw std::invalid_argument("STM delay outside [0, 20]");
  if (length <= kDefaultWashout + delay)
    throw std::invalid_argument("sequence too short for the requested delay");
  CounterRng rng(seed);
  TaskDataset ds;
  ds.inputs.resize(static_cast<size_t>(length));
  for (double& s : ds.inputs) s = rng.uniform();
  ds.inputs_raw = ds.inputs;
  ds.targets.resize(static_cast<size_t>(length), 0.0);
  for (int k = delay; k < length; ++k)
    ds.targets[static_cast<size_t>(k)] = ds.inputs[static_cast<size_t>(k - delay)];
  assign_split(ds, length);
  return ds;
}

std::vector<double> narma_input(int length) {
  if (length < 1) throw std::invalid_argument("length must be >= 1");
  constexpr double a = 2.11, b = 3.73, c = 4.11, period = 100.0;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> s(static_cast<size_t>(length));
  for (int k = 1; k <= length; ++k)
    s[static_cast<size_t>(k - 1)] =
        0.1 * (std::sin(two_pi * a * k / period) * std::sin(two_pi * b * k / period) *
                   std::sin(two_pi * c * k / period) +
               1.0);
  return s;
}

TaskDataset narma_dataset(int length, const NarmaParams& params) {
  const int n = params.order;
  if (n < 1) throw std::invalid_argument("NARMA order must be >= 1");
  if (length <= n + kDefaultWashout)
    throw std::invalid_argument("sequence too short for the NARMA order");
  TaskDataset ds;
  ds.inputs_raw = narma_input(length);
  ds.inputs.resize(static_cast<size_t>(length));
  for (int k = 0; k < length; ++k)  // [0, 0.2] -> [0, 1]
    ds.inputs[static_cast<size_t>(k)] = 5.0 * ds.inputs_raw[static_cast<size_t>(k)];
  ds.targets.resize(static_cast<size_t>(length), 0.0);
  auto y_at = [&](int k) {  // 1-based, zero pre-history
    return k >= 1 ? ds.targets[static_cast<size_t>(k - 1)] : 0.0;
  };
  auto s_at = [&](int k) {
    return k >= 1 ? ds.inputs_raw[static_cast<size_t>(k - 1)] : 0.0;
  };
  for (int k = 1; k <= length; ++k) {
    double history = 0.0;
    for (int j = 1; j <= n; ++j) history += y_at(k - j);
    const double y = params.alpha * y_at(k - 1) + params.beta * y_at(k - 1) * history +
                     params.gamma * s_at(k - n) * s_at(k - 1) + params.delta;
    if (!(std::abs(y) < 10.0))
      throw std::runtime_error("NARMA target diverged");
    ds.targets[static_cast<size_t>(k - 1)] = y;
  }
  assign_split(ds, length);
  return ds;
}

std::tuple<SplitView, SplitView, SplitView> split(const TaskDataset& ds) {
  const int len = ds.length();
  if (ds.washout < 0 || ds.train < 0 || ds.test < 0 ||
      ds.washout + ds.train + ds.test != len)
    throw std::invalid_argument("split counts do not sum to the dataset length");
  return {SplitView{0, ds.washout}, SplitView{ds.washout, ds.washout + ds.train},
          SplitView{ds.washout + ds.train, len}};
}

void write_csv(const TaskDataset& ds, std::ostream& out) {
  auto [washout, train, test] = split(ds);
  out << "k,input_raw,input_scaled,target,split_label\n";
  for (int k = 0; k < ds.length(); ++k) {
    const char* label = k < washout.end ? "washout" : (k < train.end ? "train" : "test");
    out << (k + 1) << ',' << ds.inputs_raw[static_cast<size_t>(k)] << ','
        << ds.inputs[static_cast<size_t>(k)] << ',' << ds.targets[static_cast<size_t>(k)]
        << ',' << label << '\n';
  }
}

}  // namespace qrc
