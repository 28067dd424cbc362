#pragma once

// Benchmark dataset generation: STM delay targets, NARMA recurrences, the
// sine-superposition input sequence, and washout/train/test splits.

#include <cstdint>
#include <iosfwd>
#include <tuple>
#include <vector>

namespace qrc {

inline constexpr int kDefaultWashout = 20;
inline constexpr int kDefaultTrain = 735;
inline constexpr int kDefaultTest = 245;
inline constexpr int kTauMax = 20;

struct TaskDataset {
  std::vector<double> inputs;      // scaled to [0, 1], fed to the reservoir
  std::vector<double> inputs_raw;  // pre-rescaling values (NARMA: [0, 0.2])
  std::vector<double> targets;
  int washout = kDefaultWashout;
  int train = kDefaultTrain;
  int test = kDefaultTest;

  int length() const { return static_cast<int>(inputs.size()); }
};

struct NarmaParams {
  int order = 10;  // one of {5, 10, 15, 20} in the benchmarks
  double alpha = 0.3;
  double beta = 0.05;
  double gamma = 1.5;
  double delta = 0.1;
};

// Inputs i.i.d. uniform on [0, 1); y_k = s_{k-tau}, zero-padded for k <= tau
// (those indices fall inside washout and are never scored).
TaskDataset stm_dataset(int length, int delay, std::uint64_t seed);

// s_k = 0.1 [sin(2 pi 2.11 k / T) sin(2 pi 3.73 k / T) sin(2 pi 4.11 k / T) + 1]
// with T = 100 and k starting at 1; all values in [0, 0.2].
std::vector<double> narma_input(int length);

// y_k = a y_{k-1} + b y_{k-1} (sum_{j=1}^n y_{k-j}) + c s_{k-n} s_{k-1} + d
// over the raw input, zero pre-history. Throws if any |y_k| >= 10.
TaskDataset narma_dataset(int length, const NarmaParams& params);

// Contiguous half-open index range into a dataset.
struct SplitView {
  int begin = 0;
  int end = 0;
  int size() const { return end - begin; }
};

// (washout, train, test) views; checks the counts sum to the length.
std::tuple<SplitView, SplitView, SplitView> split(const TaskDataset& ds);

// Columns: k, input_raw, input_scaled, target, split_label.
void write_csv(const TaskDataset& ds, std::ostream& out);

}  // namespace qrc
