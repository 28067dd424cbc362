#pragma once

// The five-step protocol state machine: input-qubit reset, input encoding,
// measurement feedback, unitary evolution, and weak measurement, producing
// per-step readout and feedback vectors.

#include <utility>
#include <vector>

#include "qrc/channels.hpp"

namespace qrc {

enum class FeedbackObservable { Z, ZSquared, SinZ, X, XSquared, SinX, None };

FeedbackObservable feedback_observable_from_string(const std::string& s);
std::string to_string(FeedbackObservable kind);

struct ReservoirConfig {
  int n_qubits = 6;
  std::pair<int, int> input_qubits{0, 1};
  std::vector<int> feedback_qubits{2, 3, 4, 5};
  double a_in = 0.1;  // radians per unit input
  double a_fb = 0.0;  // radians per unit feedback value
  double g = 0.3;     // weak measurement strength
  IsingHamiltonian hamiltonian = IsingHamiltonian::zero(6);
  double dt = 10.0;  // in units of 1/J_s
  MeasurementNoiseModel noise = MeasurementNoiseModel::infinite();
  double depolarizing_rate = 0.0;
  FeedbackObservable feedback_observable = FeedbackObservable::Z;
  // One (i, j) pair per feedback value z^alpha; length must equal n_qubits.
  std::vector<std::pair<int, int>> feedback_pairing;
  // The per-step readout splits the measured ensemble between the X and Z
  // bases and carries the equal mixture of the two branch channels forward,
  // which is basis-symmetric; this flag is retained only for configuration
  // compatibility and has no numerical effect.
  bool measure_x_first = true;

  void validate() const;  // throws std::invalid_argument

  // Paper defaults: N = 6, a_in = 0.1, couplings drawn at `coupling_seed`,
  // h = 5 J_s, dt = 10 / J_s, lexicographic feedback pairing over {2..5}.
  static ReservoirConfig defaults(std::uint64_t coupling_seed);
};

// All unordered pairs of the feedback qubits in lexicographic order.
std::vector<std::pair<int, int>> default_feedback_pairing(
    const std::vector<int>& feedback_qubits);

struct StepRecord {
  int step_index = 0;
  std::vector<double> readout;          // <X_1>, <Z_1>, ..., <X_N>, <Z_N>
  std::vector<double> feedback_values;  // z_k, one entry per qubit
  double coherence = 0.0;               // QC(rho) sampled after U_res
};

struct ReservoirState {
  DensityMatrix rho;
  std::vector<double> last_feedback;  // z_{k-1}
  int step = 0;
  MeasurementNoiseModel noise;  // advances as draws are consumed
};

// rho0 = |0...0><0...0|, z0 = 0.
ReservoirState initial_state(const ReservoirConfig& cfg);

// |00><00| at the input-qubit positions tensored with the partial trace
// over them; trace preserving and idempotent.
DensityMatrix reset_input_qubits(const DensityMatrix& rho,
                                 const ReservoirConfig& cfg);

// f(z): z for the linear kinds, z^2 for the squared kinds, sin(z) for the
// sine kinds, 0 for none.
double feedback_angle(double value, FeedbackObservable kind);

/// Owns the precomputed reservoir unitary for a fixed configuration.
class Reservoir {
 public:
  explicit Reservoir(ReservoirConfig cfg);

  const ReservoirConfig& config() const { return cfg_; }
  const ComplexMatrix& unitary() const { return u_res_; }

  ReservoirState make_initial_state() const { return initial_state(cfg_); }
  std::pair<ReservoirState, StepRecord> step(ReservoirState state,
                                             double input) const;

 private:
  ReservoirConfig cfg_;
  ComplexMatrix u_res_;
};

// One protocol step; builds the reservoir unitary on the fly. Prefer the
// Reservoir class when stepping repeatedly.
std::pair<ReservoirState, StepRecord> step(ReservoirState state, double input,
                                           const ReservoirConfig& cfg);

std::vector<StepRecord> run_sequence(const std::vector<double>& inputs,
                                     const ReservoirConfig& cfg);

}  // namespace qrc
