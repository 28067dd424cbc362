#pragma once

// Reservoir coherence, measurement-result distribution export with a
// 2-component principal-axis projection, and exact verification of the
// feedback-induced Pauli-coefficient transforms.

#include <iosfwd>

#include "qrc/learn.hpp"

namespace qrc {

// QC(rho) = sum_{i != j} |rho_ij|.
double coherence(const DensityMatrix& rho);

// Time-averaged post-evolution coherence per (a_fb, seed) with uniform
// random inputs; first `discard` steps dropped. Rows carry task
// "coherence", value = QC mean, plus mean/std aggregates.
std::vector<MetricReport> coherence_sweep(const ReservoirConfig& cfg,
                                          const std::vector<double>& a_fb_values,
                                          const std::vector<std::uint64_t>& seeds,
                                          int steps = 1000, int discard = 20);

struct DistributionExport {
  Eigen::MatrixXd readouts;    // (length - discard) x 2N
  Eigen::MatrixXd projection;  // same rows x 2, min-max scaled to [0, 1]
  bool degenerate = false;     // zero-variance readout, no projection
  double captured_variance = 0.0;  // fraction explained by the two axes
  double effective_rank = 0.0;     // participation ratio of the spectrum
};

// Runs the reservoir, drops `discard` steps, and writes the readout rows
// plus the scaled 2-component projection as CSV.
DistributionExport export_distribution(const ReservoirConfig& cfg,
                                       std::ostream& out, int length = 2000,
                                       int discard = 20,
                                       std::uint64_t input_seed = 0);

// Principal-axis projection helper used by export_distribution; exposed for
// the synthetic-fixture tests.
DistributionExport project_readouts(const Eigen::MatrixXd& readouts);

/// Pauli strings differing only at the feedback qubit, with the rotation
/// angle of the simplified RZ feedback circuit.
struct FeedbackTransformCase {
  PauliString target;   // P_i
  PauliString partner;  // P_k, X <-> Y flipped at the feedback qubit
  int feedback_qubit = 0;
  double angle = 0.0;
};

FeedbackTransformCase make_feedback_case(const PauliString& target,
                                         int feedback_qubit, double angle);

// Predicted coefficient after RZ_j(theta) conjugation:
// X at j: a_i cos - a_k sin; Y at j: a_i cos + a_k sin; Z or I: a_i.
double feedback_transform_predict(const FeedbackTransformCase& c, double a_i,
                                  double a_k);

struct FeedbackVerifyReport {
  int n_qubits = 0;
  int trials = 0;
  double max_deviation = 0.0;
  bool passed = false;
};

// Random (rho, j, theta) trials: conjugates by RZ_j(theta), extracts every
// Pauli coefficient, and checks the closed-form prediction to 1e-12.
FeedbackVerifyReport feedback_transform_verify(int n_qubits, int trials,
                                               std::uint64_t seed);

// Random density matrix via a normalized Wishart draw.
DensityMatrix random_density_matrix(int n_qubits, CounterRng& rng);

}  // namespace qrc
