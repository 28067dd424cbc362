#pragma once

// Quantum gates, the reservoir unitary, the weak-measurement channel,
// finite-ensemble measurement noise, and the depolarizing channel.

#include <limits>
#include <optional>

#include "qrc/qmath.hpp"
#include "qrc/rng.hpp"

namespace qrc {

enum class GateKind { RX, RZ, Hadamard, CNOT };

struct GateSpec {
  GateKind kind;
  int target = 0;
  std::optional<int> control;  // CNOT only
  double angle = 0.0;          // rotations only
};

/// Fully connected transverse-field Ising model
/// H = sum_{i<j} J_ij X_i X_j + h sum_i Z_i.
struct IsingHamiltonian {
  int n_qubits = 0;
  Eigen::MatrixXd couplings;  // symmetric, zero diagonal, |J_ij| <= J_s/2
  double field = 0.0;         // h
  double energy_scale = 1.0;  // J_s

  static IsingHamiltonian zero(int n_qubits, double j_s = 1.0);
};

enum class MeasBasis { Z, X };

struct WeakMeasurementChannel {
  double strength = 0.0;  // g >= 0
  MeasBasis basis = MeasBasis::Z;
};

/// Gaussian estimation noise for expectation values obtained from a finite
/// measurement ensemble. Value semantics: copying forks the draw stream.
struct MeasurementNoiseModel {
  double n_meas = std::numeric_limits<double>::infinity();
  double strength = 0.3;  // g entering the sigma formulas
  std::uint64_t rng_seed = 0;
  CounterRng rng;

  static MeasurementNoiseModel infinite();
  static MeasurementNoiseModel finite(double n_meas, double g, std::uint64_t seed);
  bool is_infinite() const { return !std::isfinite(n_meas); }
};

// Full 2^N-dimensional unitary embedding of a gate.
// RX(theta) = exp(-i theta X / 2), RZ(theta) = exp(-i theta Z / 2).
ComplexMatrix gate_matrix(const GateSpec& spec, int n_qubits);

// Two-qubit coupling gate CX_{i,j} RZ_j(theta) CX_{i,j} RX_i(theta) RX_j(theta),
// rightmost factor applied to the state first.
ComplexMatrix coupling_gate(int i, int j, double theta, int n_qubits);
// Same operator as a 4x4 matrix on the (i, j) pair, i's bit more significant.
Eigen::Matrix4cd coupling_gate_local(double theta);

// U_res = exp(-i H dt).
ComplexMatrix build_reservoir_unitary(const IsingHamiltonian& h, double dt);

// J_ij i.i.d. uniform on [-J_s/2, J_s/2] for i < j, mirrored; h = 5 J_s.
IsingHamiltonian sample_couplings(int n_qubits, double j_s, std::uint64_t seed);

// rho' = M . rho (elementwise) in the Z basis; conjugated by Hadamards for X.
DensityMatrix apply_weak_measurement(const DensityMatrix& rho,
                                     const WeakMeasurementChannel& ch);
void apply_weak_measurement_inplace(ComplexMatrix& rho, int n_qubits,
                                    const WeakMeasurementChannel& ch);

// Tr[P rho]; the imaginary residue (< 1e-10 for valid inputs) is discarded.
double expectation(const DensityMatrix& rho, const PauliString& obs);
double expectation(const ComplexMatrix& rho, int n_qubits, const PauliString& obs);

// Standard deviation of the ensemble mean: sqrt((g^2+1)/(g^2 N)) for
// single-qubit observables, sqrt((g^4+2g^2+1)/(g^4 N)) for two-qubit ones.
double measurement_sigma(int arity, double g, double n_meas);

// ideal plus one Gaussian draw of the matching sigma; the infinite-ensemble
// model returns ideal unchanged without consuming a draw.
double noisy_expectation(double ideal, MeasurementNoiseModel& model, int arity);

// (1 - gamma) rho + gamma I / 2^N.
DensityMatrix apply_depolarizing(const DensityMatrix& rho, double rate);
void apply_depolarizing_inplace(ComplexMatrix& rho, double rate);

}  // namespace qrc
