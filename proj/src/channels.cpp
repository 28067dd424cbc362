#include "qrc/channels.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qrc {

namespace {

Eigen::Index dim_of(int n) { return Eigen::Index{1} << n; }

ComplexMatrix embed_one_qubit(const Eigen::Matrix2cd& u, int qubit, int n) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int q = 0; q < n; ++q)
    out = kron(out, q == qubit ? ComplexMatrix(u) : ComplexMatrix(identity2()));
  return out;
}

void check_qubit(int q, int n) {
  if (q < 0 || q >= n) throw std::invalid_argument("qubit index out of range");
}

}  // namespace

IsingHamiltonian IsingHamiltonian::zero(int n_qubits, double j_s) {
  return {n_qubits, Eigen::MatrixXd::Zero(n_qubits, n_qubits), 0.0, j_s};
}

MeasurementNoiseModel MeasurementNoiseModel::infinite() {
  return MeasurementNoiseModel{};
}

MeasurementNoiseModel MeasurementNoiseModel::finite(double n_meas, double g,
                                                    std::uint64_t seed) {
  if (std::isfinite(n_meas) && n_meas < 1.0)
    throw std::invalid_argument("n_meas must be >= 1");
  MeasurementNoiseModel m;
  m.n_meas = n_meas;
  m.strength = g;
  m.rng_seed = seed;
  m.rng = CounterRng(seed);
  return m;
}

ComplexMatrix gate_matrix(const GateSpec& spec, int n_qubits) {
  check_qubit(spec.target, n_qubits);
  switch (spec.kind) {
    case GateKind::RX:
      return embed_one_qubit(rx_matrix(spec.angle), spec.target, n_qubits);
    case GateKind::RZ:
      return embed_one_qubit(rz_matrix(spec.angle), spec.target, n_qubits);
    case GateKind::Hadamard:
      return embed_one_qubit(hadamard2(), spec.target, n_qubits);
    case GateKind::CNOT: {
      if (!spec.control) throw std::invalid_argument("CNOT requires a control");
      check_qubit(*spec.control, n_qubits);
      if (*spec.control == spec.target)
        throw std::invalid_argument("CNOT control equals target");
      const Eigen::Index dim = dim_of(n_qubits);
      const Eigen::Index cmask = Eigen::Index{1} << (n_qubits - 1 - *spec.control);
      const Eigen::Index tmask = Eigen::Index{1} << (n_qubits - 1 - spec.target);
      ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
      for (Eigen::Index b = 0; b < dim; ++b)
        out((b & cmask) ? (b ^ tmask) : b, b) = 1.0;
      return out;
    }
  }
  throw std::invalid_argument("unknown gate kind");
}

Eigen::Matrix4cd coupling_gate_local(double theta) {
  Eigen::Matrix4cd cx = Eigen::Matrix4cd::Zero();
  cx(0, 0) = cx(1, 1) = cx(2, 3) = cx(3, 2) = 1.0;
  Eigen::Matrix4cd rz_j = Eigen::Matrix4cd::Zero();
  {
    const Eigen::Matrix2cd rz = rz_matrix(theta);
    rz_j.block<2, 2>(0, 0) = rz;
    rz_j.block<2, 2>(2, 2) = rz;
  }
  const Eigen::Matrix2cd rx = rx_matrix(theta);
  Eigen::Matrix4cd rx_i, rx_j;
  rx_i << rx(0, 0) * Eigen::Matrix2cd::Identity(), rx(0, 1) * Eigen::Matrix2cd::Identity(),
      rx(1, 0) * Eigen::Matrix2cd::Identity(), rx(1, 1) * Eigen::Matrix2cd::Identity();
  rx_j = Eigen::Matrix4cd::Zero();
  rx_j.block<2, 2>(0, 0) = rx;
  rx_j.block<2, 2>(2, 2) = rx;
  return cx * rz_j * cx * rx_i * rx_j;
}

ComplexMatrix coupling_gate(int i, int j, double theta, int n_qubits) {
  check_qubit(i, n_qubits);
  check_qubit(j, n_qubits);
  if (i == j) throw std::invalid_argument("coupling gate needs distinct qubits");
  const ComplexMatrix cx = gate_matrix({GateKind::CNOT, j, i}, n_qubits);
  const ComplexMatrix rz_j = gate_matrix({GateKind::RZ, j, {}, theta}, n_qubits);
  const ComplexMatrix rx_i = gate_matrix({GateKind::RX, i, {}, theta}, n_qubits);
  const ComplexMatrix rx_j = gate_matrix({GateKind::RX, j, {}, theta}, n_qubits);
  return cx * rz_j * cx * rx_i * rx_j;
}

ComplexMatrix build_reservoir_unitary(const IsingHamiltonian& h, double dt) {
  const int n = h.n_qubits;
  const Eigen::Index dim = dim_of(n);
  ComplexMatrix ham = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (h.couplings(i, j) != 0.0) {
        PauliString p = PauliString::identity(n);
        p.letters[static_cast<size_t>(i)] = 'X';
        p.letters[static_cast<size_t>(j)] = 'X';
        ham += h.couplings(i, j) * pauli_matrix(p);
      }
  if (h.field != 0.0)
    for (int i = 0; i < n; ++i)
      ham += h.field * pauli_matrix(PauliString::single(n, i, 'Z'));
  return herm_expm(ham, -dt);
}

IsingHamiltonian sample_couplings(int n_qubits, double j_s, std::uint64_t seed) {
  if (j_s <= 0.0) throw std::invalid_argument("energy scale must be positive");
  CounterRng rng(seed);
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n_qubits, n_qubits);
  for (int a = 0; a < n_qubits; ++a)
    for (int b = a + 1; b < n_qubits; ++b) {
      const double v = rng.uniform(-j_s / 2.0, j_s / 2.0);
      j(a, b) = v;
      j(b, a) = v;
    }
  return {n_qubits, std::move(j), 5.0 * j_s, j_s};
}

void apply_weak_measurement_inplace(ComplexMatrix& rho, int n_qubits,
                                    const WeakMeasurementChannel& ch) {
  if (ch.strength < 0.0) throw std::invalid_argument("negative measurement strength");
  if (ch.strength == 0.0) return;
  if (ch.basis == MeasBasis::X) conjugate_hadamard_all(rho, n_qubits);
  // M(i, j) = c^{popcount(i xor j)} with c = exp(-g^2/2).
  const double c = std::exp(-ch.strength * ch.strength / 2.0);
  double att[64];
  for (int k = 0; k <= n_qubits; ++k) att[k] = std::pow(c, k);
  const Eigen::Index dim = rho.rows();
  for (Eigen::Index col = 0; col < dim; ++col) {
    Complex* p = rho.col(col).data();
    for (Eigen::Index row = 0; row < dim; ++row)
      p[row] *= att[std::popcount(static_cast<std::uint64_t>(row ^ col))];
  }
  if (ch.basis == MeasBasis::X) conjugate_hadamard_all(rho, n_qubits);
}

DensityMatrix apply_weak_measurement(const DensityMatrix& rho,
                                     const WeakMeasurementChannel& ch) {
  ComplexMatrix m = rho.matrix();
  apply_weak_measurement_inplace(m, rho.n_qubits(), ch);
  return DensityMatrix(rho.n_qubits(), std::move(m));
}

double expectation(const ComplexMatrix& rho, int n_qubits, const PauliString& obs) {
  if (obs.n_qubits != n_qubits)
    throw std::invalid_argument("observable size mismatch");
  // P has one nonzero entry per row: P(r, r ^ flip) with a +-1 / +-i phase.
  Eigen::Index flip = 0;
  for (int q = 0; q < n_qubits; ++q) {
    const char l = obs.letters[static_cast<size_t>(q)];
    if (l == 'X' || l == 'Y') flip |= Eigen::Index{1} << (n_qubits - 1 - q);
  }
  const Eigen::Index dim = rho.rows();
  Complex sum{0.0};
  for (Eigen::Index r = 0; r < dim; ++r) {
    Complex phase{1.0};
    for (int q = 0; q < n_qubits; ++q) {
      const char l = obs.letters[static_cast<size_t>(q)];
      if (l == 'I' || l == 'X') continue;
      const bool bit = (r >> (n_qubits - 1 - q)) & 1;
      if (l == 'Z') {
        if (bit) phase = -phase;
      } else {  // Y
        phase *= bit ? Complex(0, 1) : Complex(0, -1);
      }
    }
    sum += phase * rho(r ^ flip, r);
  }
  return sum.real();
}

double expectation(const DensityMatrix& rho, const PauliString& obs) {
  return expectation(rho.matrix(), rho.n_qubits(), obs);
}

double measurement_sigma(int arity, double g, double n_meas) {
  if (arity != 1 && arity != 2) throw std::invalid_argument("arity must be 1 or 2");
  if (!std::isfinite(n_meas)) return 0.0;
  if (n_meas < 1.0) throw std::invalid_argument("n_meas must be >= 1");
  if (g <= 0.0)
    throw std::invalid_argument("sigma diverges at g = 0 with finite n_meas");
  const double g2 = g * g;
  if (arity == 1) return std::sqrt((g2 + 1.0) / (g2 * n_meas));
  const double g4 = g2 * g2;
  return std::sqrt((g4 + 2.0 * g2 + 1.0) / (g4 * n_meas));
}

double noisy_expectation(double ideal, MeasurementNoiseModel& model, int arity) {
  if (model.is_infinite()) return ideal;
  const double sigma = measurement_sigma(arity, model.strength, model.n_meas);
  return ideal + sigma * model.rng.normal();
}

void apply_depolarizing_inplace(ComplexMatrix& rho, double rate) {
  if (rate < 0.0 || rate > 1.0)
    throw std::invalid_argument("depolarizing rate outside [0, 1]");
  if (rate == 0.0) return;
  const Eigen::Index dim = rho.rows();
  rho *= (1.0 - rate);
  const double fill = rate / static_cast<double>(dim);
  for (Eigen::Index i = 0; i < dim; ++i) rho(i, i) += fill;
}

DensityMatrix apply_depolarizing(const DensityMatrix& rho, double rate) {
  ComplexMatrix m = rho.matrix();
  apply_depolarizing_inplace(m, rate);
  return DensityMatrix(rho.n_qubits(), std::move(m));
}

}  // namespace qrc
