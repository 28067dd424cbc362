#include "qrc/reservoir.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qrc {

FeedbackObservable feedback_observable_from_string(const std::string& s) {
  if (s == "z") return FeedbackObservable::Z;
  if (s == "z_squared") return FeedbackObservable::ZSquared;
  if (s == "sin_z") return FeedbackObservable::SinZ;
  if (s == "x") return FeedbackObservable::X;
  if (s == "x_squared") return FeedbackObservable::XSquared;
  if (s == "sin_x") return FeedbackObservable::SinX;
  if (s == "none") return FeedbackObservable::None;
  throw std::invalid_argument("unknown feedback observable: " + s);
}

std::string to_string(FeedbackObservable kind) {
  switch (kind) {
    case FeedbackObservable::Z: return "z";
    case FeedbackObservable::ZSquared: return "z_squared";
    case FeedbackObservable::SinZ: return "sin_z";
    case FeedbackObservable::X: return "x";
    case FeedbackObservable::XSquared: return "x_squared";
    case FeedbackObservable::SinX: return "sin_x";
    case FeedbackObservable::None: return "none";
  }
  return "?";
}

namespace {

bool uses_x_source(FeedbackObservable kind) {
  return kind == FeedbackObservable::X || kind == FeedbackObservable::XSquared ||
         kind == FeedbackObservable::SinX;
}

}  // namespace

std::vector<std::pair<int, int>> default_feedback_pairing(
    const std::vector<int>& feedback_qubits) {
  std::vector<std::pair<int, int>> pairs;
  for (size_t a = 0; a < feedback_qubits.size(); ++a)
    for (size_t b = a + 1; b < feedback_qubits.size(); ++b)
      pairs.emplace_back(feedback_qubits[a], feedback_qubits[b]);
  return pairs;
}

void ReservoirConfig::validate() const {
  if (n_qubits < 2) throw std::invalid_argument("need at least two qubits");
  auto in_range = [&](int q) { return q >= 0 && q < n_qubits; };
  if (!in_range(input_qubits.first) || !in_range(input_qubits.second) ||
      input_qubits.first == input_qubits.second)
    throw std::invalid_argument("invalid input qubit pair");
  for (int q : feedback_qubits) {
    if (!in_range(q)) throw std::invalid_argument("feedback qubit out of range");
    if (q == input_qubits.first || q == input_qubits.second)
      throw std::invalid_argument("input and feedback qubits must be disjoint");
  }
  if (static_cast<int>(feedback_pairing.size()) != n_qubits)
    throw std::invalid_argument("feedback pairing must list one pair per qubit");
  auto is_feedback = [&](int q) {
    return std::find(feedback_qubits.begin(), feedback_qubits.end(), q) !=
           feedback_qubits.end();
  };
  for (const auto& [i, j] : feedback_pairing)
    if (i == j || !is_feedback(i) || !is_feedback(j))
      throw std::invalid_argument("feedback pairing entries must be distinct feedback qubits");
  if (g < 0.0) throw std::invalid_argument("negative measurement strength");
  if (hamiltonian.n_qubits != n_qubits)
    throw std::invalid_argument("hamiltonian size mismatch");
  if (depolarizing_rate < 0.0 || depolarizing_rate > 1.0)
    throw std::invalid_argument("depolarizing rate outside [0, 1]");
}

ReservoirConfig ReservoirConfig::defaults(std::uint64_t coupling_seed) {
  ReservoirConfig cfg;
  cfg.hamiltonian = sample_couplings(cfg.n_qubits, 1.0, coupling_seed);
  cfg.feedback_pairing = default_feedback_pairing(cfg.feedback_qubits);
  cfg.noise.strength = cfg.g;
  return cfg;
}

ReservoirState initial_state(const ReservoirConfig& cfg) {
  return ReservoirState{DensityMatrix::computational_zero(cfg.n_qubits),
                        std::vector<double>(static_cast<size_t>(cfg.n_qubits), 0.0),
                        0, cfg.noise};
}

DensityMatrix reset_input_qubits(const DensityMatrix& rho,
                                 const ReservoirConfig& cfg) {
  const int n = cfg.n_qubits;
  DensityMatrix reduced =
      partial_trace(rho, {cfg.input_qubits.first, cfg.input_qubits.second});
  // Re-insert |00> at the input positions, remaining bits at their slots.
  std::vector<int> rest;
  for (int q = 0; q < n; ++q)
    if (q != cfg.input_qubits.first && q != cfg.input_qubits.second)
      rest.push_back(q);
  const int nr = static_cast<int>(rest.size());
  const Eigen::Index dr = Eigen::Index{1} << nr;
  std::vector<Eigen::Index> expand(static_cast<size_t>(dr), 0);
  for (Eigen::Index a = 0; a < dr; ++a) {
    Eigen::Index full = 0;
    for (int i = 0; i < nr; ++i)
      if ((a >> (nr - 1 - i)) & 1)
        full |= Eigen::Index{1} << (n - 1 - rest[static_cast<size_t>(i)]);
    expand[static_cast<size_t>(a)] = full;
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (Eigen::Index r = 0; r < dr; ++r)
    for (Eigen::Index c = 0; c < dr; ++c)
      out(expand[static_cast<size_t>(r)], expand[static_cast<size_t>(c)]) =
          reduced.matrix()(r, c);
  return DensityMatrix(n, std::move(out));
}

double feedback_angle(double value, FeedbackObservable kind) {
  switch (kind) {
    case FeedbackObservable::Z:
    case FeedbackObservable::X:
      return value;
    case FeedbackObservable::ZSquared:
    case FeedbackObservable::XSquared:
      return value * value;
    case FeedbackObservable::SinZ:
    case FeedbackObservable::SinX:
      return std::sin(value);
    case FeedbackObservable::None:
      return 0.0;
  }
  return 0.0;
}

Reservoir::Reservoir(ReservoirConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  u_res_ = build_reservoir_unitary(cfg_.hamiltonian, cfg_.dt);
}

std::pair<ReservoirState, StepRecord> Reservoir::step(ReservoirState state,
                                                      double input) const {
  const int n = cfg_.n_qubits;

  // (a) reset input qubits
  DensityMatrix rho = reset_input_qubits(state.rho, cfg_);
  ComplexMatrix& m = rho.mutable_matrix();

  // (b) input encoding
  conjugate_two_qubit(m, n, cfg_.input_qubits.first, cfg_.input_qubits.second,
                      coupling_gate_local(cfg_.a_in * input));

  // (c) feedback gates; skipped entirely at a_fb = 0 so records stay
  // bitwise independent of the pairing and observable choice
  if (cfg_.a_fb != 0.0 && cfg_.feedback_observable != FeedbackObservable::None) {
    for (int alpha = 0; alpha < n; ++alpha) {
      const double theta =
          cfg_.a_fb * feedback_angle(state.last_feedback[static_cast<size_t>(alpha)],
                                     cfg_.feedback_observable);
      const auto& [i, j] = cfg_.feedback_pairing[static_cast<size_t>(alpha)];
      conjugate_two_qubit(m, n, i, j, coupling_gate_local(theta));
    }
  }

  // (d) unitary evolution
  ComplexMatrix tmp(m.rows(), m.cols());
  tmp.noalias() = u_res_ * m;
  m.noalias() = tmp * u_res_.adjoint();

  const double qc = offdiagonal_abs_sum(m);

  // (e) environmental noise, applied before measurement
  apply_depolarizing_inplace(m, cfg_.depolarizing_rate);

  // (f) weak measurements in both bases. Reading out two bases in one step
  // means splitting the ensemble: half the copies are measured in X, half
  // in Z. Each basis's expectation is reported by its own sub-ensemble,
  // whose channel leaves that expectation unchanged, so the recorded values
  // equal the pre-back-action expectations. The carried-forward state is
  // the equal mixture of the two branch channels; the composition is
  // basis-symmetric, so measure_x_first has no numerical effect and is
  // kept only as a configuration-compatibility flag.
  std::vector<double> xs(static_cast<size_t>(n)), zs(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    xs[static_cast<size_t>(i)] = noisy_expectation(
        expectation(m, n, PauliString::single(n, i, 'X')), state.noise, 1);
    zs[static_cast<size_t>(i)] = noisy_expectation(
        expectation(m, n, PauliString::single(n, i, 'Z')), state.noise, 1);
  }
  ComplexMatrix x_branch = m;
  apply_weak_measurement_inplace(x_branch, n, {cfg_.g, MeasBasis::X});
  apply_weak_measurement_inplace(m, n, {cfg_.g, MeasBasis::Z});
  m = 0.5 * (m + x_branch);

  StepRecord record;
  record.step_index = state.step + 1;
  record.readout.resize(static_cast<size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    record.readout[static_cast<size_t>(2 * i)] = xs[static_cast<size_t>(i)];
    record.readout[static_cast<size_t>(2 * i + 1)] = zs[static_cast<size_t>(i)];
  }
  record.feedback_values = uses_x_source(cfg_.feedback_observable) ? xs : zs;
  record.coherence = qc;

  state.rho = std::move(rho);
  state.last_feedback = record.feedback_values;
  state.step = record.step_index;
  return {std::move(state), std::move(record)};
}

std::pair<ReservoirState, StepRecord> step(ReservoirState state, double input,
                                           const ReservoirConfig& cfg) {
  return Reservoir(cfg).step(std::move(state), input);
}

std::vector<StepRecord> run_sequence(const std::vector<double>& inputs,
                                     const ReservoirConfig& cfg) {
  Reservoir reservoir(cfg);
  ReservoirState state = reservoir.make_initial_state();
  std::vector<StepRecord> records;
  records.reserve(inputs.size());
  for (double s : inputs) {
    auto [next, record] = reservoir.step(std::move(state), s);
    state = std::move(next);
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace qrc
