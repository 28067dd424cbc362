#include "qrc/analysis.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace qrc {

double coherence(const DensityMatrix& rho) {
  return offdiagonal_abs_sum(rho.matrix());
}

std::vector<MetricReport> coherence_sweep(const ReservoirConfig& cfg,
                                          const std::vector<double>& a_fb_values,
                                          const std::vector<std::uint64_t>& seeds,
                                          int steps, int discard) {
  if (a_fb_values.empty()) throw std::invalid_argument("empty a_fb grid");
  if (seeds.empty()) throw std::invalid_argument("empty seed list");
  if (discard >= steps) throw std::invalid_argument("discard exceeds run length");
  std::vector<MetricReport> rows;
  for (double a_fb : a_fb_values) {
    for (size_t si = 0; si < seeds.size(); ++si) {
      ReservoirConfig run_cfg = cfg;
      run_cfg.a_fb = a_fb;
      run_cfg.hamiltonian =
          sample_couplings(cfg.n_qubits, cfg.hamiltonian.energy_scale,
                           derive_stream(seeds[si], kCouplingStream));
      run_cfg.noise.strength = cfg.g;
      run_cfg.noise.rng_seed = derive_stream(seeds[si], kNoiseStream);
      run_cfg.noise.rng = CounterRng(run_cfg.noise.rng_seed);
      CounterRng input_rng(derive_stream(seeds[si], kInputStream));
      std::vector<double> inputs(static_cast<size_t>(steps));
      for (double& s : inputs) s = input_rng.uniform();
      const auto records = run_sequence(inputs, run_cfg);
      double qc = 0.0;
      for (size_t k = static_cast<size_t>(discard); k < records.size(); ++k)
        qc += records[k].coherence;
      qc /= static_cast<double>(steps - discard);
      MetricReport r;
      r.task = "coherence";
      r.n_or_tau = "QC";
      r.a_in = cfg.a_in;
      r.a_fb = a_fb;
      r.g = cfg.g;
      r.n_meas = cfg.noise.n_meas;
      r.gamma = cfg.depolarizing_rate;
      r.feedback_observable = to_string(cfg.feedback_observable);
      r.seed = std::to_string(si);
      r.value = qc;
      rows.push_back(std::move(r));
    }
  }
  return aggregate_over_seeds(rows);
}

DistributionExport project_readouts(const Eigen::MatrixXd& readouts) {
  DistributionExport out;
  out.readouts = readouts;
  const Eigen::Index rows = readouts.rows();
  const Eigen::MatrixXd centered = readouts.rowwise() - readouts.colwise().mean();
  const Eigen::MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(rows);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  const Eigen::VectorXd& lam = es.eigenvalues();  // ascending
  const double total = lam.sum();
  if (total < 1e-12) {
    out.degenerate = true;
    return out;
  }
  out.effective_rank = total * total / lam.squaredNorm();
  const Eigen::Index d = lam.size();
  out.captured_variance = (lam(d - 1) + lam(d - 2)) / total;
  Eigen::MatrixXd axes(readouts.cols(), 2);
  axes.col(0) = es.eigenvectors().col(d - 1);
  axes.col(1) = es.eigenvectors().col(d - 2);
  Eigen::MatrixXd proj = centered * axes;
  for (Eigen::Index c = 0; c < 2; ++c) {
    const double lo = proj.col(c).minCoeff(), hi = proj.col(c).maxCoeff();
    if (hi > lo)
      proj.col(c) = (proj.col(c).array() - lo) / (hi - lo);
    else
      proj.col(c).setZero();
  }
  out.projection = std::move(proj);
  return out;
}

DistributionExport export_distribution(const ReservoirConfig& cfg,
                                       std::ostream& out, int length,
                                       int discard, std::uint64_t input_seed) {
  if (discard >= length) throw std::invalid_argument("discard exceeds run length");
  ReservoirConfig run_cfg = cfg;
  if (run_cfg.hamiltonian.couplings.isZero())
    run_cfg.hamiltonian = sample_couplings(
        cfg.n_qubits, cfg.hamiltonian.energy_scale,
        derive_stream(input_seed, kCouplingStream));
  CounterRng input_rng(derive_stream(input_seed, kInputStream));
  std::vector<double> inputs(static_cast<size_t>(length));
  for (double& s : inputs) s = input_rng.uniform();
  const auto records = run_sequence(inputs, run_cfg);
  const Eigen::MatrixXd all = feature_matrix(records);
  const Eigen::MatrixXd kept = all.bottomRows(all.rows() - discard);
  DistributionExport result = project_readouts(kept);

  const int n = cfg.n_qubits;
  for (int i = 1; i <= n; ++i) out << "x_" << i << ",z_" << i << (i < n ? "," : "");
  if (!result.degenerate) out << ",p1,p2";
  out << '\n';
  for (Eigen::Index r = 0; r < kept.rows(); ++r) {
    for (Eigen::Index c = 0; c < kept.cols(); ++c)
      out << kept(r, c) << (c + 1 < kept.cols() ? "," : "");
    if (!result.degenerate)
      out << ',' << result.projection(r, 0) << ',' << result.projection(r, 1);
    out << '\n';
  }
  return result;
}

FeedbackTransformCase make_feedback_case(const PauliString& target,
                                         int feedback_qubit, double angle) {
  if (feedback_qubit < 0 || feedback_qubit >= target.n_qubits)
    throw std::invalid_argument("feedback qubit out of range");
  PauliString partner = target;
  char& letter = partner.letters[static_cast<size_t>(feedback_qubit)];
  if (letter == 'X')
    letter = 'Y';
  else if (letter == 'Y')
    letter = 'X';
  return FeedbackTransformCase{target, partner, feedback_qubit, angle};
}

double feedback_transform_predict(const FeedbackTransformCase& c, double a_i,
                                  double a_k) {
  const char letter = c.target.letters[static_cast<size_t>(c.feedback_qubit)];
  switch (letter) {
    case 'X':
      return a_i * std::cos(c.angle) - a_k * std::sin(c.angle);
    case 'Y':
      return a_i * std::cos(c.angle) + a_k * std::sin(c.angle);
    default:  // Z or I commute with RZ
      return a_i;
  }
}

DensityMatrix random_density_matrix(int n_qubits, CounterRng& rng) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  ComplexMatrix a(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    for (Eigen::Index r = 0; r < dim; ++r)
      a(r, c) = Complex(rng.normal(), rng.normal());
  ComplexMatrix rho = a * a.adjoint();
  rho /= rho.trace();
  return DensityMatrix(n_qubits, std::move(rho));
}

FeedbackVerifyReport feedback_transform_verify(int n_qubits, int trials,
                                               std::uint64_t seed) {
  if (n_qubits < 1 || n_qubits > 3)
    throw std::invalid_argument("verification enumerates all strings; N <= 3");
  CounterRng rng(seed);
  FeedbackVerifyReport report;
  report.n_qubits = n_qubits;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const DensityMatrix rho = random_density_matrix(n_qubits, rng);
    const int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n_qubits));
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const ComplexMatrix u = gate_matrix({GateKind::RZ, j, {}, theta}, n_qubits);
    const DensityMatrix rho_after(n_qubits, u * rho.matrix() * u.adjoint());
    const auto before = pauli_coefficients(rho);
    const auto after = pauli_coefficients(rho_after);
    for (const auto& [letters, b_actual] : after) {
      const auto c = make_feedback_case(PauliString(n_qubits, letters), j, theta);
      const double predicted = feedback_transform_predict(
          c, before.at(c.target.letters), before.at(c.partner.letters));
      report.max_deviation =
          std::max(report.max_deviation, std::abs(b_actual - predicted));
    }
  }
  report.passed = report.max_deviation < 1e-12;
  return report;
}

}  // namespace qrc
