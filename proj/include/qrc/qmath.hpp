#pragma once

// Dense complex linear algebra and N-qubit primitives: Kronecker products,
// partial trace, Hermitian matrix exponential, and the Pauli operator basis.
//
// Index convention used everywhere in this project: qubit 0 is the leftmost
// (most significant) tensor factor, so the bit of qubit q inside a basis
// index b is (b >> (n_qubits - 1 - q)) & 1.

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qrc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdFloor = -1e-9;

/// 2^N x 2^N Hermitian, unit-trace, PSD matrix: the reservoir state.
class DensityMatrix {
 public:
  // Validates dimensions; physical validity is checked by validate().
  DensityMatrix(int n_qubits, ComplexMatrix matrix);

  static DensityMatrix computational_zero(int n_qubits);  // |0...0><0...0|
  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  ComplexMatrix& mutable_matrix() { return matrix_; }

  // Throws std::invalid_argument if Hermiticity, unit trace, or positivity
  // fail their tolerances.
  void validate() const;
  bool is_valid() const;

 private:
  int n_qubits_;
  ComplexMatrix matrix_;
};

/// Tensor product over {I, X, Y, Z}, e.g. "ZIX" on three qubits.
struct PauliString {
  int n_qubits = 0;
  std::string letters;  // length n_qubits

  PauliString(int n, std::string l);
  static PauliString identity(int n);
  // Single-letter string: `letter` at `qubit`, identity elsewhere.
  static PauliString single(int n, int qubit, char letter);
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Traces out `traced_qubits` (0-based); the remaining qubits keep their
// relative order. The set must be a nonempty proper subset.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& traced_qubits);

// exp(i * scale * h) for Hermitian h, via spectral decomposition.
// Throws std::invalid_argument if h is not Hermitian within 1e-10.
ComplexMatrix herm_expm(const ComplexMatrix& h, double scale);

ComplexMatrix pauli_matrix(const PauliString& p);

// a_i = Tr[P_i rho] for all 4^N strings; N <= 4 enforced.
std::map<std::string, double> pauli_coefficients(const DensityMatrix& rho);

double min_eigenvalue_hermitian(const ComplexMatrix& m);

// Sum of |m_ij| over i != j.
double offdiagonal_abs_sum(const ComplexMatrix& m);

// Fixed 2x2 building blocks.
const Eigen::Matrix2cd& pauli_x();
const Eigen::Matrix2cd& pauli_y();
const Eigen::Matrix2cd& pauli_z();
const Eigen::Matrix2cd& identity2();
const Eigen::Matrix2cd& hadamard2();
Eigen::Matrix2cd rx_matrix(double theta);  // exp(-i theta X / 2)
Eigen::Matrix2cd rz_matrix(double theta);  // exp(-i theta Z / 2)

// In-place conjugation rho := U rho U^dag for a gate acting on one or two
// qubits. These exploit the tensor structure instead of forming the full
// 2^N embedding; the tests cross-check them against full-matrix products.
void conjugate_one_qubit(ComplexMatrix& rho, int n_qubits, int qubit,
                         const Eigen::Matrix2cd& u);
// u is 4x4 in the basis |bit(qa) bit(qb)> with qa's bit more significant.
void conjugate_two_qubit(ComplexMatrix& rho, int n_qubits, int qa, int qb,
                         const Eigen::Matrix4cd& u);
// rho := H^{otimes N} rho H^{otimes N}.
void conjugate_hadamard_all(ComplexMatrix& rho, int n_qubits);

}  // namespace qrc
