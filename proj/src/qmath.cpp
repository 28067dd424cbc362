#include "qrc/qmath.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qrc {

namespace {

Eigen::Index dim_of(int n_qubits) { return Eigen::Index{1} << n_qubits; }

}  // namespace

DensityMatrix::DensityMatrix(int n_qubits, ComplexMatrix matrix)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
  if (n_qubits < 0) throw std::invalid_argument("negative qubit count");
  const Eigen::Index d = dim_of(n_qubits);
  if (matrix_.rows() != d || matrix_.cols() != d)
    throw std::invalid_argument("density matrix dimension mismatch");
}

DensityMatrix DensityMatrix::computational_zero(int n_qubits) {
  ComplexMatrix m = ComplexMatrix::Zero(dim_of(n_qubits), dim_of(n_qubits));
  m(0, 0) = 1.0;
  return DensityMatrix(n_qubits, std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  const Eigen::Index d = dim_of(n_qubits);
  ComplexMatrix m = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  return DensityMatrix(n_qubits, std::move(m));
}

void DensityMatrix::validate() const {
  const double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm >= kHermitianTol)
    throw std::invalid_argument("density matrix not Hermitian");
  if (std::abs(matrix_.trace() - Complex{1.0}) >= kTraceTol)
    throw std::invalid_argument("density matrix trace differs from 1");
  if (min_eigenvalue_hermitian(matrix_) <= kPsdFloor)
    throw std::invalid_argument("density matrix not positive semidefinite");
}

bool DensityMatrix::is_valid() const {
  try {
    validate();
  } catch (const std::invalid_argument&) {
    return false;
  }
  return true;
}

PauliString::PauliString(int n, std::string l) : n_qubits(n), letters(std::move(l)) {
  if (static_cast<int>(letters.size()) != n)
    throw std::invalid_argument("pauli string length mismatch");
  for (char c : letters)
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
      throw std::invalid_argument("pauli letter must be one of I, X, Y, Z");
}

PauliString PauliString::identity(int n) {
  return PauliString(n, std::string(static_cast<size_t>(n), 'I'));
}

PauliString PauliString::single(int n, int qubit, char letter) {
  if (qubit < 0 || qubit >= n) throw std::invalid_argument("qubit out of range");
  std::string s(static_cast<size_t>(n), 'I');
  s[static_cast<size_t>(qubit)] = letter;
  return PauliString(n, std::move(s));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& traced_qubits) {
  const int n = rho.n_qubits();
  std::vector<bool> traced(static_cast<size_t>(n), false);
  for (int q : traced_qubits) {
    if (q < 0 || q >= n) throw std::invalid_argument("traced qubit out of range");
    if (traced[static_cast<size_t>(q)])
      throw std::invalid_argument("duplicate traced qubit");
    traced[static_cast<size_t>(q)] = true;
  }
  const int nt = static_cast<int>(traced_qubits.size());
  if (nt == 0) throw std::invalid_argument("traced set is empty");
  if (nt == n) throw std::invalid_argument("traced set is the full system");

  std::vector<int> kept;
  for (int q = 0; q < n; ++q)
    if (!traced[static_cast<size_t>(q)]) kept.push_back(q);
  const int nk = static_cast<int>(kept.size());

  // Map reduced / traced bit patterns onto full-index contributions.
  const Eigen::Index dk = dim_of(nk), dt = dim_of(nt);
  std::vector<Eigen::Index> kept_part(static_cast<size_t>(dk), 0);
  std::vector<Eigen::Index> traced_part(static_cast<size_t>(dt), 0);
  for (Eigen::Index a = 0; a < dk; ++a) {
    Eigen::Index full = 0;
    for (int i = 0; i < nk; ++i)
      if ((a >> (nk - 1 - i)) & 1) full |= Eigen::Index{1} << (n - 1 - kept[static_cast<size_t>(i)]);
    kept_part[static_cast<size_t>(a)] = full;
  }
  {
    std::vector<int> tq;
    for (int q = 0; q < n; ++q)
      if (traced[static_cast<size_t>(q)]) tq.push_back(q);
    for (Eigen::Index t = 0; t < dt; ++t) {
      Eigen::Index full = 0;
      for (int i = 0; i < nt; ++i)
        if ((t >> (nt - 1 - i)) & 1) full |= Eigen::Index{1} << (n - 1 - tq[static_cast<size_t>(i)]);
      traced_part[static_cast<size_t>(t)] = full;
    }
  }

  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index r = 0; r < dk; ++r)
    for (Eigen::Index c = 0; c < dk; ++c) {
      Complex sum{0.0};
      for (Eigen::Index t = 0; t < dt; ++t)
        sum += m(kept_part[static_cast<size_t>(r)] | traced_part[static_cast<size_t>(t)],
                 kept_part[static_cast<size_t>(c)] | traced_part[static_cast<size_t>(t)]);
      out(r, c) = sum;
    }
  return DensityMatrix(nk, std::move(out));
}

ComplexMatrix herm_expm(const ComplexMatrix& h, double scale) {
  if (h.rows() != h.cols()) throw std::invalid_argument("herm_expm: not square");
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() >= 1e-10)
    throw std::invalid_argument("herm_expm: input not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const Eigen::VectorXd& lam = es.eigenvalues();
  Eigen::VectorXcd phases(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    phases(i) = std::exp(Complex(0.0, scale * lam(i)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix pauli_matrix(const PauliString& p) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (char c : p.letters) {
    switch (c) {
      case 'I': out = kron(out, identity2()); break;
      case 'X': out = kron(out, pauli_x()); break;
      case 'Y': out = kron(out, pauli_y()); break;
      case 'Z': out = kron(out, pauli_z()); break;
    }
  }
  return out;
}

std::map<std::string, double> pauli_coefficients(const DensityMatrix& rho) {
  const int n = rho.n_qubits();
  if (n > 4)
    throw std::invalid_argument("pauli_coefficients limited to 4 qubits");
  static const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  std::map<std::string, double> coeffs;
  const Eigen::Index count = Eigen::Index{1} << (2 * n);
  for (Eigen::Index code = 0; code < count; ++code) {
    std::string letters(static_cast<size_t>(n), 'I');
    Eigen::Index c = code;
    for (int q = n - 1; q >= 0; --q) {
      letters[static_cast<size_t>(q)] = kLetters[c & 3];
      c >>= 2;
    }
    PauliString p(n, letters);
    coeffs[p.letters] = (pauli_matrix(p) * rho.matrix()).trace().real();
  }
  return coeffs;
}

double min_eigenvalue_hermitian(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double offdiagonal_abs_sum(const ComplexMatrix& m) {
  double sum = 0.0;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (r != c) sum += std::abs(m(r, c));
  return sum;
}

const Eigen::Matrix2cd& pauli_x() {
  static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
  return m;
}

const Eigen::Matrix2cd& pauli_y() {
  static const Eigen::Matrix2cd m =
      (Eigen::Matrix2cd() << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  return m;
}

const Eigen::Matrix2cd& pauli_z() {
  static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
  return m;
}

const Eigen::Matrix2cd& identity2() {
  static const Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  return m;
}

const Eigen::Matrix2cd& hadamard2() {
  static const Eigen::Matrix2cd m =
      (Eigen::Matrix2cd() << 1, 1, 1, -1).finished() / std::sqrt(2.0);
  return m;
}

Eigen::Matrix2cd rx_matrix(double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  Eigen::Matrix2cd m;
  m << Complex(c, 0), Complex(0, -s), Complex(0, -s), Complex(c, 0);
  return m;
}

Eigen::Matrix2cd rz_matrix(double theta) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::exp(Complex(0, -theta / 2.0));
  m(1, 1) = std::exp(Complex(0, theta / 2.0));
  return m;
}

void conjugate_one_qubit(ComplexMatrix& rho, int n_qubits, int qubit,
                         const Eigen::Matrix2cd& u) {
  if (qubit < 0 || qubit >= n_qubits)
    throw std::invalid_argument("qubit out of range");
  const Eigen::Index dim = rho.rows();
  const Eigen::Index mask = Eigen::Index{1} << (n_qubits - 1 - qubit);
  const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  // rho := u rho
  for (Eigen::Index col = 0; col < dim; ++col) {
    Complex* p = rho.col(col).data();
    for (Eigen::Index base = 0; base < dim; ++base) {
      if (base & mask) continue;
      const Complex v0 = p[base], v1 = p[base | mask];
      p[base] = u00 * v0 + u01 * v1;
      p[base | mask] = u10 * v0 + u11 * v1;
    }
  }
  // rho := rho u^dag
  const Complex c00 = std::conj(u00), c01 = std::conj(u01);
  const Complex c10 = std::conj(u10), c11 = std::conj(u11);
  for (Eigen::Index base = 0; base < dim; ++base) {
    if (base & mask) continue;
    for (Eigen::Index row = 0; row < dim; ++row) {
      const Complex v0 = rho(row, base), v1 = rho(row, base | mask);
      rho(row, base) = v0 * c00 + v1 * c01;
      rho(row, base | mask) = v0 * c10 + v1 * c11;
    }
  }
}

void conjugate_two_qubit(ComplexMatrix& rho, int n_qubits, int qa, int qb,
                         const Eigen::Matrix4cd& u) {
  if (qa == qb) throw std::invalid_argument("two-qubit gate needs distinct qubits");
  if (qa < 0 || qa >= n_qubits || qb < 0 || qb >= n_qubits)
    throw std::invalid_argument("qubit out of range");
  const Eigen::Index dim = rho.rows();
  const Eigen::Index ma = Eigen::Index{1} << (n_qubits - 1 - qa);
  const Eigen::Index mb = Eigen::Index{1} << (n_qubits - 1 - qb);
  const Eigen::Index both = ma | mb;
  Eigen::Index idx[4];
  Complex v[4], w[4];
  // rho := u rho
  for (Eigen::Index col = 0; col < dim; ++col) {
    Complex* p = rho.col(col).data();
    for (Eigen::Index base = 0; base < dim; ++base) {
      if (base & both) continue;
      idx[0] = base;
      idx[1] = base | mb;
      idx[2] = base | ma;
      idx[3] = base | both;
      for (int i = 0; i < 4; ++i) v[i] = p[idx[i]];
      for (int i = 0; i < 4; ++i)
        w[i] = u(i, 0) * v[0] + u(i, 1) * v[1] + u(i, 2) * v[2] + u(i, 3) * v[3];
      for (int i = 0; i < 4; ++i) p[idx[i]] = w[i];
    }
  }
  // rho := rho u^dag
  for (Eigen::Index base = 0; base < dim; ++base) {
    if (base & both) continue;
    idx[0] = base;
    idx[1] = base | mb;
    idx[2] = base | ma;
    idx[3] = base | both;
    for (Eigen::Index row = 0; row < dim; ++row) {
      for (int i = 0; i < 4; ++i) v[i] = rho(row, idx[i]);
      for (int i = 0; i < 4; ++i)
        w[i] = v[0] * std::conj(u(i, 0)) + v[1] * std::conj(u(i, 1)) +
               v[2] * std::conj(u(i, 2)) + v[3] * std::conj(u(i, 3));
      for (int i = 0; i < 4; ++i) rho(row, idx[i]) = w[i];
    }
  }
}

void conjugate_hadamard_all(ComplexMatrix& rho, int n_qubits) {
  const Eigen::Index dim = rho.rows();
  const double inv_s2 = 1.0 / std::sqrt(2.0);
  for (int q = 0; q < n_qubits; ++q) {
    const Eigen::Index mask = Eigen::Index{1} << (n_qubits - 1 - q);
    for (Eigen::Index col = 0; col < dim; ++col) {
      Complex* p = rho.col(col).data();
      for (Eigen::Index base = 0; base < dim; ++base) {
        if (base & mask) continue;
        const Complex v0 = p[base], v1 = p[base | mask];
        p[base] = (v0 + v1) * inv_s2;
        p[base | mask] = (v0 - v1) * inv_s2;
      }
    }
  }
  for (int q = 0; q < n_qubits; ++q) {
    const Eigen::Index mask = Eigen::Index{1} << (n_qubits - 1 - q);
    for (Eigen::Index base = 0; base < dim; ++base) {
      if (base & mask) continue;
      for (Eigen::Index row = 0; row < dim; ++row) {
        const Complex v0 = rho(row, base), v1 = rho(row, base | mask);
        rho(row, base) = (v0 + v1) * inv_s2;
        rho(row, base | mask) = (v0 - v1) * inv_s2;
      }
    }
  }
}

}  // namespace qrc
