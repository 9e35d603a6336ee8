#include "eacomm/linalg.hpp"

namespace eacomm {

bool is_hermitian(const Cmat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_psd(const Cmat& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  return min_eigenvalue(m) >= -tol;
}

bool is_unitary(const Cmat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  Cmat d = m.adjoint() * m - Cmat::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const Cmat& m) {
  Eigen::SelfAdjointEigenSolver<Cmat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double operator_norm(const Cmat& m) {
  if (m.size() == 0) return 0.0;
  return m.jacobiSvd().singularValues().maxCoeff();
}

Cmat hermitian_sqrt(const Cmat& m) {
  Eigen::SelfAdjointEigenSolver<Cmat> es(0.5 * (m + m.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

Cmat kron(const Cmat& a, const Cmat& b) {
  Cmat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Cmat identity(int dim) { return Cmat::Identity(dim, dim); }

const Cmat& pauli_x() {
  static const Cmat m = (Cmat(2, 2) << 0, 1, 1, 0).finished();
  return m;
}

const Cmat& pauli_y() {
  static const Cmat m = (Cmat(2, 2) << 0, cx(0, -1), cx(0, 1), 0).finished();
  return m;
}

const Cmat& pauli_z() {
  static const Cmat m = (Cmat(2, 2) << 1, 0, 0, -1).finished();
  return m;
}

}  // namespace eacomm
