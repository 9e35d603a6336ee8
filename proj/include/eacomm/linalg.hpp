#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace eacomm {

using cx = std::complex<double>;
using Cmat = Eigen::MatrixXcd;
using Cvec = Eigen::VectorXcd;

// Structural invariants (hermiticity, PSD, trace, completeness) are checked
// at 1e-10; behavioral equalities at 1e-9 unless an operation says otherwise.
constexpr double kStructTol = 1e-10;
constexpr double kBehaviorTol = 1e-9;

// Thrown when a quantum object fails a structural invariant. Carries the
// magnitude of the worst violation so callers can report it.
class invariant_error : public std::runtime_error {
public:
  invariant_error(const std::string& what, double violation)
      : std::runtime_error(what + " (max violation " + std::to_string(violation) + ")"),
        violation_(violation) {}
  double violation() const { return violation_; }

private:
  double violation_;
};

bool is_hermitian(const Cmat& m, double tol = kStructTol);
bool is_psd(const Cmat& m, double tol = kStructTol);
bool is_unitary(const Cmat& m, double tol = kStructTol);

// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Cmat& m);

// Operator norm (largest singular value).
double operator_norm(const Cmat& m);

// Hermitian principal square root.
Cmat hermitian_sqrt(const Cmat& m);

// Kronecker product, row-major convention: (A kron B)[(i*p+k),(j*q+l)] = A(i,j)B(k,l).
Cmat kron(const Cmat& a, const Cmat& b);

Cmat identity(int dim);

// Pauli matrices in the computational basis.
const Cmat& pauli_x();
const Cmat& pauli_y();
const Cmat& pauli_z();

}  // namespace eacomm
