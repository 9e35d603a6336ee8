#pragma once

#include <vector>

#include "eacomm/linalg.hpp"

namespace eacomm {

// Real 3-vector on (or inside) the Bloch sphere.
struct BlochVector {
  double x = 0, y = 0, z = 0;
  double norm() const;
};

BlochVector operator+(const BlochVector& a, const BlochVector& b);
BlochVector operator-(const BlochVector& a, const BlochVector& b);
BlochVector operator*(double s, const BlochVector& v);
double dot(const BlochVector& a, const BlochVector& b);

// Density operator on a tensor product of subsystems. Hermitian, PSD and
// unit trace within kStructTol; the product of dims equals the matrix size.
struct DensityState {
  Cmat matrix;
  std::vector<int> dims;

  int dim() const { return static_cast<int>(matrix.rows()); }
  void validate() const;  // throws invariant_error
};

DensityState pure_state(const Cvec& ket, std::vector<int> dims);

// Positive-operator-valued measure: Hermitian PSD elements summing to identity.
struct Povm {
  std::vector<Cmat> elements;

  int dim() const { return elements.empty() ? 0 : static_cast<int>(elements[0].rows()); }
  int num_outcomes() const { return static_cast<int>(elements.size()); }
  void validate() const;
  // Worst structural violation (negative eigenvalue, hermiticity or
  // completeness defect), for diagnostics.
  double max_violation() const;
};

// Completely positive trace-preserving map in Kraus form, in_dim -> out_dim.
struct KrausChannel {
  std::vector<Cmat> kraus;

  int in_dim() const { return kraus.empty() ? 0 : static_cast<int>(kraus[0].cols()); }
  int out_dim() const { return kraus.empty() ? 0 : static_cast<int>(kraus[0].rows()); }
  void validate() const;
  Cmat apply(const Cmat& rho) const;
};

// Reduced state on the subsystems listed in `keep` (indices into state.dims,
// strictly increasing order is not required; output factors keep their
// original order).
DensityState partial_trace(const DensityState& state, const std::vector<int>& keep);

// rho = (1 + n.sigma)/2. Requires |n| <= 1.
DensityState qubit_from_bloch(const BlochVector& n);

// (weight*1 + v.sigma)/2; PSD iff |v| <= weight, else throws.
Cmat povm_element_from_bloch(double weight, const BlochVector& v);

// Two-outcome projective measurement of the observable d.sigma for a unit
// direction d; outcome order (+1, -1).
Povm observable_povm(const BlochVector& direction);

// |phi+> = (|00> + |11>)/sqrt(2) as a density state with dims [2,2].
DensityState bell_phi_plus();

// (Z^x1 X^x2 x 1)|phi+>, the Bell basis indexed by two bits.
Cvec bell_ket(int x1, int x2);

}  // namespace eacomm
