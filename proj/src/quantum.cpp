#include "eacomm/quantum.hpp"

#include <cmath>
#include <numeric>

namespace eacomm {

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochVector operator+(const BlochVector& a, const BlochVector& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}
BlochVector operator-(const BlochVector& a, const BlochVector& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
BlochVector operator*(double s, const BlochVector& v) { return {s * v.x, s * v.y, s * v.z}; }
double dot(const BlochVector& a, const BlochVector& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

void DensityState::validate() const {
  if (matrix.rows() != matrix.cols()) throw invariant_error("state matrix not square", 0);
  long long prod = 1;
  for (int d : dims) prod *= d;
  if (prod != matrix.rows())
    throw invariant_error("product of dims does not match matrix dimension",
                          static_cast<double>(prod - matrix.rows()));
  double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kStructTol) throw invariant_error("state not Hermitian", herm);
  double mineig = min_eigenvalue(matrix);
  if (mineig < -kStructTol) throw invariant_error("state not PSD", -mineig);
  double trdef = std::abs(matrix.trace().real() - 1.0) + std::abs(matrix.trace().imag());
  if (trdef > kStructTol) throw invariant_error("state trace != 1", trdef);
}

DensityState pure_state(const Cvec& ket, std::vector<int> dims) {
  Cvec v = ket / ket.norm();
  return DensityState{v * v.adjoint(), std::move(dims)};
}

double Povm::max_violation() const {
  if (elements.empty()) return 1.0;
  double worst = 0.0;
  Cmat sum = Cmat::Zero(dim(), dim());
  for (const auto& e : elements) {
    worst = std::max(worst, (e - e.adjoint()).cwiseAbs().maxCoeff());
    worst = std::max(worst, -std::min(0.0, min_eigenvalue(e)));
    sum += e;
  }
  worst = std::max(worst, (sum - Cmat::Identity(dim(), dim())).cwiseAbs().maxCoeff());
  return worst;
}

void Povm::validate() const {
  double v = max_violation();
  if (v > kStructTol) throw invariant_error("invalid POVM", v);
}

void KrausChannel::validate() const {
  if (kraus.empty()) throw invariant_error("channel has no Kraus operators", 1.0);
  Cmat sum = Cmat::Zero(in_dim(), in_dim());
  for (const auto& k : kraus) {
    if (k.rows() != out_dim() || k.cols() != in_dim())
      throw invariant_error("Kraus operator shape mismatch", 1.0);
    sum += k.adjoint() * k;
  }
  double defect = (sum - Cmat::Identity(in_dim(), in_dim())).cwiseAbs().maxCoeff();
  if (defect > kStructTol) throw invariant_error("channel not trace preserving", defect);
}

Cmat KrausChannel::apply(const Cmat& rho) const {
  Cmat out = Cmat::Zero(out_dim(), out_dim());
  for (const auto& k : kraus) out += k * rho * k.adjoint();
  return out;
}

DensityState partial_trace(const DensityState& state, const std::vector<int>& keep) {
  const int ns = static_cast<int>(state.dims.size());
  std::vector<bool> kept(ns, false);
  for (int s : keep) {
    if (s < 0 || s >= ns) throw std::invalid_argument("partial_trace: bad subsystem index");
    if (kept[s]) throw std::invalid_argument("partial_trace: repeated subsystem index");
    kept[s] = true;
  }
  std::vector<int> keep_sorted, traced;
  for (int s = 0; s < ns; ++s) (kept[s] ? keep_sorted : traced).push_back(s);

  int dkeep = 1, dtrace = 1;
  std::vector<int> out_dims;
  for (int s : keep_sorted) {
    dkeep *= state.dims[s];
    out_dims.push_back(state.dims[s]);
  }
  for (int s : traced) dtrace *= state.dims[s];

  // Strides of each subsystem in the row-major composite index.
  std::vector<long long> stride(ns, 1);
  for (int s = ns - 2; s >= 0; --s) stride[s] = stride[s + 1] * state.dims[s + 1];

  auto composite = [&](const std::vector<int>& kidx, const std::vector<int>& tidx) {
    long long idx = 0;
    for (size_t a = 0; a < keep_sorted.size(); ++a) idx += kidx[a] * stride[keep_sorted[a]];
    for (size_t a = 0; a < traced.size(); ++a) idx += tidx[a] * stride[traced[a]];
    return idx;
  };

  auto next = [](std::vector<int>& idx, const std::vector<int>& dims_of) {
    for (int a = static_cast<int>(idx.size()) - 1; a >= 0; --a) {
      if (++idx[a] < dims_of[a]) return true;
      idx[a] = 0;
    }
    return false;
  };

  std::vector<int> kdims, tdims;
  for (int s : keep_sorted) kdims.push_back(state.dims[s]);
  for (int s : traced) tdims.push_back(state.dims[s]);

  Cmat out = Cmat::Zero(dkeep, dkeep);
  std::vector<int> ki(keep_sorted.size(), 0);
  int row = 0;
  do {
    std::vector<int> kj(keep_sorted.size(), 0);
    int col = 0;
    do {
      cx acc = 0;
      std::vector<int> ti(traced.size(), 0);
      if (traced.empty()) {
        acc = state.matrix(composite(ki, {}), composite(kj, {}));
      } else {
        do {
          acc += state.matrix(composite(ki, ti), composite(kj, ti));
        } while (next(ti, tdims));
      }
      out(row, col) = acc;
      ++col;
    } while (next(kj, kdims));
    ++row;
  } while (next(ki, kdims));

  return DensityState{std::move(out), std::move(out_dims)};
}

static Cmat bloch_operator(double weight, const BlochVector& v) {
  return 0.5 * (weight * Cmat::Identity(2, 2) + v.x * pauli_x() + v.y * pauli_y() + v.z * pauli_z());
}

DensityState qubit_from_bloch(const BlochVector& n) {
  if (n.norm() > 1.0 + kStructTol)
    throw invariant_error("Bloch vector outside the sphere", n.norm() - 1.0);
  return DensityState{bloch_operator(1.0, n), {2}};
}

Cmat povm_element_from_bloch(double weight, const BlochVector& v) {
  if (v.norm() > weight + kStructTol)
    throw invariant_error("POVM element not PSD: |v| > weight", v.norm() - weight);
  return bloch_operator(weight, v);
}

Povm observable_povm(const BlochVector& direction) {
  if (std::abs(direction.norm() - 1.0) > kStructTol)
    throw invariant_error("observable direction must be a unit vector",
                          std::abs(direction.norm() - 1.0));
  return Povm{{bloch_operator(1.0, direction), bloch_operator(1.0, -1.0 * direction)}};
}

DensityState bell_phi_plus() { return pure_state(bell_ket(0, 0), {2, 2}); }

Cvec bell_ket(int x1, int x2) {
  Cvec phi = Cvec::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  Cmat u = Cmat::Identity(2, 2);
  if (x2) u = pauli_x() * u;
  if (x1) u = pauli_z() * u;
  return kron(u, Cmat::Identity(2, 2)) * phi;
}

}  // namespace eacomm
