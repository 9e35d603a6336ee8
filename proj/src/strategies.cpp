#include "eacomm/strategies.hpp"

#include <cmath>
#include <stdexcept>

namespace eacomm {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt5 = std::sqrt(5.0);

Povm binary_povm_along(const BlochVector& d) { return observable_povm(d); }

// Sign of the sender observable components for input bits (x1, x2):
// (-1)^{x1} cos(theta) Z + (-1)^{x2} sin(theta) X.
BlochVector sender_direction(int x1, int x2, double theta) {
  return {(x2 ? -1.0 : 1.0) * std::sin(theta), 0.0, (x1 ? -1.0 : 1.0) * std::cos(theta)};
}

Povm zero_padded(std::vector<Cmat> elements, int target) {
  int dim = static_cast<int>(elements[0].rows());
  while (static_cast<int>(elements.size()) < target) elements.push_back(Cmat::Zero(dim, dim));
  return Povm{std::move(elements)};
}

}  // namespace

int QubitPmData::B() const {
  int b = 0;
  for (const auto& povm : povms) b = std::max(b, static_cast<int>(povm.size()));
  return b;
}

void QubitPmData::validate() const {
  for (const auto& n : states)
    if (std::abs(n.norm() - 1.0) > kStructTol)
      throw invariant_error("state Bloch vector not unit", std::abs(n.norm() - 1.0));
  for (const auto& povm : povms) {
    double wsum = 0;
    BlochVector vsum{0, 0, 0};
    for (const auto& [w, v] : povm) {
      if (v.norm() > w + kStructTol)
        throw invariant_error("POVM element not PSD: |v| > weight", v.norm() - w);
      wsum += w;
      vsum = vsum + v;
    }
    if (std::abs(wsum - 2.0) > kStructTol)
      throw invariant_error("POVM weights do not sum to 2", std::abs(wsum - 2.0));
    if (vsum.norm() > kStructTol)
      throw invariant_error("POVM vectors do not sum to 0", vsum.norm());
  }
}

Behavior born_behavior(const QubitPmData& pm) {
  Behavior out(pm.X(), pm.Y(), pm.B());
  for (int x = 0; x < pm.X(); ++x)
    for (int y = 0; y < pm.Y(); ++y)
      for (size_t b = 0; b < pm.povms[y].size(); ++b) {
        const auto& [w, v] = pm.povms[y][b];
        out.at(x, y, static_cast<int>(b)) = 0.5 * (w + dot(pm.states[x], v));
      }
  return out;
}

AdaptiveStrategy simulate_qubit_pm(const QubitPmData& pm) {
  pm.validate();
  AdaptiveStrategy s;
  s.shared_state = bell_phi_plus();
  s.D = 2;
  for (const auto& n : pm.states) {
    BlochVector mirrored{n.x, -n.y, n.z};
    s.alice.push_back(binary_povm_along(mirrored));
  }
  const int B = pm.B();
  s.bob.resize(pm.Y());
  for (int y = 0; y < pm.Y(); ++y) {
    for (int m = 0; m < 2; ++m) {
      double sign = (m == 0) ? 1.0 : -1.0;
      std::vector<Cmat> elems;
      for (const auto& [w, v] : pm.povms[y]) elems.push_back(povm_element_from_bloch(w, sign * v));
      s.bob[y].push_back(zero_padded(std::move(elems), B));
    }
  }
  return s;
}

NonAdaptiveStrategy chsh_ea_bit_rac() {
  NonAdaptiveStrategy s;
  s.shared_state = bell_phi_plus();
  s.D = 2;
  s.num_outputs = 2;
  for (int x = 0; x < 4; ++x) s.alice.push_back(binary_povm_along(sender_direction((x >> 1) & 1, x & 1, M_PI / 4)));
  s.bob_base = {binary_povm_along({0, 0, 1}), binary_povm_along({1, 0, 0})};
  // b = 0 iff the local outcome sign matches the message sign.
  s.post.assign(2, std::vector<std::vector<int>>(2, std::vector<int>(2)));
  for (int y = 0; y < 2; ++y)
    for (int m = 0; m < 2; ++m)
      for (int bp = 0; bp < 2; ++bp) s.post[y][m][bp] = (m == bp) ? 0 : 1;
  return s;
}

NonAdaptiveStrategy na_ea_trit_rac(double theta) {
  if (theta <= 0 || theta >= M_PI / 2)
    throw std::invalid_argument("na_ea_trit_rac: theta must lie in (0, pi/2)");
  NonAdaptiveStrategy s;
  s.shared_state = bell_phi_plus();
  s.D = 3;
  s.num_outputs = 2;
  for (int x = 0; x < 4; ++x) {
    int x1 = (x >> 1) & 1;
    BlochVector a = sender_direction(x1, x & 1, theta);
    Cmat plus = povm_element_from_bloch(1.0, a);
    Cmat minus = povm_element_from_bloch(1.0, -1.0 * a);
    Cmat zero = Cmat::Zero(2, 2);
    // Message 0 on outcome +1; on outcome -1 the message also carries x1.
    std::vector<Cmat> elems = {plus, x1 == 0 ? minus : zero, x1 == 1 ? minus : zero};
    s.alice.push_back(Povm{std::move(elems)});
  }
  s.bob_base = {binary_povm_along({0, 0, 1}), binary_povm_along({1, 0, 0})};
  s.post.assign(2, std::vector<std::vector<int>>(3, std::vector<int>(2)));
  for (int y = 0; y < 2; ++y) {
    for (int bp = 0; bp < 2; ++bp) {
      s.post[y][0][bp] = (bp == 0) ? 0 : 1;  // matches the +1 message
      if (y == 0) {
        s.post[y][1][bp] = 0;  // told x1 = 0
        s.post[y][2][bp] = 1;  // told x1 = 1
      } else {
        // -1 branch: flip on mismatch with the -1 outcome.
        s.post[y][1][bp] = (bp == 1) ? 0 : 1;
        s.post[y][2][bp] = (bp == 1) ? 0 : 1;
      }
    }
  }
  return s;
}

AdaptiveStrategy adaptive_ea_trit_rac() {
  AdaptiveStrategy s;
  s.shared_state = bell_phi_plus();
  s.D = 3;
  for (int x = 0; x < 4; ++x) {
    int x1 = (x >> 1) & 1, x2 = x & 1;
    BlochVector a = sender_direction(x1, x2, M_PI / 4);
    Cmat plus = povm_element_from_bloch(1.0, a);
    Cmat minus = povm_element_from_bloch(1.0, -1.0 * a);
    Cmat zero = Cmat::Zero(2, 2);
    int c = x1 ^ x2;
    std::vector<Cmat> elems = {plus, c == 0 ? minus : zero, c == 1 ? minus : zero};
    s.alice.push_back(Povm{std::move(elems)});
  }
  // Message 0: measure Z or X as in the bit protocol. Message 1+c: the
  // receiver's state is +/-(Z + (-1)^c X)/sqrt(2), so that observable
  // discriminates the two compatible inputs perfectly.
  BlochVector d0{1 / kSqrt2, 0, 1 / kSqrt2};   // c = 0: outcomes +1 -> x=(1,1), -1 -> x=(0,0)
  BlochVector d1{-1 / kSqrt2, 0, 1 / kSqrt2};  // c = 1: outcomes +1 -> x=(1,0), -1 -> x=(0,1)
  Cmat d0p = povm_element_from_bloch(1.0, d0), d0m = povm_element_from_bloch(1.0, -1.0 * d0);
  Cmat d1p = povm_element_from_bloch(1.0, d1), d1m = povm_element_from_bloch(1.0, -1.0 * d1);
  s.bob.resize(2);
  for (int y = 0; y < 2; ++y) {
    Povm base = binary_povm_along(y == 0 ? BlochVector{0, 0, 1} : BlochVector{1, 0, 0});
    s.bob[y].push_back(base);                                    // m = 0: b = 0 iff outcome +1
    s.bob[y].push_back(Povm{{d0m, d0p}});                        // m = 1: both bits equal
    if (y == 0) s.bob[y].push_back(Povm{{d1m, d1p}});            // m = 2: x1 = outcome sign
    else s.bob[y].push_back(Povm{{d1p, d1m}});                   //        x2 is the complement
  }
  return s;
}

QubitPmData facet_qubit_povm_strategy() {
  QubitPmData pm;
  pm.states = {{1, 0, 0}, {-0.5, 0, kSqrt3 / 2}, {-0.5, 0, -kSqrt3 / 2}};
  double tp = -M_PI + std::atan(4 * kSqrt3);
  double tm = -M_PI - std::atan(4 * kSqrt3);
  pm.povms = {
      {{1.0, {-1, 0, 0}}, {1.0, {1, 0, 0}}},
      {{7.0 / 8, {7 * std::cos(tp) / 8, 0, 7 * std::sin(tp) / 8}},
       {7.0 / 8, {7 * std::cos(tm) / 8, 0, 7 * std::sin(tm) / 8}},
       {1.0 / 4, {0.25, 0, 0}}},
  };
  return pm;
}

QubitPmData facet_qubit_projective_strategy() {
  QubitPmData pm;
  pm.states = {{-1, 0, 0}, {1 / kSqrt5, 0, -2 / kSqrt5}, {1 / kSqrt5, 0, 2 / kSqrt5}};
  pm.povms = {
      {{1.0, {1, 0, 0}}, {1.0, {-1, 0, 0}}},
      {{1.0, {0, 0, 1}}, {1.0, {0, 0, -1}}, {0.0, {0, 0, 0}}},
  };
  return pm;
}

QubitPmData unassisted_qubit_rac() {
  QubitPmData pm;
  for (int x = 0; x < 4; ++x) pm.states.push_back(sender_direction((x >> 1) & 1, x & 1, M_PI / 4));
  pm.povms = {
      {{1.0, {0, 0, 1}}, {1.0, {0, 0, -1}}},
      {{1.0, {1, 0, 0}}, {1.0, {-1, 0, 0}}},
  };
  return pm;
}

namespace {

KrausChannel pauli_encoding_channel(int x1, int x2) {
  Cmat u = Cmat::Identity(2, 2);
  if (x2) u = pauli_x() * u;
  if (x1) u = pauli_z() * u;
  return KrausChannel{{u}};
}

Povm basis_povm(const Cmat& observable) {
  Eigen::SelfAdjointEigenSolver<Cmat> es(observable);
  // Outcome order (+1, -1): eigenvalues come back ascending.
  Cvec plus = es.eigenvectors().col(1), minus = es.eigenvectors().col(0);
  return Povm{{plus * plus.adjoint(), minus * minus.adjoint()}};
}

}  // namespace

QuantumMessageStrategy dense_coding_strategy(int message_dim) {
  if (message_dim != 2)
    throw std::invalid_argument("dense_coding_strategy: only D=2 is constructed");
  QuantumMessageStrategy s;
  s.shared_state = bell_phi_plus();
  s.D = 2;
  for (int x = 0; x < 4; ++x) s.channels.push_back(pauli_encoding_channel((x >> 1) & 1, x & 1));
  s.measurement_class = MeasurementClass::kJoint;
  Povm bell;
  for (int b = 0; b < 4; ++b) {
    Cvec ket = bell_ket((b >> 1) & 1, b & 1);
    bell.elements.push_back(ket * ket.adjoint());
  }
  s.bob = {bell};
  return s;
}

QuantumMessageStrategy dense_coding_product_zz() {
  QuantumMessageStrategy s;
  s.shared_state = bell_phi_plus();
  s.D = 2;
  for (int x = 0; x < 4; ++x) s.channels.push_back(pauli_encoding_channel((x >> 1) & 1, x & 1));
  s.measurement_class = MeasurementClass::kProduct;
  ProductMeasurement pm;
  pm.message_povm = {basis_povm(pauli_z())};
  pm.local_povm = {basis_povm(pauli_z())};
  // The parity of the two Z outcomes equals x2; guess x1 = 0. Output index
  // is (x1 x2) in row-major bit order.
  pm.output_map.assign(1, std::vector<std::vector<std::vector<double>>>(
                              2, std::vector<std::vector<double>>(2, std::vector<double>(4, 0.0))));
  for (int b1 = 0; b1 < 2; ++b1)
    for (int b2 = 0; b2 < 2; ++b2) pm.output_map[0][b1][b2][b1 ^ b2] = 1.0;
  s.product = pm;
  s.bob = assemble_joint_povm(s);
  return s;
}

QuantumMessageStrategy stochastic_dense_coding_rac() {
  QuantumMessageStrategy s;
  s.shared_state = bell_phi_plus();
  s.D = 2;
  for (int x = 0; x < 4; ++x) s.channels.push_back(pauli_encoding_channel((x >> 1) & 1, x & 1));
  s.measurement_class = MeasurementClass::kProduct;
  ProductMeasurement pm;
  // y = 0 recovers x1 from X (x) X, y = 1 recovers x2 from Z (x) Z; in both
  // cases the requested bit is the parity of the two local outcomes.
  pm.message_povm = {basis_povm(pauli_x()), basis_povm(pauli_z())};
  pm.local_povm = {basis_povm(pauli_x()), basis_povm(pauli_z())};
  pm.output_map.assign(2, std::vector<std::vector<std::vector<double>>>(
                              2, std::vector<std::vector<double>>(2, std::vector<double>(2, 0.0))));
  for (int y = 0; y < 2; ++y)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int b2 = 0; b2 < 2; ++b2) pm.output_map[y][b1][b2][b1 ^ b2] = 1.0;
  s.product = pm;
  s.bob = assemble_joint_povm(s);
  return s;
}

}  // namespace eacomm
