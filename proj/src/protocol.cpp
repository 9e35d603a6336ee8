#include "eacomm/protocol.hpp"

#include <cmath>

namespace eacomm {

void Behavior::validate() const {
  for (int x = 0; x < X; ++x)
    for (int y = 0; y < Y; ++y) {
      double sum = 0;
      for (int b = 0; b < B; ++b) {
        double v = at(x, y, b);
        if (v < -kBehaviorTol || v > 1 + kBehaviorTol)
          throw invariant_error("behavior entry outside [0,1]", std::max(-v, v - 1));
        sum += v;
      }
      if (std::abs(sum - 1.0) > kBehaviorTol)
        throw invariant_error("behavior not normalized", std::abs(sum - 1.0));
    }
}

void AdaptiveStrategy::validate() const {
  shared_state.validate();
  if (shared_state.dims.size() != 2) throw invariant_error("shared state must be bipartite", 0);
  if (D <= 0 || alice.empty() || bob.empty()) throw invariant_error("empty strategy", 0);
  for (const auto& a : alice) {
    a.validate();
    if (a.num_outcomes() != D) throw invariant_error("Alice POVM outcome count != D", 0);
    if (a.dim() != dimA()) throw invariant_error("Alice POVM dimension mismatch", 0);
  }
  int b_card = bob[0][0].num_outcomes();
  for (const auto& row : bob) {
    if (static_cast<int>(row.size()) != D) throw invariant_error("Bob table incomplete over m", 0);
    for (const auto& povm : row) {
      povm.validate();
      if (povm.num_outcomes() != b_card) throw invariant_error("non-uniform output cardinality", 0);
      if (povm.dim() != dimB()) throw invariant_error("Bob POVM dimension mismatch", 0);
    }
  }
}

void NonAdaptiveStrategy::validate() const {
  shared_state.validate();
  if (shared_state.dims.size() != 2) throw invariant_error("shared state must be bipartite", 0);
  if (D <= 0 || alice.empty() || bob_base.empty() || num_outputs <= 0)
    throw invariant_error("empty strategy", 0);
  for (const auto& a : alice) {
    a.validate();
    if (a.num_outcomes() != D) throw invariant_error("Alice POVM outcome count != D", 0);
  }
  for (const auto& b : bob_base) b.validate();
  if (post.size() != bob_base.size()) throw invariant_error("post-processing table incomplete", 0);
  for (size_t y = 0; y < post.size(); ++y) {
    if (static_cast<int>(post[y].size()) != D)
      throw invariant_error("post-processing table incomplete over m", 0);
    for (const auto& row : post[y]) {
      if (static_cast<int>(row.size()) != bob_base[y].num_outcomes())
        throw invariant_error("post-processing table incomplete over b'", 0);
      for (int b : row)
        if (b < 0 || b >= num_outputs) throw invariant_error("post-processing value out of range", b);
    }
  }
}

std::string to_string(MeasurementClass c) {
  switch (c) {
    case MeasurementClass::kJoint: return "joint";
    case MeasurementClass::kProduct: return "product";
    case MeasurementClass::kSeqMThenB: return "seq_m_then_b";
    case MeasurementClass::kSeqBThenM: return "seq_b_then_m";
  }
  return "joint";
}

std::optional<MeasurementClass> measurement_class_from_string(const std::string& s) {
  if (s == "joint") return MeasurementClass::kJoint;
  if (s == "product") return MeasurementClass::kProduct;
  if (s == "seq_m_then_b") return MeasurementClass::kSeqMThenB;
  if (s == "seq_b_then_m") return MeasurementClass::kSeqBThenM;
  return std::nullopt;
}

std::vector<Povm> assemble_joint_povm(const QuantumMessageStrategy& s) {
  const int Y = s.Y() ? s.Y() : (s.product ? static_cast<int>(s.product->message_povm.size())
                                           : static_cast<int>(s.sequential->first_povm.size()));
  std::vector<Povm> joint(Y);
  switch (s.measurement_class) {
    case MeasurementClass::kJoint:
      return s.bob;
    case MeasurementClass::kProduct: {
      const auto& pm = *s.product;
      for (int y = 0; y < Y; ++y) {
        const auto& out_map = pm.output_map[y];
        int B = static_cast<int>(out_map[0][0].size());
        int d = pm.message_povm[y].dim() * pm.local_povm[y].dim();
        joint[y].elements.assign(B, Cmat::Zero(d, d));
        for (int b1 = 0; b1 < pm.message_povm[y].num_outcomes(); ++b1)
          for (int b2 = 0; b2 < pm.local_povm[y].num_outcomes(); ++b2) {
            Cmat prod = kron(pm.message_povm[y].elements[b1], pm.local_povm[y].elements[b2]);
            for (int b = 0; b < B; ++b) joint[y].elements[b] += out_map[b1][b2][b] * prod;
          }
      }
      return joint;
    }
    case MeasurementClass::kSeqBThenM: {
      // B_{b|y} = sum_{b'} M_{b|b'} (x) L_{b'|y}
      const auto& sq = *s.sequential;
      for (int y = 0; y < Y; ++y) {
        int B = sq.second_povm[0].num_outcomes();
        int d = sq.second_povm[0].dim() * sq.first_povm[y].dim();
        joint[y].elements.assign(B, Cmat::Zero(d, d));
        for (int bp = 0; bp < sq.first_povm[y].num_outcomes(); ++bp)
          for (int b = 0; b < B; ++b)
            joint[y].elements[b] +=
                kron(sq.second_povm[bp].elements[b], sq.first_povm[y].elements[bp]);
      }
      return joint;
    }
    case MeasurementClass::kSeqMThenB: {
      // B_{b|y} = sum_{b'} M_{b'|y} (x) L_{b|b'}
      const auto& sq = *s.sequential;
      for (int y = 0; y < Y; ++y) {
        int B = sq.second_povm[0].num_outcomes();
        int d = sq.first_povm[y].dim() * sq.second_povm[0].dim();
        joint[y].elements.assign(B, Cmat::Zero(d, d));
        for (int bp = 0; bp < sq.first_povm[y].num_outcomes(); ++bp)
          for (int b = 0; b < B; ++b)
            joint[y].elements[b] +=
                kron(sq.first_povm[y].elements[bp], sq.second_povm[bp].elements[b]);
      }
      return joint;
    }
  }
  return joint;
}

void QuantumMessageStrategy::validate() const {
  shared_state.validate();
  if (shared_state.dims.size() != 2) throw invariant_error("shared state must be bipartite", 0);
  if (D <= 0 || channels.empty() || bob.empty()) throw invariant_error("empty strategy", 0);
  for (const auto& ch : channels) {
    ch.validate();
    if (ch.in_dim() != dimA() || ch.out_dim() != D)
      throw invariant_error("channel dimension mismatch", 0);
  }
  for (const auto& povm : bob) {
    povm.validate();
    if (povm.dim() != D * dimB()) throw invariant_error("joint POVM dimension mismatch", 0);
  }
  if (measurement_class != MeasurementClass::kJoint) {
    auto assembled = assemble_joint_povm(*this);
    double worst = 0;
    for (int y = 0; y < Y(); ++y)
      for (int b = 0; b < B(); ++b)
        worst = std::max(worst,
                         (assembled[y].elements[b] - bob[y].elements[b]).cwiseAbs().maxCoeff());
    if (worst > kStructTol)
      throw invariant_error("joint POVM does not match declared composition", worst);
  }
}

Behavior behavior_of_adaptive(const AdaptiveStrategy& s) {
  Behavior out(s.X(), s.Y(), s.B());
  const Cmat& rho = s.shared_state.matrix;
  for (int x = 0; x < s.X(); ++x)
    for (int m = 0; m < s.D; ++m) {
      // Sender-side conditional operator: Tr_A[rho (A (x) 1)] on H_B.
      Cmat cond = Cmat::Zero(s.dimB(), s.dimB());
      const Cmat& A = s.alice[x].elements[m];
      for (int i = 0; i < s.dimB(); ++i)
        for (int j = 0; j < s.dimB(); ++j) {
          cx acc = 0;
          for (int a = 0; a < s.dimA(); ++a)
            for (int ap = 0; ap < s.dimA(); ++ap)
              acc += rho(a * s.dimB() + i, ap * s.dimB() + j) * A(ap, a);
          cond(i, j) = acc;
        }
      for (int y = 0; y < s.Y(); ++y)
        for (int b = 0; b < s.B(); ++b)
          out.at(x, y, b) += (cond * s.bob[y][m].elements[b]).trace().real();
    }
  return out;
}

Behavior behavior_of_nonadaptive(const NonAdaptiveStrategy& s) {
  return behavior_of_adaptive(lift_to_adaptive(s));
}

AdaptiveStrategy lift_to_adaptive(const NonAdaptiveStrategy& s) {
  AdaptiveStrategy out;
  out.shared_state = s.shared_state;
  out.D = s.D;
  out.alice = s.alice;
  out.bob.resize(s.Y());
  int dim = s.bob_base[0].dim();
  for (int y = 0; y < s.Y(); ++y) {
    out.bob[y].resize(s.D);
    for (int m = 0; m < s.D; ++m) {
      out.bob[y][m].elements.assign(s.num_outputs, Cmat::Zero(dim, dim));
      for (int bp = 0; bp < s.bob_base[y].num_outcomes(); ++bp)
        out.bob[y][m].elements[s.post[y][m][bp]] += s.bob_base[y].elements[bp];
    }
  }
  return out;
}

Behavior behavior_of_quantum(const QuantumMessageStrategy& s) {
  Behavior out(s.X(), s.Y(), s.B());
  for (int x = 0; x < s.X(); ++x) {
    // (channel_x (x) id)[rho] on H_M (x) H_B.
    Cmat moved = Cmat::Zero(s.D * s.dimB(), s.D * s.dimB());
    for (const auto& k : s.channels[x].kraus) {
      Cmat kb = kron(k, Cmat::Identity(s.dimB(), s.dimB()));
      moved += kb * s.shared_state.matrix * kb.adjoint();
    }
    for (int y = 0; y < s.Y(); ++y)
      for (int b = 0; b < s.B(); ++b)
        out.at(x, y, b) = (moved * s.bob[y].elements[b]).trace().real();
  }
  return out;
}

NonAdaptivityReport check_nonadaptive(const AdaptiveStrategy& s, double tol) {
  double worst = 0;
  for (int y = 0; y < s.Y(); ++y)
    for (int m = 0; m < s.D; ++m)
      for (int mp = m; mp < s.D; ++mp)
        for (int b = 0; b < s.B(); ++b)
          for (int bp = 0; bp < s.B(); ++bp) {
            const Cmat& P = s.bob[y][m].elements[b];
            const Cmat& Q = s.bob[y][mp].elements[bp];
            Cmat comm = P * Q - Q * P;
            // i[P,Q] is Hermitian, so the operator norm is a spectral radius.
            Cmat herm = cx(0, 1) * comm;
            Eigen::SelfAdjointEigenSolver<Cmat> es(herm, Eigen::EigenvaluesOnly);
            worst = std::max(worst, es.eigenvalues().cwiseAbs().maxCoeff());
          }
  return NonAdaptivityReport{worst <= tol, worst};
}

}  // namespace eacomm
