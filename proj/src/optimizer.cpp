#include "eacomm/optimizer.hpp"

#include <cassert>
#include <cmath>
#include <random>
#include <stdexcept>

namespace eacomm {

std::string to_string(AnsatzClass c) {
  switch (c) {
    case AnsatzClass::kUnassistedClassical: return "unassisted-classical";
    case AnsatzClass::kQubitProjective: return "qubit-projective";
    case AnsatzClass::kQubitPovm: return "qubit-povm";
    case AnsatzClass::kEaBitAdaptive: return "ea-bit-adaptive";
    case AnsatzClass::kEaBitNonAdaptive: return "ea-bit-nonadaptive";
    case AnsatzClass::kEaTritAdaptive: return "ea-trit-adaptive";
    case AnsatzClass::kEaTritNonAdaptive: return "ea-trit-nonadaptive";
    case AnsatzClass::kQuantumMessage: return "quantum-message";
  }
  return "?";
}

std::optional<AnsatzClass> ansatz_class_from_string(const std::string& s) {
  for (auto c : {AnsatzClass::kUnassistedClassical, AnsatzClass::kQubitProjective,
                 AnsatzClass::kQubitPovm, AnsatzClass::kEaBitAdaptive,
                 AnsatzClass::kEaBitNonAdaptive, AnsatzClass::kEaTritAdaptive,
                 AnsatzClass::kEaTritNonAdaptive, AnsatzClass::kQuantumMessage})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

StrategyAnsatz make_ansatz(AnsatzClass cls, const LinearFunctional& f) {
  StrategyAnsatz a;
  a.cls = cls;
  a.X = f.X;
  a.Y = f.Y;
  a.B = f.B;
  a.outcomes_per_y = f.outcomes_per_y;
  switch (cls) {
    case AnsatzClass::kEaTritAdaptive:
    case AnsatzClass::kEaTritNonAdaptive: a.D = 3; break;
    default: a.D = 2; break;
  }
  return a;
}

namespace {

constexpr double kEps = 1e-12;  // ridge inside the POVM renormalization

bool is_ea_adaptive(AnsatzClass c) {
  return c == AnsatzClass::kEaBitAdaptive || c == AnsatzClass::kEaTritAdaptive;
}
bool is_ea_nonadaptive(AnsatzClass c) {
  return c == AnsatzClass::kEaBitNonAdaptive || c == AnsatzClass::kEaTritNonAdaptive;
}
bool is_qubit_pm(AnsatzClass c) {
  return c == AnsatzClass::kQubitProjective || c == AnsatzClass::kQubitPovm;
}

int povm_params(int dim, int outcomes) { return outcomes * 2 * dim * dim; }

// ---------- POVM decode through M_b = S^{-1/2} T_b^dagger T_b S^{-1/2} ----------

struct PovmDecodeData {
  std::vector<Cmat> T, P, M;
  Cmat U, N;
  Eigen::VectorXd lam;
};

PovmDecodeData decode_povm_block(std::span<const double> p, int dim, int outcomes) {
  PovmDecodeData d;
  Cmat S = Cmat::Zero(dim, dim);
  size_t off = 0;
  for (int b = 0; b < outcomes; ++b) {
    Cmat t(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        t(i, j) = cx(p[off], p[off + 1]);
        off += 2;
      }
    d.T.push_back(t);
    // The ridge is spread over the elements so completeness holds to
    // machine precision after the S^{-1/2} renormalization.
    d.P.push_back(t.adjoint() * t + (kEps / outcomes) * Cmat::Identity(dim, dim));
    S += d.P.back();
  }
  Eigen::SelfAdjointEigenSolver<Cmat> es(S);
  d.U = es.eigenvectors();
  d.lam = es.eigenvalues();
  d.N = d.U * d.lam.cwiseSqrt().cwiseInverse().asDiagonal() * d.U.adjoint();
  for (int b = 0; b < outcomes; ++b) d.M.push_back(d.N * d.P[b] * d.N);
  return d;
}

// Gradient of sum_b tr(M_b H_b) in the T entries, appended at `out`.
void povm_block_gradient(const PovmDecodeData& d, const std::vector<Cmat>& H,
                         std::span<double> out) {
  const int dim = static_cast<int>(d.N.rows());
  const int k = static_cast<int>(d.T.size());
  Cmat K = Cmat::Zero(dim, dim);
  for (int b = 0; b < k; ++b) K += d.P[b] * d.N * H[b] + H[b] * d.N * d.P[b];
  Cmat W = d.N * K * d.N;
  Cmat What = d.U.adjoint() * W * d.U;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      What(i, j) /= std::sqrt(d.lam(i)) + std::sqrt(d.lam(j));
  Cmat V = d.U * What * d.U.adjoint();
  size_t off = 0;
  for (int b = 0; b < k; ++b) {
    Cmat Q = d.N * H[b] * d.N - V;
    Cmat G = d.T[b] * Q;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        out[off] += 2 * G(i, j).real();
        out[off + 1] += 2 * G(i, j).imag();
        off += 2;
      }
  }
}

// ---------- parameter layout ----------

struct Layout {
  // offsets into the parameter vector
  int state_off = -1, state_dim = 0;        // complex vector (EA / quantum classes)
  int angles_off = -1, num_angle_pairs = 0; // qubit states and projective directions
  struct PovmBlock {
    int off, dim, outcomes;
  };
  std::vector<PovmBlock> alice;     // per x (EA classes)
  std::vector<PovmBlock> bob;       // per (y,m) adaptive / per y nonadaptive or pm
  std::vector<PovmBlock> extra;     // quantum-message components
  int unitary_off = -1, num_unitaries = 0;  // quantum-message channels (2x2)
  int total = 0;
};

Layout layout_of(const StrategyAnsatz& a) {
  Layout L;
  int off = 0;
  auto add_povm = [&](std::vector<Layout::PovmBlock>& dst, int dim, int outcomes) {
    dst.push_back({off, dim, outcomes});
    off += povm_params(dim, outcomes);
  };
  switch (a.cls) {
    case AnsatzClass::kUnassistedClassical: break;
    case AnsatzClass::kQubitProjective:
      L.angles_off = 0;
      L.num_angle_pairs = a.X + a.Y;  // states then measurement directions
      off = 2 * L.num_angle_pairs;
      break;
    case AnsatzClass::kQubitPovm:
      L.angles_off = 0;
      L.num_angle_pairs = a.X;
      off = 2 * a.X;
      for (int y = 0; y < a.Y; ++y) add_povm(L.bob, 2, a.outcomes_for(y));
      break;
    case AnsatzClass::kEaBitAdaptive:
    case AnsatzClass::kEaTritAdaptive:
    case AnsatzClass::kEaBitNonAdaptive:
    case AnsatzClass::kEaTritNonAdaptive: {
      L.state_off = 0;
      L.state_dim = a.local_dim * a.local_dim;
      off = 2 * L.state_dim;
      for (int x = 0; x < a.X; ++x) add_povm(L.alice, a.local_dim, a.D);
      if (is_ea_adaptive(a.cls)) {
        for (int y = 0; y < a.Y; ++y)
          for (int m = 0; m < a.D; ++m) add_povm(L.bob, a.local_dim, a.outcomes_for(y));
      } else {
        for (int y = 0; y < a.Y; ++y) add_povm(L.bob, a.local_dim, a.base_outcomes);
      }
      break;
    }
    case AnsatzClass::kQuantumMessage: {
      L.state_off = 0;
      L.state_dim = a.D * a.local_dim;
      off = 2 * L.state_dim;
      L.unitary_off = off;
      L.num_unitaries = a.X;
      off += 4 * a.X;
      if (a.qm_class == MeasurementClass::kJoint) {
        for (int y = 0; y < a.Y; ++y) add_povm(L.extra, a.D * a.local_dim, a.B);
      } else if (a.qm_class == MeasurementClass::kProduct) {
        for (int y = 0; y < a.Y; ++y) add_povm(L.extra, a.D, 2);
        for (int y = 0; y < a.Y; ++y) add_povm(L.extra, a.local_dim, 2);
      } else {
        // seq_b_then_m: first on B, second on M; seq_m_then_b mirrors.
        int first_dim = a.qm_class == MeasurementClass::kSeqMThenB ? a.D : a.local_dim;
        int second_dim = a.qm_class == MeasurementClass::kSeqMThenB ? a.local_dim : a.D;
        for (int y = 0; y < a.Y; ++y) add_povm(L.extra, first_dim, 2);
        for (int bp = 0; bp < 2; ++bp) add_povm(L.extra, second_dim, a.B);
      }
      break;
    }
  }
  L.total = off;
  return L;
}

// ---------- discrete variants ----------

long long table_count(const StrategyAnsatz& a) {
  if (is_ea_nonadaptive(a.cls)) {
    double total = 1;
    for (int y = 0; y < a.Y; ++y) total *= std::pow(double(a.B), a.D * a.base_outcomes);
    return total > 1e18 ? (long long)1e18 : (long long)total;
  }
  if (a.cls == AnsatzClass::kQubitProjective) {
    long long total = 1;
    for (int y = 0; y < a.Y; ++y) {
      int By = a.outcomes_for(y);
      total *= By * (By - 1) / 2;  // unordered placement of the two projectors
    }
    return total;
  }
  if (a.cls == AnsatzClass::kQuantumMessage && a.qm_class == MeasurementClass::kProduct) {
    double total = 1;
    for (int y = 0; y < a.Y; ++y) total *= std::pow(double(a.B), 4);
    return total > 1e18 ? (long long)1e18 : (long long)total;
  }
  return 1;
}

constexpr int kVariantCap = 60;

// Deterministic post-processing table for a variant id; exhaustive when the
// table space is small, pseudo-random (seeded by the variant) otherwise.
std::vector<std::vector<std::vector<int>>> na_tables(const StrategyAnsatz& a, int variant) {
  std::vector<std::vector<std::vector<int>>> post(
      a.Y, std::vector<std::vector<int>>(a.D, std::vector<int>(a.base_outcomes, 0)));
  long long count = table_count(a);
  if (count <= kVariantCap) {
    long long v = variant % count;
    for (int y = 0; y < a.Y; ++y)
      for (int m = 0; m < a.D; ++m)
        for (int bp = 0; bp < a.base_outcomes; ++bp) {
          post[y][m][bp] = static_cast<int>(v % a.B);
          v /= a.B;
        }
  } else {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ (0x100000001b3ull * (variant + 1)));
    std::uniform_int_distribution<int> out(0, a.B - 1);
    for (auto& ty : post)
      for (auto& tm : ty)
        for (auto& v : tm) v = out(rng);
  }
  return post;
}

// Placement (slots for the +/- projectors) per y for the projective class.
std::vector<std::pair<int, int>> projective_slots(const StrategyAnsatz& a, int variant) {
  std::vector<std::pair<int, int>> slots(a.Y);
  long long v = variant;
  for (int y = 0; y < a.Y; ++y) {
    int By = a.outcomes_for(y);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < By; ++i)
      for (int j = i + 1; j < By; ++j) pairs.push_back({i, j});
    slots[y] = pairs[v % pairs.size()];
    v /= pairs.size();
  }
  return slots;
}

BlochVector angles_to_dir(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Cmat unitary_from_params(std::span<const double> p) {
  // exp(i(p0*1 + p.sigma)) in closed form for 2x2
  double r = std::sqrt(p[1] * p[1] + p[2] * p[2] + p[3] * p[3]);
  Cmat h = Cmat::Zero(2, 2);
  if (r > 1e-300)
    h = (p[1] * pauli_x() + p[2] * pauli_y() + p[3] * pauli_z()) / r;
  Cmat u = std::cos(r) * Cmat::Identity(2, 2) + cx(0, 1) * std::sin(r) * h;
  return std::polar(1.0, p[0]) * u;
}

Povm povm_from_decode(const PovmDecodeData& d, int pad_to = 0) {
  Povm out{d.M};
  int dim = static_cast<int>(d.N.rows());
  while (static_cast<int>(out.elements.size()) < pad_to)
    out.elements.push_back(Cmat::Zero(dim, dim));
  return out;
}

Cvec state_from_params(std::span<const double> p, int dim) {
  Cvec c(dim);
  for (int i = 0; i < dim; ++i) c(i) = cx(p[2 * i], p[2 * i + 1]);
  double n = c.norm();
  if (n < 1e-12) {
    c.setZero();
    c(0) = 1;
    return c;
  }
  return c / n;
}

}  // namespace

int param_count(const StrategyAnsatz& a) { return layout_of(a).total; }

int num_variants(const StrategyAnsatz& a) {
  long long c = table_count(a);
  return static_cast<int>(std::min<long long>(c, kVariantCap));
}

Behavior DecodedStrategy::behavior() const {
  if (qubit_pm) return born_behavior(*qubit_pm);
  if (adaptive) return behavior_of_adaptive(*adaptive);
  if (nonadaptive) return behavior_of_nonadaptive(*nonadaptive);
  if (quantum) return behavior_of_quantum(*quantum);
  throw std::logic_error("empty decoded strategy");
}

void DecodedStrategy::validate() const {
  if (qubit_pm) qubit_pm->validate();
  if (adaptive) adaptive->validate();
  if (nonadaptive) nonadaptive->validate();
  if (quantum) quantum->validate();
}

DecodedStrategy decode(const StrategyAnsatz& a, std::span<const double> params, int variant) {
  Layout L = layout_of(a);
  if (static_cast<int>(params.size()) != L.total)
    throw std::invalid_argument("decode: parameter vector length mismatch");
  DecodedStrategy out;

  if (a.cls == AnsatzClass::kUnassistedClassical)
    throw std::invalid_argument("decode: classical ansatz has no parameter vector");

  if (a.cls == AnsatzClass::kQubitProjective) {
    QubitPmData pm;
    for (int x = 0; x < a.X; ++x)
      pm.states.push_back(angles_to_dir(params[2 * x], params[2 * x + 1]));
    auto slots = projective_slots(a, variant);
    for (int y = 0; y < a.Y; ++y) {
      double th = params[2 * (a.X + y)], ph = params[2 * (a.X + y) + 1];
      BlochVector d = angles_to_dir(th, ph);
      std::vector<std::pair<double, BlochVector>> povm(a.outcomes_for(y), {0.0, {0, 0, 0}});
      povm[slots[y].first] = {1.0, d};
      povm[slots[y].second] = {1.0, -1.0 * d};
      pm.povms.push_back(std::move(povm));
    }
    out.qubit_pm = std::move(pm);
    return out;
  }

  if (a.cls == AnsatzClass::kQubitPovm) {
    QubitPmData pm;
    for (int x = 0; x < a.X; ++x)
      pm.states.push_back(angles_to_dir(params[2 * x], params[2 * x + 1]));
    for (const auto& blk : L.bob) {
      auto d = decode_povm_block(params.subspan(blk.off), blk.dim, blk.outcomes);
      std::vector<std::pair<double, BlochVector>> povm;
      for (const Cmat& m : d.M) {
        double w = m.trace().real();
        BlochVector v{(m * pauli_x()).trace().real(), (m * pauli_y()).trace().real(),
                      (m * pauli_z()).trace().real()};
        povm.push_back({w, v});
      }
      pm.povms.push_back(std::move(povm));
    }
    out.qubit_pm = std::move(pm);
    return out;
  }

  if (is_ea_adaptive(a.cls) || is_ea_nonadaptive(a.cls)) {
    Cvec ket = state_from_params(params.subspan(L.state_off), L.state_dim);
    DensityState rho = pure_state(ket, {a.local_dim, a.local_dim});
    std::vector<Povm> alice;
    for (const auto& blk : L.alice)
      alice.push_back(povm_from_decode(decode_povm_block(params.subspan(blk.off), blk.dim, blk.outcomes)));
    if (is_ea_adaptive(a.cls)) {
      AdaptiveStrategy s;
      s.shared_state = rho;
      s.D = a.D;
      s.alice = std::move(alice);
      s.bob.resize(a.Y);
      int idx = 0;
      for (int y = 0; y < a.Y; ++y)
        for (int m = 0; m < a.D; ++m) {
          const auto& blk = L.bob[idx++];
          s.bob[y].push_back(
              povm_from_decode(decode_povm_block(params.subspan(blk.off), blk.dim, blk.outcomes), a.B));
        }
      out.adaptive = std::move(s);
    } else {
      NonAdaptiveStrategy s;
      s.shared_state = rho;
      s.D = a.D;
      s.num_outputs = a.B;
      s.alice = std::move(alice);
      for (const auto& blk : L.bob)
        s.bob_base.push_back(
            povm_from_decode(decode_povm_block(params.subspan(blk.off), blk.dim, blk.outcomes)));
      s.post = na_tables(a, variant);
      out.nonadaptive = std::move(s);
    }
    return out;
  }

  // quantum-message
  QuantumMessageStrategy s;
  s.D = a.D;
  Cvec ket = state_from_params(params.subspan(L.state_off), L.state_dim);
  s.shared_state = pure_state(ket, {a.D, a.local_dim});
  for (int x = 0; x < a.X; ++x)
    s.channels.push_back(KrausChannel{{unitary_from_params(params.subspan(L.unitary_off + 4 * x, 4))}});
  s.measurement_class = a.qm_class;
  if (a.qm_class == MeasurementClass::kJoint) {
    for (int y = 0; y < a.Y; ++y)
      s.bob.push_back(povm_from_decode(
          decode_povm_block(params.subspan(L.extra[y].off), L.extra[y].dim, L.extra[y].outcomes)));
  } else if (a.qm_class == MeasurementClass::kProduct) {
    ProductMeasurement pm;
    for (int y = 0; y < a.Y; ++y)
      pm.message_povm.push_back(povm_from_decode(
          decode_povm_block(params.subspan(L.extra[y].off), L.extra[y].dim, L.extra[y].outcomes)));
    for (int y = 0; y < a.Y; ++y)
      pm.local_povm.push_back(povm_from_decode(decode_povm_block(
          params.subspan(L.extra[a.Y + y].off), L.extra[a.Y + y].dim, L.extra[a.Y + y].outcomes)));
    std::mt19937_64 rng(0xdeadbeefcafef00dull ^ (0x100000001b3ull * (variant + 1)));
    std::uniform_int_distribution<int> outd(0, a.B - 1);
    pm.output_map.assign(a.Y, std::vector<std::vector<std::vector<double>>>(
                                  2, std::vector<std::vector<double>>(2, std::vector<double>(a.B, 0.0))));
    for (int y = 0; y < a.Y; ++y)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2) pm.output_map[y][b1][b2][outd(rng)] = 1.0;
    s.product = std::move(pm);
    s.bob = assemble_joint_povm(s);
  } else {
    SequentialMeasurement sq;
    for (int y = 0; y < a.Y; ++y)
      sq.first_povm.push_back(povm_from_decode(
          decode_povm_block(params.subspan(L.extra[y].off), L.extra[y].dim, L.extra[y].outcomes)));
    for (int bp = 0; bp < 2; ++bp)
      sq.second_povm.push_back(povm_from_decode(decode_povm_block(
          params.subspan(L.extra[a.Y + bp].off), L.extra[a.Y + bp].dim, L.extra[a.Y + bp].outcomes)));
    s.sequential = std::move(sq);
    s.bob = assemble_joint_povm(s);
  }
  out.quantum = std::move(s);
  return out;
}

std::vector<double> encode_qubit_pm(const StrategyAnsatz& a, const QubitPmData& pm) {
  if (a.cls != AnsatzClass::kQubitPovm)
    throw std::invalid_argument("encode_qubit_pm: only the qubit-povm class is encodable");
  Layout L = layout_of(a);
  std::vector<double> params(L.total, 0.0);
  for (int x = 0; x < a.X; ++x) {
    const BlochVector& n = pm.states[x];
    params[2 * x] = std::acos(std::clamp(n.z, -1.0, 1.0));
    params[2 * x + 1] = std::atan2(n.y, n.x);
  }
  for (int y = 0; y < a.Y; ++y) {
    const auto& blk = L.bob[y];
    size_t off = blk.off;
    for (int b = 0; b < blk.outcomes; ++b) {
      Cmat m = b < static_cast<int>(pm.povms[y].size())
                   ? povm_element_from_bloch(pm.povms[y][b].first, pm.povms[y][b].second)
                   : Cmat::Zero(2, 2);
      Cmat t = hermitian_sqrt(m);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          params[off] = t(i, j).real();
          params[off + 1] = t(i, j).imag();
          off += 2;
        }
    }
  }
  return params;
}

double eval_ansatz(const StrategyAnsatz& a, const LinearFunctional& f,
                   std::span<const double> params, int variant) {
  Behavior p = decode(a, params, variant).behavior();
  // Pad prepare-and-measure behaviors whose scenario stores fewer outcomes.
  if (p.B < f.B) {
    Behavior q(f.X, f.Y, f.B);
    for (int x = 0; x < p.X; ++x)
      for (int y = 0; y < p.Y; ++y)
        for (int b = 0; b < p.B; ++b) q.at(x, y, b) = p.at(x, y, b);
    p = std::move(q);
  }
  return evaluate(f, p);
}

bool has_analytic_gradient(AnsatzClass cls) {
  return is_qubit_pm(cls) || is_ea_adaptive(cls) || is_ea_nonadaptive(cls);
}

namespace {

// d(n)/d(theta, phi) for n = (sin t cos p, sin t sin p, cos t)
std::pair<BlochVector, BlochVector> dir_jacobian(double theta, double phi) {
  BlochVector dt{std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi),
                 -std::sin(theta)};
  BlochVector dp{-std::sin(theta) * std::sin(phi), std::sin(theta) * std::cos(phi), 0.0};
  return {dt, dp};
}

// K with p = tr(A K) for p = tr(rho (A (x) B)); dims (da, db).
Cmat contract_bob(const Cmat& rho, const Cmat& B, int da, int db) {
  Cmat K = Cmat::Zero(da, da);
  for (int ap = 0; ap < da; ++ap)
    for (int a = 0; a < da; ++a) {
      cx acc = 0;
      for (int i = 0; i < db; ++i)
        for (int j = 0; j < db; ++j) acc += rho(a * db + i, ap * db + j) * B(j, i);
      K(a, ap) = acc;
    }
  return K;
}

// L with p = tr(B L).
Cmat contract_alice(const Cmat& rho, const Cmat& A, int da, int db) {
  Cmat L = Cmat::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j) {
      cx acc = 0;
      for (int a = 0; a < da; ++a)
        for (int ap = 0; ap < da; ++ap) acc += rho(a * db + i, ap * db + j) * A(ap, a);
      L(i, j) = acc;
    }
  return L;
}

}  // namespace

std::vector<double> analytic_gradient(const StrategyAnsatz& a, const LinearFunctional& f,
                                      std::span<const double> params, int variant) {
  if (!has_analytic_gradient(a.cls))
    throw std::invalid_argument("analytic gradient not implemented for this class");
  Layout L = layout_of(a);
  std::vector<double> grad(L.total, 0.0);

  if (a.cls == AnsatzClass::kQubitProjective) {
    auto slots = projective_slots(a, variant);
    std::vector<BlochVector> states, dirs;
    for (int x = 0; x < a.X; ++x)
      states.push_back(angles_to_dir(params[2 * x], params[2 * x + 1]));
    for (int y = 0; y < a.Y; ++y)
      dirs.push_back(angles_to_dir(params[2 * (a.X + y)], params[2 * (a.X + y) + 1]));
    for (int x = 0; x < a.X; ++x) {
      auto [dt, dp] = dir_jacobian(params[2 * x], params[2 * x + 1]);
      for (int y = 0; y < a.Y; ++y) {
        double c_plus = f.at(x, y, slots[y].first), c_minus = f.at(x, y, slots[y].second);
        grad[2 * x] += 0.5 * (c_plus - c_minus) * dot(dt, dirs[y]);
        grad[2 * x + 1] += 0.5 * (c_plus - c_minus) * dot(dp, dirs[y]);
      }
    }
    for (int y = 0; y < a.Y; ++y) {
      auto [dt, dp] = dir_jacobian(params[2 * (a.X + y)], params[2 * (a.X + y) + 1]);
      for (int x = 0; x < a.X; ++x) {
        double c_plus = f.at(x, y, slots[y].first), c_minus = f.at(x, y, slots[y].second);
        grad[2 * (a.X + y)] += 0.5 * (c_plus - c_minus) * dot(states[x], dt);
        grad[2 * (a.X + y) + 1] += 0.5 * (c_plus - c_minus) * dot(states[x], dp);
      }
    }
    return grad;
  }

  if (a.cls == AnsatzClass::kQubitPovm) {
    std::vector<BlochVector> states;
    for (int x = 0; x < a.X; ++x)
      states.push_back(angles_to_dir(params[2 * x], params[2 * x + 1]));
    std::vector<PovmDecodeData> povms;
    for (const auto& blk : L.bob)
      povms.push_back(decode_povm_block(params.subspan(blk.off), blk.dim, blk.outcomes));
    // measurement gradients: H_b = sum_x c[x][y][b] rho_x
    for (int y = 0; y < a.Y; ++y) {
      std::vector<Cmat> H;
      for (int b = 0; b < L.bob[y].outcomes; ++b) {
        Cmat h = Cmat::Zero(2, 2);
        for (int x = 0; x < a.X; ++x) h += f.at(x, y, b) * qubit_from_bloch(states[x]).matrix;
        H.push_back(h);
      }
      povm_block_gradient(povms[y], H, std::span<double>(grad).subspan(L.bob[y].off));
    }
    // state gradients
    for (int x = 0; x < a.X; ++x) {
      auto [dt, dp] = dir_jacobian(params[2 * x], params[2 * x + 1]);
      Cmat st = 0.5 * (dt.x * pauli_x() + dt.y * pauli_y() + dt.z * pauli_z());
      Cmat sp = 0.5 * (dp.x * pauli_x() + dp.y * pauli_y() + dp.z * pauli_z());
      for (int y = 0; y < a.Y; ++y)
        for (int b = 0; b < L.bob[y].outcomes; ++b) {
          double c = f.at(x, y, b);
          if (c == 0) continue;
          grad[2 * x] += c * (st * povms[y].M[b]).trace().real();
          grad[2 * x + 1] += c * (sp * povms[y].M[b]).trace().real();
        }
    }
    return grad;
  }

  // EA classes
  const int da = a.local_dim, db = a.local_dim, dim = da * db;
  Cvec raw(L.state_dim);
  for (int i = 0; i < L.state_dim; ++i)
    raw(i) = cx(params[L.state_off + 2 * i], params[L.state_off + 2 * i + 1]);
  double nrm2 = raw.squaredNorm();
  Cvec ket = raw / std::sqrt(nrm2);
  Cmat rho = ket * ket.adjoint();

  std::vector<PovmDecodeData> alice;
  for (const auto& blk : L.alice)
    alice.push_back(decode_povm_block(params.subspan(blk.off), blk.dim, blk.outcomes));
  std::vector<PovmDecodeData> bob;
  for (const auto& blk : L.bob)
    bob.push_back(decode_povm_block(params.subspan(blk.off), blk.dim, blk.outcomes));

  // Effective adaptive table B_{b|y,m} (lifted through the post-processing
  // for the non-adaptive classes).
  std::vector<std::vector<std::vector<Cmat>>> beff(
      a.Y, std::vector<std::vector<Cmat>>(a.D, std::vector<Cmat>(a.B, Cmat::Zero(db, db))));
  std::vector<std::vector<std::vector<int>>> post;
  if (is_ea_adaptive(a.cls)) {
    for (int y = 0; y < a.Y; ++y)
      for (int m = 0; m < a.D; ++m) {
        const auto& d = bob[y * a.D + m];
        for (int b = 0; b < static_cast<int>(d.M.size()); ++b) beff[y][m][b] = d.M[b];
      }
  } else {
    post = na_tables(a, variant);
    for (int y = 0; y < a.Y; ++y)
      for (int m = 0; m < a.D; ++m)
        for (int bp = 0; bp < a.base_outcomes; ++bp) beff[y][m][post[y][m][bp]] += bob[y].M[bp];
  }

  // state gradient via the aggregated operator
  Cmat O = Cmat::Zero(dim, dim);
  for (int x = 0; x < a.X; ++x)
    for (int y = 0; y < a.Y; ++y)
      for (int b = 0; b < a.B; ++b) {
        double c = f.at(x, y, b);
        if (c == 0) continue;
        for (int m = 0; m < a.D; ++m) O += c * kron(alice[x].M[m], beff[y][m][b]);
      }
  double fval = (ket.adjoint() * O * ket).value().real();
  Cvec gc = (O * raw - fval * raw) / nrm2;  // wrt unnormalized coordinates
  for (int i = 0; i < L.state_dim; ++i) {
    grad[L.state_off + 2 * i] += 2 * gc(i).real();
    grad[L.state_off + 2 * i + 1] += 2 * gc(i).imag();
  }

  // Alice gradients: H_m = sum_{y,b} c K_bob(y,m,b)
  for (int x = 0; x < a.X; ++x) {
    std::vector<Cmat> H(a.D, Cmat::Zero(da, da));
    for (int y = 0; y < a.Y; ++y)
      for (int b = 0; b < a.B; ++b) {
        double c = f.at(x, y, b);
        if (c == 0) continue;
        for (int m = 0; m < a.D; ++m) H[m] += c * contract_bob(rho, beff[y][m][b], da, db);
      }
    for (auto& h : H) h = (0.5 * (h + h.adjoint())).eval();
    povm_block_gradient(alice[x], H, std::span<double>(grad).subspan(L.alice[x].off));
  }

  // Bob gradients
  if (is_ea_adaptive(a.cls)) {
    for (int y = 0; y < a.Y; ++y)
      for (int m = 0; m < a.D; ++m) {
        const auto& blk = L.bob[y * a.D + m];
        std::vector<Cmat> H(blk.outcomes, Cmat::Zero(db, db));
        for (int x = 0; x < a.X; ++x) {
          Cmat KA = contract_alice(rho, alice[x].M[m], da, db);
          for (int b = 0; b < blk.outcomes; ++b) {
            double c = f.at(x, y, b);
            if (c != 0) H[b] += c * KA;
          }
        }
        for (auto& h : H) h = (0.5 * (h + h.adjoint())).eval();
        povm_block_gradient(bob[y * a.D + m], H, std::span<double>(grad).subspan(blk.off));
      }
  } else {
    for (int y = 0; y < a.Y; ++y) {
      const auto& blk = L.bob[y];
      std::vector<Cmat> H(blk.outcomes, Cmat::Zero(db, db));
      for (int x = 0; x < a.X; ++x)
        for (int m = 0; m < a.D; ++m) {
          Cmat KA = contract_alice(rho, alice[x].M[m], da, db);
          for (int bp = 0; bp < a.base_outcomes; ++bp) {
            double c = f.at(x, y, post[y][m][bp]);
            if (c != 0) H[bp] += c * KA;
          }
        }
      for (auto& h : H) h = (0.5 * (h + h.adjoint())).eval();
      povm_block_gradient(bob[y], H, std::span<double>(grad).subspan(blk.off));
    }
  }
  return grad;
}

double gradient_check(const StrategyAnsatz& a, const LinearFunctional& f,
                      std::span<const double> params, int variant) {
  std::vector<double> g = analytic_gradient(a, f, params, variant);
  std::vector<double> p(params.begin(), params.end());
  const double h = 1e-5;
  double worst = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    double save = p[i];
    p[i] = save + h;
    double up = eval_ansatz(a, f, p, variant);
    p[i] = save - h;
    double dn = eval_ansatz(a, f, p, variant);
    p[i] = save;
    worst = std::max(worst, std::abs(g[i] - (up - dn) / (2 * h)));
  }
  return worst;
}

MaximizeResult maximize(const LinearFunctional& f, const StrategyAnsatz& a,
                        const OptimizerConfig& cfg) {
  MaximizeResult res;
  res.best_value = -std::numeric_limits<double>::infinity();

  if (a.cls == AnsatzClass::kUnassistedClassical) {
    ClassicalBound cb = classical_bound(f, a.D);
    res.best_value = cb.value;
    res.best_restart = 0;
    res.method = "exhaustive-enumeration";
    res.trace.push_back({0, 0, cb.value, 0});
    return res;
  }

  const bool analytic = has_analytic_gradient(a.cls);
  res.method = analytic ? "gradient-ascent/analytic" : "gradient-ascent/finite-difference";
  const int n = param_count(a);
  const int variants = num_variants(a);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> init(-M_PI, M_PI);

  auto fd_gradient = [&](std::span<const double> p, int variant) {
    std::vector<double> g(p.size());
    std::vector<double> q(p.begin(), p.end());
    const double h = 1e-6;
    for (size_t i = 0; i < q.size(); ++i) {
      double save = q[i];
      q[i] = save + h;
      double up = eval_ansatz(a, f, q, variant);
      q[i] = save - h;
      double dn = eval_ansatz(a, f, q, variant);
      q[i] = save;
      g[i] = (up - dn) / (2 * h);
    }
    return g;
  };

  for (int r = 0; r < cfg.restarts; ++r) {
    int variant = variants > 0 ? r % variants : 0;
    std::vector<double> x(n);
    for (double& v : x) v = init(rng);
    double val = eval_ansatz(a, f, x, variant);
    double step = cfg.init_step;
    int it = 0;
    for (; it < cfg.max_iters; ++it) {
      std::vector<double> g =
          analytic ? analytic_gradient(a, f, x, variant) : fd_gradient(x, variant);
      double gn = 0;
      for (double v : g) gn += v * v;
      gn = std::sqrt(gn);
      if (gn < 1e-12) break;
      bool accepted = false;
      std::vector<double> trial(n);
      while (step > cfg.min_step) {
        for (int i = 0; i < n; ++i) trial[i] = x[i] + step * g[i];
        double tv = eval_ansatz(a, f, trial, variant);
        if (tv > val + cfg.f_tol) {
          x.swap(trial);
          val = tv;
          step *= 1.6;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
    }
    res.trace.push_back({r, variant, val, it});
    if (val > res.best_value) {
      res.best_value = val;
      res.best_restart = r;
      res.best_variant = variant;
      res.best_params = x;
    }
  }
  return res;
}

}  // namespace eacomm
