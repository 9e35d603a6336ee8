#include "eacomm/sampling.hpp"

#include <cmath>

namespace eacomm {

Cvec random_ket(int dim, Rng& rng) {
  std::normal_distribution<double> g;
  Cvec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = cx(g(rng), g(rng));
  return v / v.norm();
}

Cmat random_unitary(int dim, Rng& rng) {
  std::normal_distribution<double> g;
  Cmat m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = cx(g(rng), g(rng));
  Eigen::HouseholderQR<Cmat> qr(m);
  Cmat q = qr.householderQ();
  Cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

DensityState random_pure_state(std::vector<int> dims, Rng& rng) {
  int d = 1;
  for (int x : dims) d *= x;
  return pure_state(random_ket(d, rng), std::move(dims));
}

Povm random_povm(int dim, int outcomes, Rng& rng) {
  std::normal_distribution<double> g;
  std::vector<Cmat> parts;
  Cmat sum = Cmat::Zero(dim, dim);
  for (int b = 0; b < outcomes; ++b) {
    Cmat t(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) t(i, j) = cx(g(rng), g(rng));
    Cmat p = t.adjoint() * t;
    parts.push_back(p);
    sum += p;
  }
  Eigen::SelfAdjointEigenSolver<Cmat> es(sum);
  Cmat nrm = es.operatorInverseSqrt();
  Povm povm;
  for (auto& p : parts) povm.elements.push_back(nrm * p * nrm);
  return povm;
}

Povm random_projective_povm(int dim, int outcomes, Rng& rng) {
  Cmat u = random_unitary(dim, rng);
  Povm povm;
  for (int b = 0; b < std::min(dim, outcomes); ++b)
    povm.elements.push_back(u.col(b) * u.col(b).adjoint());
  while (static_cast<int>(povm.elements.size()) < outcomes)
    povm.elements.push_back(Cmat::Zero(dim, dim));
  // If outcomes < dim, absorb the leftover projectors into the last element.
  for (int b = outcomes; b < dim; ++b)
    povm.elements.back() += u.col(b) * u.col(b).adjoint();
  return povm;
}

KrausChannel random_unitary_channel(int dim, Rng& rng) {
  return KrausChannel{{random_unitary(dim, rng)}};
}

QubitPmData random_qubit_pm(int X, int Y, Rng& rng, bool projective) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto random_dir = [&]() {
    BlochVector v{g(rng), g(rng), g(rng)};
    double n = v.norm();
    return (1.0 / (n > 1e-12 ? n : 1.0)) * v;
  };
  QubitPmData pm;
  for (int x = 0; x < X; ++x) pm.states.push_back(random_dir());
  for (int y = 0; y < Y; ++y) {
    if (projective) {
      BlochVector d = random_dir();
      pm.povms.push_back({{1.0, d}, {1.0, -1.0 * d}});
      continue;
    }
    std::uniform_int_distribution<int> kdist(2, 4);
    int k = kdist(rng);
    std::vector<BlochVector> v(k);
    BlochVector mean{0, 0, 0};
    for (auto& vi : v) {
      vi = {g(rng), g(rng), g(rng)};
      mean = mean + vi;
    }
    mean = (1.0 / k) * mean;
    double total = 0;
    for (auto& vi : v) {
      vi = vi - mean;
      total += vi.norm();
    }
    // Rescale so the vector norms sum to at most 2, then spread the slack
    // uniformly over the weights: sum w = 2, w_b >= |v_b|.
    double target = 2.0 * (0.5 + 0.45 * u01(rng));
    for (auto& vi : v) vi = (target / total) * vi;
    double slack = (2.0 - target) / k;
    std::vector<std::pair<double, BlochVector>> povm;
    for (auto& vi : v) povm.push_back({vi.norm() + slack, vi});
    pm.povms.push_back(std::move(povm));
  }
  return pm;
}

NonAdaptiveStrategy random_nonadaptive(int X, int Y, int D, int num_outputs, Rng& rng,
                                       bool commuting_base) {
  NonAdaptiveStrategy s;
  s.shared_state = random_pure_state({2, 2}, rng);
  s.D = D;
  s.num_outputs = num_outputs;
  for (int x = 0; x < X; ++x) s.alice.push_back(random_povm(2, D, rng));
  std::uniform_int_distribution<int> coin(0, 1);
  for (int y = 0; y < Y; ++y) {
    if (commuting_base) {
      // Binary POVMs always commute internally; projective ones do too.
      if (coin(rng)) s.bob_base.push_back(random_povm(2, 2, rng));
      else s.bob_base.push_back(random_projective_povm(2, 2 + coin(rng), rng));
    } else {
      s.bob_base.push_back(random_povm(2, 3, rng));
    }
  }
  std::uniform_int_distribution<int> outdist(0, num_outputs - 1);
  s.post.resize(Y);
  for (int y = 0; y < Y; ++y) {
    s.post[y].assign(D, std::vector<int>(s.bob_base[y].num_outcomes()));
    for (int m = 0; m < D; ++m)
      for (int bp = 0; bp < s.bob_base[y].num_outcomes(); ++bp) s.post[y][m][bp] = outdist(rng);
  }
  return s;
}

QuantumMessageStrategy random_separable_quantum_strategy(int X, int Y, int B, int message_dim,
                                                         MeasurementClass cls, Rng& rng) {
  QuantumMessageStrategy s;
  s.shared_state = random_pure_state({message_dim, message_dim}, rng);
  s.D = message_dim;
  for (int x = 0; x < X; ++x) s.channels.push_back(random_unitary_channel(message_dim, rng));
  s.measurement_class = cls;
  std::uniform_int_distribution<int> kdist(2, 4);
  if (cls == MeasurementClass::kProduct) {
    ProductMeasurement pm;
    pm.output_map.resize(Y);
    for (int y = 0; y < Y; ++y) {
      int k1 = kdist(rng), k2 = kdist(rng);
      pm.message_povm.push_back(random_povm(message_dim, k1, rng));
      pm.local_povm.push_back(random_povm(message_dim, k2, rng));
      std::uniform_int_distribution<int> outdist(0, B - 1);
      pm.output_map[y].assign(k1, std::vector<std::vector<double>>(
                                      k2, std::vector<double>(B, 0.0)));
      for (int b1 = 0; b1 < k1; ++b1)
        for (int b2 = 0; b2 < k2; ++b2) pm.output_map[y][b1][b2][outdist(rng)] = 1.0;
    }
    s.product = pm;
  } else if (cls == MeasurementClass::kSeqBThenM || cls == MeasurementClass::kSeqMThenB) {
    SequentialMeasurement sq;
    int k = kdist(rng);
    for (int y = 0; y < Y; ++y) sq.first_povm.push_back(random_povm(message_dim, k, rng));
    for (int bp = 0; bp < k; ++bp) sq.second_povm.push_back(random_povm(message_dim, B, rng));
    s.sequential = sq;
  } else {
    throw std::invalid_argument("random_separable_quantum_strategy: joint class not supported");
  }
  s.bob = assemble_joint_povm(s);
  return s;
}

}  // namespace eacomm
