#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eacomm/sampling.hpp"
#include "eacomm/strategies.hpp"
#include "eacomm/tasks.hpp"

using namespace eacomm;

TEST_CASE("trivial adaptive behavior: single-outcome Bob") {
  AdaptiveStrategy s;
  s.shared_state = bell_phi_plus();
  s.D = 2;
  s.alice = {observable_povm({0, 0, 1}), observable_povm({1, 0, 0})};
  s.bob.assign(2, std::vector<Povm>(2, Povm{{identity(2)}}));
  s.validate();
  Behavior p = behavior_of_adaptive(s);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) CHECK(p.at(x, y, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("nonadaptive equals lifted adaptive on random strategies") {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    // General bases here: the behavior identity is pure algebra.
    NonAdaptiveStrategy s = random_nonadaptive(3, 2, 3, 2, rng, trial % 2 == 0);
    s.validate();
    Behavior direct = behavior_of_nonadaptive(s);
    Behavior lifted = behavior_of_adaptive(lift_to_adaptive(s));
    direct.validate();
    REQUIRE(direct.p.size() == lifted.p.size());
    for (size_t i = 0; i < direct.p.size(); ++i)
      CHECK(std::abs(direct.p[i] - lifted.p[i]) < 1e-12);
  }
}

TEST_CASE("lift passes the commutation check when the base admits it") {
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    NonAdaptiveStrategy s = random_nonadaptive(2, 2, 3, 2, rng, /*commuting_base=*/true);
    AdaptiveStrategy lifted = lift_to_adaptive(s);
    lifted.validate();
    auto report = check_nonadaptive(lifted, 1e-10);
    CHECK(report.nonadaptive);
    CHECK(report.max_commutator_norm < 1e-10);
  }
}

TEST_CASE("constant post-processing leaves a single nonzero element") {
  Rng rng(5);
  NonAdaptiveStrategy s = random_nonadaptive(2, 1, 2, 3, rng);
  for (auto& m_tab : s.post[0])
    for (auto& b : m_tab) b = 1;
  AdaptiveStrategy lifted = lift_to_adaptive(s);
  for (int m = 0; m < s.D; ++m) {
    CHECK((lifted.bob[0][m].elements[1] - identity(2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(lifted.bob[0][m].elements[0].cwiseAbs().maxCoeff() < 1e-15);
    CHECK(lifted.bob[0][m].elements[2].cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("x-independence when the post-processing ignores the message") {
  Rng rng(17);
  NonAdaptiveStrategy s = random_nonadaptive(3, 2, 2, 2, rng);
  // g independent of m and trivial Alice (same POVM for every x).
  for (int y = 0; y < 2; ++y)
    for (int m = 0; m < s.D; ++m) s.post[y][m] = s.post[y][0];
  for (int x = 1; x < 3; ++x) s.alice[x] = s.alice[0];
  Behavior p = behavior_of_nonadaptive(s);
  for (int y = 0; y < p.Y; ++y)
    for (int b = 0; b < p.B; ++b)
      for (int x = 1; x < p.X; ++x)
        CHECK(p.at(x, y, b) == doctest::Approx(p.at(0, y, b)).epsilon(1e-12));
}

TEST_CASE("behavior is linear in the shared state") {
  Rng rng(31);
  AdaptiveStrategy s = lift_to_adaptive(random_nonadaptive(2, 2, 2, 2, rng));
  DensityState rho1 = random_pure_state({2, 2}, rng);
  DensityState rho2 = random_pure_state({2, 2}, rng);
  double lam = 0.3;
  AdaptiveStrategy s1 = s, s2 = s, smix = s;
  s1.shared_state = rho1;
  s2.shared_state = rho2;
  smix.shared_state =
      DensityState{lam * rho1.matrix + (1 - lam) * rho2.matrix, {2, 2}};
  Behavior p1 = behavior_of_adaptive(s1), p2 = behavior_of_adaptive(s2),
           pm = behavior_of_adaptive(smix);
  for (size_t i = 0; i < pm.p.size(); ++i)
    CHECK(std::abs(pm.p[i] - (lam * p1.p[i] + (1 - lam) * p2.p[i])) < 1e-12);
}

TEST_CASE("quantum-message behaviors") {
  QuantumMessageStrategy dc = dense_coding_strategy(2);
  dc.validate();
  Behavior p = behavior_of_quantum(dc);
  p.validate();
  for (int x = 0; x < 4; ++x) CHECK(p.at(x, 0, x) == doctest::Approx(1.0).epsilon(1e-10));

  // Identical channels make the behavior input independent.
  QuantumMessageStrategy same = dc;
  for (int x = 1; x < 4; ++x) same.channels[x] = same.channels[0];
  Behavior q = behavior_of_quantum(same);
  for (int b = 0; b < 4; ++b)
    for (int x = 1; x < 4; ++x)
      CHECK(q.at(x, 0, b) == doctest::Approx(q.at(0, 0, b)).epsilon(1e-12));
}

TEST_CASE("assembled product and sequential measurements are valid POVMs") {
  Rng rng(41);
  for (auto cls : {MeasurementClass::kProduct, MeasurementClass::kSeqBThenM,
                   MeasurementClass::kSeqMThenB}) {
    for (int trial = 0; trial < 10; ++trial) {
      QuantumMessageStrategy s = random_separable_quantum_strategy(4, 1, 4, 2, cls, rng);
      s.validate();
      for (const auto& povm : s.bob) CHECK(povm.max_violation() < 1e-10);
      Behavior p = behavior_of_quantum(s);
      p.validate();
    }
  }
}

TEST_CASE("behavior normalization on constructed strategies") {
  behavior_of_nonadaptive(chsh_ea_bit_rac()).validate();
  behavior_of_nonadaptive(na_ea_trit_rac(M_PI / 4)).validate();
  behavior_of_adaptive(adaptive_ea_trit_rac()).validate();
  behavior_of_quantum(stochastic_dense_coding_rac()).validate();
}
