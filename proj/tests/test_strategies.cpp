#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eacomm/sampling.hpp"
#include "eacomm/strategies.hpp"
#include "eacomm/tasks.hpp"

using namespace eacomm;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt5 = std::sqrt(5.0);

double behavior_gap(const Behavior& a, const Behavior& b) {
  double worst = 0;
  for (size_t i = 0; i < a.p.size(); ++i) worst = std::max(worst, std::abs(a.p[i] - b.p[i]));
  return worst;
}

}  // namespace

TEST_CASE("ea-bit rac protocol") {
  NonAdaptiveStrategy s = chsh_ea_bit_rac();
  s.validate();
  Behavior p = behavior_of_nonadaptive(s);
  CHECK(evaluate(rac_functional(), p) ==
        doctest::Approx(0.5 * (1 + 1 / kSqrt2)).epsilon(1e-12));

  // Conditional cell (x1,x2) = (0,0), y = 1: p(b=0) = cos^2(pi/8).
  CHECK(p.at(0, 0, 0) == doctest::Approx(std::pow(std::cos(M_PI / 8), 2)).epsilon(1e-12));

  auto report = check_nonadaptive(lift_to_adaptive(s), 1e-10);
  CHECK(report.nonadaptive);

  // The lifted m=+1 and m=-1 measurements are the same projective
  // measurement with permuted outcomes.
  AdaptiveStrategy lifted = lift_to_adaptive(s);
  for (int y = 0; y < 2; ++y) {
    CHECK((lifted.bob[y][0].elements[0] - lifted.bob[y][1].elements[1]).cwiseAbs().maxCoeff() <
          1e-14);
    CHECK((lifted.bob[y][0].elements[1] - lifted.bob[y][1].elements[0]).cwiseAbs().maxCoeff() <
          1e-14);
  }
}

TEST_CASE("non-adaptive trit protocol closed form") {
  LinearFunctional rac = rac_functional();
  CHECK(evaluate(rac, behavior_of_nonadaptive(na_ea_trit_rac(M_PI / 4))) ==
        doctest::Approx((5 + 3 * kSqrt2 / 2) / 8).epsilon(1e-12));
  CHECK(evaluate(rac, behavior_of_nonadaptive(na_ea_trit_rac(std::acos(1 / kSqrt5)))) ==
        doctest::Approx((5 + kSqrt5) / 8).epsilon(1e-12));

  // Closed form (5 + cos t + 2 sin t)/8 at random angles.
  Rng rng(4);
  std::uniform_real_distribution<double> u(0.05, M_PI / 2 - 0.05);
  for (int i = 0; i < 20; ++i) {
    double t = u(rng);
    NonAdaptiveStrategy s = na_ea_trit_rac(t);
    s.validate();
    CHECK(evaluate(rac, behavior_of_nonadaptive(s)) ==
          doctest::Approx((5 + std::cos(t) + 2 * std::sin(t)) / 8).epsilon(1e-12));
  }
  CHECK_THROWS_AS(na_ea_trit_rac(0.0), std::invalid_argument);
}

TEST_CASE("adaptive trit protocol") {
  AdaptiveStrategy s = adaptive_ea_trit_rac();
  s.validate();
  double v = evaluate(rac_functional(), behavior_of_adaptive(s));
  CHECK(v == doctest::Approx(0.25 * (3 + 1 / kSqrt2)).epsilon(1e-12));

  auto report = check_nonadaptive(s);
  CHECK(!report.nonadaptive);
  // Z/X projectors against (Z±X)/sqrt(2) projectors: commutator norm 1/2.
  CHECK(report.max_commutator_norm == doctest::Approx(0.5).epsilon(1e-9));

  // Strictly exceeds the non-adaptive trit values for every tilt.
  for (double t = 0.05; t < M_PI / 2 - 0.04; t += 0.01) {
    double na = (5 + std::cos(t) + 2 * std::sin(t)) / 8;
    CHECK(v - na >= 0.022);
  }
}

TEST_CASE("qubit simulation is exact") {
  Rng rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    QubitPmData pm = random_qubit_pm(3, 2, rng, /*projective=*/trial % 4 == 0);
    AdaptiveStrategy sim = simulate_qubit_pm(pm);
    sim.validate();
    CHECK(behavior_gap(behavior_of_adaptive(sim), born_behavior(pm)) < 1e-10);
  }
}

TEST_CASE("projective simulations are non-adaptive, generic POVM ones are not") {
  Rng rng(32);
  for (int trial = 0; trial < 25; ++trial) {
    QubitPmData pm = random_qubit_pm(3, 2, rng, /*projective=*/true);
    auto report = check_nonadaptive(simulate_qubit_pm(pm), 1e-10);
    CHECK(report.nonadaptive);
  }
  auto report = check_nonadaptive(simulate_qubit_pm(facet_qubit_povm_strategy()), 1e-3);
  CHECK(!report.nonadaptive);
  CHECK(report.max_commutator_norm > 1e-3);
}

TEST_CASE("facet strategies") {
  LinearFunctional f = facet_functional();

  QubitPmData povm = facet_qubit_povm_strategy();
  povm.validate();
  CHECK(evaluate(f, born_behavior(povm)) == doctest::Approx(2.25).epsilon(1e-12));
  CHECK(evaluate(f, behavior_of_adaptive(simulate_qubit_pm(povm))) ==
        doctest::Approx(2.25).epsilon(1e-12));

  // Completeness of the three-outcome measurement: weights 7/8+7/8+1/4 = 2,
  // vectors cancel.
  double wsum = 0;
  BlochVector vsum{0, 0, 0};
  for (const auto& [w, v] : povm.povms[1]) {
    wsum += w;
    vsum = vsum + v;
  }
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(vsum.norm() < 1e-14);

  QubitPmData proj = facet_qubit_projective_strategy();
  proj.validate();
  double fproj = evaluate(f, born_behavior(proj));
  CHECK(fproj == doctest::Approx(kSqrt5).epsilon(1e-12));
  CHECK(fproj < 2.25);
  for (const auto& povm_y : proj.povms)
    for (const auto& [w, v] : povm_y) {
      Cmat e = povm_element_from_bloch(w, v);
      CHECK((e * e - e).cwiseAbs().maxCoeff() < 1e-12);  // idempotent (or zero)
    }
}

TEST_CASE("random projective strategies stay below sqrt(5)") {
  LinearFunctional f = facet_functional();
  Rng rng(555);
  double best = -1e9;
  for (int trial = 0; trial < 10000; ++trial) {
    QubitPmData pm = random_qubit_pm(3, 2, rng, /*projective=*/true);
    // Map the binary y=2 measurement into the three-outcome scenario by a
    // random placement of the zero outcome.
    std::uniform_int_distribution<int> slot(0, 2);
    int zero_slot = slot(rng);
    std::vector<std::pair<double, BlochVector>> three;
    for (int b = 0, src = 0; b < 3; ++b) {
      if (b == zero_slot) three.push_back({0.0, {0, 0, 0}});
      else three.push_back(pm.povms[1][src++]);
    }
    pm.povms[1] = three;
    best = std::max(best, evaluate(f, born_behavior(pm)));
  }
  CHECK(best <= kSqrt5 + 1e-9);
}

TEST_CASE("unassisted qubit rac") {
  QubitPmData pm = unassisted_qubit_rac();
  pm.validate();
  double v = evaluate(rac_functional(), born_behavior(pm));
  CHECK(v == doctest::Approx(0.5 * (1 + 1 / kSqrt2)).epsilon(1e-12));
  CHECK(v == doctest::Approx(evaluate(rac_functional(),
                                      behavior_of_nonadaptive(chsh_ea_bit_rac())))
                 .epsilon(1e-12));

  // Antipodal state pairs give complementary conditionals.
  Behavior p = born_behavior(pm);
  for (int y = 0; y < 2; ++y) {
    CHECK(p.at(0, y, 0) + p.at(3, y, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.at(1, y, 0) + p.at(2, y, 0) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("dense coding and the stochastic variant") {
  QuantumMessageStrategy dc = dense_coding_strategy(2);
  CHECK(mesd_rate(behavior_of_quantum(dc)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(dense_coding_strategy(3), std::invalid_argument);

  QuantumMessageStrategy sdc = stochastic_dense_coding_rac();
  sdc.validate();
  double v = evaluate(rac_functional(), behavior_of_quantum(sdc));
  CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v > 0.5 * (1 + 1 / kSqrt2));

  // Product measurements: every joint element has Schmidt rank 1 pieces by
  // construction; verify the declared decomposition is honored.
  CHECK(sdc.measurement_class == MeasurementClass::kProduct);
  sdc.validate();
}

TEST_CASE("claimed values match at 1e-10") {
  CHECK(std::abs(evaluate(rac_functional(), behavior_of_nonadaptive(chsh_ea_bit_rac())) -
                 0.5 * (1 + 1 / kSqrt2)) < 1e-10);
  CHECK(std::abs(evaluate(rac_functional(), behavior_of_adaptive(adaptive_ea_trit_rac())) -
                 0.25 * (3 + 1 / kSqrt2)) < 1e-10);
  CHECK(std::abs(evaluate(facet_functional(), born_behavior(facet_qubit_povm_strategy())) - 2.25) <
        1e-10);
}
