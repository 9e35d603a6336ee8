#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eacomm/sampling.hpp"
#include "eacomm/strategies.hpp"
#include "eacomm/tasks.hpp"

using namespace eacomm;

TEST_CASE("rac functional basics") {
  LinearFunctional f = rac_functional();
  Behavior uniform(4, 2, 2);
  for (auto& v : uniform.p) v = 0.5;
  CHECK(evaluate(f, uniform) == doctest::Approx(0.5).epsilon(1e-14));

  CHECK(classical_bound(f, 2).value == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(classical_bound(f, 3).value == doctest::Approx(7.0 / 8).epsilon(1e-14));
}

TEST_CASE("facet functional values") {
  LinearFunctional f = facet_functional();

  // Uniform behavior: 1/2 per outcome for the binary setting, 1/3 for the
  // ternary one. Direct substitution gives 1/2 - 1/3 - 1/3 = -1/6.
  Behavior uniform(3, 2, 3);
  for (int x = 0; x < 3; ++x) {
    uniform.at(x, 0, 0) = uniform.at(x, 0, 1) = 0.5;
    for (int b = 0; b < 3; ++b) uniform.at(x, 1, b) = 1.0 / 3;
  }
  CHECK(evaluate(f, uniform) == doctest::Approx(-1.0 / 6).epsilon(1e-12));

  CHECK(classical_bound(f, 2).value == doctest::Approx(2.0).epsilon(1e-12));

  // POVM strategy reaches 9/4, projective construction sqrt(5).
  CHECK(evaluate(f, born_behavior(facet_qubit_povm_strategy())) ==
        doctest::Approx(2.25).epsilon(1e-12));
  CHECK(evaluate(f, born_behavior(facet_qubit_projective_strategy())) ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));

  // Zero functional evaluates to zero.
  LinearFunctional zero = f;
  zero.coeffs.assign(zero.coeffs.size(), 0.0);
  CHECK(evaluate(zero, uniform) == 0.0);
}

TEST_CASE("facet tightness witnessed by affine rank") {
  LinearFunctional f = facet_functional();
  auto vertices = deterministic_behaviors(f, 2);
  std::vector<Behavior> tight;
  for (const auto& v : vertices)
    if (std::abs(evaluate(f, v) - 2.0) < 1e-12) tight.push_back(v);
  CHECK(tight.size() >= 6);  // at least B*D affinely independent points exist
  int all_rank = affine_rank(vertices);
  int tight_rank = affine_rank(tight);
  CHECK(all_rank == 9);
  CHECK(tight_rank == all_rank - 1);
}

TEST_CASE("classical bound is monotone in the message size") {
  for (const auto& f : {rac_functional(), facet_functional()}) {
    double prev = -1e300;
    for (int D = 1; D <= 3; ++D) {
      double v = classical_bound(f, D).value;
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
  // A 4-valued message solves the RAC exactly.
  CHECK(classical_bound(rac_functional(), 4).value == doctest::Approx(1.0));
}

TEST_CASE("evaluate is linear") {
  Rng rng(8);
  LinearFunctional f = rac_functional();
  NonAdaptiveStrategy s1 = random_nonadaptive(4, 2, 2, 2, rng);
  NonAdaptiveStrategy s2 = random_nonadaptive(4, 2, 2, 2, rng);
  Behavior p = behavior_of_nonadaptive(s1), q = behavior_of_nonadaptive(s2);
  double lam = 0.37;
  Behavior mix(4, 2, 2);
  for (size_t i = 0; i < mix.p.size(); ++i) mix.p[i] = lam * p.p[i] + (1 - lam) * q.p[i];
  CHECK(std::abs(evaluate(f, mix) - lam * evaluate(f, p) - (1 - lam) * evaluate(f, q)) < 1e-12);
}

TEST_CASE("mesd rate") {
  Behavior ident(1, 1, 1);
  ident.at(0, 0, 0) = 1.0;
  CHECK(mesd_rate(ident) == doctest::Approx(1.0));

  CHECK(mesd_rate(behavior_of_quantum(dense_coding_strategy(2))) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mesd_rate(behavior_of_quantum(dense_coding_product_zz())) ==
        doctest::Approx(0.5).epsilon(1e-12));

  Behavior bad(2, 2, 2);
  CHECK_THROWS_AS(mesd_rate(bad), std::invalid_argument);
}

TEST_CASE("separable quantum strategies respect the D/X discrimination bound") {
  Rng rng(123);
  for (int trial = 0; trial < 60; ++trial) {
    auto cls = trial % 3 == 0   ? MeasurementClass::kProduct
               : trial % 3 == 1 ? MeasurementClass::kSeqBThenM
                                : MeasurementClass::kSeqMThenB;
    QuantumMessageStrategy s = random_separable_quantum_strategy(4, 1, 4, 2, cls, rng);
    CHECK(mesd_rate(behavior_of_quantum(s)) <= 0.5 + 1e-9);
  }
}

TEST_CASE("enumeration guard") {
  LinearFunctional f = rac_functional();
  CHECK_THROWS_AS(classical_bound(f, 40), std::invalid_argument);
}
