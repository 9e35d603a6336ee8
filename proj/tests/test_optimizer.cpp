#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eacomm/optimizer.hpp"
#include "eacomm/sampling.hpp"

using namespace eacomm;

namespace {

std::vector<double> random_params(const StrategyAnsatz& a, Rng& rng) {
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  std::vector<double> p(param_count(a));
  for (double& v : p) v = u(rng);
  return p;
}

}  // namespace

TEST_CASE("zero-angle projective decode is the Z measurement") {
  LinearFunctional f = rac_functional();
  StrategyAnsatz a = make_ansatz(AnsatzClass::kQubitProjective, f);
  std::vector<double> p(param_count(a), 0.0);
  DecodedStrategy d = decode(a, p);
  REQUIRE(d.qubit_pm.has_value());
  for (int y = 0; y < 2; ++y) {
    CHECK(d.qubit_pm->povms[y][0].second.z == doctest::Approx(1.0));
    CHECK(d.qubit_pm->povms[y][1].second.z == doctest::Approx(-1.0));
  }
}

TEST_CASE("decoded POVMs are complete on random parameter vectors") {
  LinearFunctional f = facet_functional();
  Rng rng(777);
  for (auto cls : {AnsatzClass::kQubitPovm, AnsatzClass::kEaBitAdaptive,
                   AnsatzClass::kEaBitNonAdaptive}) {
    StrategyAnsatz a = make_ansatz(cls, f);
    int trials = cls == AnsatzClass::kQubitPovm ? 1000 : 100;
    for (int t = 0; t < trials; ++t) {
      DecodedStrategy d = decode(a, random_params(a, rng), t % num_variants(a));
      d.validate();
      if (d.qubit_pm) {
        for (const auto& povm : d.qubit_pm->povms) {
          double wsum = 0;
          BlochVector vsum{0, 0, 0};
          for (const auto& [w, v] : povm) {
            wsum += w;
            vsum = vsum + v;
          }
          CHECK(std::abs(wsum - 2) < 1e-12);
          CHECK(vsum.norm() < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("decode of encoded facet strategy reproduces 9/4") {
  LinearFunctional f = facet_functional();
  StrategyAnsatz a = make_ansatz(AnsatzClass::kQubitPovm, f);
  std::vector<double> params = encode_qubit_pm(a, facet_qubit_povm_strategy());
  CHECK(eval_ansatz(a, f, params) == doctest::Approx(2.25).epsilon(1e-9));
}

TEST_CASE("analytic gradients match finite differences") {
  Rng rng(31337);
  LinearFunctional facet = facet_functional();
  LinearFunctional rac = rac_functional();
  int points = 0;
  for (auto [cls, fptr] : std::vector<std::pair<AnsatzClass, const LinearFunctional*>>{
           {AnsatzClass::kQubitPovm, &facet},
           {AnsatzClass::kQubitProjective, &facet},
           {AnsatzClass::kEaBitAdaptive, &facet},
           {AnsatzClass::kEaTritAdaptive, &rac},
           {AnsatzClass::kEaTritNonAdaptive, &rac}}) {
    StrategyAnsatz a = make_ansatz(cls, *fptr);
    for (int t = 0; t < 4; ++t) {
      auto p = random_params(a, rng);
      CHECK(gradient_check(a, *fptr, p, t % num_variants(a)) < 1e-6);
      ++points;
    }
  }
  CHECK(points == 20);
}

TEST_CASE("gradient is linear in the functional") {
  Rng rng(5);
  LinearFunctional f = facet_functional();
  LinearFunctional f2 = f;
  for (auto& c : f2.coeffs) c *= 2;
  f2.offset *= 2;
  StrategyAnsatz a = make_ansatz(AnsatzClass::kQubitPovm, f);
  auto p = random_params(a, rng);
  auto g1 = analytic_gradient(a, f, p);
  auto g2 = analytic_gradient(a, f2, p);
  for (size_t i = 0; i < g1.size(); ++i) CHECK(g2[i] == doctest::Approx(2 * g1[i]).epsilon(1e-10));
}

TEST_CASE("optimizer rediscovers the facet optima") {
  LinearFunctional f = facet_functional();
  OptimizerConfig cfg;
  cfg.restarts = 50;
  cfg.seed = 20240901;

  StrategyAnsatz povm = make_ansatz(AnsatzClass::kQubitPovm, f);
  MaximizeResult rp = maximize(f, povm, cfg);
  CHECK(rp.best_value >= 2.25 - 1e-4);
  CHECK(rp.best_value <= 2.25 + 1e-9);

  StrategyAnsatz proj = make_ansatz(AnsatzClass::kQubitProjective, f);
  MaximizeResult rj = maximize(f, proj, cfg);
  CHECK(rj.best_value >= std::sqrt(5.0) - 1e-4);
  CHECK(rj.best_value <= std::sqrt(5.0) + 1e-6);

  // Nested classes order correctly within the same run.
  CHECK(rj.best_value <= rp.best_value + 1e-9);

  // Reported best strategies decode to feasible objects.
  DecodedStrategy dp = decode(povm, rp.best_params, rp.best_variant);
  dp.validate();
  CHECK(eval_ansatz(povm, f, rp.best_params, rp.best_variant) ==
        doctest::Approx(rp.best_value).epsilon(1e-12));

  // Converged run sits at a stationary point.
  auto g = analytic_gradient(povm, f, rp.best_params, rp.best_variant);
  double gn = 0;
  for (double v : g) gn += v * v;
  CHECK(std::sqrt(gn) < 1e-5);
}

TEST_CASE("optimizer rediscovers the adaptive trit value") {
  LinearFunctional f = rac_functional();
  StrategyAnsatz a = make_ansatz(AnsatzClass::kEaTritAdaptive, f);
  OptimizerConfig cfg;
  cfg.restarts = 50;
  cfg.seed = 7;
  MaximizeResult r = maximize(f, a, cfg);
  CHECK(r.best_value >= 0.9268 - 1e-3);
  CHECK(r.best_value <= 0.25 * (3 + 1 / std::sqrt(2.0)) + 1e-9);
}

TEST_CASE("classical ansatz delegates to exact enumeration") {
  LinearFunctional f = rac_functional();
  StrategyAnsatz a = make_ansatz(AnsatzClass::kUnassistedClassical, f);
  OptimizerConfig cfg;
  MaximizeResult r = maximize(f, a, cfg);
  CHECK(r.best_value == doctest::Approx(0.75));
  CHECK(r.method == "exhaustive-enumeration");
}

TEST_CASE("maximize is deterministic for a fixed seed") {
  LinearFunctional f = facet_functional();
  StrategyAnsatz a = make_ansatz(AnsatzClass::kQubitProjective, f);
  OptimizerConfig cfg;
  cfg.restarts = 8;
  cfg.seed = 99;
  MaximizeResult r1 = maximize(f, a, cfg);
  MaximizeResult r2 = maximize(f, a, cfg);
  CHECK(r1.best_value == r2.best_value);
  CHECK(r1.best_restart == r2.best_restart);
  REQUIRE(r1.best_params.size() == r2.best_params.size());
  for (size_t i = 0; i < r1.best_params.size(); ++i)
    CHECK(r1.best_params[i] == r2.best_params[i]);
}

TEST_CASE("quantum-message ansatz decodes validly and respects the separable bound") {
  LinearFunctional f = mesd_functional(4);
  Rng rng(404);
  for (auto cls : {MeasurementClass::kJoint, MeasurementClass::kProduct,
                   MeasurementClass::kSeqBThenM, MeasurementClass::kSeqMThenB}) {
    StrategyAnsatz a = make_ansatz(AnsatzClass::kQuantumMessage, f);
    a.qm_class = cls;
    for (int t = 0; t < 5; ++t) {
      DecodedStrategy d = decode(a, random_params(a, rng), t % num_variants(a));
      d.validate();
      if (cls != MeasurementClass::kJoint)
        CHECK(mesd_rate(d.behavior()) <= 0.5 + 1e-9);
    }
  }
  // A short finite-difference ascent in the product class stays separable.
  StrategyAnsatz a = make_ansatz(AnsatzClass::kQuantumMessage, f);
  OptimizerConfig cfg;
  cfg.restarts = 4;
  cfg.max_iters = 40;
  cfg.seed = 3;
  MaximizeResult r = maximize(f, a, cfg);
  CHECK(r.method == "gradient-ascent/finite-difference");
  CHECK(r.best_value <= 0.5 + 1e-9);
}

TEST_CASE("ea-bit classes order correctly on the facet task") {
  LinearFunctional f = facet_functional();
  OptimizerConfig cfg;
  cfg.restarts = 24;
  cfg.seed = 11;
  MaximizeResult na = maximize(f, make_ansatz(AnsatzClass::kEaBitNonAdaptive, f), cfg);
  MaximizeResult ad = maximize(f, make_ansatz(AnsatzClass::kEaBitAdaptive, f), cfg);
  CHECK(na.best_value <= ad.best_value + 1e-9);
}
