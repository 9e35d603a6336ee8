#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eacomm/json_io.hpp"
#include "eacomm/sampling.hpp"
#include "eacomm/strategies.hpp"

using namespace eacomm;

namespace {

double behavior_gap(const Behavior& a, const Behavior& b) {
  double worst = 0;
  for (size_t i = 0; i < a.p.size(); ++i) worst = std::max(worst, std::abs(a.p[i] - b.p[i]));
  return worst;
}

}  // namespace

TEST_CASE("strategy round trips preserve behaviors") {
  Rng rng(60622);

  NonAdaptiveStrategy na = chsh_ea_bit_rac();
  auto na2 = std::get<NonAdaptiveStrategy>(strategy_from_json(to_json(na)));
  CHECK(behavior_gap(behavior_of_nonadaptive(na), behavior_of_nonadaptive(na2)) == 0.0);

  AdaptiveStrategy ad = adaptive_ea_trit_rac();
  auto ad2 = std::get<AdaptiveStrategy>(strategy_from_json(to_json(ad)));
  CHECK(behavior_gap(behavior_of_adaptive(ad), behavior_of_adaptive(ad2)) == 0.0);

  for (auto cls : {MeasurementClass::kProduct, MeasurementClass::kSeqMThenB}) {
    QuantumMessageStrategy qm = random_separable_quantum_strategy(4, 1, 4, 2, cls, rng);
    auto qm2 = std::get<QuantumMessageStrategy>(strategy_from_json(to_json(qm)));
    qm2.validate();
    CHECK(behavior_gap(behavior_of_quantum(qm), behavior_of_quantum(qm2)) == 0.0);
  }
}

TEST_CASE("malformed strategies raise schema errors") {
  CHECK_THROWS_AS(strategy_from_json(json::parse("{}")), schema_error);
  CHECK_THROWS_AS(strategy_from_json(json::parse(R"({"schema":"bogus"})")), schema_error);
  json j = to_json(chsh_ea_bit_rac());
  j["kind"] = "unheard_of";
  CHECK_THROWS_AS(strategy_from_json(j), schema_error);
  j = to_json(chsh_ea_bit_rac());
  j.erase("alice");
  CHECK_THROWS_AS(strategy_from_json(j), schema_error);
}

TEST_CASE("behavior and functional serialization") {
  Behavior p = behavior_of_nonadaptive(chsh_ea_bit_rac());
  Behavior q = behavior_from_json(to_json(p));
  CHECK(p.p == q.p);

  std::string csv = behavior_to_csv(p);
  CHECK(csv.starts_with("x,y,b,p\n"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 4 * 2 * 2);

  LinearFunctional f = facet_functional();
  LinearFunctional g = functional_from_json(to_json(f));
  CHECK(f.coeffs == g.coeffs);
  CHECK(f.outcomes_per_y == g.outcomes_per_y);
  CHECK(f.offset == g.offset);
}

TEST_CASE("invariant violations are detected after deserialization") {
  json j = to_json(chsh_ea_bit_rac());
  j["alice"][0]["elements"][0][0][0][0] = 7.0;  // break PSD/completeness
  auto s = std::get<NonAdaptiveStrategy>(strategy_from_json(j));
  CHECK_THROWS_AS(s.validate(), invariant_error);
}
