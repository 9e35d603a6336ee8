#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "eacomm/protocol.hpp"
#include "eacomm/tasks.hpp"

namespace eacomm {

using json = nlohmann::json;

// Matrices are nested row-major arrays of [re, im] pairs.
json to_json(const Cmat& m);
Cmat matrix_from_json(const json& j);

json to_json(const DensityState& s);
DensityState state_from_json(const json& j);

json to_json(const Povm& p);
Povm povm_from_json(const json& j);

json to_json(const KrausChannel& c);
KrausChannel channel_from_json(const json& j);

// Strategy files carry {"schema": "eacomm/strategy/v1", "kind": ...} with
// kind one of adaptive_ea_classical | nonadaptive_ea_classical | quantum_message.
json to_json(const AdaptiveStrategy& s);
json to_json(const NonAdaptiveStrategy& s);
json to_json(const QuantumMessageStrategy& s);

using AnyStrategy = std::variant<AdaptiveStrategy, NonAdaptiveStrategy, QuantumMessageStrategy>;

// Throws schema_error on malformed input; invariant violations are left to
// the caller via validate().
AnyStrategy strategy_from_json(const json& j);

json to_json(const Behavior& p);
Behavior behavior_from_json(const json& j);
std::string behavior_to_csv(const Behavior& p);  // header x,y,b,p; 1-based indices

json to_json(const LinearFunctional& f);
LinearFunctional functional_from_json(const json& j);

class schema_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace eacomm
