#include "eacomm/json_io.hpp"

#include <sstream>

namespace eacomm {

namespace {

constexpr const char* kStrategySchema = "eacomm/strategy/v1";
constexpr const char* kFunctionalSchema = "eacomm/functional/v1";
constexpr const char* kBehaviorSchema = "eacomm/behavior/v1";

[[noreturn]] void fail(const std::string& msg) { throw schema_error(msg); }

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) fail(std::string("missing field '") + name + "'");
  return *it;
}

}  // namespace

json to_json(const Cmat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Cmat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) fail("matrix must be a nested array");
  const size_t rows = j.size(), cols = j[0].size();
  Cmat m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    if (j[r].size() != cols) fail("ragged matrix rows");
    for (size_t c = 0; c < cols; ++c) {
      const json& e = j[r][c];
      if (!e.is_array() || e.size() != 2) fail("matrix entries must be [re, im] pairs");
      m(r, c) = cx(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

json to_json(const DensityState& s) {
  return json{{"dims", s.dims}, {"matrix", to_json(s.matrix)}};
}

DensityState state_from_json(const json& j) {
  DensityState s;
  s.dims = field(j, "dims").get<std::vector<int>>();
  s.matrix = matrix_from_json(field(j, "matrix"));
  return s;
}

json to_json(const Povm& p) {
  json elems = json::array();
  for (const auto& e : p.elements) elems.push_back(to_json(e));
  return json{{"dims", {p.dim()}}, {"elements", std::move(elems)}};
}

Povm povm_from_json(const json& j) {
  Povm p;
  for (const auto& e : field(j, "elements")) p.elements.push_back(matrix_from_json(e));
  if (p.elements.empty()) fail("POVM with no elements");
  return p;
}

json to_json(const KrausChannel& c) {
  json ops = json::array();
  for (const auto& k : c.kraus) ops.push_back(to_json(k));
  return json{{"dims", {c.in_dim(), c.out_dim()}}, {"kraus", std::move(ops)}};
}

KrausChannel channel_from_json(const json& j) {
  KrausChannel c;
  for (const auto& k : field(j, "kraus")) c.kraus.push_back(matrix_from_json(k));
  if (c.kraus.empty()) fail("channel with no Kraus operators");
  return c;
}

json to_json(const AdaptiveStrategy& s) {
  json alice = json::array();
  for (const auto& a : s.alice) alice.push_back(to_json(a));
  json bob = json::array();
  for (const auto& row : s.bob) {
    json r = json::array();
    for (const auto& povm : row) r.push_back(to_json(povm));
    bob.push_back(std::move(r));
  }
  return json{{"schema", kStrategySchema},
              {"kind", "adaptive_ea_classical"},
              {"message_size", s.D},
              {"shared_state", to_json(s.shared_state)},
              {"alice", std::move(alice)},
              {"bob", std::move(bob)}};
}

json to_json(const NonAdaptiveStrategy& s) {
  json alice = json::array();
  for (const auto& a : s.alice) alice.push_back(to_json(a));
  json bob = json::array();
  for (const auto& povm : s.bob_base) bob.push_back(to_json(povm));
  return json{{"schema", kStrategySchema},
              {"kind", "nonadaptive_ea_classical"},
              {"message_size", s.D},
              {"num_outputs", s.num_outputs},
              {"shared_state", to_json(s.shared_state)},
              {"alice", std::move(alice)},
              {"bob_base", std::move(bob)},
              {"postprocess", s.post}};
}

json to_json(const QuantumMessageStrategy& s) {
  json channels = json::array();
  for (const auto& c : s.channels) channels.push_back(to_json(c));
  json bob = json::array();
  for (const auto& povm : s.bob) bob.push_back(to_json(povm));
  json out{{"schema", kStrategySchema},
           {"kind", "quantum_message"},
           {"message_dim", s.D},
           {"shared_state", to_json(s.shared_state)},
           {"alice_channels", std::move(channels)},
           {"measurement_class", to_string(s.measurement_class)},
           {"bob_joint", std::move(bob)}};
  if (s.product) {
    json mp = json::array(), lp = json::array();
    for (const auto& p : s.product->message_povm) mp.push_back(to_json(p));
    for (const auto& p : s.product->local_povm) lp.push_back(to_json(p));
    out["decomposition"] = json{{"message_povm", std::move(mp)},
                                {"local_povm", std::move(lp)},
                                {"output_map", s.product->output_map}};
  }
  if (s.sequential) {
    json fp = json::array(), sp = json::array();
    for (const auto& p : s.sequential->first_povm) fp.push_back(to_json(p));
    for (const auto& p : s.sequential->second_povm) sp.push_back(to_json(p));
    out["decomposition"] = json{{"first_povm", std::move(fp)}, {"second_povm", std::move(sp)}};
  }
  return out;
}

AnyStrategy strategy_from_json(const json& j) {
  if (!j.is_object()) fail("strategy file must hold a JSON object");
  if (field(j, "schema").get<std::string>() != kStrategySchema) fail("unknown schema");
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "adaptive_ea_classical") {
    AdaptiveStrategy s;
    s.D = field(j, "message_size").get<int>();
    s.shared_state = state_from_json(field(j, "shared_state"));
    for (const auto& a : field(j, "alice")) s.alice.push_back(povm_from_json(a));
    for (const auto& row : field(j, "bob")) {
      std::vector<Povm> r;
      for (const auto& povm : row) r.push_back(povm_from_json(povm));
      s.bob.push_back(std::move(r));
    }
    return s;
  }
  if (kind == "nonadaptive_ea_classical") {
    NonAdaptiveStrategy s;
    s.D = field(j, "message_size").get<int>();
    s.num_outputs = field(j, "num_outputs").get<int>();
    s.shared_state = state_from_json(field(j, "shared_state"));
    for (const auto& a : field(j, "alice")) s.alice.push_back(povm_from_json(a));
    for (const auto& povm : field(j, "bob_base")) s.bob_base.push_back(povm_from_json(povm));
    s.post = field(j, "postprocess").get<std::vector<std::vector<std::vector<int>>>>();
    return s;
  }
  if (kind == "quantum_message") {
    QuantumMessageStrategy s;
    s.D = field(j, "message_dim").get<int>();
    s.shared_state = state_from_json(field(j, "shared_state"));
    for (const auto& c : field(j, "alice_channels")) s.channels.push_back(channel_from_json(c));
    auto cls = measurement_class_from_string(field(j, "measurement_class").get<std::string>());
    if (!cls) fail("unknown measurement_class");
    s.measurement_class = *cls;
    for (const auto& povm : field(j, "bob_joint")) s.bob.push_back(povm_from_json(povm));
    if (s.measurement_class == MeasurementClass::kProduct) {
      const json& d = field(j, "decomposition");
      ProductMeasurement pm;
      for (const auto& p : field(d, "message_povm")) pm.message_povm.push_back(povm_from_json(p));
      for (const auto& p : field(d, "local_povm")) pm.local_povm.push_back(povm_from_json(p));
      pm.output_map = field(d, "output_map")
                          .get<std::vector<std::vector<std::vector<std::vector<double>>>>>();
      s.product = std::move(pm);
    } else if (s.measurement_class != MeasurementClass::kJoint) {
      const json& d = field(j, "decomposition");
      SequentialMeasurement sq;
      for (const auto& p : field(d, "first_povm")) sq.first_povm.push_back(povm_from_json(p));
      for (const auto& p : field(d, "second_povm")) sq.second_povm.push_back(povm_from_json(p));
      s.sequential = std::move(sq);
    }
    return s;
  }
  fail("unknown strategy kind '" + kind + "'");
}

json to_json(const Behavior& p) {
  json cells = json::array();
  for (int x = 0; x < p.X; ++x) {
    json ys = json::array();
    for (int y = 0; y < p.Y; ++y) {
      json bs = json::array();
      for (int b = 0; b < p.B; ++b) bs.push_back(p.at(x, y, b));
      ys.push_back(std::move(bs));
    }
    cells.push_back(std::move(ys));
  }
  return json{{"schema", kBehaviorSchema}, {"dims", {p.X, p.Y, p.B}}, {"p", std::move(cells)}};
}

Behavior behavior_from_json(const json& j) {
  auto dims = field(j, "dims").get<std::vector<int>>();
  if (dims.size() != 3) fail("behavior dims must be [X, Y, B]");
  Behavior p(dims[0], dims[1], dims[2]);
  const json& cells = field(j, "p");
  for (int x = 0; x < p.X; ++x)
    for (int y = 0; y < p.Y; ++y)
      for (int b = 0; b < p.B; ++b) p.at(x, y, b) = cells.at(x).at(y).at(b).get<double>();
  return p;
}

std::string behavior_to_csv(const Behavior& p) {
  std::ostringstream os;
  os << "x,y,b,p\n";
  char buf[64];
  for (int x = 0; x < p.X; ++x)
    for (int y = 0; y < p.Y; ++y)
      for (int b = 0; b < p.B; ++b) {
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%.17g\n", x + 1, y + 1, b + 1, p.at(x, y, b));
        os << buf;
      }
  return os.str();
}

json to_json(const LinearFunctional& f) {
  json coeffs = json::array();
  for (int x = 0; x < f.X; ++x) {
    json ys = json::array();
    for (int y = 0; y < f.Y; ++y) {
      json bs = json::array();
      for (int b = 0; b < f.B; ++b) bs.push_back(f.at(x, y, b));
      ys.push_back(std::move(bs));
    }
    coeffs.push_back(std::move(ys));
  }
  json out{{"schema", kFunctionalSchema},
           {"dims", {f.X, f.Y, f.B}},
           {"coeffs", std::move(coeffs)},
           {"offset", f.offset}};
  if (!f.outcomes_per_y.empty()) out["outcomes_per_y"] = f.outcomes_per_y;
  if (!f.input_distribution.empty()) out["input_distribution"] = f.input_distribution;
  return out;
}

LinearFunctional functional_from_json(const json& j) {
  if (field(j, "schema").get<std::string>() != kFunctionalSchema) fail("unknown schema");
  auto dims = field(j, "dims").get<std::vector<int>>();
  if (dims.size() != 3) fail("functional dims must be [X, Y, B]");
  LinearFunctional f;
  f.X = dims[0];
  f.Y = dims[1];
  f.B = dims[2];
  f.coeffs.assign(f.X * f.Y * f.B, 0.0);
  const json& coeffs = field(j, "coeffs");
  for (int x = 0; x < f.X; ++x)
    for (int y = 0; y < f.Y; ++y)
      for (int b = 0; b < f.B; ++b) f.at(x, y, b) = coeffs.at(x).at(y).at(b).get<double>();
  f.offset = field(j, "offset").get<double>();
  if (j.contains("outcomes_per_y")) f.outcomes_per_y = j["outcomes_per_y"].get<std::vector<int>>();
  if (j.contains("input_distribution"))
    f.input_distribution = j["input_distribution"].get<std::vector<double>>();
  return f;
}

}  // namespace eacomm
