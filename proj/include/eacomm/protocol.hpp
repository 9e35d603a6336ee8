#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eacomm/quantum.hpp"

namespace eacomm {

// Conditional distribution p(b|x,y), stored dense. All indices 0-based in
// code; serialized forms are documented alongside the JSON schema.
struct Behavior {
  int X = 0, Y = 0, B = 0;
  std::vector<double> p;  // p[(x*Y + y)*B + b]

  Behavior() = default;
  Behavior(int X_, int Y_, int B_) : X(X_), Y(Y_), B(B_), p(X_ * Y_ * B_, 0.0) {}

  double& at(int x, int y, int b) { return p[(x * Y + y) * B + b]; }
  double at(int x, int y, int b) const { return p[(x * Y + y) * B + b]; }
  void validate() const;  // entries in [0,1], sum_b = 1, within kBehaviorTol
};

// Sender measures, relays the outcome as a classical message of size D, and
// the receiver picks a measurement that may depend on the message.
struct AdaptiveStrategy {
  DensityState shared_state;            // dims = [dimA, dimB]
  int D = 0;                            // message alphabet size
  std::vector<Povm> alice;              // [X], D outcomes each, on H_A
  std::vector<std::vector<Povm>> bob;   // [Y][D], B outcomes each, on H_B

  int X() const { return static_cast<int>(alice.size()); }
  int Y() const { return static_cast<int>(bob.size()); }
  int B() const { return bob.empty() || bob[0].empty() ? 0 : bob[0][0].num_outcomes(); }
  int dimA() const { return shared_state.dims.at(0); }
  int dimB() const { return shared_state.dims.at(1); }
  void validate() const;
};

// Receiver measures independently of the message and post-processes:
// b = g(y, m, b'). Equivalent to an adaptive strategy with commuting
// per-(y) measurement families (see lift_to_adaptive).
struct NonAdaptiveStrategy {
  DensityState shared_state;
  int D = 0;
  std::vector<Povm> alice;                             // [X], D outcomes
  std::vector<Povm> bob_base;                          // [Y], B' outcomes
  std::vector<std::vector<std::vector<int>>> post;     // post[y][m][b'] -> b, 0-based
  int num_outputs = 0;                                 // B

  int X() const { return static_cast<int>(alice.size()); }
  int Y() const { return static_cast<int>(bob_base.size()); }
  void validate() const;
};

enum class MeasurementClass { kJoint, kProduct, kSeqMThenB, kSeqBThenM };

std::string to_string(MeasurementClass c);
std::optional<MeasurementClass> measurement_class_from_string(const std::string& s);

// Decomposition data for non-joint receiver measurements on M (x) B.
struct ProductMeasurement {
  std::vector<Povm> message_povm;  // [Y], on M
  std::vector<Povm> local_povm;    // [Y], on B
  // output_map[y][b1][b2][b] = p(b | b1, b2); rows sum to 1.
  std::vector<std::vector<std::vector<std::vector<double>>>> output_map;
};

struct SequentialMeasurement {
  // seq_b_then_m: first_povm[y] on B with outcome b', then second_povm[b'] on M
  // yields the output b. seq_m_then_b mirrors this with M measured first.
  std::vector<Povm> first_povm;
  std::vector<Povm> second_povm;
};

// Sender applies an input-dependent channel to her share and sends the
// D-dimensional output system M; receiver measures M (x) B jointly or in one
// of the restricted (product / sequential) classes.
struct QuantumMessageStrategy {
  DensityState shared_state;                 // dims = [dimA, dimB]
  int D = 0;                                 // message Hilbert-space dimension
  std::vector<KrausChannel> channels;        // [X], H_A -> H_M
  MeasurementClass measurement_class = MeasurementClass::kJoint;
  std::vector<Povm> bob;                     // [Y], on H_M (x) H_B (assembled)
  std::optional<ProductMeasurement> product;
  std::optional<SequentialMeasurement> sequential;

  int X() const { return static_cast<int>(channels.size()); }
  int Y() const { return static_cast<int>(bob.size()); }
  int B() const { return bob.empty() ? 0 : bob[0].num_outcomes(); }
  int dimA() const { return shared_state.dims.at(0); }
  int dimB() const { return shared_state.dims.at(1); }
  void validate() const;  // includes the declared-composition check at kStructTol
};

// Assemble the joint POVM for y from the declared decomposition.
std::vector<Povm> assemble_joint_povm(const QuantumMessageStrategy& s);

// p(b|x,y) = sum_m Tr(rho (A_{m|x} (x) B_{b|y,m})).
Behavior behavior_of_adaptive(const AdaptiveStrategy& s);

// p(b|x,y) = sum_m sum_{b': g(y,m,b')=b} Tr(rho (A_{m|x} (x) B_{b'|y})).
Behavior behavior_of_nonadaptive(const NonAdaptiveStrategy& s);

// B_{b|y,m} = sum_{b': g(y,m,b')=b} B_base_{b'|y}.
AdaptiveStrategy lift_to_adaptive(const NonAdaptiveStrategy& s);

// p(b|x,y) = Tr((channel_x (x) id)[rho] B_{b|y}).
Behavior behavior_of_quantum(const QuantumMessageStrategy& s);

struct NonAdaptivityReport {
  bool nonadaptive = false;
  double max_commutator_norm = 0.0;
};

// True iff all of Bob's measurement operators sharing the same y commute,
// i.e. max over (m,b),(m',b') of ||[B_{b|y,m}, B_{b'|y,m'}]|| <= tol in
// operator norm. Sufficient for non-adaptivity of the realized correlations.
NonAdaptivityReport check_nonadaptive(const AdaptiveStrategy& s, double tol = 1e-8);

}  // namespace eacomm
