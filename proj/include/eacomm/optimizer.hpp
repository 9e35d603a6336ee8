#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "eacomm/strategies.hpp"
#include "eacomm/tasks.hpp"

namespace eacomm {

enum class AnsatzClass {
  kUnassistedClassical,  // exact enumeration, no continuous parameters
  kQubitProjective,
  kQubitPovm,
  kEaBitAdaptive,
  kEaBitNonAdaptive,
  kEaTritAdaptive,
  kEaTritNonAdaptive,
  kQuantumMessage,
};

std::string to_string(AnsatzClass c);
std::optional<AnsatzClass> ansatz_class_from_string(const std::string& s);

// Parameterized strategy family for one scenario. Continuous parameters are
// unconstrained reals (POVMs through the T^dagger T / S^{-1/2} decode, pure
// states through normalized complex vectors, Bloch data through spherical
// angles); small discrete choices (outcome placements, post-processing
// tables) are indexed by a variant id that restarts cycle through.
struct StrategyAnsatz {
  AnsatzClass cls = AnsatzClass::kQubitPovm;
  int X = 0, Y = 0, B = 0;
  std::vector<int> outcomes_per_y;  // defaults to B everywhere
  int D = 2;                        // message size (EA) or dimension (quantum)
  int local_dim = 2;                // Hilbert dimension per side for EA classes
  int base_outcomes = 2;            // B' of the non-adaptive base measurements
  MeasurementClass qm_class = MeasurementClass::kProduct;

  int outcomes_for(int y) const {
    return outcomes_per_y.empty() ? B : outcomes_per_y[y];
  }
};

// Ansatz matched to a functional's scenario shape.
StrategyAnsatz make_ansatz(AnsatzClass cls, const LinearFunctional& f);

int param_count(const StrategyAnsatz& a);
int num_variants(const StrategyAnsatz& a);

struct DecodedStrategy {
  std::optional<QubitPmData> qubit_pm;
  std::optional<AdaptiveStrategy> adaptive;
  std::optional<NonAdaptiveStrategy> nonadaptive;
  std::optional<QuantumMessageStrategy> quantum;

  Behavior behavior() const;
  void validate() const;
};

// Deterministic map from a parameter vector (and discrete variant) to a
// valid strategy. Throws std::invalid_argument on a layout mismatch.
DecodedStrategy decode(const StrategyAnsatz& a, std::span<const double> params, int variant = 0);

// Parameters reproducing the given prepare-and-measure data under the
// qubit-povm decode (states to angles, elements to their Hermitian roots).
std::vector<double> encode_qubit_pm(const StrategyAnsatz& a, const QubitPmData& pm);

double eval_ansatz(const StrategyAnsatz& a, const LinearFunctional& f,
                   std::span<const double> params, int variant = 0);

bool has_analytic_gradient(AnsatzClass cls);

// Analytic gradient of eval_ansatz in the continuous parameters. Supported
// for the qubit and EA classes; throws otherwise.
std::vector<double> analytic_gradient(const StrategyAnsatz& a, const LinearFunctional& f,
                                      std::span<const double> params, int variant = 0);

// Max deviation between the analytic gradient and a central finite
// difference with h = 1e-5.
double gradient_check(const StrategyAnsatz& a, const LinearFunctional& f,
                      std::span<const double> params, int variant = 0);

struct OptimizerConfig {
  int restarts = 50;
  int max_iters = 400;
  double init_step = 0.25;
  double f_tol = 1e-12;     // stop when line-search improvements fall below
  double min_step = 1e-12;
  std::uint64_t seed = 1;
};

struct RestartTrace {
  int restart = 0;
  int variant = 0;
  double value = 0;
  int iterations = 0;
};

struct MaximizeResult {
  double best_value = 0;
  int best_restart = -1;
  int best_variant = 0;
  std::vector<double> best_params;
  std::vector<RestartTrace> trace;
  std::string method;  // declared ascent method, for result metadata
};

// Seeded multi-restart local ascent; deterministic for a fixed config.
// Restarts draw parameters i.i.d. uniform in [-pi, pi] and cycle through the
// ansatz's discrete variants; ties resolve to the lowest restart index.
MaximizeResult maximize(const LinearFunctional& f, const StrategyAnsatz& a,
                        const OptimizerConfig& cfg);

}  // namespace eacomm
