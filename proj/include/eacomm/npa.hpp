#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "eacomm/sdp.hpp"
#include "eacomm/tasks.hpp"

namespace eacomm {

// Measurement scenario behind the moment-matrix relaxation. Alice has X
// settings with D outcomes (the message); Bob has Y inputs with
// outcomes_per_y[y] outcomes. When bob_per_message is set Bob's measurement
// settings are the pairs (y, m) — the message-assisted scenario; otherwise
// his settings are just y (plain Bell scenario).
struct Scenario {
  int X = 0;
  int D = 0;
  int Y = 0;
  std::vector<int> outcomes_per_y;
  bool bob_per_message = true;

  int bob_settings() const { return Y * (bob_per_message ? D : 1); }
  int bob_outcomes(int setting) const {
    return outcomes_per_y[bob_per_message ? setting / D : setting];
  }
};

Scenario rac_scenario(int message_size);  // X=4, Y=2, binary outputs
Scenario facet_scenario();                // X=3, D=2, outputs {2,3}
Scenario chsh_scenario();                 // plain Bell, 2x2 settings, binary

// Projector letter. Outcome indices run below cardinality-1: the last
// outcome of every measurement is eliminated through completeness.
struct Letter {
  int party = 0;    // 0 = Alice, 1 = Bob
  int setting = 0;  // Alice: x; Bob: y*D + m (or y in plain Bell scenarios)
  int outcome = 0;
  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;  // empty word = identity

// Hierarchy levels 1..3 plus intermediate monomial sets: "1+AB" adds the
// mixed products to level 1, "2+AAB"/"2+ABB"/"2+AAB+ABB" add the named
// length-3 party patterns to level 2.
enum class NpaLevel { k1, k1AB, k2, k2AAB, k2ABB, k2AABB, k3 };
std::optional<NpaLevel> parse_level(const std::string& s);
std::string to_string(NpaLevel level);

// Word algebra for a scenario: idempotence, same-setting orthogonality,
// Alice-Bob commutation, and (nonadaptive only) commutation of Bob letters
// sharing the same y.
class WordAlgebra {
public:
  WordAlgebra(Scenario sc, bool nonadaptive) : sc_(std::move(sc)), nonadaptive_(nonadaptive) {}

  bool commute(const Letter& a, const Letter& b) const;
  // Canonical form under the rewrite system, or nullopt for the zero word.
  // Canonical = lexicographic minimum of the commutation orbit of the fully
  // reduced word; independent of rule application order.
  std::optional<Word> canonicalize(const Word& w) const;
  // Representative of the moment class: min(canon(w), canon(reverse w)),
  // identifying a word with its adjoint.
  std::optional<Word> class_representative(const Word& w) const;

  const Scenario& scenario() const { return sc_; }
  bool nonadaptive() const { return nonadaptive_; }

private:
  Scenario sc_;
  bool nonadaptive_ = false;
};

std::vector<Letter> scenario_letters(const Scenario& sc);

struct MomentMatrix {
  Scenario scenario;
  bool nonadaptive = false;
  bool symmetrized = false;
  NpaLevel level = NpaLevel::k1;

  std::vector<Word> index;        // monomials labelling rows/columns
  Eigen::MatrixXi entry_class;    // (i,j) -> merged class id, -1 for zero
  std::vector<Word> class_words;  // representative word per raw class; [0] = identity

  int size() const { return static_cast<int>(index.size()); }
  // Number of distinct entry classes after merging (including the pinned
  // identity class).
  int num_classes() const { return num_merged_classes; }

  // Merged class id for a word, or -1 when it does not appear in the matrix
  // (or reduces to zero).
  int class_of(const Word& w) const;

  // internal bookkeeping (merged-class ids are contiguous, 0 = identity)
  int num_merged_classes = 0;
  std::unordered_map<std::string, int> class_ids;  // raw representative -> raw id
  std::vector<int> merged_of_raw;
};

// Canonical index set and entry classes at the requested level. With
// symmetrize, classes are merged along the orbits of the message-relabeling
// group sigma in S_D acting as m -> sigma(m) on Alice outcomes and
// (y, m) -> (y, sigma(m)) on Bob settings (moves that hit an eliminated
// Alice outcome are skipped; that is always sound, merely less aggressive).
// Guard: at most 2000 monomials.
MomentMatrix build_moment_matrix(const Scenario& sc, NpaLevel level, bool nonadaptive,
                                 bool symmetrize);

// Linear combination of moment classes plus a constant.
struct MomentExpression {
  std::vector<double> coeffs;  // indexed by merged class id
  double constant = 0.0;
};

// sum_m <A_{m|x} B_{b|y,m}> with eliminated outcomes expanded through
// completeness. Requires a bob_per_message scenario.
MomentExpression probability_expression(const MomentMatrix& m, int x, int y, int b);

// Affine SDP whose optimum upper-bounds the functional over the strategy
// class encoded by the matrix (adaptive, or non-adaptive when the Bob
// commutators were switched on).
SdpProblem objective_from_functional(const LinearFunctional& f, const MomentMatrix& m);

// CHSH operator in the plain Bell scenario, for solver cross-checks.
SdpProblem chsh_problem(const MomentMatrix& m);

struct UpperBoundResult {
  double value = 0.0;
  SdpResult sdp;
  int matrix_size = 0;
  int num_vars = 0;
};

UpperBoundResult upper_bound(const LinearFunctional& f, const Scenario& sc, NpaLevel level,
                             bool nonadaptive, bool symmetrize, const SdpOptions& opts = {});

}  // namespace eacomm
