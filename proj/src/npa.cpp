#include "eacomm/npa.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace eacomm {

Scenario rac_scenario(int message_size) {
  return Scenario{4, message_size, 2, {2, 2}, true};
}

Scenario facet_scenario() { return Scenario{3, 2, 2, {2, 3}, true}; }

Scenario chsh_scenario() { return Scenario{2, 2, 2, {2, 2}, false}; }

std::optional<NpaLevel> parse_level(const std::string& s) {
  if (s == "1") return NpaLevel::k1;
  if (s == "1+AB" || s == "1+ab") return NpaLevel::k1AB;
  if (s == "2") return NpaLevel::k2;
  if (s == "2+AAB" || s == "2+aab") return NpaLevel::k2AAB;
  if (s == "2+ABB" || s == "2+abb") return NpaLevel::k2ABB;
  if (s == "2+AAB+ABB" || s == "2+aab+abb") return NpaLevel::k2AABB;
  if (s == "3") return NpaLevel::k3;
  return std::nullopt;
}

std::string to_string(NpaLevel level) {
  switch (level) {
    case NpaLevel::k1: return "1";
    case NpaLevel::k1AB: return "1+AB";
    case NpaLevel::k2: return "2";
    case NpaLevel::k2AAB: return "2+AAB";
    case NpaLevel::k2ABB: return "2+ABB";
    case NpaLevel::k2AABB: return "2+AAB+ABB";
    case NpaLevel::k3: return "3";
  }
  return "?";
}

namespace {

std::string encode(const Word& w) {
  std::string s;
  s.reserve(3 * w.size());
  for (const Letter& l : w) {
    s.push_back(static_cast<char>(l.party));
    s.push_back(static_cast<char>(l.setting));
    s.push_back(static_cast<char>(l.outcome));
  }
  return s;
}

int max_word_length(NpaLevel level) {
  switch (level) {
    case NpaLevel::k1: return 1;
    case NpaLevel::k1AB: return 2;
    case NpaLevel::k2: return 2;
    case NpaLevel::k2AAB:
    case NpaLevel::k2ABB:
    case NpaLevel::k2AABB: return 3;
    case NpaLevel::k3: return 3;
  }
  return 1;
}

// Whether a canonical word of maximal length belongs to the level's
// monomial set (shorter words are always kept).
bool keep_top_word(NpaLevel level, const Word& w) {
  int alice = 0;
  for (const Letter& l : w) alice += l.party == 0 ? 1 : 0;
  int bob = static_cast<int>(w.size()) - alice;
  switch (level) {
    case NpaLevel::k1AB: return alice == 1 && bob == 1;
    case NpaLevel::k2AAB: return alice == 2 && bob == 1;
    case NpaLevel::k2ABB: return alice == 1 && bob == 2;
    case NpaLevel::k2AABB: return (alice == 2 && bob == 1) || (alice == 1 && bob == 2);
    default: return true;
  }
}

}  // namespace

std::vector<Letter> scenario_letters(const Scenario& sc) {
  std::vector<Letter> letters;
  for (int x = 0; x < sc.X; ++x)
    for (int o = 0; o < sc.D - 1; ++o) letters.push_back({0, x, o});
  for (int s = 0; s < sc.bob_settings(); ++s)
    for (int o = 0; o < sc.bob_outcomes(s) - 1; ++o) letters.push_back({1, s, o});
  return letters;
}

bool WordAlgebra::commute(const Letter& a, const Letter& b) const {
  if (a.party != b.party) return true;
  if (a.setting == b.setting) return false;  // reduction territory
  if (a.party == 1 && nonadaptive_ && sc_.bob_per_message &&
      a.setting / sc_.D == b.setting / sc_.D)
    return true;  // same y, different message: Bob letters commute
  return false;
}

std::optional<Word> WordAlgebra::canonicalize(const Word& w) const {
  Word cur = w;
  while (true) {
    if (cur.empty()) return cur;
    // Closure of the word under swaps of adjacent commuting letters.
    std::set<Word> orbit{cur};
    std::vector<Word> frontier{cur};
    while (!frontier.empty()) {
      std::vector<Word> next;
      for (const Word& u : frontier)
        for (size_t i = 0; i + 1 < u.size(); ++i) {
          if (u[i] == u[i + 1] || !commute(u[i], u[i + 1])) continue;
          Word v = u;
          std::swap(v[i], v[i + 1]);
          if (orbit.insert(v).second) next.push_back(v);
        }
      frontier = std::move(next);
    }
    // Apply the first reduction reachable in the orbit; restart on success.
    bool reduced = false;
    for (const Word& u : orbit) {
      for (size_t i = 0; i + 1 < u.size(); ++i) {
        if (u[i].party != u[i + 1].party || u[i].setting != u[i + 1].setting) continue;
        if (u[i].outcome != u[i + 1].outcome) return std::nullopt;  // orthogonal
        Word v = u;
        v.erase(v.begin() + i);  // idempotent
        cur = std::move(v);
        reduced = true;
        break;
      }
      if (reduced) break;
    }
    if (!reduced) return *orbit.begin();
  }
}

std::optional<Word> WordAlgebra::class_representative(const Word& w) const {
  auto c1 = canonicalize(w);
  if (!c1) return std::nullopt;
  Word rev(w.rbegin(), w.rend());
  auto c2 = canonicalize(rev);
  assert(c2);
  return std::min(*c1, *c2);
}

int MomentMatrix::class_of(const Word& w) const {
  WordAlgebra alg(scenario, nonadaptive);
  auto rep = alg.class_representative(w);
  if (!rep) return -1;
  auto it = class_ids.find(encode(*rep));
  if (it == class_ids.end()) return -1;
  return merged_of_raw[it->second];
}

MomentMatrix build_moment_matrix(const Scenario& sc, NpaLevel level, bool nonadaptive,
                                 bool symmetrize) {
  MomentMatrix m;
  m.scenario = sc;
  m.nonadaptive = nonadaptive;
  m.symmetrized = symmetrize;
  m.level = level;

  WordAlgebra alg(sc, nonadaptive);
  const auto letters = scenario_letters(sc);
  const int maxlen = max_word_length(level);

  m.index.push_back({});
  std::set<Word> seen{Word{}};
  std::vector<Word> prev{Word{}};
  for (int k = 1; k <= maxlen; ++k) {
    std::set<Word> batch;
    for (const Word& w : prev)
      for (const Letter& l : letters) {
        Word ext = w;
        ext.push_back(l);
        auto c = alg.canonicalize(ext);
        if (!c || static_cast<int>(c->size()) != k || seen.count(*c)) continue;
        if (k == maxlen && !keep_top_word(level, *c)) continue;
        batch.insert(*c);
      }
    for (const Word& w : batch) {
      m.index.push_back(w);
      seen.insert(w);
    }
    prev.assign(batch.begin(), batch.end());
    if (static_cast<int>(m.index.size()) > 2000)
      throw std::invalid_argument("build_moment_matrix: scenario too large (monomial guard)");
  }

  const int n = m.size();
  m.entry_class = Eigen::MatrixXi::Constant(n, n, -1);
  m.class_words.push_back({});
  m.class_ids.emplace(encode(Word{}), 0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Word w(m.index[i].rbegin(), m.index[i].rend());
      w.insert(w.end(), m.index[j].begin(), m.index[j].end());
      auto rep = alg.class_representative(w);
      int id = -1;
      if (rep) {
        auto key = encode(*rep);
        auto [it, inserted] = m.class_ids.emplace(key, static_cast<int>(m.class_words.size()));
        if (inserted) m.class_words.push_back(*rep);
        id = it->second;
      }
      m.entry_class(i, j) = m.entry_class(j, i) = id;
    }

  // Union-find over raw classes for the relabeling-group merge.
  const int raw = static_cast<int>(m.class_words.size());
  std::vector<int> parent(raw);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };

  if (symmetrize && sc.bob_per_message && sc.D > 1) {
    std::vector<int> perm(sc.D);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
      perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    for (int c = 1; c < raw; ++c) {
      for (const auto& sigma : perms) {
        bool valid = true, moved = false;
        Word image = m.class_words[c];
        for (Letter& l : image) {
          if (l.party == 0) {
            int o = sigma[l.outcome];
            if (o == sc.D - 1) {
              valid = false;  // image leaves the eliminated basis
              break;
            }
            moved |= o != l.outcome;
            l.outcome = o;
          } else {
            int y = l.setting / sc.D, mm = l.setting % sc.D;
            int nm = sigma[mm];
            moved |= nm != mm;
            l.setting = y * sc.D + nm;
          }
        }
        if (!valid || !moved) continue;
        auto rep = alg.class_representative(image);
        assert(rep);  // automorphism: zero maps to zero
        auto it = m.class_ids.find(encode(*rep));
        if (it != m.class_ids.end()) unite(c, it->second);
      }
    }
  }

  // Contiguous merged ids, identity first.
  m.merged_of_raw.assign(raw, -1);
  int next_id = 0;
  for (int c = 0; c < raw; ++c)
    if (find(c) == c) m.merged_of_raw[c] = next_id++;
  for (int c = 0; c < raw; ++c) m.merged_of_raw[c] = m.merged_of_raw[find(c)];
  m.num_merged_classes = next_id;

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m.entry_class(i, j) >= 0) m.entry_class(i, j) = m.merged_of_raw[m.entry_class(i, j)];

  return m;
}

MomentExpression probability_expression(const MomentMatrix& m, int x, int y, int b) {
  const Scenario& sc = m.scenario;
  if (!sc.bob_per_message)
    throw std::invalid_argument("probability_expression needs a message-assisted scenario");
  if (x < 0 || x >= sc.X || y < 0 || y >= sc.Y || b < 0 || b >= sc.outcomes_per_y[y])
    throw std::invalid_argument("probability_expression: cell out of range");

  MomentExpression expr;
  expr.coeffs.assign(m.num_merged_classes, 0.0);

  using Term = std::pair<double, std::optional<Letter>>;
  const int By = sc.outcomes_per_y[y];
  for (int msg = 0; msg < sc.D; ++msg) {
    std::vector<Term> aterms;
    if (msg < sc.D - 1) {
      aterms.push_back({1.0, Letter{0, x, msg}});
    } else {
      aterms.push_back({1.0, std::nullopt});
      for (int o = 0; o < sc.D - 1; ++o) aterms.push_back({-1.0, Letter{0, x, o}});
    }
    const int setting = y * sc.D + msg;
    std::vector<Term> bterms;
    if (b < By - 1) {
      bterms.push_back({1.0, Letter{1, setting, b}});
    } else {
      bterms.push_back({1.0, std::nullopt});
      for (int o = 0; o < By - 1; ++o) bterms.push_back({-1.0, Letter{1, setting, o}});
    }
    for (const auto& [ca, la] : aterms)
      for (const auto& [cb, lb] : bterms) {
        Word w;
        if (la) w.push_back(*la);
        if (lb) w.push_back(*lb);
        double coef = ca * cb;
        if (w.empty()) {
          expr.constant += coef;
          continue;
        }
        int cls = m.class_of(w);
        if (cls < 0) throw std::logic_error("probability_expression: missing moment class");
        if (cls == 0) expr.constant += coef;
        else expr.coeffs[cls] += coef;
      }
  }
  return expr;
}

namespace {

SdpProblem problem_from_expression(const MomentMatrix& m, const MomentExpression& expr,
                                   const std::string& description) {
  SdpProblem p;
  p.block_size = m.size();
  p.description = description;
  const int vars = m.num_merged_classes - 1;
  p.constraints.assign(vars, {});
  for (int i = 0; i < m.size(); ++i)
    for (int j = i; j < m.size(); ++j) {
      int c = m.entry_class(i, j);
      if (c < 0) continue;
      if (c == 0) p.constant.push_back({i, j, 1.0});
      else p.constraints[c - 1].push_back({i, j, 1.0});
    }
  p.objective.assign(vars, 0.0);
  for (int c = 1; c < m.num_merged_classes; ++c) p.objective[c - 1] = expr.coeffs[c];
  p.offset = expr.constant + (expr.coeffs.empty() ? 0.0 : expr.coeffs[0]);
  return p;
}

}  // namespace

SdpProblem objective_from_functional(const LinearFunctional& f, const MomentMatrix& m) {
  const Scenario& sc = m.scenario;
  if (f.X != sc.X || f.Y != sc.Y)
    throw std::invalid_argument("objective_from_functional: scenario mismatch");
  MomentExpression total;
  total.coeffs.assign(m.num_merged_classes, 0.0);
  total.constant = f.offset;
  for (int x = 0; x < f.X; ++x)
    for (int y = 0; y < f.Y; ++y)
      for (int b = 0; b < f.B; ++b) {
        double c = f.at(x, y, b);
        if (c == 0.0) continue;
        if (b >= sc.outcomes_per_y[y])
          throw std::invalid_argument("objective_from_functional: outcome outside scenario");
        MomentExpression e = probability_expression(m, x, y, b);
        total.constant += c * e.constant;
        for (size_t k = 0; k < e.coeffs.size(); ++k) total.coeffs[k] += c * e.coeffs[k];
      }
  return problem_from_expression(m, total, "functional objective");
}

SdpProblem chsh_problem(const MomentMatrix& m) {
  const Scenario& sc = m.scenario;
  if (sc.bob_per_message || sc.X != 2 || sc.Y != 2)
    throw std::invalid_argument("chsh_problem expects the plain Bell scenario");
  MomentExpression expr;
  expr.coeffs.assign(m.num_merged_classes, 0.0);
  expr.constant = 2.0;
  auto add = [&](const Word& w, double c) {
    int cls = m.class_of(w);
    if (cls < 0) throw std::logic_error("chsh_problem: missing class");
    if (cls == 0) expr.constant += c;
    else expr.coeffs[cls] += c;
  };
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      double s = (x == 1 && y == 1) ? -1.0 : 1.0;
      add(Word{Letter{0, x, 0}, Letter{1, y, 0}}, 4.0 * s);
    }
  add(Word{Letter{0, 0, 0}}, -4.0);
  add(Word{Letter{1, 0, 0}}, -4.0);
  return problem_from_expression(m, expr, "chsh operator");
}

UpperBoundResult upper_bound(const LinearFunctional& f, const Scenario& sc, NpaLevel level,
                             bool nonadaptive, bool symmetrize, const SdpOptions& opts) {
  MomentMatrix m = build_moment_matrix(sc, level, nonadaptive, symmetrize);
  SdpProblem p = objective_from_functional(f, m);
  UpperBoundResult out;
  out.matrix_size = m.size();
  out.num_vars = p.num_vars();
  out.sdp = solve_sdp(p, opts);
  out.value = out.sdp.value;
  return out;
}

}  // namespace eacomm
