// Command-line front end: construct strategies, evaluate tasks, check
// adaptivity, run the optimizer and the moment-matrix bounds, and produce
// the full reproduction report.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eacomm/json_io.hpp"
#include "eacomm/npa.hpp"
#include "eacomm/optimizer.hpp"
#include "eacomm/sampling.hpp"
#include "eacomm/strategies.hpp"

using namespace eacomm;

namespace {

enum ExitCode {
  kOk = 0,
  kMismatch = 1,
  kInputError = 2,
  kInvariantViolation = 3,
  kSolverFailure = 4,
};

std::uint64_t seed_with_fallback(std::uint64_t cli_seed, bool seed_given) {
  if (seed_given) return cli_seed;
  if (const char* env = std::getenv("EACOMM_SEED")) return std::strtoull(env, nullptr, 10);
  return 1;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
}

void write_json_file(const std::string& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw schema_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw schema_error(std::string("JSON parse error: ") + e.what());
  }
  return j;
}

json strategy_json_by_name(const std::string& name, double theta) {
  if (name == "chsh-ea-bit-rac") return to_json(chsh_ea_bit_rac());
  if (name == "na-ea-trit-rac") return to_json(na_ea_trit_rac(theta));
  if (name == "adaptive-ea-trit-rac") return to_json(adaptive_ea_trit_rac());
  if (name == "facet-qubit-povm") return to_json(simulate_qubit_pm(facet_qubit_povm_strategy()));
  if (name == "facet-qubit-projective")
    return to_json(simulate_qubit_pm(facet_qubit_projective_strategy()));
  if (name == "unassisted-qubit-rac") return to_json(simulate_qubit_pm(unassisted_qubit_rac()));
  if (name == "dense-coding") return to_json(dense_coding_strategy(2));
  if (name == "stochastic-dense-coding-rac") return to_json(stochastic_dense_coding_rac());
  throw std::invalid_argument("unknown strategy name '" + name + "'");
}

Behavior behavior_of_any(const AnyStrategy& s) {
  if (const auto* a = std::get_if<AdaptiveStrategy>(&s)) return behavior_of_adaptive(*a);
  if (const auto* n = std::get_if<NonAdaptiveStrategy>(&s)) return behavior_of_nonadaptive(*n);
  return behavior_of_quantum(std::get<QuantumMessageStrategy>(s));
}

void validate_any(const AnyStrategy& s) {
  std::visit([](const auto& v) { v.validate(); }, s);
}

std::string kind_of(const AnyStrategy& s) {
  if (std::holds_alternative<AdaptiveStrategy>(s)) return "adaptive_ea_classical";
  if (std::holds_alternative<NonAdaptiveStrategy>(s)) return "nonadaptive_ea_classical";
  return "quantum_message";
}

double task_value(const std::string& task, const Behavior& p) {
  if (task == "rac") return evaluate(rac_functional(), p);
  if (task == "facet") return evaluate(facet_functional(), p);
  if (task == "mesd") return mesd_rate(p);
  throw std::invalid_argument("unknown task '" + task + "'");
}

// ---------------- report ----------------

struct ReportRow {
  std::string task, resource, kind;  // kind: achieved | bound | optimizer | check
  double value = 0;
  std::string reference;  // closed-form reference value, human readable
  double target = 0;   // numeric reproduction target
  double delta = 0;
  double tol = 0;
  bool gated = true;
  std::string status;  // ok | FAIL | info | export-only
  std::string note;
};

json row_to_json(const ReportRow& r) {
  return json{{"task", r.task},     {"resource", r.resource}, {"kind", r.kind},
              {"value", r.value},   {"reference", r.reference},       {"target", r.target},
              {"delta", r.delta},   {"tolerance", r.tol},     {"gated", r.gated},
              {"status", r.status}, {"note", r.note}};
}

ReportRow make_row(std::string task, std::string resource, std::string kind, double value,
                   std::string reference, double target, double tol, std::string note = "") {
  ReportRow r{std::move(task), std::move(resource), std::move(kind), value,
              std::move(reference), target, std::abs(value - target), tol,
              true, "", std::move(note)};
  r.status = r.delta <= tol ? "ok" : "FAIL";
  return r;
}

int run_report(const std::string& out_path, std::string json_path, std::uint64_t seed,
               int restarts, const std::string& npa_level_str, double npa_timeout) {
  const double s2 = std::sqrt(2.0), s5 = std::sqrt(5.0);
  std::vector<ReportRow> rows;
  auto level = parse_level(npa_level_str);
  if (!level) throw std::invalid_argument("bad --npa-level");

  // Exact strategy values and brute-force classical bounds.
  LinearFunctional rac = rac_functional(), facet = facet_functional();
  rows.push_back(make_row("rac", "classical bit", "achieved", classical_bound(rac, 2).value,
                          "3/4", 0.75, 1e-9));
  rows.push_back(make_row("rac", "classical trit", "achieved", classical_bound(rac, 3).value,
                          "7/8", 0.875, 1e-9));
  rows.push_back(make_row("rac", "EA bit (non-adaptive)", "achieved",
                          evaluate(rac, behavior_of_nonadaptive(chsh_ea_bit_rac())),
                          "(1+1/sqrt2)/2", 0.5 * (1 + 1 / s2), 1e-9));
  rows.push_back(make_row("rac", "unassisted qubit", "achieved",
                          evaluate(rac, born_behavior(unassisted_qubit_rac())),
                          "(1+1/sqrt2)/2", 0.5 * (1 + 1 / s2), 1e-9));
  rows.push_back(make_row("rac", "EA trit non-adaptive, theta=pi/4", "achieved",
                          evaluate(rac, behavior_of_nonadaptive(na_ea_trit_rac(M_PI / 4))),
                          "(5+3sqrt2/2)/8", (5 + 3 * s2 / 2) / 8, 1e-9));
  rows.push_back(make_row("rac", "EA trit non-adaptive, tilted optimum", "achieved",
                          evaluate(rac, behavior_of_nonadaptive(na_ea_trit_rac(std::acos(1 / s5)))),
                          "(5+sqrt5)/8", (5 + s5) / 8, 1e-9));
  rows.push_back(make_row("rac", "EA trit adaptive", "achieved",
                          evaluate(rac, behavior_of_adaptive(adaptive_ea_trit_rac())),
                          "(3+1/sqrt2)/4", 0.25 * (3 + 1 / s2), 1e-9));
  rows.push_back(make_row("rac", "EA qubit, product measurements", "achieved",
                          evaluate(rac, behavior_of_quantum(stochastic_dense_coding_rac())),
                          "1", 1.0, 1e-9));
  rows.push_back(make_row("facet", "classical bit", "achieved",
                          classical_bound(facet, 2).value, "2", 2.0, 1e-9));
  rows.push_back(make_row("facet", "qubit projective construction", "achieved",
                          evaluate(facet, born_behavior(facet_qubit_projective_strategy())),
                          "sqrt5", s5, 1e-9));
  rows.push_back(make_row("facet", "qubit POVM construction", "achieved",
                          evaluate(facet, born_behavior(facet_qubit_povm_strategy())),
                          "9/4", 2.25, 1e-9));
  rows.push_back(make_row("mesd", "EA qubit, joint (dense coding)", "achieved",
                          mesd_rate(behavior_of_quantum(dense_coding_strategy(2))),
                          "D^2/X = 1", 1.0, 1e-9));

  {  // separable samples stay below D/X
    Rng rng(seed);
    double worst = 0;
    for (int t = 0; t < 1000; ++t) {
      auto cls = t % 3 == 0   ? MeasurementClass::kProduct
                 : t % 3 == 1 ? MeasurementClass::kSeqBThenM
                              : MeasurementClass::kSeqMThenB;
      worst = std::max(worst, mesd_rate(behavior_of_quantum(
                                  random_separable_quantum_strategy(4, 1, 4, 2, cls, rng))));
    }
    ReportRow r;
    r.task = "mesd";
    r.resource = "separable measurements, 1000 samples";
    r.kind = "check";
    r.value = worst;
    r.reference = "<= D/X = 1/2";
    r.target = 0.5;
    r.tol = 1e-9;
    r.delta = std::max(0.0, worst - 0.5);
    r.status = worst <= 0.5 + 1e-9 ? "ok" : "FAIL";
    r.note = "max over samples";
    rows.push_back(r);
  }

  // Optimizer rediscoveries (seeded).
  {
    OptimizerConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = seed;
    MaximizeResult povm = maximize(facet, make_ansatz(AnsatzClass::kQubitPovm, facet), cfg);
    ReportRow r1 = make_row("facet", "optimizer qubit-povm (" + povm.method + ")", "optimizer",
                            povm.best_value, "9/4", 2.25, 1e-4);
    rows.push_back(r1);
    MaximizeResult proj = maximize(facet, make_ansatz(AnsatzClass::kQubitProjective, facet), cfg);
    ReportRow r2 = make_row("facet", "optimizer qubit-projective", "optimizer", proj.best_value,
                            "sqrt5", s5, 1e-4);
    rows.push_back(r2);
    MaximizeResult trit = maximize(rac, make_ansatz(AnsatzClass::kEaTritAdaptive, rac), cfg);
    ReportRow r3 = make_row("rac", "optimizer ea-trit-adaptive", "optimizer", trit.best_value,
                            "0.9268", 0.25 * (3 + 1 / s2), 1e-3);
    rows.push_back(r3);
  }

  // Moment-matrix upper bounds.
  SdpOptions sopt;
  sopt.time_limit_s = npa_timeout;
  {
    MomentMatrix m = build_moment_matrix(chsh_scenario(), NpaLevel::k1, false, false);
    SdpResult r = solve_sdp(chsh_problem(m), sopt);
    rows.push_back(make_row("chsh", "NPA level 1", "bound", r.value, "2sqrt2", 2 * s2, 1e-6));
  }
  auto bound_row = [&](const std::string& task, const std::string& resource,
                       const LinearFunctional& f, const Scenario& sc, NpaLevel lvl, bool na,
                       bool sym, const std::string& reference, double target, double tol,
                       bool gated, const std::string& note) {
    UpperBoundResult r = upper_bound(f, sc, lvl, na, sym, sopt);
    ReportRow row = make_row(task, resource, "bound", r.value, reference, target, tol, note);
    row.gated = gated;
    if (!gated && row.status == "FAIL") row.status = "info";
    if (r.sdp.status == SdpStatus::kTimeout) {
      row.status = "export-only";
      std::string path = out_path + "." + task + "-" + to_string(lvl) + ".dat-s";
      export_sdpa(objective_from_functional(f, build_moment_matrix(sc, lvl, na, sym)), path);
      row.note = "solver timeout; problem exported to " + path;
    } else if (r.sdp.status != SdpStatus::kConverged && row.status == "ok") {
      row.status = "FAIL";
      row.note = "solver did not converge";
    }
    rows.push_back(row);
  };
  bound_row("facet", "EA bit adaptive, NPA level 2", facet, facet_scenario(), NpaLevel::k2,
            false, false, "9/4", 2.25, 1e-3, false,
            "plain level 2 leaves a 3.6e-3 gap; see the 2+AAB row");
  bound_row("facet", "EA bit adaptive, NPA level 2+AAB", facet, facet_scenario(),
            NpaLevel::k2AAB, false, false, "9/4", 2.25, 1e-3, true, "");
  bound_row("facet", "EA bit non-adaptive, NPA level 2", facet, facet_scenario(), NpaLevel::k2,
            true, false, "sqrt5", s5, 1e-3, true, "");
  bound_row("rac", "EA trit non-adaptive, NPA level " + std::string(npa_level_str) +
                       " symmetrized",
            rac, rac_scenario(3), *level, true, true, "0.9082", 0.9082, 1e-3, true, "");
  bound_row("rac", "EA trit adaptive, NPA level 2 symmetrized", rac, rac_scenario(3),
            NpaLevel::k2, false, true, "0.9268", 0.25 * (3 + 1 / s2), 1e-3, true, "");
  {
    UpperBoundResult r = upper_bound(rac, rac_scenario(2), NpaLevel::k2, false, false, sopt);
    ReportRow row;
    row.task = "rac";
    row.resource = "EA bit, NPA level 2";
    row.kind = "bound";
    row.value = r.value;
    row.reference = "0.8536";
    row.target = 0.5 * (1 + 1 / s2);
    row.delta = std::abs(r.value - row.target);
    row.tol = 0.86 - row.target;  // accepted if within [optimum, 0.86]
    row.status = (r.value >= row.target - 1e-7 && r.value <= 0.86) ? "ok" : "FAIL";
    row.note = "accepted if in [0.853553, 0.86]";
    rows.push_back(row);
  }

  // Soundness: explicit strategy values never exceed matching bounds.
  {
    double povm_val = evaluate(facet, born_behavior(facet_qubit_povm_strategy()));
    double bound_ad = 0, bound_na = 0;
    for (const auto& r : rows) {
      if (r.resource == "EA bit adaptive, NPA level 2+AAB") bound_ad = r.value;
      if (r.resource == "EA bit non-adaptive, NPA level 2") bound_na = r.value;
    }
    double proj_val = evaluate(facet, born_behavior(facet_qubit_projective_strategy()));
    ReportRow r;
    r.task = "facet";
    r.resource = "soundness: strategies vs bounds";
    r.kind = "check";
    r.value = std::max(povm_val - bound_ad, proj_val - bound_na);
    r.reference = "<= 0";
    r.target = 0;
    r.tol = 1e-6;
    r.delta = std::max(0.0, r.value);
    r.status = r.delta <= r.tol ? "ok" : "FAIL";
    rows.push_back(r);
  }

  bool all_ok = true;
  for (const auto& r : rows)
    if (r.gated && r.status == "FAIL") all_ok = false;

  std::ostringstream md;
  md << "# Reproduction report\n\n";
  md << "Seed " << seed << ", optimizer restarts " << restarts << ", NPA trit level "
     << npa_level_str << ", solver time limit " << npa_timeout << " s.\n\n";
  md << "| task | resource / method | kind | value | reference | delta | tol | status |\n";
  md << "|---|---|---|---|---|---|---|---|\n";
  char buf[64];
  auto fmt = [&](double v, const char* f = "%.7f") {
    std::snprintf(buf, sizeof buf, f, v);
    return std::string(buf);
  };
  for (const auto& r : rows) {
    md << "| " << r.task << " | " << r.resource << " | " << r.kind << " | " << fmt(r.value)
       << " | " << r.reference << " | " << fmt(r.delta, "%.2e") << " | " << fmt(r.tol, "%.0e")
       << " | " << r.status << (r.note.empty() ? "" : " (" + r.note + ")") << " |\n";
  }
  md << "\nOverall: " << (all_ok ? "all gated rows reproduce." : "MISMATCH in a gated row.")
     << "\n";
  write_text(out_path, md.str());

  json jrows = json::array();
  for (const auto& r : rows) jrows.push_back(row_to_json(r));
  if (json_path.empty()) {
    json_path = out_path;
    auto pos = json_path.rfind(".md");
    json_path = (pos == std::string::npos ? json_path : json_path.substr(0, pos)) + ".json";
  }
  write_json_file(json_path, json{{"seed", seed},
                                  {"restarts", restarts},
                                  {"npa_level", npa_level_str},
                                  {"all_ok", all_ok},
                                  {"rows", jrows}});
  std::printf("%s\n", md.str().c_str());
  return all_ok ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entanglement-assisted communication toolkit"};
  app.require_subcommand(1);

  // strategy
  auto* cmd_strategy = app.add_subcommand("strategy", "construct a named strategy as JSON");
  std::string sname, sout;
  double theta = M_PI / 4;
  cmd_strategy->add_option("name", sname,
                           "one of: chsh-ea-bit-rac, na-ea-trit-rac, adaptive-ea-trit-rac, "
                           "facet-qubit-povm, facet-qubit-projective, unassisted-qubit-rac, "
                           "dense-coding, stochastic-dense-coding-rac")
      ->required();
  cmd_strategy->add_option("--theta", theta, "tilt angle for na-ea-trit-rac");
  cmd_strategy->add_option("--out", sout, "output file")->required();

  // eval
  auto* cmd_eval = app.add_subcommand("eval", "evaluate a task functional on a strategy file");
  std::string efile, etask, eout, ebehavior, ecsv;
  cmd_eval->add_option("--strategy", efile)->required();
  cmd_eval->add_option("--task", etask, "rac | facet | mesd")->required();
  cmd_eval->add_option("--out", eout, "write the result as JSON");
  cmd_eval->add_option("--behavior-out", ebehavior, "write the behavior tensor as JSON");
  cmd_eval->add_option("--csv", ecsv, "write the behavior as CSV (x,y,b,p)");

  // check
  auto* cmd_check = app.add_subcommand("check", "adaptivity verdict via the commutation test");
  std::string cfile;
  double ctol = 1e-8;
  cmd_check->add_option("--strategy", cfile)->required();
  cmd_check->add_option("--tol", ctol, "commutator-norm tolerance");

  // optimize
  auto* cmd_opt = app.add_subcommand("optimize", "seeded multi-restart ascent over an ansatz");
  std::string otask, oclass, oout;
  int orestarts = 50, oiters = 400;
  std::uint64_t oseed = 1;
  bool oseed_given = false;
  cmd_opt->add_option("--task", otask, "rac | facet | mesd")->required();
  cmd_opt->add_option("--class", oclass, "ansatz class (see README)")->required();
  cmd_opt->add_option("--restarts", orestarts);
  cmd_opt->add_option("--iters", oiters);
  cmd_opt->add_option("--seed", oseed)->each([&](const std::string&) { oseed_given = true; });
  cmd_opt->add_option("--out", oout, "result JSON")->required();

  // npa
  auto* cmd_npa = app.add_subcommand("npa", "moment-matrix upper bounds");
  std::string ntask = "rac", nlevel = "2", nexport, nout;
  int nmsg = 3;
  bool nnonadaptive = false, nsymmetrize = false, nsolve = false;
  double ntol = 1e-7, ntimeout = 0;
  cmd_npa->add_option("--task", ntask, "rac | facet | chsh")->required();
  cmd_npa->add_option("--message-size", nmsg, "message size for rac (2 or 3)");
  cmd_npa->add_option("--level", nlevel, "1 | 1+AB | 2 | 2+AAB | 2+ABB | 2+AAB+ABB | 3");
  cmd_npa->add_flag("--nonadaptive", nnonadaptive, "add same-y commutation of Bob operators");
  cmd_npa->add_flag("--symmetrize", nsymmetrize, "merge classes under message relabelings");
  cmd_npa->add_option("--export", nexport, "write the SDP in sparse SDPA form");
  cmd_npa->add_flag("--solve", nsolve, "run the built-in solver");
  cmd_npa->add_option("--tol", ntol, "duality-gap tolerance");
  cmd_npa->add_option("--timeout", ntimeout, "solver wall-clock limit in seconds");
  cmd_npa->add_option("--out", nout, "write solver result as JSON");

  // report
  auto* cmd_report = app.add_subcommand("report", "full reproduction report");
  std::string rout = "report.md", rjson;
  std::uint64_t rseed = 1;
  bool rseed_given = false;
  int rrestarts = 50;
  std::string rnpa_level = "2";
  double rnpa_timeout = 1800;
  cmd_report->add_option("--out", rout)->required();
  cmd_report->add_option("--json", rjson, "machine-readable twin (default: out with .json)");
  cmd_report->add_option("--seed", rseed)->each([&](const std::string&) { rseed_given = true; });
  cmd_report->add_option("--restarts", rrestarts, "optimizer restarts per ansatz");
  cmd_report->add_option("--npa-level", rnpa_level, "level for the trit bound row");
  cmd_report->add_option("--npa-timeout", rnpa_timeout, "per-solve wall clock limit (s)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_strategy) {
      write_json_file(sout, strategy_json_by_name(sname, theta));
      std::printf("wrote %s\n", sout.c_str());
      return kOk;
    }

    if (*cmd_eval) {
      AnyStrategy s = strategy_from_json(load_json_file(efile));
      try {
        validate_any(s);
      } catch (const invariant_error& e) {
        std::fprintf(stderr, "invariant violation: %s\n", e.what());
        return kInvariantViolation;
      }
      Behavior p = behavior_of_any(s);
      double value = task_value(etask, p);
      std::printf("%s = %.9f\n", etask.c_str(), value);
      if (!eout.empty())
        write_json_file(eout, json{{"task", etask},
                                   {"value", value},
                                   {"strategy_kind", kind_of(s)},
                                   {"strategy_file", efile}});
      if (!ebehavior.empty()) write_json_file(ebehavior, to_json(p));
      if (!ecsv.empty()) write_text(ecsv, behavior_to_csv(p));
      return kOk;
    }

    if (*cmd_check) {
      AnyStrategy s = strategy_from_json(load_json_file(cfile));
      AdaptiveStrategy a;
      if (const auto* ad = std::get_if<AdaptiveStrategy>(&s)) a = *ad;
      else if (const auto* na = std::get_if<NonAdaptiveStrategy>(&s)) a = lift_to_adaptive(*na);
      else {
        std::fprintf(stderr, "check expects an EA classical strategy file\n");
        return kInputError;
      }
      try {
        a.validate();
      } catch (const invariant_error& e) {
        std::fprintf(stderr, "invariant violation: %s\n", e.what());
        return kInvariantViolation;
      }
      auto rep = check_nonadaptive(a, ctol);
      std::printf("max commutator norm = %.3e\nverdict: %s\n", rep.max_commutator_norm,
                  rep.nonadaptive ? "NON-ADAPTIVE" : "ADAPTIVE");
      return kOk;
    }

    if (*cmd_opt) {
      LinearFunctional f = otask == "rac"     ? rac_functional()
                           : otask == "facet" ? facet_functional()
                           : otask == "mesd"  ? mesd_functional(4)
                                              : throw std::invalid_argument("unknown task");
      auto cls = ansatz_class_from_string(oclass);
      if (!cls) throw std::invalid_argument("unknown ansatz class '" + oclass + "'");
      StrategyAnsatz a = make_ansatz(*cls, f);
      OptimizerConfig cfg;
      cfg.restarts = orestarts;
      cfg.max_iters = oiters;
      cfg.seed = seed_with_fallback(oseed, oseed_given);
      MaximizeResult r = maximize(f, a, cfg);
      json jtrace = json::array();
      for (const auto& t : r.trace)
        jtrace.push_back(json{{"restart", t.restart},
                              {"variant", t.variant},
                              {"value", t.value},
                              {"iterations", t.iterations}});
      json out{{"task", otask},          {"class", oclass},
               {"best_value", r.best_value}, {"best_restart", r.best_restart},
               {"method", r.method},     {"seed", cfg.seed},
               {"restarts", cfg.restarts}, {"trace", jtrace}};
      if (!r.best_params.empty()) {
        out["best_params"] = r.best_params;
        DecodedStrategy d = decode(a, r.best_params, r.best_variant);
        if (d.qubit_pm) out["strategy"] = to_json(simulate_qubit_pm(*d.qubit_pm));
        else if (d.adaptive) out["strategy"] = to_json(*d.adaptive);
        else if (d.nonadaptive) out["strategy"] = to_json(*d.nonadaptive);
        else if (d.quantum) out["strategy"] = to_json(*d.quantum);
      }
      write_json_file(oout, out);
      std::printf("best %s over %s: %.9f (restart %d, %s)\n", otask.c_str(), oclass.c_str(),
                  r.best_value, r.best_restart, r.method.c_str());
      return kOk;
    }

    if (*cmd_npa) {
      auto level = parse_level(nlevel);
      if (!level) throw std::invalid_argument("bad --level");
      SdpProblem problem;
      if (ntask == "chsh") {
        MomentMatrix m = build_moment_matrix(chsh_scenario(), *level, nnonadaptive, nsymmetrize);
        problem = chsh_problem(m);
      } else {
        LinearFunctional f = ntask == "rac" ? rac_functional() : facet_functional();
        Scenario sc = ntask == "rac" ? rac_scenario(nmsg) : facet_scenario();
        MomentMatrix m = build_moment_matrix(sc, *level, nnonadaptive, nsymmetrize);
        problem = objective_from_functional(f, m);
      }
      std::printf("moment matrix %d x %d, %d variables\n", problem.block_size,
                  problem.block_size, problem.num_vars());
      if (!nexport.empty()) {
        export_sdpa(problem, nexport);
        std::printf("exported %s\n", nexport.c_str());
      }
      if (nsolve) {
        SdpOptions o;
        o.tol = o.feas_tol = ntol;
        o.time_limit_s = ntimeout;
        SdpResult r = solve_sdp(problem, o);
        const char* status = r.status == SdpStatus::kConverged      ? "converged"
                             : r.status == SdpStatus::kTimeout      ? "timeout"
                             : r.status == SdpStatus::kStagnated    ? "stagnated"
                                                                    : "iteration-limit";
        std::printf("value = %.9f  (gap %.2e, %d iterations, %s)\n", r.value, r.duality_gap,
                    r.iterations, status);
        if (!nout.empty())
          write_json_file(nout, json{{"task", ntask},
                                     {"level", nlevel},
                                     {"nonadaptive", nnonadaptive},
                                     {"symmetrize", nsymmetrize},
                                     {"value", r.value},
                                     {"duality_gap", r.duality_gap},
                                     {"iterations", r.iterations},
                                     {"status", status}});
        if (r.status != SdpStatus::kConverged) return kSolverFailure;
      }
      return kOk;
    }

    if (*cmd_report)
      return run_report(rout, rjson, seed_with_fallback(rseed, rseed_given), rrestarts,
                        rnpa_level, rnpa_timeout);
  } catch (const schema_error& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kInputError;
  } catch (const invariant_error& e) {
    std::fprintf(stderr, "invariant violation: %s\n", e.what());
    return kInvariantViolation;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kInputError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInputError;
  }
  return kOk;
}
