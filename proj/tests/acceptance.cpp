// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when
// any criterion fails.
#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "rl/enumerate.hpp"
#include "rl/eq.hpp"
#include "rl/transforms.hpp"
#include "support.hpp"

using namespace rl;
using rltest::Random;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Every corpus case is run once with the oracle and shared by criteria 2, 8 and 9.
struct CaseRun {
  ExampleCase c;
  CheckReport report;
  double seconds = 0;
};

const std::vector<CaseRun>& corpus_runs() {
  static const std::vector<CaseRun> runs = [] {
    std::vector<CaseRun> out;
    for (const auto& name : list_examples()) {
      CaseRun r;
      r.c = load_example(name);
      CheckOptions opt;
      opt.with_oracle = true;
      auto t0 = Clock::now();
      r.report = run_example(r.c, opt);
      r.seconds = seconds_since(t0);
      out.push_back(std::move(r));
    }
    return out;
  }();
  return runs;
}

const CaseRun* find_run(const std::string& name) {
  for (const auto& r : corpus_runs())
    if (r.c.name == name) return &r;
  return nullptr;
}

bool has_path(const ProofNode& root, const std::vector<std::string>& want) {
  for (const auto& p : rule_paths(root))
    if (p == want) return true;
  return false;
}

Outcome qlock_end_to_end() {
  auto t0 = Clock::now();
  ExampleCase c = load_example("qlock");
  CheckReport rep = run_example(c);
  double secs = seconds_since(t0);
  if (rep.goals.size() != 1) return {false, "expected one invariant goal"};
  const GoalOutcome& g = rep.goals[0];
  std::ostringstream os;
  os << "verdict " << to_string(g.verdict) << ", " << g.formulas.size() << " circularities, " << g.proof.nodes
     << " nodes, " << secs << " s";
  bool ok = g.verdict == CaseVerdict::Proved && g.formulas.size() == 2 && g.theory.stopped() && secs < 60;
  bool branch1 = false, branch2 = false;
  for (const auto& t : g.proof.trees) {
    branch1 = branch1 || has_path(t, {"step(n2w)", "axiom(G2)", "sub(P1)"});
    branch2 = branch2 || has_path(t, {"step(n2w)", "axiom(G2)", "sub(P2)"});
  }
  os << ", branch step(n2w) axiom(G2) {sub(P1), sub(P2)} " << (branch1 && branch2 ? "present" : "missing");
  const std::string text = render_text(g.theory.sig, g.proof);
  bool rendered = text.find("step(n2w, ") != std::string::npos && text.find("axiom(G2, ") != std::string::npos &&
                  text.find("sub(P1, ") != std::string::npos && text.find("sub(P2, ") != std::string::npos;
  return {ok && branch1 && branch2 && rendered, os.str()};
}

Outcome soundness_cross_check() {
  std::ostringstream os;
  bool ok = true;
  std::size_t proved = 0, checks = 0;
  for (const auto& r : corpus_runs()) {
    for (const auto& g : r.report.goals) {
      if (g.proof.verdict != Verdict::Proved) continue;
      ++proved;
      if (r.c.oracle.depth < 6 || r.c.oracle.binding_bound > 4) {
        ok = false;
        os << r.c.name << ": oracle bounds out of range; ";
      }
      if (g.semantics.size() != g.formulas.size()) {
        ok = false;
        os << r.c.name << "/" << g.name << ": semantic check missing; ";
      }
      for (std::size_t i = 0; i < g.semantics.size(); ++i) {
        ++checks;
        if (g.semantics[i].counterexample_found) {
          ok = false;
          os << r.c.name << "/" << g.formulas[i].name << ": COUNTEREXAMPLE\n"
             << print(g.theory.sig, *g.semantics[i].counterexample);
        }
      }
      if (g.ground && !g.ground->holds) {
        ok = false;
        os << r.c.name << "/" << g.name << ": ground invariant violated; ";
      }
    }
  }
  os << proved << " proved goals, " << checks << " formulas checked at depth >= 6, binding size <= 4, "
     << (ok ? "no counterexample" : "counterexample found");
  return {ok && proved > 0, os.str()};
}

Outcome intersection_oracle() {
  const RewriteTheory& th = rltest::algebra();
  Random rnd(20240601);
  const unsigned kPairs = 240, kBound = 3;
  unsigned mismatches = 0, nonempty = 0, incomplete = 0;
  std::string first;
  for (unsigned i = 0; i < kPairs; ++i) {
    bool list = rnd.coin(40);
    Atom a = rnd.atom(list), b = rnd.atom(list);
    FreshGen gen = fresh_after(vars(a));
    Disjuncts d = intersect(th, a, b, gen);
    if (!d.complete) ++incomplete;
    std::set<Term> got = denotation_bounded(th, PatternPredicate::from_atoms(d.atoms), kBound);
    std::set<Term> da = denotation_bounded(th, PatternPredicate::atom(a), kBound);
    std::set<Term> db = denotation_bounded(th, PatternPredicate::atom(b), kBound);
    std::set<Term> want;
    std::set_intersection(da.begin(), da.end(), db.begin(), db.end(), std::inserter(want, want.end()));
    if (!want.empty()) ++nonempty;
    if (got != want) {
      ++mismatches;
      if (first.empty())
        first = print(th.sig, a) + " ∧ " + print(th.sig, b) + ": got " + rltest::show(th.sig, got) + ", want " +
                rltest::show(th.sig, want);
    }
  }
  std::ostringstream os;
  os << kPairs << " pairs, " << nonempty << " with nonempty intersection, " << incomplete << " truncated, "
     << mismatches << " mismatches at bound " << kBound;
  if (!first.empty()) os << "; first: " << first;
  return {mismatches == 0, os.str()};
}

Outcome unification_oracle() {
  const RewriteTheory& th = rltest::algebra();
  Random rnd(7);
  const unsigned kPairs = 520, kBound = 3;
  unsigned unsound = 0, uncovered = 0, unifiable = 0, incomplete = 0;
  std::size_t ground_total = 0;
  std::string first;
  for (unsigned i = 0; i < kPairs; ++i) {
    Term a, b;
    VarSet xs;
    do {
      a = rnd.mset(3, 2);
      b = rnd.mset(3, 2);
      xs = vars(a);
      collect_vars(b, xs);
    } while (xs.size() > 3);
    FreshGen gen = fresh_after(xs);
    UnifierSet us = unify_modulo(th.sig, a, b, gen);
    if (!us.complete) ++incomplete;
    for (const auto& u : us.unifiers)
      if (th.sig.apply(a, u) != th.sig.apply(b, u)) {
        ++unsound;
        if (first.empty()) first = "unsound unifier " + print(th.sig, u) + " of " + print(th.sig, a) + " =? " + print(th.sig, b);
      }
    auto bf = rltest::brute_force_unifiers(th, a, b, kBound);
    if (!bf.empty()) ++unifiable;
    ground_total += bf.size();
    for (const auto& g : bf)
      if (!rltest::covered(th, xs, us.unifiers, g)) {
        ++uncovered;
        if (first.empty()) first = "uncovered ground unifier " + print(th.sig, g) + " of " + print(th.sig, a) + " =? " + print(th.sig, b);
        break;
      }
  }
  std::ostringstream os;
  os << kPairs << " ACU pairs, " << unifiable << " unifiable, " << ground_total << " ground unifiers up to size "
     << kBound << ", " << unsound << " unsound, " << uncovered << " incomplete, " << incomplete << " truncated";
  if (!first.empty()) os << "; first: " << first;
  return {unsound == 0 && uncovered == 0, os.str()};
}

Outcome subsumption_soundness() {
  const RewriteTheory& th = rltest::algebra();
  const auto& sig = th.sig;
  Random rnd(99);
  const unsigned kPairs = 300, kBound = 3;
  unsigned yes = 0, violations = 0;
  std::string first;
  for (unsigned i = 0; i < kPairs; ++i) {
    bool list = rnd.coin(40);
    Atom general = rnd.atom(list), specific = rnd.atom(list);
    if (rnd.coin(60)) {
      // Instantiate the general pattern so that a good share of pairs subsume.
      Substitution s;
      for (const auto& x : vars(general.term)) {
        std::string sort = sig.sorts().name(x.sort);
        Term t = sort == "Elt" ? sig.constant(rnd.coin() ? "a" : "b")
                 : sort == "MSet" ? rnd.mset(2, 1)
                                  : rnd.list(2, 1);
        if (!sig.leq(t.sort(), x.sort)) t = Term::variable(x);
        s[x] = t;
      }
      specific.term = sig.apply(general.term, s);
      specific.cond = rnd.coin() ? apply(sig, general.cond, s) : rnd.atom(list).cond;
      const VarSet in_term = vars(specific.term), in_cond = vars(specific.cond);
      if (!std::includes(in_term.begin(), in_term.end(), in_cond.begin(), in_cond.end()))
        specific.cond = Formula::truth();
    }
    specific = apply(sig, specific, prime_rename(vars(specific), vars(general)));
    FreshGen gen = fresh_after([&] {
      VarSet v = vars(general);
      for (const auto& x : vars(specific)) v.insert(x);
      return v;
    }());
    if (!subsumes(th, general, specific, gen)) continue;
    ++yes;
    auto dg = denotation_bounded(th, PatternPredicate::atom(general), kBound);
    auto ds = denotation_bounded(th, PatternPredicate::atom(specific), kBound);
    if (!std::includes(dg.begin(), dg.end(), ds.begin(), ds.end())) {
      ++violations;
      if (first.empty()) first = print(sig, general) + " ⊇? " + print(sig, specific);
    }
  }
  std::ostringstream os;
  os << kPairs << " pairs, " << yes << " subsumed, " << violations << " inclusion violations at bound " << kBound;
  if (!first.empty()) os << "; first: " << first;
  return {violations == 0 && yes > 0, os.str()};
}

std::set<Term> reachable(const RewriteTheory& th, const std::vector<Term>& starts, const EnvDomains& env,
                         unsigned depth, bool angle_only) {
  ExploreConfig cfg;
  cfg.depth = depth;
  cfg.env = env;
  cfg.start = starts;
  StateGraph g = explore(th, cfg);
  std::set<Term> out;
  for (const auto& s : g.states)
    if (!angle_only || !th.bracket_of.count(s.op())) out.insert(s);
  return out;
}

Outcome transformation_conservativity() {
  struct Subject {
    std::string name;
    std::vector<std::string> starts;
  };
  const std::vector<Subject> subjects = {
      {"qlock", {"< 0 (s 0) | ∅ | ∅ | nil >", "< 0 | ∅ | ∅ | nil >", "< ∅ | ∅ | ∅ | nil >"}},
      {"choice", {"{ 0 (s 0) 0 }", "{ 0 (s 0) (s s 0) (s 0) }", "{ s 0 }"}},
      {"thermostat", {"< on | t1 >", "< off | t3 >", "< on | t5 >"}},
  };
  const unsigned kDepth = 5;
  std::ostringstream os;
  bool ok = true;
  for (const auto& s : subjects) {
    GoalFile g = rltest::corpus_goals(s.name);
    const RewriteTheory& th = g.theory;
    std::vector<Term> starts;
    for (const auto& t : s.starts) starts.push_back(rltest::term(th, t));
    auto base = reachable(th, starts, g.env, kDepth, false);
    auto hat = reachable(hat_transform(th), starts, g.env, kDepth, false);
    StoppedTheory st = stop_transform(th);
    // stop spends one step per bracket, so angle states keep their depth
    auto stopped = reachable(st.theory, starts, g.env, kDepth, true);
    bool same = base == hat && base == stopped;
    ok = ok && same;
    os << s.name << " " << base.size() << "/" << hat.size() << "/" << stopped.size() << (same ? " equal" : " DIFFER")
       << "; ";
  }
  os << "depth " << kDepth << " (th/hat/stop angle states)";
  return {ok, os.str()};
}

Outcome invariant_paradox() {
  GoalFile goals = rltest::corpus_goals("qlock");
  const RewriteTheory& th = goals.theory;
  VarTable vt;
  PatternPredicate from = parse_pattern(th.sig, "< n:MSet | ∅ | ∅ | nil > | dupl(n) =/= tt", &vt);
  PatternPredicate never = parse_pattern(th.sig, "< n':MSet | w:MSet | i:Nat i':Nat | q:List >", &vt);
  FreshGen gen = fresh_after(vars(from));
  ReachFormula f;
  f.name = "two-critical";
  f.lhs = from.get_atom();
  f.rhs = {never.get_atom()};
  name_disjuncts(f);

  SemanticsConfig sc;
  sc.env = goals.env;
  SemanticsCheck open = check_formula_semantics(th, f, PatternPredicate::bottom(), sc);
  bool vacuous_ok = !open.counterexample_found && open.vacuous && open.graph_states > 0;

  StoppedTheory st = stop_transform(th);
  ReachFormula fs = f;
  fs.rhs = bracket_lift(st.theory, to_standard_form(th, never, gen));
  name_disjuncts(fs);
  SemanticsCheck stopped = check_formula_semantics(st.theory, fs, st.terminating, sc);
  bool refuted = stopped.counterexample_found && !stopped.vacuous;

  ExploreConfig ec;
  ec.env = goals.env;
  std::vector<Term> starts = instances_bounded(th, from.get_atom(), 3);
  InvariantCheck inv = check_invariant_ground(th, starts, never, ec);

  std::ostringstream os;
  os << "unstopped with T=⊥: " << (open.counterexample_found ? "COUNTEREXAMPLE" : "no counterexample")
     << (open.vacuous ? " (vacuous)" : " (not vacuous)") << " over " << open.graph_states << " states; stopped: "
     << (stopped.counterexample_found ? "COUNTEREXAMPLE" : "no counterexample")
     << (stopped.vacuous ? " (vacuous)" : " (not vacuous)") << "; invariant reading "
     << (inv.holds ? "holds" : "VIOLATED");
  return {vacuous_ok && refuted && !inv.holds, os.str()};
}

Outcome negative_control() {
  const CaseRun* r = find_run("qlock-broken");
  if (!r) return {false, "qlock-broken case missing"};
  bool ok = r->report.verdict == CaseVerdict::Violated && r->seconds < 60;
  std::ostringstream os;
  os << "verdict " << to_string(r->report.verdict) << ", " << r->seconds << " s";
  for (const auto& g : r->report.goals) {
    ok = ok && g.proof.verdict != Verdict::Proved;
    os << ", prover " << to_string(g.proof.verdict);
    if (!g.ground || g.ground->holds || !g.ground->counterexample) {
      ok = false;
      os << ", no ground counterexample";
      continue;
    }
    const Trace& tr = *g.ground->counterexample;
    ok = ok && tr.states.size() >= 2 && tr.labels.size() + 1 == tr.states.size();
    os << ", trace";
    for (std::size_t i = 0; i < tr.labels.size(); ++i) os << " " << tr.labels[i];
    os << " ending in " << print(g.theory.sig, tr.states.back());
  }
  return {ok, os.str()};
}

Outcome corpus_breadth() {
  std::ostringstream os;
  bool ok = true;
  double total = 0;
  for (const std::string required : {"choice", "qlock", "token-ring", "readers-writers"})
    if (!find_run(required)) {
      ok = false;
      os << "missing " << required << "; ";
    }
  for (const auto& r : corpus_runs()) {
    total += r.seconds;
    bool match = r.report.verdict == r.c.expected;
    ok = ok && match;
    os << r.c.name << " " << to_string(r.report.verdict) << (match ? "" : " (expected " + std::string(to_string(r.c.expected)) + ")")
       << "; ";
  }
  ok = ok && total < 600;
  os << "total " << total << " s";
  return {ok, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"QLOCK end to end", qlock_end_to_end},
      {"soundness cross-check", soundness_cross_check},
      {"pattern intersection oracle", intersection_oracle},
      {"ACU unification completeness", unification_oracle},
      {"subsumption soundness", subsumption_soundness},
      {"transformation conservativity", transformation_conservativity},
      {"invariant paradox", invariant_paradox},
      {"negative control", negative_control},
      {"corpus breadth", corpus_breadth},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
