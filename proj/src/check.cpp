#include "rl/check.hpp"

#include <sstream>

namespace rl {

const char* to_string(CaseVerdict v) {
  switch (v) {
    case CaseVerdict::Proved:
      return "PROVED";
    case CaseVerdict::Violated:
      return "VIOLATED";
    case CaseVerdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

std::optional<CaseVerdict> case_verdict_from(const std::string& s) {
  for (CaseVerdict v : {CaseVerdict::Proved, CaseVerdict::Violated, CaseVerdict::Inconclusive})
    if (s == to_string(v)) return v;
  return std::nullopt;
}

int exit_code(CaseVerdict v) { return static_cast<int>(v); }

namespace {

SemanticsConfig semantics_config(const GoalFile& g, const OracleSettings& o) {
  SemanticsConfig sc;
  sc.depth = o.depth;
  sc.binding_bound = o.binding_bound;
  sc.max_states = o.max_states;
  sc.env = g.env;
  return sc;
}

void run_semantics(GoalOutcome& out, const GoalFile& g, const OracleSettings& o) {
  const SemanticsConfig sc = semantics_config(g, o);
  for (const auto& f : out.formulas) out.semantics.push_back(check_formula_semantics(out.theory, f, out.terminating, sc));
}

bool any_counterexample(const GoalOutcome& out) {
  for (const auto& s : out.semantics)
    if (s.counterexample_found) return true;
  return false;
}

void settle(GoalOutcome& out) {
  const bool proved = out.proof.verdict == Verdict::Proved && out.inclusion_holds;
  bool violated = false;
  if (out.kind == GoalOutcome::Kind::Invariant) {
    violated = out.ground && !out.ground->holds;
    out.unsound = proved && (violated || any_counterexample(out));
  } else {
    violated = any_counterexample(out);
    out.unsound = proved && violated;
  }
  if (violated)
    out.verdict = CaseVerdict::Violated;
  else if (proved && !out.unsound)
    out.verdict = CaseVerdict::Proved;
  else
    out.verdict = CaseVerdict::Inconclusive;
}

}  // namespace

CheckReport check_goals(const GoalFile& g, const CheckOptions& opt) {
  CheckReport rep;
  if (opt.claims && !g.claims.empty()) {
    if (!g.terminating) throw Error("goal " + g.name + ": claims need a `terminating:` predicate");
    GoalOutcome out;
    out.kind = GoalOutcome::Kind::Claim;
    out.name = g.name;
    out.theory = g.theory;
    out.formulas = g.claims;
    out.terminating = *g.terminating;
    out.proof = prove_set(out.theory, out.formulas, out.terminating, opt.prover);
    if (opt.with_oracle) run_semantics(out, g, opt.oracle);
    settle(out);
    rep.goals.push_back(std::move(out));
  }
  if (opt.invariants) {
    for (const auto& inv : g.invariants) {
      InvariantGoals ig = invariant_to_goals(g.theory, inv.from, inv.always, opt.prover.solver);
      GoalOutcome out;
      out.kind = GoalOutcome::Kind::Invariant;
      out.name = inv.name;
      out.theory = ig.stopped.theory;
      out.formulas = ig.circularities;
      out.terminating = ig.stopped.terminating;
      out.inclusion_holds = ig.inclusion_holds();
      out.proof = prove_set(out.theory, out.formulas, out.terminating, opt.prover);
      if (opt.with_oracle) {
        std::vector<Term> starts;
        for (const auto& a : ig.s0)
          for (auto& t : instances_bounded(g.theory, a, opt.oracle.binding_bound)) starts.push_back(std::move(t));
        ExploreConfig ec;
        ec.depth = opt.oracle.depth;
        ec.max_states = opt.oracle.max_states;
        ec.env = g.env;
        out.ground = check_invariant_ground(g.theory, starts, PatternPredicate::from_atoms(ig.p), ec);
        run_semantics(out, g, opt.oracle);
      }
      settle(out);
      rep.goals.push_back(std::move(out));
    }
  }
  for (const auto& o : rep.goals) {
    if (o.verdict == CaseVerdict::Violated) rep.verdict = CaseVerdict::Violated;
    if (o.verdict == CaseVerdict::Inconclusive && rep.verdict == CaseVerdict::Proved)
      rep.verdict = CaseVerdict::Inconclusive;
  }
  return rep;
}

std::string summary(const CheckReport& r) {
  std::ostringstream os;
  for (const auto& o : r.goals) {
    os << (o.kind == GoalOutcome::Kind::Claim ? "claims " : "invariant ") << o.name << ": " << to_string(o.verdict)
       << " (prover " << to_string(o.proof.verdict) << ", " << o.proof.nodes << " nodes";
    if (!o.proof.aborted.empty()) os << ", aborted: " << o.proof.aborted;
    os << ")\n";
    if (!o.inclusion_holds) os << "  initial states not covered by the invariant\n";
    if (o.ground) {
      os << "  ground check over " << o.ground->states << " states: " << (o.ground->holds ? "holds" : "VIOLATED")
         << (o.ground->holds && o.ground->truncated ? " within bounds" : "") << "\n";
      if (o.ground->counterexample) os << print(o.theory.sig, *o.ground->counterexample);
    }
    for (std::size_t i = 0; i < o.semantics.size(); ++i) {
      const auto& s = o.semantics[i];
      os << "  semantic check " << o.formulas[i].name << ": "
         << (s.counterexample_found ? "COUNTEREXAMPLE" : "no counterexample") << (s.vacuous ? " (vacuous)" : "")
         << ", " << s.start_states << " start states, " << s.graph_states << " explored\n";
      if (s.counterexample) os << print(o.theory.sig, *s.counterexample);
    }
    if (o.unsound) os << "  ERROR: the oracle contradicts a proof\n";
    for (const auto& w : o.proof.warnings) os << "  warning: " << w << "\n";
  }
  os << "verdict: " << to_string(r.verdict) << "\n";
  return os.str();
}

}  // namespace rl
