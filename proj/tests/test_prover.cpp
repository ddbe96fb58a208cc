#include <doctest.h>

#include <functional>

#include "rl/transforms.hpp"
#include "support.hpp"

using namespace rl;

namespace {

struct QlockProof {
  GoalFile goals = rltest::corpus_goals("qlock", "circularities.rl");
  ProofResult result = prove_set(goals.theory, goals.claims, *goals.terminating);
};

const QlockProof& qlock() {
  static const QlockProof p;
  return p;
}

bool has_path(const ProofResult& r, const std::vector<std::string>& want) {
  for (const auto& t : r.trees)
    for (const auto& p : rule_paths(t))
      if (p == want) return true;
  return false;
}

}  // namespace

TEST_CASE("QLOCK circularities are proved") {
  const auto& p = qlock();
  CHECK(p.result.verdict == Verdict::Proved);
  CHECK(p.result.aborted.empty());
  REQUIRE(p.result.trees.size() == 2);
  for (const auto& t : p.result.trees) {
    CHECK(t.closed());
    CHECK(t.rule == RuleKind::Step);
    CHECK_FALSE(t.axioms_available);
  }
  // The hand-written file leaves the disjuncts unnamed.
  CHECK(has_path(p.result, {"step(n2w)", "axiom(G2)", "sub(1)"}));
  CHECK(has_path(p.result, {"step(n2w)", "axiom(G2)", "sub(2)"}));
  CHECK(has_path(p.result, {"step(stop)", "sub(2)"}));
}

TEST_CASE("axiom application yields one child per succedent disjunct") {
  const auto& p = qlock();
  bool seen = false;
  std::function<void(const ProofNode&)> walk = [&](const ProofNode& n) {
    if (n.rule == RuleKind::Axiom && n.label == "G2") {
      seen = true;
      CHECK(n.children.size() == 2);
      CHECK(n.axioms_available);
    }
    for (const auto& c : n.children) walk(c);
  };
  for (const auto& t : p.result.trees) walk(t);
  CHECK(seen);
}

TEST_CASE("proof search is deterministic") {
  const auto& p = qlock();
  ProofResult again = prove_set(p.goals.theory, p.goals.claims, *p.goals.terminating);
  CHECK(render_text(p.goals.theory.sig, again) == render_text(p.goals.theory.sig, p.result));
  CHECK(again.nodes == p.result.nodes);
}

TEST_CASE("match_set finds the bracketed target") {
  const auto& g = qlock().goals;
  VarTable v1, v2;
  Term u = parse_term(g.theory.sig, "[ n'':MSet | w'':MSet | ∅ | q'':List ]", &v1);
  Atom target = parse_pattern(g.theory.sig, "[ n:MSet | w:MSet | ∅ | q:List ]", &v2).get_atom();
  Atom other = parse_pattern(g.theory.sig, "[ n | w | i:Nat | i ; q ]", &v2).get_atom();
  auto ms = match_set(g.theory, u, {other, target});
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].first == 1);
  CHECK(ms[0].second.at(v2.at("n")) == Term::variable(v1.at("n''")));
}

TEST_CASE("rule unifiers of the empty critical section goal") {
  const auto& g = qlock().goals;
  VarTable vt;
  Atom head = parse_pattern(g.theory.sig, "< n':MSet | w':MSet | ∅ | q':List > | dupl(n' w') =/= tt", &vt).get_atom();
  FreshGen gen = fresh_after(vars(head));
  bool complete = true;
  auto us = unify_set(g.theory, head, gen, ProverConfig{}.solver, complete);
  CHECK(complete);
  std::map<std::string, int> per_rule;
  for (const auto& u : us) per_rule[g.theory.rules[u.rule].label]++;
  CHECK(per_rule["n2w"] >= 1);
  CHECK(per_rule["w2c"] >= 1);
  CHECK(per_rule["c2n"] == 0);
  CHECK(per_rule["stop"] == 1);
  for (const auto& u : us)
    if (g.theory.rules[u.rule].label == "n2w") CHECK(print(g.theory.sig, u.child.cond).find("dupl") != std::string::npos);
}

TEST_CASE("a false goal stays open") {
  const auto& g = qlock().goals;
  VarTable vt;
  ReachFormula f;
  f.name = "bad";
  f.lhs = parse_pattern(g.theory.sig, "< n':MSet | ∅ | ∅ | nil > | dupl(n') =/= tt", &vt).get_atom();
  f.rhs = {parse_pattern(g.theory.sig, "[ n:MSet | w:MSet | i:Nat i':Nat | q:List ]", &vt).get_atom()};
  name_disjuncts(f);
  ProofResult r = prove_set(g.theory, {f}, *g.terminating);
  CHECK(r.verdict == Verdict::Inconclusive);
  REQUIRE(r.trees.size() == 1);
  CHECK_FALSE(r.trees[0].closed());
}

TEST_CASE("depth budgets") {
  const auto& g = qlock().goals;
  ProverConfig cfg;
  cfg.max_depth = 0;
  CHECK_THROWS_AS(prove_set(g.theory, g.claims, *g.terminating, cfg), Error);
  cfg.max_depth = 1;
  CHECK(prove_set(g.theory, g.claims, *g.terminating, cfg).verdict == Verdict::Inconclusive);
}

TEST_CASE("Choice shrinks to a single element") {
  GoalFile g = rltest::corpus_goals("choice");
  ProofResult r = prove_set(g.theory, g.claims, *g.terminating);
  CHECK(r.verdict == Verdict::Proved);
}

TEST_CASE("readers and writers exclude each other") {
  GoalFile g = rltest::corpus_goals("readers-writers");
  const auto& inv = g.invariants.at(0);
  InvariantGoals ig = invariant_to_goals(g.theory, inv.from, inv.always);
  CHECK(ig.inclusion_holds());
  CHECK(prove_set(ig.stopped.theory, ig.circularities, ig.stopped.terminating).verdict == Verdict::Proved);
}
