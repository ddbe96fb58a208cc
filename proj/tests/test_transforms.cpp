#include <doctest.h>

#include "rl/transforms.hpp"
#include "support.hpp"

using namespace rl;

namespace {

std::set<Term> reach(const RewriteTheory& th, const std::vector<Term>& starts, const EnvDomains& env, unsigned depth) {
  ExploreConfig cfg;
  cfg.depth = depth;
  cfg.env = env;
  cfg.start = starts;
  StateGraph g = explore_serial(th, cfg);
  std::set<Term> out;
  for (const auto& s : g.states)
    if (!th.bracket_of.count(s.op())) out.insert(s);
  return out;
}

}  // namespace

TEST_CASE("hat leaves constructor right-hand sides alone") {
  RewriteTheory th = rltest::corpus_theory("qlock");
  RewriteTheory h = hat_transform(th);
  REQUIRE(h.rules.size() == th.rules.size());
  for (std::size_t i = 0; i < th.rules.size(); ++i) {
    CHECK(h.rules[i].lhs == th.rules[i].lhs);
    CHECK(h.rules[i].rhs == th.rules[i].rhs);
    CHECK(h.rules[i].cond == th.rules[i].cond);
  }
}

TEST_CASE("hat abstracts defined subterms and preserves reachability") {
  GoalFile g = rltest::corpus_goals("thermostat");
  const RewriteTheory& th = g.theory;
  RewriteTheory h = hat_transform(th);
  const Rule& tick = h.rule("tick");
  CHECK(th.sig.is_constructor_term(tick.rhs));
  CHECK_FALSE(th.sig.is_constructor_term(th.rule("tick").rhs));
  CHECK(tick.cond != th.rule("tick").cond);
  std::vector<Term> starts = {rltest::term(th, "< on | t1 >"), rltest::term(th, "< off | t5 >")};
  CHECK(reach(th, starts, g.env, 6) == reach(h, starts, g.env, 6));
}

TEST_CASE("stop adds a bracket twin and a stop rule") {
  RewriteTheory th = rltest::corpus_theory("qlock");
  StoppedTheory st = stop_transform(th);
  CHECK(st.theory.stopped());
  CHECK(st.theory.rules.size() == th.rules.size() + 1);
  const Rule& stop = st.theory.rule("stop");
  CHECK(print(st.theory.sig, stop.lhs).front() == '<');
  CHECK(print(st.theory.sig, stop.rhs).front() == '[');
  CHECK(st.theory.state_constructors().size() == 2);
  CHECK(st.terminating.kind() == PatternPredicate::Kind::Atom);
  CHECK(bracket_predicate(st.theory) == st.terminating);
  CHECK_THROWS_AS(stop_transform(st.theory), Error);
}

TEST_CASE("stop keeps the angle-state reachability of the original theory") {
  GoalFile g = rltest::corpus_goals("qlock");
  StoppedTheory st = stop_transform(g.theory);
  std::vector<Term> starts = {rltest::term(g.theory, "< 0 (s 0) | ∅ | ∅ | nil >")};
  CHECK(reach(g.theory, starts, g.env, 4) == reach(st.theory, starts, g.env, 4));
}

TEST_CASE("QLOCK invariant yields the two circularities") {
  GoalFile g = rltest::corpus_goals("qlock");
  const auto& inv = g.invariants.at(0);
  InvariantGoals ig = invariant_to_goals(g.theory, inv.from, inv.always);
  CHECK(ig.inclusion_holds());
  REQUIRE(ig.circularities.size() == 2);
  CHECK(ig.circularities[0].name == "G1");
  CHECK(ig.circularities[1].name == "G2");
  for (const auto& c : ig.circularities) {
    CHECK(c.rhs.size() == 2);
    CHECK(c.rhs_names == std::vector<std::string>{"P1", "P2"});
    for (const auto& a : c.rhs) CHECK(ig.stopped.theory.bracket_of.count(a.term.op()));
    CHECK_FALSE(ig.stopped.theory.bracket_of.count(c.lhs.term.op()));
  }
  // Compare with the hand-written circularities up to renaming.
  GoalFile hand = rltest::corpus_goals("qlock", "circularities.rl");
  for (std::size_t i = 0; i < 2; ++i) {
    FreshGen gen = fresh_after(vars(ig.circularities[i].lhs));
    CHECK(subsumes(ig.stopped.theory, hand.claims[i].lhs, ig.circularities[i].lhs, gen));
    CHECK(subsumes(ig.stopped.theory, ig.circularities[i].lhs, hand.claims[i].lhs, gen));
  }
}

TEST_CASE("an initial state outside the invariant is caught before any proof") {
  GoalFile g = rltest::corpus_goals("qlock");
  VarTable vt;
  PatternPredicate s0 = parse_pattern(g.theory.sig, "< n':MSet | ∅ | ∅ | nil >", &vt);
  InvariantGoals ig = invariant_to_goals(g.theory, s0, g.invariants.at(0).always);
  CHECK_FALSE(ig.inclusion_holds());
  REQUIRE(ig.inclusion.size() == 1);
  CHECK_FALSE(ig.inclusion[0].by);
}

TEST_CASE("prime renaming avoids the given variables") {
  Var n{"n", 0}, n1{"n'", 0};
  Substitution r = prime_rename({n}, {n, n1});
  CHECK(r.at(n).var().name == "n''");
}
