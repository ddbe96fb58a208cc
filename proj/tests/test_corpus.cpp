#include <doctest.h>

#include <algorithm>

#include "support.hpp"

using namespace rl;

TEST_CASE("the corpus lists every shipped case") {
  auto names = list_examples();
  for (const char* n : {"choice", "qlock", "qlock-broken", "readers-writers", "thermostat", "token-ring"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  CHECK(std::is_sorted(names.begin(), names.end()));
}

TEST_CASE("case manifests") {
  ExampleCase q = load_example("qlock");
  CHECK(q.expected == CaseVerdict::Proved);
  CHECK_FALSE(q.reconstruction);
  CHECK(q.oracle.depth >= 6);
  CHECK(q.oracle.binding_bound <= 4);
  CHECK(load_example("qlock-broken").expected == CaseVerdict::Violated);
  CHECK(load_example("choice").reconstruction);
  CHECK_THROWS_AS(load_example("no-such-case"), Error);
}

TEST_CASE("every corpus theory lints without errors") {
  for (const auto& n : list_examples()) {
    ExampleCase c = load_example(n);
    INFO(n);
    CHECK(validate_theory(load_goals(c).theory).ok());
  }
}

TEST_CASE("corpus verdicts without the oracle") {
  for (const char* n : {"choice", "qlock", "readers-writers", "token-ring", "thermostat"}) {
    INFO(n);
    CHECK(run_example(load_example(n)).verdict == CaseVerdict::Proved);
  }
  // Without the oracle a broken protocol can only be inconclusive.
  CHECK(run_example(load_example("qlock-broken")).verdict == CaseVerdict::Inconclusive);
}

TEST_CASE("a non-inductive invariant is inconclusive and the oracle refutes its circularity") {
  GoalFile g = rltest::corpus_goals("thermostat", "range.rl");
  CheckOptions opt;
  opt.with_oracle = true;
  CheckReport rep = check_goals(g, opt);
  REQUIRE(rep.goals.size() == 1);
  const GoalOutcome& o = rep.goals[0];
  CHECK(o.proof.verdict == Verdict::Inconclusive);
  REQUIRE(o.ground);
  CHECK(o.ground->holds);
  bool refuted = false;
  for (const auto& s : o.semantics) refuted = refuted || s.counterexample_found;
  CHECK(refuted);
  // The invariant itself holds on every reachable state, so only the
  // proof attempt fails.
  CHECK(rep.verdict == CaseVerdict::Inconclusive);
}

TEST_CASE("verdict names and exit codes") {
  CHECK(exit_code(CaseVerdict::Proved) == 0);
  CHECK(exit_code(CaseVerdict::Violated) == 1);
  CHECK(exit_code(CaseVerdict::Inconclusive) == 2);
  CHECK(case_verdict_from("VIOLATED") == CaseVerdict::Violated);
  CHECK_FALSE(case_verdict_from("maybe"));
}
