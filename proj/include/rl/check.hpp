// Runs the prover, and optionally the bounded oracle, over every claim and
// invariant of a goal file.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rl/frontend.hpp"
#include "rl/oracle.hpp"
#include "rl/prover.hpp"

namespace rl {

/// Process exit codes follow this order: 0, 1, 2.
enum class CaseVerdict { Proved, Violated, Inconclusive };

const char* to_string(CaseVerdict v);
std::optional<CaseVerdict> case_verdict_from(const std::string& s);
int exit_code(CaseVerdict v);

struct OracleSettings {
  unsigned depth = 6;
  /// Size bound on each variable binding of a start pattern.
  unsigned binding_bound = 4;
  std::size_t max_states = 100000;
};

struct CheckOptions {
  ProverConfig prover;
  bool with_oracle = false;
  OracleSettings oracle;
  bool claims = true;
  bool invariants = true;
};

struct GoalOutcome {
  enum class Kind { Claim, Invariant };
  Kind kind = Kind::Claim;
  std::string name;
  /// The theory the proof ran over (stopped for invariants).
  RewriteTheory theory;
  std::vector<ReachFormula> formulas;
  PatternPredicate terminating;
  ProofResult proof;
  /// Invariants only: every S0 disjunct is subsumed by some P disjunct.
  bool inclusion_holds = true;
  std::optional<InvariantCheck> ground;
  /// One per formula, when the oracle ran.
  std::vector<SemanticsCheck> semantics;
  CaseVerdict verdict = CaseVerdict::Inconclusive;
  /// The prover said PROVED but the oracle found a counterexample.
  bool unsound = false;
};

struct CheckReport {
  std::vector<GoalOutcome> goals;
  CaseVerdict verdict = CaseVerdict::Proved;
};

/// Proved when every goal is proved and no oracle run disagrees; Violated
/// when some goal has a concrete counterexample; Inconclusive otherwise.
CheckReport check_goals(const GoalFile& g, const CheckOptions& opt);

std::string summary(const CheckReport& r);

}  // namespace rl
