// Rewrite theories: oriented equations modulo the structural axioms,
// labeled (conditional) rules over a distinguished State sort, canonical
// forms, ground one-step rewriting and theory linting.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "rl/eq.hpp"
#include "rl/formula.hpp"

namespace rl {

struct Equation {
  Term lhs, rhs;
  Formula cond;
};

struct Rule {
  std::string label;
  Term lhs, rhs;
  Formula cond;
};

/// A structural axiom written out explicitly.  Only operator attributes are
/// executable; explicit axioms exist so the linter can report on them.
struct DeclaredAxiom {
  Term lhs, rhs;
};

struct RewriteTheory {
  std::string name;
  Signature sig;
  std::vector<Equation> equations;
  std::vector<Rule> rules;
  std::vector<DeclaredAxiom> axioms;
  SortId state_sort = -1;
  /// Set by the stop transformation; maps each bracket constructor to the
  /// state constructor it copies.
  std::map<OpId, OpId> bracket_of;

  const Rule& rule(const std::string& label) const;
  /// Constructors whose result sort is the state sort.
  std::vector<OpId> state_constructors() const;
  bool stopped() const { return !bracket_of.empty(); }
};

/// Ground domains per sort for variables that only occur on the right of a
/// rule (open systems) or in enumeration.
using EnvDomains = std::map<SortId, std::vector<Term>>;

struct SimplifyConfig {
  std::size_t max_steps = 100000;
};

/// t! : innermost rewriting with the oriented equations modulo the axioms.
/// On non-ground terms the variables are treated as constants; conditional
/// equations whose condition cannot be decided that way are not applied.
Term simplify(const RewriteTheory& th, const Term& t, const SimplifyConfig& cfg = {});

/// Evaluates a ground formula by simplifying both sides of each literal.
bool check_condition(const RewriteTheory& th, const Formula& f, const Substitution& s = {});

struct Successor {
  std::string label;
  Substitution binding;
  Term target;
};

/// All one-step successors of a canonical ground state at the root.
/// Variables of a rule's right-hand side or condition that are not bound
/// by matching are first solved from condition literals `x = t`, then
/// drawn from `env`.  Throws Error naming the rule when a domain is missing.
std::vector<Successor> ground_step(const RewriteTheory& th, const Term& t, const EnvDomains& env = {});

struct LintIssue {
  enum class Severity { Error, Warning };
  Severity severity;
  std::string message;
};

struct LintReport {
  std::vector<LintIssue> issues;
  bool ok() const;
  std::size_t errors() const;
  std::string text() const;
};

LintReport validate_theory(const RewriteTheory& th);

/// Sorts with no ground constructor term.
std::vector<SortId> empty_sorts(const Signature& sig);

}  // namespace rl
