// Theory transformations used by the invariant pipeline: constructor
// abstraction of rule right-hand sides and the stop construction.
#pragma once

#include "rl/pattern.hpp"

namespace rl {

/// Replaces every length-minimal non-constructor subterm t_p of a rule's
/// right-hand side by a fresh variable x_p and adds x_p = t_p to the rule's
/// condition.  Rules whose rhs is already a constructor term are unchanged.
RewriteTheory hat_transform(const RewriteTheory& th);

struct StoppedTheory {
  RewriteTheory theory;
  /// [ ]: the disjunction of `[x1,...,xn] | true` over all bracket twins.
  PatternPredicate terminating;
};

/// Adds a bracket twin for every state constructor and a rule
/// `stop: <x1,...,xn> => [x1,...,xn]` per constructor.  Throws Error when
/// the theory is already stopped.
StoppedTheory stop_transform(const RewriteTheory& th);

/// The terminating predicate of a stopped theory.
PatternPredicate bracket_predicate(const RewriteTheory& stopped);

/// Replaces the head of every disjunct by its bracket twin.  `stopped` must
/// be the output of stop_transform; `atoms` must be in standard form over
/// the original state constructors.
std::vector<Atom> bracket_lift(const RewriteTheory& stopped, const std::vector<Atom>& atoms);

struct SubsumptionObligation {
  std::size_t s0_index;
  Atom s0;
  /// Index of the first P disjunct found to subsume it.
  std::optional<std::size_t> by;
};

struct InvariantGoals {
  StoppedTheory stopped;
  std::vector<Atom> s0;  // standard form
  std::vector<Atom> p;   // standard form
  std::vector<SubsumptionObligation> inclusion;
  /// G_i : P_i sigma ->* [P_1] \/ ... \/ [P_n]
  std::vector<ReachFormula> circularities;
  /// The renaming applied to the lhs of every circularity.
  Substitution sigma;

  bool inclusion_holds() const;
};

/// Goals whose proof establishes that [[P]] is an invariant from [[S0]].
/// Variables of S0 are renamed apart from P first.
InvariantGoals invariant_to_goals(const RewriteTheory& th, const PatternPredicate& s0, const PatternPredicate& p,
                                  const SolverConfig& cfg = {});

/// Renaming that appends primes to each variable name until it avoids
/// `avoid`.
Substitution prime_rename(const VarSet& xs, const VarSet& avoid);

}  // namespace rl
