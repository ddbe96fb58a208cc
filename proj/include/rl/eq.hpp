// Equality, matching and unification modulo the structural axioms
// (associativity, commutativity, identity) declared on operators.
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rl/signature.hpp"

namespace rl {

/// Canonical representative of the class of t modulo B.
inline Term b_normalize(const Signature& sig, const Term& t) { return sig.normalize(t); }
bool b_equal(const Signature& sig, const Term& a, const Term& b);

/// Complete set of B-matches of `pattern` onto `subject`.  Variables of the
/// subject and the `protected_vars` are treated as constants; returned
/// substitutions bind pattern variables only.
std::vector<Substitution> match_modulo(const Signature& sig, const Term& pattern, const Term& subject,
                                       const VarSet& protected_vars = {});

/// Extends an existing partial match.
std::vector<Substitution> match_modulo(const Signature& sig, const Term& pattern, const Term& subject,
                                       const VarSet& protected_vars, const Substitution& seed);

struct UnifyConfig {
  /// Fresh list fragments allowed per collection variable when unifying
  /// under an associative operator without commutativity.
  unsigned assoc_fragment_bound = 4;
  std::size_t max_steps = 200000;
};

struct UnifierSet {
  std::vector<Substitution> unifiers;
  /// False when the associative split bound (or step budget) cut a branch.
  bool complete = true;
};

/// Complete set of B-unifiers.  Variables in `rigid` are treated as
/// constants.  Range variables introduced by the algorithm are fresh.
UnifierSet unify_modulo(const Signature& sig, const Term& a, const Term& b, FreshGen& gen,
                        const UnifyConfig& cfg = {}, const VarSet& rigid = {});

UnifierSet unify_system(const Signature& sig, const std::vector<std::pair<Term, Term>>& eqs, FreshGen& gen,
                        const UnifyConfig& cfg = {}, const VarSet& rigid = {});

/// Minimal nonzero nonnegative solutions of
///   lhs[0]*x0 + ... + lhs[m-1]*x(m-1) = rhs[0]*y0 + ... + rhs[n-1]*y(n-1).
/// Each solution lists the x values followed by the y values.
std::vector<std::vector<unsigned>> diophantine_basis(const std::vector<unsigned>& lhs,
                                                     const std::vector<unsigned>& rhs);

/// Deterministic order used for every returned set of substitutions.
void sort_substitutions(std::vector<Substitution>& subs);

}  // namespace rl
