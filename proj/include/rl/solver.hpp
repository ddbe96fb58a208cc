// Three-valued satisfiability for quantifier-free constraints interpreted
// in the initial algebra, with variables ranging over ground constructor
// terms.
#pragma once

#include <optional>

#include "rl/rewrite.hpp"

namespace rl {

enum class Sat { Sat, Unsat, Unknown };

const char* to_string(Sat s);

struct SolverVerdict {
  Sat result = Sat::Unknown;
  /// Ground witness for the formula's variables when result == Sat.
  std::optional<Substitution> witness;
};

struct SolverConfig {
  /// Largest ground term size tried per variable by the enumeration layer.
  unsigned depth = 4;
  /// Cap on ground candidate substitutions per clause.
  std::size_t max_candidates = 20000;
  /// Nested narrowing steps allowed on positive literals f(u) = v.
  unsigned narrow_depth = 3;
  /// Run the enumeration layer even when some variable ranges over an
  /// infinite sort.  It can then only find witnesses, never prove Unsat.
  bool witnesses = true;
  UnifyConfig unify;
};

/// Layered decision: simplification, syntactic checks, constructor
/// unification, narrowing of positive defined literals, and bounded ground
/// enumeration.  Unsat is only reported when it is certain.
SolverVerdict solve_sat(const RewriteTheory& th, const Formula& f, FreshGen& gen, const SolverConfig& cfg = {});
SolverVerdict solve_sat(const RewriteTheory& th, const Formula& f, const SolverConfig& cfg = {});

/// Valid iff phi /\ ~psi is unsatisfiable.
bool check_valid_implication(const RewriteTheory& th, const Formula& phi, const Formula& psi, FreshGen& gen,
                             const SolverConfig& cfg = {});
bool check_valid_implication(const RewriteTheory& th, const Formula& phi, const Formula& psi,
                             const SolverConfig& cfg = {});

/// Enumeration-only layer for one conjunction of literals.  Variables are
/// drawn from `domains` when their sort has an entry there, otherwise from
/// ground constructor terms up to `size_bound`.  Reports Unsat only when
/// every variable ranges over a finite, fully enumerated sort.
SolverVerdict ground_oracle_sat(const RewriteTheory& th, const Clause& conj, unsigned size_bound,
                                const EnvDomains& domains = {}, std::size_t max_candidates = 20000);

/// A generator whose fresh names cannot collide with the given variables.
FreshGen fresh_after(const VarSet& xs);

}  // namespace rl
