// Constrained constructor patterns `u | phi` and positive boolean
// combinations of them.
#pragma once

#include <optional>
#include <string>
#include <set>
#include <vector>

#include "rl/solver.hpp"

namespace rl {

struct Atom {
  Term term;
  Formula cond;

  friend bool operator==(const Atom&, const Atom&) = default;
};

class PatternPredicate {
 public:
  enum class Kind { Bottom, Atom, Or, And };

  PatternPredicate() = default;  // bottom
  static PatternPredicate bottom() { return {}; }
  static PatternPredicate atom(Atom a);
  static PatternPredicate atom(Term t, Formula f = Formula::truth()) { return atom(Atom{std::move(t), std::move(f)}); }
  static PatternPredicate disj(std::vector<PatternPredicate> xs);
  static PatternPredicate conj(std::vector<PatternPredicate> xs);
  static PatternPredicate from_atoms(const std::vector<Atom>& xs);

  Kind kind() const { return kind_; }
  const Atom& get_atom() const { return atom_; }
  const std::vector<PatternPredicate>& kids() const { return kids_; }

  friend bool operator==(const PatternPredicate&, const PatternPredicate&) = default;

 private:
  Kind kind_ = Kind::Bottom;
  Atom atom_;
  std::vector<PatternPredicate> kids_;
};

Atom apply(const Signature& sig, const Atom& a, const Substitution& s);
PatternPredicate apply(const Signature& sig, const PatternPredicate& p, const Substitution& s);
VarSet vars(const Atom& a);
VarSet vars(const PatternPredicate& p);

/// lhs ->* rhs_1 \/ ... \/ rhs_n over State patterns.
struct ReachFormula {
  std::string name;
  Atom lhs;
  std::vector<Atom> rhs;
  /// Display names of the rhs disjuncts, parallel to `rhs`.
  std::vector<std::string> rhs_names;

  /// Y = vars(lhs) /\ vars(rhs).
  VarSet parameters() const;
  const std::string& rhs_name(std::size_t i) const { return rhs_names.at(i); }
};

/// A variable of some rhs constraint that occurs neither in that disjunct's
/// pattern nor in the lhs, if any.
std::optional<Var> quantification_violation(const ReachFormula& f);

/// Fills missing rhs names with "1", "2", ...
void name_disjuncts(ReachFormula& f);

/// Membership of a canonical ground term in [[a]].  Variables of the
/// constraint not bound by matching are drawn from ground constructor terms
/// up to `size_bound`.
bool member(const RewriteTheory& th, const Atom& a, const Term& ground, unsigned size_bound = 3);
bool member(const RewriteTheory& th, const PatternPredicate& p, const Term& ground, unsigned size_bound = 3);

/// Canonical ground instances (u rho)! of size <= bound for which the
/// constraint holds; rho ranges over bindings of size <= bound.
std::set<Term> denotation_bounded(const RewriteTheory& th, const PatternPredicate& p, unsigned bound);

/// Canonical ground instances (u rho)! satisfying the constraint, where each
/// binding of rho has size <= binding_bound.  No bound on the result.
std::vector<Term> instances_bounded(const RewriteTheory& th, const Atom& a, unsigned binding_bound,
                                    std::size_t max_instances = 1000000);

struct Instance {
  Substitution binding;
  Term term;  // (u binding)!
};

/// Like instances_bounded, but keeps every satisfying binding whose
/// instance has size <= max_size.
std::vector<Instance> instance_bindings(const RewriteTheory& th, const Atom& a, unsigned binding_bound,
                                        unsigned max_size = ~0u, std::size_t max_instances = 1000000);

struct Disjuncts {
  std::vector<Atom> atoms;
  /// False when a unifier set used in an intersection was truncated.
  bool complete = true;
};

/// Union over B-unifiers alpha of u and v of (u alpha | (phi /\ psi) alpha);
/// atoms with unsatisfiable constraints are dropped, unknown ones kept.
/// Variables of `b` are renamed apart from `a` first.
Disjuncts intersect(const RewriteTheory& th, const Atom& a, const Atom& b, FreshGen& gen,
                    const SolverConfig& cfg = {});

/// Flattens a predicate to a list of atoms, computing intersections.
Disjuncts to_disjuncts(const RewriteTheory& th, const PatternPredicate& p, FreshGen& gen,
                       const SolverConfig& cfg = {});

/// True when some B-match alpha of the general pattern onto the specific
/// one makes the specific constraint imply the general one.
bool subsumes(const RewriteTheory& th, const Atom& general, const Atom& specific, FreshGen& gen,
              const SolverConfig& cfg = {});

/// Disjuncts whose pattern is an application of a state constructor.
/// A variable of the state sort is split into one disjunct per state
/// constructor.  Throws Error for atoms with any other shape.
std::vector<Atom> to_standard_form(const RewriteTheory& th, const PatternPredicate& p, FreshGen& gen,
                                   const SolverConfig& cfg = {});

}  // namespace rl
