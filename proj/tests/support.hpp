// Shared fixtures for the unit tests and the acceptance binary: corpus
// loaders, a small algebra with one ACU and one assoc+id operator, random
// generators and brute-force reference computations.
#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rl/corpus.hpp"
#include "rl/render.hpp"

namespace rltest {

rl::RewriteTheory corpus_theory(const std::string& example);
rl::GoalFile corpus_goals(const std::string& example, const std::string& file = "goals.rl");

/// Constants a b c : Elt with Elt < MSet List, `__` ACU over MSet with
/// identity ∅, `_;_` assoc over List with identity nil.
const rl::RewriteTheory& algebra();

rl::Term term(const rl::RewriteTheory& th, const std::string& text, rl::VarTable* vt = nullptr);

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}
  unsigned below(unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(rng_); }
  bool coin(unsigned percent = 50) { return below(100) < percent; }

  /// A multiset term over constants, Elt variables E F and MSet variables
  /// X Y, with at most `max_vars` distinct variables.
  rl::Term mset(unsigned max_items, unsigned max_vars);
  /// A list term over constants, Elt variable E and List variables L M.
  rl::Term list(unsigned max_items, unsigned max_vars);
  /// An atom over MSet or List with an optional disequality constraint on
  /// one of its variables.
  rl::Atom atom(bool list_sort);

 private:
  rl::Term item(const std::vector<rl::Term>& vars_pool, std::vector<rl::Term>& used, unsigned max_vars);
  std::mt19937_64 rng_;
};

/// Every ground substitution binding `xs` to constructor terms of size
/// <= bound.
std::vector<rl::Substitution> ground_substitutions(const rl::RewriteTheory& th, const rl::VarSet& xs,
                                                   unsigned bound);

/// Ground unifiers of a and b found by enumeration, bindings of size <= bound.
std::set<rl::Substitution> brute_force_unifiers(const rl::RewriteTheory& th, const rl::Term& a, const rl::Term& b,
                                                unsigned bound);

/// True when the ground substitution `g` over `xs` is an instance modulo
/// the axioms of some unifier in the set, found by simultaneous matching.
bool covered(const rl::RewriteTheory& th, const rl::VarSet& xs, const std::vector<rl::Substitution>& unifiers,
             const rl::Substitution& g);

std::string show(const rl::Signature& sig, const std::set<rl::Term>& ts);

}  // namespace rltest
