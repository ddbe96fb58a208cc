// Bounded exploration of the ground reachability model.  This is the
// brute-force oracle the prover is cross-checked against.
#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rl/pattern.hpp"

namespace rl {

struct ExploreConfig {
  unsigned depth = 6;
  std::size_t max_states = 100000;
  /// Domains for rule variables not bound by matching (open systems).
  EnvDomains env;
  /// Ground State terms; canonicalized before use.
  std::vector<Term> start;
};

struct Transition {
  std::size_t src;
  std::string label;
  std::size_t dst;
};

/// A finite sequence s0 -l1-> s1 -l2-> ... with labels.size() == states.size() - 1.
struct Trace {
  std::vector<Term> states;
  std::vector<std::string> labels;
};

struct StateGraph {
  /// Breadth-first order; ids index every per-state vector.
  std::vector<Term> states;
  std::vector<unsigned> depth;
  /// Whether the successors of the state were computed.
  std::vector<bool> expanded;
  std::vector<std::vector<std::size_t>> out;  // edge ids
  std::vector<Transition> edges;
  /// The edge that first reached the state; none for start states.
  std::vector<std::optional<std::size_t>> parent;
  /// Set when the state cap dropped successors or the depth bound left
  /// unexpanded states.
  bool truncated = false;
  bool state_cap_hit = false;

  std::optional<std::size_t> find(const Term& t) const;
  /// Shortest path from a start state, following parent edges.
  Trace trace_to(std::size_t id) const;
  std::size_t add_state(const Term& t, unsigned d, std::optional<std::size_t> parent_edge);

 private:
  std::unordered_map<Term, std::size_t, TermHash> index_;
};

/// Level-synchronous BFS.  Successors of each level are computed in
/// parallel and merged in frontier order, so the result equals
/// explore_serial exactly.
StateGraph explore(const RewriteTheory& th, const ExploreConfig& cfg);
/// Plain queue-based BFS; the reference for explore.
StateGraph explore_serial(const RewriteTheory& th, const ExploreConfig& cfg);

/// States as `hash TAB depth TAB term`, then edges as `src TAB label TAB dst`.
std::string export_graph(const Signature& sig, const StateGraph& g);
/// Stable 64-bit hash of the printed term.
std::string state_hash(const Signature& sig, const Term& t);

std::string print(const Signature& sig, const Trace& tr);

struct InvariantCheck {
  bool holds = true;
  bool truncated = false;
  std::size_t states = 0;
  std::optional<Trace> counterexample;
};

/// Tests every state reachable from s0 within the bounds for membership in p.
InvariantCheck check_invariant_ground(const RewriteTheory& th, const std::vector<Term>& s0, const PatternPredicate& p,
                                      ExploreConfig cfg);

struct SemanticsConfig {
  unsigned depth = 6;
  /// Size bound on each binding of the lhs variables.
  unsigned binding_bound = 4;
  std::size_t max_starts = 20000;
  std::size_t max_states = 100000;
  /// Size bound for constraint variables left open by matching.
  unsigned member_bound = 3;
  EnvDomains env;
};

struct SemanticsCheck {
  bool counterexample_found = false;
  /// A T-terminating run from a lhs instance that never visits the rhs.
  std::optional<Trace> counterexample;
  std::size_t start_states = 0;
  std::size_t graph_states = 0;
  /// No state of [[T]] was reached at all, so the formula holds vacuously.
  bool vacuous = false;
  /// Start states from which some path was cut by the bounds before
  /// reaching [[T]] or the rhs.  Such paths are not counterexamples.
  std::size_t inconclusive_starts = 0;
  /// Explored states of [[T]] that still have successors.
  std::size_t terminating_with_successors = 0;
  bool state_cap_hit = false;
};

/// Searches bounded T-terminating runs from instances of f.lhs for one that
/// avoids every rhs disjunct, with parameters fixed by the start binding.
/// Start states are checked in parallel.
SemanticsCheck check_formula_semantics(const RewriteTheory& th, const ReachFormula& f, const PatternPredicate& t,
                                       const SemanticsConfig& cfg);
/// Single-threaded reference.
SemanticsCheck check_formula_semantics_serial(const RewriteTheory& th, const ReachFormula& f,
                                              const PatternPredicate& t, const SemanticsConfig& cfg);

}  // namespace rl
