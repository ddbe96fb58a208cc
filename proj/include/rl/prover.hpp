// Proof search for all-paths reachability formulas with the Step and
// Axiom rules, plus circularities.
#pragma once

#include <string>
#include <vector>

#include "rl/transforms.hpp"

namespace rl {

struct ProverConfig {
  /// Maximum number of Step applications along one branch.
  unsigned max_depth = 12;
  /// Global cap on proof nodes created per formula set.
  std::size_t max_nodes = 200000;
  /// Witness search is off: the prover only acts on Unsat.
  SolverConfig solver = [] {
    SolverConfig c;
    c.witnesses = false;
    return c;
  }();
  enum class Truncation { Abort, Warn };
  /// What to do when a unifier set was cut short by the unification bound.
  Truncation truncation = Truncation::Abort;
};

enum class RuleKind { Step, Axiom, Subsume, Vacuous, Open };

const char* to_string(RuleKind k);

struct ProofNode {
  ReachFormula goal;
  /// False on root sequents [0, C]; true once circularities became axioms.
  bool axioms_available = false;
  RuleKind rule = RuleKind::Open;
  /// Step: rule label.  Axiom: axiom name.  Subsume: rhs disjunct name.
  std::string label;
  Substitution subst;
  std::vector<ProofNode> children;
  /// Why the node is open, or extra detail on how it closed.
  std::string note;
  /// On children of a Step node: the rewrite rule and unifier that
  /// produced this goal.
  std::string via;
  Substitution via_subst;
  /// The subtree was copied from an earlier proof of a renaming of this goal.
  bool memo = false;

  bool closed() const;
};

enum class Verdict { Proved, Inconclusive };

const char* to_string(Verdict v);

struct ProofResult {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<ProofNode> trees;  // one per formula in C
  std::vector<std::string> warnings;
  std::size_t nodes = 0;
  /// Set when the search was abandoned (budget or truncated unifier set).
  std::string aborted;
};

/// Pairs (i, beta) where beta matches rhs[i] onto u without binding any
/// variable of u.
std::vector<std::pair<std::size_t, Substitution>> match_set(const RewriteTheory& th, const Term& u,
                                                             const std::vector<Atom>& targets);

struct RuleUnifier {
  std::size_t rule;
  Substitution alpha;
  Atom child;  // (r | phi /\ cond) alpha
};

/// Rule unifiers of u | phi whose combined constraint is not proved
/// unsatisfiable.  Rule variables are renamed apart first.  `complete` is
/// false when some unifier set was truncated.
std::vector<RuleUnifier> unify_set(const RewriteTheory& th, const Atom& goal, FreshGen& gen,
                                   const SolverConfig& cfg, bool& complete);

/// Attempts [0, C] |-_T F for every F in C.  Rules with non-constructor
/// right-hand sides are abstracted first.  Deterministic.
ProofResult prove_set(const RewriteTheory& th, const std::vector<ReachFormula>& circularities,
                      const PatternPredicate& terminating, const ProverConfig& cfg = {});

/// Every root-to-leaf list of rule annotations, e.g. "step(n2w) axiom(G2) sub(P2)".
std::vector<std::vector<std::string>> rule_paths(const ProofNode& root);

}  // namespace rl
