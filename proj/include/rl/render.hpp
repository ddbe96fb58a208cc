// Proof tree output: an indented text layout and a JSON document that can
// be read back.
#pragma once

#include <string>

#include "rl/prover.hpp"

namespace rl {

/// One line per node.  A child line starts with the rule that produced it,
/// `step(label, theta)` or `axiom(name, alpha)`; closed leaves end with
/// `sub(disjunct, beta)` or `vacuous`.
std::string render_text(const Signature& sig, const ProofNode& root);
std::string render_text(const Signature& sig, const ProofResult& r);

/// Field names: goal {name, text, lhs, rhs, rhs_names}, rule, label,
/// substitution, via, via_substitution, axioms_available, memo, note,
/// children.  Terms are printed with sort annotations so they reparse.
std::string render_json(const Signature& sig, const ProofNode& root, int indent = 2);
std::string render_json(const Signature& sig, const ProofResult& r, int indent = 2);

ProofNode proof_from_json(const Signature& sig, const std::string& json);

/// Structural equality of two trees.
bool same_tree(const ProofNode& a, const ProofNode& b);

}  // namespace rl
