// Sorts, operator declarations and the normalizing term constructor.
#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rl/term.hpp"

namespace rl {

class SortGraph {
 public:
  SortId add(const std::string& name);
  std::optional<SortId> find(const std::string& name) const;
  SortId id(const std::string& name) const;
  const std::string& name(SortId s) const { return names_.at(static_cast<std::size_t>(s)); }
  std::size_t size() const { return names_.size(); }

  /// Records lo < hi.  Throws if the pair would create a cycle.
  void add_subsort(SortId lo, SortId hi);
  bool leq(SortId a, SortId b) const;
  /// The maximal sorts below both a and b (empty when they share no subsort).
  std::vector<SortId> maximal_lower_bounds(SortId a, SortId b) const;
  const std::vector<std::pair<SortId, SortId>>& subsort_pairs() const { return pairs_; }

 private:
  void close();
  std::vector<std::string> names_;
  std::unordered_map<std::string, SortId> index_;
  std::vector<std::pair<SortId, SortId>> pairs_;
  std::vector<std::vector<char>> leq_;
};

/// How an operator is written.  Derived from the underscores in its name:
/// `f` is functional (`f(a, b)` or a constant), `__` is juxtaposition,
/// `<_>` outfix, `s_` prefix and `_;_` / `_|_|_` infix.
enum class Syntax { Functional, Juxtaposition, Outfix, Prefix, Infix };

struct Operator {
  std::string name;
  std::vector<SortId> args;
  SortId result = -1;
  bool ctor = false;
  bool assoc = false;
  bool comm = false;
  Term identity;  // invalid when absent

  Syntax syntax = Syntax::Functional;
  std::vector<std::string> tokens;  // the non-hole pieces of a mixfix name

  bool has_identity() const { return identity.valid(); }
  std::size_t arity() const { return args.size(); }
};

class Signature {
 public:
  SortGraph& sorts() { return sorts_; }
  const SortGraph& sorts() const { return sorts_; }

  /// Declares an operator.  Attributes are validated against the supported
  /// combinations (none, comm, assoc+id, assoc+comm, assoc+comm+id).
  OpId add_op(Operator op);
  void set_identity(OpId op, const Term& id);

  const Operator& op(OpId id) const { return ops_.at(static_cast<std::size_t>(id)); }
  std::optional<OpId> find_op(const std::string& name) const;
  OpId op_id(const std::string& name) const;
  std::size_t op_count() const { return ops_.size(); }

  /// Builds op(args) in canonical form: flattened under associativity,
  /// identity elements removed, commutative arguments sorted.  Throws on
  /// arity or sort mismatch, naming the offending argument.
  Term make(OpId op, std::vector<Term> args) const;
  Term constant(const std::string& name) const { return make(op_id(name), {}); }
  Term var(const std::string& name, const std::string& sort) const {
    return Term::variable(name, sorts_.id(sort));
  }

  /// Simultaneous replacement followed by re-normalization.
  Term apply(const Term& t, const Substitution& s) const;
  /// Re-normalizes an arbitrary term (the canonical representative of its
  /// class modulo the structural axioms).
  Term normalize(const Term& t) const;
  Term replace_at(const Term& t, const Position& p, const Term& u) const;

  bool leq(SortId a, SortId b) const { return sorts_.leq(a, b); }
  SortId least_sort(const Term& t) const { return t.sort(); }

  bool is_constructor_term(const Term& t) const;
  /// A variable that can stand for a whole (possibly empty) argument list of
  /// the associative operator `op`, as opposed to a single element.
  bool is_collection_var(const Var& v, OpId op) const;
  bool is_assoc(OpId op) const { return op >= 0 && ops_[static_cast<std::size_t>(op)].assoc; }

  /// Operators in parsing precedence order (infix ops, loosest first).
  const std::vector<OpId>& infix_order() const { return infix_order_; }
  std::optional<OpId> juxtaposition() const { return juxta_; }

 private:
  SortGraph sorts_;
  std::vector<Operator> ops_;
  std::unordered_map<std::string, OpId> index_;
  std::vector<OpId> infix_order_;
  std::optional<OpId> juxta_;
};

/// Composition: apply(t, compose(a, b)) == apply(apply(t, a), b).
Substitution compose(const Signature& sig, const Substitution& a, const Substitution& b);

/// Sort-preserving bijective renaming of `xs` onto fresh variables that
/// avoid `avoid`.
Substitution fresh_rename(const VarSet& xs, const VarSet& avoid, FreshGen& gen);

}  // namespace rl
