// Order-sorted terms, variables and substitutions.
//
// Terms are immutable, reference-counted trees.  Applications of
// associative operators are stored flattened and applications of
// commutative operators keep their arguments sorted, so that equality
// modulo the structural axioms reduces to structural equality.  The
// normalizing constructor lives on Signature; Term itself only knows how
// to hold, compare and traverse.
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rl {

using SortId = int;
using OpId = int;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Var {
  std::string name;
  SortId sort = -1;

  friend bool operator==(const Var&, const Var&) = default;
  friend auto operator<=>(const Var&, const Var&) = default;
};

class Term;
using VarSet = std::set<Var>;

struct TermNode {
  OpId op = -1;  // -1 for variables
  SortId sort = -1;
  Var var;
  std::vector<Term> args;
  std::size_t hash = 0;
  unsigned size = 1;
  bool ground = false;
};

class Term {
 public:
  Term() = default;

  static Term variable(const Var& v);
  static Term variable(std::string name, SortId sort) { return variable(Var{std::move(name), sort}); }
  // Raw construction; callers are responsible for canonical argument order.
  // `flattened` marks applications of associative operators, whose own
  // symbol is not counted in size().
  static Term application(OpId op, SortId sort, std::vector<Term> args, bool flattened = false);

  bool valid() const { return node_ != nullptr; }
  bool is_var() const { return node_->op < 0; }
  const Var& var() const { return node_->var; }
  OpId op() const { return node_->op; }
  SortId sort() const { return node_->sort; }
  std::span<const Term> args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args[i]; }
  std::size_t arity() const { return node_->args.size(); }
  std::size_t hash() const { return node_->hash; }
  unsigned size() const { return node_->size; }
  bool ground() const { return node_->ground; }

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TermNode> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

using Substitution = std::map<Var, Term>;

/// Positions index the (flattened) argument lists from the root.
using Position = std::vector<std::size_t>;

void collect_vars(const Term& t, VarSet& out);
VarSet vars(const Term& t);
bool occurs(const Var& v, const Term& t);
bool contains_op(const Term& t, OpId op);

const Term& subterm_at(const Term& t, const Position& p);

/// Variables bound to something other than themselves.
VarSet domain(const Substitution& s);
VarSet range_vars(const Substitution& s);

/// Monotone fresh-name source; one per proof session.  Fresh names have
/// the form `stem#k`, where `stem` is the original name without any
/// previous `#` suffix, so they never collide with parsed identifiers.
class FreshGen {
 public:
  explicit FreshGen(std::uint64_t start = 1) : next_(start) {}
  Var fresh(const Var& base);
  Var fresh(const std::string& stem, SortId sort) { return fresh(Var{stem, sort}); }
  std::uint64_t peek() const { return next_; }

 private:
  std::uint64_t next_;
};

std::string name_stem(const std::string& name);

}  // namespace rl
