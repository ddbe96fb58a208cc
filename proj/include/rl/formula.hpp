// Quantifier-free formulas over terms: boolean combinations of equalities
// and disequalities.
#pragma once

#include <vector>

#include "rl/signature.hpp"

namespace rl {

struct Literal {
  Term lhs, rhs;
  bool positive = true;  // lhs = rhs when true, lhs =/= rhs otherwise

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal& a, const Literal& b) {
    if (auto c = a.positive <=> b.positive; c != 0) return c;
    if (auto c = a.lhs <=> b.lhs; c != 0) return c;
    return a.rhs <=> b.rhs;
  }
};

class Formula {
 public:
  enum class Kind { True, False, Lit, And, Or, Not };

  Formula() = default;  // true
  static Formula truth() { return {}; }
  static Formula falsity() {
    Formula f;
    f.kind_ = Kind::False;
    return f;
  }
  static Formula literal(Literal l) {
    Formula f;
    f.kind_ = Kind::Lit;
    f.lit_ = std::move(l);
    return f;
  }
  static Formula eq(Term a, Term b) { return literal({std::move(a), std::move(b), true}); }
  static Formula neq(Term a, Term b) { return literal({std::move(a), std::move(b), false}); }
  /// Smart constructors: flatten nested nodes and drop units.
  static Formula conj(std::vector<Formula> xs);
  static Formula disj(std::vector<Formula> xs);
  static Formula negation(Formula x);

  Kind kind() const { return kind_; }
  bool is_true() const { return kind_ == Kind::True; }
  bool is_false() const { return kind_ == Kind::False; }
  const Literal& lit() const { return lit_; }
  const std::vector<Formula>& kids() const { return kids_; }

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  Kind kind_ = Kind::True;
  Literal lit_;
  std::vector<Formula> kids_;
};

inline Formula operator&&(Formula a, Formula b) { return Formula::conj({std::move(a), std::move(b)}); }
inline Formula operator||(Formula a, Formula b) { return Formula::disj({std::move(a), std::move(b)}); }

Formula apply(const Signature& sig, const Formula& f, const Substitution& s);
void collect_vars(const Formula& f, VarSet& out);
VarSet vars(const Formula& f);
bool contains_op(const Formula& f, OpId op);

/// Negation pushed to literals.
Formula nnf(const Formula& f);

using Clause = std::vector<Literal>;  // conjunction
using Dnf = std::vector<Clause>;      // disjunction of conjunctions

/// Equivalent disjunctive normal form.  Literals inside a clause are
/// sorted and deduplicated; clauses containing a literal together with its
/// complement, or a syntactically false literal (t =/= t), are dropped.
/// Throws Error when more than `max_clauses` clauses would be produced.
Dnf to_dnf(const Formula& f, std::size_t max_clauses = 4096);
Formula from_dnf(const Dnf& d);
Formula from_clause(const Clause& c);

}  // namespace rl
