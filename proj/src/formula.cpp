#include "rl/formula.hpp"

#include <algorithm>

namespace rl {

Formula Formula::conj(std::vector<Formula> xs) {
  std::vector<Formula> out;
  for (auto& x : xs) {
    if (x.is_true()) continue;
    if (x.is_false()) return falsity();
    if (x.kind_ == Kind::And)
      out.insert(out.end(), x.kids_.begin(), x.kids_.end());
    else
      out.push_back(std::move(x));
  }
  if (out.empty()) return truth();
  if (out.size() == 1) return out.front();
  Formula f;
  f.kind_ = Kind::And;
  f.kids_ = std::move(out);
  return f;
}

Formula Formula::disj(std::vector<Formula> xs) {
  std::vector<Formula> out;
  for (auto& x : xs) {
    if (x.is_false()) continue;
    if (x.is_true()) return truth();
    if (x.kind_ == Kind::Or)
      out.insert(out.end(), x.kids_.begin(), x.kids_.end());
    else
      out.push_back(std::move(x));
  }
  if (out.empty()) return falsity();
  if (out.size() == 1) return out.front();
  Formula f;
  f.kind_ = Kind::Or;
  f.kids_ = std::move(out);
  return f;
}

Formula Formula::negation(Formula x) {
  switch (x.kind_) {
    case Kind::True:
      return falsity();
    case Kind::False:
      return truth();
    case Kind::Lit: {
      Literal l = x.lit_;
      l.positive = !l.positive;
      return literal(std::move(l));
    }
    case Kind::Not:
      return x.kids_.front();
    default: {
      Formula f;
      f.kind_ = Kind::Not;
      f.kids_.push_back(std::move(x));
      return f;
    }
  }
}

Formula apply(const Signature& sig, const Formula& f, const Substitution& s) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return f;
    case Formula::Kind::Lit:
      return Formula::literal({sig.apply(f.lit().lhs, s), sig.apply(f.lit().rhs, s), f.lit().positive});
    case Formula::Kind::Not:
      return Formula::negation(apply(sig, f.kids().front(), s));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> ks;
      for (const auto& k : f.kids()) ks.push_back(apply(sig, k, s));
      return f.kind() == Formula::Kind::And ? Formula::conj(std::move(ks)) : Formula::disj(std::move(ks));
    }
  }
  return f;
}

void collect_vars(const Formula& f, VarSet& out) {
  if (f.kind() == Formula::Kind::Lit) {
    collect_vars(f.lit().lhs, out);
    collect_vars(f.lit().rhs, out);
  }
  for (const auto& k : f.kids()) collect_vars(k, out);
}

VarSet vars(const Formula& f) {
  VarSet s;
  collect_vars(f, s);
  return s;
}

bool contains_op(const Formula& f, OpId op) {
  if (f.kind() == Formula::Kind::Lit) return contains_op(f.lit().lhs, op) || contains_op(f.lit().rhs, op);
  for (const auto& k : f.kids())
    if (contains_op(k, op)) return true;
  return false;
}

namespace {

Formula nnf_(const Formula& f, bool neg) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
      return neg ? Formula::falsity() : f;
    case K::False:
      return neg ? Formula::truth() : f;
    case K::Lit:
      return neg ? Formula::negation(f) : f;
    case K::Not:
      return nnf_(f.kids().front(), !neg);
    case K::And:
    case K::Or: {
      std::vector<Formula> ks;
      for (const auto& k : f.kids()) ks.push_back(nnf_(k, neg));
      bool conj = (f.kind() == K::And) != neg;
      return conj ? Formula::conj(std::move(ks)) : Formula::disj(std::move(ks));
    }
  }
  return f;
}

// Canonical orientation so that a = b and b = a compare equal.
Literal orient(Literal l) {
  if (l.rhs < l.lhs) std::swap(l.lhs, l.rhs);
  return l;
}

bool tidy(Clause& c) {
  for (auto& l : c) l = orient(l);
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  for (const auto& l : c) {
    if (!l.positive && l.lhs == l.rhs) return false;
    if (l.positive && std::binary_search(c.begin(), c.end(), Literal{l.lhs, l.rhs, false})) return false;
  }
  std::erase_if(c, [](const Literal& l) { return l.positive && l.lhs == l.rhs; });
  return true;
}

Dnf dnf_(const Formula& f, std::size_t cap) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
      return {Clause{}};
    case K::False:
      return {};
    case K::Lit:
      return {Clause{f.lit()}};
    case K::Or: {
      Dnf out;
      for (const auto& k : f.kids()) {
        Dnf d = dnf_(k, cap);
        out.insert(out.end(), d.begin(), d.end());
        if (out.size() > cap) throw Error("formula too large for disjunctive normal form");
      }
      return out;
    }
    case K::And: {
      Dnf acc{Clause{}};
      for (const auto& k : f.kids()) {
        Dnf d = dnf_(k, cap);
        Dnf next;
        for (const auto& a : acc)
          for (const auto& b : d) {
            Clause c = a;
            c.insert(c.end(), b.begin(), b.end());
            if (tidy(c)) next.push_back(std::move(c));
            if (next.size() > cap) throw Error("formula too large for disjunctive normal form");
          }
        acc = std::move(next);
      }
      return acc;
    }
    case K::Not:
      break;
  }
  throw Error("internal: negation left after nnf");
}

}  // namespace

Formula nnf(const Formula& f) { return nnf_(f, false); }

Dnf to_dnf(const Formula& f, std::size_t max_clauses) {
  Dnf d = dnf_(nnf(f), max_clauses);
  Dnf out;
  for (auto& c : d)
    if (tidy(c)) out.push_back(std::move(c));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  // A true clause makes the whole disjunction true.
  for (const auto& c : out)
    if (c.empty()) return {Clause{}};
  return out;
}

Formula from_clause(const Clause& c) {
  std::vector<Formula> ks;
  for (const auto& l : c) ks.push_back(Formula::literal(l));
  return Formula::conj(std::move(ks));
}

Formula from_dnf(const Dnf& d) {
  std::vector<Formula> ds;
  for (const auto& c : d) ds.push_back(from_clause(c));
  return Formula::disj(std::move(ds));
}

}  // namespace rl
