// Unification modulo free / comm / assoc(+id) / assoc+comm(+id) operators.
//
// A depth-first search over states holding an idempotent substitution and
// a list of pending equations.  Equations under an associative operator
// are kept as explicit argument lists so that partial lists without an
// identity element can be represented.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <variant>

#include "rl/eq.hpp"

namespace rl {

namespace {

struct TermEq {
  Term a, b;
};
struct ListEq {
  OpId op;
  std::vector<Term> l, r;
};
using Eq = std::variant<TermEq, ListEq>;

struct State {
  Substitution sigma;
  std::vector<Eq> pending;
  std::map<Var, unsigned> fragments;  // list splits charged per variable
};

class Unifier {
 public:
  Unifier(const Signature& sig, FreshGen& gen, const UnifyConfig& cfg, const VarSet& rigid)
      : sig_(sig), gen_(gen), cfg_(cfg), rigid_(rigid) {}

  UnifierSet run(std::vector<Eq> eqs, const VarSet& keep) {
    keep_ = keep;
    State s;
    s.pending = std::move(eqs);
    solve(std::move(s));
    sort_substitutions(out_.unifiers);
    out_.unifiers.erase(std::unique(out_.unifiers.begin(), out_.unifiers.end()), out_.unifiers.end());
    return std::move(out_);
  }

 private:
  bool flexible(const Term& t) const { return t.is_var() && !rigid_.count(t.var()); }
  bool collection(const Term& t, OpId op) const { return flexible(t) && sig_.is_collection_var(t.var(), op); }

  std::vector<Term> elems(OpId op, const Term& t) const {
    const Operator& o = sig_.op(op);
    if (!t.is_var() && t.op() == op) return {t.args().begin(), t.args().end()};
    if (o.has_identity() && t == o.identity) return {};
    return {t};
  }

  Term build(OpId op, const std::vector<Term>& xs) const {
    const Operator& o = sig_.op(op);
    if (xs.empty()) return o.identity;
    Term acc = xs.back();
    for (std::size_t i = xs.size() - 1; i-- > 0;) acc = sig_.make(op, {xs[i], acc});
    return acc;
  }

  Var fresh(const std::string& stem, SortId sort) {
    Var v = gen_.fresh(stem, sort);
    while (keep_.count(v)) v = gen_.fresh(stem, sort);
    return v;
  }

  // Adds x -> t to the substitution, keeping it idempotent.
  bool bind(State& s, const Var& x, const Term& t) const {
    if (!sig_.leq(t.sort(), x.sort) || occurs(x, t)) return false;
    Substitution one{{x, t}};
    for (auto& [v, u] : s.sigma) u = sig_.apply(u, one);
    s.sigma.emplace(x, t);
    return true;
  }

  void emit(const State& s) {
    Substitution r;
    for (const auto& [v, t] : s.sigma)
      if (keep_.count(v)) r.emplace(v, t);
    out_.unifiers.push_back(std::move(r));
  }

  void solve(State s) {
    if (++steps_ > cfg_.max_steps) {
      out_.complete = false;
      return;
    }
    if (s.pending.empty()) {
      emit(s);
      return;
    }
    Eq eq = std::move(s.pending.back());
    s.pending.pop_back();
    if (auto* te = std::get_if<TermEq>(&eq)) {
      Term a = sig_.apply(te->a, s.sigma), b = sig_.apply(te->b, s.sigma);
      solve_term(std::move(s), std::move(a), std::move(b));
    }
    else
      solve_list(std::move(s), std::get<ListEq>(eq));
  }

  void solve_term(State s, Term a, Term b) {
    if (a == b) {
      solve(std::move(s));
      return;
    }
    if (!flexible(a) && flexible(b)) std::swap(a, b);
    if (flexible(a)) {
      const Var& x = a.var();
      if (flexible(b)) {
        const Var& y = b.var();
        if (sig_.leq(x.sort, y.sort)) {
          if (bind(s, y, a)) solve(std::move(s));
        } else if (sig_.leq(y.sort, x.sort)) {
          if (bind(s, x, b)) solve(std::move(s));
        } else {
          for (SortId lb : sig_.sorts().maximal_lower_bounds(x.sort, y.sort)) {
            State c = s;
            Term z = Term::variable(fresh(name_stem(x.name), lb));
            if (bind(c, x, z) && bind(c, y, z)) solve(std::move(c));
          }
        }
        return;
      }
      if (!b.is_var() && sig_.is_assoc(b.op())) {
        bool top = false;
        for (const auto& e : b.args()) top = top || e == a;
        if (collection(a, b.op()) && !occurs(x, b)) {
          if (bind(s, x, b)) solve(std::move(s));
          return;
        }
        if (occurs(x, b) && !top) return;
        s.pending.push_back(ListEq{b.op(), {a}, {b.args().begin(), b.args().end()}});
        solve(std::move(s));
        return;
      }
      if (bind(s, x, b)) solve(std::move(s));
      return;
    }
    // Neither side is a flexible variable.
    OpId aop = a.is_var() ? -1 : a.op();
    OpId bop = b.is_var() ? -1 : b.op();
    if (sig_.is_assoc(aop) || sig_.is_assoc(bop)) {
      if (sig_.is_assoc(aop) && sig_.is_assoc(bop) && aop != bop) return;
      OpId op = sig_.is_assoc(aop) ? aop : bop;
      s.pending.push_back(ListEq{op, elems(op, a), elems(op, b)});
      solve(std::move(s));
      return;
    }
    if (a.is_var() || b.is_var() || aop != bop || a.arity() != b.arity()) return;
    const Operator& o = sig_.op(aop);
    if (o.comm) {
      State c = s;
      c.pending.push_back(TermEq{a.arg(0), b.arg(1)});
      c.pending.push_back(TermEq{a.arg(1), b.arg(0)});
      solve(std::move(c));
    }
    for (std::size_t i = a.arity(); i-- > 0;) s.pending.push_back(TermEq{a.arg(i), b.arg(i)});
    solve(std::move(s));
  }

  void solve_list(State s, const ListEq& eq) {
    std::vector<Term> l, r;
    for (const auto& t : eq.l)
      for (auto& e : elems(eq.op, sig_.apply(t, s.sigma))) l.push_back(std::move(e));
    for (const auto& t : eq.r)
      for (auto& e : elems(eq.op, sig_.apply(t, s.sigma))) r.push_back(std::move(e));
    if (sig_.op(eq.op).comm)
      solve_ac(std::move(s), eq.op, std::move(l), std::move(r));
    else
      solve_a(std::move(s), eq.op, std::move(l), std::move(r));
  }

  // Binds a lone collection variable on one side to the whole other side.
  bool lone_variable(State& s, OpId op, const std::vector<Term>& one, const std::vector<Term>& other,
                     bool& ok) {
    if (one.size() != 1 || !collection(one[0], op)) return false;
    for (const auto& t : other)
      if (occurs(one[0].var(), t)) return false;
    if (other.empty() && !sig_.op(op).has_identity()) {
      ok = false;
      return true;
    }
    ok = bind(s, one[0].var(), build(op, other));
    return true;
  }

  // ---- associative + commutative -------------------------------------

  struct Slot {
    Term term;
    unsigned coef;
    bool coll;
  };

  void solve_ac(State s, OpId op, std::vector<Term> l, std::vector<Term> r) {
    std::sort(l.begin(), l.end());
    std::sort(r.begin(), r.end());
    std::vector<Term> l2, r2;
    std::set_difference(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(l2));
    std::set_difference(r.begin(), r.end(), l.begin(), l.end(), std::back_inserter(r2));
    if (l2.empty() && r2.empty()) {
      solve(std::move(s));
      return;
    }
    bool ok = true;
    if (lone_variable(s, op, l2, r2, ok) || lone_variable(s, op, r2, l2, ok)) {
      if (ok) solve(std::move(s));
      return;
    }
    std::vector<Slot> slots;
    auto add = [&](const std::vector<Term>& side) {
      for (const auto& t : side) {
        if (!slots.empty() && slots.back().term == t)
          ++slots.back().coef;
        else
          slots.push_back({t, 1, collection(t, op)});
      }
    };
    add(l2);
    const std::size_t m = slots.size();
    add(r2);
    std::vector<unsigned> lc, rc;
    for (std::size_t i = 0; i < slots.size(); ++i) (i < m ? lc : rc).push_back(slots[i].coef);
    auto basis = diophantine_basis(lc, rc);

    std::vector<std::vector<unsigned>> elem_vecs, pure_vecs;
    for (auto& v : basis) {
      bool has_elem = false, bad = false;
      for (std::size_t p = 0; p < slots.size(); ++p) {
        if (slots[p].coll || v[p] == 0) continue;
        has_elem = true;
        bad = bad || v[p] > 1;
      }
      if (bad) continue;
      (has_elem ? elem_vecs : pure_vecs).push_back(std::move(v));
    }
    std::vector<char> covered(slots.size(), 0);
    std::vector<const std::vector<unsigned>*> chosen;
    cover_elements(s, op, slots, elem_vecs, pure_vecs, covered, chosen);
  }

  void cover_elements(const State& s, OpId op, const std::vector<Slot>& slots,
                      const std::vector<std::vector<unsigned>>& elem_vecs,
                      const std::vector<std::vector<unsigned>>& pure_vecs, std::vector<char>& covered,
                      std::vector<const std::vector<unsigned>*>& chosen) {
    std::size_t next = slots.size();
    for (std::size_t p = 0; p < slots.size(); ++p)
      if (!slots[p].coll && !covered[p]) {
        next = p;
        break;
      }
    if (next == slots.size()) {
      choose_pure(s, op, slots, pure_vecs, chosen);
      return;
    }
    for (const auto& v : elem_vecs) {
      if (v[next] != 1) continue;
      bool clash = false;
      for (std::size_t p = 0; p < slots.size(); ++p) clash = clash || (!slots[p].coll && v[p] && covered[p]);
      if (clash) continue;
      for (std::size_t p = 0; p < slots.size(); ++p)
        if (!slots[p].coll && v[p]) covered[p] = 1;
      chosen.push_back(&v);
      cover_elements(s, op, slots, elem_vecs, pure_vecs, covered, chosen);
      chosen.pop_back();
      for (std::size_t p = 0; p < slots.size(); ++p)
        if (!slots[p].coll && v[p]) covered[p] = 0;
    }
  }

  void choose_pure(const State& s, OpId op, const std::vector<Slot>& slots,
                   const std::vector<std::vector<unsigned>>& pure_vecs,
                   std::vector<const std::vector<unsigned>*>& chosen) {
    if (sig_.op(op).has_identity()) {
      auto all = chosen;
      for (const auto& v : pure_vecs) all.push_back(&v);
      instantiate(s, op, slots, all);
      return;
    }
    // Without an identity every collection slot must receive something.
    const std::size_t n = pure_vecs.size();
    if (n > 20) {
      out_.complete = false;
      return;
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      auto all = chosen;
      for (std::size_t k = 0; k < n; ++k)
        if (mask >> k & 1) all.push_back(&pure_vecs[k]);
      bool full = true;
      for (std::size_t p = 0; p < slots.size() && full; ++p) {
        if (!slots[p].coll) continue;
        bool any = false;
        for (auto* v : all) any = any || (*v)[p] > 0;
        full = any;
      }
      if (full) instantiate(s, op, slots, all);
    }
  }

  void instantiate(State s, OpId op, const std::vector<Slot>& slots,
                   const std::vector<const std::vector<unsigned>*>& vecs) {
    const Operator& o = sig_.op(op);
    std::vector<Term> z;
    for (auto* v : vecs) {
      std::optional<Term> rep;
      for (std::size_t p = 0; p < slots.size(); ++p) {
        if (slots[p].coll || (*v)[p] == 0) continue;
        if (!rep)
          rep = slots[p].term;
        else
          s.pending.push_back(TermEq{slots[p].term, *rep});
      }
      z.push_back(rep ? *rep : Term::variable(fresh("z", o.result)));
    }
    for (std::size_t p = 0; p < slots.size(); ++p) {
      if (!slots[p].coll) continue;
      std::vector<Term> parts;
      for (std::size_t k = 0; k < vecs.size(); ++k)
        for (unsigned c = 0; c < (*vecs[k])[p]; ++c) parts.push_back(z[k]);
      if (parts.empty() && !o.has_identity()) return;
      s.pending.push_back(TermEq{slots[p].term, build(op, parts)});
    }
    solve(std::move(s));
  }

  // ---- associative (lists) ---------------------------------------------

  bool has_flexible_collection(OpId op, const std::vector<Term>& xs, std::size_t from) const {
    for (std::size_t i = from; i < xs.size(); ++i)
      if (collection(xs[i], op)) return true;
    return false;
  }

  // Charges a fresh fragment to x's lineage; returns the new variable or
  // nothing when the bound is exhausted.
  std::optional<Var> split(State& s, OpId op, const Var& x) {
    unsigned used = s.fragments.count(x) ? s.fragments[x] : 0;
    if (used >= cfg_.assoc_fragment_bound) {
      out_.complete = false;
      return std::nullopt;
    }
    Var f = fresh(name_stem(x.name), sig_.op(op).result);
    s.fragments[f] = used + 1;
    return f;
  }

  static std::vector<Term> tail(const std::vector<Term>& xs, std::size_t k) { return {xs.begin() + static_cast<std::ptrdiff_t>(k), xs.end()}; }

  void solve_a(State s, OpId op, std::vector<Term> l, std::vector<Term> r) {
    const Operator& o = sig_.op(op);
    while (!l.empty() && !r.empty() && l.front() == r.front()) {
      l.erase(l.begin());
      r.erase(r.begin());
    }
    while (!l.empty() && !r.empty() && l.back() == r.back()) {
      l.pop_back();
      r.pop_back();
    }
    if (l.empty() && r.empty()) {
      solve(std::move(s));
      return;
    }
    if (l.empty() || r.empty()) {
      const auto& rest = l.empty() ? r : l;
      if (!o.has_identity()) return;
      for (const auto& t : rest) {
        if (!collection(t, op)) return;
        s.pending.push_back(TermEq{t, o.identity});
      }
      solve(std::move(s));
      return;
    }
    bool ok = true;
    if (lone_variable(s, op, l, r, ok) || lone_variable(s, op, r, l, ok)) {
      if (ok) solve(std::move(s));
      return;
    }
    bool lc = collection(l.front(), op), rc = collection(r.front(), op);
    if (!lc && !rc) {
      s.pending.push_back(ListEq{op, tail(l, 1), tail(r, 1)});
      s.pending.push_back(TermEq{l.front(), r.front()});
      solve(std::move(s));
      return;
    }
    if (!lc) {
      std::swap(l, r);
      std::swap(lc, rc);
    }
    const Term x = l.front();
    // The other side is rigid: x is one of its prefixes.
    if (!has_flexible_collection(op, r, 0)) {
      for (std::size_t k = o.has_identity() ? 0 : 1; k <= r.size(); ++k) {
        State c = s;
        c.pending.push_back(ListEq{op, tail(l, 1), tail(r, k)});
        c.pending.push_back(TermEq{x, build(op, {r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k)})});
        solve(std::move(c));
      }
      return;
    }
    const Term y = r.front();
    if (!rc) {
      // x against a single element y.
      if (o.has_identity()) {
        State c = s;
        c.pending.push_back(ListEq{op, tail(l, 1), r});
        c.pending.push_back(TermEq{x, o.identity});
        solve(std::move(c));
      }
      State c = s;
      if (auto f = split(c, op, x.var())) {
        std::vector<Term> nl{Term::variable(*f)};
        for (std::size_t i = 1; i < l.size(); ++i) nl.push_back(l[i]);
        c.pending.push_back(ListEq{op, nl, tail(r, 1)});
        c.pending.push_back(TermEq{x, sig_.make(op, {y, Term::variable(*f)})});
        solve(std::move(c));
      }
      if (!o.has_identity()) {
        State d = s;
        d.pending.push_back(ListEq{op, tail(l, 1), tail(r, 1)});
        d.pending.push_back(TermEq{x, y});
        solve(std::move(d));
      }
      return;
    }
    // Two collection variables at the front.
    {
      State c = s;
      c.pending.push_back(ListEq{op, tail(l, 1), tail(r, 1)});
      c.pending.push_back(TermEq{x, y});
      solve(std::move(c));
    }
    for (int side = 0; side < 2; ++side) {
      const auto& big = side == 0 ? l : r;
      const auto& small = side == 0 ? r : l;
      State c = s;
      if (auto f = split(c, op, big.front().var())) {
        std::vector<Term> nb{Term::variable(*f)};
        for (std::size_t i = 1; i < big.size(); ++i) nb.push_back(big[i]);
        c.pending.push_back(ListEq{op, nb, tail(small, 1)});
        c.pending.push_back(TermEq{big.front(), sig_.make(op, {small.front(), Term::variable(*f)})});
        solve(std::move(c));
      }
    }
  }

  const Signature& sig_;
  FreshGen& gen_;
  const UnifyConfig& cfg_;
  const VarSet& rigid_;
  VarSet keep_;
  UnifierSet out_;
  std::size_t steps_ = 0;
};

}  // namespace

UnifierSet unify_system(const Signature& sig, const std::vector<std::pair<Term, Term>>& eqs, FreshGen& gen,
                        const UnifyConfig& cfg, const VarSet& rigid) {
  std::vector<Eq> pending;
  VarSet keep;
  for (auto it = eqs.rbegin(); it != eqs.rend(); ++it) {
    pending.push_back(TermEq{it->first, it->second});
    collect_vars(it->first, keep);
    collect_vars(it->second, keep);
  }
  Unifier u(sig, gen, cfg, rigid);
  return u.run(std::move(pending), keep);
}

UnifierSet unify_modulo(const Signature& sig, const Term& a, const Term& b, FreshGen& gen, const UnifyConfig& cfg,
                        const VarSet& rigid) {
  return unify_system(sig, {{a, b}}, gen, cfg, rigid);
}

}  // namespace rl
