#include "rl/pattern.hpp"

#include "rl/enumerate.hpp"

namespace rl {

PatternPredicate PatternPredicate::atom(Atom a) {
  PatternPredicate p;
  p.kind_ = Kind::Atom;
  p.atom_ = std::move(a);
  return p;
}

PatternPredicate PatternPredicate::disj(std::vector<PatternPredicate> xs) {
  std::vector<PatternPredicate> out;
  for (auto& x : xs) {
    if (x.kind_ == Kind::Bottom) continue;
    if (x.kind_ == Kind::Or)
      out.insert(out.end(), x.kids_.begin(), x.kids_.end());
    else
      out.push_back(std::move(x));
  }
  if (out.empty()) return bottom();
  if (out.size() == 1) return out.front();
  PatternPredicate p;
  p.kind_ = Kind::Or;
  p.kids_ = std::move(out);
  return p;
}

PatternPredicate PatternPredicate::conj(std::vector<PatternPredicate> xs) {
  std::vector<PatternPredicate> out;
  for (auto& x : xs) {
    if (x.kind_ == Kind::Bottom) return bottom();
    if (x.kind_ == Kind::And)
      out.insert(out.end(), x.kids_.begin(), x.kids_.end());
    else
      out.push_back(std::move(x));
  }
  if (out.size() == 1) return out.front();
  PatternPredicate p;
  p.kind_ = Kind::And;
  p.kids_ = std::move(out);
  return p;
}

PatternPredicate PatternPredicate::from_atoms(const std::vector<Atom>& xs) {
  std::vector<PatternPredicate> ps;
  for (const auto& a : xs) ps.push_back(atom(a));
  return disj(std::move(ps));
}

Atom apply(const Signature& sig, const Atom& a, const Substitution& s) {
  return {sig.apply(a.term, s), apply(sig, a.cond, s)};
}

PatternPredicate apply(const Signature& sig, const PatternPredicate& p, const Substitution& s) {
  using K = PatternPredicate::Kind;
  switch (p.kind()) {
    case K::Bottom:
      return p;
    case K::Atom:
      return PatternPredicate::atom(apply(sig, p.get_atom(), s));
    case K::Or:
    case K::And: {
      std::vector<PatternPredicate> ks;
      for (const auto& k : p.kids()) ks.push_back(apply(sig, k, s));
      return p.kind() == K::Or ? PatternPredicate::disj(std::move(ks)) : PatternPredicate::conj(std::move(ks));
    }
  }
  return p;
}

VarSet vars(const Atom& a) {
  VarSet s = vars(a.term);
  collect_vars(a.cond, s);
  return s;
}

VarSet vars(const PatternPredicate& p) {
  VarSet s;
  if (p.kind() == PatternPredicate::Kind::Atom) return vars(p.get_atom());
  for (const auto& k : p.kids()) {
    VarSet ks = vars(k);
    s.insert(ks.begin(), ks.end());
  }
  return s;
}

VarSet ReachFormula::parameters() const {
  VarSet l = vars(lhs), out;
  for (const auto& a : rhs)
    for (const auto& v : vars(a))
      if (l.count(v)) out.insert(v);
  return out;
}

std::optional<Var> quantification_violation(const ReachFormula& f) {
  VarSet l = vars(f.lhs);
  for (const auto& a : f.rhs) {
    VarSet ok = vars(a.term);
    for (const auto& v : vars(a.cond))
      if (!ok.count(v) && !l.count(v)) return v;
  }
  return std::nullopt;
}

void name_disjuncts(ReachFormula& f) {
  for (std::size_t i = f.rhs_names.size(); i < f.rhs.size(); ++i) f.rhs_names.push_back(std::to_string(i + 1));
}

namespace {

// Calls k for every binding of `xs` drawn from the given domains.
template <class K>
bool for_each_binding(const std::vector<Var>& xs, const std::vector<std::vector<Term>>& doms, Substitution base,
                      K&& k) {
  std::vector<std::size_t> idx(xs.size(), 0);
  for (const auto& d : doms)
    if (d.empty()) return false;
  while (true) {
    Substitution s = base;
    for (std::size_t i = 0; i < xs.size(); ++i) s[xs[i]] = doms[i][idx[i]];
    if (k(s)) return true;
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == doms[i].size()) idx[i++] = 0;
    if (i == idx.size()) return false;
  }
}

}  // namespace

bool member(const RewriteTheory& th, const Atom& a, const Term& g, unsigned size_bound) {
  GroundEnumerator en(th.sig);
  for (const auto& m : match_modulo(th.sig, a.term, g)) {
    std::vector<Var> open;
    for (const auto& v : vars(a.cond))
      if (!m.count(v)) open.push_back(v);
    std::vector<std::vector<Term>> doms;
    for (const auto& v : open) doms.push_back(en.up_to(v.sort, size_bound));
    if (open.empty()) {
      if (check_condition(th, a.cond, m)) return true;
      continue;
    }
    if (for_each_binding(open, doms, m, [&](const Substitution& s) { return check_condition(th, a.cond, s); }))
      return true;
  }
  return false;
}

bool member(const RewriteTheory& th, const PatternPredicate& p, const Term& g, unsigned size_bound) {
  using K = PatternPredicate::Kind;
  switch (p.kind()) {
    case K::Bottom:
      return false;
    case K::Atom:
      return member(th, p.get_atom(), g, size_bound);
    case K::Or:
      for (const auto& k : p.kids())
        if (member(th, k, g, size_bound)) return true;
      return false;
    case K::And:
      for (const auto& k : p.kids())
        if (!member(th, k, g, size_bound)) return false;
      return true;
  }
  return false;
}

std::set<Term> denotation_bounded(const RewriteTheory& th, const PatternPredicate& p, unsigned bound) {
  using K = PatternPredicate::Kind;
  std::set<Term> out;
  switch (p.kind()) {
    case K::Bottom:
      return out;
    case K::Atom: {
      const Atom& a = p.get_atom();
      VarSet vs = vars(a);
      std::vector<Var> xs(vs.begin(), vs.end());
      GroundEnumerator en(th.sig);
      std::vector<std::vector<Term>> doms;
      for (const auto& v : xs) doms.push_back(en.up_to(v.sort, bound));
      for_each_binding(xs, doms, {}, [&](const Substitution& s) {
        Term t = simplify(th, th.sig.apply(a.term, s));
        if (t.size() <= bound && check_condition(th, a.cond, s)) out.insert(t);
        return false;
      });
      return out;
    }
    case K::Or:
      for (const auto& k : p.kids()) {
        auto d = denotation_bounded(th, k, bound);
        out.insert(d.begin(), d.end());
      }
      return out;
    case K::And: {
      bool first = true;
      for (const auto& k : p.kids()) {
        auto d = denotation_bounded(th, k, bound);
        if (first) {
          out = std::move(d);
          first = false;
          continue;
        }
        std::set<Term> keep;
        for (const auto& t : out)
          if (d.count(t)) keep.insert(t);
        out = std::move(keep);
      }
      return out;
    }
  }
  return out;
}

std::vector<Term> instances_bounded(const RewriteTheory& th, const Atom& a, unsigned bound, std::size_t cap) {
  VarSet vs = vars(a);
  std::vector<Var> xs(vs.begin(), vs.end());
  GroundEnumerator en(th.sig);
  std::vector<std::vector<Term>> doms;
  for (const auto& v : xs) doms.push_back(en.up_to(v.sort, bound));
  std::set<Term> out;
  std::size_t seen = 0;
  for_each_binding(xs, doms, {}, [&](const Substitution& s) {
    if (check_condition(th, a.cond, s)) out.insert(simplify(th, th.sig.apply(a.term, s)));
    return ++seen >= cap;
  });
  return {out.begin(), out.end()};
}

std::vector<Instance> instance_bindings(const RewriteTheory& th, const Atom& a, unsigned bound, unsigned max_size,
                                        std::size_t cap) {
  VarSet vs = vars(a);
  std::vector<Var> xs(vs.begin(), vs.end());
  GroundEnumerator en(th.sig);
  std::vector<std::vector<Term>> doms;
  for (const auto& v : xs) doms.push_back(en.up_to(v.sort, bound));
  std::vector<Instance> out;
  std::size_t seen = 0;
  for_each_binding(xs, doms, {}, [&](const Substitution& s) {
    if (check_condition(th, a.cond, s)) {
      Term t = simplify(th, th.sig.apply(a.term, s));
      if (t.size() <= max_size) out.push_back({s, std::move(t)});
    }
    return ++seen >= cap;
  });
  return out;
}

Disjuncts intersect(const RewriteTheory& th, const Atom& a, const Atom& b0, FreshGen& gen, const SolverConfig& cfg) {
  Substitution ren = fresh_rename(vars(b0), vars(a), gen);
  Atom b = apply(th.sig, b0, ren);
  Disjuncts out;
  UnifierSet us = unify_modulo(th.sig, a.term, b.term, gen, cfg.unify);
  out.complete = us.complete;
  for (const auto& s : us.unifiers) {
    Formula c = apply(th.sig, a.cond && b.cond, s);
    if (solve_sat(th, c, gen, cfg).result == Sat::Unsat) continue;
    out.atoms.push_back({th.sig.apply(a.term, s), c});
  }
  return out;
}

Disjuncts to_disjuncts(const RewriteTheory& th, const PatternPredicate& p, FreshGen& gen, const SolverConfig& cfg) {
  using K = PatternPredicate::Kind;
  Disjuncts out;
  switch (p.kind()) {
    case K::Bottom:
      return out;
    case K::Atom:
      out.atoms.push_back(p.get_atom());
      return out;
    case K::Or:
      for (const auto& k : p.kids()) {
        Disjuncts d = to_disjuncts(th, k, gen, cfg);
        out.complete = out.complete && d.complete;
        out.atoms.insert(out.atoms.end(), d.atoms.begin(), d.atoms.end());
      }
      return out;
    case K::And: {
      bool first = true;
      for (const auto& k : p.kids()) {
        Disjuncts d = to_disjuncts(th, k, gen, cfg);
        out.complete = out.complete && d.complete;
        if (first) {
          out.atoms = std::move(d.atoms);
          first = false;
          continue;
        }
        std::vector<Atom> next;
        for (const auto& x : out.atoms)
          for (const auto& y : d.atoms) {
            Disjuncts i = intersect(th, x, y, gen, cfg);
            out.complete = out.complete && i.complete;
            next.insert(next.end(), i.atoms.begin(), i.atoms.end());
          }
        out.atoms = std::move(next);
      }
      return out;
    }
  }
  return out;
}

bool subsumes(const RewriteTheory& th, const Atom& general0, const Atom& specific, FreshGen& gen,
              const SolverConfig& cfg) {
  Substitution ren = fresh_rename(vars(general0), vars(specific), gen);
  Atom general = apply(th.sig, general0, ren);
  for (const auto& m : match_modulo(th.sig, general.term, specific.term)) {
    if (check_valid_implication(th, specific.cond, apply(th.sig, general.cond, m), gen, cfg)) return true;
  }
  return false;
}

std::vector<Atom> to_standard_form(const RewriteTheory& th, const PatternPredicate& p, FreshGen& gen,
                                   const SolverConfig& cfg) {
  Disjuncts d = to_disjuncts(th, p, gen, cfg);
  if (!d.complete) throw Error("standard form: intersection used a truncated unifier set");
  auto ctors = th.state_constructors();
  std::vector<Atom> out;
  for (const auto& a : d.atoms) {
    if (a.term.is_var()) {
      if (!th.sig.leq(th.state_sort, a.term.var().sort))
        throw Error("pattern variable " + a.term.var().name + " is not of the state sort");
      for (OpId c : ctors) {
        const Operator& o = th.sig.op(c);
        std::vector<Term> args;
        for (SortId s : o.args) args.push_back(Term::variable(gen.fresh("x", s)));
        Term t = th.sig.make(c, std::move(args));
        out.push_back({t, apply(th.sig, a.cond, {{a.term.var(), t}})});
      }
      continue;
    }
    if (std::find(ctors.begin(), ctors.end(), a.term.op()) == ctors.end())
      throw Error("pattern is not headed by a state constructor");
    out.push_back(a);
  }
  return out;
}

}  // namespace rl
