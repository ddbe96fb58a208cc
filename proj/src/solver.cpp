#include "rl/solver.hpp"

#include <algorithm>

#include "rl/enumerate.hpp"

namespace rl {

const char* to_string(Sat s) {
  switch (s) {
    case Sat::Sat:
      return "SAT";
    case Sat::Unsat:
      return "UNSAT";
    case Sat::Unknown:
      return "UNKNOWN";
  }
  return "?";
}

FreshGen fresh_after(const VarSet& xs) {
  std::uint64_t top = 0;
  for (const auto& v : xs) {
    auto p = v.name.rfind('#');
    if (p == std::string::npos) continue;
    try {
      top = std::max<std::uint64_t>(top, std::stoull(v.name.substr(p + 1)));
    } catch (const std::exception&) {
    }
  }
  return FreshGen(top + 1);
}

namespace {

Literal orient(Literal l) {
  if (l.rhs < l.lhs) std::swap(l.lhs, l.rhs);
  return l;
}

class Solver {
 public:
  Solver(const RewriteTheory& th, FreshGen& gen, const SolverConfig& cfg)
      : th_(th), sig_(th.sig), gen_(gen), cfg_(cfg), en_(th.sig) {}

  SolverVerdict formula(const Formula& f) {
    Dnf d = to_dnf(f);
    bool unknown = false;
    for (const auto& c : d) {
      SolverVerdict v = clause(c, cfg_.narrow_depth);
      if (v.result == Sat::Sat) {
        if (v.witness) {
          VarSet fv = vars(f);
          Substitution w = ground_out(*v.witness, fv);
          if (check_condition(th_, f, w)) return {Sat::Sat, w};
        }
        unknown = true;
      } else if (v.result == Sat::Unknown) {
        unknown = true;
      }
    }
    return {unknown ? Sat::Unknown : Sat::Unsat, std::nullopt};
  }

 private:
  bool ctor(const Term& t) const { return sig_.is_constructor_term(t); }

  // Restricts a witness to `keep`, grounding anything left symbolic.
  Substitution ground_out(const Substitution& w, const VarSet& keep) {
    Substitution out;
    for (const auto& v : keep) {
      Term t = w.count(v) ? w.at(v) : Term::variable(v);
      if (!t.ground()) {
        Substitution fill;
        for (const auto& x : vars(t))
          if (auto g = en_.smallest(x.sort)) fill.emplace(x, *g);
        t = sig_.apply(t, fill);
      }
      out.emplace(v, t);
    }
    return out;
  }

  static SolverVerdict sat_with(Substitution w) { return {Sat::Sat, std::move(w)}; }

  // Simplifies literal sides and drops decided literals.  Returns false
  // when some literal is certainly false.
  bool prepare(Clause& c) {
    Clause out;
    for (auto l : c) {
      l.lhs = simplify(th_, l.lhs);
      l.rhs = simplify(th_, l.rhs);
      if (l.lhs == l.rhs) {
        if (l.positive) continue;
        return false;
      }
      bool cl = ctor(l.lhs), cr = ctor(l.rhs);
      if (cl && cr && l.lhs.ground() && l.rhs.ground()) {
        if (l.positive) return false;
        continue;
      }
      // A ground defined term is in canonical form here, so it differs from
      // every ground constructor term.
      if (l.lhs.ground() && l.rhs.ground()) {
        if (l.positive) return false;
        continue;
      }
      out.push_back(orient(l));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (const auto& l : out)
      if (l.positive && std::binary_search(out.begin(), out.end(), Literal{l.lhs, l.rhs, false})) return false;
    c = std::move(out);
    return true;
  }

  Clause apply_clause(const Clause& c, const Substitution& s) {
    Clause out;
    for (const auto& l : c) out.push_back({sig_.apply(l.lhs, s), sig_.apply(l.rhs, s), l.positive});
    return out;
  }

  // Combines verdicts of alternative branches.
  struct Acc {
    bool unknown = false;
    std::optional<SolverVerdict> sat;
    void add(SolverVerdict v, const Substitution& via, const Signature& sig) {
      if (sat) return;
      if (v.result == Sat::Sat) {
        Substitution w = v.witness ? compose(sig, via, *v.witness) : via;
        sat = SolverVerdict{Sat::Sat, std::move(w)};
      } else if (v.result == Sat::Unknown) {
        unknown = true;
      }
    }
    SolverVerdict done() const {
      if (sat) return *sat;
      return {unknown ? Sat::Unknown : Sat::Unsat, std::nullopt};
    }
  };

  SolverVerdict clause(Clause c, unsigned narrow) {
    if (!prepare(c)) return {Sat::Unsat, std::nullopt};
    if (c.empty()) return sat_with({});

    // Constructor equalities: solved form by unification.
    std::vector<std::pair<Term, Term>> ceqs;
    Clause rest;
    for (const auto& l : c) {
      if (l.positive && ctor(l.lhs) && ctor(l.rhs))
        ceqs.emplace_back(l.lhs, l.rhs);
      else
        rest.push_back(l);
    }
    if (!ceqs.empty()) {
      UnifierSet us = unify_system(sig_, ceqs, gen_, cfg_.unify);
      Acc acc;
      acc.unknown = !us.complete;
      for (const auto& s : us.unifiers) {
        acc.add(clause(apply_clause(rest, s), narrow), s, sig_);
        if (acc.sat) break;
      }
      return acc.done();
    }

    // Narrowing on the first positive literal f(u) = v with f defined and
    // u, v constructor terms.
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Literal& l = c[k];
      if (!l.positive) continue;
      for (int side = 0; side < 2; ++side) {
        const Term& d = side ? l.rhs : l.lhs;
        const Term& v = side ? l.lhs : l.rhs;
        if (d.is_var() || sig_.op(d.op()).ctor || !ctor(v)) continue;
        bool args_ctor = true;
        for (const auto& a : d.args()) args_ctor = args_ctor && ctor(a);
        if (!args_ctor) continue;
        if (narrow == 0) return ground(c);
        Clause others;
        for (std::size_t j = 0; j < c.size(); ++j)
          if (j != k) others.push_back(c[j]);
        return narrow_literal(d, v, others, narrow);
      }
    }
    return ground(c);
  }

  SolverVerdict narrow_literal(const Term& d, const Term& v, const Clause& others, unsigned narrow) {
    Acc acc;
    for (const auto& eq : th_.equations) {
      if (eq.lhs.is_var() || eq.lhs.op() != d.op()) continue;
      VarSet ev = vars(eq.lhs);
      collect_vars(eq.rhs, ev);
      collect_vars(eq.cond, ev);
      VarSet avoid = vars(d);
      collect_vars(v, avoid);
      for (const auto& l : others) {
        collect_vars(l.lhs, avoid);
        collect_vars(l.rhs, avoid);
      }
      Substitution ren = fresh_rename(ev, avoid, gen_);
      Term lhs = sig_.apply(eq.lhs, ren), rhs = sig_.apply(eq.rhs, ren);
      Formula cond = apply(sig_, eq.cond, ren);
      UnifierSet us = unify_modulo(sig_, d, lhs, gen_, cfg_.unify);
      if (!us.complete) acc.unknown = true;
      for (const auto& s : us.unifiers) {
        Dnf cd = to_dnf(apply(sig_, cond, s));
        for (const auto& cc : cd) {
          Clause next = apply_clause(others, s);
          next.push_back({sig_.apply(rhs, s), sig_.apply(v, s), true});
          next.insert(next.end(), cc.begin(), cc.end());
          acc.add(clause(std::move(next), narrow - 1), s, sig_);
          if (acc.sat) return acc.done();
        }
      }
    }
    // No equation applies: f(u) stays a canonical defined term, which no
    // constructor term equals.
    return acc.done();
  }

  SolverVerdict ground(const Clause& c) {
    if (!cfg_.witnesses) {
      VarSet vs;
      for (const auto& l : c) {
        collect_vars(l.lhs, vs);
        collect_vars(l.rhs, vs);
      }
      double space = 1;
      for (const auto& v : vs) {
        if (!en_.finite(v.sort)) return {Sat::Unknown, std::nullopt};
        space *= static_cast<double>(en_.all(v.sort).size());
      }
      // Too large to finish, so no Unsat could come out of it.
      if (space > static_cast<double>(cfg_.max_candidates)) return {Sat::Unknown, std::nullopt};
    }
    return ground_oracle_sat(th_, c, cfg_.depth, {}, cfg_.max_candidates);
  }

  const RewriteTheory& th_;
  const Signature& sig_;
  FreshGen& gen_;
  const SolverConfig& cfg_;
  GroundEnumerator en_;
};

}  // namespace

SolverVerdict ground_oracle_sat(const RewriteTheory& th, const Clause& conj, unsigned size_bound,
                                const EnvDomains& domains, std::size_t max_candidates) {
  GroundEnumerator en(th.sig);
  VarSet vs;
  for (const auto& l : conj) {
    collect_vars(l.lhs, vs);
    collect_vars(l.rhs, vs);
  }
  Formula f = from_clause(conj);
  std::vector<Var> order(vs.begin(), vs.end());
  std::vector<std::vector<Term>> doms;
  bool exhaustive = true;
  for (const auto& v : order) {
    std::vector<Term> d;
    bool from_env = false;
    for (const auto& [s, ts] : domains)
      if (th.sig.leq(s, v.sort)) {
        d.insert(d.end(), ts.begin(), ts.end());
        from_env = true;
      }
    if (!from_env) {
      if (en.finite(v.sort)) {
        d = en.all(v.sort);
      } else {
        d = en.up_to(v.sort, size_bound);
        exhaustive = false;
      }
    } else {
      exhaustive = false;
    }
    if (d.empty()) return {exhaustive ? Sat::Unsat : Sat::Unknown, std::nullopt};
    doms.push_back(std::move(d));
  }
  std::vector<std::size_t> idx(order.size(), 0);
  std::size_t tried = 0;
  while (true) {
    if (++tried > max_candidates) return {Sat::Unknown, std::nullopt};
    Substitution s;
    for (std::size_t k = 0; k < order.size(); ++k) s.emplace(order[k], doms[k][idx[k]]);
    if (check_condition(th, f, s)) return {Sat::Sat, s};
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == doms[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return {exhaustive ? Sat::Unsat : Sat::Unknown, std::nullopt};
}

SolverVerdict solve_sat(const RewriteTheory& th, const Formula& f, FreshGen& gen, const SolverConfig& cfg) {
  Solver s(th, gen, cfg);
  return s.formula(f);
}

SolverVerdict solve_sat(const RewriteTheory& th, const Formula& f, const SolverConfig& cfg) {
  FreshGen gen = fresh_after(vars(f));
  return solve_sat(th, f, gen, cfg);
}

bool check_valid_implication(const RewriteTheory& th, const Formula& phi, const Formula& psi, FreshGen& gen,
                             const SolverConfig& cfg) {
  return solve_sat(th, phi && Formula::negation(psi), gen, cfg).result == Sat::Unsat;
}

bool check_valid_implication(const RewriteTheory& th, const Formula& phi, const Formula& psi,
                             const SolverConfig& cfg) {
  FreshGen gen = fresh_after(vars(phi && psi));
  return check_valid_implication(th, phi, psi, gen, cfg);
}

}  // namespace rl
