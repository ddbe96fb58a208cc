#include "rl/transforms.hpp"

#include <algorithm>
#include <functional>

namespace rl {

namespace {

VarSet rule_vars(const Rule& r) {
  VarSet s = vars(r.lhs);
  collect_vars(r.rhs, s);
  collect_vars(r.cond, s);
  return s;
}

}  // namespace

RewriteTheory hat_transform(const RewriteTheory& th) {
  RewriteTheory out = th;
  for (auto& r : out.rules) {
    if (th.sig.is_constructor_term(r.rhs)) continue;
    VarSet avoid = rule_vars(r);
    FreshGen gen = fresh_after(avoid);
    std::vector<Formula> defs;
    std::function<Term(const Term&)> abstract = [&](const Term& t) -> Term {
      if (t.is_var()) return t;
      if (!th.sig.op(t.op()).ctor) {
        Var x = gen.fresh("x", t.sort());
        defs.push_back(Formula::eq(Term::variable(x), t));
        return Term::variable(x);
      }
      std::vector<Term> args;
      for (const auto& a : t.args()) args.push_back(abstract(a));
      return th.sig.make(t.op(), std::move(args));
    };
    r.rhs = abstract(r.rhs);
    defs.insert(defs.begin(), r.cond);
    r.cond = Formula::conj(std::move(defs));
  }
  return out;
}

StoppedTheory stop_transform(const RewriteTheory& th) {
  if (th.stopped()) throw Error("theory '" + th.name + "' is already stopped");
  StoppedTheory out{th, {}};
  RewriteTheory& st = out.theory;
  st.name = th.name + "-stop";
  auto ctors = th.state_constructors();
  if (ctors.empty()) throw Error("theory '" + th.name + "' has no state constructor");
  std::size_t twin_no = 0;
  for (OpId c : ctors) {
    const Operator& o = th.sig.op(c);
    std::string holes;
    for (std::size_t i = 0; i < o.arity(); ++i) holes += i ? ",_" : "_";
    std::string name;
    do {
      name = "[" + holes + "]" + (twin_no ? std::to_string(twin_no + 1) : "");
      ++twin_no;
    } while (st.sig.find_op(name));
    if (o.arity() == 0) name = "[" + o.name + "]";
    Operator twin;
    twin.name = name;
    twin.args = o.args;
    twin.result = o.result;
    twin.ctor = true;
    OpId b = st.sig.add_op(twin);
    st.bracket_of[b] = c;

    std::vector<Term> xs;
    for (std::size_t i = 0; i < o.arity(); ++i)
      xs.push_back(Term::variable(o.arity() == 1 ? "t" : "t" + std::to_string(i + 1), o.args[i]));
    std::string label = "stop";
    for (int k = 2; std::any_of(st.rules.begin(), st.rules.end(), [&](const Rule& r) { return r.label == label; });
         ++k)
      label = "stop" + std::to_string(k);
    st.rules.push_back({label, st.sig.make(c, xs), st.sig.make(b, xs), Formula::truth()});
  }
  out.terminating = bracket_predicate(st);
  return out;
}

PatternPredicate bracket_predicate(const RewriteTheory& st) {
  std::vector<PatternPredicate> ds;
  for (const auto& [b, c] : st.bracket_of) {
    const Operator& o = st.sig.op(b);
    std::vector<Term> xs;
    for (std::size_t i = 0; i < o.arity(); ++i)
      xs.push_back(Term::variable(o.arity() == 1 ? "t" : "t" + std::to_string(i + 1), o.args[i]));
    ds.push_back(PatternPredicate::atom(st.sig.make(b, xs)));
  }
  return PatternPredicate::disj(std::move(ds));
}

std::vector<Atom> bracket_lift(const RewriteTheory& st, const std::vector<Atom>& atoms) {
  std::map<OpId, OpId> twin;
  for (const auto& [b, c] : st.bracket_of) twin[c] = b;
  std::vector<Atom> out;
  for (const auto& a : atoms) {
    if (a.term.is_var() || !twin.count(a.term.op()))
      throw Error("bracket lift: disjunct is not headed by an original state constructor");
    std::vector<Term> args(a.term.args().begin(), a.term.args().end());
    out.push_back({st.sig.make(twin.at(a.term.op()), std::move(args)), a.cond});
  }
  return out;
}

Substitution prime_rename(const VarSet& xs, const VarSet& avoid) {
  std::set<std::string> taken;
  for (const auto& v : avoid) taken.insert(v.name);
  for (const auto& v : xs) taken.insert(v.name);
  Substitution s;
  for (const auto& v : xs) {
    std::string n = v.name + "'";
    while (taken.count(n)) n += "'";
    taken.insert(n);
    s.emplace(v, Term::variable(n, v.sort));
  }
  return s;
}

bool InvariantGoals::inclusion_holds() const {
  return std::all_of(inclusion.begin(), inclusion.end(), [](const auto& o) { return o.by.has_value(); });
}

InvariantGoals invariant_to_goals(const RewriteTheory& th, const PatternPredicate& s0_in, const PatternPredicate& p_in,
                                  const SolverConfig& cfg) {
  InvariantGoals g;
  VarSet pv = vars(p_in);
  VarSet sv = vars(s0_in);
  VarSet all = pv;
  all.insert(sv.begin(), sv.end());
  FreshGen gen = fresh_after(all);
  g.p = to_standard_form(th, p_in, gen, cfg);
  // S0 is renamed apart from P so the two sets of variables are disjoint.
  VarSet clash;
  for (const auto& v : sv)
    if (pv.count(v)) clash.insert(v);
  PatternPredicate s0 = clash.empty() ? s0_in : apply(th.sig, s0_in, prime_rename(clash, all));
  g.s0 = to_standard_form(th, s0, gen, cfg);

  for (std::size_t i = 0; i < g.s0.size(); ++i) {
    SubsumptionObligation o{i, g.s0[i], std::nullopt};
    for (std::size_t k = 0; k < g.p.size() && !o.by; ++k)
      if (subsumes(th, g.p[k], g.s0[i], gen, cfg)) o.by = k;
    g.inclusion.push_back(std::move(o));
  }

  g.stopped = stop_transform(th);
  std::vector<Atom> target = bracket_lift(g.stopped.theory, g.p);
  VarSet p_vars;
  for (const auto& a : g.p) {
    VarSet v = vars(a);
    p_vars.insert(v.begin(), v.end());
  }
  g.sigma = prime_rename(p_vars, p_vars);
  for (std::size_t i = 0; i < g.p.size(); ++i) {
    ReachFormula f;
    f.name = "G" + std::to_string(i + 1);
    f.lhs = apply(th.sig, g.p[i], g.sigma);
    f.rhs = target;
    for (std::size_t k = 0; k < target.size(); ++k) f.rhs_names.push_back("P" + std::to_string(k + 1));
    g.circularities.push_back(std::move(f));
  }
  return g;
}

}  // namespace rl
