#include "rl/rewrite.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

namespace rl {

const Rule& RewriteTheory::rule(const std::string& label) const {
  for (const auto& r : rules)
    if (r.label == label) return r;
  throw Error("unknown rule '" + label + "'");
}

std::vector<OpId> RewriteTheory::state_constructors() const {
  std::vector<OpId> out;
  for (OpId i = 0; i < static_cast<OpId>(sig.op_count()); ++i) {
    const Operator& o = sig.op(i);
    if (o.ctor && o.result == state_sort) out.push_back(i);
  }
  return out;
}

namespace {

class Simplifier {
 public:
  Simplifier(const RewriteTheory& th, const SimplifyConfig& cfg) : th_(th), cfg_(cfg) {}

  Term run(const Term& t) {
    if (t.is_var() || th_.sig.is_constructor_term(t)) return t;
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const auto& a : t.args()) args.push_back(run(a));
    Term u = rebuild(t.op(), std::move(args));
    return root(u);
  }

  std::optional<bool> literal(const Literal& l) {
    Term a = run(l.lhs), b = run(l.rhs);
    if (a == b) return l.positive;
    if (a.ground() && b.ground()) return !l.positive;
    return std::nullopt;
  }

  std::optional<bool> eval(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::True:
        return true;
      case K::False:
        return false;
      case K::Lit:
        return literal(f.lit());
      case K::Not: {
        auto v = eval(f.kids().front());
        if (!v) return std::nullopt;
        return !*v;
      }
      case K::And:
      case K::Or: {
        bool is_and = f.kind() == K::And;
        bool unknown = false;
        for (const auto& k : f.kids()) {
          auto v = eval(k);
          if (!v)
            unknown = true;
          else if (*v != is_and)
            return !is_and;
        }
        if (unknown) return std::nullopt;
        return is_and;
      }
    }
    return std::nullopt;
  }

 private:
  Term rebuild(OpId op, std::vector<Term> args) const {
    const Operator& o = th_.sig.op(op);
    if (o.assoc && args.size() > 2) {
      Term acc = args.back();
      for (std::size_t i = args.size() - 1; i-- > 0;) acc = th_.sig.make(op, {args[i], acc});
      return acc;
    }
    return th_.sig.make(op, std::move(args));
  }

  // Applies equations at the root of a term whose arguments are in normal form.
  Term root(const Term& t) {
    if (t.is_var()) return t;
    for (const auto& eq : th_.equations) {
      if (eq.lhs.is_var() || eq.lhs.op() != t.op()) continue;
      for (const auto& m : match_modulo(th_.sig, eq.lhs, t)) {
        if (!eq.cond.is_true()) {
          auto ok = eval(apply(th_.sig, eq.cond, m));
          if (!ok || !*ok) continue;
        }
        if (++steps_ > cfg_.max_steps)
          throw Error("simplification exceeded " + std::to_string(cfg_.max_steps) +
                      " steps; the equations may not terminate");
        return run(th_.sig.apply(eq.rhs, m));
      }
    }
    return t;
  }

  const RewriteTheory& th_;
  const SimplifyConfig& cfg_;
  std::size_t steps_ = 0;
};

void conjuncts(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == Formula::Kind::And)
    for (const auto& k : f.kids()) conjuncts(k, out);
  else
    out.push_back(f);
}

}  // namespace

Term simplify(const RewriteTheory& th, const Term& t, const SimplifyConfig& cfg) {
  Simplifier s(th, cfg);
  return s.run(t);
}

bool check_condition(const RewriteTheory& th, const Formula& f, const Substitution& s) {
  SimplifyConfig cfg;
  Simplifier sim(th, cfg);
  auto v = sim.eval(s.empty() ? f : apply(th.sig, f, s));
  return v.value_or(false);
}

std::vector<Successor> ground_step(const RewriteTheory& th, const Term& t, const EnvDomains& env) {
  std::vector<Successor> out;
  std::set<std::pair<std::string, Term>> seen;
  for (const auto& r : th.rules) {
    if (r.lhs.is_var() || t.is_var() || r.lhs.op() != t.op()) continue;
    std::vector<Formula> conds;
    conjuncts(r.cond, conds);
    // Variables defined by a positive literal `x = e` are solved, not drawn.
    VarSet defined;
    for (const auto& c : conds)
      if (c.kind() == Formula::Kind::Lit && c.lit().positive) {
        if (c.lit().lhs.is_var()) defined.insert(c.lit().lhs.var());
        if (c.lit().rhs.is_var()) defined.insert(c.lit().rhs.var());
      }
    auto solve = [&](Substitution& b) {
      for (bool changed = true; changed;) {
        changed = false;
        for (const auto& c : conds) {
          if (c.kind() != Formula::Kind::Lit || !c.lit().positive) continue;
          for (int side = 0; side < 2; ++side) {
            const Term& x = side ? c.lit().rhs : c.lit().lhs;
            const Term& e = side ? c.lit().lhs : c.lit().rhs;
            if (!x.is_var() || b.count(x.var())) continue;
            Term v = th.sig.apply(e, b);
            if (!v.ground()) continue;
            v = simplify(th, v);
            if (!th.sig.leq(v.sort(), x.var().sort)) return false;
            b.emplace(x.var(), v);
            changed = true;
          }
        }
      }
      return true;
    };
    for (const Substitution& b : match_modulo(th.sig, r.lhs, t)) {
      VarSet open = vars(r.rhs);
      collect_vars(r.cond, open);
      std::vector<Var> todo;
      for (const auto& v : open)
        if (!b.count(v) && !defined.count(v)) todo.push_back(v);
      std::vector<std::vector<Term>> doms;
      for (const auto& v : todo) {
        std::vector<Term> d;
        for (const auto& [s, ts] : env)
          if (th.sig.leq(s, v.sort)) d.insert(d.end(), ts.begin(), ts.end());
        if (d.empty())
          throw Error("rule '" + r.label + "': no environment domain for sort " + th.sig.sorts().name(v.sort) +
                      " (variable " + v.name + ")");
        doms.push_back(std::move(d));
      }
      std::vector<std::size_t> idx(todo.size(), 0);
      while (true) {
        Substitution full = b;
        for (std::size_t k = 0; k < todo.size(); ++k) full[todo[k]] = doms[k][idx[k]];
        if (solve(full)) {
          for (const auto& v : open)
            if (!full.count(v))
              throw Error("rule '" + r.label + "': cannot solve variable " + v.name + " from the condition");
          if (check_condition(th, r.cond, full)) {
            Term next = simplify(th, th.sig.apply(r.rhs, full));
            if (seen.emplace(r.label, next).second) out.push_back({r.label, full, next});
          }
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == doms[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
      }
    }
  }
  return out;
}

bool LintReport::ok() const { return errors() == 0; }

std::size_t LintReport::errors() const {
  return static_cast<std::size_t>(std::count_if(issues.begin(), issues.end(), [](const LintIssue& i) {
    return i.severity == LintIssue::Severity::Error;
  }));
}

std::string LintReport::text() const {
  std::ostringstream os;
  for (const auto& i : issues)
    os << (i.severity == LintIssue::Severity::Error ? "error: " : "warning: ") << i.message << "\n";
  return os.str();
}

std::vector<SortId> empty_sorts(const Signature& sig) {
  const auto n = static_cast<SortId>(sig.sorts().size());
  std::vector<char> inhabited(static_cast<std::size_t>(n), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (OpId i = 0; i < static_cast<OpId>(sig.op_count()); ++i) {
      const Operator& o = sig.op(i);
      if (!o.ctor) continue;
      bool all = true;
      for (SortId a : o.args) {
        bool any = false;
        for (SortId s = 0; s < n && !any; ++s) any = inhabited[static_cast<std::size_t>(s)] && sig.leq(s, a);
        all = all && any;
      }
      if (!all) continue;
      for (SortId s = 0; s < n; ++s)
        if (sig.leq(o.result, s) && !inhabited[static_cast<std::size_t>(s)]) {
          inhabited[static_cast<std::size_t>(s)] = 1;
          changed = true;
        }
    }
  }
  std::vector<SortId> out;
  for (SortId s = 0; s < n; ++s)
    if (!inhabited[static_cast<std::size_t>(s)]) out.push_back(s);
  return out;
}

namespace {

bool linear(const Term& t, VarSet& seen) {
  if (t.is_var()) return seen.insert(t.var()).second;
  for (const auto& a : t.args())
    if (!linear(a, seen)) return false;
  return true;
}

std::string first_defined(const Signature& sig, const Term& t) {
  if (t.is_var()) return {};
  if (!sig.op(t.op()).ctor) return sig.op(t.op()).name;
  for (const auto& a : t.args())
    if (auto s = first_defined(sig, a); !s.empty()) return s;
  return {};
}

}  // namespace

LintReport validate_theory(const RewriteTheory& th) {
  LintReport rep;
  auto err = [&](std::string m) { rep.issues.push_back({LintIssue::Severity::Error, std::move(m)}); };
  auto warn = [&](std::string m) { rep.issues.push_back({LintIssue::Severity::Warning, std::move(m)}); };
  const Signature& sig = th.sig;

  for (SortId s : empty_sorts(sig)) err("sort " + sig.sorts().name(s) + " has no ground constructor term");

  for (const auto& ax : th.axioms) {
    VarSet l, r;
    bool lin = linear(ax.lhs, l) && linear(ax.rhs, r);
    VarSet rl = vars(ax.rhs), ll = vars(ax.lhs);
    if (!lin) err("structural axiom is not linear");
    if (ll != rl) err("structural axiom is not regular");
    if (lin && ll == rl) err("explicit structural axioms are not supported; declare assoc/comm/id attributes");
  }

  if (th.state_sort < 0) {
    err("no State sort declared");
  } else {
    for (OpId i = 0; i < static_cast<OpId>(sig.op_count()); ++i) {
      const Operator& o = sig.op(i);
      if (!o.ctor) continue;
      for (SortId a : o.args)
        if (sig.leq(a, th.state_sort) || sig.leq(th.state_sort, a))
          err("constructor '" + o.name + "' takes a State argument; the theory is not topmost");
    }
  }

  for (const auto& e : th.equations) {
    if (e.lhs.is_var()) {
      err("equation with a variable left-hand side");
      continue;
    }
    if (sig.op(e.lhs.op()).ctor)
      err("equation for constructor '" + sig.op(e.lhs.op()).name + "'; constructors must be free modulo axioms");
    VarSet lv = vars(e.lhs);
    VarSet extra = vars(e.rhs);
    collect_vars(e.cond, extra);
    for (const auto& v : extra)
      if (!lv.count(v)) err("equation for '" + sig.op(e.lhs.op()).name + "': variable " + v.name + " not bound by the left-hand side");
  }

  for (const auto& r : th.rules) {
    if (auto d = first_defined(sig, r.lhs); !d.empty())
      err("rule '" + r.label + "': left-hand side contains defined symbol '" + d + "'");
    if (th.state_sort >= 0) {
      if (!sig.leq(r.lhs.sort(), th.state_sort)) err("rule '" + r.label + "': left-hand side is not a State term");
      if (!sig.leq(r.rhs.sort(), th.state_sort)) err("rule '" + r.label + "': right-hand side is not a State term");
    }
    if (r.lhs.is_var()) err("rule '" + r.label + "': left-hand side is a variable");
    VarSet lv = vars(r.lhs);
    VarSet open;
    for (const auto& v : vars(r.rhs))
      if (!lv.count(v)) open.insert(v);
    for (const auto& v : vars(r.cond))
      if (!lv.count(v)) open.insert(v);
    for (const auto& v : open)
      warn("rule '" + r.label + "': variable " + v.name + " is not bound by the left-hand side (open system)");
  }
  warn("confluence, termination, coherence and sufficient completeness are trusted, not checked");
  return rep;
}

}  // namespace rl
