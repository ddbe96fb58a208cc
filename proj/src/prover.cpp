#include "rl/prover.hpp"

#include <functional>
#include <sstream>

namespace rl {

const char* to_string(RuleKind k) {
  switch (k) {
    case RuleKind::Step:
      return "step";
    case RuleKind::Axiom:
      return "axiom";
    case RuleKind::Subsume:
      return "sub";
    case RuleKind::Vacuous:
      return "vacuous";
    case RuleKind::Open:
      return "open";
  }
  return "?";
}

const char* to_string(Verdict v) { return v == Verdict::Proved ? "PROVED" : "INCONCLUSIVE"; }

bool ProofNode::closed() const {
  if (rule == RuleKind::Open) return false;
  for (const auto& c : children)
    if (!c.closed()) return false;
  return true;
}

std::vector<std::pair<std::size_t, Substitution>> match_set(const RewriteTheory& th, const Term& u,
                                                             const std::vector<Atom>& targets) {
  std::vector<std::pair<std::size_t, Substitution>> out;
  VarSet keep = vars(u);
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (auto& b : match_modulo(th.sig, targets[i].term, u, keep)) out.emplace_back(i, std::move(b));
  return out;
}

namespace {

VarSet rule_vars(const Rule& r) {
  VarSet s = vars(r.lhs);
  collect_vars(r.rhs, s);
  collect_vars(r.cond, s);
  return s;
}

VarSet formula_vars(const ReachFormula& f) {
  VarSet s = vars(f.lhs);
  for (const auto& a : f.rhs) {
    VarSet v = vars(a);
    s.insert(v.begin(), v.end());
  }
  return s;
}

VarSet rhs_vars(const std::vector<Atom>& rhs) {
  VarSet s;
  for (const auto& a : rhs) {
    VarSet v = vars(a);
    s.insert(v.begin(), v.end());
  }
  return s;
}

VarSet intersection(const VarSet& a, const VarSet& b) {
  VarSet out;
  for (const auto& v : a)
    if (b.count(v)) out.insert(v);
  return out;
}

std::vector<Atom> apply_all(const Signature& sig, const std::vector<Atom>& xs, const Substitution& s) {
  std::vector<Atom> out;
  for (const auto& a : xs) out.push_back(apply(sig, a, s));
  return out;
}

struct Truncated : Error {
  using Error::Error;
};

// A key that is equal for goals that differ only in variable names, as
// long as the renaming does not reorder commutative arguments.
class KeyWriter {
 public:
  void term(const Term& t) {
    if (t.is_var()) {
      auto [it, fresh] = ids_.emplace(t.var(), ids_.size());
      os_ << 'v' << it->second << ':' << t.var().sort;
      return;
    }
    os_ << 'f' << t.op() << '(';
    for (const auto& a : t.args()) {
      term(a);
      os_ << ',';
    }
    os_ << ')';
  }
  void formula(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::True:
        os_ << 'T';
        return;
      case K::False:
        os_ << 'F';
        return;
      case K::Lit:
        os_ << (f.lit().positive ? "=(" : "!(");
        term(f.lit().lhs);
        os_ << ';';
        term(f.lit().rhs);
        os_ << ')';
        return;
      case K::And:
      case K::Or:
      case K::Not:
        os_ << (f.kind() == K::And ? "&(" : f.kind() == K::Or ? "|(" : "~(");
        for (const auto& k : f.kids()) {
          formula(k);
          os_ << ',';
        }
        os_ << ')';
        return;
    }
  }
  std::string str() const { return os_.str(); }
  std::vector<Var> order() const {
    std::vector<Var> out(ids_.size());
    for (const auto& [v, i] : ids_) out[i] = v;
    return out;
  }

 private:
  std::map<Var, std::size_t> ids_;
  std::ostringstream os_;
};

KeyWriter key_writer(const ReachFormula& g) {
  KeyWriter w;
  w.term(g.lhs.term);
  w.formula(g.lhs.cond);
  for (const auto& a : g.rhs) {
    w.term(a.term);
    w.formula(a.cond);
  }
  return w;
}

std::string goal_key(const ReachFormula& g, bool ax) { return key_writer(g).str() + (ax ? "/A" : "/C"); }

Substitution rename_subst(const Signature& sig, const Substitution& s, const Substitution& r) {
  Substitution out;
  for (const auto& [v, t] : s) {
    auto it = r.find(v);
    out[it == r.end() ? v : it->second.var()] = sig.apply(t, r);
  }
  return out;
}

// Moves a memoized subtree onto a goal with the same key.  Variables the
// subtree introduced itself are fresh and stay as they are.
void rename_tree(const Signature& sig, ProofNode& n, const Substitution& r) {
  n.goal.lhs = apply(sig, n.goal.lhs, r);
  for (auto& a : n.goal.rhs) a = apply(sig, a, r);
  n.subst = rename_subst(sig, n.subst, r);
  n.via_subst = rename_subst(sig, n.via_subst, r);
  for (auto& c : n.children) rename_tree(sig, c, r);
}

class Prover {
 public:
  Prover(const RewriteTheory& th, const std::vector<ReachFormula>& circ, std::vector<Atom> term,
         const ProverConfig& cfg)
      : th_(th), circ_(circ), term_(std::move(term)), cfg_(cfg) {
    VarSet all;
    for (const auto& f : circ_) {
      VarSet v = formula_vars(f);
      all.insert(v.begin(), v.end());
    }
    for (const auto& a : term_) {
      VarSet v = vars(a);
      all.insert(v.begin(), v.end());
    }
    for (const auto& r : th_.rules) {
      VarSet v = rule_vars(r);
      all.insert(v.begin(), v.end());
    }
    gen_ = fresh_after(all);
  }

  ProofNode prove(const ReachFormula& goal, bool ax, unsigned budget) {
    if (++nodes_ > cfg_.max_nodes) throw Truncated("proof node budget exhausted");
    ProofNode node;
    node.goal = goal;
    node.axioms_available = ax;
    const std::string key = goal_key(goal, ax);
    if (auto it = proven_.find(key); it != proven_.end()) {
      ProofNode copy = it->second;
      const auto from = key_writer(copy.goal).order(), to = key_writer(goal).order();
      Substitution r;
      for (std::size_t i = 0; i < from.size(); ++i) r[from[i]] = Term::variable(to[i]);
      const std::string via = copy.via;
      const Substitution via_subst = copy.via_subst;
      rename_tree(th_.sig, copy, r);
      copy.goal = goal;
      copy.via = via;
      copy.via_subst = via_subst;
      copy.memo = true;
      return copy;
    }
    if (auto it = failed_.find(key); it != failed_.end() && it->second >= budget) {
      node.note = "already failed with an equal or larger budget";
      return node;
    }

    const Atom& lhs = goal.lhs;
    if (sat(lhs.cond) == Sat::Unsat) {
      node.rule = RuleKind::Vacuous;
      return remember(key, std::move(node));
    }

    // phi' = phi /\ the negated matched rhs constraints.
    auto matches = match_set(th_, lhs.term, goal.rhs);
    std::vector<Formula> parts{lhs.cond};
    for (const auto& [i, beta] : matches) parts.push_back(Formula::negation(apply(th_.sig, goal.rhs[i].cond, beta)));
    const Formula phi2 = Formula::conj(parts);
    if (!matches.empty() && sat(phi2) == Sat::Unsat) {
      node.rule = RuleKind::Subsume;
      bool named = false;
      for (const auto& [i, beta] : matches) {
        Formula one = lhs.cond && Formula::negation(apply(th_.sig, goal.rhs[i].cond, beta));
        if (sat(one) == Sat::Unsat) {
          node.label = goal.rhs_name(i);
          node.subst = beta;
          named = true;
          break;
        }
      }
      if (!named) {
        for (const auto& [i, beta] : matches) node.label += (node.label.empty() ? "" : "+") + goal.rhs_name(i);
        node.note = "covered jointly by several disjuncts";
      }
      return remember(key, std::move(node));
    }

    if (budget == 0) {
      node.note = "depth budget exhausted";
      return fail(key, budget, std::move(node));
    }

    if (ax) {
      for (const auto& axiom : circ_) {
        if (auto done = try_axiom(goal, axiom, budget)) return remember(key, std::move(*done));
      }
    }

    return step(goal, phi2, budget, key, std::move(node));
  }

  std::size_t nodes() const { return nodes_; }
  std::vector<std::string> warnings;

 private:
  Sat sat(const Formula& f) { return solve_sat(th_, f, gen_, cfg_.solver).result; }

  ProofNode remember(const std::string& key, ProofNode n) {
    if (n.closed()) proven_.emplace(key, n);
    return n;
  }

  ProofNode fail(const std::string& key, unsigned budget, ProofNode n) {
    auto& b = failed_[key];
    b = std::max(b, budget);
    return n;
  }

  void truncated(const std::string& where) {
    if (cfg_.truncation == ProverConfig::Truncation::Abort)
      throw Truncated(where + ": unifier set truncated by the associative split bound");
    warnings.push_back(where + ": unifier set truncated; continuing with the unifiers found");
  }

  std::optional<ProofNode> try_axiom(const ReachFormula& goal, const ReachFormula& axiom0, unsigned budget) {
    Substitution ren = fresh_rename(formula_vars(axiom0), formula_vars(goal), gen_);
    Atom ul = apply(th_.sig, axiom0.lhs, ren);
    // Every variable of the axiom's constraint must be bound by matching.
    VarSet uv = vars(ul.term);
    for (const auto& v : vars(ul.cond))
      if (!uv.count(v)) return std::nullopt;
    std::vector<Atom> arhs = apply_all(th_.sig, axiom0.rhs, ren);
    const VarSet params = intersection(vars(goal.lhs), rhs_vars(goal.rhs));
    const VarSet goal_rhs = rhs_vars(goal.rhs);

    for (const auto& alpha : match_modulo(th_.sig, ul.term, goal.lhs.term)) {
      if (!check_valid_implication(th_, goal.lhs.cond, apply(th_.sig, ul.cond, alpha), gen_, cfg_.solver)) continue;
      ProofNode node;
      node.goal = goal;
      node.axioms_available = true;
      node.rule = RuleKind::Axiom;
      node.label = axiom0.name;
      node.subst = alpha;
      bool ok = true;
      for (const auto& v : arhs) {
        Atom child{th_.sig.apply(v.term, alpha), goal.lhs.cond && apply(th_.sig, v.cond, alpha)};
        if (intersection(vars(child), goal_rhs) != params) {
          ok = false;
          break;
        }
        ReachFormula cg = goal;
        cg.lhs = std::move(child);
        node.children.push_back(prove(cg, true, budget - 1));
        if (!node.children.back().closed()) {
          ok = false;
          break;
        }
      }
      if (ok) return node;
    }
    return std::nullopt;
  }

  ProofNode step(const ReachFormula& goal, const Formula& phi2, unsigned budget, const std::string& key,
                 ProofNode node) {
    const Term& u = goal.lhs.term;
    // Side condition: no instance of u | phi' is terminating.
    for (const auto& t0 : term_) {
      Substitution ren = fresh_rename(vars(t0), formula_vars(goal), gen_);
      Atom t = apply(th_.sig, t0, ren);
      UnifierSet us = unify_modulo(th_.sig, u, t.term, gen_, cfg_.solver.unify);
      if (!us.complete) truncated("side condition");
      for (const auto& g : us.unifiers) {
        Formula f = apply(th_.sig, phi2 && t.cond, g);
        Sat r = sat(f);
        if (r != Sat::Unsat) {
          node.note = std::string("step blocked: goal may contain terminating states (") + to_string(r) + ")";
          return fail(key, budget, std::move(node));
        }
      }
    }

    bool complete = true;
    auto kids = unify_set(th_, {u, phi2}, gen_, cfg_.solver, complete);
    if (!complete) truncated("step");

    const VarSet params = intersection(vars(goal.lhs), rhs_vars(goal.rhs));
    node.rule = RuleKind::Step;
    for (auto& k : kids) {
      ReachFormula cg = goal;
      cg.lhs = k.child;
      cg.rhs = apply_all(th_.sig, goal.rhs, k.alpha);
      VarSet new_rhs = rhs_vars(cg.rhs);
      VarSet before;
      for (const auto& v : params) {
        VarSet img = vars(th_.sig.apply(Term::variable(v), k.alpha));
        before.insert(img.begin(), img.end());
      }
      if (intersection(before, new_rhs) != intersection(vars(cg.lhs), new_rhs)) {
        node.rule = RuleKind::Open;
        node.children.clear();
        node.note = "step blocked: parameter preservation fails for rule " + th_.rules[k.rule].label;
        return fail(key, budget, std::move(node));
      }
      ProofNode child = prove(cg, true, budget - 1);
      child.via = th_.rules[k.rule].label;
      child.via_subst = k.alpha;
      const bool open = !child.closed();
      node.children.push_back(std::move(child));
      // One open child already fails the Step; skip the rest.
      if (open) {
        node.note = "stopped after the first open child";
        break;
      }
    }
    if (!node.closed()) return fail(key, budget, std::move(node));
    return remember(key, std::move(node));
  }

  const RewriteTheory& th_;
  const std::vector<ReachFormula>& circ_;
  std::vector<Atom> term_;
  const ProverConfig& cfg_;
  FreshGen gen_;
  std::map<std::string, ProofNode> proven_;
  std::map<std::string, unsigned> failed_;
  std::size_t nodes_ = 0;
};

}  // namespace

std::vector<RuleUnifier> unify_set(const RewriteTheory& th, const Atom& goal, FreshGen& gen, const SolverConfig& cfg,
                                   bool& complete) {
  std::vector<RuleUnifier> out;
  VarSet gv = vars(goal);
  for (std::size_t j = 0; j < th.rules.size(); ++j) {
    const Rule& r0 = th.rules[j];
    Substitution ren = fresh_rename(rule_vars(r0), gv, gen);
    Term l = th.sig.apply(r0.lhs, ren), r = th.sig.apply(r0.rhs, ren);
    Formula c = apply(th.sig, r0.cond, ren);
    UnifierSet us = unify_modulo(th.sig, goal.term, l, gen, cfg.unify);
    complete = complete && us.complete;
    for (const auto& a : us.unifiers) {
      Formula f = apply(th.sig, goal.cond && c, a);
      if (solve_sat(th, f, gen, cfg).result == Sat::Unsat) continue;
      out.push_back({j, a, {th.sig.apply(r, a), f}});
    }
  }
  return out;
}

ProofResult prove_set(const RewriteTheory& th0, const std::vector<ReachFormula>& circ,
                      const PatternPredicate& terminating, const ProverConfig& cfg) {
  ProofResult res;
  if (cfg.max_depth < 1) throw Error("prover: max_depth must be at least 1");
  for (const auto& f : circ)
    if (auto v = quantification_violation(f))
      throw Error("formula " + f.name + ": variable " + v->name + " is neither in its disjunct nor in the lhs");
  const RewriteTheory th = hat_transform(th0);
  FreshGen tgen = fresh_after(vars(terminating));
  Disjuncts t = to_disjuncts(th, terminating, tgen, cfg.solver);
  if (!t.complete) res.warnings.push_back("terminating predicate: intersection used a truncated unifier set");
  Prover p(th, circ, t.atoms, cfg);
  bool all = true;
  try {
    for (const auto& f : circ) {
      ReachFormula g = f;
      name_disjuncts(g);
      res.trees.push_back(p.prove(g, false, cfg.max_depth));
      all = all && res.trees.back().closed();
    }
  } catch (const Truncated& e) {
    res.aborted = e.what();
    all = false;
  }
  res.nodes = p.nodes();
  res.warnings.insert(res.warnings.end(), p.warnings.begin(), p.warnings.end());
  res.verdict = all && res.aborted.empty() ? Verdict::Proved : Verdict::Inconclusive;
  return res;
}

std::vector<std::vector<std::string>> rule_paths(const ProofNode& root) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> cur;
  std::function<void(const ProofNode&)> walk = [&](const ProofNode& n) {
    std::size_t mark = cur.size();
    if (!n.via.empty()) cur.push_back("step(" + n.via + ")");
    switch (n.rule) {
      case RuleKind::Axiom:
        cur.push_back("axiom(" + n.label + ")");
        break;
      case RuleKind::Subsume:
        cur.push_back("sub(" + n.label + ")");
        break;
      case RuleKind::Vacuous:
        cur.push_back("vacuous");
        break;
      case RuleKind::Open:
        cur.push_back("open");
        break;
      case RuleKind::Step:
        break;
    }
    if (n.children.empty()) {
      out.push_back(cur);
    } else {
      for (const auto& c : n.children) walk(c);
    }
    cur.resize(mark);
  };
  walk(root);
  return out;
}

}  // namespace rl
