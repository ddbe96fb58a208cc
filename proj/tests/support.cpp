#include "support.hpp"

#include "rl/enumerate.hpp"
#include "rl/eq.hpp"

namespace rltest {

using namespace rl;

RewriteTheory corpus_theory(const std::string& example) {
  ExampleCase c = load_example(example);
  return parse_theory(read_file(c.theory_path), c.theory_path);
}

GoalFile corpus_goals(const std::string& example, const std::string& file) {
  ExampleCase c = load_example(example);
  RewriteTheory th = parse_theory(read_file(c.theory_path), c.theory_path);
  std::string path = c.dir + "/" + file;
  return parse_goals(read_file(path), th, path);
}

const RewriteTheory& algebra() {
  static const RewriteTheory th = parse_theory(R"(
theory ALG
  sorts Elt MSet List State .
  subsorts Elt < MSet List .
  op a : -> Elt [ctor] .
  op b : -> Elt [ctor] .
  op c : -> Elt [ctor] .
  op ∅ : -> MSet [ctor] .
  op nil : -> List [ctor] .
  op __ : MSet MSet -> MSet [ctor assoc comm id: ∅] .
  op _;_ : List List -> List [ctor assoc id: nil] .
  op <_|_> : MSet List -> State [ctor] .
endtheory
)",
                                               "<algebra>");
  return th;
}

Term term(const RewriteTheory& th, const std::string& text, VarTable* vt) {
  return simplify(th, parse_term(th.sig, text, vt));
}

Term Random::item(const std::vector<Term>& pool, std::vector<Term>& used, unsigned max_vars) {
  const auto& sig = algebra().sig;
  static const char* kConsts[] = {"a", "b", "c"};
  if (coin(55)) return sig.constant(kConsts[below(3)]);
  // Reuse an already chosen variable once the budget is spent.
  if (used.size() >= max_vars) {
    if (used.empty()) return sig.constant(kConsts[below(3)]);
    return used[below(static_cast<unsigned>(used.size()))];
  }
  Term v = pool[below(static_cast<unsigned>(pool.size()))];
  bool seen = false;
  for (const auto& u : used) seen = seen || u == v;
  if (!seen) used.push_back(v);
  return v;
}

Term Random::mset(unsigned max_items, unsigned max_vars) {
  const auto& sig = algebra().sig;
  static const std::vector<Term> pool = {sig.var("E", "Elt"), sig.var("F", "Elt"), sig.var("X", "MSet"),
                                         sig.var("Y", "MSet")};
  unsigned n = below(max_items + 1);
  if (n == 0) return sig.constant("∅");
  std::vector<Term> used, items;
  for (unsigned i = 0; i < n; ++i) items.push_back(item(pool, used, max_vars));
  if (items.size() == 1) return items[0];
  return sig.make(sig.op_id("__"), items);
}

Term Random::list(unsigned max_items, unsigned max_vars) {
  const auto& sig = algebra().sig;
  static const std::vector<Term> pool = {sig.var("E", "Elt"), sig.var("L", "List"), sig.var("M", "List")};
  unsigned n = below(max_items + 1);
  if (n == 0) return sig.constant("nil");
  std::vector<Term> used, items;
  for (unsigned i = 0; i < n; ++i) items.push_back(item(pool, used, max_vars));
  if (items.size() == 1) return items[0];
  return sig.make(sig.op_id("_;_"), items);
}

Atom Random::atom(bool list_sort) {
  const auto& sig = algebra().sig;
  Term u = list_sort ? list(3, 2) : mset(3, 2);
  Formula phi;
  VarSet xs = vars(u);
  if (!xs.empty() && coin(40)) {
    std::vector<Var> vs(xs.begin(), xs.end());
    Var x = vs[below(static_cast<unsigned>(vs.size()))];
    static const char* kConsts[] = {"a", "b", "c"};
    Term rhs = sig.constant(kConsts[below(3)]);
    if (sig.sorts().name(x.sort) == "MSet" && coin()) rhs = sig.constant("∅");
    if (sig.sorts().name(x.sort) == "List" && coin()) rhs = sig.constant("nil");
    phi = coin(75) ? Formula::neq(Term::variable(x), rhs) : Formula::eq(Term::variable(x), rhs);
  }
  return Atom{u, phi};
}

std::vector<Substitution> ground_substitutions(const RewriteTheory& th, const VarSet& xs, unsigned bound) {
  GroundEnumerator en(th.sig);
  std::vector<Substitution> out{Substitution{}};
  for (const auto& x : xs) {
    std::vector<Term> dom = en.up_to(x.sort, bound);
    std::vector<Substitution> next;
    for (const auto& s : out)
      for (const auto& t : dom) {
        Substitution s2 = s;
        s2[x] = t;
        next.push_back(std::move(s2));
      }
    out = std::move(next);
  }
  return out;
}

std::set<Substitution> brute_force_unifiers(const RewriteTheory& th, const Term& a, const Term& b, unsigned bound) {
  VarSet xs = vars(a);
  collect_vars(b, xs);
  std::set<Substitution> out;
  for (const auto& s : ground_substitutions(th, xs, bound))
    if (th.sig.apply(a, s) == th.sig.apply(b, s)) out.insert(s);
  return out;
}

bool covered(const RewriteTheory& th, const VarSet& xs, const std::vector<Substitution>& unifiers,
             const Substitution& g) {
  for (const auto& u : unifiers) {
    std::vector<Substitution> partial{Substitution{}};
    for (const auto& x : xs) {
      Term image = u.count(x) ? u.at(x) : Term::variable(x);
      std::vector<Substitution> next;
      for (const auto& p : partial)
        for (auto& m : match_modulo(th.sig, image, g.at(x), {}, p)) next.push_back(std::move(m));
      partial = std::move(next);
      if (partial.empty()) break;
    }
    if (!partial.empty()) return true;
  }
  return false;
}

std::string show(const Signature& sig, const std::set<Term>& ts) {
  std::string s = "{";
  for (const auto& t : ts) s += (s.size() > 1 ? ", " : "") + print(sig, t);
  return s + "}";
}

}  // namespace rltest
