#include <doctest.h>

#include <algorithm>

#include "support.hpp"

using namespace rl;

TEST_CASE("least sorts follow the subsort order") {
  RewriteTheory th = rltest::corpus_theory("qlock");
  const auto& so = th.sig.sorts();
  CHECK(parse_term(th.sig, "0").sort() == so.id("Nat"));
  Term l = parse_term(th.sig, "0 ; s 0");
  CHECK(l.sort() == so.id("List"));
  CHECK(th.sig.leq(so.id("Nat"), so.id("List")));
  CHECK(th.sig.leq(so.id("Nat"), so.id("MSet")));
  CHECK_FALSE(th.sig.leq(so.id("List"), so.id("MSet")));
}

TEST_CASE("substitution application renormalizes under identities") {
  RewriteTheory th = rltest::corpus_theory("qlock");
  const Rule& n2w = th.rule("n2w");
  Substitution s;
  for (const auto& v : vars(n2w.rhs)) {
    if (v.name == "i")
      s[v] = parse_term(th.sig, "0");
    else if (v.name == "q")
      s[v] = parse_term(th.sig, "nil");
    else
      s[v] = parse_term(th.sig, "∅");
  }
  CHECK(print(th.sig, th.sig.apply(n2w.rhs, s)) == "<∅ | 0 | ∅ | 0>");
}

TEST_CASE("every parenthesization and permutation of an AC union has one normal form") {
  const auto& sig = rltest::algebra().sig;
  OpId u = sig.op_id("__");
  std::vector<std::string> names = {"a", "b", "c"};
  std::set<Term> forms;
  std::sort(names.begin(), names.end());
  do {
    Term x = sig.constant(names[0]), y = sig.constant(names[1]), z = sig.constant(names[2]);
    forms.insert(sig.make(u, {sig.make(u, {x, y}), z}));
    forms.insert(sig.make(u, {x, sig.make(u, {y, z})}));
    forms.insert(sig.make(u, {x, y, z}));
  } while (std::next_permutation(names.begin(), names.end()));
  REQUIRE(forms.size() == 1);
  const Term& t = *forms.begin();
  CHECK(t.op() == u);
  CHECK(t.arity() == 3);
  CHECK(print(sig, t) == "a b c");
  CHECK(t.size() == 3);
}

TEST_CASE("identity elements disappear") {
  const auto& sig = rltest::algebra().sig;
  CHECK(sig.make(sig.op_id("__"), {sig.constant("a"), sig.constant("∅")}) == sig.constant("a"));
  CHECK(sig.make(sig.op_id("_;_"), {sig.constant("nil"), sig.constant("b"), sig.constant("nil")}) == sig.constant("b"));
  CHECK(sig.make(sig.op_id("__"), {sig.constant("∅"), sig.constant("∅")}) == sig.constant("∅"));
}

TEST_CASE("associative lists keep their order") {
  const auto& sig = rltest::algebra().sig;
  OpId cat = sig.op_id("_;_");
  Term ab = sig.make(cat, {sig.constant("a"), sig.constant("b")});
  Term ba = sig.make(cat, {sig.constant("b"), sig.constant("a")});
  CHECK(ab != ba);
  CHECK(sig.make(cat, {ab, sig.constant("c")}) == sig.make(cat, {sig.constant("a"), sig.make(cat, {sig.constant("b"), sig.constant("c")})}));
}

TEST_CASE("make rejects arity and sort errors") {
  const auto& sig = rltest::algebra().sig;
  CHECK_THROWS_AS(sig.make(sig.op_id("<_|_>"), {sig.constant("a")}), Error);
  CHECK_THROWS_AS(sig.make(sig.op_id("<_|_>"), {sig.constant("nil"), sig.constant("nil")}), Error);
  CHECK_NOTHROW(sig.make(sig.op_id("<_|_>"), {sig.constant("a"), sig.constant("a")}));
}

TEST_CASE("replace_at inside a flattened argument list matches the unflattened reference") {
  const auto& th = rltest::algebra();
  const auto& sig = th.sig;
  Term t = rltest::term(th, "< a b c | a ; b >");
  Term u = rltest::term(th, "b c");
  for (std::size_t i = 0; i < 3; ++i) {
    Term got = sig.replace_at(t, {0, i}, u);
    std::vector<Term> items(t.arg(0).args().begin(), t.arg(0).args().end());
    items[i] = u;
    // Reference: rebuild the union from nested binary applications.
    Term ms = items[0];
    for (std::size_t k = 1; k < items.size(); ++k)
      ms = Term::application(sig.op_id("__"), ms.sort(), {ms, items[k]});
    Term want = sig.normalize(Term::application(t.op(), t.sort(), {ms, t.arg(1)}));
    CHECK(got == want);
    CHECK(got.arg(0).arity() == 4);
  }
}

TEST_CASE("composition agrees with sequential application") {
  const auto& th = rltest::algebra();
  const auto& sig = th.sig;
  rltest::Random rnd(3);
  for (int i = 0; i < 100; ++i) {
    Term t = rnd.mset(3, 2);
    Substitution a, b;
    for (const auto& x : vars(t)) a[x] = sig.sorts().name(x.sort) == "Elt" ? sig.constant("c") : rnd.mset(2, 2);
    VarSet rv = range_vars(a);
    for (const auto& x : rv) b[x] = sig.sorts().name(x.sort) == "Elt" ? sig.constant("a") : rnd.mset(2, 0);
    CHECK(sig.apply(t, compose(sig, a, b)) == sig.apply(sig.apply(t, a), b));
  }
}

TEST_CASE("fresh names are distinct and keep their stem") {
  FreshGen gen;
  Var x{"x", 0};
  Var f1 = gen.fresh(x), f2 = gen.fresh(x), f3 = gen.fresh(f1);
  CHECK(f1 != f2);
  CHECK(f2 != f3);
  CHECK(name_stem(f3.name) == "x");
  CHECK(f1.sort == 0);
  VarSet avoid = {x, f1};
  Substitution r = fresh_rename({x}, avoid, gen);
  CHECK_FALSE(avoid.count(r.at(x).var()));
}

TEST_CASE("subsort cycles are rejected") {
  SortGraph g;
  SortId a = g.add("A"), b = g.add("B"), c = g.add("C");
  g.add_subsort(a, b);
  g.add_subsort(b, c);
  CHECK(g.leq(a, c));
  CHECK_THROWS(g.add_subsort(c, a));
}

TEST_CASE("positions and variables") {
  const auto& th = rltest::algebra();
  VarTable vt;
  Term t = rltest::term(th, "< X:MSet a | L:List ; b >", &vt);
  CHECK(vars(t).size() == 2);
  CHECK(subterm_at(t, {1}) == rltest::term(th, "L ; b", &vt));
  CHECK(occurs(vt.at("X"), t));
  CHECK_FALSE(t.ground());
}
