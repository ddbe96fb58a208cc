#include <doctest.h>

#include <algorithm>

#include "rl/transforms.hpp"
#include "support.hpp"

using namespace rl;

TEST_CASE("the empty predicate denotes nothing") {
  CHECK(denotation_bounded(rltest::algebra(), PatternPredicate::bottom(), 3).empty());
}

TEST_CASE("membership checks the constraint") {
  RewriteTheory th = rltest::corpus_theory("qlock");
  VarTable vt;
  PatternPredicate p = parse_pattern(th.sig, "< n:MSet | w:MSet | c:MSet | q:List > | dupl(n w c) =/= tt", &vt);
  CHECK_FALSE(member(th, p, rltest::term(th, "< 0 | 0 | ∅ | nil >")));
  CHECK(member(th, p, rltest::term(th, "< 0 | s 0 | ∅ | nil >")));
  CHECK(member(th, p, rltest::term(th, "< ∅ | ∅ | ∅ | 0 ; 0 >")));
}

TEST_CASE("bounded denotation of a small pattern") {
  const auto& th = rltest::algebra();
  VarTable vt;
  PatternPredicate p = parse_pattern(th.sig, "a X:MSet | X =/= ∅", &vt);
  std::set<Term> d = denotation_bounded(th, p, 2);
  CHECK(rltest::show(th.sig, d) == "{a a, a b, a c}");
}

TEST_CASE("renaming leaves the denotation unchanged") {
  const auto& th = rltest::algebra();
  rltest::Random rnd(17);
  for (int i = 0; i < 40; ++i) {
    Atom a = rnd.atom(rnd.coin());
    Substitution r = prime_rename(vars(a), vars(a));
    Atom b = apply(th.sig, a, r);
    CHECK(denotation_bounded(th, PatternPredicate::atom(a), 3) == denotation_bounded(th, PatternPredicate::atom(b), 3));
  }
}

TEST_CASE("intersection with the empty critical section") {
  RewriteTheory th = rltest::corpus_theory("qlock");
  VarTable v1, v2, v3;
  Atom a = parse_pattern(th.sig, "< n:MSet | w:MSet | c:MSet | q:List > | dupl(n w c) =/= tt", &v1).get_atom();
  Atom b = parse_pattern(th.sig, "< n':MSet | w':MSet | ∅ | q':List >", &v2).get_atom();
  Atom want = parse_pattern(th.sig, "< n:MSet | w:MSet | ∅ | q:List > | dupl(n w) =/= tt", &v3).get_atom();
  FreshGen gen = fresh_after(vars(a));
  Disjuncts d = intersect(th, a, b, gen);
  CHECK(d.complete);
  REQUIRE(d.atoms.size() == 1);
  CHECK(d.atoms[0].term.arg(0).arg(2) == rltest::term(th, "∅"));
  FreshGen g2 = fresh_after(vars(d.atoms[0]));
  CHECK(subsumes(th, want, d.atoms[0], g2));
  CHECK(subsumes(th, d.atoms[0], want, g2));
}

TEST_CASE("intersection agrees with the bounded denotations") {
  const auto& th = rltest::algebra();
  rltest::Random rnd(23);
  for (int i = 0; i < 60; ++i) {
    bool list = rnd.coin();
    Atom a = rnd.atom(list), b = rnd.atom(list);
    FreshGen gen = fresh_after(vars(a));
    Disjuncts d = intersect(th, a, b, gen);
    auto da = denotation_bounded(th, PatternPredicate::atom(a), 3);
    auto db = denotation_bounded(th, PatternPredicate::atom(b), 3);
    std::set<Term> want;
    std::set_intersection(da.begin(), da.end(), db.begin(), db.end(), std::inserter(want, want.end()));
    INFO(print(th.sig, a), " /\\ ", print(th.sig, b));
    CHECK(denotation_bounded(th, PatternPredicate::from_atoms(d.atoms), 3) == want);
    CHECK(denotation_bounded(th, PatternPredicate::conj({PatternPredicate::atom(a), PatternPredicate::atom(b)}), 3) == want);
  }
}

TEST_CASE("subsumption in the QLOCK proof") {
  GoalFile g = rltest::corpus_goals("qlock", "circularities.rl");
  const RewriteTheory& th = g.theory;
  VarTable v1, v2;
  Atom p2 = parse_pattern(th.sig, "[ n:MSet | w:MSet | ∅ | q:List ] | dupl(n w) =/= tt", &v1).get_atom();
  Atom goal = parse_pattern(th.sig, "[ n'':MSet | w'':MSet | ∅ | q'':List ] | dupl(n'' w'' s 0) =/= tt", &v2).get_atom();
  FreshGen gen = fresh_after(vars(goal));
  CHECK(subsumes(th, p2, goal, gen));
  Atom loose = parse_pattern(th.sig, "[ n'' | w'' | ∅ | q'' ]", &v2).get_atom();
  CHECK_FALSE(subsumes(th, p2, loose, gen));
}

TEST_CASE("subsumption is sound on random pairs") {
  const auto& th = rltest::algebra();
  rltest::Random rnd(29);
  int yes = 0;
  for (int i = 0; i < 120; ++i) {
    bool list = rnd.coin();
    Atom g = rnd.atom(list), s = rnd.atom(list);
    s = apply(th.sig, s, prime_rename(vars(s), vars(g)));
    VarSet all = vars(g);
    for (const auto& x : vars(s)) all.insert(x);
    FreshGen gen = fresh_after(all);
    if (!subsumes(th, g, s, gen)) continue;
    ++yes;
    auto dg = denotation_bounded(th, PatternPredicate::atom(g), 3);
    auto ds = denotation_bounded(th, PatternPredicate::atom(s), 3);
    INFO(print(th.sig, g), " >= ", print(th.sig, s));
    CHECK(std::includes(dg.begin(), dg.end(), ds.begin(), ds.end()));
  }
  CHECK(yes > 0);
}

TEST_CASE("standard form splits a State variable per constructor") {
  RewriteTheory th = stop_transform(rltest::corpus_theory("qlock")).theory;
  VarTable vt;
  PatternPredicate p = parse_pattern(th.sig, "x:State", &vt);
  FreshGen gen = fresh_after(vars(p));
  auto atoms = to_standard_form(th, p, gen);
  REQUIRE(atoms.size() == 2);
  std::set<std::string> heads;
  for (const auto& a : atoms) {
    heads.insert(th.sig.op(a.term.op()).name);
    CHECK(a.term.arg(0).is_var());
    CHECK(a.cond.is_true());
  }
  CHECK(heads == std::set<std::string>{"<_>", "[_]"});
}

TEST_CASE("QLOCK initial states are already in standard form") {
  GoalFile g = rltest::corpus_goals("qlock");
  FreshGen gen = fresh_after(vars(g.invariants.at(0).from));
  auto atoms = to_standard_form(g.theory, g.invariants.at(0).from, gen);
  REQUIRE(atoms.size() == 1);
  CHECK(atoms[0] == g.invariants.at(0).from.get_atom());
}

TEST_CASE("rhs constraint variables must be bound") {
  RewriteTheory th = rltest::corpus_theory("qlock");
  VarTable vt;
  ReachFormula f;
  f.lhs = parse_pattern(th.sig, "< n:MSet | ∅ | ∅ | nil >", &vt).get_atom();
  f.rhs = {parse_pattern(th.sig, "< n | ∅ | ∅ | nil > | dupl(z:MSet) =/= tt", &vt).get_atom()};
  auto v = quantification_violation(f);
  REQUIRE(v);
  CHECK(v->name == "z");
  f.rhs = {parse_pattern(th.sig, "< m:MSet | ∅ | ∅ | nil > | dupl(m n) =/= tt", &vt).get_atom()};
  CHECK_FALSE(quantification_violation(f));
  name_disjuncts(f);
  CHECK(f.rhs_name(0) == "1");
  CHECK(f.parameters() == VarSet{vt.at("n")});
}

TEST_CASE("instances under a binding bound") {
  const auto& th = rltest::algebra();
  VarTable vt;
  Atom a = parse_pattern(th.sig, "< X:MSet | nil > | X =/= ∅", &vt).get_atom();
  auto xs = instances_bounded(th, a, 1);
  CHECK(xs.size() == 3);
  auto bs = instance_bindings(th, a, 2);
  CHECK(bs.size() == 3 + 6);
  for (const auto& b : bs) CHECK(th.sig.apply(a.term, b.binding) == b.term);
}
