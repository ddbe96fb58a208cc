#include <doctest.h>

#include "rl/eq.hpp"
#include "support.hpp"

using namespace rl;

TEST_CASE("ACU matching enumerates every split of the multiset") {
  RewriteTheory th = rltest::corpus_theory("qlock");
  VarTable vt;
  Term p = parse_term(th.sig, "W:MSet i:Nat", &vt);
  Term s = parse_term(th.sig, "0 (s 0)");
  auto ms = match_modulo(th.sig, p, s);
  REQUIRE(ms.size() == 2);
  std::set<std::pair<std::string, std::string>> got;
  for (const auto& m : ms) got.insert({print(th.sig, m.at(vt.at("W"))), print(th.sig, m.at(vt.at("i")))});
  CHECK(got == std::set<std::pair<std::string, std::string>>{{"s 0", "0"}, {"0", "s 0"}});
}

TEST_CASE("matching a QLOCK pattern binds the identity") {
  RewriteTheory th = rltest::corpus_theory("qlock");
  VarTable vt;
  Term p = parse_term(th.sig, "< n:MSet | w:MSet | ∅ | q:List >", &vt);
  Term s = parse_term(th.sig, "< 0 | ∅ | ∅ | nil >");
  auto ms = match_modulo(th.sig, p, s);
  REQUIRE(ms.size() == 1);
  CHECK(print(th.sig, ms[0].at(vt.at("n"))) == "0");
  CHECK(print(th.sig, ms[0].at(vt.at("w"))) == "∅");
  CHECK(print(th.sig, ms[0].at(vt.at("q"))) == "nil");
}

TEST_CASE("protected variables behave as constants") {
  const auto& th = rltest::algebra();
  VarTable vt;
  Term p = rltest::term(th, "X:MSet a", &vt);
  Term s = rltest::term(th, "Y:MSet a", &vt);
  CHECK(match_modulo(th.sig, p, s, {vt.at("Y")}).size() == 1);
  CHECK(match_modulo(th.sig, s, p, {vt.at("X")}).size() == 1);
  CHECK(match_modulo(th.sig, rltest::term(th, "b X", &vt), s, {vt.at("Y")}).empty());
}

TEST_CASE("ACU unification of a X with Y b has one most general unifier") {
  const auto& th = rltest::algebra();
  VarTable vt;
  Term l = rltest::term(th, "a X:MSet", &vt);
  Term r = rltest::term(th, "Y:MSet b", &vt);
  FreshGen gen = fresh_after(vars(l));
  UnifierSet us = unify_modulo(th.sig, l, r, gen);
  CHECK(us.complete);
  REQUIRE(us.unifiers.size() == 1);
  const auto& u = us.unifiers[0];
  CHECK(th.sig.apply(l, u) == th.sig.apply(r, u));
  VarSet xs = {vt.at("X"), vt.at("Y")};
  auto bf = rltest::brute_force_unifiers(th, l, r, 3);
  CHECK(bf.size() > 1);
  for (const auto& g : bf) CHECK(rltest::covered(th, xs, us.unifiers, g));
}

TEST_CASE("an element variable cannot unify with the empty list") {
  RewriteTheory th = rltest::corpus_theory("qlock");
  VarTable vt;
  Term l = parse_term(th.sig, "i:Nat ; q:List", &vt);
  FreshGen gen;
  UnifierSet us = unify_modulo(th.sig, l, parse_term(th.sig, "nil"), gen);
  CHECK(us.unifiers.empty());
  CHECK(us.complete);
}

TEST_CASE("list unification is sound and covers the bounded ground unifiers") {
  const auto& th = rltest::algebra();
  rltest::Random rnd(11);
  int truncated = 0;
  for (int i = 0; i < 120; ++i) {
    Term a = rnd.list(3, 2), b = rnd.list(3, 2);
    VarSet xs = vars(a);
    collect_vars(b, xs);
    FreshGen gen = fresh_after(xs);
    UnifierSet us = unify_modulo(th.sig, a, b, gen);
    for (const auto& u : us.unifiers) CHECK(th.sig.apply(a, u) == th.sig.apply(b, u));
    if (!us.complete) {
      ++truncated;
      continue;
    }
    for (const auto& g : rltest::brute_force_unifiers(th, a, b, 3)) {
      INFO(print(th.sig, a), " =? ", print(th.sig, b), " at ", print(th.sig, g));
      CHECK(rltest::covered(th, xs, us.unifiers, g));
    }
  }
  MESSAGE(truncated, " truncated list problems");
}

TEST_CASE("unification with a rigid variable") {
  const auto& th = rltest::algebra();
  VarTable vt;
  Term l = rltest::term(th, "X:MSet", &vt);
  Term r = rltest::term(th, "Y:MSet a", &vt);
  FreshGen gen = fresh_after({vt.at("X"), vt.at("Y")});
  UnifierSet us = unify_modulo(th.sig, l, r, gen, {}, {vt.at("Y")});
  REQUIRE(us.unifiers.size() == 1);
  CHECK_FALSE(us.unifiers[0].count(vt.at("Y")));
  CHECK(us.unifiers[0].at(vt.at("X")) == r);
  // A rigid variable is an opaque constant, so it cannot absorb an element.
  CHECK(unify_modulo(th.sig, r, rltest::term(th, "Y", &vt), gen, {}, {vt.at("Y")}).unifiers.empty());
}

TEST_CASE("Diophantine basis of x1 + x2 = y1 + y2") {
  auto basis = diophantine_basis({1, 1}, {1, 1});
  std::set<std::vector<unsigned>> got(basis.begin(), basis.end());
  CHECK(got == std::set<std::vector<unsigned>>{{1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}});
}

TEST_CASE("Diophantine basis agrees with a bounded search for minimal solutions") {
  const std::vector<unsigned> lhs = {2, 1}, rhs = {1, 3};
  auto basis = diophantine_basis(lhs, rhs);
  std::set<std::vector<unsigned>> got(basis.begin(), basis.end());
  std::vector<std::vector<unsigned>> sols;
  for (unsigned a = 0; a <= 4; ++a)
    for (unsigned b = 0; b <= 4; ++b)
      for (unsigned c = 0; c <= 4; ++c)
        for (unsigned d = 0; d <= 4; ++d)
          if (a + b + c + d > 0 && 2 * a + b == c + 3 * d) sols.push_back({a, b, c, d});
  std::set<std::vector<unsigned>> minimal;
  for (const auto& s : sols) {
    bool min = true;
    for (const auto& t : sols) {
      if (t == s) continue;
      bool le = true;
      for (int k = 0; k < 4; ++k) le = le && t[k] <= s[k];
      min = min && !le;
    }
    if (min) minimal.insert(s);
  }
  CHECK(got == minimal);
}

TEST_CASE("b_equal identifies AC permutations") {
  const auto& th = rltest::algebra();
  Term x = Term::application(th.sig.op_id("__"), th.sig.sorts().id("MSet"),
                             {th.sig.constant("c"), th.sig.constant("a")});
  CHECK(b_equal(th.sig, x, rltest::term(th, "a c")));
  CHECK_FALSE(b_equal(th.sig, x, rltest::term(th, "a b")));
}
