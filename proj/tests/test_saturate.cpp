#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>

#include "fuzzalg/presets.hpp"
#include "fuzzalg/saturate.hpp"
#include "support.hpp"

using namespace fuzzalg;

namespace {

Term ta() { return Term::cnst("a"); }
Term tb() { return Term::cnst("b"); }

// Semigroup over fresh constants a:p, b:q.
Theory tagged_semigroup(FramePtr fr, FrameElem p, FrameElem q) {
  Theory th = presets::semigroup_theory(fr);
  FuzzySet m;
  m.elems = {{"a", p}, {"b", q}};
  return extend_with_fuzzy_set(th, m);
}

}  // namespace

TEST_CASE("product of tagged constants exists at the meet of their levels") {
  auto fr = Frame::boolean(2);
  auto p = *fr->by_name("b10");
  auto q = *fr->by_name("b01");
  Theory th = tagged_semigroup(fr, p, q);

  GroundClosure g = saturate(th, 2);
  CHECK(g.complete());
  CHECK_FALSE(g.truncated());

  Term ab = Term::app("mul", {ta(), tb()});
  REQUIRE(g.contains(ab));
  CHECK(g.level_of(ta()) == p);
  CHECK(g.level_of(tb()) == q);
  CHECK(g.level_of(ab) == fr->meet(p, q));

  Derivation d = g.prove_mem(ab, fr->meet(p, q));
  auto r = check_derivation(th, d);
  INFO(r.message);
  CHECK(r.ok);
  CHECK(d.conclusion() == Sequent({}, Formula::mem(fr->meet(p, q), ab)));
}

TEST_CASE("empty theory with no constants has an empty universe") {
  auto fr = Frame::chain(2);
  Theory th;
  th.name = "empty";
  th.frame = fr;
  th.lang = presets::semigroup_lang();
  GroundClosure g = saturate(th, 3);
  CHECK(g.complete());
  CHECK(g.term_count() == 0);
  CHECK(g.class_count() == 0);
}

TEST_CASE("group extended by a top constant merges with the unit") {
  auto fr = Frame::chain(3);
  Theory base = presets::group_theory(fr);
  FuzzySet m;
  m.elems = {{"c", fr->top()}};
  Theory th = extend_with_fuzzy_set(base, m);

  GroundClosure g = saturate(th, 2);
  CHECK(g.complete());
  Term c = Term::cnst("c");
  Term e = Term::cnst("e");
  Term ci = Term::app("mul", {c, Term::app("inv", {c})});
  REQUIRE(g.contains(ci));
  CHECK(g.same_class(ci, e));
  CHECK_FALSE(g.same_class(c, e));

  // e inherits full existence through the cancellation equation
  CHECK(g.level_of(e) == fr->top());

  Derivation deq = g.prove_eq(ci, e);
  REQUIRE(check_derivation(th, deq).ok);
  CHECK(deq.conclusion() == Sequent({}, Formula::eq(ci, e)));

  Derivation dmem = g.prove_mem(e, fr->top());
  REQUIRE(check_derivation(th, dmem).ok);
}

TEST_CASE("every emitted fact replays through the checker") {
  auto fr = Frame::chain(3);
  Theory base = presets::group_theory(fr);
  FuzzySet m;
  m.elems = {{"c", *fr->by_name("1")}};
  Theory th = extend_with_fuzzy_set(base, m);

  GroundClosure g = saturate(th, 2);
  CHECK(g.complete());

  // rebuild the ground universe by hand: consts, then two closure rounds
  std::vector<Term> univ = {Term::cnst("e"), Term::cnst("c")};
  for (int round = 0; round < 2; ++round) {
    const auto snap = univ;
    for (const auto& a : snap) {
      univ.push_back(Term::app("inv", {a}));
      for (const auto& b : snap) univ.push_back(Term::app("mul", {a, b}));
    }
    std::sort(univ.begin(), univ.end());
    univ.erase(std::unique(univ.begin(), univ.end()), univ.end());
  }

  int eq_checked = 0, mem_checked = 0;
  for (const auto& t : univ) {
    REQUIRE(g.contains(t));
    Term w = g.witness(t);
    if (w == t) continue;
    Derivation d = g.prove_eq(t, w);
    REQUIRE(check_derivation(th, d).ok);
    CHECK(d.conclusion() == Sequent({}, Formula::eq(t, w)));
    ++eq_checked;
  }
  for (const auto& ci : g.classes()) {
    Derivation d = g.prove_mem(ci.rep, ci.level);
    auto r = check_derivation(th, d);
    INFO(r.message);
    REQUIRE(r.ok);
    CHECK(d.conclusion() == Sequent({}, Formula::mem(ci.level, ci.rep)));
    ++mem_checked;
  }
  CHECK(eq_checked > 0);
  CHECK(mem_checked > 3);
}

TEST_CASE("adding axioms never loses facts") {
  auto fr = Frame::chain(3);
  auto h = *fr->by_name("1");
  Theory small = tagged_semigroup(fr, h, h);
  Theory big = small;
  big.axioms.push_back(
      Sequent({}, Formula::eq(Term::app("mul", {Term::var("x"), Term::var("y")}),
                              Term::app("mul", {Term::var("y"), Term::var("x")}))));

  GroundClosure gs = saturate(small, 2);
  GroundClosure gb = saturate(big, 2);
  REQUIRE(gs.complete());
  REQUIRE(gb.complete());
  CHECK(gb.class_count() <= gs.class_count());
  for (const auto& ci : gs.classes()) {
    // every merged pair stays merged, every level stays at least as high
    CHECK(gb.same_class(ci.rep, ci.witness));
    CHECK(fr->leq(ci.level, gb.level_of(ci.rep)));
  }
  // commutativity actually merged something new
  Term ab = Term::app("mul", {ta(), tb()});
  Term ba = Term::app("mul", {tb(), ta()});
  CHECK_FALSE(gs.same_class(ab, ba));
  CHECK(gb.same_class(ab, ba));
}

TEST_CASE("budget exhaustion is reported as incomplete") {
  auto fr = Frame::chain(3);
  Theory th = tagged_semigroup(fr, fr->top(), fr->top());

  SaturateBudget tiny;
  tiny.max_terms = 3;
  GroundClosure g = saturate(th, 3, tiny);
  CHECK(g.truncated());
  CHECK_FALSE(g.complete());
  CHECK(g.term_count() <= 3);

  SaturateBudget few_steps;
  few_steps.max_steps = 1;
  GroundClosure g2 = saturate(th, 2, few_steps);
  CHECK_FALSE(g2.complete());
}

TEST_CASE("derives: bottom membership is a single inference") {
  auto fr = Frame::chain(3);
  Theory th = tagged_semigroup(fr, fr->top(), fr->top());
  Term ab = Term::app("mul", {ta(), tb()});

  auto r = derives(th, Formula::mem(fr->bot(), ab), 2);
  REQUIRE(r.proven);
  CHECK(r.derivation.node().rule == Rule::Inf);
  CHECK(check_derivation(th, r.derivation).ok);
}

TEST_CASE("derives: positive and unknown cases") {
  auto fr = Frame::boolean(2);
  auto p = *fr->by_name("b10");
  auto q = *fr->by_name("b01");
  Theory th = tagged_semigroup(fr, p, q);
  Term ab = Term::app("mul", {ta(), tb()});

  auto yes = derives(th, Formula::mem(fr->meet(p, q), ab), 2);
  REQUIRE(yes.proven);
  CHECK(check_derivation(th, yes.derivation).ok);

  // the converse level is not derivable: only bot is below both p and q
  auto no = derives(th, Formula::mem(fr->join(p, q), ab), 2);
  CHECK_FALSE(no.proven);

  // in a theory without membership axioms nothing above bot is derivable
  Theory bare = presets::semigroup_theory(fr);
  FuzzySet m;
  m.elems = {{"a", fr->bot()}};
  Theory bare_a = extend_with_fuzzy_set(bare, m);
  auto unk = derives(bare_a, Formula::mem(fr->top(), ta()), 3);
  CHECK_FALSE(unk.proven);

  // ground equation queries work too
  Theory comm = th;
  comm.axioms.push_back(
      Sequent({}, Formula::eq(Term::app("mul", {Term::var("x"), Term::var("y")}),
                              Term::app("mul", {Term::var("y"), Term::var("x")}))));
  Term ba = Term::app("mul", {tb(), ta()});
  auto eq = derives(comm, Formula::eq(ab, ba), 2);
  REQUIRE(eq.proven);
  CHECK(check_derivation(comm, eq.derivation).ok);
  CHECK_FALSE(derives(th, Formula::eq(ab, ba), 2).proven);
}

TEST_CASE("query on out-of-universe terms is unknown, not an error") {
  auto fr = Frame::chain(2);
  Theory th = tagged_semigroup(fr, fr->top(), fr->top());
  GroundClosure g = saturate(th, 1);
  Term deep = Term::app(
      "mul", {Term::app("mul", {ta(), ta()}), Term::app("mul", {tb(), tb()})});
  CHECK_FALSE(g.contains(deep));
  CHECK_FALSE(g.query(Formula::mem(fr->top(), deep)).has_value());
  // bottom is derivable for any well-formed ground term regardless
  auto d = g.query(Formula::mem(fr->bot(), deep));
  REQUIRE(d.has_value());
  CHECK(check_derivation(th, *d).ok);
}

TEST_CASE("representatives are canonical and witnesses minimal-depth") {
  auto fr = Frame::chain(3);
  Theory base = presets::group_theory(fr);
  FuzzySet m;
  m.elems = {{"c", fr->top()}};
  Theory th = extend_with_fuzzy_set(base, m);
  GroundClosure g = saturate(th, 2);

  Term e = Term::cnst("e");
  Term ee = Term::app("mul", {e, e});
  REQUIRE(g.same_class(e, ee));
  CHECK(g.representative(ee) == e);      // least in the term order
  CHECK(g.witness(ee).depth() == 0);     // a constant witnesses the class

  auto applied = g.apply("mul", {ee, e});
  REQUIRE(applied.has_value());
  CHECK(g.same_class(*applied, e));
}
