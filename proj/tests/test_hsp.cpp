#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "fuzzalg/hsp.hpp"
#include "fuzzalg/presets.hpp"
#include "fuzzalg/semantics.hpp"
#include "support.hpp"

using namespace fuzzalg;

namespace {

FramePtr fr3() { return Frame::chain(3); }
FramePtr fr2() { return Frame::chain(2); }

Term mul(Term a, Term b) { return Term::app("mul", {std::move(a), std::move(b)}); }

FuzzyAlgebra alg(const FramePtr& fr, const Language& lang,
                 std::vector<std::string> carrier, std::vector<int> levels,
                 std::map<std::string, std::vector<int>> ops,
                 std::map<std::string, int> consts = {}) {
  FuzzyAlgebra a;
  a.frame = fr;
  a.lang = lang;
  a.carrier = std::move(carrier);
  for (int l : levels) a.mu.push_back(fr->elem(l));
  a.ops = std::move(ops);
  a.consts = std::move(consts);
  a.validate();
  return a;
}

Language free_lang() {
  Language l;
  l.vars = {"x"};
  return l;
}

// x and y generate a three-element commutative band: all mixed products land
// on one element p.
XEquation comm_equation(const FramePtr& fr) {
  XEquation e;
  e.generators.elems = {{"x", fr->bot()}, {"y", fr->bot()}};
  e.target = alg(fr, presets::semigroup_lang(), {"gx", "gy", "p"}, {0, 0, 0},
                 {{"mul", {0, 2, 2, 2, 1, 2, 2, 2, 2}}});
  e.target.name = "comm";
  e.valuation = {{"x", 0}, {"y", 1}};
  return e;
}

// One generator whose square s has level top and absorbs everything.
XEquation level_equation(const FramePtr& fr) {
  XEquation e;
  e.generators.elems = {{"x", fr->bot()}};
  e.target = alg(fr, presets::semigroup_lang(), {"gx", "s"}, {0, fr->size() - 1},
                 {{"mul", {1, 1, 1, 1}}});
  e.target.name = "square";
  e.valuation = {{"x", 0}};
  return e;
}

// One generator of positive level whose square is the unit constant.
XEquation unit_equation(const FramePtr& fr) {
  Language lang = presets::semigroup_lang();
  lang.sig.consts = {"e"};
  XEquation e;
  e.generators.elems = {{"x", fr->elem(1)}};
  e.target = alg(fr, lang, {"gx", "ge"}, {1, fr->size() - 1},
                 {{"mul", {1, 0, 0, 1}}}, {{"e", 1}});
  e.target.name = "unit";
  e.valuation = {{"x", 0}};
  return e;
}

// Operation-free target: nothing to preserve, so the equation is free.
XEquation free_equation(const FramePtr& fr) {
  XEquation e;
  e.generators.elems = {{"x", fr->bot()}};
  e.target = alg(fr, free_lang(), {"gx"}, {0}, {});
  e.target.name = "free";
  e.valuation = {{"x", 0}};
  return e;
}

// Checks the translation against direct satisfaction on every algebra of the
// equation's language up to max_n, and reports how often each verdict came up.
std::pair<int, int> check_translation(const XEquation& e, int max_n) {
  const Theory th = equation_to_theory(e);
  int holds = 0, fails = 0;
  for (int n = 0; n <= max_n; ++n)
    for_each_algebra(
        e.target.frame, e.target.lang, n,
        [&](const FuzzyAlgebra& a) {
          const bool direct = satisfies_equation(a, e).holds;
          CHECK(direct == is_model(a, th).ok);
          (direct ? holds : fails)++;
          return true;
        },
        /*prune_isomorphic=*/true);
  return {holds, fails};
}

}  // namespace

TEST_CASE("x-equation validation catches bad presentations") {
  auto fr = fr3();
  XEquation e = comm_equation(fr);
  e.validate();

  XEquation dup = e;
  dup.generators.elems.push_back({"x", fr->bot()});
  try {
    dup.validate();
    FAIL("duplicate generator accepted");
  } catch (const Error& err) {
    CHECK(err.kind == ErrorKind::NameClash);
  }

  XEquation missing = e;
  missing.valuation.erase("y");
  try {
    missing.validate();
    FAIL("generator without image accepted");
  } catch (const Error& err) {
    CHECK(err.kind == ErrorKind::NotAFuzzyMap);
  }

  XEquation range = e;
  range.valuation["y"] = 5;
  try {
    range.validate();
    FAIL("image outside the carrier accepted");
  } catch (const Error& err) {
    CHECK(err.kind == ErrorKind::BadInput);
  }

  XEquation high = e;
  high.generators.elems[0].second = fr->top();  // image gx only has bottom
  try {
    high.validate();
    FAIL("generator above its image accepted");
  } catch (const Error& err) {
    CHECK(err.kind == ErrorKind::NotAFuzzyMap);
  }

  XEquation foreign = e;
  foreign.generators.elems[0].second = fr2()->bot();
  try {
    foreign.validate();
    FAIL("level from another frame accepted");
  } catch (const Error& err) {
    CHECK(err.kind == ErrorKind::FrameMismatch);
  }

  XEquation partial = e;
  partial.target.ops["mul"] = {0, 0, 0, 0, 1, 0, 0, 0, 2};  // p unreachable
  try {
    partial.validate();
    FAIL("non-generating valuation accepted");
  } catch (const Error& err) {
    CHECK(err.kind == ErrorKind::NotGenerated);
  }
}

TEST_CASE("equation satisfaction needs matching frame and signature") {
  auto fr = fr3();
  XEquation e = comm_equation(fr);

  FuzzyAlgebra opless = alg(fr, free_lang(), {"a"}, {0}, {});
  try {
    satisfies_equation(opless, e);
    FAIL("signature mismatch accepted");
  } catch (const Error& err) {
    CHECK(err.kind == ErrorKind::FrameOrSignatureMismatch);
  }

  FuzzyAlgebra tiny =
      alg(fr2(), presets::semigroup_lang(), {"a"}, {0}, {{"mul", {0}}});
  try {
    satisfies_equation(tiny, e);
    FAIL("frame mismatch accepted");
  } catch (const Error& err) {
    CHECK(err.kind == ErrorKind::FrameOrSignatureMismatch);
  }

  // A structurally equal but distinct frame is fine.
  FuzzyAlgebra twin =
      alg(fr3(), presets::semigroup_lang(), {"a"}, {2}, {{"mul", {0}}});
  CHECK(satisfies_equation(twin, e).holds);
}

TEST_CASE("an operation-free equation holds in every algebra") {
  auto fr = fr3();
  XEquation e = free_equation(fr);
  e.validate();

  const Theory th = equation_to_theory(e);
  CHECK(th.axioms.size() == 1);
  CHECK(th.axioms[0].premises.empty());
  CHECK(classify_theory(th).cls == TheoryClass::Unconditional);

  auto [holds, fails] = check_translation(e, 3);
  CHECK(fails == 0);
  CHECK(holds > 10);
}

TEST_CASE("commutativity equation separates semilattices from left zeros") {
  auto fr = fr3();
  XEquation e = comm_equation(fr);

  FuzzyAlgebra leftzero = alg(fr, presets::semigroup_lang(), {"a", "b"}, {2, 2},
                              {{"mul", {0, 0, 1, 1}}});
  auto bad = satisfies_equation(leftzero, e);
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->at("x") == 0);
  CHECK(bad.witness->at("y") == 1);

  FuzzyAlgebra meet = alg(fr, presets::semigroup_lang(), {"o", "i"}, {2, 2},
                          {{"mul", {0, 0, 0, 1}}});
  CHECK(satisfies_equation(meet, e).holds);
}

TEST_CASE("equation translation pins the multiplication table") {
  auto fr = fr3();
  XEquation e = comm_equation(fr);
  Theory th = equation_to_theory(e);
  th.validate();

  // 3 membership axioms, then one equation per table cell.
  CHECK(th.axioms.size() == 12);
  CHECK(th.lang.vars == std::vector<std::string>{"x", "y"});
  for (const auto& ax : th.axioms) CHECK(ax.premises.empty());

  const Term x = Term::var("x"), y = Term::var("y");
  auto comm = th.find_axiom(Sequent({}, Formula::eq(mul(y, x), mul(x, y))));
  REQUIRE(comm.has_value());
  CHECK(*comm == 6);
  auto idem = th.find_axiom(Sequent({}, Formula::eq(mul(x, x), x)));
  REQUIRE(idem.has_value());
  CHECK(*idem == 3);
  CHECK(th.find_axiom(Sequent({}, Formula::mem(fr->bot(), mul(x, y)))).has_value());
  CHECK(classify_theory(th).cls == TheoryClass::Unconditional);

  // With empty support both translations coincide.
  Theory uncond = unconditional_equation_to_theory(e);
  CHECK(uncond.axioms == th.axioms);
}

TEST_CASE("level equations demand high product levels") {
  auto fr = fr3();
  XEquation e = level_equation(fr);

  FuzzyAlgebra rightzero = alg(fr, presets::semigroup_lang(), {"a", "b"},
                               {2, 1}, {{"mul", {0, 1, 0, 1}}});
  auto bad = satisfies_equation(rightzero, e);
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->at("x") == 1);

  const Theory th = equation_to_theory(e);
  auto failing = is_model(rightzero, th);
  CHECK_FALSE(failing.ok);
  CHECK(failing.failing_axiom == 1);  // mem top mul(x,x)
  REQUIRE(failing.counter.has_value());
  CHECK(failing.counter->at("x") == 1);

  FuzzyAlgebra point =
      alg(fr, presets::semigroup_lang(), {"a"}, {2}, {{"mul", {0}}});
  CHECK(satisfies_equation(point, e).holds);
}

TEST_CASE("constants and premises translate to type E") {
  auto fr = fr3();
  XEquation e = unit_equation(fr);
  e.validate();

  Theory th = equation_to_theory(e);
  CHECK(th.axioms.size() == 7);  // 2 memberships, 4 cells, 1 constant
  const auto supp = e.generators.support(*fr);
  CHECK(supp.size() == 1);
  for (const auto& ax : th.axioms) {
    CHECK(ax.premises.size() == supp.size());
    CHECK(ax.has_premise(Formula::mem(fr->elem(1), Term::var("x"))));
  }

  const Term x = Term::var("x"), u = Term::cnst("e");
  std::vector<Formula> gamma = {Formula::mem(fr->elem(1), x)};
  CHECK(th.find_axiom(Sequent(gamma, Formula::eq(mul(x, x), u))).has_value());
  CHECK(th.find_axiom(Sequent(gamma, Formula::eq(mul(u, x), x))).has_value());

  auto cls = classify_theory(th);
  CHECK(cls.cls == TheoryClass::TypeE);
  CHECK(cls.first_not_unconditional == 0);

  try {
    unconditional_equation_to_theory(e);
    FAIL("nonempty support accepted");
  } catch (const Error& err) {
    CHECK(err.kind == ErrorKind::SupportNotEmpty);
  }

  Language lang = e.target.lang;
  FuzzyAlgebra z2 = alg(fr, lang, {"e", "g"}, {2, 1},
                        {{"mul", {0, 1, 1, 0}}}, {{"e", 0}});
  CHECK(satisfies_equation(z2, e).holds);

  FuzzyAlgebra band = alg(fr, lang, {"a", "b"}, {2, 1},
                          {{"mul", {0, 1, 1, 1}}}, {{"e", 0}});
  auto bad = satisfies_equation(band, e);
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->at("x") == 1);  // its square lands on b, not on e
}

TEST_CASE("translated theories agree with direct satisfaction") {
  auto fr = fr3();

  auto [ch, cf] = check_translation(comm_equation(fr), 3);
  CHECK(ch > 0);
  CHECK(cf > 0);

  auto [lh, lf] = check_translation(level_equation(fr), 3);
  CHECK(lh > 0);
  CHECK(lf > 0);

  auto [uh, uf] = check_translation(unit_equation(fr), 2);
  CHECK(uh > 0);
  CHECK(uf > 0);
}

TEST_CASE("closure check reports every escape from a singleton family") {
  auto fr = fr2();
  Language nolang;
  FuzzyAlgebra two = alg(fr, nolang, {"a", "b"}, {1, 1}, {});

  auto rep = closure_check(std::vector<FuzzyAlgebra>{two}, ClosureMode::HSP_epi);
  CHECK_FALSE(rep.products);
  CHECK_FALSE(rep.strong_subalgebras);
  REQUIRE(rep.epi_images.has_value());
  CHECK_FALSE(*rep.epi_images);
  CHECK_FALSE(rep.split_epi_images);
  CHECK_FALSE(rep.all_closed());
  REQUIRE(rep.violations.size() == 4);

  CHECK(rep.violations[0].kind == "product");
  CHECK(rep.violations[0].witness.size() == 4);
  CHECK(product(rep.violations[0].inputs[0], rep.violations[0].inputs[1]).algebra ==
        rep.violations[0].witness);

  CHECK(rep.violations[1].kind == "subalgebra");
  CHECK(rep.violations[1].gens.empty());  // the empty subalgebra escapes
  CHECK(rep.violations[1].witness.size() == 0);
  CHECK(generated_subalgebra(rep.violations[1].inputs[0], rep.violations[1].gens)
            .algebra == rep.violations[1].witness);

  CHECK(rep.violations[2].kind == "epi_image");
  CHECK(rep.violations[3].kind == "split_epi_image");
  for (int v : {2, 3}) {
    REQUIRE(rep.violations[v].cong.has_value());
    CHECK(quotient(rep.violations[v].inputs[0], *rep.violations[v].cong).algebra ==
          rep.violations[v].witness);
    CHECK(rep.violations[v].witness.size() == 1);
  }

  auto split_only =
      closure_check(std::vector<FuzzyAlgebra>{two}, ClosureMode::HSP_split);
  CHECK_FALSE(split_only.epi_images.has_value());
  CHECK_FALSE(split_only.split_epi_images);
  CHECK(split_only.violations.size() == 3);

  auto empty = closure_check(std::vector<FuzzyAlgebra>{}, ClosureMode::HSP_epi);
  CHECK(empty.all_closed());
  CHECK(empty.violations.empty());
}

TEST_CASE("semigroup models are closed under the constructions") {
  auto fr = fr2();
  Theory sg = presets::semigroup_theory(fr);
  auto member = [&](const FuzzyAlgebra& a) { return is_model(a, sg).ok; };

  auto rep = closure_check(fr, sg.lang, member, 2, ClosureMode::HSP_epi);
  CHECK(rep.family.size() > 5);
  REQUIRE(rep.epi_images.has_value());
  CHECK(*rep.epi_images);
  CHECK(rep.all_closed());
  CHECK(rep.violations.empty());
}

TEST_CASE("left ideal models survive split images but not every quotient") {
  auto fr = fr2();
  Theory li = presets::left_ideal_theory(fr);
  auto member = [&](const FuzzyAlgebra& a) { return is_model(a, li).ok; };

  auto split = closure_check(fr, li.lang, member, 2, ClosureMode::HSP_split);
  CHECK_FALSE(split.epi_images.has_value());
  CHECK(split.all_closed());
  CHECK(split.violations.empty());

  auto epi = closure_check(fr, li.lang, member, 2, ClosureMode::HSP_epi);
  REQUIRE(epi.epi_images.has_value());
  CHECK_FALSE(*epi.epi_images);      // raising a level can break the ideal law
  CHECK(epi.split_epi_images);       // but split images never do
  CHECK(epi.products);
  CHECK(epi.strong_subalgebras);
  REQUIRE(epi.violations.size() == 1);

  const auto& v = epi.violations[0];
  CHECK(v.kind == "epi_image");
  REQUIRE(v.cong.has_value());
  auto qr = quotient(v.inputs[0], *v.cong);
  CHECK(qr.algebra == v.witness);
  CHECK_FALSE(is_model(qr.algebra, li).ok);
  CHECK_FALSE(classify_morphism(qr.projection).split_epi);

  try {
    closure_check(fr, li.lang, member, 9, ClosureMode::HSP_epi);
    FAIL("oversized bound accepted");
  } catch (const Error& err) {
    CHECK(err.kind == ErrorKind::SizeBoundExceeded);
  }
  try {
    closure_check(fr, li.lang, member, -1, ClosureMode::HSP_epi);
    FAIL("negative bound accepted");
  } catch (const Error& err) {
    CHECK(err.kind == ErrorKind::BadInput);
  }
}
