#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <set>
#include <string>

#include "fuzzalg/syntax.hpp"
#include "support.hpp"

using namespace fuzzalg;
using testsup::group_lang;

TEST_CASE("signature and language validation") {
  Signature s;
  s.ops = {{"mul", 2}};
  s.consts = {"e"};
  s.validate();

  Signature bad_arity;
  bad_arity.ops = {{"f", 0}};
  CHECK_THROWS_AS(bad_arity.validate(), Error);

  Signature clash;
  clash.ops = {{"e", 1}};
  clash.consts = {"e"};
  try {
    clash.validate();
    FAIL("expected NameClash");
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::NameClash);
  }

  Language l;
  l.sig = s;
  l.vars = {"x", "mul"};  // variable shadowing an op
  CHECK_THROWS_AS(l.validate(), Error);
}

TEST_CASE("term construction and accessors") {
  auto lang = group_lang();
  Term t = parse_term(lang, "mul(x, inv(x))");
  CHECK(t.kind() == TermKind::App);
  CHECK(t.name() == "mul");
  REQUIRE(t.args().size() == 2);
  CHECK(t.args()[0].kind() == TermKind::Var);
  CHECK(t.args()[1].name() == "inv");
  CHECK(t.depth() == 2);
  CHECK(t.size() == 4);
  CHECK(t.variables() == std::set<std::string>{"x"});
  CHECK_FALSE(t.is_ground());
  CHECK(parse_term(lang, "e").depth() == 0);
  CHECK(parse_term(lang, "mul(e, e)").is_ground());
}

TEST_CASE("parse errors carry the right kinds") {
  auto lang = group_lang();
  try {
    parse_term(lang, "inv(x, y)");
    FAIL("expected ArityMismatch");
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::ArityMismatch);
    CHECK(std::string(e.what()).find("inv") != std::string::npos);
  }
  try {
    parse_term(lang, "mul(x, w)");
    FAIL("expected UnknownName");
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::UnknownName);
  }
  CHECK_THROWS_AS(parse_term(lang, "mul(x,"), Error);
  CHECK_THROWS_AS(parse_term(lang, ""), Error);
  CHECK_THROWS_AS(parse_term(lang, "mul(x, y) z"), Error);
}

TEST_CASE("print parse round-trip") {
  auto lang = group_lang();
  testsup::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    Term t = testsup::random_term(lang, rng, 4);
    CHECK(parse_term(lang, t.str()) == t);
  }
}

TEST_CASE("substitution base cases") {
  auto lang = group_lang();
  Term x = Term::var("x");
  Substitution s = {{"x", parse_term(lang, "mul(y, z)")}};
  CHECK(apply_subst(x, s) == parse_term(lang, "mul(y, z)"));
  CHECK(apply_subst(parse_term(lang, "mul(x, x)"), {{"x", Term::cnst("e")}}) ==
        parse_term(lang, "mul(e, e)"));
  CHECK(apply_subst(Term::cnst("e"), {{"x", Term::var("y")}}) == Term::cnst("e"));
  CHECK(apply_subst(Term::var("y"), s) == Term::var("y"));
}

TEST_CASE("substitution composition law") {
  auto lang = group_lang();
  testsup::Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    Term t = testsup::random_term(lang, rng, 3);
    Substitution sg = testsup::random_subst(lang, rng);
    Substitution tu = testsup::random_subst(lang, rng);
    Substitution both = compose(sg, tu, t.variables());
    CHECK(apply_subst(apply_subst(t, sg), tu) == apply_subst(t, both));
  }
}

TEST_CASE("term order is total and size-first") {
  auto lang = group_lang();
  Term a = parse_term(lang, "e");
  Term b = parse_term(lang, "inv(x)");
  Term c = parse_term(lang, "mul(x, y)");
  CHECK(a < b);
  CHECK(b < c);  // same size 3? inv(x) has size 2, mul(x,y) size 3
  CHECK_FALSE(a < a);
  testsup::Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    Term t = testsup::random_term(lang, rng, 3);
    Term u = testsup::random_term(lang, rng, 3);
    int lt = (t < u) + (u < t);
    CHECK(lt == (t == u ? 0 : 1));
    if (t.size() < u.size()) CHECK(t < u);
  }
}

TEST_CASE("fresh variable generation") {
  auto lang = group_lang();
  auto f = lang.fresh_var();
  CHECK_FALSE(lang.has_var(f));
  CHECK_FALSE(lang.sig.ops.count(f));
  CHECK_FALSE(lang.sig.consts.count(f));
  Language l2 = lang;
  l2.vars.push_back("x0");
  CHECK(l2.fresh_var() != "x0");
}

TEST_CASE("check_in flags foreign symbols") {
  auto lang = group_lang();
  CHECK_NOTHROW(parse_term(lang, "mul(x, e)").check_in(lang));
  Term foreign = Term::app("star", {Term::var("x"), Term::var("x")});
  CHECK_THROWS_AS(foreign.check_in(lang), Error);
  Term undeclared = Term::var("w");
  CHECK_THROWS_AS(undeclared.check_in(lang), Error);
}

TEST_CASE("language morphism identity and renaming") {
  auto lang = group_lang();
  auto id = LanguageMorphism::identity(lang);
  testsup::Rng rng(19);
  for (int i = 0; i < 50; ++i) {
    Term t = testsup::random_term(lang, rng, 3);
    CHECK(id.map_term(t) == t);
  }

  Language star_lang;
  star_lang.sig.ops = {{"star", 2}, {"flip", 1}};
  star_lang.sig.consts = {"u"};
  star_lang.vars = {"a", "b", "c"};
  LanguageMorphism f;
  f.source = lang;
  f.target = star_lang;
  f.op_map = {{"mul", "star"}, {"inv", "flip"}};
  f.const_map = {{"e", "u"}};
  f.var_map = {{"x", "a"}, {"y", "b"}, {"z", "c"}};
  f.validate();
  CHECK(f.map_term(parse_term(lang, "mul(x, inv(e))")) ==
        parse_term(star_lang, "star(a, flip(u))"));
}

TEST_CASE("morphism composition equals mapping twice") {
  auto lang = group_lang();
  Language mid;
  mid.sig.ops = {{"m", 2}, {"i", 1}};
  mid.sig.consts = {"one"};
  mid.vars = {"p", "q", "r"};
  Language out;
  out.sig.ops = {{"M", 2}, {"I", 1}};
  out.sig.consts = {"One"};
  out.vars = {"P", "Q", "R"};

  LanguageMorphism f{lang, mid, {{"mul", "m"}, {"inv", "i"}}, {{"e", "one"}},
                     {{"x", "p"}, {"y", "q"}, {"z", "r"}}};
  LanguageMorphism g{mid, out, {{"m", "M"}, {"i", "I"}}, {{"one", "One"}},
                     {{"p", "P"}, {"q", "Q"}, {"r", "R"}}};
  f.validate();
  g.validate();

  LanguageMorphism fg;
  fg.source = lang;
  fg.target = out;
  for (const auto& [k, v] : f.op_map) fg.op_map[k] = g.op_map.at(v);
  for (const auto& [k, v] : f.const_map) fg.const_map[k] = g.const_map.at(v);
  for (const auto& [k, v] : f.var_map) fg.var_map[k] = g.var_map.at(v);
  fg.validate();

  testsup::Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    Term t = testsup::random_term(lang, rng, 4);
    CHECK(g.map_term(f.map_term(t)) == fg.map_term(t));
  }
}

TEST_CASE("map_term commutes with substitution") {
  auto lang = group_lang();
  auto id = LanguageMorphism::identity(lang);
  Language tgt;
  tgt.sig.ops = {{"star", 2}, {"flip", 1}};
  tgt.sig.consts = {"u"};
  tgt.vars = {"a", "b", "c"};
  LanguageMorphism f{lang, tgt, {{"mul", "star"}, {"inv", "flip"}},
                     {{"e", "u"}}, {{"x", "a"}, {"y", "b"}, {"z", "c"}}};
  f.validate();

  testsup::Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    Term t = testsup::random_term(lang, rng, 3);
    Substitution s = testsup::random_subst(lang, rng);
    Substitution s_mapped;
    for (const auto& [v, img] : s) s_mapped[f.var_map.at(v)] = f.map_term(img);
    CHECK(f.map_term(apply_subst(t, s)) ==
          apply_subst(f.map_term(t), s_mapped));
  }
  (void)id;
}

TEST_CASE("morphism validation rejects arity changes") {
  auto lang = group_lang();
  Language tgt;
  tgt.sig.ops = {{"star", 2}};
  tgt.vars = {"a"};
  LanguageMorphism f{lang, tgt, {{"mul", "star"}, {"inv", "star"}}, {},
                     {{"x", "a"}, {"y", "a"}, {"z", "a"}}};
  // inv has arity 1 but star has arity 2
  CHECK_THROWS_AS(f.validate(), Error);
}

TEST_CASE("term preimages invert map_term") {
  auto lang = group_lang();
  // non-injective op map: two source ops collapse onto one target op
  Language src;
  src.sig.ops = {{"mul", 2}, {"add", 2}};
  src.sig.consts = {"e"};
  src.vars = {"x", "y"};
  Language tgt;
  tgt.sig.ops = {{"star", 2}};
  tgt.sig.consts = {"u"};
  tgt.vars = {"a"};
  LanguageMorphism f{src, tgt, {{"mul", "star"}, {"add", "star"}},
                     {{"e", "u"}}, {{"x", "a"}, {"y", "a"}}};
  f.validate();

  Term img = parse_term(tgt, "star(a, u)");
  auto pre = f.term_preimages(img);
  // two ops times two vars mapping to a
  CHECK(pre.size() == 4);
  for (const auto& p : pre) CHECK(f.map_term(p) == img);

  // no preimage when a target symbol is not in any map image
  Language tgt2 = tgt;
  tgt2.sig.consts.insert("w");
  LanguageMorphism g{src, tgt2, {{"mul", "star"}, {"add", "star"}},
                     {{"e", "u"}}, {{"x", "a"}, {"y", "a"}}};
  g.validate();
  CHECK(g.term_preimages(Term::cnst("w")).empty());
  CHECK(g.term_preimages(parse_term(tgt2, "star(w, a)")).empty());
}
