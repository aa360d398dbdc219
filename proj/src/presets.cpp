#include "fuzzalg/presets.hpp"

namespace fuzzalg::presets {

namespace {

Term v(const char* n) { return Term::var(n); }
Term mul(Term a, Term b) { return Term::app("mul", {std::move(a), std::move(b)}); }
Term inv(Term a) { return Term::app("inv", {std::move(a)}); }

int locate(const Theory& th, const Sequent& s) {
  auto idx = th.find_axiom(s);
  if (!idx)
    fail(ErrorKind::BadInput,
         "theory '" + th.name + "' lacks the axiom " + s.str(*th.frame));
  return *idx;
}

}  // namespace

Language semigroup_lang() {
  Language l;
  l.sig.ops = {{"mul", 2}};
  l.vars = {"x", "y", "z"};
  return l;
}

Language group_lang() {
  Language l;
  l.sig.ops = {{"mul", 2}, {"inv", 1}};
  l.sig.consts = {"e"};
  l.vars = {"x", "y", "z"};
  return l;
}

Theory semigroup_theory(FramePtr fr) {
  Theory th;
  th.name = "semigroup";
  th.frame = std::move(fr);
  th.lang = semigroup_lang();
  Term x = v("x"), y = v("y"), z = v("z");
  th.axioms.push_back(
      Sequent({}, Formula::eq(mul(mul(x, y), z), mul(x, mul(y, z)))));
  th.validate();
  return th;
}

Theory left_ideal_theory(FramePtr fr) {
  Theory th = semigroup_theory(std::move(fr));
  th.name = "left_ideal";
  Term x = v("x"), y = v("y");
  for (auto l : th.frame->elements())
    th.axioms.push_back(
        Sequent({Formula::mem(l, y)}, Formula::mem(l, mul(x, y))));
  th.validate();
  return th;
}

Theory right_ideal_theory(FramePtr fr) {
  Theory th = semigroup_theory(std::move(fr));
  th.name = "right_ideal";
  Term x = v("x"), y = v("y");
  for (auto l : th.frame->elements())
    th.axioms.push_back(
        Sequent({Formula::mem(l, x)}, Formula::mem(l, mul(x, y))));
  th.validate();
  return th;
}

Theory ideal_theory(FramePtr fr) {
  Theory th = left_ideal_theory(std::move(fr));
  th.name = "ideal";
  Term x = v("x"), y = v("y");
  for (auto l : th.frame->elements())
    th.axioms.push_back(
        Sequent({Formula::mem(l, x)}, Formula::mem(l, mul(x, y))));
  th.validate();
  return th;
}

Theory group_theory(FramePtr fr) {
  Theory th;
  th.name = "group";
  th.frame = std::move(fr);
  th.lang = group_lang();
  Term x = v("x"), y = v("y"), z = v("z"), e = Term::cnst("e");
  th.axioms.push_back(Sequent({}, Formula::eq(mul(x, inv(x)), e)));
  th.axioms.push_back(Sequent({}, Formula::eq(mul(inv(x), x), e)));
  th.axioms.push_back(Sequent({}, Formula::eq(mul(e, x), x)));
  th.axioms.push_back(Sequent({}, Formula::eq(mul(x, e), x)));
  th.axioms.push_back(
      Sequent({}, Formula::eq(mul(mul(x, y), z), mul(x, mul(y, z)))));
  th.validate();
  return th;
}

Theory idempotent_group_theory(FramePtr fr) {
  Theory th = group_theory(std::move(fr));
  th.name = "idempotent_group";
  Term x = v("x");
  th.axioms[3] = Sequent({}, Formula::eq(mul(x, x), x));
  th.validate();
  return th;
}

Theory normal_group_theory(FramePtr fr) {
  Theory th = group_theory(std::move(fr));
  th.name = "normal_group";
  Term x = v("x"), y = v("y");
  for (auto l : th.frame->elements())
    th.axioms.push_back(Sequent({Formula::mem(l, x)},
                                Formula::mem(l, mul(y, mul(x, inv(y))))));
  th.validate();
  return th;
}

Derivation derive_unit_existence(const Theory& th, FrameElem l) {
  Term x = v("x"), e = Term::cnst("e");
  int ax0 = locate(th, Sequent({}, Formula::eq(mul(x, inv(x)), e)));
  Formula mem_x = Formula::mem(l, x);

  auto cancel = build::weak(build::axiom(th, ax0), {mem_x});
  auto have_x = build::assume({mem_x}, mem_x);
  auto have_inv = build::exp("inv", {have_x});
  auto have_prod = build::exp("mul", {have_x, have_inv});
  return build::fun(cancel, have_prod);
}

Derivation derive_conjugation_reflection(const Theory& th, FrameElem l) {
  Term x = v("x"), y = v("y"), e = Term::cnst("e");
  Term I = inv(y), II = inv(inv(y));
  Term U = mul(I, mul(x, y));        // conjugate of x by the inverse
  Term W = mul(mul(x, y), I);
  Term V = mul(y, mul(U, I));        // normality image of U
  Term Up = mul(II, mul(x, I));      // U with y replaced by inv(y)
  Term T = mul(y, mul(x, I));        // the conjugate named in the conclusion

  int ax_rinv = locate(th, Sequent({}, Formula::eq(mul(x, inv(x)), e)));
  int ax_lunit = locate(th, Sequent({}, Formula::eq(mul(e, x), x)));
  int ax_runit = locate(th, Sequent({}, Formula::eq(mul(x, e), x)));
  int ax_assoc = locate(
      th, Sequent({}, Formula::eq(mul(mul(x, y), v("z")), mul(x, mul(y, v("z"))))));
  int ax_norm = locate(th, Sequent({Formula::mem(l, x)},
                                   Formula::mem(l, mul(y, mul(x, I)))));

  auto ax = [&](int idx, Substitution s) {
    Derivation d = build::axiom(th, idx);
    return s.empty() ? d : build::sub(d, std::move(s));
  };
  auto chain = [](std::vector<Derivation> eqs) {
    Derivation acc = eqs.front();
    for (size_t k = 1; k < eqs.size(); ++k)
      acc = build::trans(acc, eqs[k]);
    return acc;
  };

  // |- V == x : unfold the double conjugation with both cancellation laws
  auto v_eq_x = chain({
      build::cong("mul", {build::refl({}, y),
                          ax(ax_assoc, {{"x", I}, {"y", mul(x, y)}, {"z", I}})}),
      build::sym(ax(ax_assoc, {{"x", y}, {"y", I}, {"z", W}})),
      build::cong("mul", {ax(ax_rinv, {{"x", y}}), build::refl({}, W)}),
      ax(ax_lunit, {{"x", W}}),
      ax(ax_assoc, {{"z", I}}),
      build::cong("mul", {build::refl({}, x), ax(ax_rinv, {{"x", y}})}),
      ax(ax_runit, {}),
  });

  // |- y == inv(inv(y))
  auto y_eq_ii = chain({
      build::sym(ax(ax_runit, {{"x", y}})),
      build::cong("mul", {build::refl({}, y), build::sym(ax(ax_rinv, {{"x", I}}))}),
      build::sym(ax(ax_assoc, {{"x", y}, {"y", I}, {"z", II}})),
      build::cong("mul", {ax(ax_rinv, {{"x", y}}), build::refl({}, II)}),
      ax(ax_lunit, {{"x", II}}),
  });

  // {mem l U} |- mem l x
  Formula mem_u = Formula::mem(l, U);
  auto inner = build::fun(build::weak(v_eq_x, {mem_u}),
                          build::sub(build::axiom(th, ax_norm), {{"x", U}}));

  // substitute y -> inv(y), then cut against  {mem l T} |- mem l Up
  auto outer = build::sub(inner, {{"y", I}});
  auto t_eq_up = build::cong("mul", {y_eq_ii, build::refl({}, mul(x, I))});
  Formula mem_t = Formula::mem(l, T);
  auto have_up = build::fun(build::weak(t_eq_up, {mem_t}),
                            build::assume({mem_t}, mem_t));
  return build::cut({have_up}, outer);
}

}  // namespace fuzzalg::presets
