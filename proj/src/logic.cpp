#include "fuzzalg/logic.hpp"

#include <algorithm>

namespace fuzzalg {

Formula Formula::eq(Term s, Term t) {
  Formula f{Kind::Eq, std::move(s), std::move(t), {}};
  return f;
}

Formula Formula::mem(FrameElem l, Term t) {
  if (!l.owner) fail(ErrorKind::BadInput, "membership level has no frame");
  Formula f{Kind::Mem, std::move(t), {}, l};
  return f;
}

bool Formula::operator==(const Formula& o) const {
  if (kind != o.kind) return false;
  if (kind == Kind::Eq) return lhs == o.lhs && rhs == o.rhs;
  return level == o.level && lhs == o.lhs;
}

bool Formula::operator<(const Formula& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (kind == Kind::Eq) {
    if (int c = compare(lhs, o.lhs); c != 0) return c < 0;
    return compare(rhs, o.rhs) < 0;
  }
  if (level != o.level) return level < o.level;
  return compare(lhs, o.lhs) < 0;
}

std::set<std::string> Formula::variables() const {
  auto out = lhs.variables();
  if (kind == Kind::Eq)
    for (auto& v : rhs.variables()) out.insert(v);
  return out;
}

std::string Formula::str(const Frame& frame) const {
  if (kind == Kind::Eq) return lhs.str() + " == " + rhs.str();
  return "mem " + frame.elem_name(level) + " " + lhs.str();
}

Formula apply_subst(const Formula& f, const Substitution& s) {
  if (f.kind == Formula::Kind::Eq)
    return Formula::eq(apply_subst(f.lhs, s), apply_subst(f.rhs, s));
  return Formula::mem(f.level, apply_subst(f.lhs, s));
}

Sequent::Sequent(std::vector<Formula> prem, Formula concl)
    : premises(std::move(prem)), conclusion(std::move(concl)) {
  std::sort(premises.begin(), premises.end());
  premises.erase(std::unique(premises.begin(), premises.end()), premises.end());
}

bool Sequent::has_premise(const Formula& f) const {
  return std::binary_search(premises.begin(), premises.end(), f);
}

bool Sequent::operator==(const Sequent& o) const {
  return conclusion == o.conclusion && premises == o.premises;
}

bool Sequent::operator<(const Sequent& o) const {
  if (conclusion != o.conclusion) return conclusion < o.conclusion;
  return std::lexicographical_compare(premises.begin(), premises.end(),
                                      o.premises.begin(), o.premises.end());
}

std::set<std::string> Sequent::variables() const {
  auto out = conclusion.variables();
  for (const auto& p : premises)
    for (auto& v : p.variables()) out.insert(v);
  return out;
}

std::string Sequent::str(const Frame& frame) const {
  std::string out;
  if (!premises.empty()) {
    out += "[";
    for (size_t i = 0; i < premises.size(); ++i) {
      if (i) out += ", ";
      out += premises[i].str(frame);
    }
    out += "] ";
  }
  return out + "|- " + conclusion.str(frame);
}

Sequent apply_subst(const Sequent& s, const Substitution& sub) {
  std::vector<Formula> prem;
  prem.reserve(s.premises.size());
  for (const auto& p : s.premises) prem.push_back(apply_subst(p, sub));
  return Sequent(std::move(prem), apply_subst(s.conclusion, sub));
}

std::vector<Formula> premise_union(const std::vector<Formula>& a,
                                   const std::vector<Formula>& b) {
  std::vector<Formula> out = a;
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<FrameElem> FuzzySet::find(const std::string& name) const {
  for (const auto& [n, l] : elems)
    if (n == name) return l;
  return std::nullopt;
}

std::vector<std::string> FuzzySet::support(const Frame& frame) const {
  std::vector<std::string> out;
  for (const auto& [n, l] : elems)
    if (!(l == frame.bot())) out.push_back(n);
  return out;
}

namespace {

void check_formula(const Theory& th, const Formula& f) {
  f.lhs.check_in(th.lang);
  if (f.kind == Formula::Kind::Eq)
    f.rhs.check_in(th.lang);
  else if (f.level.owner != th.frame.get())
    fail(ErrorKind::FrameMismatch, "membership level from a different frame");
}

}  // namespace

void Theory::validate() const {
  if (!frame) fail(ErrorKind::BadInput, "theory has no frame");
  lang.validate();
  for (const auto& ax : axioms) {
    check_formula(*this, ax.conclusion);
    for (const auto& p : ax.premises) check_formula(*this, p);
  }
}

std::optional<int> Theory::find_axiom(const Sequent& s) const {
  for (size_t i = 0; i < axioms.size(); ++i)
    if (axioms[i] == s) return static_cast<int>(i);
  return std::nullopt;
}

const char* to_string(TheoryClass c) {
  switch (c) {
    case TheoryClass::Unconditional: return "unconditional";
    case TheoryClass::TypeE: return "type_E";
    case TheoryClass::Basic: return "basic";
    case TheoryClass::General: return "general";
  }
  return "?";
}

ClassifyResult classify_theory(const Theory& th) {
  ClassifyResult r{TheoryClass::Unconditional};
  auto var_only = [](const Term& t) { return t.kind() == TermKind::Var; };
  for (size_t i = 0; i < th.axioms.size(); ++i) {
    const auto& ax = th.axioms[i];
    if (ax.premises.empty()) continue;
    if (r.first_not_unconditional < 0) r.first_not_unconditional = static_cast<int>(i);
    for (const auto& p : ax.premises) {
      bool type_e = p.kind == Formula::Kind::Mem && var_only(p.lhs);
      bool basic = type_e || (p.kind == Formula::Kind::Eq && var_only(p.lhs) &&
                              var_only(p.rhs));
      if (!type_e && r.first_not_type_e < 0) r.first_not_type_e = static_cast<int>(i);
      if (!basic && r.first_not_basic < 0) r.first_not_basic = static_cast<int>(i);
    }
  }
  if (r.first_not_unconditional < 0) r.cls = TheoryClass::Unconditional;
  else if (r.first_not_type_e < 0) r.cls = TheoryClass::TypeE;
  else if (r.first_not_basic < 0) r.cls = TheoryClass::Basic;
  else r.cls = TheoryClass::General;
  return r;
}

Formula map_formula(const LanguageMorphism& F, const Formula& f) {
  if (f.kind == Formula::Kind::Eq)
    return Formula::eq(F.map_term(f.lhs), F.map_term(f.rhs));
  return Formula::mem(f.level, F.map_term(f.lhs));
}

Sequent map_sequent(const LanguageMorphism& F, const Sequent& s) {
  std::vector<Formula> prem;
  for (const auto& p : s.premises) prem.push_back(map_formula(F, p));
  return Sequent(std::move(prem), map_formula(F, s.conclusion));
}

Theory transport_theory_fwd(const Theory& th, const LanguageMorphism& F) {
  F.validate();
  if (F.source != th.lang)
    fail(ErrorKind::SignatureMismatch, "morphism source differs from theory language");
  Theory out{th.name + "_fwd", th.frame, F.target, {}};
  for (const auto& ax : th.axioms) {
    Sequent img = map_sequent(F, ax);
    if (!out.find_axiom(img)) out.axioms.push_back(std::move(img));
  }
  return out;
}

namespace {

std::vector<Formula> formula_preimages(const LanguageMorphism& F, const Formula& f) {
  std::vector<Formula> out;
  if (f.kind == Formula::Kind::Eq) {
    for (const auto& l : F.term_preimages(f.lhs))
      for (const auto& r : F.term_preimages(f.rhs)) out.push_back(Formula::eq(l, r));
  } else {
    for (const auto& t : F.term_preimages(f.lhs))
      out.push_back(Formula::mem(f.level, t));
  }
  return out;
}

}  // namespace

std::vector<Sequent> sequent_preimages(const LanguageMorphism& F, const Sequent& s) {
  std::vector<Sequent> out;
  std::vector<Formula> pool;
  for (const auto& p : s.premises)
    for (auto& q : formula_preimages(F, p)) pool.push_back(q);
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  if (pool.size() > 20)
    fail(ErrorKind::SizeBoundExceeded,
         "premise preimage pool too large (" + std::to_string(pool.size()) + ")");

  auto concls = formula_preimages(F, s.conclusion);
  // every subset of the pool whose image is exactly the premise set
  const size_t k = pool.size();
  for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
    std::vector<Formula> prem;
    for (size_t i = 0; i < k; ++i)
      if (mask & (size_t{1} << i)) prem.push_back(pool[i]);
    std::vector<Formula> image;
    for (const auto& p : prem) image.push_back(map_formula(F, p));
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    if (image != s.premises) continue;
    for (const auto& c : concls) out.push_back(Sequent(prem, c));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Theory transport_theory_bwd(const Theory& th, const LanguageMorphism& F) {
  F.validate();
  if (F.target != th.lang)
    fail(ErrorKind::SignatureMismatch, "morphism target differs from theory language");
  Theory out{th.name + "_bwd", th.frame, F.source, {}};
  for (const auto& ax : th.axioms)
    for (auto& pre : sequent_preimages(F, ax))
      if (!out.find_axiom(pre)) out.axioms.push_back(std::move(pre));
  return out;
}

Theory extend_with_formulas(const Theory& th, const std::vector<Formula>& gamma) {
  Theory out = th;
  for (const auto& f : gamma) {
    check_formula(th, f);
    Sequent ax({}, f);
    if (!out.find_axiom(ax)) out.axioms.push_back(std::move(ax));
  }
  return out;
}

Theory extend_with_fuzzy_set(const Theory& th, const FuzzySet& m) {
  Theory out = th;
  for (const auto& [name, level] : m.elems) {
    if (level.owner != th.frame.get())
      fail(ErrorKind::FrameMismatch, "level of '" + name + "' from a different frame");
    if (th.lang.sig.ops.count(name) || th.lang.sig.consts.count(name) ||
        th.lang.has_var(name) || out.lang.sig.consts.count(name))
      fail(ErrorKind::NameClash, "fresh constant '" + name + "' clashes");
    out.lang.sig.consts.insert(name);
    out.axioms.push_back(Sequent({}, Formula::mem(level, Term::cnst(name))));
  }
  return out;
}

}  // namespace fuzzalg
