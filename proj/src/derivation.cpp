#include "fuzzalg/derivation.hpp"

#include <algorithm>
#include <unordered_set>

namespace fuzzalg {

const char* to_string(Rule r) {
  switch (r) {
    case Rule::A: return "A";
    case Rule::Weak: return "Weak";
    case Rule::Cut: return "Cut";
    case Rule::Refl: return "Refl";
    case Rule::Sym: return "Sym";
    case Rule::Trans: return "Trans";
    case Rule::Sub: return "Sub";
    case Rule::Cong: return "Cong";
    case Rule::Inf: return "Inf";
    case Rule::Mon: return "Mon";
    case Rule::Exp: return "Exp";
    case Rule::Sup: return "Sup";
    case Rule::Fun: return "Fun";
    case Rule::Axiom: return "Axiom";
  }
  return "?";
}

const Sequent& Derivation::conclusion() const { return node_->conclusion; }

int Derivation::node_count() const {
  std::unordered_set<const DerivNode*> seen;
  int n = 0;
  auto walk = [&](auto&& self, const DerivNode* p) -> void {
    if (!seen.insert(p).second) return;
    ++n;
    for (const auto& q : p->premises) self(self, q.ptr());
  };
  walk(walk, node_.get());
  return n;
}

bool Derivation::uses_rule(Rule r) const {
  std::unordered_set<const DerivNode*> seen;
  auto walk = [&](auto&& self, const DerivNode* p) -> bool {
    if (!seen.insert(p).second) return false;
    if (p->rule == r) return true;
    for (const auto& q : p->premises)
      if (self(self, q.ptr())) return true;
    return false;
  };
  return walk(walk, node_.get());
}

namespace build {

namespace {

Derivation mk(DerivNode n) {
  return Derivation(std::make_shared<const DerivNode>(std::move(n)));
}

const Formula& want_eq(const Derivation& d, const char* who) {
  const Formula& f = d.conclusion().conclusion;
  if (!f.is_eq()) fail(ErrorKind::BadInput, std::string(who) + " expects an equation premise");
  return f;
}

const Formula& want_mem(const Derivation& d, const char* who) {
  const Formula& f = d.conclusion().conclusion;
  if (f.is_eq()) fail(ErrorKind::BadInput, std::string(who) + " expects a membership premise");
  return f;
}

}  // namespace

Derivation axiom(const Theory& th, int index) {
  if (index < 0 || index >= static_cast<int>(th.axioms.size()))
    fail(ErrorKind::BadInput, "axiom index out of range");
  DerivNode n{Rule::Axiom, th.axioms[index], {}};
  n.axiom_index = index;
  return mk(std::move(n));
}

Derivation assume(std::vector<Formula> gamma, Formula phi) {
  Sequent s(std::move(gamma), phi);
  if (!s.has_premise(phi))
    fail(ErrorKind::BadInput, "assumed formula not among the premises");
  return mk(DerivNode{Rule::A, std::move(s), {}});
}

Derivation weak(Derivation d, std::vector<Formula> delta) {
  Sequent concl(premise_union(d.conclusion().premises, delta),
                d.conclusion().conclusion);
  DerivNode n{Rule::Weak, std::move(concl), {std::move(d)}};
  n.formulas = std::move(delta);
  std::sort(n.formulas.begin(), n.formulas.end());
  n.formulas.erase(std::unique(n.formulas.begin(), n.formulas.end()),
                   n.formulas.end());
  return mk(std::move(n));
}

Derivation cut(std::vector<Derivation> gamma_proofs, Derivation main) {
  const auto& phi = main.conclusion().premises;
  if (gamma_proofs.size() != phi.size())
    fail(ErrorKind::BadInput, "cut needs one derivation per cut formula");
  std::vector<Formula> gamma =
      gamma_proofs.empty() ? std::vector<Formula>{} : gamma_proofs[0].conclusion().premises;
  for (size_t i = 0; i < phi.size(); ++i) {
    if (gamma_proofs[i].conclusion().premises != gamma)
      fail(ErrorKind::BadInput, "cut premises disagree on the context");
    if (!(gamma_proofs[i].conclusion().conclusion == phi[i]))
      fail(ErrorKind::BadInput, "cut premise does not match its cut formula");
  }
  Sequent concl(gamma, main.conclusion().conclusion);
  DerivNode n{Rule::Cut, std::move(concl), {}};
  n.formulas = phi;
  n.premises = std::move(gamma_proofs);
  n.premises.push_back(std::move(main));
  return mk(std::move(n));
}

Derivation refl(std::vector<Formula> gamma, Term s) {
  Sequent concl(std::move(gamma), Formula::eq(s, s));
  return mk(DerivNode{Rule::Refl, std::move(concl), {}});
}

Derivation sym(Derivation d) {
  const Formula& f = want_eq(d, "sym");
  Sequent concl(d.conclusion().premises, Formula::eq(f.rhs, f.lhs));
  return mk(DerivNode{Rule::Sym, std::move(concl), {std::move(d)}});
}

Derivation trans(Derivation st, Derivation tu) {
  const Formula& f1 = want_eq(st, "trans");
  const Formula& f2 = want_eq(tu, "trans");
  if (!(f1.rhs == f2.lhs))
    fail(ErrorKind::BadInput, "trans premises do not chain: " + f1.rhs.str() +
                                  " vs " + f2.lhs.str());
  if (st.conclusion().premises != tu.conclusion().premises)
    fail(ErrorKind::BadInput, "trans premises disagree on the context");
  Sequent concl(st.conclusion().premises, Formula::eq(f1.lhs, f2.rhs));
  return mk(DerivNode{Rule::Trans, std::move(concl), {std::move(st), std::move(tu)}});
}

Derivation sub(Derivation d, Substitution sigma) {
  Sequent concl = apply_subst(d.conclusion(), sigma);
  DerivNode n{Rule::Sub, std::move(concl), {std::move(d)}};
  n.subst = std::move(sigma);
  return mk(std::move(n));
}

Derivation cong(const std::string& op, std::vector<Derivation> eqs) {
  if (eqs.empty()) fail(ErrorKind::BadInput, "cong needs at least one premise");
  TermVec lhs, rhs;
  for (const auto& d : eqs) {
    const Formula& f = want_eq(d, "cong");
    lhs.push_back(f.lhs);
    rhs.push_back(f.rhs);
    if (d.conclusion().premises != eqs[0].conclusion().premises)
      fail(ErrorKind::BadInput, "cong premises disagree on the context");
  }
  Sequent concl(eqs[0].conclusion().premises,
                Formula::eq(Term::app(op, lhs), Term::app(op, rhs)));
  DerivNode n{Rule::Cong, std::move(concl), std::move(eqs)};
  n.op = op;
  return mk(std::move(n));
}

Derivation inf(const Frame& frame, std::vector<Formula> gamma, Term t) {
  Sequent concl(std::move(gamma), Formula::mem(frame.bot(), std::move(t)));
  return mk(DerivNode{Rule::Inf, std::move(concl), {}});
}

Derivation mon(Derivation d, FrameElem l) {
  const Formula& f = want_mem(d, "mon");
  const Frame* fr = f.level.owner;
  if (l.owner != fr) fail(ErrorKind::FrameMismatch, "mon level from a different frame");
  Sequent concl(d.conclusion().premises, Formula::mem(fr->meet(f.level, l), f.lhs));
  DerivNode n{Rule::Mon, std::move(concl), {std::move(d)}};
  n.level = l;
  return mk(std::move(n));
}

Derivation exp(const std::string& op, std::vector<Derivation> mems) {
  if (mems.empty()) fail(ErrorKind::BadInput, "exp needs at least one premise");
  TermVec args;
  const Frame* fr = nullptr;
  FrameElem lvl{};
  for (const auto& d : mems) {
    const Formula& f = want_mem(d, "exp");
    if (!fr) {
      fr = f.level.owner;
      lvl = f.level;
    } else {
      lvl = fr->meet(lvl, f.level);
    }
    args.push_back(f.lhs);
    if (d.conclusion().premises != mems[0].conclusion().premises)
      fail(ErrorKind::BadInput, "exp premises disagree on the context");
  }
  Sequent concl(mems[0].conclusion().premises,
                Formula::mem(lvl, Term::app(op, std::move(args))));
  DerivNode n{Rule::Exp, std::move(concl), std::move(mems)};
  n.op = op;
  return mk(std::move(n));
}

Derivation sup(std::vector<Derivation> mems) {
  if (mems.empty()) fail(ErrorKind::BadInput, "sup needs at least one premise");
  std::vector<FrameElem> s;
  const Frame* fr = nullptr;
  Term t;
  for (const auto& d : mems) {
    const Formula& f = want_mem(d, "sup");
    if (!fr) {
      fr = f.level.owner;
      t = f.lhs;
    } else if (!(f.lhs == t)) {
      fail(ErrorKind::BadInput, "sup premises talk about different terms");
    }
    if (d.conclusion().premises != mems[0].conclusion().premises)
      fail(ErrorKind::BadInput, "sup premises disagree on the context");
    s.push_back(f.level);
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  // premises in the order of S
  std::sort(mems.begin(), mems.end(), [](const Derivation& a, const Derivation& b) {
    return a.conclusion().conclusion.level < b.conclusion().conclusion.level;
  });
  std::vector<Derivation> prem;
  for (auto l : s) {
    for (const auto& d : mems)
      if (d.conclusion().conclusion.level == l) {
        prem.push_back(d);
        break;
      }
  }
  Sequent concl(mems[0].conclusion().premises, Formula::mem(fr->sup(s), t));
  DerivNode n{Rule::Sup, std::move(concl), std::move(prem)};
  n.levels = std::move(s);
  return mk(std::move(n));
}

Derivation fun(Derivation eq, Derivation mem) {
  const Formula& fe = want_eq(eq, "fun");
  const Formula& fm = want_mem(mem, "fun");
  if (!(fm.lhs == fe.lhs))
    fail(ErrorKind::BadInput, "fun membership premise is not about the equation's left side");
  if (eq.conclusion().premises != mem.conclusion().premises)
    fail(ErrorKind::BadInput, "fun premises disagree on the context");
  Sequent concl(eq.conclusion().premises, Formula::mem(fm.level, fe.rhs));
  return mk(DerivNode{Rule::Fun, std::move(concl), {std::move(eq), std::move(mem)}});
}

}  // namespace build

}  // namespace fuzzalg
