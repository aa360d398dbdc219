#include "fuzzalg/checker.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace fuzzalg {

std::string path_str(const NodePath& p) {
  std::string out = "root";
  for (int i : p) out += "." + std::to_string(i);
  return out;
}

namespace {

struct Checker {
  const Theory& th;
  const CheckOptions& opts;
  std::unordered_set<const DerivNode*> verified{};
  NodePath path{};
  CheckResult result{};

  bool fail_here(const DerivNode& n, std::string msg) {
    result.ok = false;
    result.error_path = path;
    result.error_rule = to_string(n.rule);
    result.message = std::move(msg);
    return false;
  }

  bool check_formula(const DerivNode& n, const Formula& f) {
    try {
      f.lhs.check_in(th.lang);
      if (f.is_eq())
        f.rhs.check_in(th.lang);
      else if (f.level.owner != th.frame.get())
        return fail_here(n, "membership level from a different frame");
    } catch (const Error& e) {
      return fail_here(n, e.what());
    }
    return true;
  }

  bool check_sequent(const DerivNode& n, const Sequent& s) {
    if (!check_formula(n, s.conclusion)) return false;
    for (const auto& p : s.premises)
      if (!check_formula(n, p)) return false;
    return true;
  }

  bool ctx_eq(const DerivNode& n, const Derivation& prem) {
    if (prem.conclusion().premises != n.conclusion.premises)
      return fail_here(n, "premise context differs from the conclusion context");
    return true;
  }

  bool want_arity(const DerivNode& n, size_t want) {
    if (n.premises.size() != want)
      return fail_here(n, std::string(to_string(n.rule)) + " expects " +
                              std::to_string(want) + " premises, got " +
                              std::to_string(n.premises.size()));
    return true;
  }

  bool visit(const Derivation& d) {
    const DerivNode& n = d.node();
    if (verified.count(d.ptr())) return true;
    for (size_t i = 0; i < n.premises.size(); ++i) {
      path.push_back(static_cast<int>(i));
      bool ok = visit(n.premises[i]);
      path.pop_back();
      if (!ok) return false;
    }
    if (!check_sequent(n, n.conclusion)) return false;
    if (!local(n)) return false;
    verified.insert(d.ptr());
    return true;
  }

  bool local(const DerivNode& n) {
    const Sequent& c = n.conclusion;
    const Formula& psi = c.conclusion;
    switch (n.rule) {
      case Rule::A:
        if (!want_arity(n, 0)) return false;
        if (!c.has_premise(psi))
          return fail_here(n, "conclusion formula is not among the premises");
        return true;

      case Rule::Axiom: {
        if (!want_arity(n, 0)) return false;
        if (n.axiom_index < 0 || n.axiom_index >= static_cast<int>(th.axioms.size()))
          return fail_here(n, "axiom index " + std::to_string(n.axiom_index) +
                                  " out of range");
        if (!(c == th.axioms[n.axiom_index]))
          return fail_here(n, "conclusion differs from axiom " +
                                  std::to_string(n.axiom_index));
        return true;
      }

      case Rule::Weak: {
        if (!want_arity(n, 1)) return false;
        for (const auto& f : n.formulas)
          if (!check_formula(n, f)) return false;
        const Sequent& p = n.premises[0].conclusion();
        if (!(psi == p.conclusion))
          return fail_here(n, "conclusion formula changed by weakening");
        if (c.premises != premise_union(p.premises, n.formulas))
          return fail_here(n, "conclusion context is not the premise context plus delta");
        return true;
      }

      case Rule::Cut: {
        std::vector<Formula> phi = n.formulas;
        std::sort(phi.begin(), phi.end());
        phi.erase(std::unique(phi.begin(), phi.end()), phi.end());
        if (phi.size() != n.formulas.size())
          return fail_here(n, "cut formula set not sorted and deduplicated");
        for (size_t i = 0; i < phi.size(); ++i)
          if (!(phi[i] == n.formulas[i]))
            return fail_here(n, "cut formula set not sorted and deduplicated");
        for (const auto& f : phi)
          if (!check_formula(n, f)) return false;
        if (!want_arity(n, phi.size() + 1)) return false;
        const Sequent& main = n.premises.back().conclusion();
        if (main.premises != phi)
          return fail_here(n, "last premise context differs from the cut formula set");
        if (!(main.conclusion == psi))
          return fail_here(n, "conclusion formula differs from the last premise");
        for (size_t i = 0; i < phi.size(); ++i) {
          const Sequent& p = n.premises[i].conclusion();
          if (p.premises != c.premises)
            return fail_here(n, "cut premise " + std::to_string(i) +
                                    " has the wrong context");
          if (!(p.conclusion == phi[i]))
            return fail_here(n, "cut premise " + std::to_string(i) +
                                    " does not derive its cut formula");
        }
        return true;
      }

      case Rule::Refl:
        if (!want_arity(n, 0)) return false;
        if (!psi.is_eq() || !(psi.lhs == psi.rhs))
          return fail_here(n, "conclusion is not a reflexive equation");
        return true;

      case Rule::Sym: {
        if (!want_arity(n, 1)) return false;
        if (!ctx_eq(n, n.premises[0])) return false;
        const Formula& f = n.premises[0].conclusion().conclusion;
        if (!f.is_eq() || !psi.is_eq())
          return fail_here(n, "symmetry applies to equations");
        if (!(psi.lhs == f.rhs) || !(psi.rhs == f.lhs))
          return fail_here(n, "conclusion is not the flipped premise");
        return true;
      }

      case Rule::Trans: {
        if (!want_arity(n, 2)) return false;
        if (!ctx_eq(n, n.premises[0]) || !ctx_eq(n, n.premises[1])) return false;
        const Formula& f1 = n.premises[0].conclusion().conclusion;
        const Formula& f2 = n.premises[1].conclusion().conclusion;
        if (!f1.is_eq() || !f2.is_eq() || !psi.is_eq())
          return fail_here(n, "transitivity applies to equations");
        if (!(f1.rhs == f2.lhs))
          return fail_here(n, "premises do not chain");
        if (psi.lhs == f1.lhs && psi.rhs == f2.rhs) return true;
        if (opts.paper_literal && psi == f2) return true;
        return fail_here(n, "conclusion does not chain the premises");
      }

      case Rule::Sub: {
        if (!want_arity(n, 1)) return false;
        for (const auto& [v, t] : n.subst) {
          if (!th.lang.has_var(v))
            return fail_here(n, "substitution maps undeclared variable '" + v + "'");
          try {
            t.check_in(th.lang);
          } catch (const Error& e) {
            return fail_here(n, e.what());
          }
        }
        if (!(c == apply_subst(n.premises[0].conclusion(), n.subst)))
          return fail_here(n, "conclusion is not the substituted premise");
        return true;
      }

      case Rule::Cong: {
        auto it = th.lang.sig.ops.find(n.op);
        if (it == th.lang.sig.ops.end())
          return fail_here(n, "unknown operation '" + n.op + "'");
        if (!want_arity(n, static_cast<size_t>(it->second))) return false;
        if (!psi.is_eq() || psi.lhs.kind() != TermKind::App ||
            psi.rhs.kind() != TermKind::App || psi.lhs.name() != n.op ||
            psi.rhs.name() != n.op)
          return fail_here(n, "conclusion is not an equation under '" + n.op + "'");
        for (size_t i = 0; i < n.premises.size(); ++i) {
          if (!ctx_eq(n, n.premises[i])) return false;
          const Formula& f = n.premises[i].conclusion().conclusion;
          if (!f.is_eq()) return fail_here(n, "congruence premise is not an equation");
          if (!(psi.lhs.args()[i] == f.lhs) || !(psi.rhs.args()[i] == f.rhs))
            return fail_here(n, "argument " + std::to_string(i) +
                                    " does not match the premises");
        }
        return true;
      }

      case Rule::Inf:
        if (!want_arity(n, 0)) return false;
        if (psi.is_eq() || !(psi.level == th.frame->bot()))
          return fail_here(n, "conclusion must state membership at bottom");
        return true;

      case Rule::Mon: {
        if (!want_arity(n, 1)) return false;
        if (!ctx_eq(n, n.premises[0])) return false;
        if (n.level.owner != th.frame.get())
          return fail_here(n, "side level from a different frame");
        const Formula& f = n.premises[0].conclusion().conclusion;
        if (f.is_eq() || psi.is_eq())
          return fail_here(n, "monotonicity applies to memberships");
        if (!(psi.lhs == f.lhs))
          return fail_here(n, "conclusion term differs from the premise term");
        if (!(psi.level == th.frame->meet(f.level, n.level)))
          return fail_here(n, "conclusion level is not the meet with the side level");
        return true;
      }

      case Rule::Exp: {
        auto it = th.lang.sig.ops.find(n.op);
        if (it == th.lang.sig.ops.end())
          return fail_here(n, "unknown operation '" + n.op + "'");
        if (!want_arity(n, static_cast<size_t>(it->second))) return false;
        if (psi.is_eq() || psi.lhs.kind() != TermKind::App || psi.lhs.name() != n.op)
          return fail_here(n, "conclusion is not a membership of an application of '" +
                                  n.op + "'");
        FrameElem lvl = th.frame->top();
        for (size_t i = 0; i < n.premises.size(); ++i) {
          if (!ctx_eq(n, n.premises[i])) return false;
          const Formula& f = n.premises[i].conclusion().conclusion;
          if (f.is_eq()) return fail_here(n, "premise is not a membership");
          if (!(psi.lhs.args()[i] == f.lhs))
            return fail_here(n, "argument " + std::to_string(i) +
                                    " does not match the premises");
          lvl = th.frame->meet(lvl, f.level);
        }
        if (!(psi.level == lvl))
          return fail_here(n, "conclusion level is not the meet of the premise levels");
        return true;
      }

      case Rule::Sup: {
        std::vector<FrameElem> s = n.levels;
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s != n.levels)
          return fail_here(n, "level set not sorted and deduplicated");
        for (auto l : s)
          if (l.owner != th.frame.get())
            return fail_here(n, "level from a different frame");
        if (!want_arity(n, s.size())) return false;
        if (psi.is_eq()) return fail_here(n, "conclusion must be a membership");
        for (size_t i = 0; i < s.size(); ++i) {
          if (!ctx_eq(n, n.premises[i])) return false;
          const Formula& f = n.premises[i].conclusion().conclusion;
          if (f.is_eq()) return fail_here(n, "premise is not a membership");
          if (!(f.lhs == psi.lhs))
            return fail_here(n, "premise term differs from the conclusion term");
          if (!(f.level == s[i]))
            return fail_here(n, "premise " + std::to_string(i) +
                                    " does not match its level");
        }
        if (!(psi.level == th.frame->sup(s)))
          return fail_here(n, "conclusion level is not the join of the level set");
        return true;
      }

      case Rule::Fun: {
        if (!want_arity(n, 2)) return false;
        if (!ctx_eq(n, n.premises[0]) || !ctx_eq(n, n.premises[1])) return false;
        const Formula& fe = n.premises[0].conclusion().conclusion;
        const Formula& fm = n.premises[1].conclusion().conclusion;
        if (!fe.is_eq() || fm.is_eq() || psi.is_eq())
          return fail_here(n, "expected an equation premise and membership premises");
        if (!(fm.lhs == fe.lhs))
          return fail_here(n, "membership premise is not about the equation's left side");
        if (!(psi.lhs == fe.rhs) || !(psi.level == fm.level))
          return fail_here(n, "conclusion does not transfer the membership");
        return true;
      }
    }
    return fail_here(n, "unknown rule");
  }
};

}  // namespace

CheckResult check_derivation(const Theory& th, const Derivation& d,
                             const CheckOptions& opts) {
  CheckResult r;
  if (!d.ok()) {
    r.ok = false;
    r.message = "empty derivation";
    return r;
  }
  Checker ck{th, opts};
  if (ck.visit(d)) {
    r.ok = true;
    r.verified = d.conclusion();
    return r;
  }
  ck.result.verified = d.conclusion();
  return ck.result;
}

Derivation deduction_split(const Theory& th, const std::vector<Formula>& gamma,
                           const Derivation& d) {
  const Sequent& concl = d.conclusion();
  std::vector<Formula> g = premise_union(gamma, {});
  if (g.empty()) return d;
  for (const auto& f : g)
    if (!concl.has_premise(f))
      fail(ErrorKind::BadInput,
           "formula '" + f.lhs.str() + "...' not among the conclusion's premises");

  Theory th2 = extend_with_formulas(th, g);
  std::vector<Formula> delta;
  for (const auto& p : concl.premises)
    if (!std::binary_search(g.begin(), g.end(), p)) delta.push_back(p);

  std::vector<Derivation> proofs;
  for (const auto& f : concl.premises) {
    if (std::binary_search(g.begin(), g.end(), f)) {
      auto idx = th2.find_axiom(Sequent({}, f));
      if (!idx) fail(ErrorKind::BadInput, "extended theory misses a split axiom");
      Derivation ax = build::axiom(th2, *idx);
      proofs.push_back(delta.empty() ? ax : build::weak(ax, delta));
    } else {
      proofs.push_back(build::assume(delta, f));
    }
  }
  return build::cut(std::move(proofs), d);
}

namespace {

struct Merger {
  const Theory& th;          // target theory
  const Theory& th2;         // extended theory the input derivation lives in
  const std::vector<Formula>& g;
  std::unordered_map<const DerivNode*, Derivation> memo{};
  NodePath path{};

  Derivation transform(const Derivation& d) {
    if (auto it = memo.find(d.ptr()); it != memo.end()) return it->second;
    const DerivNode& n = d.node();
    if (n.rule == Rule::Sub)
      fail(ErrorKind::ContainsSub, "substitution step at " + path_str(path));

    std::vector<Derivation> kids;
    kids.reserve(n.premises.size());
    for (size_t i = 0; i < n.premises.size(); ++i) {
      path.push_back(static_cast<int>(i));
      kids.push_back(transform(n.premises[i]));
      path.pop_back();
    }

    auto widened_ctx = premise_union(g, n.conclusion.premises);
    Derivation out;
    switch (n.rule) {
      case Rule::Axiom: {
        const Sequent& s = n.conclusion;
        if (auto idx = th.find_axiom(s)) {
          Derivation ax = build::axiom(th, *idx);
          out = g.empty() ? ax : build::weak(ax, g);
        } else if (s.premises.empty() &&
                   std::binary_search(g.begin(), g.end(), s.conclusion)) {
          out = build::assume(g, s.conclusion);
        } else {
          fail(ErrorKind::BadInput, "axiom at " + path_str(path) +
                                        " is neither in the base theory nor split");
        }
        break;
      }
      case Rule::A:
        out = build::assume(widened_ctx, n.conclusion.conclusion);
        break;
      case Rule::Weak:
        out = build::weak(kids[0], n.formulas);
        break;
      case Rule::Cut: {
        Derivation main = kids.back();
        kids.pop_back();
        // pad with assumptions for the formulas of g joining the cut set
        std::vector<Formula> new_phi = main.conclusion().premises;
        std::vector<Derivation> proofs;
        for (const auto& f : new_phi) {
          auto old = std::find_if(n.formulas.begin(), n.formulas.end(),
                                  [&](const Formula& x) { return x == f; });
          if (old != n.formulas.end()) {
            proofs.push_back(kids[old - n.formulas.begin()]);
          } else {
            proofs.push_back(build::assume(widened_ctx, f));
          }
        }
        out = build::cut(std::move(proofs), std::move(main));
        break;
      }
      case Rule::Refl:
        out = build::refl(widened_ctx, n.conclusion.conclusion.lhs);
        break;
      case Rule::Inf:
        out = build::inf(*th.frame, widened_ctx, n.conclusion.conclusion.lhs);
        break;
      case Rule::Sym:
        out = build::sym(kids[0]);
        break;
      case Rule::Trans:
        out = build::trans(kids[0], kids[1]);
        break;
      case Rule::Cong:
        out = build::cong(n.op, std::move(kids));
        break;
      case Rule::Mon:
        out = build::mon(kids[0], n.level);
        break;
      case Rule::Exp:
        out = build::exp(n.op, std::move(kids));
        break;
      case Rule::Sup:
        if (kids.empty())
          out = build::inf(*th.frame, widened_ctx, n.conclusion.conclusion.lhs);
        else
          out = build::sup(std::move(kids));
        break;
      case Rule::Fun:
        out = build::fun(kids[0], kids[1]);
        break;
      case Rule::Sub:
        fail(ErrorKind::ContainsSub, "unreachable");
    }
    memo.emplace(d.ptr(), out);
    return out;
  }
};

}  // namespace

Derivation deduction_merge(const Theory& th, const std::vector<Formula>& gamma,
                           const Derivation& d) {
  std::vector<Formula> g = premise_union(gamma, {});
  Theory th2 = extend_with_formulas(th, g);
  Merger m{th, th2, g};
  return m.transform(d);
}

}  // namespace fuzzalg
