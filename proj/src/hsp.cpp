#include "fuzzalg/hsp.hpp"

#include <algorithm>
#include <set>

namespace fuzzalg {

namespace {

FrameElem local_level(const Frame& fr, FrameElem l) {
  if (l.owner == &fr) return l;
  if (l.owner == nullptr || l.id < 0 || l.id >= fr.size() ||
      fr.elem_name(fr.elem(l.id)) != l.owner->elem_name(l))
    fail(ErrorKind::FrameMismatch, "level belongs to an incompatible frame");
  return fr.elem(l.id);
}

// Decodes a row-major table cell, first argument varying slowest.
std::vector<int> tuple_of(int cell, int ar, int n) {
  std::vector<int> t(ar);
  for (int k = ar - 1; k >= 0; --k) {
    t[k] = cell % n;
    cell /= n;
  }
  return t;
}

}  // namespace

void XEquation::validate() const {
  target.validate();
  std::set<std::string> seen;
  for (const auto& kv : generators.elems)
    if (!seen.insert(kv.first).second)
      fail(ErrorKind::NameClash, "generator '" + kv.first + "' declared twice");
  auto sub = generated_subalgebra(target, FuzzyMapInto{generators, valuation});
  if (sub.algebra.size() != target.size())
    fail(ErrorKind::NotGenerated,
         "generators and constants reach only " +
             std::to_string(sub.algebra.size()) + " of " +
             std::to_string(target.size()) + " elements");
}

namespace {

// Tries to extend h (indexed like xs) to a homomorphism target -> a by
// propagating images through the operation tables.
bool extends_to_hom(const FuzzyAlgebra& a, const XEquation& e,
                    const std::vector<std::string>& xs,
                    const std::vector<int>& h) {
  const FuzzyAlgebra& b = e.target;
  const int nb = b.size();
  std::vector<int> q(nb, -1);
  auto assign = [&q](int src, int val) {
    if (q[src] < 0) {
      q[src] = val;
      return true;
    }
    return q[src] == val;
  };

  for (size_t i = 0; i < xs.size(); ++i)
    if (!assign(e.valuation.at(xs[i]), h[i])) return false;
  for (const auto& kv : b.consts)
    if (!assign(kv.second, a.constant(kv.first))) return false;

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [op, table] : b.ops) {
      const int ar = b.lang.sig.ops.at(op);
      for (int cell = 0; cell < static_cast<int>(table.size()); ++cell) {
        const auto args = tuple_of(cell, ar, nb);
        std::vector<int> imgs(ar);
        bool ready = true;
        for (int k = 0; k < ar && ready; ++k) {
          if (q[args[k]] < 0) ready = false;
          else imgs[k] = q[args[k]];
        }
        if (!ready) continue;
        const int val = a.apply(op, imgs);
        if (q[table[cell]] < 0) changed = true;
        if (!assign(table[cell], val)) return false;
      }
    }
  }

  for (int bb = 0; bb < nb; ++bb) {
    if (q[bb] < 0) return false;
    if (!a.frame->leq(local_level(*a.frame, b.mu[bb]), a.mu[q[bb]]))
      return false;
  }
  return true;
}

}  // namespace

EquationCheck satisfies_equation(const FuzzyAlgebra& a, const XEquation& e) {
  if (!(a.lang.sig == e.target.lang.sig))
    fail(ErrorKind::FrameOrSignatureMismatch,
         "algebra and equation use different signatures");
  if (a.frame.get() != e.target.frame.get() &&
      !a.frame->same_structure(*e.target.frame))
    fail(ErrorKind::FrameOrSignatureMismatch,
         "algebra and equation use different frames");
  e.validate();

  const int na = a.size();
  std::vector<std::string> xs;
  std::vector<std::vector<int>> cands;
  for (const auto& [x, lvl] : e.generators.elems) {
    xs.push_back(x);
    std::vector<int> cs;
    const FrameElem lx = local_level(*a.frame, lvl);
    for (int v = 0; v < na; ++v)
      if (a.frame->leq(lx, a.mu[v])) cs.push_back(v);
    if (cs.empty()) return {};  // no fuzzy assignment exists at all
    cands.push_back(std::move(cs));
  }

  std::vector<size_t> idx(xs.size(), 0);
  while (true) {
    std::vector<int> h(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) h[i] = cands[i][idx[i]];
    if (!extends_to_hom(a, e, xs, h)) {
      EquationCheck out;
      out.holds = false;
      std::map<std::string, int> w;
      for (size_t i = 0; i < xs.size(); ++i) w[xs[i]] = h[i];
      out.witness = std::move(w);
      return out;
    }
    size_t k = xs.size();
    while (k > 0 && ++idx[k - 1] == cands[k - 1].size()) idx[--k] = 0;
    if (k == 0) break;
  }
  return {};
}

namespace {

// One term per element of the target, built breadth-first from the generator
// variables and the constants; ties resolved by the term order.
std::vector<Term> witness_terms(const XEquation& e) {
  const FuzzyAlgebra& b = e.target;
  const int nb = b.size();
  std::vector<Term> t(nb);
  std::vector<bool> have(nb, false);

  auto offer = [&](int el, const Term& cand) {
    if (!have[el] || cand < t[el]) t[el] = cand;
    have[el] = true;
  };
  for (const auto& kv : e.generators.elems)
    offer(e.valuation.at(kv.first), Term::var(kv.first));
  for (const auto& kv : b.consts) offer(kv.second, Term::cnst(kv.first));

  while (true) {
    std::vector<std::pair<int, Term>> next;
    for (const auto& [op, table] : b.ops) {
      const int ar = b.lang.sig.ops.at(op);
      for (int cell = 0; cell < static_cast<int>(table.size()); ++cell) {
        if (have[table[cell]]) continue;
        const auto args = tuple_of(cell, ar, nb);
        TermVec sub;
        bool ready = true;
        for (int k = 0; k < ar && ready; ++k) {
          if (!have[args[k]]) ready = false;
          else sub.push_back(t[args[k]]);
        }
        if (!ready) continue;
        Term cand = Term::app(op, std::move(sub));
        auto it = std::find_if(next.begin(), next.end(),
                               [&](const auto& p) { return p.first == table[cell]; });
        if (it == next.end()) next.emplace_back(table[cell], cand);
        else if (cand < it->second) it->second = cand;
      }
    }
    if (next.empty()) break;
    for (auto& [el, term] : next) {
      t[el] = term;
      have[el] = true;
    }
  }

  for (int bb = 0; bb < nb; ++bb)
    if (!have[bb])
      fail(ErrorKind::NotGenerated,
           "no term reaches element '" + b.carrier[bb] + "'");
  return t;
}

}  // namespace

Theory equation_to_theory(const XEquation& e) {
  e.validate();
  const FuzzyAlgebra& b = e.target;
  const auto t = witness_terms(e);

  std::vector<Formula> gamma;
  for (const auto& [x, lvl] : e.generators.elems)
    if (!(lvl == b.frame->bot()))
      gamma.push_back(Formula::mem(lvl, Term::var(x)));

  Theory th;
  th.name = (b.name.empty() ? "equation" : b.name) + ".laws";
  th.frame = b.frame;
  th.lang.sig = b.lang.sig;
  for (const auto& kv : e.generators.elems) th.lang.vars.push_back(kv.first);

  for (int bb = 0; bb < b.size(); ++bb)
    th.axioms.emplace_back(gamma, Formula::mem(b.mu[bb], t[bb]));
  for (const auto& [op, table] : b.ops) {
    const int ar = b.lang.sig.ops.at(op);
    for (int cell = 0; cell < static_cast<int>(table.size()); ++cell) {
      const auto args = tuple_of(cell, ar, b.size());
      TermVec sub;
      for (int k = 0; k < ar; ++k) sub.push_back(t[args[k]]);
      th.axioms.emplace_back(
          gamma, Formula::eq(Term::app(op, std::move(sub)), t[table[cell]]));
    }
  }
  for (const auto& [c, el] : b.consts)
    th.axioms.emplace_back(gamma, Formula::eq(t[el], Term::cnst(c)));

  th.validate();
  return th;
}

Theory unconditional_equation_to_theory(const XEquation& e) {
  e.validate();
  const auto supp = e.generators.support(*e.target.frame);
  if (!supp.empty())
    fail(ErrorKind::SupportNotEmpty,
         "generator '" + supp.front() + "' has a level above bottom");
  return equation_to_theory(e);
}

namespace {

std::string size_tag(const FuzzyAlgebra& a) {
  return "size " + std::to_string(a.size());
}

ClosureReport run_closure(std::vector<FuzzyAlgebra> family,
                          const std::function<bool(const FuzzyAlgebra&)>& member,
                          ClosureMode mode) {
  ClosureReport rep;
  rep.mode = mode;
  if (mode == ClosureMode::HSP_epi) rep.epi_images = true;

  for (size_t i = 0; i < family.size(); ++i) {
    family[i].validate();
    if (family[i].size() > 8)
      fail(ErrorKind::SizeBoundExceeded,
           "family member of " + size_tag(family[i]) +
               " is too large for image enumeration");
    if (i > 0) {
      if (family[i].frame.get() != family[0].frame.get())
        fail(ErrorKind::FrameMismatch, "family members use different frames");
      if (!(family[i].lang.sig == family[0].lang.sig))
        fail(ErrorKind::SignatureMismatch,
             "family members use different signatures");
    }
  }
  rep.family = family;

  for (size_t i = 0; i < family.size() && rep.products; ++i)
    for (size_t j = i; j < family.size() && rep.products; ++j) {
      auto pr = product(family[i], family[j]);
      if (!member(pr.algebra)) {
        rep.products = false;
        rep.violations.push_back(
            {"product",
             "family[" + std::to_string(i) + "] x family[" + std::to_string(j) +
                 "] of " + size_tag(pr.algebra) + " is not in the family",
             {family[i], family[j]},
             {},
             std::nullopt,
             pr.algebra});
      }
    }

  for (size_t i = 0; i < family.size() && rep.strong_subalgebras; ++i) {
    const auto& a = family[i];
    std::set<std::vector<std::string>> seen;
    for (int mask = 0; mask < (1 << a.size()) && rep.strong_subalgebras; ++mask) {
      std::vector<int> gens;
      for (int x = 0; x < a.size(); ++x)
        if (mask & (1 << x)) gens.push_back(x);
      auto sub = generated_subalgebra(a, gens);
      if (!seen.insert(sub.algebra.carrier).second) continue;
      if (!member(sub.algebra)) {
        rep.strong_subalgebras = false;
        std::string names;
        for (int g : gens) names += (names.empty() ? "" : ",") + a.carrier[g];
        rep.violations.push_back(
            {"subalgebra",
             "subalgebra of family[" + std::to_string(i) + "] generated by {" +
                 names + "} is not in the family",
             {a},
             gens,
             std::nullopt,
             sub.algebra});
      }
    }
  }

  const bool want_epi = mode == ClosureMode::HSP_epi;
  bool epi_open = want_epi, split_open = true;
  for (size_t i = 0; i < family.size() && (epi_open || split_open); ++i) {
    const auto& a = family[i];
    const Frame& fr = *a.frame;
    for (const auto& base : enumerate_congruences(a)) {
      if (!epi_open && !split_open) break;
      const int k = base.class_count();
      const auto class_tabs = quotient(a, base).algebra.ops;

      // Every admissible level map above the least one; the first vector
      // visited is the least map itself.
      std::vector<std::vector<FrameElem>> lifts(k);
      for (int c = 0; c < k; ++c)
        for (auto l : fr.elements())
          if (fr.leq(base.level[c], l)) lifts[c].push_back(l);

      std::vector<size_t> idx(k, 0);
      while (epi_open || split_open) {
        std::vector<FrameElem> lvl(k);
        for (int c = 0; c < k; ++c) lvl[c] = lifts[c][idx[c]];

        bool compat = true;
        for (const auto& [op, table] : class_tabs) {
          const int ar = a.lang.sig.ops.at(op);
          for (int cell = 0; cell < static_cast<int>(table.size()) && compat;
               ++cell) {
            FrameElem m = fr.top();
            for (int arg : tuple_of(cell, ar, k)) m = fr.meet(m, lvl[arg]);
            if (!fr.leq(m, lvl[table[cell]])) compat = false;
          }
          if (!compat) break;
        }

        if (compat) {
          FuzzyCongruence theta{a, base.cls, lvl};
          auto qr = quotient(a, theta);
          const bool split = classify_morphism(qr.projection).split_epi;
          const bool in = member(qr.algebra);
          if (!in && epi_open) {
            epi_open = false;
            rep.epi_images = false;
            rep.violations.push_back(
                {"epi_image",
                 "quotient of family[" + std::to_string(i) + "] with " +
                     std::to_string(k) + " classes is not in the family",
                 {a},
                 {},
                 theta,
                 qr.algebra});
          }
          if (!in && split && split_open) {
            split_open = false;
            rep.split_epi_images = false;
            rep.violations.push_back(
                {"split_epi_image",
                 "split-epi quotient of family[" + std::to_string(i) +
                     "] with " + std::to_string(k) +
                     " classes is not in the family",
                 {a},
                 {},
                 theta,
                 qr.algebra});
          }
        }

        size_t c = idx.size();
        while (c > 0 && ++idx[c - 1] == lifts[c - 1].size()) idx[--c] = 0;
        if (c == 0) break;
      }
    }
  }

  return rep;
}

}  // namespace

ClosureReport closure_check(const std::vector<FuzzyAlgebra>& family,
                            ClosureMode mode) {
  auto member = [&family](const FuzzyAlgebra& a) {
    for (const auto& f : family)
      if (isomorphic(a, f)) return true;
    return false;
  };
  return run_closure(family, member, mode);
}

ClosureReport closure_check(const FramePtr& fr, const Language& lang,
                            const std::function<bool(const FuzzyAlgebra&)>& member,
                            int size_bound, ClosureMode mode) {
  if (size_bound < 0) fail(ErrorKind::BadInput, "negative size bound");
  if (size_bound > 8)
    fail(ErrorKind::SizeBoundExceeded,
         "size bound " + std::to_string(size_bound) +
             " is too large for image enumeration");
  std::vector<FuzzyAlgebra> family;
  const int lo = lang.sig.consts.empty() ? 0 : 1;
  for (int n = lo; n <= size_bound; ++n)
    for_each_algebra(
        fr, lang, n,
        [&](const FuzzyAlgebra& a) {
          if (member(a)) family.push_back(a);
          return true;
        },
        /*prune_isomorphic=*/true);
  return run_closure(std::move(family), member, mode);
}

}  // namespace fuzzalg
