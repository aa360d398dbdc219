#include "fuzzalg/semantics.hpp"

#include <algorithm>

namespace fuzzalg {

namespace {

// Levels of a structurally equal frame are accepted by element id, so values
// loaded from different files still compare. Anything else is a mismatch.
FrameElem local_level(const Frame& fr, FrameElem l) {
  if (l.owner == &fr) return l;
  if (l.owner == nullptr || l.id < 0 || l.id >= fr.size() ||
      fr.elem_name(fr.elem(l.id)) != l.owner->elem_name(l))
    fail(ErrorKind::FrameMismatch, "level belongs to an incompatible frame");
  return fr.elem(l.id);
}

int leaf_count(const Term& t) {
  if (t.kind() != TermKind::App) return 1;
  int n = 0;
  for (const auto& u : t.args()) n += leaf_count(u);
  return n;
}

}  // namespace

int eval(const FuzzyAlgebra& a, const Assignment& iota, const Term& t) {
  switch (t.kind()) {
    case TermKind::Var: {
      auto it = iota.find(t.name());
      if (it == iota.end())
        fail(ErrorKind::UnboundVariable, "variable '" + t.name() + "'");
      return it->second;
    }
    case TermKind::Const:
      return a.constant(t.name());
    case TermKind::App: {
      std::vector<int> args;
      args.reserve(t.args().size());
      for (const auto& u : t.args()) args.push_back(eval(a, iota, u));
      return a.apply(t.name(), args);
    }
  }
  fail(ErrorKind::BadInput, "malformed term");
}

bool satisfies_formula(const FuzzyAlgebra& a, const Assignment& iota,
                       const Formula& f) {
  if (f.is_eq()) return eval(a, iota, f.lhs) == eval(a, iota, f.rhs);
  const int t = eval(a, iota, f.lhs);
  return a.frame->leq(local_level(*a.frame, f.level), a.mu.at(t));
}

SequentCheck satisfies_sequent(const FuzzyAlgebra& a, const Sequent& s) {
  const auto var_set = s.variables();
  const std::vector<std::string> vars(var_set.begin(), var_set.end());
  const int n = a.size();
  if (n == 0) return {};

  std::vector<int> pick(vars.size(), 0);
  for (;;) {
    Assignment iota;
    for (size_t i = 0; i < vars.size(); ++i) iota[vars[i]] = pick[i];
    bool premises_hold = true;
    for (const auto& p : s.premises)
      if (!satisfies_formula(a, iota, p)) {
        premises_hold = false;
        break;
      }
    if (premises_hold && !satisfies_formula(a, iota, s.conclusion))
      return {false, std::move(iota)};
    int i = static_cast<int>(pick.size()) - 1;
    while (i >= 0 && pick[i] == n - 1) pick[i--] = 0;
    if (i < 0) break;
    ++pick[i];
  }
  return {};
}

ModelCheck is_model(const FuzzyAlgebra& a, const Theory& th) {
  for (size_t i = 0; i < th.axioms.size(); ++i) {
    auto r = satisfies_sequent(a, th.axioms[i]);
    if (!r.holds) return {false, static_cast<int>(i), std::move(r.counter)};
  }
  return {};
}

CountermodelResult find_countermodel(const Theory& th, const Sequent& s,
                                     int max_size, FramePtr fr) {
  if (!fr) fr = th.frame;
  if (fr != th.frame && !fr->same_structure(*th.frame))
    fail(ErrorKind::FrameMismatch,
         "search frame differs structurally from the theory's frame");
  CountermodelResult out;
  out.bound = max_size;
  for (int n = 1; n <= max_size && !out.counter; ++n) {
    for_each_algebra(
        fr, th.lang, n,
        [&](const FuzzyAlgebra& cand) {
          if (!is_model(cand, th).ok) return true;
          auto r = satisfies_sequent(cand, s);
          if (r.holds) return true;
          out.counter = Countermodel{cand, *std::move(r.counter)};
          return false;
        },
        /*prune_isomorphic=*/true);
  }
  return out;
}

std::optional<int> TermModel::class_of(const Term& t) const {
  if (!closure.contains(t)) return std::nullopt;
  const Term rep = closure.representative(t);
  auto it = std::lower_bound(
      classes.begin(), classes.end(), rep,
      [](const TermClass& c, const Term& r) { return c.rep < r; });
  if (it == classes.end() || it->rep != rep) return std::nullopt;
  return static_cast<int>(it - classes.begin());
}

TermModel term_model(const Theory& th, int depth, SaturateBudget budget) {
  TermModel tm;
  tm.depth = depth;
  tm.closure = saturate(th, depth, budget);
  if (!tm.closure.complete())
    fail(ErrorKind::BudgetExhausted,
         "saturation of '" + th.name + "' was truncated by the budget");

  const int leaf_bound = std::max(depth, 1);
  for (const auto& c : tm.closure.classes())
    tm.classes.push_back(
        {c.rep, c.witness, c.level, leaf_count(c.witness) <= leaf_bound});
  std::sort(tm.classes.begin(), tm.classes.end(),
            [](const TermClass& x, const TermClass& y) { return x.rep < y.rep; });

  bool closed = true;
  for (const auto& c : tm.classes) closed = closed && c.complete;

  const int n = tm.class_count();
  std::map<std::string, std::vector<int>> tables;
  for (const auto& kv : th.lang.sig.ops) {
    if (!closed) break;
    long cells = 1;
    for (int i = 0; i < kv.second; ++i) cells *= n;
    std::vector<int> table;
    table.reserve(cells);
    std::vector<int> pick(kv.second, 0);
    for (long cell = 0; cell < cells; ++cell) {
      std::vector<Term> args;
      args.reserve(pick.size());
      for (int p : pick) args.push_back(tm.classes[p].witness);
      auto res = tm.closure.apply(kv.first, args);
      std::optional<int> cls = res ? tm.class_of(*res) : std::nullopt;
      if (!cls) {
        closed = false;
        break;
      }
      table.push_back(*cls);
      for (int i = static_cast<int>(pick.size()) - 1; i >= 0; --i) {
        if (++pick[i] < n) break;
        pick[i] = 0;
      }
    }
    tables[kv.first] = std::move(table);
  }
  tm.closed = closed;

  if (closed) {
    FuzzyAlgebra alg;
    alg.name = th.name.empty() ? "terms" : th.name + ".terms";
    alg.frame = th.frame;
    alg.lang = th.lang;
    for (const auto& c : tm.classes) {
      alg.carrier.push_back(c.rep.str());
      alg.mu.push_back(c.level);
    }
    alg.ops = std::move(tables);
    for (const auto& c : th.lang.sig.consts)
      alg.consts[c] = *tm.class_of(Term::cnst(c));
    alg.validate();
    tm.algebra = std::move(alg);
  }
  return tm;
}

FreeModel free_model(const Theory& th, const FuzzySet& m, int depth,
                     SaturateBudget budget) {
  FreeModel out;
  out.model = term_model(extend_with_fuzzy_set(th, m), depth, budget);
  for (const auto& kv : m.elems)
    out.unit[kv.first] = *out.model.class_of(Term::cnst(kv.first));
  return out;
}

}  // namespace fuzzalg
