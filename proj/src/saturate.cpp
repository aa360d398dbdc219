#include "fuzzalg/saturate.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace fuzzalg {

int GroundClosure::find(int v) const {
  while (parent_[v] != v) {
    parent_[v] = parent_[parent_[v]];
    v = parent_[v];
  }
  return v;
}

int GroundClosure::id_of(const Term& t) const {
  auto it = ids_.find(t);
  if (it == ids_.end())
    fail(ErrorKind::BadInput, "term '" + t.str() + "' outside the closure universe");
  return it->second;
}

bool GroundClosure::same_class(const Term& t, const Term& u) const {
  return find(id_of(t)) == find(id_of(u));
}

FrameElem GroundClosure::level_of(const Term& t) const {
  return level_[find(id_of(t))];
}

Term GroundClosure::representative(const Term& t) const {
  return terms_[rep_[find(id_of(t))]];
}

Term GroundClosure::witness(const Term& t) const {
  return terms_[witness_[find(id_of(t))]];
}

std::vector<GroundClosure::ClassInfo> GroundClosure::classes() const {
  std::vector<ClassInfo> out;
  for (int v = 0; v < term_count(); ++v) {
    if (find(v) != v) continue;
    out.push_back(ClassInfo{terms_[rep_[v]], terms_[witness_[v]], level_[v],
                            class_size_[v]});
  }
  std::sort(out.begin(), out.end(),
            [](const ClassInfo& a, const ClassInfo& b) { return a.rep < b.rep; });
  return out;
}

int GroundClosure::class_count() const {
  int n = 0;
  for (int v = 0; v < term_count(); ++v)
    if (find(v) == v) ++n;
  return n;
}

std::optional<Term> GroundClosure::apply(const std::string& op,
                                         const std::vector<Term>& reps) const {
  TermVec args;
  for (const auto& r : reps) args.push_back(witness(r));
  Term t = Term::app(op, std::move(args));
  if (t.depth() > depth_ || !contains(t)) return std::nullopt;
  return representative(t);
}

Derivation GroundClosure::prove_eq(const Term& t, const Term& u) const {
  int a = id_of(t), b = id_of(u);
  if (find(a) != find(b))
    fail(ErrorKind::BadInput, "terms are not in one class");
  if (a == b) return build::refl({}, t);

  // BFS through the proof forest
  std::vector<int> via_edge(term_count(), -1), prev(term_count(), -1);
  std::deque<int> queue{a};
  std::vector<bool> seen(term_count(), false);
  seen[a] = true;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == b) break;
    for (int e : adj_[v]) {
      int w = edges_[e].from == v ? edges_[e].to : edges_[e].from;
      if (seen[w]) continue;
      seen[w] = true;
      prev[w] = v;
      via_edge[w] = e;
      queue.push_back(w);
    }
  }
  if (!seen[b]) fail(ErrorKind::BadInput, "proof forest is disconnected");

  std::vector<int> rpath;  // nodes b .. a
  for (int v = b; v != a; v = prev[v]) rpath.push_back(v);
  Derivation acc;
  int at = a;
  for (auto it = rpath.rbegin(); it != rpath.rend(); ++it) {
    int e = via_edge[*it];
    Derivation step = edges_[e].proof;
    if (edges_[e].to == at) step = build::sym(step);
    acc = acc.ok() ? build::trans(acc, step) : step;
    at = *it;
  }
  return acc;
}

Derivation GroundClosure::prove_mem(const Term& t, FrameElem l) const {
  const Frame& fr = *th_.frame;
  if (l == fr.bot()) return build::inf(fr, {}, t);
  int c = find(id_of(t));
  if (!fr.leq(l, level_[c]))
    fail(ErrorKind::BadInput, "membership level not derived for '" + t.str() + "'");

  std::vector<Derivation> at_t;
  for (const auto& rec : records_[c]) {
    Derivation d = rec.proof;  // |- mem rec.level rec.term
    if (!(terms_[rec.term] == t)) d = build::fun(prove_eq(terms_[rec.term], t), d);
    at_t.push_back(std::move(d));
  }
  Derivation full = at_t.size() == 1 ? at_t[0] : build::sup(std::move(at_t));
  if (full.conclusion().conclusion.level == l) return full;
  return build::mon(full, l);
}

std::optional<Derivation> GroundClosure::query(const Formula& f) const {
  const Frame& fr = *th_.frame;
  if (f.is_eq()) {
    if (!f.lhs.is_ground() || !f.rhs.is_ground()) return std::nullopt;
    if (!contains(f.lhs) || !contains(f.rhs)) return std::nullopt;
    if (!same_class(f.lhs, f.rhs)) return std::nullopt;
    return prove_eq(f.lhs, f.rhs);
  }
  if (!f.lhs.is_ground()) return std::nullopt;
  if (f.level == fr.bot()) return prove_mem(f.lhs, f.level);
  if (!contains(f.lhs)) return std::nullopt;
  if (!fr.leq(f.level, level_of(f.lhs))) return std::nullopt;
  return prove_mem(f.lhs, f.level);
}

namespace detail {

// Working state shared by the saturation passes.
struct SatEngine {
  GroundClosure& g;
  const Theory& th;
  const Frame& fr;
  long budget_steps;
  bool changed = false;
  bool out_of_budget = false;

  int find(int v) { return g.find(v); }

  bool step() {
    ++g.steps_;
    changed = true;
    if (g.steps_ > budget_steps) {
      out_of_budget = true;
      return false;
    }
    return true;
  }

  // Records |- mem l (term w); raises the class level join.
  void raise(int w, FrameElem l, Derivation proof) {
    int c = find(w);
    FrameElem nl = fr.join(g.level_[c], l);
    if (nl == g.level_[c]) return;
    if (!step()) return;
    g.records_[c].push_back(GroundClosure::LevelRecord{l, w, std::move(proof)});
    g.level_[c] = nl;
  }

  // Merges the classes of terms a and b; proof derives |- a == b.
  void merge(int a, int b, Derivation proof) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return;
    if (!step()) return;
    int e = static_cast<int>(g.edges_.size());
    g.edges_.push_back(GroundClosure::Edge{a, b, std::move(proof)});
    g.adj_[a].push_back(e);
    g.adj_[b].push_back(e);
    // union by size
    if (g.class_size_[ra] < g.class_size_[rb]) std::swap(ra, rb);
    g.parent_[rb] = ra;
    g.class_size_[ra] += g.class_size_[rb];
    if (g.terms_[g.rep_[rb]] < g.terms_[g.rep_[ra]]) g.rep_[ra] = g.rep_[rb];
    const Term& wb = g.terms_[g.witness_[rb]];
    const Term& wa = g.terms_[g.witness_[ra]];
    if (wb.depth() < wa.depth() || (wb.depth() == wa.depth() && wb < wa))
      g.witness_[ra] = g.witness_[rb];
    auto& recs = g.records_[ra];
    for (auto& r : g.records_[rb]) recs.push_back(std::move(r));
    g.records_[rb].clear();
    FrameElem lvl = fr.join(g.level_[ra], g.level_[rb]);
    g.level_[ra] = lvl;
  }

  // One congruence pass: equal argument classes force equal applications.
  void congruence_pass() {
    std::map<std::pair<std::string, std::vector<int>>, int> sig;
    for (int v = 0; v < g.term_count(); ++v) {
      const Term& t = g.terms_[v];
      if (t.kind() != TermKind::App) continue;
      std::vector<int> key;
      for (const auto& a : t.args()) key.push_back(find(g.ids_.at(a)));
      auto [it, fresh] = sig.try_emplace({t.name(), std::move(key)}, v);
      if (fresh || find(it->second) == find(v)) continue;
      const Term& u = g.terms_[it->second];
      std::vector<Derivation> eqs;
      for (size_t i = 0; i < t.args().size(); ++i)
        eqs.push_back(g.prove_eq(t.args()[i], u.args()[i]));
      merge(v, it->second, build::cong(t.name(), std::move(eqs)));
      if (out_of_budget) return;
    }
  }

  // One membership propagation pass (rule Exp on every application).
  void exp_pass() {
    for (int v = 0; v < g.term_count(); ++v) {
      const Term& t = g.terms_[v];
      if (t.kind() != TermKind::App) continue;
      FrameElem m = fr.top();
      for (const auto& a : t.args()) m = fr.meet(m, g.level_[find(g.ids_.at(a))]);
      if (fr.leq(m, g.level_[find(v)])) continue;
      std::vector<Derivation> mems;
      for (const auto& a : t.args())
        mems.push_back(g.prove_mem(a, g.level_[find(g.ids_.at(a))]));
      raise(v, m, build::exp(t.name(), std::move(mems)));
      if (out_of_budget) return;
    }
  }

  // Ground instances of one axiom over least-depth class witnesses.
  void axiom_pass(int axiom_index) {
    const Sequent& ax = th.axioms[axiom_index];
    const auto var_set = ax.variables();
    std::vector<std::string> vars(var_set.begin(), var_set.end());

    // bound on the depth of each variable's image so the instance stays inside
    std::map<std::string, int> max_occ;
    auto scan = [&](auto&& self, const Term& t, int at) -> void {
      if (t.kind() == TermKind::Var) {
        auto [it, _] = max_occ.try_emplace(t.name(), at);
        it->second = std::max(it->second, at);
      }
      for (const auto& a : t.args()) self(self, a, at + 1);
    };
    auto scan_formula = [&](const Formula& f) {
      scan(scan, f.lhs, 0);
      if (f.is_eq()) scan(scan, f.rhs, 0);
    };
    scan_formula(ax.conclusion);
    for (const auto& p : ax.premises) scan_formula(p);

    std::vector<std::vector<int>> cands(vars.size());
    for (size_t i = 0; i < vars.size(); ++i) {
      int limit = g.depth_ - max_occ.at(vars[i]);
      if (limit < 0) return;  // no instance fits
      for (int v = 0; v < g.term_count(); ++v)
        if (find(v) == v && g.terms_[g.witness_[v]].depth() <= limit)
          cands[i].push_back(g.witness_[v]);
      if (cands[i].empty()) return;
    }

    std::vector<size_t> idx(vars.size(), 0);
    while (true) {
      Substitution sigma;
      for (size_t i = 0; i < vars.size(); ++i)
        sigma[vars[i]] = g.terms_[cands[i][idx[i]]];
      fire(axiom_index, ax, sigma);
      if (out_of_budget) return;

      size_t i = 0;
      for (; i < vars.size(); ++i) {
        if (++idx[i] < cands[i].size()) break;
        idx[i] = 0;
      }
      if (i == vars.size()) break;
      if (vars.empty()) break;
    }
  }

  void fire(int axiom_index, const Sequent& ax, const Substitution& sigma) {
    Sequent inst = apply_subst(ax, sigma);

    auto holds = [&](const Formula& f) -> bool {
      if (f.is_eq())
        return g.contains(f.lhs) && g.contains(f.rhs) && g.same_class(f.lhs, f.rhs);
      return g.contains(f.lhs) &&
             fr.leq(f.level, g.level_[find(g.ids_.at(f.lhs))]);
    };

    // cheap rejection before building any proofs
    const Formula& concl = inst.conclusion;
    if (concl.is_eq()) {
      if (!g.contains(concl.lhs) || !g.contains(concl.rhs)) return;
      if (g.same_class(concl.lhs, concl.rhs)) return;
    } else {
      if (!g.contains(concl.lhs)) return;
      if (fr.leq(concl.level, g.level_[find(g.ids_.at(concl.lhs))])) return;
    }
    for (const auto& p : inst.premises)
      if (!holds(p)) return;

    Derivation d = build::axiom(th, axiom_index);
    bool ident = std::all_of(sigma.begin(), sigma.end(), [](const auto& kv) {
      return kv.second.kind() == TermKind::Var && kv.second.name() == kv.first;
    });
    if (!ident) d = build::sub(d, sigma);
    if (!inst.premises.empty()) {
      std::vector<Derivation> proofs;
      for (const auto& p : d.conclusion().premises) {
        if (p.is_eq())
          proofs.push_back(g.prove_eq(p.lhs, p.rhs));
        else
          proofs.push_back(g.prove_mem(p.lhs, p.level));
      }
      d = build::cut(std::move(proofs), std::move(d));
    }

    if (concl.is_eq())
      merge(g.ids_.at(concl.lhs), g.ids_.at(concl.rhs), std::move(d));
    else
      raise(g.ids_.at(concl.lhs), concl.level, std::move(d));
  }
};

}  // namespace detail

GroundClosure saturate(const Theory& th, int depth, SaturateBudget budget) {
  th.validate();
  GroundClosure g;
  g.th_ = th;
  g.depth_ = depth;

  const Frame& fr = *th.frame;

  // enumerate the ground universe, breadth first by depth
  auto intern = [&](const Term& t) -> bool {
    if (g.ids_.count(t)) return true;
    if (g.term_count() >= budget.max_terms) {
      g.truncated_ = true;
      return false;
    }
    int id = g.term_count();
    g.ids_.emplace(t, id);
    g.terms_.push_back(t);
    return true;
  };

  for (const auto& c : th.lang.sig.consts) intern(Term::cnst(c));
  for (int dep = 1; dep <= depth && !g.truncated_; ++dep) {
    for (const auto& [op, ar] : th.lang.sig.ops) {
      if (g.terms_.empty()) break;
      const auto all = g.terms_;  // snapshot; new terms this stage join next stage
      std::vector<int> idx(ar, 0);
      while (true) {
        TermVec args;
        bool fresh = false;  // at least one arg from the previous stage
        for (int i = 0; i < ar; ++i) {
          args.push_back(all[idx[i]]);
          if (all[idx[i]].depth() == dep - 1) fresh = true;
        }
        if (fresh) {
          Term t = Term::app(op, std::move(args));
          if (t.depth() <= depth && !intern(t)) break;
        }
        int i = 0;
        for (; i < ar; ++i) {
          if (++idx[i] < static_cast<int>(all.size())) break;
          idx[i] = 0;
        }
        if (i == ar) break;
      }
      if (g.truncated_) break;
    }
  }

  const int n = g.term_count();
  g.parent_.resize(n);
  g.adj_.resize(n);
  g.records_.resize(n);
  g.level_.assign(n, fr.bot());
  g.rep_.resize(n);
  g.witness_.resize(n);
  g.class_size_.assign(n, 1);
  for (int v = 0; v < n; ++v) g.parent_[v] = g.rep_[v] = g.witness_[v] = v;

  detail::SatEngine eng{g, g.th_, fr, budget.max_steps};
  while (true) {
    eng.changed = false;
    eng.congruence_pass();
    if (eng.out_of_budget) break;
    eng.exp_pass();
    if (eng.out_of_budget) break;
    for (size_t i = 0; i < th.axioms.size(); ++i) {
      eng.axiom_pass(static_cast<int>(i));
      if (eng.out_of_budget) break;
    }
    if (eng.out_of_budget || !eng.changed) break;
  }
  g.complete_ = !eng.out_of_budget && !g.truncated_;
  return g;
}

DeriveResult derives(const Theory& th, const Formula& f, int depth,
                     SaturateBudget budget) {
  GroundClosure g = saturate(th, depth, budget);
  DeriveResult r;
  if (auto d = g.query(f)) {
    r.proven = true;
    r.derivation = *d;
  }
  return r;
}

}  // namespace fuzzalg
