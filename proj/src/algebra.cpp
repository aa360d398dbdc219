#include "fuzzalg/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace fuzzalg {

namespace {

long long ipow(long long base, int exp) {
  long long r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

// Cell index of a tuple in a row-major table (first argument slowest).
long long cell_of(const std::vector<int>& args, int n) {
  long long idx = 0;
  for (int a : args) idx = idx * n + a;
  return idx;
}

std::vector<int> tuple_of(long long idx, int n, int k) {
  std::vector<int> t(k);
  for (int i = k - 1; i >= 0; --i) {
    t[i] = static_cast<int>(idx % n);
    idx /= n;
  }
  return t;
}

std::string tuple_str(const FuzzyAlgebra& a, const std::string& op,
                      const std::vector<int>& args) {
  std::string s = op + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) s += ",";
    s += a.carrier[args[i]];
  }
  return s + ")";
}

}  // namespace

int FuzzyAlgebra::element(const std::string& elem_name) const {
  for (int i = 0; i < size(); ++i)
    if (carrier[i] == elem_name) return i;
  fail(ErrorKind::UnknownName, "no carrier element '" + elem_name + "'");
}

int FuzzyAlgebra::apply(const std::string& op, const std::vector<int>& args) const {
  auto it = ops.find(op);
  if (it == ops.end()) fail(ErrorKind::UnknownName, "no operation '" + op + "'");
  auto ar = lang.sig.ops.find(op);
  if (ar == lang.sig.ops.end() || static_cast<int>(args.size()) != ar->second)
    fail(ErrorKind::ArityMismatch, "'" + op + "' applied to " +
                                       std::to_string(args.size()) + " arguments");
  for (int x : args)
    if (x < 0 || x >= size())
      fail(ErrorKind::BadInput, "argument out of carrier range");
  return it->second[cell_of(args, size())];
}

int FuzzyAlgebra::constant(const std::string& c) const {
  auto it = consts.find(c);
  if (it == consts.end())
    fail(ErrorKind::MissingConstInterpretation, "constant '" + c + "'");
  return it->second;
}

void FuzzyAlgebra::validate() const {
  if (!frame) fail(ErrorKind::BadInput, "algebra has no frame");
  lang.validate();
  const int n = size();

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (carrier[i] == carrier[j])
        fail(ErrorKind::NameClash, "carrier element '" + carrier[i] + "' repeats");

  if (mu.size() != carrier.size())
    fail(ErrorKind::BadInput, "mu table does not cover the carrier");
  for (int i = 0; i < n; ++i)
    if (mu[i].owner != frame.get())
      fail(ErrorKind::FrameMismatch, "level of '" + carrier[i] +
                                         "' belongs to a different frame");

  if (n == 0 && !lang.sig.consts.empty())
    fail(ErrorKind::EmptyCarrierWithConstants,
         "constant '" + *lang.sig.consts.begin() + "' has no possible value");

  for (const auto& c : lang.sig.consts) {
    auto it = consts.find(c);
    if (it == consts.end())
      fail(ErrorKind::MissingConstInterpretation, "constant '" + c + "'");
    if (it->second < 0 || it->second >= n)
      fail(ErrorKind::BadInput, "constant '" + c + "' outside the carrier");
  }
  for (const auto& [c, v] : consts)
    if (!lang.sig.consts.count(c))
      fail(ErrorKind::UnknownName, "interpretation for unknown constant '" + c + "'");

  for (const auto& [op, table] : ops)
    if (!lang.sig.ops.count(op))
      fail(ErrorKind::UnknownName, "table for unknown operation '" + op + "'");
  for (const auto& [op, ar] : lang.sig.ops) {
    auto it = ops.find(op);
    if (it == ops.end())
      fail(ErrorKind::BadInput, "operation '" + op + "' has no table");
    const auto& table = it->second;
    long long cells = ipow(n, ar);
    if (static_cast<long long>(table.size()) != cells)
      fail(ErrorKind::BadInput, "table for '" + op + "' is not total");
    for (long long t = 0; t < cells; ++t) {
      if (table[t] < 0 || table[t] >= n)
        fail(ErrorKind::BadInput, "table for '" + op + "' leaves the carrier");
      auto args = tuple_of(t, n, ar);
      FrameElem floor = frame->top();
      for (int x : args) floor = frame->meet(floor, mu[x]);
      if (!frame->leq(floor, mu[table[t]]))
        fail(ErrorKind::OpNotCompatible,
             tuple_str(*this, op, args) + " = " + carrier[table[t]] +
                 ": level " + frame->elem_name(mu[table[t]]) +
                 " is below the argument meet " + frame->elem_name(floor));
    }
  }
}

bool FuzzyAlgebra::operator==(const FuzzyAlgebra& o) const {
  if (name != o.name || carrier != o.carrier || consts != o.consts || ops != o.ops)
    return false;
  if (!(lang == o.lang)) return false;
  if (static_cast<bool>(frame) != static_cast<bool>(o.frame)) return false;
  if (frame && frame.get() != o.frame.get() && !frame->same_structure(*o.frame))
    return false;
  if (mu.size() != o.mu.size()) return false;
  for (size_t i = 0; i < mu.size(); ++i)
    if (mu[i].id != o.mu[i].id) return false;
  return true;
}

void Homomorphism::validate() const {
  source.validate();
  target.validate();
  if (source.frame.get() != target.frame.get())
    fail(ErrorKind::FrameMismatch, "homomorphism endpoints use different frames");
  if (!(source.lang.sig == target.lang.sig))
    fail(ErrorKind::SignatureMismatch, "homomorphism endpoints use different signatures");
  const int n = source.size();
  if (static_cast<int>(map.size()) != n)
    fail(ErrorKind::NotAHomomorphism, "map does not cover the source carrier");
  for (int a = 0; a < n; ++a)
    if (map[a] < 0 || map[a] >= target.size())
      fail(ErrorKind::NotAHomomorphism,
           "image of '" + source.carrier[a] + "' outside the target carrier");
  const Frame& fr = *source.frame;
  for (int a = 0; a < n; ++a)
    if (!fr.leq(source.mu[a], target.mu[map[a]]))
      fail(ErrorKind::NotAHomomorphism,
           "level drops at '" + source.carrier[a] + "'");
  for (const auto& c : source.lang.sig.consts)
    if (map[source.constant(c)] != target.constant(c))
      fail(ErrorKind::NotAHomomorphism, "constant '" + c + "' is not preserved");
  for (const auto& [op, ar] : source.lang.sig.ops) {
    long long cells = ipow(n, ar);
    for (long long t = 0; t < cells; ++t) {
      auto args = tuple_of(t, n, ar);
      std::vector<int> mapped;
      for (int x : args) mapped.push_back(map[x]);
      if (map[source.apply(op, args)] != target.apply(op, mapped))
        fail(ErrorKind::NotAHomomorphism,
             "operation '" + op + "' does not commute at " +
                 tuple_str(source, op, args));
    }
  }
}

Homomorphism identity_hom(const FuzzyAlgebra& a) {
  Homomorphism h{a, a, {}};
  h.map.resize(a.size());
  std::iota(h.map.begin(), h.map.end(), 0);
  return h;
}

Homomorphism compose(const Homomorphism& first, const Homomorphism& then) {
  if (!(first.target == then.source))
    fail(ErrorKind::BadInput, "composition endpoints differ");
  Homomorphism h{first.source, then.target, {}};
  for (int a = 0; a < first.source.size(); ++a)
    h.map.push_back(then.map.at(first.map.at(a)));
  return h;
}

MorphismFlags classify_morphism(const Homomorphism& h) {
  h.validate();
  const int n = h.source.size(), m = h.target.size();
  MorphismFlags f;

  std::vector<int> hits(m, 0);
  for (int a = 0; a < n; ++a) ++hits[h.map[a]];
  f.mono = std::all_of(hits.begin(), hits.end(), [](int k) { return k <= 1; });
  f.epi = std::all_of(hits.begin(), hits.end(), [](int k) { return k >= 1; });

  f.strong_mono = f.mono;
  for (int a = 0; a < n && f.strong_mono; ++a)
    if (!(h.source.mu[a] == h.target.mu[h.map[a]])) f.strong_mono = false;

  f.split_epi = true;
  for (int b = 0; b < m && f.split_epi; ++b) {
    bool matched = false;
    for (int a = 0; a < n && !matched; ++a)
      matched = h.map[a] == b && h.source.mu[a] == h.target.mu[b];
    f.split_epi = matched;
  }
  return f;
}

ProductResult product(const FuzzyAlgebra& a, const FuzzyAlgebra& b) {
  a.validate();
  b.validate();
  if (a.frame.get() != b.frame.get())
    fail(ErrorKind::FrameMismatch, "product factors use different frames");
  if (!(a.lang.sig == b.lang.sig))
    fail(ErrorKind::SignatureMismatch, "product factors use different signatures");

  const Frame& fr = *a.frame;
  const int na = a.size(), nb = b.size(), n = na * nb;
  FuzzyAlgebra p;
  p.name = a.name + "*" + b.name;
  p.frame = a.frame;
  p.lang = a.lang;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      p.carrier.push_back("(" + a.carrier[i] + "," + b.carrier[j] + ")");
      p.mu.push_back(fr.meet(a.mu[i], b.mu[j]));
    }
  for (const auto& c : a.lang.sig.consts)
    p.consts[c] = a.constant(c) * nb + b.constant(c);
  for (const auto& [op, ar] : a.lang.sig.ops) {
    std::vector<int>& table = p.ops[op];
    long long cells = ipow(n, ar);
    table.reserve(cells);
    for (long long t = 0; t < cells; ++t) {
      auto args = tuple_of(t, n, ar);
      std::vector<int> la, lb;
      for (int x : args) {
        la.push_back(x / nb);
        lb.push_back(x % nb);
      }
      table.push_back(a.apply(op, la) * nb + b.apply(op, lb));
    }
  }

  Homomorphism p1{p, a, {}}, p2{p, b, {}};
  for (int x = 0; x < n; ++x) {
    p1.map.push_back(x / nb);
    p2.map.push_back(x % nb);
  }
  return ProductResult{std::move(p), std::move(p1), std::move(p2)};
}

namespace {

// Restriction of an algebra to a closed subset given by ascending indices.
SubalgebraResult restrict_to(const FuzzyAlgebra& a, const std::vector<int>& keep) {
  std::vector<int> pos(a.size(), -1);
  for (size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);

  FuzzyAlgebra s;
  s.name = a.name + ".sub";
  s.frame = a.frame;
  s.lang = a.lang;
  for (int x : keep) {
    s.carrier.push_back(a.carrier[x]);
    s.mu.push_back(a.mu[x]);
  }
  for (const auto& c : a.lang.sig.consts) s.consts[c] = pos[a.constant(c)];
  const int n = static_cast<int>(keep.size());
  for (const auto& [op, ar] : a.lang.sig.ops) {
    std::vector<int>& table = s.ops[op];
    long long cells = ipow(n, ar);
    for (long long t = 0; t < cells; ++t) {
      auto args = tuple_of(t, n, ar);
      std::vector<int> orig;
      for (int x : args) orig.push_back(keep[x]);
      table.push_back(pos[a.apply(op, orig)]);
    }
  }
  Homomorphism inc{s, a, keep};
  return SubalgebraResult{std::move(s), std::move(inc)};
}

std::vector<int> op_closure(const FuzzyAlgebra& a, std::vector<int> seed) {
  std::vector<bool> in(a.size(), false);
  for (int x : seed) in[x] = true;
  for (const auto& c : a.lang.sig.consts) in[a.constant(c)] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur;
    for (int x = 0; x < a.size(); ++x)
      if (in[x]) cur.push_back(x);
    for (const auto& [op, ar] : a.lang.sig.ops) {
      const int m = static_cast<int>(cur.size());
      if (m == 0) break;
      long long cells = ipow(m, ar);
      for (long long t = 0; t < cells; ++t) {
        auto args = tuple_of(t, m, ar);
        std::vector<int> orig;
        for (int x : args) orig.push_back(cur[x]);
        int r = a.apply(op, orig);
        if (!in[r]) {
          in[r] = true;
          grew = true;
        }
      }
    }
  }
  std::vector<int> keep;
  for (int x = 0; x < a.size(); ++x)
    if (in[x]) keep.push_back(x);
  return keep;
}

}  // namespace

SubalgebraResult generated_subalgebra(const FuzzyAlgebra& a,
                                      const FuzzyMapInto& f) {
  a.validate();
  std::vector<int> seed;
  for (const auto& [name, lvl] : f.domain.elems) {
    auto it = f.image.find(name);
    if (it == f.image.end())
      fail(ErrorKind::NotAFuzzyMap, "generator '" + name + "' has no image");
    if (it->second < 0 || it->second >= a.size())
      fail(ErrorKind::BadInput, "image of '" + name + "' outside the carrier");
    if (lvl.owner != a.frame.get())
      fail(ErrorKind::FrameMismatch, "level of '" + name + "' from a different frame");
    if (!a.frame->leq(lvl, a.mu[it->second]))
      fail(ErrorKind::NotAFuzzyMap,
           "level of '" + name + "' exceeds the level of its image");
    seed.push_back(it->second);
  }
  for (const auto& [name, img] : f.image)
    if (!f.domain.find(name))
      fail(ErrorKind::UnknownName, "image for undeclared generator '" + name + "'");
  return restrict_to(a, op_closure(a, std::move(seed)));
}

SubalgebraResult generated_subalgebra(const FuzzyAlgebra& a,
                                      const std::vector<int>& gens) {
  a.validate();
  for (int x : gens)
    if (x < 0 || x >= a.size())
      fail(ErrorKind::BadInput, "generator outside the carrier");
  return restrict_to(a, op_closure(a, gens));
}

Factorization image_factorization(const Homomorphism& h) {
  h.validate();
  std::vector<int> image = h.map;
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());

  SubalgebraResult sub = restrict_to(h.target, image);
  sub.algebra.name = h.target.name + ".im";
  sub.inclusion.source.name = sub.algebra.name;

  std::vector<int> pos(h.target.size(), -1);
  for (size_t i = 0; i < image.size(); ++i) pos[image[i]] = static_cast<int>(i);
  Homomorphism onto{h.source, sub.inclusion.source, {}};
  for (int a = 0; a < h.source.size(); ++a) onto.map.push_back(pos[h.map[a]]);
  return Factorization{std::move(onto), std::move(sub.inclusion)};
}

void FuzzyCongruence::validate() const {
  base.validate();
  const int n = base.size();
  const int k = class_count();
  if (static_cast<int>(cls.size()) != n)
    fail(ErrorKind::InvalidCongruence, "class labels do not cover the carrier");
  std::vector<int> seen(k, 0);
  for (int a = 0; a < n; ++a) {
    if (cls[a] < 0 || cls[a] >= k)
      fail(ErrorKind::InvalidCongruence,
           "class label of '" + base.carrier[a] + "' out of range");
    ++seen[cls[a]];
  }
  for (int c = 0; c < k; ++c)
    if (seen[c] == 0)
      fail(ErrorKind::InvalidCongruence, "class " + std::to_string(c) + " is empty");
  const Frame& fr = *base.frame;
  for (int c = 0; c < k; ++c)
    if (level[c].owner != base.frame.get())
      fail(ErrorKind::FrameMismatch, "class level from a different frame");
  for (int a = 0; a < n; ++a)
    if (!fr.leq(base.mu[a], level[cls[a]]))
      fail(ErrorKind::InvalidCongruence,
           "level of class drops below mu at '" + base.carrier[a] + "'");

  for (const auto& [op, ar] : base.lang.sig.ops) {
    std::map<std::vector<int>, std::pair<int, std::vector<int>>> seen_key;
    long long cells = ipow(n, ar);
    for (long long t = 0; t < cells; ++t) {
      auto args = tuple_of(t, n, ar);
      std::vector<int> key;
      for (int x : args) key.push_back(cls[x]);
      int rc = cls[base.apply(op, args)];
      auto [it, fresh] = seen_key.try_emplace(key, rc, args);
      if (!fresh && it->second.first != rc)
        fail(ErrorKind::InvalidCongruence,
             "operation '" + op + "' is not compatible: " +
                 tuple_str(base, op, it->second.second) + " and " +
                 tuple_str(base, op, args) + " land in different classes");
      FrameElem floor = fr.top();
      for (int c : key) floor = fr.meet(floor, level[c]);
      if (!fr.leq(floor, level[rc]))
        fail(ErrorKind::InvalidCongruence,
             "class level law fails at " + tuple_str(base, op, args));
    }
  }
}

QuotientResult quotient(const FuzzyAlgebra& a, const FuzzyCongruence& theta) {
  theta.validate();
  if (!(theta.base == a))
    fail(ErrorKind::InvalidCongruence, "congruence is over a different algebra");
  const int n = a.size(), k = theta.class_count();

  std::vector<int> rep(k, -1);
  for (int x = 0; x < n; ++x)
    if (rep[theta.cls[x]] < 0) rep[theta.cls[x]] = x;

  FuzzyAlgebra q;
  q.name = a.name + "/~";
  q.frame = a.frame;
  q.lang = a.lang;
  for (int c = 0; c < k; ++c) {
    q.carrier.push_back("[" + a.carrier[rep[c]] + "]");
    q.mu.push_back(theta.level[c]);
  }
  for (const auto& c : a.lang.sig.consts) q.consts[c] = theta.cls[a.constant(c)];
  for (const auto& [op, ar] : a.lang.sig.ops) {
    std::vector<int>& table = q.ops[op];
    long long cells = ipow(k, ar);
    for (long long t = 0; t < cells; ++t) {
      auto args = tuple_of(t, k, ar);
      std::vector<int> picks;
      for (int c : args) picks.push_back(rep[c]);
      table.push_back(theta.cls[a.apply(op, picks)]);
    }
  }
  Homomorphism proj{a, q, theta.cls};
  return QuotientResult{std::move(q), std::move(proj)};
}

FuzzyCongruence kernel_congruence(const Homomorphism& h) {
  h.validate();
  MorphismFlags f = classify_morphism(h);
  if (!f.epi) fail(ErrorKind::NotEpi, "kernel congruence requires an epimorphism");

  FuzzyCongruence theta;
  theta.base = h.source;
  std::map<int, int> cls_of_target;
  for (int a = 0; a < h.source.size(); ++a) {
    auto [it, fresh] =
        cls_of_target.try_emplace(h.map[a], static_cast<int>(theta.level.size()));
    if (fresh) theta.level.push_back(h.target.mu[h.map[a]]);
    theta.cls.push_back(it->second);
  }
  return theta;
}

std::vector<FuzzyCongruence> enumerate_congruences(const FuzzyAlgebra& a,
                                                   int size_bound) {
  a.validate();
  const int n = a.size();
  if (n > size_bound)
    fail(ErrorKind::SizeBoundExceeded,
         "carrier of " + std::to_string(n) + " exceeds the bound of " +
             std::to_string(size_bound));
  const Frame& fr = *a.frame;
  std::vector<FuzzyCongruence> out;

  std::vector<int> c(n, 0);
  auto emit = [&]() {
    int k = n == 0 ? 0 : *std::max_element(c.begin(), c.end()) + 1;

    // operation compatibility: the result class must depend on arg classes only
    for (const auto& [op, ar] : a.lang.sig.ops) {
      std::map<std::vector<int>, int> key_to;
      long long cells = ipow(n, ar);
      for (long long t = 0; t < cells; ++t) {
        auto args = tuple_of(t, n, ar);
        std::vector<int> key;
        for (int x : args) key.push_back(c[x]);
        int rc = c[a.apply(op, args)];
        auto [it, fresh] = key_to.try_emplace(std::move(key), rc);
        if (!fresh && it->second != rc) return;
      }
    }

    // least admissible level map above the classwise join of mu
    std::vector<FrameElem> lvl(k, fr.bot());
    for (int x = 0; x < n; ++x) lvl[c[x]] = fr.join(lvl[c[x]], a.mu[x]);
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& [op, ar] : a.lang.sig.ops) {
        long long cells = ipow(n, ar);
        for (long long t = 0; t < cells; ++t) {
          auto args = tuple_of(t, n, ar);
          FrameElem floor = fr.top();
          for (int x : args) floor = fr.meet(floor, lvl[c[x]]);
          int rc = c[a.apply(op, args)];
          FrameElem up = fr.join(lvl[rc], floor);
          if (!(up == lvl[rc])) {
            lvl[rc] = up;
            grew = true;
          }
        }
      }
    }
    out.push_back(FuzzyCongruence{a, c, std::move(lvl)});
  };

  if (n == 0) {
    emit();
    return out;
  }
  // restricted growth strings enumerate set partitions exactly once
  while (true) {
    emit();
    int i = n - 1;
    for (; i > 0; --i) {
      int cap = *std::max_element(c.begin(), c.begin() + i) + 1;
      if (c[i] < cap) {
        ++c[i];
        std::fill(c.begin() + i + 1, c.end(), 0);
        break;
      }
      c[i] = 0;
    }
    if (i == 0) break;
  }
  return out;
}

std::optional<std::vector<int>> find_isomorphism(const FuzzyAlgebra& a,
                                                 const FuzzyAlgebra& b) {
  a.validate();
  b.validate();
  if (a.size() != b.size()) return std::nullopt;
  if (!(a.lang.sig == b.lang.sig)) return std::nullopt;
  if (a.frame.get() != b.frame.get() && !a.frame->same_structure(*b.frame))
    return std::nullopt;
  const int n = a.size();

  std::vector<int> pi(n, -1);
  std::vector<bool> used(n, false);
  for (const auto& c : a.lang.sig.consts) {
    int x = a.constant(c), y = b.constant(c);
    if (pi[x] >= 0 && pi[x] != y) return std::nullopt;
    if (pi[x] < 0 && used[y]) return std::nullopt;
    pi[x] = y;
    used[y] = true;
  }

  auto ok_total = [&]() {
    for (int x = 0; x < n; ++x)
      if (a.mu[x].id != b.mu[pi[x]].id) return false;
    for (const auto& [op, ar] : a.lang.sig.ops) {
      long long cells = ipow(n, ar);
      for (long long t = 0; t < cells; ++t) {
        auto args = tuple_of(t, n, ar);
        std::vector<int> mapped;
        for (int x : args) mapped.push_back(pi[x]);
        if (pi[a.apply(op, args)] != b.apply(op, mapped)) return false;
      }
    }
    return true;
  };

  std::function<bool(int)> go = [&](int x) -> bool {
    if (x == n) return ok_total();
    if (pi[x] >= 0) return go(x + 1);
    for (int y = 0; y < n; ++y) {
      if (used[y] || a.mu[x].id != b.mu[y].id) continue;
      pi[x] = y;
      used[y] = true;
      if (go(x + 1)) return true;
      pi[x] = -1;
      used[y] = false;
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return pi;
}

bool isomorphic(const FuzzyAlgebra& a, const FuzzyAlgebra& b) {
  return find_isomorphism(a, b).has_value();
}

namespace {

// Flat encoding used to pick the canonical member of an isomorphism orbit.
std::vector<int> encode(const FuzzyAlgebra& a, const std::vector<int>& pi) {
  const int n = a.size();
  std::vector<int> inv(n);
  for (int x = 0; x < n; ++x) inv[pi[x]] = x;
  std::vector<int> code;
  for (int y = 0; y < n; ++y) code.push_back(a.mu[inv[y]].id);
  for (const auto& kv : a.consts) code.push_back(pi[kv.second]);
  for (const auto& [op, ar] : a.lang.sig.ops) {
    long long cells = ipow(n, ar);
    for (long long t = 0; t < cells; ++t) {
      auto args = tuple_of(t, n, ar);
      std::vector<int> orig;
      for (int y : args) orig.push_back(inv[y]);
      code.push_back(pi[a.apply(op, orig)]);
    }
  }
  return code;
}

bool is_canonical(const FuzzyAlgebra& a) {
  const int n = a.size();
  std::vector<int> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  const std::vector<int> own = encode(a, pi);
  while (std::next_permutation(pi.begin(), pi.end()))
    if (encode(a, pi) < own) return false;
  return true;
}

}  // namespace

bool for_each_algebra(const FramePtr& fr, const Language& lang, int n,
                      const std::function<bool(const FuzzyAlgebra&)>& fn,
                      bool prune_isomorphic) {
  lang.validate();
  if (n < 0) fail(ErrorKind::BadInput, "negative carrier size");
  if (n == 0) {
    if (!lang.sig.consts.empty()) return true;
    FuzzyAlgebra a;
    a.frame = fr;
    a.lang = lang;
    for (const auto& kv : lang.sig.ops) a.ops[kv.first];
    return fn(a);
  }

  FuzzyAlgebra a;
  a.frame = fr;
  a.lang = lang;
  for (int i = 0; i < n; ++i) a.carrier.push_back("e" + std::to_string(i));
  a.mu.assign(n, fr->bot());

  std::vector<std::string> const_names(lang.sig.consts.begin(),
                                       lang.sig.consts.end());
  struct Cell {
    std::string op;
    long long idx;
    std::vector<int> candidates;
  };

  // fill one mu assignment's tables cell by cell, candidates ascending
  auto tables = [&](const std::vector<Cell>& cells, auto&& self,
                    size_t at) -> bool {
    if (at == cells.size()) {
      if (prune_isomorphic && !is_canonical(a)) return true;
      return fn(a);
    }
    const Cell& c = cells[at];
    for (int r : c.candidates) {
      a.ops[c.op][c.idx] = r;
      if (!self(cells, self, at + 1)) return false;
    }
    return true;
  };

  auto consts_rec = [&](const std::vector<Cell>& cells, auto&& self,
                        size_t at) -> bool {
    if (at == const_names.size()) return tables(cells, tables, 0);
    for (int v = 0; v < n; ++v) {
      a.consts[const_names[at]] = v;
      if (!self(cells, self, at + 1)) return false;
    }
    return true;
  };

  std::vector<int> m(n, 0);
  const int hsize = fr->size();
  while (true) {
    for (int i = 0; i < n; ++i) a.mu[i] = fr->elem(m[i]);

    // per-cell candidate sets under the compatibility law
    std::vector<Cell> cells;
    bool feasible = true;
    for (const auto& [op, ar] : lang.sig.ops) {
      a.ops[op].assign(ipow(n, ar), 0);
      long long total = ipow(n, ar);
      for (long long t = 0; t < total && feasible; ++t) {
        auto args = tuple_of(t, n, ar);
        FrameElem floor = fr->top();
        for (int x : args) floor = fr->meet(floor, a.mu[x]);
        Cell c{op, t, {}};
        for (int r = 0; r < n; ++r)
          if (fr->leq(floor, a.mu[r])) c.candidates.push_back(r);
        if (c.candidates.empty()) feasible = false;
        cells.push_back(std::move(c));
      }
      if (!feasible) break;
    }
    if (feasible && !consts_rec(cells, consts_rec, 0)) return false;

    int i = 0;
    for (; i < n; ++i) {
      if (++m[i] < hsize) break;
      m[i] = 0;
    }
    if (i == n) break;
  }
  return true;
}

}  // namespace fuzzalg
