#pragma once

// Shared helpers for the test binaries: small preset languages and
// deterministic random generation of terms and substitutions.

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fuzzalg/checker.hpp"
#include "fuzzalg/derivation.hpp"
#include "fuzzalg/syntax.hpp"

namespace testsup {

using namespace fuzzalg;

inline Language group_lang() {
  Language l;
  l.sig.ops = {{"mul", 2}, {"inv", 1}};
  l.sig.consts = {"e"};
  l.vars = {"x", "y", "z"};
  l.validate();
  return l;
}

inline Language semigroup_lang() {
  Language l;
  l.sig.ops = {{"mul", 2}};
  l.vars = {"x", "y", "z"};
  l.validate();
  return l;
}

using Rng = std::mt19937;

inline Term random_term(const Language& lang, Rng& rng, int max_depth) {
  std::vector<std::pair<std::string, int>> ops(lang.sig.ops.begin(),
                                               lang.sig.ops.end());
  std::uniform_int_distribution<int> coin(0, 99);
  auto pick = [&](const auto& xs) { return xs[rng() % xs.size()]; };

  std::vector<std::string> leaves(lang.vars);
  leaves.insert(leaves.end(), lang.sig.consts.begin(), lang.sig.consts.end());

  std::function<Term(int)> gen = [&](int d) -> Term {
    bool leaf = d <= 0 || ops.empty() || coin(rng) < 35;
    if (leaf && !leaves.empty()) {
      const std::string& n = pick(leaves);
      return lang.has_var(n) ? Term::var(n) : Term::cnst(n);
    }
    auto [op, ar] = pick(ops);
    TermVec args;
    for (int i = 0; i < ar; ++i) args.push_back(gen(d - 1));
    return Term::app(op, std::move(args));
  };
  return gen(max_depth);
}

inline Substitution random_subst(const Language& lang, Rng& rng,
                                 int max_depth = 2) {
  Substitution s;
  for (const auto& v : lang.vars)
    if (rng() % 2) s[v] = random_term(lang, rng, max_depth);
  return s;
}

// Rebuilds the tree with the node at `path` replaced by edit(copy of node).
// Editing conclusions or side data this way produces broken trees on purpose.
inline Derivation mutate(const Derivation& d, const NodePath& path,
                         const std::function<void(DerivNode&)>& edit,
                         size_t at = 0) {
  auto n = std::make_shared<DerivNode>(d.node());
  if (at == path.size()) {
    edit(*n);
  } else {
    int i = path[at];
    n->premises[i] = mutate(n->premises[i], path, edit, at + 1);
  }
  return Derivation(std::move(n));
}

}  // namespace testsup
