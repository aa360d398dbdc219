#pragma once

#include "fuzzalg/derivation.hpp"

namespace fuzzalg {

struct CheckOptions {
  // Also accept a transitivity step whose conclusion repeats its second
  // premise (a sound but vacuous reading of the rule).
  bool paper_literal = false;
};

// Path from the root: child indices into premises, e.g. {1,0} is the first
// premise of the second premise of the root.
using NodePath = std::vector<int>;

std::string path_str(const NodePath& p);

struct CheckResult {
  bool ok = false;
  Sequent verified;        // root conclusion when ok
  NodePath error_path;     // deepest failing node otherwise
  std::string error_rule;
  std::string message;

  explicit operator bool() const { return ok; }
};

// Re-derives every node's conclusion from its premises and side data.
// Shared subtrees are verified once.
CheckResult check_derivation(const Theory& th, const Derivation& d,
                             const CheckOptions& opts = {});

// Splits assumptions: given a derivation of (gamma u delta) |- psi from th,
// returns a derivation of delta |- psi from extend_with_formulas(th, gamma).
// Every formula of gamma must occur among the conclusion's premises.
Derivation deduction_split(const Theory& th, const std::vector<Formula>& gamma,
                           const Derivation& d);

// Inverse direction, for derivations that never use Sub: given a derivation
// of delta |- psi from extend_with_formulas(th, gamma), returns one of
// (gamma u delta) |- psi from th. Throws ContainsSub with the node path of
// the first substitution step otherwise.
Derivation deduction_merge(const Theory& th, const std::vector<Formula>& gamma,
                           const Derivation& d);

}  // namespace fuzzalg
