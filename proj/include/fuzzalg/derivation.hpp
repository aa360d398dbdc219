#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fuzzalg/logic.hpp"

namespace fuzzalg {

// Rules of the sequent calculus, plus Axiom for leaves citing the theory.
enum class Rule {
  A,      // assumption: conclusion formula occurs among its premises
  Weak,   // widen the premise set by delta
  Cut,    // one premise per formula of phi, then phi |- psi
  Refl,   // |- s == s
  Sym,
  Trans,  // s==t, t==u  =>  s==u
  Sub,    // apply a substitution to the whole sequent
  Cong,   // argumentwise equations under an operation
  Inf,    // |- mem bot t
  Mon,    // lower a membership level by meeting with the side level
  Exp,    // memberships of arguments give membership of the application
  Sup,    // one premise per level of S, conclusion at sup S
  Fun,    // t==s and mem l t give mem l s
  Axiom,  // axiom of the ambient theory, by index
};

const char* to_string(Rule r);

struct DerivNode;

// Immutable derivation tree; cheap to copy, subtrees may be shared.
class Derivation {
 public:
  Derivation() = default;
  explicit Derivation(std::shared_ptr<const DerivNode> n) : node_(std::move(n)) {}

  bool ok() const { return node_ != nullptr; }
  const DerivNode& node() const { return *node_; }
  const DerivNode* ptr() const { return node_.get(); }

  const Sequent& conclusion() const;
  int node_count() const;
  bool uses_rule(Rule r) const;

 private:
  std::shared_ptr<const DerivNode> node_;
};

struct DerivNode {
  Rule rule;
  Sequent conclusion;
  std::vector<Derivation> premises;

  // side data, used depending on the rule
  std::vector<Formula> formulas{};  // Weak: delta, Cut: phi
  Substitution subst{};             // Sub
  std::string op{};                 // Cong, Exp
  FrameElem level{};                // Mon
  std::vector<FrameElem> levels{};  // Sup: S, sorted
  int axiom_index = -1;             // Axiom
};

// Construction helpers. Conclusions are computed from the premises, so trees
// built this way are valid by construction (the checker still re-verifies).
namespace build {

Derivation axiom(const Theory& th, int index);
Derivation assume(std::vector<Formula> gamma, Formula phi);
Derivation weak(Derivation d, std::vector<Formula> delta);
// Last argument derives phi |- psi; gamma_proofs derive gamma |- f for every
// f in phi, listed in the premise-set order.
Derivation cut(std::vector<Derivation> gamma_proofs, Derivation main);
Derivation refl(std::vector<Formula> gamma, Term s);
Derivation sym(Derivation d);
Derivation trans(Derivation st, Derivation tu);
Derivation sub(Derivation d, Substitution sigma);
Derivation cong(const std::string& op, std::vector<Derivation> eqs);
Derivation inf(const Frame& frame, std::vector<Formula> gamma, Term t);
Derivation mon(Derivation d, FrameElem l);
Derivation exp(const std::string& op, std::vector<Derivation> mems);
Derivation sup(std::vector<Derivation> mems);
Derivation fun(Derivation eq, Derivation mem);

}  // namespace build

}  // namespace fuzzalg
