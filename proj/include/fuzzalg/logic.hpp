#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fuzzalg/frame.hpp"
#include "fuzzalg/syntax.hpp"

namespace fuzzalg {

// Atomic formula: either an equation s == t or a membership statement
// "the degree of existence of t is at least l", written  mem l t.
struct Formula {
  enum class Kind { Eq, Mem } kind;
  Term lhs, rhs;    // Eq: both; Mem: lhs only
  FrameElem level;  // Mem only

  static Formula eq(Term s, Term t);
  static Formula mem(FrameElem l, Term t);

  bool is_eq() const { return kind == Kind::Eq; }
  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }
  bool operator<(const Formula& o) const;

  std::set<std::string> variables() const;
  std::string str(const Frame& frame) const;
};

Formula apply_subst(const Formula& f, const Substitution& s);

// Finite-premise sequent Gamma |- psi. Premises are kept sorted and
// deduplicated, so equal sequents compare equal structurally.
struct Sequent {
  std::vector<Formula> premises;
  Formula conclusion;

  Sequent(std::vector<Formula> prem, Formula concl);
  Sequent() : conclusion(Formula::eq(Term::var("?"), Term::var("?"))) {}

  bool has_premise(const Formula& f) const;
  bool operator==(const Sequent&) const;
  bool operator!=(const Sequent& o) const { return !(*this == o); }
  bool operator<(const Sequent& o) const;

  std::set<std::string> variables() const;
  std::string str(const Frame& frame) const;
};

Sequent apply_subst(const Sequent& s, const Substitution& sub);

// Union of two premise sets (sorted, deduplicated).
std::vector<Formula> premise_union(const std::vector<Formula>& a,
                                   const std::vector<Formula>& b);

// A named fuzzy set of fresh symbols: used both for extending theories with
// constants and as generator declarations.
struct FuzzySet {
  std::vector<std::pair<std::string, FrameElem>> elems;

  std::optional<FrameElem> find(const std::string& name) const;
  // Elements with level above bottom.
  std::vector<std::string> support(const Frame& frame) const;
};

struct Theory {
  std::string name;
  FramePtr frame;
  Language lang;
  std::vector<Sequent> axioms;

  void validate() const;
  std::optional<int> find_axiom(const Sequent& s) const;
};

enum class TheoryClass { Unconditional, TypeE, Basic, General };
const char* to_string(TheoryClass c);

struct ClassifyResult {
  TheoryClass cls;
  // index of the first axiom ruling out the next stronger class, -1 if none
  int first_not_unconditional = -1;
  int first_not_type_e = -1;
  int first_not_basic = -1;
};

// Strongest label that applies: Unconditional < TypeE < Basic < General.
ClassifyResult classify_theory(const Theory& th);

Formula map_formula(const LanguageMorphism& F, const Formula& f);
Sequent map_sequent(const LanguageMorphism& F, const Sequent& s);

// Direct image of the axiom set under Seq(F).
Theory transport_theory_fwd(const Theory& th, const LanguageMorphism& F);
// Preimage of the axiom set under Seq(F); finite because each sequent has
// finitely many preimages. Adjoint to the direct image:
//   fwd(L1) subset of L2  iff  L1 subset of bwd(L2).
Theory transport_theory_bwd(const Theory& th, const LanguageMorphism& F);

std::vector<Sequent> sequent_preimages(const LanguageMorphism& F, const Sequent& s);

// Adds formulas of Gamma as premise-free axioms (the theory written
// Lambda[Gamma]); new axioms are appended, existing indices are unchanged.
Theory extend_with_formulas(const Theory& th, const std::vector<Formula>& gamma);

// Adds one fresh constant per element of M plus the membership axiom
// |- mem mu(m) m for each; weaker levels are derivable by monotonicity.
Theory extend_with_fuzzy_set(const Theory& th, const FuzzySet& m);

}  // namespace fuzzalg
