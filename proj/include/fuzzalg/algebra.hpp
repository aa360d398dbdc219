#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fuzzalg/logic.hpp"

namespace fuzzalg {

// Finite algebra over a fuzzy carrier: every element carries a membership
// level, and operations may not drop below the meet of their inputs' levels.
// Constants are unconstrained in level.
struct FuzzyAlgebra {
  std::string name;
  FramePtr frame;
  Language lang;
  std::vector<std::string> carrier;  // element names; index is the element id
  std::vector<FrameElem> mu;         // level per element
  // Per operation a total table A^ar -> A, row-major with the first argument
  // varying slowest: index = ((a1*n + a2)*n + ...) + ak.
  std::map<std::string, std::vector<int>> ops;
  std::map<std::string, int> consts;

  int size() const { return static_cast<int>(carrier.size()); }
  int element(const std::string& elem_name) const;  // UnknownName
  int apply(const std::string& op, const std::vector<int>& args) const;
  int constant(const std::string& c) const;
  FrameElem level(int a) const { return mu.at(a); }

  // Checks table totality, constant coverage and operation compatibility.
  // Throws OpNotCompatible / MissingConstInterpretation /
  // EmptyCarrierWithConstants / BadInput with a witness in the message.
  void validate() const;

  // Value equality; frames are compared structurally so re-parsed copies
  // compare equal to their originals.
  bool operator==(const FuzzyAlgebra& o) const;
  bool operator!=(const FuzzyAlgebra& o) const { return !(*this == o); }
};

// Carrier map between algebras over one frame and signature.
struct Homomorphism {
  FuzzyAlgebra source, target;
  std::vector<int> map;  // source element id -> target element id

  int operator()(int a) const { return map.at(a); }
  // Hom laws: levels may only rise, constants and operations commute.
  // Throws NotAHomomorphism with the violating element or tuple.
  void validate() const;
};

Homomorphism identity_hom(const FuzzyAlgebra& a);
// then o first; the middle algebras must be equal.
Homomorphism compose(const Homomorphism& first, const Homomorphism& then);

struct MorphismFlags {
  bool mono = false;
  bool epi = false;
  bool strong_mono = false;  // injective and level-preserving
  bool split_epi = false;    // every element has a level-matching preimage
};

// Classification of the underlying fuzzy-set morphism.
MorphismFlags classify_morphism(const Homomorphism& h);

struct ProductResult {
  FuzzyAlgebra algebra;  // carrier A x B, levels are pointwise meets
  Homomorphism proj1, proj2;
};

ProductResult product(const FuzzyAlgebra& a, const FuzzyAlgebra& b);

// A fuzzy set of generator names mapped into an algebra's carrier.
struct FuzzyMapInto {
  FuzzySet domain;
  std::map<std::string, int> image;  // generator name -> carrier element
};

struct SubalgebraResult {
  FuzzyAlgebra algebra;
  Homomorphism inclusion;  // always a strong mono
};

// Least subalgebra containing the image and all constants.
SubalgebraResult generated_subalgebra(const FuzzyAlgebra& a,
                                      const FuzzyMapInto& f);
// Same with plain carrier elements as generators.
SubalgebraResult generated_subalgebra(const FuzzyAlgebra& a,
                                      const std::vector<int>& gens);

struct Factorization {
  Homomorphism epi;   // source onto the image, levels from the target
  Homomorphism mono;  // inclusion of the image
};

// h = mono o epi, exactly.
Factorization image_factorization(const Homomorphism& h);

// Operation-compatible equivalence with a class-constant level map mu'
// satisfying mu'(f(as)) >= inf mu'(as) and mu' >= mu pointwise.
struct FuzzyCongruence {
  FuzzyAlgebra base;
  std::vector<int> cls;          // element -> class id (0-based, all used)
  std::vector<FrameElem> level;  // per class

  int class_count() const { return static_cast<int>(level.size()); }
  void validate() const;  // InvalidCongruence with a witness
};

struct QuotientResult {
  FuzzyAlgebra algebra;     // carrier = classes, mu = the congruence levels
  Homomorphism projection;  // always an epi
};

QuotientResult quotient(const FuzzyAlgebra& a, const FuzzyCongruence& theta);

// a ~ b iff h(a) = h(b), with mu'(a) = mu_target(h(a)). Requires h epi.
FuzzyCongruence kernel_congruence(const Homomorphism& h);

// All operation-compatible partitions, each with the least admissible level
// map above the classwise join of mu (computed by fixpoint iteration).
std::vector<FuzzyCongruence> enumerate_congruences(const FuzzyAlgebra& a,
                                                   int size_bound = 8);

// Carrier bijection respecting levels, operations and constants.
std::optional<std::vector<int>> find_isomorphism(const FuzzyAlgebra& a,
                                                 const FuzzyAlgebra& b);
bool isomorphic(const FuzzyAlgebra& a, const FuzzyAlgebra& b);

// Enumerates every valid algebra with carrier e0..e{n-1} over the frame and
// signature, in a fixed deterministic order; fn returns false to stop early.
// Returns false when stopped. With prune_isomorphic only the representative
// whose encoding is minimal in its isomorphism class is visited.
bool for_each_algebra(const FramePtr& fr, const Language& lang, int n,
                      const std::function<bool(const FuzzyAlgebra&)>& fn,
                      bool prune_isomorphic = false);

}  // namespace fuzzalg
