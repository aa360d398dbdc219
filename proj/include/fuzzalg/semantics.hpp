#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fuzzalg/algebra.hpp"
#include "fuzzalg/saturate.hpp"

namespace fuzzalg {

// Total map from a finite variable set into a carrier.
using Assignment = std::map<std::string, int>;

// Structural evaluation of t under iota: variables via iota, constants and
// applications via the algebra's interpretation.
int eval(const FuzzyAlgebra& a, const Assignment& iota, const Term& t);

// Mem l t: l <= mu(eval t). Eq s t: equal evaluations.
bool satisfies_formula(const FuzzyAlgebra& a, const Assignment& iota,
                       const Formula& f);

struct SequentCheck {
  bool holds = true;
  // A violating assignment of the sequent's variables, when it fails.
  std::optional<Assignment> counter;
};

// Quantifies over the variables occurring in s only. On an empty carrier
// every sequent holds: there are no assignments.
SequentCheck satisfies_sequent(const FuzzyAlgebra& a, const Sequent& s);

struct ModelCheck {
  bool ok = true;
  int failing_axiom = -1;
  std::optional<Assignment> counter;
};

// Checks the axioms in order and stops at the first failure.
ModelCheck is_model(const FuzzyAlgebra& a, const Theory& th);

struct Countermodel {
  FuzzyAlgebra algebra;
  Assignment assignment;
};

struct CountermodelResult {
  int bound = 0;
  std::optional<Countermodel> counter;

  bool none_up_to() const { return !counter.has_value(); }
};

// Searches models of th violating s, by carrier size 1..max_size over fr (the
// theory's frame when fr is null). Enumeration order is fixed and isomorphism
// classes are visited once, so the reported countermodel is reproducible and
// an empty result is exhaustive up to the bound.
CountermodelResult find_countermodel(const Theory& th, const Sequent& s,
                                     int max_size, FramePtr fr = nullptr);

struct TermClass {
  Term rep;         // least member in the term order
  Term witness;     // least-depth member
  FrameElem level;  // join of the derived membership levels
  // The witness mentions at most depth-bound many constant occurrences; the
  // class mirrors the untruncated term model. Classes beyond that line sit at
  // the truncation frontier and are only partially merged.
  bool complete = false;
};

// Bounded fragment of a theory's term model: the saturation classes of
// ground terms of depth <= depth with their derived levels. When every class
// is complete and every operation application lands back in the universe the
// induced algebra over the classes is exposed.
struct TermModel {
  int depth = 0;
  GroundClosure closure;
  std::vector<TermClass> classes;  // sorted by representative
  bool closed = false;
  std::optional<FuzzyAlgebra> algebra;  // present iff closed

  const Theory& theory() const { return closure.theory(); }
  int class_count() const { return static_cast<int>(classes.size()); }
  // Index into classes of the class containing t, for universe terms.
  std::optional<int> class_of(const Term& t) const;
};

// Saturates th over ground terms of depth <= depth and packages the fixpoint.
// Throws BudgetExhausted when the budget truncates saturation.
TermModel term_model(const Theory& th, int depth, SaturateBudget budget = {});

struct FreeModel {
  TermModel model;  // term model of the theory extended with the generators
  // Unit: generator name -> index into model.classes. Levels only rise.
  std::map<std::string, int> unit;
};

// Free model of th on the fuzzy generator set m, truncated at depth.
FreeModel free_model(const Theory& th, const FuzzySet& m, int depth,
                     SaturateBudget budget = {});

}  // namespace fuzzalg
