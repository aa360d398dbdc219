#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fuzzalg/algebra.hpp"

namespace fuzzalg {

// An equation over a fuzzy generator set (X, mu_X), presented by its finite
// target algebra B and the generator images. B must be generated by v(X)
// together with the constants, so a homomorphism out of B is determined by
// where the generators go.
struct XEquation {
  FuzzySet generators;              // (X, mu_X)
  FuzzyAlgebra target;              // B
  std::map<std::string, int> valuation;  // v: generator name -> element of B

  // NameClash for repeated generators, NotAFuzzyMap when a level exceeds its
  // image's, NotGenerated when v(X) plus constants generate a proper part.
  void validate() const;
};

struct EquationCheck {
  bool holds = true;
  // A fuzzy assignment of the generators with no extension, when one exists.
  std::optional<std::map<std::string, int>> witness;
};

// A satisfies e when every fuzzy assignment h: X -> A extends to a
// homomorphism q: B -> A with q(v(x)) = h(x). q is propagated from the
// generators through B's operation closure and checked for consistency and
// level preservation.
EquationCheck satisfies_equation(const FuzzyAlgebra& a, const XEquation& e);

// Finite presentation of the equation as a theory: one witness term per
// element of B (breadth-first from the generators and constants, minimal in
// the term order), membership axioms carrying mu_B, one equation per table
// cell and per constant. All premises are the generator memberships over
// supp(X), so the premise count never exceeds |supp(X)|.
Theory equation_to_theory(const XEquation& e);

// The premise-free variant; requires every generator level to be bottom.
// SupportNotEmpty otherwise.
Theory unconditional_equation_to_theory(const XEquation& e);

enum class ClosureMode { HSP_epi, HSP_split };

struct ClosureViolation {
  std::string kind;  // "product" | "subalgebra" | "epi_image" | "split_epi_image"
  std::string detail;
  std::vector<FuzzyAlgebra> inputs;
  std::vector<int> gens;                // subalgebra violations: the generators
  std::optional<FuzzyCongruence> cong;  // image violations: the congruence
  FuzzyAlgebra witness;
};

struct ClosureReport {
  ClosureMode mode = ClosureMode::HSP_epi;
  std::vector<FuzzyAlgebra> family;
  bool products = true;
  bool strong_subalgebras = true;
  // Engaged in HSP_epi mode only; split-epi images are checked in both modes.
  std::optional<bool> epi_images;
  bool split_epi_images = true;
  std::vector<ClosureViolation> violations;

  bool all_closed() const {
    return products && strong_subalgebras && split_epi_images &&
           (!epi_images.has_value() || *epi_images);
  }
};

// Searches the family for closure violations: binary products of members,
// generated subalgebras over every generator subset, and quotients by every
// operation-compatible congruence at every admissible level map (split-epi
// ones only in HSP_split mode). Membership of a constructed algebra means
// isomorphism to some member. The first violation per category is reported,
// with enough data to replay the construction. SizeBoundExceeded when a
// member is too large to enumerate congruences.
ClosureReport closure_check(const std::vector<FuzzyAlgebra>& family,
                            ClosureMode mode);

// Same search, with the family enumerated as every algebra over fr/lang of
// carrier size <= size_bound satisfying member (one representative per
// isomorphism class), and membership of witnesses decided by member, which
// must therefore be isomorphism-invariant.
ClosureReport closure_check(const FramePtr& fr, const Language& lang,
                            const std::function<bool(const FuzzyAlgebra&)>& member,
                            int size_bound, ClosureMode mode);

}  // namespace fuzzalg
