#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "fuzzalg/checker.hpp"

namespace fuzzalg {

struct SaturateBudget {
  int max_terms = 200000;   // cap on the enumerated ground term universe
  long max_steps = 500000;  // cap on merges plus level raises
};

// Forward closure of the premise-free ground fragment of a theory over the
// universe of ground terms of depth <= depth_bound. Equalities are kept as a
// union-find with a proof forest, membership levels as per-class joins; every
// derived fact can be replayed as a checkable derivation.
namespace detail {
struct SatEngine;
}

class GroundClosure {
 public:
  const Theory& theory() const { return th_; }
  int depth_bound() const { return depth_; }
  // true when a fixpoint was reached inside the budgets
  bool complete() const { return complete_; }
  bool truncated() const { return truncated_; }
  long steps() const { return steps_; }

  int term_count() const { return static_cast<int>(terms_.size()); }
  bool contains(const Term& t) const { return ids_.count(t) != 0; }

  bool same_class(const Term& t, const Term& u) const;
  FrameElem level_of(const Term& t) const;
  // Canonical representative: the least member in the term order.
  Term representative(const Term& t) const;
  // Least-depth member, used when applying operations to classes.
  Term witness(const Term& t) const;

  struct ClassInfo {
    Term rep;
    Term witness;
    FrameElem level;
    int size;
  };
  std::vector<ClassInfo> classes() const;
  int class_count() const;

  // Applies an operation to classes via least-depth witnesses; empty when the
  // resulting term leaves the universe.
  std::optional<Term> apply(const std::string& op, const std::vector<Term>& reps) const;

  // Derivation of |- t == u; both terms must lie in one class.
  Derivation prove_eq(const Term& t, const Term& u) const;
  // Derivation of |- mem l t; requires l <= level_of(t) or l == bot.
  Derivation prove_mem(const Term& t, FrameElem l) const;

  // Proven derivation for a ground formula, or nothing (soundly unknown).
  std::optional<Derivation> query(const Formula& f) const;

 private:
  friend GroundClosure saturate(const Theory& th, int depth, SaturateBudget budget);
  friend struct detail::SatEngine;

  int find(int v) const;
  int id_of(const Term& t) const;

  Theory th_;
  int depth_ = 0;
  bool complete_ = false;
  bool truncated_ = false;
  long steps_ = 0;

  std::vector<Term> terms_;
  std::unordered_map<Term, int, TermHash> ids_;
  mutable std::vector<int> parent_;

  struct Edge { int from, to; Derivation proof; };  // proves |- from == to
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;  // term -> incident edge ids

  struct LevelRecord { FrameElem level; int term; Derivation proof; };
  std::vector<std::vector<LevelRecord>> records_;  // by class root
  std::vector<FrameElem> level_;                   // cached join, by class root
  std::vector<int> rep_, witness_, class_size_;    // by class root
};

GroundClosure saturate(const Theory& th, int depth, SaturateBudget budget = {});

struct DeriveResult {
  bool proven = false;
  Derivation derivation;  // set when proven
};

// Decides |- f over the ground fragment by saturating up to the depth bound.
// A negative answer only means "not found within the budget".
DeriveResult derives(const Theory& th, const Formula& f, int depth,
                     SaturateBudget budget = {});

}  // namespace fuzzalg
