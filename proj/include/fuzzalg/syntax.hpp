#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fuzzalg/error.hpp"

namespace fuzzalg {

// Operation symbols with arity >= 1, plus constant symbols. Constants are a
// separate sort of symbol, not nullary operations.
struct Signature {
  std::map<std::string, int> ops;  // name -> arity
  std::set<std::string> consts;

  void validate() const;
  bool operator==(const Signature&) const = default;
};

// A signature together with a finite ordered variable context.
struct Language {
  Signature sig;
  std::vector<std::string> vars;

  void validate() const;
  bool has_var(const std::string& v) const;
  // Smallest "x0","x1",... not currently used by vars, ops or constants.
  std::string fresh_var(const std::string& stem = "x") const;
  bool operator==(const Language&) const = default;
};

enum class TermKind { Var, Const, App };

class Term;
using TermVec = std::vector<Term>;

struct TermNode {
  TermKind kind;
  std::string name;
  TermVec args;
  int size;    // node count
  int depth;   // Var/Const have depth 0
  size_t hash;
};

// Immutable term over some language; cheap to copy (shared node).
class Term {
 public:
  Term() = default;
  static Term var(std::string name);
  static Term cnst(std::string name);
  static Term app(std::string op, TermVec args);

  // Checked constructor: symbol must exist in the language with the right
  // arity, variables must be declared.
  static Term make(const Language& lang, TermKind kind, std::string name,
                   TermVec args = {});

  bool ok() const { return node_ != nullptr; }
  TermKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const TermVec& args() const { return node_->args; }
  int size() const { return node_->size; }
  int depth() const { return node_->depth; }
  size_t hash() const { return node_->hash; }
  bool is_ground() const;

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }
  // Total order: by size, then structurally (kind, name, args).
  bool operator<(const Term& o) const;

  std::set<std::string> variables() const;
  // True when every symbol is well formed with respect to lang.
  void check_in(const Language& lang) const;

  std::string str() const;

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  friend Term detail_make_term(TermKind, std::string, TermVec);

  std::shared_ptr<const TermNode> node_;
};

int compare(const Term& a, const Term& b);

// Simultaneous substitution of terms for variables; variables not in the map
// are left unchanged.
using Substitution = std::map<std::string, Term>;

Term apply_subst(const Term& t, const Substitution& s);
Substitution compose(const Substitution& first, const Substitution& then,
                     const std::set<std::string>& domain_hint = {});

// Parses the concrete syntax produced by Term::str: name or op(arg,...).
// Symbols are resolved against the language (UnknownName / ArityMismatch).
Term parse_term(const Language& lang, const std::string& text);

// Arity-preserving translation between languages.
struct LanguageMorphism {
  Language source, target;
  std::map<std::string, std::string> op_map;
  std::map<std::string, std::string> const_map;
  std::map<std::string, std::string> var_map;

  void validate() const;
  static LanguageMorphism identity(const Language& l);
  Term map_term(const Term& t) const;
  // All terms over source mapping to t; finite since symbol maps are finite.
  TermVec term_preimages(const Term& t) const;
};

struct TermHash {
  size_t operator()(const Term& t) const { return t.hash(); }
};

}  // namespace fuzzalg
