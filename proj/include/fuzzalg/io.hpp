#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fuzzalg/derivation.hpp"
#include "fuzzalg/hsp.hpp"

namespace fuzzalg {

struct SourcePos {
  int line = 0, col = 0;
};

// All entities declared by one workspace file, by kind and name. Names are
// unique per kind; cross references are resolved while parsing.
struct Workspace {
  std::map<std::string, FramePtr> frames;
  std::map<std::string, Language> sigs;
  std::map<std::string, Theory> theories;
  std::map<std::string, FuzzyAlgebra> models;
  std::map<std::string, XEquation> equations;
  std::map<std::string, Derivation> derivations;  // loaded via derivation files

  // declaration order as (kind, name), for faithful re-emission
  std::vector<std::pair<std::string, std::string>> decls;
  std::map<std::string, SourcePos> where;  // "kind name" -> site
  // assign blocks of countermodel reports; kept raw, they name no entity
  std::vector<std::map<std::string, std::string>> assigns;

  const FramePtr& frame(const std::string& name) const;  // UnknownName
  const Language& sig(const std::string& name) const;
  const Theory& theory(const std::string& name) const;
  const FuzzyAlgebra& model(const std::string& name) const;
  const XEquation& equation(const std::string& name) const;
};

// Parses the declaration DSL. Errors are ParseError (or NameClash /
// UnknownName for bad references) with file:line:col in the message.
Workspace parse_workspace(const std::string& text,
                          const std::string& filename = "<input>");
Workspace parse_workspace_file(const std::string& path);

// Text forms as printed by Formula::str / Sequent::str:
//   mem <level> <term>   |   <term> == <term>
//   [f1, f2] |- f        |   |- f
Formula parse_formula(const FramePtr& fr, const Language& lang,
                      const std::string& text);
Sequent parse_sequent(const FramePtr& fr, const Language& lang,
                      const std::string& text);

// A fuzzy set written inline: "a:h, b:top" (empty string for the empty set).
FuzzySet parse_fuzzy_set(const FramePtr& fr, const std::string& text);

// Declaration emitters; parsing the result yields an equal value. Entities
// that reference others take the referenced names explicitly.
std::string emit_frame(const std::string& name, const Frame& fr);
std::string emit_sig(const std::string& name, const Language& lang);
std::string emit_theory(const Theory& th, const std::string& frame_name,
                        const std::string& sig_name);
std::string emit_model(const FuzzyAlgebra& a, const std::string& frame_name,
                       const std::string& sig_name);
std::string emit_equation(const std::string& name, const XEquation& e,
                          const std::string& frame_name,
                          const std::string& sig_name);
std::string emit_assign(const std::map<std::string, std::string>& assign);

// Whole-workspace emission in declaration order; referenced names are
// resolved by lookup within the workspace.
std::string emit_workspace(const Workspace& ws);

// Derivation trees as JSON: {"rule", "conclusion", "premises", plus the side
// data the rule uses: "formulas", "subst", "op", "level", "levels", "axiom"}.
// Sequents and terms are stored in their text forms over the theory.
std::string emit_derivation(const Theory& th, const Derivation& d);
Derivation parse_derivation(const Theory& th, const std::string& json_text);
Derivation parse_derivation_file(const Theory& th, const std::string& path);

}  // namespace fuzzalg
