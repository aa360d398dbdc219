// Command line front end. Every command loads one workspace file and
// addresses entities by name; outputs that represent entities are emitted in
// the same DSL so they can be fed back in.

#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fuzzalg/checker.hpp"
#include "fuzzalg/io.hpp"
#include "fuzzalg/semantics.hpp"
#include "json.hpp"

using namespace fuzzalg;
using nlohmann::json;

namespace {

struct Options {
  std::string format = "human";
  int seed = 0;

  std::string ws_path;
  std::string theory;
  std::string model;
  std::string derivation;
  std::string equation;
  std::string sequent;
  std::string fuzzy_set;
  std::string frame;
  std::string mode = "epi";
  std::vector<std::string> models;
  int max_size = 3;
  int depth = 2;
  long budget = 0;
  bool paper_literal = false;
  bool unconditional = false;
};

bool structured(const Options& o) { return o.format == "structured"; }

std::string frame_name_of(const Workspace& ws, const FramePtr& fr) {
  for (const auto& [n, f] : ws.frames)
    if (f.get() == fr.get()) return n;
  return fr->name();
}

std::string sig_name_of(const Workspace& ws, const Language& lang,
                        const std::string& fallback) {
  for (const auto& [n, s] : ws.sigs)
    if (s == lang) return n;
  return fallback;
}

// Frame + sig + model blocks in one parseable unit.
std::string emit_standalone_model(const Workspace& ws, const FuzzyAlgebra& a) {
  const std::string fn = frame_name_of(ws, a.frame);
  const std::string sn = sig_name_of(ws, a.lang, a.name + "_lang");
  return emit_frame(fn, *a.frame) + "\n" + emit_sig(sn, a.lang) + "\n" +
         emit_model(a, fn, sn);
}

std::map<std::string, std::string> named_assignment(const FuzzyAlgebra& a,
                                                    const Assignment& iota) {
  std::map<std::string, std::string> out;
  for (const auto& [v, e] : iota) out[v] = a.carrier[e];
  return out;
}

SaturateBudget budget_of(const Options& o) {
  SaturateBudget b;
  if (o.budget > 0) {
    b.max_terms = static_cast<int>(o.budget);
    b.max_steps = o.budget;
  }
  return b;
}

int cmd_validate(const Options& o) {
  Workspace ws = parse_workspace_file(o.ws_path);
  if (structured(o)) {
    json j;
    for (const auto& [kind, name] : ws.decls) j[kind + "s"].push_back(name);
    j["assigns"] = ws.assigns.size();
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "parsed " << o.ws_path << "\n";
  auto list = [](const char* label, const auto& map) {
    if (map.empty()) return;
    std::cout << label << ":";
    for (const auto& [n, v] : map) std::cout << " " << n;
    std::cout << "\n";
  };
  list("frames", ws.frames);
  list("sigs", ws.sigs);
  list("theories", ws.theories);
  list("models", ws.models);
  list("equations", ws.equations);
  if (!ws.assigns.empty())
    std::cout << "assigns: " << ws.assigns.size() << "\n";
  return 0;
}

int cmd_check_proof(const Options& o) {
  Workspace ws = parse_workspace_file(o.ws_path);
  const Theory& th = ws.theory(o.theory);
  const Derivation d = parse_derivation_file(th, o.derivation);
  CheckOptions copts;
  copts.paper_literal = o.paper_literal;
  const CheckResult r = check_derivation(th, d, copts);
  if (structured(o)) {
    json j;
    j["verified"] = r.ok;
    if (r.ok) {
      j["conclusion"] = r.verified.str(*th.frame);
    } else {
      j["path"] = path_str(r.error_path);
      j["rule"] = r.error_rule;
      j["message"] = r.message;
    }
    std::cout << j.dump(2) << "\n";
    return r.ok ? 0 : 1;
  }
  if (r.ok) {
    std::cout << "verified: " << r.verified.str(*th.frame) << "\n";
    return 0;
  }
  std::cout << "rejected at " << path_str(r.error_path) << " (" << r.error_rule
            << "): " << r.message << "\n";
  return 1;
}

int cmd_check_model(const Options& o) {
  Workspace ws = parse_workspace_file(o.ws_path);
  const FuzzyAlgebra& a = ws.model(o.model);
  const Theory& th = ws.theory(o.theory);
  const ModelCheck r = is_model(a, th);
  if (structured(o)) {
    json j;
    j["model"] = r.ok;
    if (!r.ok) {
      j["failing_axiom"] = r.failing_axiom;
      j["axiom"] = th.axioms[r.failing_axiom].str(*th.frame);
      if (r.counter) j["assignment"] = named_assignment(a, *r.counter);
    }
    std::cout << j.dump(2) << "\n";
    return r.ok ? 0 : 1;
  }
  if (r.ok) {
    std::cout << o.model << " is a model of " << o.theory << "\n";
    return 0;
  }
  std::cout << o.model << " violates axiom " << r.failing_axiom << ": "
            << th.axioms[r.failing_axiom].str(*th.frame) << "\n";
  if (r.counter) {
    std::cout << "at";
    bool first = true;
    for (const auto& [v, e] : *r.counter) {
      std::cout << (first ? " " : ", ") << v << " = " << a.carrier[e];
      first = false;
    }
    std::cout << "\n";
  }
  return 1;
}

int cmd_find_countermodel(const Options& o) {
  Workspace ws = parse_workspace_file(o.ws_path);
  const Theory& th = ws.theory(o.theory);
  const Sequent s = parse_sequent(th.frame, th.lang, o.sequent);
  FramePtr fr = nullptr;
  if (!o.frame.empty()) fr = ws.frame(o.frame);
  const CountermodelResult r = find_countermodel(th, s, o.max_size, fr);
  if (structured(o)) {
    json j;
    j["found"] = !r.none_up_to();
    j["bound"] = r.bound;
    if (r.counter) {
      FuzzyAlgebra a = r.counter->algebra;
      a.name = "counter";
      j["size"] = a.size();
      j["model"] = emit_standalone_model(ws, a);
      j["assignment"] = named_assignment(a, r.counter->assignment);
    }
    std::cout << j.dump(2) << "\n";
    return r.counter ? 0 : 1;
  }
  if (r.none_up_to()) {
    std::cout << "none up to " << r.bound << "\n";
    return 1;
  }
  FuzzyAlgebra a = r.counter->algebra;
  a.name = "counter";
  std::cout << "# countermodel of size " << a.size() << " for: "
            << s.str(*th.frame) << "\n"
            << emit_standalone_model(ws, a) << "\n"
            << emit_assign(named_assignment(a, r.counter->assignment));
  return 0;
}

void print_classes(const Workspace& ws, const TermModel& tm,
                   const std::string& label) {
  const Frame& fr = *tm.theory().frame;
  std::cout << "# " << label << " at depth " << tm.depth << "\n"
            << "# classes: " << tm.class_count()
            << ", closed: " << (tm.closed ? "yes" : "no") << "\n";
  for (int i = 0; i < tm.class_count(); ++i) {
    const TermClass& c = tm.classes[i];
    std::cout << "# class " << i << ": rep " << c.rep.str() << ", witness "
              << c.witness.str() << ", level " << fr.elem_name(c.level) << ", "
              << (c.complete ? "complete" : "frontier") << "\n";
  }
  if (tm.algebra) {
    FuzzyAlgebra a = *tm.algebra;
    a.name = "termmodel";
    std::cout << "\n" << emit_standalone_model(ws, a);
  }
}

json classes_json(const Workspace& ws, const TermModel& tm) {
  const Frame& fr = *tm.theory().frame;
  json j;
  j["depth"] = tm.depth;
  j["closed"] = tm.closed;
  j["classes"] = json::array();
  for (const TermClass& c : tm.classes) {
    json k;
    k["rep"] = c.rep.str();
    k["witness"] = c.witness.str();
    k["level"] = fr.elem_name(c.level);
    k["complete"] = c.complete;
    j["classes"].push_back(std::move(k));
  }
  if (tm.algebra) {
    FuzzyAlgebra a = *tm.algebra;
    a.name = "termmodel";
    j["algebra"] = emit_standalone_model(ws, a);
  }
  return j;
}

int cmd_term_model(const Options& o) {
  Workspace ws = parse_workspace_file(o.ws_path);
  const Theory& th = ws.theory(o.theory);
  TermModel tm;
  try {
    tm = term_model(th, o.depth, budget_of(o));
  } catch (const Error& e) {
    if (e.kind != ErrorKind::BudgetExhausted) throw;
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (structured(o)) {
    std::cout << classes_json(ws, tm).dump(2) << "\n";
    return 0;
  }
  print_classes(ws, tm, "term model of " + o.theory);
  return 0;
}

int cmd_free_model(const Options& o) {
  Workspace ws = parse_workspace_file(o.ws_path);
  const Theory& th = ws.theory(o.theory);
  const FuzzySet m = parse_fuzzy_set(th.frame, o.fuzzy_set);
  FreeModel fm;
  try {
    fm = free_model(th, m, o.depth, budget_of(o));
  } catch (const Error& e) {
    if (e.kind != ErrorKind::BudgetExhausted) throw;
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  const Frame& fr = *fm.model.theory().frame;
  if (structured(o)) {
    json j = classes_json(ws, fm.model);
    json u = json::object();
    for (const auto& [g, c] : fm.unit) u[g] = c;
    j["unit"] = std::move(u);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  print_classes(ws, fm.model, "free model of " + o.theory);
  for (const auto& [g, c] : fm.unit)
    std::cout << "# unit: " << g << " -> class " << c << " (rep "
              << fm.model.classes[c].rep.str() << ", level "
              << fr.elem_name(fm.model.classes[c].level) << ")\n";
  return 0;
}

int cmd_classify(const Options& o) {
  Workspace ws = parse_workspace_file(o.ws_path);
  const ClassifyResult r = classify_theory(ws.theory(o.theory));
  if (structured(o)) {
    json j;
    j["class"] = to_string(r.cls);
    j["first_not_unconditional"] = r.first_not_unconditional;
    j["first_not_type_e"] = r.first_not_type_e;
    j["first_not_basic"] = r.first_not_basic;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "class: " << to_string(r.cls) << "\n";
  if (r.first_not_unconditional >= 0)
    std::cout << "first axiom not unconditional: " << r.first_not_unconditional
              << "\n";
  if (r.first_not_type_e >= 0)
    std::cout << "first axiom not type E: " << r.first_not_type_e << "\n";
  if (r.first_not_basic >= 0)
    std::cout << "first axiom not basic: " << r.first_not_basic << "\n";
  return 0;
}

int cmd_eq2th(const Options& o) {
  Workspace ws = parse_workspace_file(o.ws_path);
  const XEquation& e = ws.equation(o.equation);
  Theory th =
      o.unconditional ? unconditional_equation_to_theory(e) : equation_to_theory(e);
  // translation names contain dots; rename so the output re-parses
  th.name = o.equation + "_laws";
  const std::string fn = frame_name_of(ws, th.frame);
  const std::string sn = o.equation + "_lang";
  const std::string text = emit_frame(fn, *th.frame) + "\n" +
                           emit_sig(sn, th.lang) + "\n" +
                           emit_theory(th, fn, sn);
  if (structured(o)) {
    json j;
    j["theory"] = th.name;
    j["axioms"] = th.axioms.size();
    j["text"] = text;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "# translation of equation " << o.equation << "\n" << text;
  return 0;
}

int cmd_closure(const Options& o) {
  Workspace ws = parse_workspace_file(o.ws_path);
  const ClosureMode mode =
      o.mode == "split" ? ClosureMode::HSP_split : ClosureMode::HSP_epi;
  ClosureReport r;
  if (!o.models.empty()) {
    std::vector<FuzzyAlgebra> family;
    for (const std::string& n : o.models) family.push_back(ws.model(n));
    r = closure_check(family, mode);
  } else if (!o.theory.empty()) {
    const Theory& th = ws.theory(o.theory);
    auto member = [&th](const FuzzyAlgebra& a) { return is_model(a, th).ok; };
    r = closure_check(th.frame, th.lang, member, o.max_size, mode);
  } else {
    fail(ErrorKind::BadInput, "closure needs --models or --theory");
  }
  if (structured(o)) {
    json j;
    j["mode"] = o.mode;
    j["family"] = r.family.size();
    j["products"] = r.products;
    j["strong_subalgebras"] = r.strong_subalgebras;
    if (r.epi_images) j["epi_images"] = *r.epi_images;
    j["split_epi_images"] = r.split_epi_images;
    j["all_closed"] = r.all_closed();
    j["violations"] = json::array();
    for (const ClosureViolation& v : r.violations) {
      json k;
      k["kind"] = v.kind;
      k["detail"] = v.detail;
      k["witness_size"] = v.witness.size();
      j["violations"].push_back(std::move(k));
    }
    std::cout << j.dump(2) << "\n";
    return r.all_closed() ? 0 : 1;
  }
  auto flag = [](bool b) { return b ? "closed" : "violated"; };
  std::cout << "mode: " << o.mode << "\n"
            << "family: " << r.family.size() << " algebras\n"
            << "products: " << flag(r.products) << "\n"
            << "strong subalgebras: " << flag(r.strong_subalgebras) << "\n";
  if (r.epi_images) std::cout << "epi images: " << flag(*r.epi_images) << "\n";
  std::cout << "split epi images: " << flag(r.split_epi_images) << "\n";
  for (const ClosureViolation& v : r.violations)
    std::cout << "violation (" << v.kind << "): " << v.detail << "\n";
  std::cout << "all closed: " << (r.all_closed() ? "yes" : "no") << "\n";
  return r.all_closed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for fuzzy algebraic reasoning"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--format", o.format, "human or structured output")
        ->check(CLI::IsMember({"human", "structured"}));
    s->add_option("--seed", o.seed, "seed for randomized searches");
    return s;
  };
  auto add_ws = [&](CLI::App* s) {
    s->add_option("workspace", o.ws_path, "workspace file")->required();
    return add_common(s);
  };

  CLI::App* validate = add_ws(app.add_subcommand(
      "validate", "parse a workspace and list its entities"));

  CLI::App* check_proof = add_ws(app.add_subcommand(
      "check-proof", "verify a derivation file against a theory"));
  check_proof->add_option("theory", o.theory, "theory name")->required();
  check_proof->add_option("derivation", o.derivation, "derivation file")
      ->required();
  check_proof->add_flag("--paper-literal", o.paper_literal,
                        "also accept the literal transitivity variant");

  CLI::App* check_model = add_ws(app.add_subcommand(
      "check-model", "test whether a named model satisfies a theory"));
  check_model->add_option("model", o.model, "model name")->required();
  check_model->add_option("theory", o.theory, "theory name")->required();

  CLI::App* find_cm = add_ws(app.add_subcommand(
      "find-countermodel", "search for a model violating a sequent"));
  find_cm->add_option("theory", o.theory, "theory name")->required();
  find_cm->add_option("sequent", o.sequent, "sequent text")->required();
  find_cm->add_option("--max-size", o.max_size, "largest carrier to try");
  find_cm->add_option("--frame", o.frame, "search over this frame instead");

  CLI::App* term = add_ws(app.add_subcommand(
      "term-model", "saturate the ground term model of a theory"));
  term->add_option("theory", o.theory, "theory name")->required();
  term->add_option("--depth", o.depth, "ground term depth bound");
  term->add_option("--budget", o.budget, "saturation budget");

  CLI::App* free_m = add_ws(app.add_subcommand(
      "free-model", "free model of a theory on a fuzzy generator set"));
  free_m->add_option("theory", o.theory, "theory name")->required();
  free_m->add_option("generators", o.fuzzy_set, "fuzzy set, e.g. 'a:h, b:top'")
      ->required();
  free_m->add_option("--depth", o.depth, "term depth bound");
  free_m->add_option("--budget", o.budget, "saturation budget");

  CLI::App* classify = add_ws(app.add_subcommand(
      "classify", "strongest syntactic class of a theory"));
  classify->add_option("theory", o.theory, "theory name")->required();

  CLI::App* eq2th = add_ws(app.add_subcommand(
      "eq2th", "translate an equation into a theory"));
  eq2th->add_option("equation", o.equation, "equation name")->required();
  eq2th->add_flag("--unconditional", o.unconditional,
                  "unconditional translation (requires empty support)");

  CLI::App* closure = add_ws(app.add_subcommand(
      "closure", "check a family of models for closure violations"));
  closure->add_option("--models", o.models, "model names")->delimiter(',');
  closure->add_option("--theory", o.theory, "take all models of this theory");
  closure->add_option("--max-size", o.max_size,
                      "carrier bound for --theory enumeration");
  closure->add_option("--mode", o.mode, "epi or split")
      ->check(CLI::IsMember({"epi", "split"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*check_proof) return cmd_check_proof(o);
    if (*check_model) return cmd_check_model(o);
    if (*find_cm) return cmd_find_countermodel(o);
    if (*term) return cmd_term_model(o);
    if (*free_m) return cmd_free_model(o);
    if (*classify) return cmd_classify(o);
    if (*eq2th) return cmd_eq2th(o);
    if (*closure) return cmd_closure(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
