#include "fuzzalg/syntax.hpp"

#include <algorithm>
#include <cctype>

namespace fuzzalg {

void Signature::validate() const {
  for (const auto& [op, ar] : ops) {
    if (op.empty()) fail(ErrorKind::BadInput, "empty operation name");
    if (ar < 1)
      fail(ErrorKind::BadInput, "operation '" + op + "' must have arity >= 1");
    if (consts.count(op))
      fail(ErrorKind::NameClash, "'" + op + "' is both operation and constant");
  }
  for (const auto& c : consts)
    if (c.empty()) fail(ErrorKind::BadInput, "empty constant name");
}

void Language::validate() const {
  sig.validate();
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (v.empty()) fail(ErrorKind::BadInput, "empty variable name");
    if (!seen.insert(v).second)
      fail(ErrorKind::NameClash, "duplicate variable '" + v + "'");
    if (sig.ops.count(v) || sig.consts.count(v))
      fail(ErrorKind::NameClash, "variable '" + v + "' clashes with a symbol");
  }
}

bool Language::has_var(const std::string& v) const {
  return std::find(vars.begin(), vars.end(), v) != vars.end();
}

std::string Language::fresh_var(const std::string& stem) const {
  for (int i = 0;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (!has_var(cand) && !sig.ops.count(cand) && !sig.consts.count(cand))
      return cand;
  }
}

namespace {

size_t hash_mix(size_t h, size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Term detail_make_term(TermKind kind, std::string name, TermVec args) {
  auto n = std::make_shared<TermNode>();
  n->kind = kind;
  n->name = std::move(name);
  n->args = std::move(args);
  n->size = 1;
  n->depth = 0;
  size_t h = hash_mix(std::hash<int>()(static_cast<int>(kind)),
                      std::hash<std::string>()(n->name));
  for (const auto& a : n->args) {
    n->size += a.size();
    n->depth = std::max(n->depth, a.depth() + 1);
    h = hash_mix(h, a.hash());
  }
  n->hash = h;
  return Term(std::move(n));
}

Term Term::var(std::string name) {
  return detail_make_term(TermKind::Var, std::move(name), {});
}

Term Term::cnst(std::string name) {
  return detail_make_term(TermKind::Const, std::move(name), {});
}

Term Term::app(std::string op, TermVec args) {
  if (args.empty())
    fail(ErrorKind::ArityMismatch, "application of '" + op + "' with no arguments");
  return detail_make_term(TermKind::App, std::move(op), std::move(args));
}

Term Term::make(const Language& lang, TermKind kind, std::string name, TermVec args) {
  switch (kind) {
    case TermKind::Var:
      if (!lang.has_var(name))
        fail(ErrorKind::UnknownName, "variable '" + name + "' not declared");
      return var(std::move(name));
    case TermKind::Const:
      if (!lang.sig.consts.count(name))
        fail(ErrorKind::UnknownName, "constant '" + name + "' not declared");
      return cnst(std::move(name));
    case TermKind::App: {
      auto it = lang.sig.ops.find(name);
      if (it == lang.sig.ops.end())
        fail(ErrorKind::UnknownName, "operation '" + name + "' not declared");
      if (it->second != static_cast<int>(args.size()))
        fail(ErrorKind::ArityMismatch,
             "'" + name + "' expects " + std::to_string(it->second) +
                 " arguments, got " + std::to_string(args.size()));
      return app(std::move(name), std::move(args));
    }
  }
  fail(ErrorKind::BadInput, "bad term kind");
}

bool Term::is_ground() const {
  if (kind() == TermKind::Var) return false;
  for (const auto& a : args())
    if (!a.is_ground()) return false;
  return true;
}

int compare(const Term& a, const Term& b) {
  if (&a == &b) return 0;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a.kind() != b.kind())
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
  for (size_t i = 0; i < a.args().size() && i < b.args().size(); ++i)
    if (int c = compare(a.args()[i], b.args()[i]); c != 0) return c;
  if (a.args().size() != b.args().size())
    return a.args().size() < b.args().size() ? -1 : 1;
  return 0;
}

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (hash() != o.hash()) return false;
  return compare(*this, o) == 0;
}

bool Term::operator<(const Term& o) const { return compare(*this, o) < 0; }

std::set<std::string> Term::variables() const {
  std::set<std::string> out;
  if (kind() == TermKind::Var) out.insert(name());
  for (const auto& a : args())
    for (auto& v : a.variables()) out.insert(v);
  return out;
}

void Term::check_in(const Language& lang) const {
  switch (kind()) {
    case TermKind::Var:
      if (!lang.has_var(name()))
        fail(ErrorKind::UnknownName, "variable '" + name() + "' not declared");
      return;
    case TermKind::Const:
      if (!lang.sig.consts.count(name()))
        fail(ErrorKind::UnknownName, "constant '" + name() + "' not declared");
      return;
    case TermKind::App: {
      auto it = lang.sig.ops.find(name());
      if (it == lang.sig.ops.end())
        fail(ErrorKind::UnknownName, "operation '" + name() + "' not declared");
      if (it->second != static_cast<int>(args().size()))
        fail(ErrorKind::ArityMismatch, "'" + name() + "' applied with wrong arity");
      for (const auto& a : args()) a.check_in(lang);
      return;
    }
  }
}

std::string Term::str() const {
  if (kind() != TermKind::App) return name();
  std::string out = name() + "(";
  for (size_t i = 0; i < args().size(); ++i) {
    if (i) out += ", ";
    out += args()[i].str();
  }
  return out + ")";
}

Term apply_subst(const Term& t, const Substitution& s) {
  switch (t.kind()) {
    case TermKind::Var: {
      auto it = s.find(t.name());
      return it == s.end() ? t : it->second;
    }
    case TermKind::Const:
      return t;
    case TermKind::App: {
      TermVec args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(apply_subst(a, s));
      return Term::app(t.name(), std::move(args));
    }
  }
  fail(ErrorKind::BadInput, "bad term");
}

Substitution compose(const Substitution& first, const Substitution& then,
                     const std::set<std::string>& domain_hint) {
  Substitution out;
  for (const auto& [v, t] : first) out[v] = apply_subst(t, then);
  for (const auto& [v, t] : then)
    if (!out.count(v)) out[v] = t;
  for (const auto& v : domain_hint)
    if (!out.count(v)) out[v] = Term::var(v);
  return out;
}

namespace {

struct TermParser {
  const Language& lang;
  const std::string& s;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  std::string ident() {
    skip();
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (start == pos)
      fail(ErrorKind::ParseError,
           "expected identifier at offset " + std::to_string(pos) + " in '" + s + "'");
    return s.substr(start, pos - start);
  }

  Term term() {
    std::string name = ident();
    skip();
    if (pos < s.size() && s[pos] == '(') {
      ++pos;
      TermVec args;
      while (true) {
        args.push_back(term());
        skip();
        if (pos < s.size() && s[pos] == ',') { ++pos; continue; }
        if (pos < s.size() && s[pos] == ')') { ++pos; break; }
        fail(ErrorKind::ParseError, "expected ',' or ')' in '" + s + "'");
      }
      return Term::make(lang, TermKind::App, name, std::move(args));
    }
    if (lang.has_var(name)) return Term::var(name);
    if (lang.sig.consts.count(name)) return Term::cnst(name);
    if (lang.sig.ops.count(name))
      fail(ErrorKind::ArityMismatch, "operation '" + name + "' used without arguments");
    fail(ErrorKind::UnknownName, "unknown symbol '" + name + "'");
  }
};

}  // namespace

Term parse_term(const Language& lang, const std::string& text) {
  TermParser p{lang, text};
  Term t = p.term();
  p.skip();
  if (p.pos != text.size())
    fail(ErrorKind::ParseError, "trailing input in term '" + text + "'");
  return t;
}

void LanguageMorphism::validate() const {
  source.validate();
  target.validate();
  for (const auto& [o, ar] : source.sig.ops) {
    auto it = op_map.find(o);
    if (it == op_map.end())
      fail(ErrorKind::UnknownName, "operation '" + o + "' has no image");
    auto jt = target.sig.ops.find(it->second);
    if (jt == target.sig.ops.end())
      fail(ErrorKind::UnknownName, "image operation '" + it->second + "' not in target");
    if (jt->second != ar)
      fail(ErrorKind::ArityMismatch, "arity not preserved on '" + o + "'");
  }
  for (const auto& c : source.sig.consts) {
    auto it = const_map.find(c);
    if (it == const_map.end())
      fail(ErrorKind::UnknownName, "constant '" + c + "' has no image");
    if (!target.sig.consts.count(it->second))
      fail(ErrorKind::UnknownName, "image constant '" + it->second + "' not in target");
  }
  for (const auto& v : source.vars) {
    auto it = var_map.find(v);
    if (it == var_map.end())
      fail(ErrorKind::UnknownName, "variable '" + v + "' has no image");
    if (!target.has_var(it->second))
      fail(ErrorKind::UnknownName, "image variable '" + it->second + "' not in target");
  }
}

LanguageMorphism LanguageMorphism::identity(const Language& l) {
  LanguageMorphism m{l, l, {}, {}, {}};
  for (const auto& [o, ar] : l.sig.ops) m.op_map[o] = o;
  for (const auto& c : l.sig.consts) m.const_map[c] = c;
  for (const auto& v : l.vars) m.var_map[v] = v;
  return m;
}

Term LanguageMorphism::map_term(const Term& t) const {
  switch (t.kind()) {
    case TermKind::Var: {
      auto it = var_map.find(t.name());
      if (it == var_map.end())
        fail(ErrorKind::UnknownName, "variable '" + t.name() + "' has no image");
      return Term::var(it->second);
    }
    case TermKind::Const: {
      auto it = const_map.find(t.name());
      if (it == const_map.end())
        fail(ErrorKind::UnknownName, "constant '" + t.name() + "' has no image");
      return Term::cnst(it->second);
    }
    case TermKind::App: {
      auto it = op_map.find(t.name());
      if (it == op_map.end())
        fail(ErrorKind::UnknownName, "operation '" + t.name() + "' has no image");
      TermVec args;
      for (const auto& a : t.args()) args.push_back(map_term(a));
      return Term::app(it->second, std::move(args));
    }
  }
  fail(ErrorKind::BadInput, "bad term");
}

TermVec LanguageMorphism::term_preimages(const Term& t) const {
  TermVec out;
  switch (t.kind()) {
    case TermKind::Var:
      for (const auto& [v, img] : var_map)
        if (img == t.name()) out.push_back(Term::var(v));
      return out;
    case TermKind::Const:
      for (const auto& [c, img] : const_map)
        if (img == t.name()) out.push_back(Term::cnst(c));
      return out;
    case TermKind::App: {
      std::vector<TermVec> arg_pre;
      for (const auto& a : t.args()) {
        arg_pre.push_back(term_preimages(a));
        if (arg_pre.back().empty()) return out;
      }
      for (const auto& [o, img] : op_map) {
        if (img != t.name()) continue;
        // cartesian product over argument preimages
        std::vector<size_t> idx(arg_pre.size(), 0);
        while (true) {
          TermVec args;
          for (size_t i = 0; i < idx.size(); ++i) args.push_back(arg_pre[i][idx[i]]);
          out.push_back(Term::app(o, std::move(args)));
          size_t i = 0;
          for (; i < idx.size(); ++i) {
            if (++idx[i] < arg_pre[i].size()) break;
            idx[i] = 0;
          }
          if (i == idx.size()) break;
        }
      }
      return out;
    }
  }
  return out;
}

}  // namespace fuzzalg
