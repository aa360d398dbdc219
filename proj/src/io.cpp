#include "fuzzalg/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>

#include "json.hpp"

namespace fuzzalg {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Splits at separators outside parentheses and brackets.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

FrameElem level_by_name(const Frame& fr, const std::string& name) {
  auto e = fr.by_name(name);
  if (!e)
    fail(ErrorKind::UnknownName,
         "frame '" + fr.name() + "' has no element named '" + name + "'");
  return *e;
}

// Strips the "Kind: " prefix Error's constructor adds, so messages can be
// re-wrapped with a source location without stacking prefixes.
std::string bare_message(const Error& e) {
  std::string m = e.what();
  const std::string p = std::string(to_string(e.kind)) + ": ";
  return m.rfind(p, 0) == 0 ? m.substr(p.size()) : m;
}

}  // namespace

Formula parse_formula(const FramePtr& fr, const Language& lang,
                      const std::string& text) {
  const std::string s = trim(text);
  if (s.rfind("mem", 0) == 0 && s.size() > 3 &&
      std::isspace(static_cast<unsigned char>(s[3]))) {
    const std::string rest = trim(s.substr(3));
    size_t sp = 0;
    while (sp < rest.size() && !std::isspace(static_cast<unsigned char>(rest[sp])))
      ++sp;
    if (sp == rest.size())
      fail(ErrorKind::ParseError, "'mem' needs a level and a term: '" + s + "'");
    const FrameElem l = level_by_name(*fr, rest.substr(0, sp));
    return Formula::mem(l, parse_term(lang, trim(rest.substr(sp))));
  }
  int depth = 0;
  for (size_t i = 0; i + 1 < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[') ++depth;
    else if (c == ')' || c == ']') --depth;
    else if (depth == 0 && c == '=' && s[i + 1] == '=')
      return Formula::eq(parse_term(lang, trim(s.substr(0, i))),
                         parse_term(lang, trim(s.substr(i + 2))));
  }
  fail(ErrorKind::ParseError,
       "formula is neither 'mem <level> <term>' nor '<term> == <term>': '" + s +
           "'");
}

Sequent parse_sequent(const FramePtr& fr, const Language& lang,
                      const std::string& text) {
  std::string s = trim(text);
  std::vector<Formula> prem;
  if (!s.empty() && s[0] == '[') {
    int depth = 0;
    size_t close = std::string::npos;
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '[') ++depth;
      else if (s[i] == ']' && --depth == 0) {
        close = i;
        break;
      }
    }
    if (close == std::string::npos)
      fail(ErrorKind::ParseError, "unterminated premise list: '" + s + "'");
    for (const auto& piece : split_top(s.substr(1, close - 1), ',')) {
      const std::string p = trim(piece);
      if (!p.empty()) prem.push_back(parse_formula(fr, lang, p));
    }
    s = trim(s.substr(close + 1));
  }
  if (s.rfind("|-", 0) != 0)
    fail(ErrorKind::ParseError, "expected '|-' in sequent: '" + text + "'");
  return Sequent(std::move(prem), parse_formula(fr, lang, trim(s.substr(2))));
}

FuzzySet parse_fuzzy_set(const FramePtr& fr, const std::string& text) {
  FuzzySet m;
  if (trim(text).empty()) return m;
  for (const auto& piece : split_top(text, ',')) {
    const std::string p = trim(piece);
    const size_t colon = p.find(':');
    if (colon == std::string::npos || trim(p.substr(0, colon)).empty())
      fail(ErrorKind::ParseError,
           "expected 'name:level' in fuzzy set: '" + p + "'");
    m.elems.emplace_back(trim(p.substr(0, colon)),
                         level_by_name(*fr, trim(p.substr(colon + 1))));
  }
  return m;
}

namespace {

struct Tok {
  enum Kind { Word, Punct, End } kind = End;
  std::string s;
  size_t off = 0;
  int line = 1, col = 1;
};

class WorkspaceParser {
 public:
  WorkspaceParser(std::string text, std::string file)
      : text_(std::move(text)), file_(std::move(file)) {
    strip_comments();
    lex();
  }

  Workspace run() {
    Workspace ws;
    while (peek().kind != Tok::End) {
      const Tok kw = peek();
      const std::string k = expect_word("a declaration keyword");
      if (k == "frame") parse_frame(ws);
      else if (k == "sig") parse_sig(ws);
      else if (k == "theory") parse_theory(ws);
      else if (k == "model") parse_model(ws);
      else if (k == "equation") parse_equation(ws);
      else if (k == "assign") parse_assign(ws);
      else err(kw, "unknown declaration '" + k + "'");
    }
    return ws;
  }

 private:
  std::string text_, file_;
  std::vector<Tok> toks_;
  size_t at_ = 0;

  [[noreturn]] void err_kind(ErrorKind k, const Tok& t, const std::string& msg) {
    fail(k, file_ + ":" + std::to_string(t.line) + ":" + std::to_string(t.col) +
                ": " + msg);
  }
  [[noreturn]] void err(const Tok& t, const std::string& msg) {
    err_kind(ErrorKind::ParseError, t, msg);
  }

  // Comments are blanked out before lexing so that raw source slices (used
  // for axiom text) never contain them; newlines stay for line counting.
  void strip_comments() {
    for (size_t i = 0; i < text_.size(); ++i) {
      if (text_[i] == '#' ||
          (text_[i] == '/' && i + 1 < text_.size() && text_[i + 1] == '/')) {
        while (i < text_.size() && text_[i] != '\n') text_[i++] = ' ';
      }
    }
  }

  void lex() {
    int line = 1, col = 1;
    size_t i = 0;
    auto adv = [&](size_t n) {
      while (n--) {
        if (text_[i] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
        ++i;
      }
    };
    while (i < text_.size()) {
      const char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        adv(1);
        continue;
      }
      Tok t;
      t.off = i;
      t.line = line;
      t.col = col;
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        size_t j = i;
        while (j < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[j])) ||
                text_[j] == '_'))
          ++j;
        t.kind = Tok::Word;
        t.s = text_.substr(i, j - i);
        adv(j - i);
      } else if (c == '|' && i + 1 < text_.size() && text_[i + 1] == '-') {
        t.kind = Tok::Punct;
        t.s = "|-";
        adv(2);
      } else if (c == '=' && i + 1 < text_.size() && text_[i + 1] == '=') {
        t.kind = Tok::Punct;
        t.s = "==";
        adv(2);
      } else if (std::strchr("{}()[],;:=/", c)) {
        t.kind = Tok::Punct;
        t.s = std::string(1, c);
        adv(1);
      } else {
        err(t, std::string("unexpected character '") + c + "'");
      }
      toks_.push_back(t);
    }
    Tok end;
    end.kind = Tok::End;
    end.off = text_.size();
    end.line = line;
    end.col = col;
    toks_.push_back(end);
  }

  const Tok& peek() const { return toks_[at_]; }
  Tok take() { return toks_[at_ + 1 < toks_.size() ? at_++ : at_]; }
  bool is_punct(const char* p) const {
    return peek().kind == Tok::Punct && peek().s == p;
  }
  bool accept_punct(const char* p) {
    if (!is_punct(p)) return false;
    ++at_;
    return true;
  }
  void expect_punct(const char* p) {
    if (!accept_punct(p))
      err(peek(), "expected '" + std::string(p) + "', found '" + peek().s + "'");
  }
  std::string expect_word(const std::string& what) {
    if (peek().kind != Tok::Word) err(peek(), "expected " + what);
    return take().s;
  }
  // Items inside blocks end with ';', optional right before '}'.
  void item_end() {
    if (!accept_punct(";") && !is_punct("}"))
      err(peek(), "expected ';' or '}'");
  }

  int expect_int(const std::string& what) {
    const Tok t = peek();
    const std::string w = expect_word(what);
    if (!std::all_of(w.begin(), w.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      err(t, "expected a number for " + what);
    return std::stoi(w);
  }

  void record(Workspace& ws, const std::string& kind, const std::string& name,
              const Tok& site) {
    ws.decls.emplace_back(kind, name);
    ws.where[kind + " " + name] = {site.line, site.col};
  }

  template <class M>
  void check_fresh(const M& map, const std::string& kind, const std::string& name,
                   const Tok& site) {
    if (map.count(name)) err_kind(ErrorKind::NameClash, site,
                                  "duplicate " + kind + " '" + name + "'");
  }

  FramePtr frame_ref(const Workspace& ws) {
    const Tok t = peek();
    const std::string n = expect_word("a frame name");
    auto it = ws.frames.find(n);
    if (it == ws.frames.end())
      err_kind(ErrorKind::UnknownName, t, "no frame named '" + n + "'");
    return it->second;
  }
  const Language& sig_ref(const Workspace& ws) {
    const Tok t = peek();
    const std::string n = expect_word("a signature name");
    auto it = ws.sigs.find(n);
    if (it == ws.sigs.end())
      err_kind(ErrorKind::UnknownName, t, "no sig named '" + n + "'");
    return it->second;
  }

  void parse_frame(Workspace& ws) {
    const Tok site = peek();
    const std::string name = expect_word("a frame name");
    check_fresh(ws.frames, "frame", name, site);
    FramePtr fr;
    if (accept_punct("=")) {
      const Tok bt = peek();
      const std::string builtin = expect_word("'chain' or 'bool'");
      const int n = expect_int("the frame size");
      if (builtin == "chain") fr = Frame::chain(n, name);
      else if (builtin == "bool") fr = Frame::boolean(n, name);
      else err(bt, "unknown frame builtin '" + builtin + "'");
      item_end_or_semi();
    } else {
      expect_punct("{");
      std::vector<std::string> elems;
      std::vector<std::pair<std::string, std::string>> pairs;
      while (!accept_punct("}")) {
        const Tok it = peek();
        const std::string item = expect_word("'elements' or 'leq'");
        if (item == "elements") {
          while (peek().kind == Tok::Word) elems.push_back(take().s);
        } else if (item == "leq") {
          const std::string a = expect_word("an element name");
          const std::string b = expect_word("an element name");
          pairs.emplace_back(a, b);
        } else {
          err(it, "unknown frame item '" + item + "'");
        }
        item_end();
      }
      const int n = static_cast<int>(elems.size());
      std::map<std::string, int> idx;
      for (int i = 0; i < n; ++i) {
        if (idx.count(elems[i]))
          err_kind(ErrorKind::NameClash, site,
                   "duplicate frame element '" + elems[i] + "'");
        idx[elems[i]] = i;
      }
      // reflexive-transitive closure of the listed pairs
      std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
      for (int i = 0; i < n; ++i) leq[i][i] = true;
      for (const auto& [a, b] : pairs) {
        if (!idx.count(a) || !idx.count(b))
          err_kind(ErrorKind::UnknownName, site,
                   "leq mentions undeclared element '" + (idx.count(a) ? b : a) +
                       "'");
        leq[idx[a]][idx[b]] = true;
      }
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          if (leq[i][k])
            for (int j = 0; j < n; ++j)
              if (leq[k][j]) leq[i][j] = true;
      fr = Frame::validate(name, elems, leq);
    }
    ws.frames.emplace(name, std::move(fr));
    record(ws, "frame", name, site);
  }

  // A builtin declaration ends with ';' (optional at end of input).
  void item_end_or_semi() {
    if (!accept_punct(";") && peek().kind != Tok::End)
      err(peek(), "expected ';'");
  }

  void parse_sig(Workspace& ws) {
    const Tok site = peek();
    const std::string name = expect_word("a signature name");
    check_fresh(ws.sigs, "sig", name, site);
    expect_punct("{");
    Language lang;
    while (!accept_punct("}")) {
      const Tok it = peek();
      const std::string item = expect_word("'op', 'const' or 'vars'");
      if (item == "op") {
        const Tok ot = peek();
        const std::string op = expect_word("an operation name");
        expect_punct("/");
        const int ar = expect_int("the arity");
        if (lang.sig.ops.count(op))
          err_kind(ErrorKind::NameClash, ot, "duplicate op '" + op + "'");
        lang.sig.ops[op] = ar;
      } else if (item == "const") {
        const Tok ct = peek();
        const std::string c = expect_word("a constant name");
        if (!lang.sig.consts.insert(c).second)
          err_kind(ErrorKind::NameClash, ct, "duplicate const '" + c + "'");
      } else if (item == "vars") {
        while (peek().kind == Tok::Word) lang.vars.push_back(take().s);
      } else {
        err(it, "unknown signature item '" + item + "'");
      }
      item_end();
    }
    lang.validate();
    ws.sigs.emplace(name, std::move(lang));
    record(ws, "sig", name, site);
  }

  void parse_theory(Workspace& ws) {
    const Tok site = peek();
    const std::string name = expect_word("a theory name");
    check_fresh(ws.theories, "theory", name, site);
    if (expect_word("'over'") != "over") err(site, "expected 'over'");
    Theory th;
    th.name = name;
    th.frame = frame_ref(ws);
    if (expect_word("'for'") != "for") err(site, "expected 'for'");
    th.lang = sig_ref(ws);
    expect_punct("{");
    while (!accept_punct("}")) {
      const Tok start = peek();
      int depth = 0;
      while (!(depth == 0 && (is_punct(";") || is_punct("}")))) {
        if (peek().kind == Tok::End) err(peek(), "unterminated axiom");
        if (is_punct("(") || is_punct("[")) ++depth;
        if (is_punct(")") || is_punct("]")) --depth;
        take();
      }
      const std::string slice =
          trim(text_.substr(start.off, peek().off - start.off));
      if (slice.empty()) err(start, "empty axiom");
      try {
        th.axioms.push_back(parse_sequent(th.frame, th.lang, slice));
      } catch (const Error& e) {
        err_kind(e.kind, start, bare_message(e));
      }
      accept_punct(";");
    }
    th.validate();
    ws.theories.emplace(name, std::move(th));
    record(ws, "theory", name, site);
  }

  FuzzyAlgebra parse_model_body(const FramePtr& fr, const Language& lang,
                                const std::string& dbg) {
    const Tok open = peek();
    expect_punct("{");
    FuzzyAlgebra a;
    a.name = dbg;
    a.frame = fr;
    a.lang = lang;
    std::map<std::string, int> idx;
    bool have_carrier = false;
    std::vector<std::optional<FrameElem>> mu;
    std::map<std::string, std::vector<std::optional<int>>> tabs;

    auto elem_of = [&](const Tok& t, const std::string& n) {
      auto it = idx.find(n);
      if (it == idx.end())
        err_kind(ErrorKind::UnknownName, t, "no carrier element '" + n + "'");
      return it->second;
    };

    while (!accept_punct("}")) {
      const Tok it = peek();
      const std::string item = expect_word("a model section");
      if (item != "carrier" && !have_carrier)
        err(it, "the carrier section must come first");
      if (item == "carrier") {
        expect_punct("{");
        while (peek().kind == Tok::Word) {
          const Tok et = peek();
          const std::string n = take().s;
          if (idx.count(n))
            err_kind(ErrorKind::NameClash, et,
                     "duplicate carrier element '" + n + "'");
          idx[n] = static_cast<int>(a.carrier.size());
          a.carrier.push_back(n);
          accept_punct(",");
        }
        expect_punct("}");
        have_carrier = true;
        mu.assign(a.carrier.size(), std::nullopt);
      } else if (item == "mu") {
        expect_punct("{");
        while (peek().kind == Tok::Word) {
          const Tok et = peek();
          const int e = elem_of(et, take().s);
          expect_punct(":");
          const Tok lt = peek();
          const std::string ln = expect_word("a level name");
          try {
            mu[e] = level_by_name(*fr, ln);
          } catch (const Error& ex) {
            err_kind(ex.kind, lt, bare_message(ex));
          }
          accept_punct(",");
        }
        expect_punct("}");
      } else if (item == "op") {
        const Tok ot = peek();
        const std::string op = expect_word("an operation name");
        auto ar_it = lang.sig.ops.find(op);
        if (ar_it == lang.sig.ops.end())
          err_kind(ErrorKind::UnknownName, ot,
                   "operation '" + op + "' is not in the signature");
        const int ar = ar_it->second;
        const int n = static_cast<int>(a.carrier.size());
        size_t cells = 1;
        for (int k = 0; k < ar; ++k) cells *= n;
        auto& tab = tabs[op];
        tab.assign(cells, std::nullopt);
        expect_punct("{");
        while (is_punct("(")) {
          const Tok ct = peek();
          expect_punct("(");
          size_t cell = 0;
          for (int k = 0; k < ar; ++k) {
            if (k) expect_punct(",");
            const Tok at = peek();
            cell = cell * n + elem_of(at, expect_word("a carrier element"));
          }
          expect_punct(")");
          expect_punct("=");
          const Tok rt = peek();
          const int res = elem_of(rt, expect_word("a carrier element"));
          if (tab[cell])
            err(ct, "table cell listed twice for '" + op + "'");
          tab[cell] = res;
          if (!accept_punct(";") && !is_punct("}"))
            err(peek(), "expected ';' or '}' after a table cell");
        }
        expect_punct("}");
      } else if (item == "const") {
        const Tok ct = peek();
        const std::string c = expect_word("a constant name");
        if (!lang.sig.consts.count(c))
          err_kind(ErrorKind::UnknownName, ct,
                   "constant '" + c + "' is not in the signature");
        expect_punct("=");
        const Tok et = peek();
        a.consts[c] = elem_of(et, expect_word("a carrier element"));
      } else {
        err(it, "unknown model section '" + item + "'");
      }
      accept_punct(";");
    }

    if (!have_carrier) err(open, "model has no carrier section");
    for (size_t e = 0; e < mu.size(); ++e) {
      if (!mu[e]) err(open, "no level for element '" + a.carrier[e] + "'");
      a.mu.push_back(*mu[e]);
    }
    for (const auto& [op, ar] : lang.sig.ops) {
      auto t = tabs.find(op);
      if (t == tabs.end() && !a.carrier.empty())
        err(open, "no table for operation '" + op + "'");
      std::vector<int> full;
      if (t != tabs.end()) {
        for (size_t c = 0; c < t->second.size(); ++c) {
          if (!t->second[c])
            err(open, "table for '" + op + "' is partial (cell " +
                          std::to_string(c) + " missing)");
          full.push_back(*t->second[c]);
        }
      }
      a.ops[op] = std::move(full);
    }
    a.validate();
    return a;
  }

  void parse_model(Workspace& ws) {
    const Tok site = peek();
    const std::string name = expect_word("a model name");
    check_fresh(ws.models, "model", name, site);
    if (expect_word("'over'") != "over") err(site, "expected 'over'");
    const FramePtr fr = frame_ref(ws);
    if (expect_word("'for'") != "for") err(site, "expected 'for'");
    const Language& lang = sig_ref(ws);
    ws.models.emplace(name, parse_model_body(fr, lang, name));
    record(ws, "model", name, site);
  }

  void parse_equation(Workspace& ws) {
    const Tok site = peek();
    const std::string name = expect_word("an equation name");
    check_fresh(ws.equations, "equation", name, site);
    if (expect_word("'over'") != "over") err(site, "expected 'over'");
    const FramePtr fr = frame_ref(ws);
    if (expect_word("'for'") != "for") err(site, "expected 'for'");
    const Language& lang = sig_ref(ws);
    expect_punct("{");

    XEquation e;
    if (expect_word("'gens'") != "gens") err(site, "expected 'gens'");
    expect_punct("{");
    while (peek().kind == Tok::Word) {
      const std::string g = take().s;
      expect_punct(":");
      const Tok lt = peek();
      try {
        e.generators.elems.emplace_back(
            g, level_by_name(*fr, expect_word("a level name")));
      } catch (const Error& ex) {
        err_kind(ex.kind, lt, bare_message(ex));
      }
      accept_punct(",");
    }
    expect_punct("}");

    if (expect_word("'target'") != "target") err(site, "expected 'target'");
    e.target = parse_model_body(fr, lang, name + ".target");

    if (expect_word("'val'") != "val") err(site, "expected 'val'");
    std::map<std::string, int> idx;
    for (int i = 0; i < e.target.size(); ++i) idx[e.target.carrier[i]] = i;
    expect_punct("{");
    while (peek().kind == Tok::Word) {
      const std::string g = take().s;
      expect_punct("=");
      const Tok et = peek();
      const std::string el = expect_word("a carrier element");
      auto it = idx.find(el);
      if (it == idx.end())
        err_kind(ErrorKind::UnknownName, et,
                 "no element '" + el + "' in the target carrier");
      e.valuation[g] = it->second;
      accept_punct(",");
    }
    expect_punct("}");
    expect_punct("}");
    e.validate();
    ws.equations.emplace(name, std::move(e));
    record(ws, "equation", name, site);
  }

  void parse_assign(Workspace& ws) {
    expect_punct("{");
    std::map<std::string, std::string> m;
    while (peek().kind == Tok::Word) {
      const std::string v = take().s;
      expect_punct("=");
      m[v] = expect_word("an element name");
      if (!accept_punct(",")) accept_punct(";");
    }
    expect_punct("}");
    ws.assigns.push_back(std::move(m));
  }
};

}  // namespace

Workspace parse_workspace(const std::string& text, const std::string& filename) {
  return WorkspaceParser(text, filename).run();
}

Workspace parse_workspace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_workspace(ss.str(), path);
}

namespace {

template <class M>
const typename M::mapped_type& lookup(const M& map, const std::string& kind,
                                      const std::string& name) {
  auto it = map.find(name);
  if (it == map.end())
    fail(ErrorKind::UnknownName, "no " + kind + " named '" + name + "'");
  return it->second;
}

}  // namespace

const FramePtr& Workspace::frame(const std::string& n) const {
  return lookup(frames, "frame", n);
}
const Language& Workspace::sig(const std::string& n) const {
  return lookup(sigs, "sig", n);
}
const Theory& Workspace::theory(const std::string& n) const {
  return lookup(theories, "theory", n);
}
const FuzzyAlgebra& Workspace::model(const std::string& n) const {
  return lookup(models, "model", n);
}
const XEquation& Workspace::equation(const std::string& n) const {
  return lookup(equations, "equation", n);
}

std::string emit_frame(const std::string& name, const Frame& fr) {
  std::string out = "frame " + name + " {\n  elements";
  for (const auto e : fr.elements()) out += " " + fr.elem_name(e);
  out += ";\n";
  for (const auto a : fr.elements())
    for (const auto b : fr.elements())
      if (a.id != b.id && fr.leq(a, b))
        out += "  leq " + fr.elem_name(a) + " " + fr.elem_name(b) + ";\n";
  return out + "}\n";
}

std::string emit_sig(const std::string& name, const Language& lang) {
  std::string out = "sig " + name + " {\n";
  for (const auto& [op, ar] : lang.sig.ops)
    out += "  op " + op + "/" + std::to_string(ar) + ";\n";
  for (const auto& c : lang.sig.consts) out += "  const " + c + ";\n";
  if (!lang.vars.empty()) {
    out += "  vars";
    for (const auto& v : lang.vars) out += " " + v;
    out += ";\n";
  }
  return out + "}\n";
}

std::string emit_theory(const Theory& th, const std::string& frame_name,
                        const std::string& sig_name) {
  std::string out =
      "theory " + th.name + " over " + frame_name + " for " + sig_name + " {\n";
  for (const auto& ax : th.axioms) out += "  " + ax.str(*th.frame) + ";\n";
  return out + "}\n";
}

namespace {

std::string emit_model_body(const FuzzyAlgebra& a, const std::string& ind) {
  std::string out = "{\n";
  out += ind + "  carrier {";
  for (const auto& e : a.carrier) out += " " + e;
  out += " }\n" + ind + "  mu {";
  for (int e = 0; e < a.size(); ++e)
    out += std::string(e ? "," : "") + " " + a.carrier[e] + ": " +
           a.frame->elem_name(a.mu[e]);
  out += " }\n";
  for (const auto& [op, tab] : a.ops) {
    out += ind + "  op " + op + " {";
    const int ar = a.lang.sig.ops.at(op);
    for (size_t cell = 0; cell < tab.size(); ++cell) {
      size_t rest = cell;
      std::vector<int> args(ar);
      for (int k = ar - 1; k >= 0; --k) {
        args[k] = static_cast<int>(rest % a.size());
        rest /= a.size();
      }
      out += " (";
      for (int k = 0; k < ar; ++k)
        out += std::string(k ? "," : "") + a.carrier[args[k]];
      out += ") = " + a.carrier[tab[cell]] + ";";
    }
    out += " }\n";
  }
  for (const auto& [c, e] : a.consts)
    out += ind + "  const " + c + " = " + a.carrier[e] + ";\n";
  return out + ind + "}";
}

}  // namespace

std::string emit_model(const FuzzyAlgebra& a, const std::string& frame_name,
                       const std::string& sig_name) {
  return "model " + a.name + " over " + frame_name + " for " + sig_name + " " +
         emit_model_body(a, "") + "\n";
}

std::string emit_equation(const std::string& name, const XEquation& e,
                          const std::string& frame_name,
                          const std::string& sig_name) {
  const Frame& fr = *e.target.frame;
  std::string out =
      "equation " + name + " over " + frame_name + " for " + sig_name + " {\n";
  out += "  gens {";
  for (size_t i = 0; i < e.generators.elems.size(); ++i)
    out += std::string(i ? "," : "") + " " + e.generators.elems[i].first + ": " +
           fr.elem_name(e.generators.elems[i].second);
  out += " }\n  target " + emit_model_body(e.target, "  ") + "\n";
  out += "  val {";
  bool first = true;
  for (const auto& [g, el] : e.valuation) {
    out += std::string(first ? "" : ",") + " " + g + " = " +
           e.target.carrier[el];
    first = false;
  }
  return out + " }\n}\n";
}

std::string emit_assign(const std::map<std::string, std::string>& assign) {
  std::string out = "assign {";
  bool first = true;
  for (const auto& [v, el] : assign) {
    out += std::string(first ? "" : ",") + " " + v + " = " + el;
    first = false;
  }
  return out + " }\n";
}

std::string emit_workspace(const Workspace& ws) {
  auto frame_name_of = [&](const FramePtr& fr) -> std::string {
    for (const auto& [n, f] : ws.frames)
      if (f.get() == fr.get()) return n;
    fail(ErrorKind::BadInput, "frame is not declared in the workspace");
  };
  auto sig_name_of = [&](const Language& lang) -> std::string {
    for (const auto& [n, s] : ws.sigs)
      if (s == lang) return n;
    fail(ErrorKind::BadInput, "signature is not declared in the workspace");
  };

  std::string out;
  for (const auto& [kind, name] : ws.decls) {
    if (!out.empty()) out += "\n";
    if (kind == "frame") {
      out += emit_frame(name, *ws.frames.at(name));
    } else if (kind == "sig") {
      out += emit_sig(name, ws.sigs.at(name));
    } else if (kind == "theory") {
      const Theory& th = ws.theories.at(name);
      out += emit_theory(th, frame_name_of(th.frame), sig_name_of(th.lang));
    } else if (kind == "model") {
      const FuzzyAlgebra& a = ws.models.at(name);
      out += emit_model(a, frame_name_of(a.frame), sig_name_of(a.lang));
    } else if (kind == "equation") {
      const XEquation& e = ws.equations.at(name);
      out += emit_equation(name, e, frame_name_of(e.target.frame),
                           sig_name_of(e.target.lang));
    }
  }
  for (const auto& m : ws.assigns) {
    if (!out.empty()) out += "\n";
    out += emit_assign(m);
  }
  return out;
}

namespace {

json deriv_to_json(const Theory& th, const Derivation& d) {
  const DerivNode& n = d.node();
  json j;
  j["rule"] = to_string(n.rule);
  j["conclusion"] = n.conclusion.str(*th.frame);
  switch (n.rule) {
    case Rule::Weak:
    case Rule::Cut: {
      json arr = json::array();
      for (const auto& f : n.formulas) arr.push_back(f.str(*th.frame));
      j["formulas"] = std::move(arr);
      break;
    }
    case Rule::Sub: {
      json m = json::object();
      for (const auto& [v, t] : n.subst) m[v] = t.str();
      j["subst"] = std::move(m);
      break;
    }
    case Rule::Cong:
    case Rule::Exp:
      j["op"] = n.op;
      break;
    case Rule::Mon:
      j["level"] = th.frame->elem_name(n.level);
      break;
    case Rule::Sup: {
      json arr = json::array();
      for (const auto l : n.levels) arr.push_back(th.frame->elem_name(l));
      j["levels"] = std::move(arr);
      break;
    }
    case Rule::Axiom:
      j["axiom"] = n.axiom_index;
      break;
    default:
      break;
  }
  if (!n.premises.empty()) {
    json arr = json::array();
    for (const auto& p : n.premises) arr.push_back(deriv_to_json(th, p));
    j["premises"] = std::move(arr);
  }
  return j;
}

Rule rule_by_name(const std::string& s) {
  static const std::map<std::string, Rule> names = {
      {"A", Rule::A},       {"Weak", Rule::Weak}, {"Cut", Rule::Cut},
      {"Refl", Rule::Refl}, {"Sym", Rule::Sym},   {"Trans", Rule::Trans},
      {"Sub", Rule::Sub},   {"Cong", Rule::Cong}, {"Inf", Rule::Inf},
      {"Mon", Rule::Mon},   {"Exp", Rule::Exp},   {"Sup", Rule::Sup},
      {"Fun", Rule::Fun},   {"Axiom", Rule::Axiom}};
  auto it = names.find(s);
  if (it == names.end())
    fail(ErrorKind::ParseError, "unknown rule '" + s + "'");
  return it->second;
}

Derivation json_to_deriv(const Theory& th, const json& j) {
  if (!j.is_object())
    fail(ErrorKind::ParseError, "derivation node must be an object");
  if (!j.contains("rule") || !j["rule"].is_string())
    fail(ErrorKind::ParseError, "derivation node misses a 'rule' string");
  if (!j.contains("conclusion") || !j["conclusion"].is_string())
    fail(ErrorKind::ParseError, "derivation node misses a 'conclusion' string");

  auto node = std::make_shared<DerivNode>();
  node->rule = rule_by_name(j["rule"].get<std::string>());
  node->conclusion =
      parse_sequent(th.frame, th.lang, j["conclusion"].get<std::string>());

  if (j.contains("formulas")) {
    if (!j["formulas"].is_array())
      fail(ErrorKind::ParseError, "'formulas' must be an array");
    for (const auto& f : j["formulas"])
      node->formulas.push_back(
          parse_formula(th.frame, th.lang, f.get<std::string>()));
  }
  if (j.contains("subst")) {
    if (!j["subst"].is_object())
      fail(ErrorKind::ParseError, "'subst' must be an object");
    for (const auto& [v, t] : j["subst"].items())
      node->subst[v] = parse_term(th.lang, t.get<std::string>());
  }
  if (node->rule == Rule::Cong || node->rule == Rule::Exp) {
    if (!j.contains("op") || !j["op"].is_string())
      fail(ErrorKind::ParseError, "'op' is required for Cong and Exp nodes");
  }
  if (node->rule == Rule::Mon && !j.contains("level"))
    fail(ErrorKind::ParseError, "'level' is required for Mon nodes");
  if (node->rule == Rule::Axiom && !j.contains("axiom"))
    fail(ErrorKind::ParseError, "'axiom' is required for Axiom nodes");
  if (j.contains("op")) node->op = j["op"].get<std::string>();
  if (j.contains("level"))
    node->level = level_by_name(*th.frame, j["level"].get<std::string>());
  if (j.contains("levels")) {
    if (!j["levels"].is_array())
      fail(ErrorKind::ParseError, "'levels' must be an array");
    for (const auto& l : j["levels"])
      node->levels.push_back(level_by_name(*th.frame, l.get<std::string>()));
    std::sort(node->levels.begin(), node->levels.end());
  }
  if (j.contains("axiom")) {
    if (!j["axiom"].is_number_integer())
      fail(ErrorKind::ParseError, "'axiom' must be an integer");
    node->axiom_index = j["axiom"].get<int>();
  }
  if (j.contains("premises")) {
    if (!j["premises"].is_array())
      fail(ErrorKind::ParseError, "'premises' must be an array");
    for (const auto& p : j["premises"])
      node->premises.push_back(json_to_deriv(th, p));
  }
  return Derivation(std::move(node));
}

}  // namespace

std::string emit_derivation(const Theory& th, const Derivation& d) {
  if (!d.ok()) fail(ErrorKind::BadInput, "empty derivation");
  return deriv_to_json(th, d).dump(2) + "\n";
}

Derivation parse_derivation(const Theory& th, const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("bad derivation file: ") + e.what());
  }
  try {
    return json_to_deriv(th, j);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("bad derivation node: ") + e.what());
  }
}

Derivation parse_derivation_file(const Theory& th, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_derivation(th, ss.str());
}

}  // namespace fuzzalg
