#ifndef BIALG_CORPUS_HPP
#define BIALG_CORPUS_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cf_text.hpp"
#include "expr.hpp"
#include "rmatrix.hpp"
#include "structure.hpp"

namespace bialg {

// Line-oriented corpus format; see corpus/FORMAT.md for the grammar.

enum class EntryKind { Algebra, Bialgebra, RMatrix, Frame, Poisson, Membership, Fixture };

inline const char* to_string(EntryKind k) {
  switch (k) {
    case EntryKind::Algebra: return "algebra";
    case EntryKind::Bialgebra: return "bialgebra";
    case EntryKind::RMatrix: return "rmatrix";
    case EntryKind::Frame: return "frame";
    case EntryKind::Poisson: return "poisson";
    case EntryKind::Membership: return "membership";
    case EntryKind::Fixture: return "fixture";
  }
  return "?";
}

inline constexpr size_t kDim = 4;

struct BracketLine {
  size_t i = 0, j = 0;  // zero-based
  std::vector<std::pair<ExprPtr, size_t>> terms;
};

struct RTerm {
  ExprPtr coeff;
  size_t i = 0, j = 0;
  bool wedge = false;
};

struct STerm {
  ExprPtr coeff;
  size_t i = 0, j = 0, k = 0;
};

struct PbLine {
  size_t i = 0, j = 0;
  ExprPtr value;
};

struct Constraint {
  ExprPtr lhs, rhs;
  std::string op;
};

// Everything below "header" in a block. A `printed` prefix stores the same kinds of lines
// in a second Payload: the value as printed, when the main payload carries a correction.
struct Payload {
  std::vector<BracketLine> brackets;
  std::optional<std::vector<RTerm>> r, dual_r;
  std::optional<std::vector<STerm>> schouten, dual_schouten;
  std::map<size_t, ExprPtr> left, right;
  std::vector<PbLine> pb;
  bool empty() const {
    return brackets.empty() && !r && !dual_r && !schouten && !dual_schouten && left.empty() && right.empty() &&
           pb.empty();
  }
};

struct CorpusEntry {
  EntryKind kind = EntryKind::Algebra;
  std::vector<std::string> names;  // algebra: {NAME}; bialgebra/rmatrix/poisson: {G, DUAL}; frame: {G}; ...
  std::string method;              // poisson: sklyanin | pi
  std::vector<std::string> params;
  std::vector<Constraint> constraints;
  std::map<std::string, std::vector<Rational>> grid;
  std::vector<std::string> free, dual_free;
  Payload data, printed;
  std::vector<std::pair<std::string, std::string>> pairs;       // membership
  std::vector<std::pair<std::string, std::string>> properties;  // fixture key = value
  std::vector<std::string> flags;
  std::string anchor;
  std::string file;
  int line = 0;

  bool flagged() const { return !flags.empty(); }
  const std::string& name() const { return names.at(0); }
  std::string key() const {
    std::string s = to_string(kind);
    for (auto& n : names) s += " " + n;
    if (!method.empty()) s += " method=" + method;
    return s;
  }
};

using ParamBinding = std::map<std::string, Rational>;

// ---------------------------------------------------------------- parsing

namespace corpus_detail {

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct Cursor {
  std::string text;
  size_t pos = 0;
  int line = 0;
  int col0 = 1;  // column of text[0] in the source line

  [[noreturn]] void fail(const std::string& msg, size_t at) const {
    throw ParseError(msg, line, col0 + static_cast<int>(at));
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos); }
  void ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool done() {
    ws();
    return pos >= text.size();
  }
  std::string word() {
    ws();
    size_t st = pos;
    while (pos < text.size() && text[pos] != ' ' && text[pos] != '\t') ++pos;
    if (st == pos) fail("unexpected end of line");
    return text.substr(st, pos - st);
  }
  bool accept(const std::string& w) {
    ws();
    if (text.compare(pos, w.size(), w) == 0) {
      pos += w.size();
      return true;
    }
    return false;
  }
  size_t index() {
    ws();
    size_t at = pos;
    std::string w = word();
    if (w.size() != 1 || w[0] < '1' || w[0] > '0' + static_cast<int>(kDim)) fail("index must be 1.." + std::to_string(kDim), at);
    return static_cast<size_t>(w[0] - '1');
  }
  // a coefficient: a number, a symbol, or a parenthesized expression
  ExprPtr coeff() {
    ws();
    size_t at = pos;
    if (pos < text.size() && text[pos] == '(') {
      int depth = 0;
      size_t e = pos;
      for (; e < text.size(); ++e) {
        if (text[e] == '(') ++depth;
        if (text[e] == ')' && --depth == 0) break;
      }
      if (e >= text.size()) fail("unbalanced '('", at);
      pos = e + 1;
      return parse_expr(text.substr(at, pos - at), line, col0 + static_cast<int>(at));
    }
    std::string w = word();
    return parse_expr(w, line, col0 + static_cast<int>(at));
  }
  // rest of line as an expression
  ExprPtr rest_expr() {
    ws();
    size_t at = pos;
    if (at >= text.size()) fail("expected an expression");
    pos = text.size();
    return parse_expr(text.substr(at), line, col0 + static_cast<int>(at));
  }
};

// strip a trailing '#' comment outside quotes; returns the comment text
inline std::string split_comment(std::string& s) {
  bool q = false;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') q = !q;
    if (s[i] == '#' && !q) {
      std::string c = trim(s.substr(i + 1));
      s = s.substr(0, i);
      return c;
    }
  }
  return "";
}

inline std::vector<RTerm> parse_r_terms(Cursor& c) {
  std::vector<RTerm> out;
  if (c.done()) c.fail("empty r");
  if (c.accept("0")) {
    if (!c.done()) c.fail("unexpected text after 0");
    return out;
  }
  while (true) {
    RTerm t;
    t.coeff = c.coeff();
    t.i = c.index();
    size_t at = c.pos;
    std::string kind = c.word();
    if (kind == "wedge")
      t.wedge = true;
    else if (kind != "tensor")
      c.fail("expected 'wedge' or 'tensor'", at);
    t.j = c.index();
    if (t.wedge && t.i == t.j) c.fail("X_i wedge X_i is zero", at);
    out.push_back(t);
    if (c.done()) break;
    if (!c.accept(";")) c.fail("expected ';'");
  }
  return out;
}

inline std::vector<STerm> parse_s_terms(Cursor& c) {
  std::vector<STerm> out;
  if (c.done()) c.fail("empty Schouten value");
  if (c.accept("0")) {
    if (!c.done()) c.fail("unexpected text after 0");
    return out;
  }
  while (true) {
    STerm t;
    t.coeff = c.coeff();
    t.i = c.index();
    t.j = c.index();
    t.k = c.index();
    out.push_back(t);
    if (c.done()) break;
    if (!c.accept(";")) c.fail("expected ';'");
  }
  return out;
}

inline Rational parse_number_word(Cursor& c) {
  c.ws();
  size_t at = c.pos;
  std::string w = c.word();
  try {
    return eval_rational(parse_expr(w));
  } catch (const Error&) {
    c.fail("expected a rational number", at);
  }
}

inline void payload_line(Cursor& c, const std::string& kw, Payload& p, const CorpusEntry& e, size_t kwpos) {
  auto require = [&](std::initializer_list<EntryKind> ks) {
    for (auto k : ks)
      if (e.kind == k) return;
    c.fail("'" + kw + "' not allowed in a " + std::string(to_string(e.kind)) + " block", kwpos);
  };
  if (kw == "bracket") {
    require({EntryKind::Algebra, EntryKind::Bialgebra});
    BracketLine b;
    size_t at = c.pos;
    b.i = c.index();
    b.j = c.index();
    if (b.i == b.j) c.fail("bracket of an element with itself", at);
    if (!c.accept("->")) c.fail("expected '->'");
    while (!c.done()) {
      auto coeff = c.coeff();
      if (c.done()) c.fail("coefficient without a basis index");
      b.terms.push_back({coeff, c.index()});
    }
    for (auto& o : p.brackets)
      if ((o.i == b.i && o.j == b.j) || (o.i == b.j && o.j == b.i)) c.fail("bracket given twice", at);
    p.brackets.push_back(b);
  } else if (kw == "r:" || kw == "dual_r:") {
    require({EntryKind::RMatrix});
    auto& slot = kw == "r:" ? p.r : p.dual_r;
    if (slot) c.fail("'" + kw + "' given twice", kwpos);
    slot = parse_r_terms(c);
  } else if (kw == "schouten:" || kw == "dual_schouten:") {
    require({EntryKind::RMatrix});
    auto& slot = kw == "schouten:" ? p.schouten : p.dual_schouten;
    if (slot) c.fail("'" + kw + "' given twice", kwpos);
    slot = parse_s_terms(c);
  } else if (kw == "left" || kw == "right") {
    require({EntryKind::Frame});
    size_t i = c.index();
    if (!c.accept("=")) c.fail("expected '='");
    auto& m = kw == "left" ? p.left : p.right;
    if (m.count(i)) c.fail("frame row given twice", kwpos);
    m[i] = c.rest_expr();
  } else if (kw == "pb") {
    require({EntryKind::Poisson});
    PbLine l;
    size_t at = c.pos;
    l.i = c.index();
    l.j = c.index();
    if (l.i >= l.j) c.fail("pb indices must satisfy i < j", at);
    if (!c.accept("=")) c.fail("expected '='");
    l.value = c.rest_expr();
    for (auto& o : p.pb)
      if (o.i == l.i && o.j == l.j) c.fail("bracket given twice", at);
    p.pb.push_back(l);
  } else {
    c.fail("unknown keyword '" + kw + "'", kwpos);
  }
}

inline void check_symbols(const ExprPtr& e, const std::set<std::string>& allowed, const std::string& what, int line) {
  std::vector<std::string> syms;
  collect_symbols(e, syms);
  for (auto& s : syms)
    if (!allowed.count(s)) throw ParseError("unknown symbol '" + s + "' in " + what, line, 1);
}

}  // namespace corpus_detail

inline std::vector<CorpusEntry> parse_corpus(const std::string& text, const std::string& file = "") {
  using namespace corpus_detail;
  std::vector<CorpusEntry> out;
  std::optional<CorpusEntry> cur;
  std::istringstream in(text);
  std::string raw;
  int ln = 0;
  while (std::getline(in, raw)) {
    ++ln;
    std::string s = raw;
    std::string comment = split_comment(s);
    size_t lead = s.find_first_not_of(" \t");
    if (lead == std::string::npos) continue;
    Cursor c{s, lead, ln, 1};
    size_t kwpos = c.pos;
    std::string kw = c.word();
    if (!cur) {
      CorpusEntry e;
      e.anchor = comment;
      e.line = ln;
      e.file = file;
      size_t nat = c.pos;
      if (kw == "algebra" || kw == "fixture") {
        e.kind = kw == "algebra" ? EntryKind::Algebra : EntryKind::Fixture;
        e.names = {c.word()};
      } else if (kw == "bialgebra" || kw == "rmatrix" || kw == "poisson") {
        e.kind = kw == "bialgebra" ? EntryKind::Bialgebra : kw == "rmatrix" ? EntryKind::RMatrix : EntryKind::Poisson;
        e.names = {c.word(), c.word()};
        if (e.kind == EntryKind::Poisson) {
          size_t at = c.pos;
          std::string m = c.done() ? "" : c.word();
          if (m != "method=sklyanin" && m != "method=pi") c.fail("expected method=sklyanin or method=pi", at);
          e.method = m.substr(7);
        }
      } else if (kw == "frame") {
        e.kind = EntryKind::Frame;
        e.names = {c.word()};
      } else if (kw == "membership") {
        e.kind = EntryKind::Membership;
        e.names = {c.word()};
      } else {
        c.fail("expected a block header, got '" + kw + "'", kwpos);
      }
      (void)nat;
      if (e.kind == EntryKind::Algebra || e.kind == EntryKind::Bialgebra) {
        if (!c.done()) {
          size_t at = c.pos;
          if (c.word() != "param") c.fail("expected 'param'", at);
          while (!c.done()) {
            size_t pat = c.pos;
            std::string p = c.word();
            if (!std::isalpha(static_cast<unsigned char>(p[0]))) c.fail("bad parameter name", pat);
            e.params.push_back(p);
          }
          if (e.params.empty()) c.fail("'param' without names");
        }
      }
      if (!c.done()) c.fail("unexpected text in header");
      cur = e;
      continue;
    }
    CorpusEntry& e = *cur;
    if (kw == "end") {
      if (!c.done()) c.fail("unexpected text after 'end'");
      out.push_back(std::move(e));
      cur.reset();
      continue;
    }
    if (kw == "flag") {
      c.ws();
      size_t at = c.pos;
      if (c.pos >= s.size() || s[c.pos] != '"') c.fail("expected a quoted reason", at);
      size_t close = s.find('"', c.pos + 1);
      if (close == std::string::npos) c.fail("unterminated string", at);
      e.flags.push_back(s.substr(c.pos + 1, close - c.pos - 1));
      c.pos = close + 1;
      if (!c.done()) c.fail("unexpected text after flag");
    } else if (kw == "constraint") {
      if (e.kind != EntryKind::Algebra && e.kind != EntryKind::Bialgebra) c.fail("'constraint' not allowed here", kwpos);
      c.ws();
      std::string rest = s.substr(c.pos);
      static const char* ops[] = {"!=", ">=", "<=", "==", ">", "<"};
      size_t best = std::string::npos;
      std::string op;
      for (auto o : ops) {
        size_t f = rest.find(o);
        if (f != std::string::npos && (f < best || (f == best && std::string(o).size() > op.size()))) {
          best = f;
          op = o;
        }
      }
      if (best == std::string::npos) c.fail("expected a comparison");
      Constraint k;
      k.op = op;
      k.lhs = parse_expr(rest.substr(0, best), ln, static_cast<int>(c.pos) + 1);
      k.rhs = parse_expr(rest.substr(best + op.size()), ln, static_cast<int>(c.pos + best + op.size()) + 1);
      e.constraints.push_back(k);
    } else if (kw == "grid") {
      if (e.kind != EntryKind::Algebra && e.kind != EntryKind::Bialgebra) c.fail("'grid' not allowed here", kwpos);
      std::string p = c.word();
      std::vector<Rational> vals;
      while (!c.done()) vals.push_back(parse_number_word(c));
      if (vals.empty()) c.fail("grid without values");
      e.grid[p] = vals;
    } else if (kw == "free" || kw == "dual_free") {
      if (e.kind != EntryKind::RMatrix) c.fail("'" + kw + "' not allowed here", kwpos);
      auto& v = kw == "free" ? e.free : e.dual_free;
      while (!c.done()) v.push_back(c.word());
    } else if (kw == "pair") {
      if (e.kind != EntryKind::Membership) c.fail("'pair' not allowed here", kwpos);
      std::string g = c.word(), d = c.word();
      if (!c.done()) c.fail("unexpected text after pair");
      e.pairs.push_back({g, d});
    } else if (e.kind == EntryKind::Fixture) {
      if (!c.accept("=")) c.fail("expected 'key = value'");
      c.ws();
      e.properties.push_back({kw, trim(s.substr(c.pos))});
    } else if (kw == "printed") {
      size_t at = c.pos;
      std::string kw2 = c.word();
      corpus_detail::payload_line(c, kw2, e.printed, e, at);
    } else {
      corpus_detail::payload_line(c, kw, e.data, e, kwpos);
    }
  }
  if (cur) throw ParseError("block '" + cur->key() + "' is not closed by 'end'", cur->line, 1);
  return out;
}

// ---------------------------------------------------------------- serialization

namespace corpus_detail {

inline std::string coeff_text(const ExprPtr& e) {
  std::string t = to_text(e);
  bool plain = e->op == Expr::Op::Num || e->op == Expr::Op::Sym || (e->op == Expr::Op::Div && e->a->op == Expr::Op::Num &&
                                                                     e->b->op == Expr::Op::Num) ||
               (e->op == Expr::Op::Neg && e->a->op == Expr::Op::Num);
  if (plain && t.find(' ') == std::string::npos) return t;
  return "(" + t + ")";
}

inline std::string r_text(const std::vector<RTerm>& r) {
  if (r.empty()) return "0";
  std::string s;
  for (size_t t = 0; t < r.size(); ++t) {
    if (t) s += " ; ";
    s += coeff_text(r[t].coeff) + " " + std::to_string(r[t].i + 1) + (r[t].wedge ? " wedge " : " tensor ") +
         std::to_string(r[t].j + 1);
  }
  return s;
}

inline std::string s_text(const std::vector<STerm>& r) {
  if (r.empty()) return "0";
  std::string s;
  for (size_t t = 0; t < r.size(); ++t) {
    if (t) s += " ; ";
    s += coeff_text(r[t].coeff) + " " + std::to_string(r[t].i + 1) + " " + std::to_string(r[t].j + 1) + " " +
         std::to_string(r[t].k + 1);
  }
  return s;
}

inline void payload_text(std::ostream& os, const Payload& p, const std::string& prefix) {
  for (auto& b : p.brackets) {
    os << "  " << prefix << "bracket " << b.i + 1 << " " << b.j + 1 << " ->";
    for (auto& [c, k] : b.terms) os << " " << coeff_text(c) << " " << k + 1;
    os << "\n";
  }
  if (p.r) os << "  " << prefix << "r: " << r_text(*p.r) << "\n";
  if (p.schouten) os << "  " << prefix << "schouten: " << s_text(*p.schouten) << "\n";
  if (p.dual_r) os << "  " << prefix << "dual_r: " << r_text(*p.dual_r) << "\n";
  if (p.dual_schouten) os << "  " << prefix << "dual_schouten: " << s_text(*p.dual_schouten) << "\n";
  for (auto& [i, v] : p.left) os << "  " << prefix << "left " << i + 1 << " = " << to_text(v) << "\n";
  for (auto& [i, v] : p.right) os << "  " << prefix << "right " << i + 1 << " = " << to_text(v) << "\n";
  for (auto& l : p.pb) os << "  " << prefix << "pb " << l.i + 1 << " " << l.j + 1 << " = " << to_text(l.value) << "\n";
}

}  // namespace corpus_detail

inline std::string serialize(const CorpusEntry& e) {
  using namespace corpus_detail;
  std::ostringstream os;
  os << e.key();
  if (!e.params.empty()) {
    os << " param";
    for (auto& p : e.params) os << " " << p;
  }
  if (!e.anchor.empty()) os << "   # " << e.anchor;
  os << "\n";
  for (auto& k : e.constraints) os << "  constraint " << to_text(k.lhs) << " " << k.op << " " << to_text(k.rhs) << "\n";
  for (auto& [p, vs] : e.grid) {
    os << "  grid " << p;
    for (auto& v : vs) os << " " << to_string(v);
    os << "\n";
  }
  if (!e.free.empty()) {
    os << "  free";
    for (auto& f : e.free) os << " " << f;
    os << "\n";
  }
  if (!e.dual_free.empty()) {
    os << "  dual_free";
    for (auto& f : e.dual_free) os << " " << f;
    os << "\n";
  }
  payload_text(os, e.data, "");
  payload_text(os, e.printed, "printed ");
  for (auto& [g, d] : e.pairs) os << "  pair " << g << " " << d << "\n";
  for (auto& [k, v] : e.properties) os << "  " << k << " = " << v << "\n";
  for (auto& f : e.flags) os << "  flag \"" << f << "\"\n";
  os << "end\n";
  return os.str();
}

inline std::string serialize(const std::vector<CorpusEntry>& es) {
  std::string s;
  for (size_t i = 0; i < es.size(); ++i) {
    if (i) s += "\n";
    s += serialize(es[i]);
  }
  return s;
}

inline nlohmann::json to_json(const CorpusEntry& e) {
  using namespace corpus_detail;
  nlohmann::json j;
  j["kind"] = to_string(e.kind);
  j["names"] = e.names;
  if (!e.method.empty()) j["method"] = e.method;
  if (!e.params.empty()) j["params"] = e.params;
  if (!e.anchor.empty()) j["anchor"] = e.anchor;
  j["source"] = e.file + ":" + std::to_string(e.line);
  std::vector<std::string> cons;
  for (auto& k : e.constraints) cons.push_back(to_text(k.lhs) + " " + k.op + " " + to_text(k.rhs));
  if (!cons.empty()) j["constraints"] = cons;
  auto payload = [&](const Payload& p) {
    nlohmann::json o = nlohmann::json::object();
    for (auto& b : p.brackets) {
      nlohmann::json terms = nlohmann::json::array();
      for (auto& [c, k] : b.terms) terms.push_back({{"coeff", to_text(c)}, {"index", k + 1}});
      o["brackets"].push_back({{"i", b.i + 1}, {"j", b.j + 1}, {"terms", terms}});
    }
    if (p.r) o["r"] = r_text(*p.r);
    if (p.schouten) o["schouten"] = s_text(*p.schouten);
    if (p.dual_r) o["dual_r"] = r_text(*p.dual_r);
    if (p.dual_schouten) o["dual_schouten"] = s_text(*p.dual_schouten);
    for (auto& [i, v] : p.left) o["left"][std::to_string(i + 1)] = to_text(v);
    for (auto& [i, v] : p.right) o["right"][std::to_string(i + 1)] = to_text(v);
    for (auto& l : p.pb) o["pb"].push_back({{"i", l.i + 1}, {"j", l.j + 1}, {"value", to_text(l.value)}});
    return o;
  };
  j["payload"] = payload(e.data);
  if (!e.printed.empty()) j["printed"] = payload(e.printed);
  if (!e.free.empty()) j["free"] = e.free;
  if (!e.dual_free.empty()) j["dual_free"] = e.dual_free;
  for (auto& [g, d] : e.pairs) j["pairs"].push_back({g, d});
  for (auto& [k, v] : e.properties) j["properties"][k] = v;
  if (!e.flags.empty()) j["flags"] = e.flags;
  return j;
}

// ---------------------------------------------------------------- instantiation

inline bool constraint_holds(const Constraint& k, const ParamBinding& b) {
  Rational l, r;
  try {
    l = eval_rational(k.lhs, b);
    r = eval_rational(k.rhs, b);
  } catch (const InputError&) {
    return false;
  }
  if (k.op == "!=") return l != r;
  if (k.op == "==") return l == r;
  if (k.op == ">") return l > r;
  if (k.op == "<") return l < r;
  if (k.op == ">=") return l >= r;
  return l <= r;
}

inline const std::vector<Rational>& default_grid() {
  static const std::vector<Rational> g = {Rational(-2), Rational(-1, 2), Rational(1, 3), Rational(2)};
  return g;
}

// Replace parameters by numbers; every symbol must be bound.
inline ExprPtr bind(const ExprPtr& e, const ParamBinding& b) {
  std::map<std::string, ExprPtr> sub;
  for (auto& [k, v] : b) sub[k] = expr::num(v);
  return substitute(e, sub);
}

inline StructureConstants structure_of(const std::vector<BracketLine>& lines, const ParamBinding& b) {
  StructureConstants f(kDim);
  for (auto& l : lines)
    for (auto& [c, k] : l.terms) {
      Rational v = eval_rational(c, b) + f(l.i, l.j, k);
      f.set_bracket(l.i, l.j, k, v);
    }
  return f;
}

inline RatMatrix r_matrix_of(const std::vector<RTerm>& terms, const ParamBinding& b) {
  RatMatrix r(kDim, kDim);
  for (auto& t : terms) {
    Rational c = eval_rational(t.coeff, b);
    r(t.i, t.j) += c;
    if (t.wedge) r(t.j, t.i) -= c;
  }
  return r;
}

inline Tensor3 wedge3_of(const std::vector<STerm>& terms, const ParamBinding& b) {
  Tensor3 t(kDim);
  for (auto& s : terms) {
    Tensor3 w = wedge3(kDim, s.i, s.j, s.k, eval_rational(s.coeff, b));
    for (size_t i = 0; i < kDim; ++i)
      for (size_t j = 0; j < kDim; ++j)
        for (size_t k = 0; k < kDim; ++k) t(i, j, k) += w(i, j, k);
  }
  return t;
}

// The payload with `printed` lines substituted for the corrected ones.
inline Payload printed_view(const CorpusEntry& e) {
  Payload p = e.data;
  for (auto& b : e.printed.brackets) {
    auto it = std::find_if(p.brackets.begin(), p.brackets.end(), [&](auto& o) { return o.i == b.i && o.j == b.j; });
    if (it != p.brackets.end())
      *it = b;
    else
      p.brackets.push_back(b);
  }
  if (e.printed.r) p.r = e.printed.r;
  if (e.printed.dual_r) p.dual_r = e.printed.dual_r;
  if (e.printed.schouten) p.schouten = e.printed.schouten;
  if (e.printed.dual_schouten) p.dual_schouten = e.printed.dual_schouten;
  for (auto& [i, v] : e.printed.left) p.left[i] = v;
  for (auto& [i, v] : e.printed.right) p.right[i] = v;
  for (auto& l : e.printed.pb) {
    auto it = std::find_if(p.pb.begin(), p.pb.end(), [&](auto& o) { return o.i == l.i && o.j == l.j; });
    if (it != p.pb.end())
      *it = l;
    else
      p.pb.push_back(l);
  }
  return p;
}

// ---------------------------------------------------------------- the corpus

class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<CorpusEntry> es) : entries_(std::move(es)) { index(); }

  static Corpus load_text(const std::string& text, const std::string& file = "") {
    return Corpus(parse_corpus(text, file));
  }

  // every *.corpus file of a directory in name order, or a single file
  static Corpus load(const std::filesystem::path& path) {
    std::vector<std::filesystem::path> files;
    if (!std::filesystem::exists(path)) throw InputError("no corpus at " + path.string());
    if (std::filesystem::is_directory(path)) {
      for (auto& de : std::filesystem::directory_iterator(path))
        if (de.path().extension() == ".corpus") files.push_back(de.path());
      std::sort(files.begin(), files.end());
    } else {
      files.push_back(path);
    }
    std::vector<CorpusEntry> all;
    for (auto& f : files) {
      std::ifstream in(f);
      if (!in) throw InputError("cannot read " + f.string());
      std::stringstream ss;
      ss << in.rdbuf();
      auto es = parse_corpus(ss.str(), f.filename().string());
      all.insert(all.end(), std::make_move_iterator(es.begin()), std::make_move_iterator(es.end()));
    }
    return Corpus(std::move(all));
  }

  static Corpus load_default() { return load(BIALG_CORPUS_DIR); }

  const std::vector<CorpusEntry>& entries() const { return entries_; }

  std::vector<const CorpusEntry*> of_kind(EntryKind k) const {
    std::vector<const CorpusEntry*> v;
    for (auto& e : entries_)
      if (e.kind == k) v.push_back(&e);
    return v;
  }

  // entries whose anchor begins with the given table label, e.g. "Table 6"
  std::vector<const CorpusEntry*> from_table(EntryKind k, int table) const {
    std::string tag = "Table " + std::to_string(table) + " ";
    std::vector<const CorpusEntry*> v;
    for (auto& e : entries_)
      if (e.kind == k && (e.anchor + " ").rfind(tag, 0) == 0) v.push_back(&e);
    return v;
  }

  bool defines(const std::string& name) const { return algebras_.count(name) || duals_.count(name); }

  // the entry whose brackets define the named algebra: an `algebra` block or the
  // `bialgebra` block that introduces it as a dual
  const CorpusEntry& definition(const std::string& name) const {
    if (auto it = algebras_.find(name); it != algebras_.end()) return entries_[it->second];
    if (auto it = duals_.find(name); it != duals_.end()) return entries_[it->second];
    throw InputError("unknown algebra '" + name + "'");
  }

  const CorpusEntry* bialgebra(const std::string& g, const std::string& d) const {
    auto it = pairs_.find({g, d});
    return it == pairs_.end() ? nullptr : &entries_[it->second];
  }

  // parameter-carrying entries an algebra name depends on
  std::vector<const CorpusEntry*> lineage(const std::string& name) const {
    std::vector<const CorpusEntry*> v;
    const CorpusEntry& d = definition(name);
    v.push_back(&d);
    if (d.kind == EntryKind::Bialgebra) v.push_back(&definition(d.names[0]));
    return v;
  }

  std::vector<std::string> params_of(const std::vector<std::string>& names) const {
    std::vector<std::string> ps;
    for (auto& n : names)
      for (auto* e : lineage(n))
        for (auto& p : e->params)
          if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
    return ps;
  }

  // throws InputError naming the violated constraint
  void check_binding(const std::vector<std::string>& names, const ParamBinding& b) const {
    for (auto& p : params_of(names))
      if (!b.count(p)) throw InputError("parameter '" + p + "' is not bound");
    for (auto& n : names)
      for (auto* e : lineage(n))
        for (auto& k : e->constraints)
          if (!constraint_holds(k, b))
            throw InputError("binding violates constraint " + to_text(k.lhs) + " " + k.op + " " + to_text(k.rhs) + " of " +
                             e->key());
  }

  StructureConstants structure(const std::string& name, const ParamBinding& b = {}) const {
    check_binding({name}, b);
    return structure_of(definition(name).data.brackets, b);
  }

  // the default grid intersected with all constraints of the named algebras
  std::vector<ParamBinding> grid(const std::vector<std::string>& names) const {
    auto ps = params_of(names);
    std::vector<ParamBinding> out{{}};
    for (auto& p : ps) {
      const std::vector<Rational>* vals = &default_grid();
      for (auto& n : names)
        for (auto* e : lineage(n))
          if (auto it = e->grid.find(p); it != e->grid.end()) vals = &it->second;
      std::vector<ParamBinding> next;
      for (auto& b : out)
        for (auto& v : *vals) {
          auto nb = b;
          nb[p] = v;
          next.push_back(nb);
        }
      out = std::move(next);
    }
    std::vector<ParamBinding> ok;
    for (auto& b : out) {
      try {
        check_binding(names, b);
        ok.push_back(b);
      } catch (const InputError&) {
      }
    }
    return ok;
  }

  // Cross-entry checks: names resolve, symbols are declared, indices and arities fit.
  void validate() const {
    for (auto& e : entries_) {
      auto where = [&](const std::string& m) { return e.file + ": " + e.key() + ": " + m; };
      auto err = [&](const std::string& m) { throw ParseError(where(m), e.line, 1); };
      std::set<std::string> params;
      auto add_params = [&](const std::string& n) {
        if (!defines(n)) err("unknown algebra '" + n + "'");
        for (auto& p : params_of({n})) params.insert(p);
      };
      switch (e.kind) {
        case EntryKind::Algebra:
          for (auto& p : e.params) params.insert(p);
          break;
        case EntryKind::Bialgebra:
          add_params(e.names[0]);
          for (auto& p : e.params) params.insert(p);
          break;
        case EntryKind::RMatrix:
        case EntryKind::Poisson:
          add_params(e.names[0]);
          add_params(e.names[1]);
          break;
        case EntryKind::Frame:
          add_params(e.names[0]);
          break;
        case EntryKind::Membership:
          for (auto& [g, d] : e.pairs) {
            add_params(g);
            add_params(d);
          }
          break;
        case EntryKind::Fixture:
          break;
      }
      for (auto& k : e.constraints) {
        corpus_detail::check_symbols(k.lhs, params, "constraint", e.line);
        corpus_detail::check_symbols(k.rhs, params, "constraint", e.line);
      }
      for (auto& [p, _] : e.grid)
        if (!params.count(p)) err("grid for undeclared parameter '" + p + "'");
      for (const Payload* p : {&e.data, &e.printed}) {
        for (auto& b : p->brackets)
          for (auto& [c, k] : b.terms) corpus_detail::check_symbols(c, params, "bracket coefficient", e.line);
        auto with = [&](const std::vector<std::string>& extra) {
          auto s = params;
          s.insert(extra.begin(), extra.end());
          return s;
        };
        if (p->r)
          for (auto& t : *p->r) corpus_detail::check_symbols(t.coeff, with(e.free), "r", e.line);
        if (p->dual_r)
          for (auto& t : *p->dual_r) corpus_detail::check_symbols(t.coeff, with(e.dual_free), "dual r", e.line);
        for (auto* s : {&p->schouten, &p->dual_schouten})
          if (*s)
            for (auto& t : **s) corpus_detail::check_symbols(t.coeff, params, "Schouten value", e.line);
        auto coords = with({"x1", "x2", "x3", "x4"});
        for (auto& l : p->pb) corpus_detail::check_symbols(l.value, coords, "Poisson bracket", e.line);
        auto vf = with({"x1", "x2", "x3", "x4", "d1", "d2", "d3", "d4"});
        for (auto* m : {&p->left, &p->right})
          for (auto& [i, v] : *m) corpus_detail::check_symbols(v, vf, "frame row", e.line);
      }
      if (e.kind == EntryKind::RMatrix && !e.data.r) err("missing 'r:' line");
      if (e.kind == EntryKind::Frame && (e.data.left.size() != kDim || e.data.right.size() != kDim))
        err("a frame needs " + std::to_string(kDim) + " left and right rows");
    }
  }

 private:
  std::vector<CorpusEntry> entries_;
  std::map<std::string, size_t> algebras_, duals_;
  std::map<std::pair<std::string, std::string>, size_t> pairs_;

  void index() {
    for (size_t i = 0; i < entries_.size(); ++i) {
      auto& e = entries_[i];
      if (e.kind == EntryKind::Algebra) {
        if (algebras_.count(e.name())) throw ParseError("algebra '" + e.name() + "' defined twice", e.line, 1);
        algebras_[e.name()] = i;
      } else if (e.kind == EntryKind::Bialgebra) {
        if (pairs_.count({e.names[0], e.names[1]}))
          throw ParseError("bialgebra '" + e.key() + "' defined twice", e.line, 1);
        pairs_[{e.names[0], e.names[1]}] = i;
      }
    }
    // a dual label names the same brackets wherever it appears; the first block defines it
    for (size_t i = 0; i < entries_.size(); ++i) {
      auto& e = entries_[i];
      if (e.kind != EntryKind::Bialgebra || algebras_.count(e.names[1]) || duals_.count(e.names[1])) continue;
      duals_[e.names[1]] = i;
    }
  }
};

}  // namespace bialg

#endif  // BIALG_CORPUS_HPP
