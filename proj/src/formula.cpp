#include "prehist/formula.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cstring>
#include <mutex>
#include <tuple>
#include <unordered_map>

namespace prehist {

// ---------------------------------------------------------------------------
// Interning
// ---------------------------------------------------------------------------

namespace {

struct TermKey {
  TermOp op;
  std::string name;
  const Term* l;
  const Term* r;
  bool operator==(const TermKey& o) const {
    return op == o.op && name == o.name && l == o.l && r == o.r;
  }
};
struct TermKeyHash {
  size_t operator()(const TermKey& k) const {
    size_t h = std::hash<int>()(int(k.op));
    h = h * 1315423911u ^ std::hash<std::string>()(k.name);
    h = h * 1315423911u ^ std::hash<const void*>()(k.l);
    h = h * 1315423911u ^ std::hash<const void*>()(k.r);
    return h;
  }
};

struct FormulaKey {
  Conn conn;
  std::string atom;
  const Formula* l;
  const Formula* r;
  const Term* t;
  BoxAnn ann;
  bool operator==(const FormulaKey& o) const {
    return conn == o.conn && atom == o.atom && l == o.l && r == o.r && t == o.t && ann == o.ann;
  }
};
struct FormulaKeyHash {
  size_t operator()(const FormulaKey& k) const {
    size_t h = std::hash<int>()(int(k.conn));
    h = h * 1315423911u ^ std::hash<std::string>()(k.atom);
    h = h * 1315423911u ^ std::hash<const void*>()(k.l);
    h = h * 1315423911u ^ std::hash<const void*>()(k.r);
    h = h * 1315423911u ^ std::hash<const void*>()(k.t);
    h = h * 1315423911u ^ (size_t(k.ann.kind) * 31 + size_t(k.ann.index + 2));
    return h;
  }
};

std::mutex g_intern_mutex;
std::unordered_map<TermKey, Term*, TermKeyHash>& term_table() {
  static auto* t = new std::unordered_map<TermKey, Term*, TermKeyHash>();
  return *t;
}
std::unordered_map<FormulaKey, Formula*, FormulaKeyHash>& formula_table() {
  static auto* t = new std::unordered_map<FormulaKey, Formula*, FormulaKeyHash>();
  return *t;
}

const Term* intern_term(TermOp op, std::string name, const Term* l, const Term* r) {
  std::lock_guard<std::mutex> lock(g_intern_mutex);
  TermKey key{op, name, l, r};
  auto& tab = term_table();
  auto it = tab.find(key);
  if (it != tab.end()) return it->second;
  auto* t = new Term{op, std::move(name), l, r, uint32_t(tab.size() + 1)};
  tab.emplace(std::move(key), t);
  return t;
}

const Formula* intern_formula(Conn conn, std::string atom, const Formula* l, const Formula* r,
                              const Term* t, BoxAnn ann) {
  std::lock_guard<std::mutex> lock(g_intern_mutex);
  FormulaKey key{conn, atom, l, r, t, ann};
  auto& tab = formula_table();
  auto it = tab.find(key);
  if (it != tab.end()) return it->second;
  auto* f = new Formula{conn, std::move(atom), l, r, t, ann, uint32_t(tab.size() + 1)};
  tab.emplace(std::move(key), f);
  return f;
}

}  // namespace

const Term* mk_const(const std::string& name) { return intern_term(TermOp::Const, name, nullptr, nullptr); }
const Term* mk_var(const std::string& name) { return intern_term(TermOp::Var, name, nullptr, nullptr); }
const Term* mk_app(const Term* l, const Term* r) { return intern_term(TermOp::App, "", l, r); }
const Term* mk_sum(const Term* l, const Term* r) { return intern_term(TermOp::Sum, "", l, r); }
const Term* mk_bang(const Term* t) { return intern_term(TermOp::Bang, "", t, nullptr); }

const Formula* mk_bottom() { return intern_formula(Conn::Bottom, "", nullptr, nullptr, nullptr, {}); }
const Formula* mk_atom(const std::string& name) {
  return intern_formula(Conn::Atom, name, nullptr, nullptr, nullptr, {});
}
const Formula* mk_implies(const Formula* a, const Formula* b) {
  return intern_formula(Conn::Implies, "", a, b, nullptr, {});
}
const Formula* mk_and(const Formula* a, const Formula* b) {
  return intern_formula(Conn::And, "", a, b, nullptr, {});
}
const Formula* mk_or(const Formula* a, const Formula* b) {
  return intern_formula(Conn::Or, "", a, b, nullptr, {});
}
const Formula* mk_not(const Formula* a) { return intern_formula(Conn::Not, "", a, nullptr, nullptr, {}); }
const Formula* mk_box(const Formula* a, BoxAnn ann) {
  return intern_formula(Conn::Box, "", a, nullptr, nullptr, ann);
}
const Formula* mk_diamond(const Formula* a) {
  return intern_formula(Conn::Diamond, "", a, nullptr, nullptr, {});
}
const Formula* mk_proof(const Term* t, const Formula* a) {
  return intern_formula(Conn::Proof, "", a, nullptr, t, {});
}

// ---------------------------------------------------------------------------
// Predicates and rewrites
// ---------------------------------------------------------------------------

namespace {
template <typename Pred>
bool any_node(const Formula* f, Pred p) {
  if (p(f)) return true;
  if (f->left && any_node(f->left, p)) return true;
  if (f->right && any_node(f->right, p)) return true;
  return false;
}
}  // namespace

bool is_modal(const Formula* f) {
  return !any_node(f, [](const Formula* g) { return g->conn == Conn::Proof; });
}
bool is_lp(const Formula* f) {
  return !any_node(f, [](const Formula* g) { return g->conn == Conn::Box || g->conn == Conn::Diamond; });
}
bool is_minimal(const Formula* f) {
  return !any_node(f, [](const Formula* g) {
    return g->conn == Conn::Proof || g->conn == Conn::Diamond || g->conn == Conn::And ||
           g->conn == Conn::Or || g->conn == Conn::Not;
  });
}
bool has_diamond(const Formula* f) {
  return any_node(f, [](const Formula* g) { return g->conn == Conn::Diamond; });
}
bool has_annotation(const Formula* f) {
  return any_node(f, [](const Formula* g) { return g->conn == Conn::Box && g->ann.kind != AnnKind::None; });
}

const Formula* erase_annotations(const Formula* f) {
  switch (f->conn) {
    case Conn::Bottom:
    case Conn::Atom:
      return f;
    case Conn::Implies:
      return mk_implies(erase_annotations(f->left), erase_annotations(f->right));
    case Conn::And:
      return mk_and(erase_annotations(f->left), erase_annotations(f->right));
    case Conn::Or:
      return mk_or(erase_annotations(f->left), erase_annotations(f->right));
    case Conn::Not:
      return mk_not(erase_annotations(f->left));
    case Conn::Box:
      return mk_box(erase_annotations(f->left));
    case Conn::Diamond:
      return mk_diamond(erase_annotations(f->left));
    case Conn::Proof:
      return mk_proof(f->term, erase_annotations(f->left));
  }
  return f;
}

const Formula* desugar(const Formula* f) {
  switch (f->conn) {
    case Conn::Bottom:
    case Conn::Atom:
      return f;
    case Conn::Implies:
      return mk_implies(desugar(f->left), desugar(f->right));
    case Conn::Box:
      return mk_box(desugar(f->left), f->ann);
    case Conn::Proof:
      return mk_proof(f->term, desugar(f->left));
    case Conn::Not:
      return mk_implies(desugar(f->left), mk_bottom());
    case Conn::And: {
      const Formula* a = desugar(f->left);
      const Formula* b = desugar(f->right);
      return mk_implies(mk_implies(a, mk_implies(b, mk_bottom())), mk_bottom());
    }
    case Conn::Or: {
      const Formula* a = desugar(f->left);
      const Formula* b = desugar(f->right);
      return mk_implies(mk_implies(a, mk_bottom()), b);
    }
    case Conn::Diamond: {
      const Formula* a = desugar(f->left);
      return mk_implies(mk_box(mk_implies(a, mk_bottom())), mk_bottom());
    }
  }
  return f;
}

const Formula* forgetful(const Formula* f) {
  switch (f->conn) {
    case Conn::Bottom:
    case Conn::Atom:
      return f;
    case Conn::Implies:
      return mk_implies(forgetful(f->left), forgetful(f->right));
    case Conn::And:
      return mk_and(forgetful(f->left), forgetful(f->right));
    case Conn::Or:
      return mk_or(forgetful(f->left), forgetful(f->right));
    case Conn::Not:
      return mk_not(forgetful(f->left));
    case Conn::Proof:
      return mk_box(forgetful(f->left));
    case Conn::Box:
    case Conn::Diamond:
      throw std::invalid_argument("forgetful projection expects an LP formula");
  }
  return f;
}

// ---------------------------------------------------------------------------
// Rendering. Precedence: -> (1, right-assoc) < | (2) < & (3) < prefix (4)
// < proof ':' (5) < primary. Terms: + (1) < * (2) < ! (3).
// ---------------------------------------------------------------------------

namespace {

void render_term(const Term* t, int min_prec, std::string& out) {
  switch (t->op) {
    case TermOp::Const:
    case TermOp::Var:
      out += t->name;
      return;
    case TermOp::Sum: {
      bool paren = min_prec > 1;
      if (paren) out += '(';
      render_term(t->left, 1, out);
      out += '+';
      render_term(t->right, 2, out);  // left-assoc
      if (paren) out += ')';
      return;
    }
    case TermOp::App: {
      bool paren = min_prec > 2;
      if (paren) out += '(';
      render_term(t->left, 2, out);
      out += '*';
      render_term(t->right, 3, out);
      if (paren) out += ')';
      return;
    }
    case TermOp::Bang:
      out += '!';
      render_term(t->left, 3, out);
      return;
  }
}

std::string render_ann(const BoxAnn& ann) {
  switch (ann.kind) {
    case AnnKind::None: return "[]";
    case AnnKind::Plus: return "[+" + std::to_string(ann.index) + "]";
    case AnnKind::Dot: return "[." + std::to_string(ann.index) + "]";
    case AnnKind::Minus: return "[-" + std::to_string(ann.index) + "]";
    case AnnKind::Fam: return "[#" + std::to_string(ann.index) + "]";
  }
  return "[]";
}

void render_formula(const Formula* f, int min_prec, std::string& out) {
  switch (f->conn) {
    case Conn::Bottom:
      out += "bot";
      return;
    case Conn::Atom:
      out += f->atom;
      return;
    case Conn::Implies: {
      bool paren = min_prec > 1;
      if (paren) out += '(';
      render_formula(f->left, 2, out);
      out += " -> ";
      render_formula(f->right, 1, out);  // right-assoc
      if (paren) out += ')';
      return;
    }
    case Conn::Or: {
      bool paren = min_prec > 2;
      if (paren) out += '(';
      render_formula(f->left, 2, out);
      out += " | ";
      render_formula(f->right, 3, out);
      if (paren) out += ')';
      return;
    }
    case Conn::And: {
      bool paren = min_prec > 3;
      if (paren) out += '(';
      render_formula(f->left, 3, out);
      out += " & ";
      render_formula(f->right, 4, out);
      if (paren) out += ')';
      return;
    }
    case Conn::Not:
      out += '~';
      render_formula(f->left, 4, out);
      return;
    case Conn::Box:
      out += render_ann(f->ann);
      render_formula(f->left, 4, out);
      return;
    case Conn::Diamond:
      out += "<>";
      render_formula(f->left, 4, out);
      return;
    case Conn::Proof: {
      // Non-leaf application/sum terms are parenthesised before ':'.
      const Term* t = f->term;
      if (t->op == TermOp::App || t->op == TermOp::Sum) {
        out += '(';
        render_term(t, 1, out);
        out += ')';
      } else {
        render_term(t, 1, out);
      }
      out += ':';
      render_formula(f->left, 4, out);
      return;
    }
  }
}

}  // namespace

std::string render(const Term* t) {
  std::string out;
  render_term(t, 1, out);
  return out;
}

std::string render(const Formula* f) {
  std::string out;
  render_formula(f, 1, out);
  return out;
}

// ---------------------------------------------------------------------------
// Lexer / parser
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  End, Ident, Bot, Not, And, Or, Arrow, Box, Diamond, Bang, Star, Plus, Colon,
  LParen, RParen, AnnBox  // [+i] [.i] [-i] [#i]
};

struct Lexer {
  const std::string* textp;
  size_t pos = 0;
  Tok tok = Tok::End;
  std::string ident;
  BoxAnn ann;
  size_t tok_pos = 0;

  explicit Lexer(const std::string& t) : textp(&t) { next(); }
  const std::string& text_ref() const { return *textp; }

  bool starts_with(const char* s) const {
    size_t n = strlen(s);
    return text_ref().compare(pos, n, s) == 0;
  }

  void next() {
    const std::string& text = text_ref();
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r'))
      pos++;
    tok_pos = pos;
    if (pos >= text.size()) { tok = Tok::End; return; }
    // UTF-8 aliases first.
    struct Alias { const char* s; Tok t; };
    static const Alias aliases[] = {
        {"¬", Tok::Not},      // ¬
        {"∧", Tok::And},      // ∧
        {"∨", Tok::Or},       // ∨
        {"→", Tok::Arrow},    // →
        {"□", Tok::Box},      // □
        {"◇", Tok::Diamond},  // ◇
        {"⊥", Tok::Bot},      // ⊥
        {"·", Tok::Star},     // ·
    };
    for (const auto& a : aliases) {
      if (starts_with(a.s)) { tok = a.t; pos += strlen(a.s); return; }
    }
    char c = text[pos];
    if (c == '-' && pos + 1 < text.size() && text[pos + 1] == '>') { tok = Tok::Arrow; pos += 2; return; }
    if (c == '[') {
      if (pos + 1 < text.size() && text[pos + 1] == ']') { tok = Tok::Box; ann = {}; pos += 2; return; }
      // annotated box [+i] [.i] [-i] [#i]
      size_t q = pos + 1;
      AnnKind kind;
      if (q < text.size() && (text[q] == '+' || text[q] == '.' || text[q] == '-' || text[q] == '#')) {
        kind = text[q] == '+' ? AnnKind::Plus
             : text[q] == '.' ? AnnKind::Dot
             : text[q] == '-' ? AnnKind::Minus
                              : AnnKind::Fam;
        q++;
        size_t start = q;
        while (q < text.size() && isdigit(uint8_t(text[q]))) q++;
        if (q > start && q < text.size() && text[q] == ']') {
          ann = BoxAnn{kind, int32_t(std::stol(text.substr(start, q - start)))};
          tok = Tok::AnnBox;
          pos = q + 1;
          return;
        }
      }
      throw ParseError("malformed box token", pos);
    }
    if (c == '<' && pos + 1 < text.size() && text[pos + 1] == '>') { tok = Tok::Diamond; pos += 2; return; }
    switch (c) {
      case '~': tok = Tok::Not; pos++; return;
      case '&': tok = Tok::And; pos++; return;
      case '|': tok = Tok::Or; pos++; return;
      case '!': tok = Tok::Bang; pos++; return;
      case '*': tok = Tok::Star; pos++; return;
      case '+': tok = Tok::Plus; pos++; return;
      case ':': tok = Tok::Colon; pos++; return;
      case '(': tok = Tok::LParen; pos++; return;
      case ')': tok = Tok::RParen; pos++; return;
      default: break;
    }
    if (isalpha(uint8_t(c))) {
      size_t start = pos;
      while (pos < text.size() && (isalnum(uint8_t(text[pos])) || text[pos] == '_')) pos++;
      ident = text.substr(start, pos - start);
      tok = ident == "bot" ? Tok::Bot : Tok::Ident;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }
};

struct Parser {
  Lexer lex;
  Language lang;
  const Lexicon& lexicon;

  Parser(const std::string& text, Language l, const Lexicon& lx) : lex(text), lang(l), lexicon(lx) {}

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, lex.tok_pos); }

  void expect(Tok t, const char* what) {
    if (lex.tok != t) fail(std::string("expected ") + what);
    lex.next();
  }

  const Term* mk_name(const std::string& name) {
    if (!name.empty() && isupper(uint8_t(name[0]))) fail("term name must be lowercase-initial");
    return lexicon.is_variable(name) ? mk_var(name) : mk_const(name);
  }

  // term := sum;  sum := app ('+' app)*;  app := prim ('*' prim)*
  // prim := '!' prim | name | '(' term ')'
  const Term* term_prim() {
    if (lex.tok == Tok::Bang) { lex.next(); return mk_bang(term_prim()); }
    if (lex.tok == Tok::Ident) {
      std::string n = lex.ident;
      lex.next();
      return mk_name(n);
    }
    if (lex.tok == Tok::LParen) {
      lex.next();
      const Term* t = term_expr();
      expect(Tok::RParen, "')'");
      return t;
    }
    fail("expected term");
  }
  const Term* term_app() {
    const Term* t = term_prim();
    while (lex.tok == Tok::Star) { lex.next(); t = mk_app(t, term_prim()); }
    return t;
  }
  const Term* term_expr() {
    const Term* t = term_app();
    while (lex.tok == Tok::Plus) { lex.next(); t = mk_sum(t, term_app()); }
    return t;
  }

  // Try to parse "<term> :" from the current point; restore on failure.
  const Term* try_proof_term() {
    Lexer save = lex;
    try {
      const Term* t = term_expr();
      if (lex.tok == Tok::Colon) { lex.next(); return t; }
    } catch (const ParseError&) {
    }
    lex = save;
    return nullptr;
  }

  // unary := '~' unary | box unary | '<>' unary | term ':' unary | primary
  const Formula* unary() {
    switch (lex.tok) {
      case Tok::Not: lex.next(); return mk_not(unary());
      case Tok::Box:
      case Tok::AnnBox: {
        if (lang != Language::Modal) fail("box is not part of the LP language");
        BoxAnn a = lex.tok == Tok::AnnBox ? lex.ann : BoxAnn{};
        lex.next();
        return mk_box(unary(), a);
      }
      case Tok::Diamond:
        if (lang != Language::Modal) fail("diamond is not part of the LP language");
        lex.next();
        return mk_diamond(unary());
      default: break;
    }
    if (lang == Language::Lp && (lex.tok == Tok::Bang || lex.tok == Tok::LParen ||
                                 (lex.tok == Tok::Ident && !lex.ident.empty() && islower(uint8_t(lex.ident[0]))))) {
      if (lex.tok == Tok::Bang) {
        const Term* t = term_expr();
        expect(Tok::Colon, "':' after justification term");
        return mk_proof(t, unary());
      }
      if (const Term* t = try_proof_term()) return mk_proof(t, unary());
      if (lex.tok == Tok::Ident && islower(uint8_t(lex.ident[0])))
        fail("term syntax requires ':' after the term");
    }
    if (lang == Language::Modal && lex.tok == Tok::Ident && !lex.ident.empty() &&
        islower(uint8_t(lex.ident[0]))) {
      // A lone lowercase name in a modal parse is a stray term.
      Lexer save = lex;
      lex.next();
      bool colon = lex.tok == Tok::Colon;
      lex = save;
      if (colon) fail("term syntax is not part of the modal language");
    }
    return primary();
  }

  const Formula* primary() {
    switch (lex.tok) {
      case Tok::Bot: lex.next(); return mk_bottom();
      case Tok::Ident: {
        std::string n = lex.ident;
        if (islower(uint8_t(n[0]))) fail("atoms are uppercase-initial");
        lex.next();
        return mk_atom(n);
      }
      case Tok::LParen: {
        lex.next();
        const Formula* f = implies_level();
        expect(Tok::RParen, "')'");
        return f;
      }
      default: fail("expected formula");
    }
  }

  const Formula* and_level() {
    const Formula* f = unary();
    while (lex.tok == Tok::And) { lex.next(); f = mk_and(f, unary()); }
    return f;
  }
  const Formula* or_level() {
    const Formula* f = and_level();
    while (lex.tok == Tok::Or) { lex.next(); f = mk_or(f, and_level()); }
    return f;
  }
  const Formula* implies_level() {
    const Formula* f = or_level();
    if (lex.tok == Tok::Arrow) { lex.next(); return mk_implies(f, implies_level()); }
    return f;
  }

  const Formula* whole() {
    const Formula* f = implies_level();
    if (lex.tok != Tok::End) fail("trailing input");
    return f;
  }
};

}  // namespace

const Formula* parse_formula(const std::string& text, Language lang, const Lexicon& lex) {
  Parser p(text, lang, lex);
  return p.whole();
}

const Term* parse_term(const std::string& text, const Lexicon& lex) {
  Parser p(text, Language::Lp, lex);
  const Term* t = p.term_expr();
  if (p.lex.tok != Tok::End) p.fail("trailing input");
  return t;
}

// ---------------------------------------------------------------------------
// Positions, polarity
// ---------------------------------------------------------------------------

const Formula* subformula_at(const Formula* f, const Path& p) {
  const Formula* g = f;
  for (uint8_t c : p) {
    g = c == 0 ? g->left : g->right;
    if (!g) throw std::out_of_range("bad formula path");
  }
  return g;
}

namespace {
void collect_positions(const Formula* f, Path& path, PositionTable& t) {
  t.index_of.emplace(path, int(t.paths.size()));
  t.paths.push_back(path);
  t.nodes.push_back(f);
  int idx = int(t.paths.size()) - 1;
  if (f->conn == Conn::Box) t.box_positions.push_back(idx);
  if (f->conn == Conn::Proof) t.proof_positions.push_back(idx);
  if (f->left) {
    path.push_back(0);
    collect_positions(f->left, path, t);
    path.pop_back();
  }
  if (f->right) {
    path.push_back(1);
    collect_positions(f->right, path, t);
    path.pop_back();
  }
}
}  // namespace

const PositionTable& positions(const Formula* f) {
  static std::mutex m;
  static auto* cache = new std::unordered_map<const Formula*, PositionTable*>();
  {
    std::lock_guard<std::mutex> lock(m);
    auto it = cache->find(f);
    if (it != cache->end()) return *it->second;
  }
  auto* t = new PositionTable();
  Path path;
  collect_positions(f, path, *t);
  std::lock_guard<std::mutex> lock(m);
  auto [it, inserted] = cache->emplace(f, t);
  if (!inserted) delete t;
  return *it->second;
}

Polarity polarity_at(const Formula* f, const Path& p, Polarity root) {
  Polarity pol = root;
  const Formula* g = f;
  for (uint8_t c : p) {
    switch (g->conn) {
      case Conn::Implies:
        if (c == 0) pol = pol == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
        break;
      case Conn::Not:
        pol = pol == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
        break;
      default:
        break;  // And/Or/Box/Diamond/Proof keep polarity
    }
    g = c == 0 ? g->left : g->right;
    if (!g) throw std::out_of_range("bad formula path");
  }
  return pol;
}

std::map<Path, Polarity> polarity_map(const Formula* f, Polarity root) {
  std::map<Path, Polarity> out;
  const PositionTable& t = positions(f);
  for (const Path& p : t.paths) out.emplace(p, polarity_at(f, p, root));
  return out;
}

// ---------------------------------------------------------------------------
// LP subformulas / subterms
// ---------------------------------------------------------------------------

std::set<const Term*> subterms(const Term* t) {
  std::set<const Term*> out;
  std::vector<const Term*> stack{t};
  while (!stack.empty()) {
    const Term* u = stack.back();
    stack.pop_back();
    if (!out.insert(u).second) continue;
    if (u->left) stack.push_back(u->left);
    if (u->right) stack.push_back(u->right);
  }
  return out;
}

namespace {
void lp_sub(const Formula* f, std::set<const Formula*>& out) {
  if (!out.insert(f).second) return;
  switch (f->conn) {
    case Conn::Bottom:
    case Conn::Atom:
      return;
    case Conn::Implies:
    case Conn::And:
    case Conn::Or:
      lp_sub(f->left, out);
      lp_sub(f->right, out);
      return;
    case Conn::Not:
      lp_sub(f->left, out);
      return;
    case Conn::Proof:
      // Sum split: (s+t):A contributes s:A and t:A as subformulas as well.
      if (f->term->op == TermOp::Sum) {
        lp_sub(mk_proof(f->term->left, f->left), out);
        lp_sub(mk_proof(f->term->right, f->left), out);
        lp_sub(f->left, out);
      } else {
        lp_sub(f->left, out);
      }
      return;
    case Conn::Box:
    case Conn::Diamond:
      throw std::invalid_argument("lp_subformulas expects an LP formula");
  }
}
}  // namespace

std::set<const Formula*> lp_subformulas(const Formula* f) {
  std::set<const Formula*> out;
  lp_sub(f, out);
  return out;
}

std::set<const Term*> subterms_of_formula(const Formula* f) {
  std::set<const Term*> out;
  std::vector<const Formula*> stack{f};
  while (!stack.empty()) {
    const Formula* g = stack.back();
    stack.pop_back();
    if (g->conn == Conn::Proof) {
      auto s = subterms(g->term);
      out.insert(s.begin(), s.end());
    }
    if (g->left) stack.push_back(g->left);
    if (g->right) stack.push_back(g->right);
  }
  return out;
}

}  // namespace prehist
