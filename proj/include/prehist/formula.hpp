#ifndef PREHIST_FORMULA_HPP
#define PREHIST_FORMULA_HPP

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace prehist {

// ---------------------------------------------------------------------------
// Justification terms: t := c | x | t*t | t+t | !t
// Constants and variables are distinguished lexically (see Lexicon below).
// Terms are interned; equality is pointer equality.
// ---------------------------------------------------------------------------

enum class TermOp : uint8_t { Const, Var, App, Sum, Bang };

struct Term {
  TermOp op;
  std::string name;       // Const/Var
  const Term* left = nullptr;
  const Term* right = nullptr;  // unset for Bang
  uint32_t id = 0;              // intern id, process-local
};

const Term* mk_const(const std::string& name);
const Term* mk_var(const std::string& name);
const Term* mk_app(const Term* l, const Term* r);
const Term* mk_sum(const Term* l, const Term* r);
const Term* mk_bang(const Term* t);

std::string render(const Term* t);

// Subterms per the usual inductive clauses (a term is its own subterm).
std::set<const Term*> subterms(const Term* t);

// ---------------------------------------------------------------------------
// Formulas. One node type serves both languages:
//   modal:  bot | P | A -> A | A & A | A | A | ~A | []A | <>A
//   LP:     bot | P | A -> A | A & A | A | A | ~A | t:A
// A formula is modal iff it has no Proof node, LP iff it has no Box/Diamond.
//
// Box nodes carry an optional annotation used for annotated proofs
// ([+i] principal positive, [.i] non-principal positive, [-i] negative)
// and for family-labelled proofs threaded through transforms ([#i]).
// Annotations take part in interning, so an annotated formula is a
// different object from its plain erasure.
// ---------------------------------------------------------------------------

enum class Conn : uint8_t { Bottom, Atom, Implies, And, Or, Not, Box, Diamond, Proof };

enum class AnnKind : uint8_t { None, Plus, Dot, Minus, Fam };

struct BoxAnn {
  AnnKind kind = AnnKind::None;
  int32_t index = -1;
  bool operator==(const BoxAnn& o) const { return kind == o.kind && index == o.index; }
  bool operator<(const BoxAnn& o) const {
    if (kind != o.kind) return kind < o.kind;
    return index < o.index;
  }
};

struct Formula {
  Conn conn;
  std::string atom;              // Atom
  const Formula* left = nullptr;  // binary left, or unary body
  const Formula* right = nullptr;
  const Term* term = nullptr;  // Proof
  BoxAnn ann;                  // Box only
  uint32_t id = 0;

  bool is_atom() const { return conn == Conn::Atom; }
};

const Formula* mk_bottom();
const Formula* mk_atom(const std::string& name);
const Formula* mk_implies(const Formula* a, const Formula* b);
const Formula* mk_and(const Formula* a, const Formula* b);
const Formula* mk_or(const Formula* a, const Formula* b);
const Formula* mk_not(const Formula* a);
const Formula* mk_box(const Formula* a, BoxAnn ann = {});
const Formula* mk_diamond(const Formula* a);
const Formula* mk_proof(const Term* t, const Formula* a);

bool is_modal(const Formula* f);    // no Proof nodes
bool is_lp(const Formula* f);       // no Box/Diamond nodes
bool is_minimal(const Formula* f);  // modal and only bot/atom/->/[]
bool has_diamond(const Formula* f);
bool has_annotation(const Formula* f);

// Strip all box annotations.
const Formula* erase_annotations(const Formula* f);

// Rewrite derived connectives into the minimal language {bot, ->, []}:
//   ~A ~> A->bot, A&B ~> (A->(B->bot))->bot, A|B ~> (A->bot)->B,
//   <>A ~> [](A->bot)->bot.
const Formula* desugar(const Formula* f);

// Forgetful projection of an LP formula: t:A ~> [](A°), homomorphic elsewhere.
const Formula* forgetful(const Formula* f);

std::string render(const Formula* f);

// ---------------------------------------------------------------------------
// Parsing. ASCII grammar with UTF-8 aliases accepted on input.
// Atoms are uppercase-initial identifiers; lowercase-initial identifiers are
// term names. Which lowercase names are variables is configurable.
// ---------------------------------------------------------------------------

enum class Language { Modal, Lp };

struct Lexicon {
  // A lowercase identifier is a variable iff its first letter is listed here.
  std::string variable_initials = "xyz";
  bool is_variable(const std::string& name) const {
    return !name.empty() && variable_initials.find(name[0]) != std::string::npos;
  }
};

struct ParseError : std::runtime_error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

const Formula* parse_formula(const std::string& text, Language lang, const Lexicon& lex = {});
const Term* parse_term(const std::string& text, const Lexicon& lex = {});

// ---------------------------------------------------------------------------
// Positions. A position is the path of child indices from the root of a
// formula (binary: 0 = left, 1 = right; unary and Proof body: 0).
// Proof-node terms are not positions of their own; a Proof position stands
// for the formula and its top term slot at once.
// ---------------------------------------------------------------------------

using Path = std::vector<uint8_t>;

const Formula* subformula_at(const Formula* f, const Path& p);

// All positions in preorder, each with its node.
struct PositionTable {
  std::vector<Path> paths;
  std::vector<const Formula*> nodes;
  std::vector<int> box_positions;    // indices into paths where conn==Box
  std::vector<int> proof_positions;  // indices into paths where conn==Proof
  std::map<Path, int> index_of;
};

// Cached per interned formula.
const PositionTable& positions(const Formula* f);

enum class Polarity : uint8_t { Positive, Negative };

// Polarity of the subformula at path p relative to the whole formula,
// when the formula itself sits with polarity `root` (Positive for a
// succedent member, Negative for an antecedent member).
Polarity polarity_at(const Formula* f, const Path& p, Polarity root = Polarity::Positive);

// Every position of f mapped to its polarity.
std::map<Path, Polarity> polarity_map(const Formula* f, Polarity root = Polarity::Positive);

// ---------------------------------------------------------------------------
// LP subformulas and subterms.
// sub((s+t):A) splits the sum: it contains s:A and t:A (recursively).
// ---------------------------------------------------------------------------

std::set<const Formula*> lp_subformulas(const Formula* f);
std::set<const Term*> subterms_of_formula(const Formula* f);

// Deterministic structural order (used wherever sets are rendered).
struct RenderLess {
  bool operator()(const Formula* a, const Formula* b) const { return render(a) < render(b); }
  bool operator()(const Term* a, const Term* b) const { return render(a) < render(b); }
};

}  // namespace prehist

#endif
