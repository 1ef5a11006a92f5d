#ifndef PREHIST_PROOF_HPP
#define PREHIST_PROOF_HPP

#include <optional>
#include <string>
#include <vector>

#include "prehist/formula.hpp"

namespace prehist {

// ---------------------------------------------------------------------------
// Sequents. Ordered lists of formula occurrences with multiset semantics:
// order never affects validity, only occurrence addressing.
// ---------------------------------------------------------------------------

struct Sequent {
  std::vector<const Formula*> ant;
  std::vector<const Formula*> suc;

  bool operator==(const Sequent& o) const { return ant == o.ant && suc == o.suc; }
};

std::string render(const Sequent& s);
Sequent parse_sequent(const std::string& text, Language lang, const Lexicon& lex = {});
Sequent desugar(const Sequent& s);
Sequent erase_annotations(const Sequent& s);
Sequent forgetful(const Sequent& s);

// Multiset equality / inclusion over interned formula pointers.
bool multiset_eq(const std::vector<const Formula*>& a, const std::vector<const Formula*>& b);
bool multiset_leq(const std::vector<const Formula*>& a, const std::vector<const Formula*>& b);

// ---------------------------------------------------------------------------
// Rules and proofs
// ---------------------------------------------------------------------------

enum class Rule : uint8_t {
  Ax, BotL,
  NotL, NotR, AndL, AndR, OrL, OrR, ImpL, ImpR,
  BoxL, BoxR, DiaL, DiaR,
  Cut, BoxCut,
  ColonL, ColonRc, ColonRt, BangR, PlusR, DotR,
};

const char* rule_name(Rule r);                       // JSON tag, e.g. "imp-r"
const char* rule_display(Rule r);                    // pretty tag, e.g. "(=> ->)"
std::optional<Rule> rule_from_name(const std::string& s);
int rule_premise_count(Rule r);

enum class Side : uint8_t { Ant, Suc };

// Principal reference. Axioms may omit it. Cut carries the cut formula A;
// BoxCut carries the implication A -> B (which determines boxA/box(A->B)/boxB).
struct PrincipalRef {
  bool has_occ = false;
  Side side = Side::Suc;
  int index = 0;
  const Formula* cut = nullptr;  // Cut / BoxCut
};

struct ProofNode {
  Rule rule;
  Sequent sequent;
  PrincipalRef principal;
  std::vector<int> premises;  // node ids, in schema order
};

struct Proof {
  std::vector<ProofNode> nodes;
  int root = -1;

  const ProofNode& at(int id) const { return nodes[size_t(id)]; }
  ProofNode& at(int id) { return nodes[size_t(id)]; }
  const Sequent& endsequent() const { return nodes[size_t(root)].sequent; }
  int size() const { return int(nodes.size()); }
};

// Builder helpers (premises are node ids already added to the proof).
int add_node(Proof& p, Rule r, Sequent s, PrincipalRef pr, std::vector<int> premises);

// Counts nodes with the given rule.
int count_rule(const Proof& p, Rule r);

// Map every box annotation across the whole proof (used for labelling).
Proof erase_proof_annotations(const Proof& p);

// JSON interchange (schema "prehist/1", see README).
std::string proof_to_json(const Proof& p, Language lang);
Proof proof_from_json(const std::string& json_text, const Lexicon& lex = {});

std::string render_tree(const Proof& p);  // indented text rendering

}  // namespace prehist

#endif
