#ifndef PREHIST_CALCULUS_HPP
#define PREHIST_CALCULUS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prehist/proof.hpp"

namespace prehist {

enum class CalculusVariant { G3sMin, G3sFull, G3sCut, G3sBoxCut, G3lp };

const char* variant_name(CalculusVariant v);
std::optional<CalculusVariant> variant_from_name(const std::string& s);
bool rule_allowed(Rule r, CalculusVariant v);

// ---------------------------------------------------------------------------
// LP axiom recognition for the (=> :)c side condition.
// A0 under Tautology mode: classical tautologies with maximal t:B
// subformulas treated as opaque atoms, decided by truth tables.
// A0 under SchemaList mode: match against schema formulas whose atoms act as
// formula metavariables and whose term names act as term metavariables.
// A1-A4 are always matched syntactically.
// ---------------------------------------------------------------------------

enum class AxiomMode { Tautology, SchemaList };

struct AxiomChecker {
  AxiomMode mode = AxiomMode::Tautology;
  std::vector<const Formula*> schemas;  // SchemaList mode

  static AxiomChecker tautology() { return {}; }
  static AxiomChecker schema_list(std::vector<const Formula*> schemas);
  // Built-in classical schema basis (includes A & B -> A).
  static std::vector<const Formula*> default_schemas();

  bool is_lp_axiom(const Formula* f) const;  // A0-A4
  bool is_a0(const Formula* f) const;
  static int axiom_a1_to_a4(const Formula* f);  // 1..4, or 0 if none
};

// Propositional tautology over atoms + opaque Proof/Box subformulas.
bool is_propositional_tautology(const Formula* f);

// ---------------------------------------------------------------------------
// Rule instance analysis: validation and the occurrence-level positional map
// in one pass. All symbol linkage is expressed as path-rebase links:
// every path a_prefix.q inside the `a` occurrence corresponds to b_prefix.q
// inside `b` (Subtree), or a single path pair (Single).
// ---------------------------------------------------------------------------

struct Occ {
  Side side;
  int index;
  bool operator<(const Occ& o) const {
    if (side != o.side) return side < o.side;
    return index < o.index;
  }
  bool operator==(const Occ& o) const { return side == o.side && index == o.index; }
};

// Where a linked occurrence lives: premise k (0-based) or the conclusion.
struct LocRef {
  int premise;  // -1 = conclusion
  Occ occ;
};

struct SymLink {
  enum Kind { Subtree, Single } kind;
  LocRef a, b;
  Path a_prefix, b_prefix;  // Subtree: rebase; Single: exact paths
};

struct RuleMatch {
  bool ok = false;
  std::string error;
  Occ principal{Side::Suc, -1};   // resolved principal (has index -1 for axioms/cut)
  std::vector<SymLink> links;     // complete symbol linkage for this instance
  std::vector<Occ> weakened;      // conclusion occurrences introduced by the rule
  // Cut data (resolved formulas)
  const Formula* cut_a = nullptr;        // Cut: A; BoxCut: A
  const Formula* cut_b = nullptr;        // BoxCut: B
  const Formula* boxcut_impl = nullptr;  // BoxCut: A -> B
};

// Validates the node shape against its rule and produces the linkage.
// `premises` are the premise endsequents in schema order.
RuleMatch match_rule(Rule rule, const Sequent& conclusion, const PrincipalRef& principal,
                     const std::vector<const Sequent*>& premises, const AxiomChecker& ax,
                     const Lexicon& lex = {});

// ---------------------------------------------------------------------------
// Whole-proof validation
// ---------------------------------------------------------------------------

struct ValidationIssue {
  int node;
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<ValidationIssue> issues;
  std::string summary() const;
};

ValidationReport check_proof(const Proof& p, CalculusVariant v,
                             const AxiomChecker& ax = AxiomChecker::tautology(),
                             const Lexicon& lex = {});

}  // namespace prehist

#endif
