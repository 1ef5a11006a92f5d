#ifndef PREHIST_LP_ANALYSIS_HPP
#define PREHIST_LP_ANALYSIS_HPP

#include <map>
#include <string>
#include <vector>

#include "prehist/calculus.hpp"
#include "prehist/families.hpp"

namespace prehist {

// ---------------------------------------------------------------------------
// Hilbert-style LP derivations
// ---------------------------------------------------------------------------

struct HilbertStep {
  enum class Kind { Axiom, Assumption, ModusPonens, Necessitation };
  const Formula* formula;
  Kind kind;
  int impl_step = -1;  // MP: the step holding F -> G
  int arg_step = -1;   // MP: the step holding F
  int axiom_step = -1; // Necessitation: optional step holding the axiom A
};

struct HilbertReport {
  bool ok = true;
  std::vector<std::string> issues;                  // per-step diagnoses
  std::vector<const Formula*> generated_cs;         // c:A formulas from R2 steps
};

HilbertReport check_hilbert(const std::vector<HilbertStep>& steps,
                            const std::vector<const Formula*>& assumptions,
                            const AxiomChecker& ax = AxiomChecker::tautology());

std::pair<std::vector<HilbertStep>, std::vector<const Formula*>> hilbert_from_json(
    const std::string& text, const Lexicon& lex = {});

// ---------------------------------------------------------------------------
// Inputs and self-referentiality
// ---------------------------------------------------------------------------

struct InputEntry {
  const Formula* formula;  // t:A
  bool from_term_rule = false;   // principal of some (=> :)t
  bool from_const_rule = false;  // principal of some (=> :)c
};

// Principal formulas of the (=> :) rules, deduplicated, sorted by rendering.
std::vector<InputEntry> inputs_of(const Proof& p);

enum class SelfRefKind { NonSelfReferential, Cyclic, Direct };

struct SelfRefVerdict {
  SelfRefKind kind = SelfRefKind::NonSelfReferential;
  std::vector<const Formula*> witness;  // cyclic subset t0:A(t1), ..., tn-1:A(t0)
};

// Graph over the given justified formulas: t:A -> s:B iff s is a subterm
// of A. Direct on a self-loop; Cyclic on a shortest cycle.
SelfRefVerdict classify_selfref(const std::vector<const Formula*>& entries);

// Constructive content of the main theorem: given a cycle of the lp-term
// prehistoric graph (vertex names as produced by prehistoric_graph), return
// inputs witnessing the self-referential subset.
std::vector<const Formula*> extract_selfref_chain(const Proof& p, const std::vector<int>& cycle);

// ---------------------------------------------------------------------------
// Realization
// ---------------------------------------------------------------------------

struct RealizationFunction {
  std::map<std::pair<AnnKind, int>, const Term*> map;

  const Term* at(AnnKind kind, int index) const;
  static RealizationFunction from_json(const std::string& text, const Lexicon& lex = {});
};

// Substitutes every annotated box [si]A by r(si):A'. Errors on missing
// symbols and on unannotated boxes or diamonds.
const Formula* apply_realization(const RealizationFunction& r, const Formula* annotated);

// Normal: negative and non-principal-positive symbols map to pairwise
// distinct variables, and the constant specification is injective.
bool check_normal(const RealizationFunction& r, const std::vector<const Formula*>& cs);

bool cs_injective(const std::vector<const Formula*>& cs);

}  // namespace prehist

#endif
