#ifndef PREHIST_TRANSFORMS_HPP
#define PREHIST_TRANSFORMS_HPP

#include <map>
#include <set>

#include "prehist/families.hpp"

namespace prehist {

// Structural transforms. All of them rebuild proofs formula-for-formula, so
// box labels ([#i]) ride through unchanged; reports compare prehistoric
// graphs over one labelling of the input.

// Subtree of p rooted at `node` as a standalone proof.
Proof subproof(const Proof& p, int node);

// Appends src into dst (reindexed); returns the new id of src's root.
int graft(Proof& dst, const Proof& src);

// Adds `f` as a side formula everywhere (append at the end of the side).
Proof weaken(const Proof& p, const Formula* f, Side side);
Proof weaken_many(const Proof& p, const std::vector<const Formula*>& ant,
                  const std::vector<const Formula*>& suc);

// Permute root occurrence lists to match `target` (multiset-equal required).
Proof reorder_root(const Proof& p, const Sequent& target);

// Contract the two designated root occurrences (same formula, same side);
// the second one disappears.
Proof contract_occurrences(const Proof& p, Side side, int i, int j);

// Contract the first duplicate pair of `f` on `side`.
Proof contract(const Proof& p, const Formula* f, Side side);

// Contract and reorder until the root sequent equals `target`
// (root must be a multiset superset of target with the same support).
Proof contract_to(const Proof& p, const Sequent& target);

// Invert the connective of the designated root occurrence. Returns the
// premise proofs in schema order, each ending in the canonical sequent
// (designated occurrence removed, active formulas appended at the end).
// Box-left / colon-left / succedent expansions invert by weakening; (=> [])
// is not invertible and reports an error.
std::vector<Proof> invert(const Proof& p, Side side, int index);

// ---------------------------------------------------------------------------
// Cut elimination
// ---------------------------------------------------------------------------

struct CutStep {
  struct NewEdge {
    int from, to;
    int via;         // mediating family inside the cut formula, -1 if none found
    bool justified;
  };
  std::vector<NewEdge> new_edges;
  bool all_justified = true;
};

struct TransformReport {
  Proof output;  // family-labelled
  PrehistoricGraph input_graph;
  PrehistoricGraph output_graph;
  std::vector<CutStep> steps;
  bool all_new_edges_justified = true;
  bool input_cyclic = false;
  bool output_cyclic = false;
};

// Context-sharing cut: pL proves G => D, A and pR proves A, G => D; returns a
// cut-free G3s proof of G => D. Inputs may themselves contain Cut nodes.
// Diamonds are not supported.
TransformReport eliminate_cut(const Proof& pL, const Proof& pR, const Formula* a);

// Eliminates every Cut node of a G3s+Cut proof, innermost first.
TransformReport eliminate_cuts(const Proof& p);

// BoxCut elimination: pL proves G => D, []A, []B and pR proves
// G => D, [](A->B), []B; returns a cut-free G3s proof of G => D, []B.
TransformReport eliminate_boxcut(const Proof& pL, const Proof& pR, const Formula* a,
                                 const Formula* b);

// Eliminates every BoxCut node of a G3s+BoxCut proof (innermost first).
// The result is a cut-free G3s proof.
TransformReport eliminate_boxcuts(const Proof& p);

// ---------------------------------------------------------------------------
// Box doubling: G => D, []A  ~>  G => D, [][]A  at the designated succedent
// occurrence. The new outer box carries the same family label as the box it
// doubles. Works on G3s and G3s+BoxCut proofs.
// ---------------------------------------------------------------------------

Proof double_box(const Proof& p, int suc_index);

// ---------------------------------------------------------------------------
// Forgetful projection of a G3lp proof into G3s+BoxCut. Output boxes are
// labelled with the source term families, which realizes the family map.
// ---------------------------------------------------------------------------

struct ProjectionReport {
  Proof output;                               // labelled G3s+BoxCut proof
  std::map<int, std::set<int>> family_map;    // output box family -> source term families
  bool map_total = true;
  bool map_single_valued = true;
  PrehistoricGraph source_graph;              // lp-term graph of the input
  PrehistoricGraph output_graph;              // labelled graph of the output
  bool edge_map_ok = true;  // every output edge maps to an equal or related pair of term families
};

ProjectionReport project_proof(const Proof& p,
                               const AxiomChecker& ax = AxiomChecker::tautology());

}  // namespace prehist

#endif
