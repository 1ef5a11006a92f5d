#ifndef PREHIST_CORRESPOND_HPP
#define PREHIST_CORRESPOND_HPP

#include <map>
#include <vector>

#include "prehist/calculus.hpp"

namespace prehist {

// ---------------------------------------------------------------------------
// Symbol occurrences. A tracked symbol is a box position (modal calculi)
// or a Proof position standing for its topmost term (G3lp). Every formula
// occurrence in every sequent of a proof contributes its symbol positions.
// ---------------------------------------------------------------------------

struct SymbolTable {
  struct OccInfo {
    int node;
    Side side;
    int index;
    const Formula* f;
    int sym_base;  // first symbol id of this occurrence
  };
  std::vector<OccInfo> occs;
  std::map<std::tuple<int, int, int>, int> occ_id;  // (node, side, index) -> occ
  std::vector<std::pair<int, int>> syms;            // sym id -> (occ id, marker index)
  int total = 0;

  int occ_of(int node, Side side, int index) const {
    return occ_id.at(std::make_tuple(node, side == Side::Ant ? 0 : 1, index));
  }
  // Marker positions of a formula = box and Proof positions (preorder).
  static const std::vector<int>& markers(const Formula* f);
  // Symbol id at a given path of an occurrence; -1 when the path is not a marker.
  int sym_at(int occ, const Path& path) const;
  Path sym_path(int sym) const;
  const Formula* sym_subformula(int sym) const;
};

struct Correspondence {
  SymbolTable table;
  mutable std::vector<int> parent;

  int find(int x) const;
  void unite(int a, int b);

  // Stable class enumeration: classes numbered by first appearance in a
  // root-first depth-first traversal (antecedent occurrences before
  // succedent, formula positions in preorder).
  std::vector<int> class_of_sym;  // sym -> class index
  int class_count = 0;
  std::vector<int> class_rep;  // class -> first sym

  void enumerate_classes(const Proof& p);
};

// Builds the full correspondence for a validated proof. Throws on invalid
// proofs (validate first for diagnostics).
Correspondence build_correspondence(const Proof& p, CalculusVariant v,
                                    const AxiomChecker& ax = AxiomChecker::tautology());

// Unique root occurrence of the class of `sym` (cut-free G3s only).
// Returns the root symbol id; throws if the class has zero or several
// root occurrences (a subformula-property violation).
int trace_to_root(const Proof& p, const Correspondence& c, int sym);

// All syms of the root sequent belonging to the class of `sym`.
std::vector<int> root_occurrences_of_class(const Proof& p, const Correspondence& c, int cls);

// ---------------------------------------------------------------------------
// Tree navigation helpers shared by families/transforms.
// ---------------------------------------------------------------------------

struct TreeIndex {
  std::vector<int> parent;          // node -> parent (-1 for root)
  std::vector<int> preorder;        // root-first, premises in order
  std::vector<std::vector<int>> subtree;  // node -> nodes of its subtree (preorder)
  std::vector<std::vector<int>> leaves;   // node -> leaf nodes of its subtree
};
TreeIndex index_tree(const Proof& p);

}  // namespace prehist

#endif
