#ifndef PREHIST_FAMILIES_HPP
#define PREHIST_FAMILIES_HPP

#include <optional>
#include <string>
#include <vector>

#include "prehist/correspond.hpp"

namespace prehist {

// ---------------------------------------------------------------------------
// Family classification and annotated proofs (cut-free G3s, no diamonds).
// ---------------------------------------------------------------------------

enum class FamilyClass : uint8_t { PrincipalPositive, NonPrincipalPositive, Negative, Unpolarized, Term };

struct FamilyInfo {
  int cls;              // correspondence class index
  FamilyClass kind;
  int number;           // index within its kind (p0, o1, n0, ...)
  std::string name;     // "p0" / "o0" / "n0" / "f0" / "t0"
  const Formula* sample;  // subformula at the first occurrence
};

struct FamilyAnalysis {
  Correspondence corr;
  std::vector<FamilyInfo> families;     // indexed by correspondence class
  std::vector<int> family_of_class;     // class -> index into families (identity)
};

// Classify every box family of a validated cut-free G3s proof (diamonds are
// rejected; the full classical connectives are fine). Throws VariantError-like
// invalid_argument on cut rules or diamonds, logic_error on a polarity clash.
FamilyAnalysis classify_families(const Proof& p, CalculusVariant v);

struct AnnotatedProof {
  Proof proof;          // sequents carry [+i]/[.i]/[-i] annotations
  Proof source;         // the unannotated input
  FamilyAnalysis analysis;
};

AnnotatedProof classify_and_annotate(const Proof& p, CalculusVariant v);

// Relabels every box occurrence with its family index as a [#i] annotation.
// Works for any modal variant (including Cut/BoxCut); the result validates
// under the same variant and is the vehicle for annotation transport
// through transforms.
Proof label_by_family(const Proof& p, CalculusVariant v, int* class_count = nullptr);

// ---------------------------------------------------------------------------
// Prehistoric graphs
// ---------------------------------------------------------------------------

enum class GraphMode { G3sPrincipal, AllBox, LpTerm, Labeled };

struct PrehistoricGraph {
  GraphMode mode;
  std::vector<std::string> vertex_names;  // vertex id -> name
  struct Edge {
    int from, to;
    char label;  // 'L' or 'R'
    bool operator<(const Edge& o) const {
      return std::tie(from, to, label) < std::tie(o.from, o.to, o.label);
    }
    bool operator==(const Edge& o) const {
      return from == o.from && to == o.to && label == o.label;
    }
  };
  std::vector<Edge> edges;  // sorted, deduplicated

  bool has_edge(int from, int to) const;  // any label
  std::string to_dot() const;
  std::string to_json() const;
};

// mode G3sPrincipal: vertices are principal positive families, edges from
//   (=> []) premises restricted to principal families.
// mode AllBox: vertices are all box families.
// mode LpTerm: vertices are term families, edges from (=> :) premises.
// mode Labeled: families are read off [#i] labels instead of correspondence.
PrehistoricGraph prehistoric_graph(const Proof& p, GraphMode mode, CalculusVariant v);

// Shortest cycle (vertex list v0 < ... with v0 -> v1 -> ... -> v0), edges
// restricted to label L when left_only. Deterministic tie-break: smallest
// length, then smallest start vertex, then lexicographic.
std::optional<std::vector<int>> find_cycle(const PrehistoricGraph& g, bool left_only);

// ---------------------------------------------------------------------------
// Prehistory witnesses (Lemma "global" computational content).
// ---------------------------------------------------------------------------

struct PrehistoryWitness {
  int leaf;    // leaf node id (identifies the root-leaf path)
  int node;    // sequent where the occurrence lives
  Side side;
  int index;
  Path path;   // box position inside the formula
};

// All occurrences of family h lying in a pre-history of family i, per
// root-leaf path. Families are named by their analysis names ("p0", ...).
std::vector<PrehistoryWitness> prehistory_witness(const AnnotatedProof& ap, const std::string& h,
                                                  const std::string& i);

}  // namespace prehist

#endif
