#ifndef PREHIST_PROVER_HPP
#define PREHIST_PROVER_HPP

#include <optional>

#include "prehist/calculus.hpp"
#include "prehist/families.hpp"

namespace prehist {

struct SearchStats {
  long expanded = 0;
  long loop_hits = 0;
};

struct SearchResult {
  enum class Kind { Proved, Unprovable, CycleFreeProved, NoCycleFreeProof, BoundExceeded };
  Kind kind;
  std::optional<Proof> proof;
  SearchStats stats;
  int depth_bound = 0;

  bool proved() const { return kind == Kind::Proved || kind == Kind::CycleFreeProved; }
};

const char* search_result_name(SearchResult::Kind k);

// Backward search over the full G3s rules with set-based loop checking along
// each branch. Terminates on every input; Unprovable certifies an exhausted
// search space.
SearchResult decide_g3s(const Sequent& s);

// Exhaustive search for a prehistoric-cycle-free proof in the minimal
// fragment (the input is desugared first). Family attribution rides on the
// root-occurrence correspondence, so accumulated prehistoric edges grow
// monotonically; the search enumerates Pareto-minimal achievable edge sets
// per attributed sequent, including all ways of weakening boxed antecedents
// out of a (=> []) premise.
SearchResult find_cycle_free_proof(const Sequent& s);

struct G3lpOptions {
  bool forbid_const_intro = false;  // drop (=> :)c, i.e. search in LP0
  int depth_bound = 64;
  AxiomChecker ax = AxiomChecker::tautology();
};

// Backward G3lp search; analytic ((=> *) instantiates its side formula from
// the subformula closure of the goal), loop-checked, depth-bounded.
SearchResult search_g3lp(const Sequent& s, const G3lpOptions& opts = {});

}  // namespace prehist

#endif
