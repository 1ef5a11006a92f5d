#ifndef PREHIST_SELFTEST_HPP
#define PREHIST_SELFTEST_HPP

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "prehist/proof.hpp"

namespace prehist {

// Embedded copies of the example fixtures (the same bytes ship in fixtures/).
const char* fixture_g3s_proof();
const char* fixture_g3s_realization();
const char* fixture_g3lp_proof();
const char* fixture_g3lp_projection();
const char* fixture_kripke();

// ---------------------------------------------------------------------------
// Random corpora (seeded, deterministic).
// ---------------------------------------------------------------------------

const Formula* random_minimal_formula(std::mt19937& rng, int depth, int atoms);
const Formula* random_modal_formula(std::mt19937& rng, int depth, int atoms);  // full language
const Formula* random_propositional_formula(std::mt19937& rng, int depth, int atoms);

// Valid G3s+Cut proofs with a cut at the root (premises found by decide_g3s).
std::vector<Proof> generate_cut_corpus(int count, uint32_t seed, int max_nodes = 12);

// Valid G3lp proofs found by search_g3lp on a battery of LP theorems.
std::vector<Proof> generate_g3lp_corpus(int count, uint32_t seed);

// Cut-free G3s proofs of random provable sequents (minimal language).
std::vector<Proof> generate_g3s_corpus(int count, uint32_t seed);

// ---------------------------------------------------------------------------
// Acceptance suite
// ---------------------------------------------------------------------------

struct CriterionResult {
  int number;
  std::string title;
  bool pass;
  std::string detail;
  double ms;
  std::vector<std::string> findings;  // reportable property violations
};

std::vector<CriterionResult> run_acceptance();

// Prints one PASS/FAIL line per criterion; returns the number of failures.
int print_acceptance(std::ostream& os);

}  // namespace prehist

#endif
