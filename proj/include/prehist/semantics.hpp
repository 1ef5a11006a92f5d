#ifndef PREHIST_SEMANTICS_HPP
#define PREHIST_SEMANTICS_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "prehist/proof.hpp"

namespace prehist {

struct KripkeModel {
  std::vector<std::string> worlds;
  std::set<std::pair<int, int>> relation;              // indices into worlds
  std::map<std::string, std::set<int>> valuation;      // atom -> worlds

  int world_index(const std::string& name) const;

  static KripkeModel from_json(const std::string& text);
  std::string to_json() const;
};

// Standard clauses; box universal over successors, diamond existential.
// Unknown atoms are false everywhere (empty valuation default).
bool eval(const KripkeModel& m, int world, const Formula* f);
bool eval(const KripkeModel& m, const std::string& world, const Formula* f);

bool is_s4_frame(const KripkeModel& m);  // reflexive and transitive

// True iff /\ant -> \/suc holds at every world (empty ant = true, empty suc = false).
bool sequent_valid_in(const KripkeModel& m, const Sequent& s);

// All reflexive-transitive relations over n worlds (n small).
std::vector<std::set<std::pair<int, int>>> all_s4_relations(int n);

}  // namespace prehist

#endif
