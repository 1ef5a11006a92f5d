#include "prehist/semantics.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace prehist {

using nlohmann::json;

int KripkeModel::world_index(const std::string& name) const {
  for (int i = 0; i < int(worlds.size()); i++)
    if (worlds[size_t(i)] == name) return i;
  throw std::invalid_argument("unknown world: " + name);
}

KripkeModel KripkeModel::from_json(const std::string& text) {
  json j = json::parse(text);
  KripkeModel m;
  for (const auto& w : j.at("worlds")) m.worlds.push_back(w.get<std::string>());
  for (const auto& e : j.at("relation"))
    m.relation.emplace(m.world_index(e.at(0).get<std::string>()),
                       m.world_index(e.at(1).get<std::string>()));
  if (j.contains("valuation")) {
    for (auto it = j.at("valuation").begin(); it != j.at("valuation").end(); ++it) {
      std::set<int>& ws = m.valuation[it.key()];
      for (const auto& w : it.value()) ws.insert(m.world_index(w.get<std::string>()));
    }
  }
  return m;
}

std::string KripkeModel::to_json() const {
  json j;
  j["worlds"] = worlds;
  json rel = json::array();
  for (auto [a, b] : relation) rel.push_back({worlds[size_t(a)], worlds[size_t(b)]});
  j["relation"] = rel;
  json val;
  for (const auto& [atom, ws] : valuation) {
    json arr = json::array();
    for (int w : ws) arr.push_back(worlds[size_t(w)]);
    val[atom] = arr;
  }
  j["valuation"] = val;
  return j.dump(2);
}

bool eval(const KripkeModel& m, int world, const Formula* f) {
  if (world < 0 || world >= int(m.worlds.size())) throw std::invalid_argument("world out of range");
  switch (f->conn) {
    case Conn::Bottom:
      return false;
    case Conn::Atom: {
      auto it = m.valuation.find(f->atom);
      return it != m.valuation.end() && it->second.count(world) > 0;
    }
    case Conn::Implies:
      return !eval(m, world, f->left) || eval(m, world, f->right);
    case Conn::And:
      return eval(m, world, f->left) && eval(m, world, f->right);
    case Conn::Or:
      return eval(m, world, f->left) || eval(m, world, f->right);
    case Conn::Not:
      return !eval(m, world, f->left);
    case Conn::Box: {
      for (auto [a, b] : m.relation)
        if (a == world && !eval(m, b, f->left)) return false;
      return true;
    }
    case Conn::Diamond: {
      for (auto [a, b] : m.relation)
        if (a == world && eval(m, b, f->left)) return true;
      return false;
    }
    case Conn::Proof:
      throw std::invalid_argument("Kripke evaluation is for modal formulas");
  }
  return false;
}

bool eval(const KripkeModel& m, const std::string& world, const Formula* f) {
  return eval(m, m.world_index(world), f);
}

bool is_s4_frame(const KripkeModel& m) {
  int n = int(m.worlds.size());
  for (int i = 0; i < n; i++)
    if (!m.relation.count({i, i})) return false;
  for (auto [a, b] : m.relation)
    for (auto [c, d] : m.relation)
      if (b == c && !m.relation.count({a, d})) return false;
  return true;
}

bool sequent_valid_in(const KripkeModel& m, const Sequent& s) {
  for (int w = 0; w < int(m.worlds.size()); w++) {
    bool ant_all = true;
    for (auto* f : s.ant)
      if (!eval(m, w, f)) { ant_all = false; break; }
    if (!ant_all) continue;
    bool suc_any = false;
    for (auto* f : s.suc)
      if (eval(m, w, f)) { suc_any = true; break; }
    if (!suc_any) return false;
  }
  return true;
}

std::vector<std::set<std::pair<int, int>>> all_s4_relations(int n) {
  // free pairs = off-diagonal
  std::vector<std::pair<int, int>> free;
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++)
      if (i != j) free.emplace_back(i, j);
  std::vector<std::set<std::pair<int, int>>> out;
  for (uint32_t bits = 0; bits < (1u << free.size()); bits++) {
    std::set<std::pair<int, int>> rel;
    for (int i = 0; i < n; i++) rel.emplace(i, i);
    for (size_t k = 0; k < free.size(); k++)
      if ((bits >> k) & 1) rel.insert(free[k]);
    bool trans = true;
    for (auto [a, b] : rel) {
      for (auto [c, d] : rel)
        if (b == c && !rel.count({a, d})) { trans = false; break; }
      if (!trans) break;
    }
    if (trans) out.push_back(std::move(rel));
  }
  return out;
}

}  // namespace prehist
