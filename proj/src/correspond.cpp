#include "prehist/correspond.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace prehist {

const std::vector<int>& SymbolTable::markers(const Formula* f) {
  static std::mutex m;
  static auto* cache = new std::unordered_map<const Formula*, std::vector<int>*>();
  {
    std::lock_guard<std::mutex> lock(m);
    auto it = cache->find(f);
    if (it != cache->end()) return *it->second;
  }
  const PositionTable& t = positions(f);
  auto* v = new std::vector<int>();
  for (int i = 0; i < int(t.paths.size()); i++) {
    Conn c = t.nodes[size_t(i)]->conn;
    if (c == Conn::Box || c == Conn::Proof) v->push_back(i);
  }
  std::lock_guard<std::mutex> lock(m);
  auto [it, inserted] = cache->emplace(f, v);
  if (!inserted) delete v;
  return *it->second;
}

int SymbolTable::sym_at(int occ, const Path& path) const {
  const OccInfo& oi = occs[size_t(occ)];
  const PositionTable& t = positions(oi.f);
  auto it = t.index_of.find(path);
  if (it == t.index_of.end()) return -1;
  const auto& mk = markers(oi.f);
  auto mit = std::lower_bound(mk.begin(), mk.end(), it->second);
  if (mit == mk.end() || *mit != it->second) return -1;
  return oi.sym_base + int(mit - mk.begin());
}

Path SymbolTable::sym_path(int sym) const {
  auto [occ, k] = syms[size_t(sym)];
  const OccInfo& oi = occs[size_t(occ)];
  return positions(oi.f).paths[size_t(markers(oi.f)[size_t(k)])];
}

const Formula* SymbolTable::sym_subformula(int sym) const {
  auto [occ, k] = syms[size_t(sym)];
  const OccInfo& oi = occs[size_t(occ)];
  return positions(oi.f).nodes[size_t(markers(oi.f)[size_t(k)])];
}

int Correspondence::find(int x) const {
  while (parent[size_t(x)] != x) {
    parent[size_t(x)] = parent[size_t(parent[size_t(x)])];
    x = parent[size_t(x)];
  }
  return x;
}

void Correspondence::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a != b) parent[size_t(std::max(a, b))] = std::min(a, b);
}

namespace {

SymbolTable build_table(const Proof& p) {
  SymbolTable t;
  for (int id = 0; id < p.size(); id++) {
    const Sequent& s = p.at(id).sequent;
    for (int side = 0; side < 2; side++) {
      const auto& v = side == 0 ? s.ant : s.suc;
      for (int i = 0; i < int(v.size()); i++) {
        int occ = int(t.occs.size());
        t.occ_id.emplace(std::make_tuple(id, side, i), occ);
        t.occs.push_back({id, side == 0 ? Side::Ant : Side::Suc, i, v[size_t(i)], t.total});
        int n = int(SymbolTable::markers(v[size_t(i)]).size());
        for (int k = 0; k < n; k++) t.syms.emplace_back(occ, k);
        t.total += n;
      }
    }
  }
  return t;
}

}  // namespace

TreeIndex index_tree(const Proof& p) {
  TreeIndex t;
  t.parent.assign(size_t(p.size()), -1);
  t.subtree.assign(size_t(p.size()), {});
  t.leaves.assign(size_t(p.size()), {});
  // preorder from root
  std::vector<int> stack{p.root};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    t.preorder.push_back(id);
    const auto& prem = p.at(id).premises;
    for (auto it = prem.rbegin(); it != prem.rend(); ++it) {
      t.parent[size_t(*it)] = id;
      stack.push_back(*it);
    }
  }
  // postorder accumulation of subtree/leaves
  for (auto it = t.preorder.rbegin(); it != t.preorder.rend(); ++it) {
    int id = *it;
    t.subtree[size_t(id)].push_back(id);
    if (p.at(id).premises.empty()) t.leaves[size_t(id)].push_back(id);
    for (int q : p.at(id).premises) {
      auto& sub = t.subtree[size_t(id)];
      sub.insert(sub.end(), t.subtree[size_t(q)].begin(), t.subtree[size_t(q)].end());
      auto& lv = t.leaves[size_t(id)];
      lv.insert(lv.end(), t.leaves[size_t(q)].begin(), t.leaves[size_t(q)].end());
    }
  }
  return t;
}

Correspondence build_correspondence(const Proof& p, CalculusVariant v, const AxiomChecker& ax) {
  Correspondence c;
  c.table = build_table(p);
  c.parent.resize(size_t(c.table.total));
  for (int i = 0; i < c.table.total; i++) c.parent[size_t(i)] = i;

  for (int id = 0; id < p.size(); id++) {
    const ProofNode& n = p.at(id);
    std::vector<const Sequent*> prem;
    for (int q : n.premises) prem.push_back(&p.at(q).sequent);
    RuleMatch m = match_rule(n.rule, n.sequent, n.principal, prem, ax);
    if (!m.ok)
      throw std::invalid_argument("correspondence on invalid proof, node " + std::to_string(id) +
                                  ": " + m.error);
    auto resolve_occ = [&](const LocRef& l) {
      int node = l.premise < 0 ? id : n.premises[size_t(l.premise)];
      return c.table.occ_of(node, l.occ.side, l.occ.index);
    };
    for (const SymLink& link : m.links) {
      int ao = resolve_occ(link.a);
      int bo = resolve_occ(link.b);
      if (link.kind == SymLink::Single) {
        int sa = c.table.sym_at(ao, link.a_prefix);
        int sb = c.table.sym_at(bo, link.b_prefix);
        if (sa < 0 || sb < 0)
          throw std::logic_error("single link does not land on tracked symbols");
        c.unite(sa, sb);
        continue;
      }
      // Subtree: every marker position under a_prefix maps to b_prefix.q
      const Formula* af = c.table.occs[size_t(ao)].f;
      const PositionTable& at = positions(af);
      for (int mi : SymbolTable::markers(af)) {
        const Path& pa = at.paths[size_t(mi)];
        if (pa.size() < link.a_prefix.size()) continue;
        if (!std::equal(link.a_prefix.begin(), link.a_prefix.end(), pa.begin())) continue;
        Path q(pa.begin() + long(link.a_prefix.size()), pa.end());
        Path pb = link.b_prefix;
        pb.insert(pb.end(), q.begin(), q.end());
        int sa = c.table.sym_at(ao, pa);
        int sb = c.table.sym_at(bo, pb);
        if (sa < 0 || sb < 0)
          throw std::logic_error("subtree link misaligned at path");
        c.unite(sa, sb);
      }
    }
  }
  c.enumerate_classes(p);
  return c;
}

void Correspondence::enumerate_classes(const Proof& p) {
  class_of_sym.assign(size_t(table.total), -1);
  class_rep.clear();
  class_count = 0;
  TreeIndex t = index_tree(p);
  for (int id : t.preorder) {
    const Sequent& s = p.at(id).sequent;
    for (int side = 0; side < 2; side++) {
      const auto& v = side == 0 ? s.ant : s.suc;
      for (int i = 0; i < int(v.size()); i++) {
        int occ = table.occ_of(id, side == 0 ? Side::Ant : Side::Suc, i);
        int base = table.occs[size_t(occ)].sym_base;
        int n = int(SymbolTable::markers(v[size_t(i)]).size());
        for (int k = 0; k < n; k++) {
          int root = find(base + k);
          if (class_of_sym[size_t(root)] < 0) {
            class_of_sym[size_t(root)] = class_count++;
            class_rep.push_back(base + k);
          }
        }
      }
    }
  }
  // spread to all syms
  for (int sTot = 0; sTot < table.total; sTot++)
    class_of_sym[size_t(sTot)] = class_of_sym[size_t(find(sTot))];
}

std::vector<int> root_occurrences_of_class(const Proof& p, const Correspondence& c, int cls) {
  std::vector<int> out;
  const Sequent& s = p.endsequent();
  for (int side = 0; side < 2; side++) {
    const auto& v = side == 0 ? s.ant : s.suc;
    for (int i = 0; i < int(v.size()); i++) {
      int occ = c.table.occ_of(p.root, side == 0 ? Side::Ant : Side::Suc, i);
      int base = c.table.occs[size_t(occ)].sym_base;
      int n = int(SymbolTable::markers(v[size_t(i)]).size());
      for (int k = 0; k < n; k++)
        if (c.class_of_sym[size_t(base + k)] == cls) out.push_back(base + k);
    }
  }
  return out;
}

int trace_to_root(const Proof& p, const Correspondence& c, int sym) {
  int cls = c.class_of_sym[size_t(sym)];
  std::vector<int> roots = root_occurrences_of_class(p, c, cls);
  if (roots.size() != 1)
    throw std::runtime_error("subformula property violation: class has " +
                             std::to_string(roots.size()) + " root occurrences");
  return roots[0];
}

}  // namespace prehist
