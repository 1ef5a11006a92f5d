#include "prehist/prover.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "prehist/transforms.hpp"

namespace prehist {

const char* search_result_name(SearchResult::Kind k) {
  switch (k) {
    case SearchResult::Kind::Proved: return "proved";
    case SearchResult::Kind::Unprovable: return "unprovable";
    case SearchResult::Kind::CycleFreeProved: return "cycle-free-proved";
    case SearchResult::Kind::NoCycleFreeProof: return "no-cycle-free-proof";
    case SearchResult::Kind::BoundExceeded: return "bound-exceeded";
  }
  return "?";
}

namespace {

// ---------------------------------------------------------------------------
// Set sequents: sorted unique formula lists, ordered by intern id.
// ---------------------------------------------------------------------------

struct IdLess {
  bool operator()(const Formula* a, const Formula* b) const { return a->id < b->id; }
};

using FSet = std::vector<const Formula*>;  // sorted by id, unique

FSet to_set(const std::vector<const Formula*>& v) {
  FSet s = v;
  std::sort(s.begin(), s.end(), IdLess{});
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

bool contains(const FSet& s, const Formula* f) {
  return std::binary_search(s.begin(), s.end(), f, IdLess{});
}

FSet with(FSet s, const Formula* f) {
  auto it = std::lower_bound(s.begin(), s.end(), f, IdLess{});
  if (it == s.end() || *it != f) s.insert(it, f);
  return s;
}

FSet without(FSet s, const Formula* f) {
  auto it = std::lower_bound(s.begin(), s.end(), f, IdLess{});
  if (it != s.end() && *it == f) s.erase(it);
  return s;
}


// multiset variants used to state exact rule premises (the searched state
// stays set-based; emit() weakens children up to these)
FSet madd(FSet s, const Formula* f) {
  s.push_back(f);
  return s;
}
FSet mrm(FSet s, const Formula* f) {
  auto it = std::find(s.begin(), s.end(), f);
  if (it != s.end()) s.erase(it);
  return s;
}

struct SetSeq {
  FSet ant, suc;
  bool operator<(const SetSeq& o) const {
    if (ant != o.ant) return ant < o.ant;
    return suc < o.suc;
  }
  bool operator==(const SetSeq& o) const { return ant == o.ant && suc == o.suc; }
};

Sequent as_sequent(const SetSeq& s) { return Sequent{s.ant, s.suc}; }

std::optional<Rule> set_axiom(const SetSeq& s) {
  for (auto* f : s.ant)
    if (f->conn == Conn::Bottom) return Rule::BotL;
  for (auto* f : s.suc)
    if (f->is_atom() && contains(s.ant, f)) return Rule::Ax;
  return std::nullopt;
}

// Emit a rule node whose premise multiset may contain formulas the child's
// set sequent absorbed; the child is weakened to the exact multiset.
Proof emit(Rule rule, const SetSeq& concl, PrincipalRef pr, std::vector<Sequent> premises,
           std::vector<Proof> children) {
  Proof out;
  std::vector<int> ids;
  for (size_t k = 0; k < premises.size(); k++) {
    Proof child = std::move(children[k]);
    // weaken in whatever the set representation dropped
    std::map<const Formula*, int> have, want;
    for (auto* f : child.endsequent().ant) have[f]++;
    for (auto* f : premises[k].ant) want[f]++;
    for (auto& [f, w] : want)
      for (int i = have[f]; i < w; i++) child = weaken(child, f, Side::Ant);
    have.clear();
    want.clear();
    for (auto* f : child.endsequent().suc) have[f]++;
    for (auto* f : premises[k].suc) want[f]++;
    for (auto& [f, w] : want)
      for (int i = have[f]; i < w; i++) child = weaken(child, f, Side::Suc);
    ids.push_back(graft(out, reorder_root(child, premises[k])));
  }
  out.root = add_node(out, rule, as_sequent(concl), pr, std::move(ids));
  return out;
}

int index_of(const FSet& s, const Formula* f) {
  auto it = std::lower_bound(s.begin(), s.end(), f, IdLess{});
  return int(it - s.begin());
}

PrincipalRef occ_ref(Side side, int index) {
  PrincipalRef pr;
  pr.has_occ = true;
  pr.side = side;
  pr.index = index;
  return pr;
}

// ---------------------------------------------------------------------------
// decide_g3s
// ---------------------------------------------------------------------------

struct G3sSearch {
  SearchStats stats;
  std::set<SetSeq> path;
  std::map<SetSeq, Proof> memo;  // successes only

  std::optional<Proof> prove(const SetSeq& s) {
    if (auto r = set_axiom(s)) {
      Proof out;
      out.root = add_node(out, *r, as_sequent(s), {}, {});
      return out;
    }
    auto mit = memo.find(s);
    if (mit != memo.end()) return mit->second;
    if (path.count(s)) {
      stats.loop_hits++;
      return std::nullopt;
    }
    path.insert(s);
    stats.expanded++;
    std::optional<Proof> result = step(s);
    path.erase(s);
    if (result) memo.emplace(s, *result);
    return result;
  }

  std::optional<Proof> attempt1(const SetSeq& s, Rule rule, PrincipalRef pr, const Sequent& prem) {
    SetSeq ps{to_set(prem.ant), to_set(prem.suc)};
    auto sub = prove(ps);
    if (!sub) return std::nullopt;
    return emit(rule, s, pr, {prem}, {std::move(*sub)});
  }

  std::optional<Proof> attempt2(const SetSeq& s, Rule rule, PrincipalRef pr, const Sequent& p0,
                                const Sequent& p1) {
    SetSeq q0{to_set(p0.ant), to_set(p0.suc)};
    auto s0 = prove(q0);
    if (!s0) return std::nullopt;
    SetSeq q1{to_set(p1.ant), to_set(p1.suc)};
    auto s1 = prove(q1);
    if (!s1) return std::nullopt;
    return emit(rule, s, pr, {p0, p1}, {std::move(*s0), std::move(*s1)});
  }

  // Propositional rules consume a connective, so the first applicable one is
  // committed (they are invertible). The expansions ([] =>)/(=> <>) and the
  // jumps (=> [])/(<> =>) are backtrackable choice points: an expansion can
  // loop through decomposition and re-unfolding, and only the loop check plus
  // backtracking to a jump resolves that.
  std::optional<Proof> step(const SetSeq& s) {
    // committed propositional rules
    for (int i = 0; i < int(s.ant.size()); i++) {
      const Formula* f = s.ant[size_t(i)];
      if (f->conn == Conn::Not)
        return attempt1(s, Rule::NotL, occ_ref(Side::Ant, i),
                        Sequent{mrm(s.ant, f), madd(s.suc, f->left)});
      if (f->conn == Conn::And) {
        FSet ant = madd(madd(mrm(s.ant, f), f->left), f->right);
        return attempt1(s, Rule::AndL, occ_ref(Side::Ant, i), Sequent{ant, s.suc});
      }
    }
    for (int i = 0; i < int(s.suc.size()); i++) {
      const Formula* f = s.suc[size_t(i)];
      if (f->conn == Conn::Not)
        return attempt1(s, Rule::NotR, occ_ref(Side::Suc, i),
                        Sequent{madd(s.ant, f->left), mrm(s.suc, f)});
      if (f->conn == Conn::Or) {
        FSet suc = madd(madd(mrm(s.suc, f), f->left), f->right);
        return attempt1(s, Rule::OrR, occ_ref(Side::Suc, i), Sequent{s.ant, suc});
      }
      if (f->conn == Conn::Implies)
        return attempt1(s, Rule::ImpR, occ_ref(Side::Suc, i),
                        Sequent{madd(s.ant, f->left), madd(mrm(s.suc, f), f->right)});
    }
    for (int i = 0; i < int(s.suc.size()); i++) {
      const Formula* f = s.suc[size_t(i)];
      if (f->conn == Conn::And)
        return attempt2(s, Rule::AndR, occ_ref(Side::Suc, i),
                        Sequent{s.ant, madd(mrm(s.suc, f), f->left)},
                        Sequent{s.ant, madd(mrm(s.suc, f), f->right)});
    }
    for (int i = 0; i < int(s.ant.size()); i++) {
      const Formula* f = s.ant[size_t(i)];
      if (f->conn == Conn::Or)
        return attempt2(s, Rule::OrL, occ_ref(Side::Ant, i),
                        Sequent{madd(mrm(s.ant, f), f->left), s.suc},
                        Sequent{madd(mrm(s.ant, f), f->right), s.suc});
      if (f->conn == Conn::Implies)
        return attempt2(s, Rule::ImpL, occ_ref(Side::Ant, i),
                        Sequent{mrm(s.ant, f), madd(s.suc, f->left)},
                        Sequent{madd(mrm(s.ant, f), f->right), s.suc});
    }
    // choice points: expansions first, then modal jumps
    for (int i = 0; i < int(s.ant.size()); i++) {
      const Formula* f = s.ant[size_t(i)];
      if (f->conn == Conn::Box && !contains(s.ant, f->left))
        if (auto r = attempt1(s, Rule::BoxL, occ_ref(Side::Ant, i),
                              Sequent{madd(s.ant, f->left), s.suc}))
          return r;
    }
    for (int i = 0; i < int(s.suc.size()); i++) {
      const Formula* f = s.suc[size_t(i)];
      if (f->conn == Conn::Diamond && !contains(s.suc, f->left))
        if (auto r = attempt1(s, Rule::DiaR, occ_ref(Side::Suc, i),
                              Sequent{s.ant, madd(s.suc, f->left)}))
          return r;
    }
    FSet boxed, diamonds;
    for (auto* f : s.ant)
      if (f->conn == Conn::Box) boxed.push_back(f);
    for (auto* f : s.suc)
      if (f->conn == Conn::Diamond) diamonds.push_back(f);
    for (int i = 0; i < int(s.suc.size()); i++) {
      const Formula* f = s.suc[size_t(i)];
      if (f->conn != Conn::Box) continue;
      Sequent prem{boxed, madd(diamonds, f->left)};
      if (auto r = attempt1(s, Rule::BoxR, occ_ref(Side::Suc, i), prem)) return r;
    }
    for (int i = 0; i < int(s.ant.size()); i++) {
      const Formula* f = s.ant[size_t(i)];
      if (f->conn != Conn::Diamond) continue;
      Sequent prem{madd(boxed, f->left), diamonds};
      if (auto r = attempt1(s, Rule::DiaL, occ_ref(Side::Ant, i), prem)) return r;
    }
    return std::nullopt;
  }
};

}  // namespace

SearchResult decide_g3s(const Sequent& s) {
  for (const auto& v : {s.ant, s.suc})
    for (auto* f : v)
      if (!is_modal(f)) throw std::invalid_argument("decide_g3s expects a modal sequent");
  G3sSearch search;
  SetSeq root{to_set(s.ant), to_set(s.suc)};
  auto proof = search.prove(root);
  SearchResult r;
  r.stats = search.stats;
  if (!proof) {
    r.kind = SearchResult::Kind::Unprovable;
    return r;
  }
  // restore the exact input multiset
  Proof p = *proof;
  std::map<const Formula*, int> have, want;
  for (auto* f : p.endsequent().ant) have[f]++;
  for (auto* f : s.ant) want[f]++;
  for (auto& [f, w] : want)
    for (int i = have[f]; i < w; i++) p = weaken(p, f, Side::Ant);
  have.clear();
  want.clear();
  for (auto* f : p.endsequent().suc) have[f]++;
  for (auto* f : s.suc) want[f]++;
  for (auto& [f, w] : want)
    for (int i = have[f]; i < w; i++) p = weaken(p, f, Side::Suc);
  r.kind = SearchResult::Kind::Proved;
  r.proof = reorder_root(p, s);
  return r;
}

// ---------------------------------------------------------------------------
// find_cycle_free_proof
// ---------------------------------------------------------------------------

namespace {

// Attributed formulas: every occurrence in the search is a subformula
// occurrence of the root sequent, addressed by (root occurrence, path).
struct AttTable {
  struct Node {
    const Formula* f;
    int left = -1, right = -1;
    bool is_box = false;
    std::vector<int> boxes_within;  // att ids of box positions in this subtree
  };
  std::vector<Node> nodes;
  std::vector<int> root_ant, root_suc;  // att ids of the root occurrences

  int add(const Formula* f) {
    int id = int(nodes.size());
    nodes.push_back({f, -1, -1, f->conn == Conn::Box, {}});
    if (f->left) nodes[size_t(id)].left = add(f->left);
    if (f->right) nodes[size_t(id)].right = add(f->right);
    auto& n = nodes[size_t(id)];
    if (n.is_box) nodes[size_t(id)].boxes_within.push_back(id);
    if (n.left >= 0) {
      auto& l = nodes[size_t(nodes[size_t(id)].left)].boxes_within;
      nodes[size_t(id)].boxes_within.insert(nodes[size_t(id)].boxes_within.end(), l.begin(), l.end());
    }
    if (nodes[size_t(id)].right >= 0) {
      auto& r = nodes[size_t(nodes[size_t(id)].right)].boxes_within;
      nodes[size_t(id)].boxes_within.insert(nodes[size_t(id)].boxes_within.end(), r.begin(), r.end());
    }
    return id;
  }
};

using AttSet = std::vector<int>;  // sorted unique att ids

AttSet att_with(AttSet s, int x) {
  auto it = std::lower_bound(s.begin(), s.end(), x);
  if (it == s.end() || *it != x) s.insert(it, x);
  return s;
}
AttSet att_without(AttSet s, int x) {
  auto it = std::lower_bound(s.begin(), s.end(), x);
  if (it != s.end() && *it == x) s.erase(it);
  return s;
}
bool att_contains(const AttSet& s, int x) { return std::binary_search(s.begin(), s.end(), x); }

struct AttSeq {
  AttSet ant, suc;
  bool operator<(const AttSeq& o) const {
    if (ant != o.ant) return ant < o.ant;
    return suc < o.suc;
  }
};

using EdgeSet = std::set<std::pair<int, int>>;  // family att -> family att

bool acyclic(const EdgeSet& es) {
  std::map<int, std::vector<int>> adj;
  std::set<int> verts;
  for (auto [a, b] : es) {
    adj[a].push_back(b);
    verts.insert(a);
    verts.insert(b);
  }
  std::map<int, int> state;  // 0 new, 1 open, 2 done
  std::function<bool(int)> dfs = [&](int v) -> bool {
    state[v] = 1;
    for (int w : adj[v]) {
      if (state[w] == 1) return false;
      if (state[w] == 0 && !dfs(w)) return false;
    }
    state[v] = 2;
    return true;
  };
  for (int v : verts)
    if (state[v] == 0 && !dfs(v)) return false;
  return true;
}

// Pareto-minimal antichain of edge sets.
struct MinSets {
  std::vector<EdgeSet> sets;
  void insert(EdgeSet e) {
    for (const auto& s : sets)
      if (std::includes(e.begin(), e.end(), s.begin(), s.end())) return;  // dominated
    sets.erase(std::remove_if(sets.begin(), sets.end(),
                              [&](const EdgeSet& s) {
                                return std::includes(s.begin(), s.end(), e.begin(), e.end());
                              }),
               sets.end());
    sets.push_back(std::move(e));
  }
  void merge(const MinSets& o) {
    for (const auto& s : o.sets) insert(s);
  }
};

// The achievable prehistoric-edge sets of an attributed sequent are computed
// as a least fixed point over the reachable state space (bottom-up), which
// keeps the result independent of any search path. Every antichain insertion
// is logged with its justification, so proofs are reconstructed by walking
// strictly earlier log entries.
struct CycleFreeSearch {
  AttTable att;
  SearchStats stats;

  struct Instance {
    Rule rule;
    int att_id;                // principal att id
    std::vector<int> premises;  // state ids
    EdgeSet edges;              // contributed by this instance ((=> []) only)
  };

  struct State {
    AttSeq seq;
    bool is_axiom = false;
    Rule axiom_rule = Rule::Ax;
    std::vector<Instance> instances;
    MinSets sets;
  };

  std::map<AttSeq, int> state_id;
  std::vector<State> states;

  struct LogEntry {
    int state;
    EdgeSet set;
    int instance;                     // index into state's instances, -1 axiom
    std::vector<EdgeSet> premise_sets;
  };
  std::vector<LogEntry> log;

  const Formula* fml(int a) const { return att.nodes[size_t(a)].f; }

  std::optional<Rule> att_axiom(const AttSeq& s) const {
    for (int a : s.ant)
      if (fml(a)->conn == Conn::Bottom) return Rule::BotL;
    for (int b : s.suc) {
      if (!fml(b)->is_atom()) continue;
      for (int a : s.ant)
        if (fml(a) == fml(b)) return Rule::Ax;
    }
    return std::nullopt;
  }

  // The implication rules consume a connective and are committed; box
  // unfoldings can cycle through decomposition and stay choice points.
  std::optional<Instance> invertible_step(const AttSeq& s) {
    for (int a : s.suc) {
      if (fml(a)->conn == Conn::Implies) {
        AttSeq p{att_with(s.ant, att.nodes[size_t(a)].left),
                 att_with(att_without(s.suc, a), att.nodes[size_t(a)].right)};
        return Instance{Rule::ImpR, a, {intern(p)}, {}};
      }
    }
    for (int a : s.ant) {
      if (fml(a)->conn == Conn::Implies) {
        AttSeq p0{att_without(s.ant, a), att_with(s.suc, att.nodes[size_t(a)].left)};
        AttSeq p1{att_with(att_without(s.ant, a), att.nodes[size_t(a)].right), s.suc};
        return Instance{Rule::ImpL, a, {intern(p0), intern(p1)}, {}};
      }
    }
    return std::nullopt;
  }

  std::vector<Instance> boxl_instances(const AttSeq& s) {
    std::vector<Instance> out;
    for (int a : s.ant) {
      if (fml(a)->conn == Conn::Box && !att_contains(s.ant, att.nodes[size_t(a)].left)) {
        AttSeq p{att_with(s.ant, att.nodes[size_t(a)].left), s.suc};
        out.push_back(Instance{Rule::BoxL, a, {intern(p)}, {}});
      }
    }
    return out;
  }

  std::vector<Instance> box_instances(const AttSeq& s) {
    std::vector<Instance> out;
    AttSet boxed;
    for (int a : s.ant)
      if (fml(a)->conn == Conn::Box) boxed.push_back(a);
    for (int b : s.suc) {
      if (fml(b)->conn != Conn::Box) continue;
      int body = att.nodes[size_t(b)].left;
      // every subset of the boxed antecedent may be kept; the rest is weakened
      int n = int(boxed.size());
      if (n > 16) throw std::runtime_error("cycle-free search: too many boxed antecedents");
      for (uint32_t bits = 0; bits < (1u << n); bits++) {
        AttSet keep;
        for (int k = 0; k < n; k++)
          if ((bits >> k) & 1) keep.push_back(boxed[size_t(k)]);
        AttSeq prem{keep, {body}};
        EdgeSet edges;
        for (int a : keep)
          for (int fam : att.nodes[size_t(a)].boxes_within) edges.emplace(fam, b);
        for (int fam : att.nodes[size_t(body)].boxes_within) edges.emplace(fam, b);
        out.push_back(Instance{Rule::BoxR, b, {intern(prem)}, std::move(edges)});
      }
    }
    return out;
  }

  int intern(const AttSeq& s) {
    auto it = state_id.find(s);
    if (it != state_id.end()) return it->second;
    int id = int(states.size());
    state_id.emplace(s, id);
    states.push_back(State{s, false, Rule::Ax, {}, {}});
    if (states.size() > 2'000'000) throw std::runtime_error("cycle-free search state limit");
    // expand
    if (auto ax = att_axiom(s)) {
      states[size_t(id)].is_axiom = true;
      states[size_t(id)].axiom_rule = *ax;
    } else if (auto inst = invertible_step(s)) {
      states[size_t(id)].instances.push_back(std::move(*inst));
    } else {
      std::vector<Instance> choices = boxl_instances(s);
      std::vector<Instance> jumps = box_instances(s);
      choices.insert(choices.end(), jumps.begin(), jumps.end());
      states[size_t(id)].instances = std::move(choices);
    }
    stats.expanded++;
    return id;
  }

  void fixpoint() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int id = 0; id < int(states.size()); id++) {
        State& st = states[size_t(id)];
        if (st.is_axiom) {
          if (st.sets.sets.empty()) {
            st.sets.insert({});
            log.push_back(LogEntry{id, {}, -1, {}});
            changed = true;
          }
          continue;
        }
        for (int ii = 0; ii < int(st.instances.size()); ii++) {
          const Instance inst = st.instances[size_t(ii)];
          // cartesian combination of the premise antichains
          std::vector<std::pair<EdgeSet, std::vector<EdgeSet>>> combos{{inst.edges, {}}};
          for (int q : inst.premises) {
            std::vector<std::pair<EdgeSet, std::vector<EdgeSet>>> next;
            for (const auto& [acc, parts] : combos)
              for (const EdgeSet& e : states[size_t(q)].sets.sets) {
                EdgeSet u = acc;
                u.insert(e.begin(), e.end());
                auto np = parts;
                np.push_back(e);
                next.emplace_back(std::move(u), std::move(np));
              }
            combos = std::move(next);
          }
          for (auto& [u, parts] : combos) {
            size_t before = states[size_t(id)].sets.sets.size();
            bool dominated = false;
            for (const auto& have : states[size_t(id)].sets.sets)
              if (std::includes(u.begin(), u.end(), have.begin(), have.end())) {
                dominated = true;
                break;
              }
            if (dominated) continue;
            states[size_t(id)].sets.insert(u);
            log.push_back(LogEntry{id, u, ii, parts});
            changed = true;
            (void)before;
          }
        }
      }
    }
  }

  Sequent concrete(const AttSeq& s) const {
    Sequent out;
    for (int a : s.ant) out.ant.push_back(fml(a));
    for (int b : s.suc) out.suc.push_back(fml(b));
    return out;
  }

  // Walk the log: the entry for (state, budget) with the smallest index is
  // justified by strictly earlier entries, so the recursion is well-founded.
  Proof reconstruct(int state, const EdgeSet& budget) {
    const LogEntry* chosen = nullptr;
    for (const LogEntry& e : log) {
      if (e.state != state) continue;
      if (std::includes(budget.begin(), budget.end(), e.set.begin(), e.set.end())) {
        chosen = &e;
        break;
      }
    }
    if (!chosen) throw std::logic_error("cycle-free reconstruction: no log entry fits the budget");
    const State& st = states[size_t(state)];
    if (chosen->instance < 0) {
      Proof out;
      out.root = add_node(out, st.axiom_rule, concrete(st.seq), {}, {});
      return out;
    }
    const Instance& inst = st.instances[size_t(chosen->instance)];
    std::vector<Sequent> prem;
    std::vector<Proof> children;
    for (size_t k = 0; k < inst.premises.size(); k++) {
      prem.push_back(concrete(states[size_t(inst.premises[k])].seq));
      children.push_back(reconstruct(inst.premises[k], chosen->premise_sets[k]));
    }
    Side side = inst.rule == Rule::ImpL || inst.rule == Rule::BoxL ? Side::Ant : Side::Suc;
    const AttSet& v = side == Side::Ant ? st.seq.ant : st.seq.suc;
    int index = int(std::lower_bound(v.begin(), v.end(), inst.att_id) - v.begin());
    SetSeq concl;
    for (int a : st.seq.ant) concl.ant.push_back(fml(a));
    for (int b : st.seq.suc) concl.suc.push_back(fml(b));
    return emit(inst.rule, concl, occ_ref(side, index), std::move(prem), std::move(children));
  }
};

}  // namespace

SearchResult find_cycle_free_proof(const Sequent& input) {
  Sequent s = desugar(input);
  for (const auto& v : {s.ant, s.suc})
    for (auto* f : v)
      if (!is_minimal(f)) throw std::invalid_argument("cycle-free search needs the minimal language");
  CycleFreeSearch cs;
  AttSeq root;
  for (auto* f : s.ant) root.ant.push_back(cs.att.add(f));
  for (auto* f : s.suc) root.suc.push_back(cs.att.add(f));
  std::sort(root.ant.begin(), root.ant.end());
  std::sort(root.suc.begin(), root.suc.end());
  int root_id = cs.intern(root);
  cs.fixpoint();
  SearchResult r;
  r.stats = cs.stats;
  for (const EdgeSet& e : cs.states[size_t(root_id)].sets.sets) {
    if (!acyclic(e)) continue;
    Proof p = cs.reconstruct(root_id, e);
    r.kind = SearchResult::Kind::CycleFreeProved;
    r.proof = reorder_root(p, s);
    return r;
  }
  r.kind = SearchResult::Kind::NoCycleFreeProof;
  return r;
}

// ---------------------------------------------------------------------------
// search_g3lp
// ---------------------------------------------------------------------------

namespace {

struct G3lpSearch {
  G3lpOptions opts;
  SearchStats stats;
  std::set<SetSeq> path;
  std::map<SetSeq, Proof> memo;
  std::set<const Formula*> closure;  // lp subformulas of the goal
  bool bound_hit = false;

  std::optional<Proof> prove(const SetSeq& s, int depth) {
    if (auto r = set_axiom(s)) {
      Proof out;
      out.root = add_node(out, *r, as_sequent(s), {}, {});
      return out;
    }
    auto mit = memo.find(s);
    if (mit != memo.end()) return mit->second;
    if (depth >= opts.depth_bound) {
      bound_hit = true;
      return std::nullopt;
    }
    if (path.count(s)) {
      stats.loop_hits++;
      return std::nullopt;
    }
    path.insert(s);
    stats.expanded++;
    auto result = step(s, depth);
    path.erase(s);
    if (result) memo.emplace(s, *result);
    return result;
  }

  std::optional<Proof> attempt1(const SetSeq& s, Rule rule, PrincipalRef pr, const Sequent& prem,
                                int depth) {
    SetSeq ps{to_set(prem.ant), to_set(prem.suc)};
    auto sub = prove(ps, depth + 1);
    if (!sub) return std::nullopt;
    return emit(rule, s, pr, {prem}, {std::move(*sub)});
  }

  std::optional<Proof> attempt2(const SetSeq& s, Rule rule, PrincipalRef pr, const Sequent& p0,
                                const Sequent& p1, int depth) {
    SetSeq q0{to_set(p0.ant), to_set(p0.suc)};
    auto s0 = prove(q0, depth + 1);
    if (!s0) return std::nullopt;
    SetSeq q1{to_set(p1.ant), to_set(p1.suc)};
    auto s1 = prove(q1, depth + 1);
    if (!s1) return std::nullopt;
    return emit(rule, s, pr, {p0, p1}, {std::move(*s0), std::move(*s1)});
  }

  std::optional<Proof> step(const SetSeq& s, int depth) {
    // committed propositional rules
    for (int i = 0; i < int(s.ant.size()); i++) {
      const Formula* f = s.ant[size_t(i)];
      if (f->conn == Conn::Not)
        return attempt1(s, Rule::NotL, occ_ref(Side::Ant, i),
                        Sequent{mrm(s.ant, f), madd(s.suc, f->left)}, depth);
      if (f->conn == Conn::And) {
        FSet ant = madd(madd(mrm(s.ant, f), f->left), f->right);
        return attempt1(s, Rule::AndL, occ_ref(Side::Ant, i), Sequent{ant, s.suc}, depth);
      }
    }
    for (int i = 0; i < int(s.suc.size()); i++) {
      const Formula* f = s.suc[size_t(i)];
      if (f->conn == Conn::Not)
        return attempt1(s, Rule::NotR, occ_ref(Side::Suc, i),
                        Sequent{madd(s.ant, f->left), mrm(s.suc, f)}, depth);
      if (f->conn == Conn::Or) {
        FSet suc = madd(madd(mrm(s.suc, f), f->left), f->right);
        return attempt1(s, Rule::OrR, occ_ref(Side::Suc, i), Sequent{s.ant, suc}, depth);
      }
      if (f->conn == Conn::Implies)
        return attempt1(s, Rule::ImpR, occ_ref(Side::Suc, i),
                        Sequent{madd(s.ant, f->left), madd(mrm(s.suc, f), f->right)}, depth);
    }
    for (int i = 0; i < int(s.suc.size()); i++) {
      const Formula* f = s.suc[size_t(i)];
      if (f->conn == Conn::And)
        return attempt2(s, Rule::AndR, occ_ref(Side::Suc, i),
                        Sequent{s.ant, madd(mrm(s.suc, f), f->left)},
                        Sequent{s.ant, madd(mrm(s.suc, f), f->right)}, depth);
    }
    for (int i = 0; i < int(s.ant.size()); i++) {
      const Formula* f = s.ant[size_t(i)];
      if (f->conn == Conn::Or)
        return attempt2(s, Rule::OrL, occ_ref(Side::Ant, i),
                        Sequent{madd(mrm(s.ant, f), f->left), s.suc},
                        Sequent{madd(mrm(s.ant, f), f->right), s.suc}, depth);
      if (f->conn == Conn::Implies)
        return attempt2(s, Rule::ImpL, occ_ref(Side::Ant, i),
                        Sequent{mrm(s.ant, f), madd(s.suc, f->left)},
                        Sequent{madd(mrm(s.ant, f), f->right), s.suc}, depth);
    }
    // choice points: unfolding expansions first, then the (=> :) rules
    for (int i = 0; i < int(s.ant.size()); i++) {
      const Formula* f = s.ant[size_t(i)];
      if (f->conn == Conn::Proof && !contains(s.ant, f->left))
        if (auto r = attempt1(s, Rule::ColonL, occ_ref(Side::Ant, i),
                              Sequent{madd(s.ant, f->left), s.suc}, depth))
          return r;
    }
    for (int i = 0; i < int(s.suc.size()); i++) {
      const Formula* f = s.suc[size_t(i)];
      if (f->conn == Conn::Proof && f->term->op == TermOp::Bang &&
          f->left->conn == Conn::Proof && f->left->term == f->term->left &&
          !contains(s.suc, f->left))
        if (auto r = attempt1(s, Rule::BangR, occ_ref(Side::Suc, i),
                              Sequent{s.ant, madd(s.suc, f->left)}, depth))
          return r;
      if (f->conn == Conn::Proof && f->term->op == TermOp::Sum) {
        const Formula* sA = mk_proof(f->term->left, f->left);
        const Formula* tA = mk_proof(f->term->right, f->left);
        if (!contains(s.suc, sA) || !contains(s.suc, tA))
          if (auto r = attempt1(s, Rule::PlusR, occ_ref(Side::Suc, i),
                                Sequent{s.ant, madd(madd(s.suc, sA), tA)}, depth))
            return r;
      }
    }
    for (int i = 0; i < int(s.suc.size()); i++) {
      const Formula* f = s.suc[size_t(i)];
      if (f->conn == Conn::Proof && contains(s.ant, f)) {
        Sequent prem{{f}, {f->left}};
        if (auto r = attempt1(s, Rule::ColonRt, occ_ref(Side::Suc, i), prem, depth)) return r;
      }
    }
    if (!opts.forbid_const_intro) {
      for (int i = 0; i < int(s.suc.size()); i++) {
        const Formula* f = s.suc[size_t(i)];
        if (f->conn == Conn::Proof && f->term->op == TermOp::Const && opts.ax.is_lp_axiom(f->left)) {
          Sequent prem{{}, {f->left}};
          if (auto r = attempt1(s, Rule::ColonRc, occ_ref(Side::Suc, i), prem, depth)) return r;
        }
      }
    }
    for (int i = 0; i < int(s.suc.size()); i++) {
      const Formula* f = s.suc[size_t(i)];
      if (f->conn != Conn::Proof || f->term->op != TermOp::App) continue;
      const Term* ts = f->term->left;
      const Term* tt = f->term->right;
      const Formula* B = f->left;
      std::vector<const Formula*> candidates;
      for (auto* g : closure) {
        if (g->conn == Conn::Proof && g->term == tt) candidates.push_back(g->left);
        if (g->conn == Conn::Proof && g->term == ts && g->left->conn == Conn::Implies &&
            g->left->right == B)
          candidates.push_back(g->left->left);
      }
      std::sort(candidates.begin(), candidates.end(), IdLess{});
      candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
      for (const Formula* A : candidates) {
        Sequent p0{s.ant, madd(s.suc, mk_proof(ts, mk_implies(A, B)))};
        Sequent p1{s.ant, madd(s.suc, mk_proof(tt, A))};
        if (auto r = attempt2(s, Rule::DotR, occ_ref(Side::Suc, i), p0, p1, depth)) return r;
      }
    }
    return std::nullopt;
  }
};

}  // namespace

SearchResult search_g3lp(const Sequent& s, const G3lpOptions& opts) {
  for (const auto& v : {s.ant, s.suc})
    for (auto* f : v)
      if (!is_lp(f)) throw std::invalid_argument("search_g3lp expects an LP sequent");
  G3lpSearch search;
  search.opts = opts;
  for (const auto& v : {s.ant, s.suc})
    for (auto* f : v) {
      auto sub = lp_subformulas(f);
      search.closure.insert(sub.begin(), sub.end());
    }
  SetSeq root{to_set(s.ant), to_set(s.suc)};
  auto proof = search.prove(root, 0);
  SearchResult r;
  r.stats = search.stats;
  r.depth_bound = opts.depth_bound;
  if (!proof) {
    r.kind = search.bound_hit ? SearchResult::Kind::BoundExceeded : SearchResult::Kind::Unprovable;
    return r;
  }
  Proof p = *proof;
  std::map<const Formula*, int> have, want;
  for (auto* f : p.endsequent().ant) have[f]++;
  for (auto* f : s.ant) want[f]++;
  for (auto& [f, w] : want)
    for (int i = have[f]; i < w; i++) p = weaken(p, f, Side::Ant);
  have.clear();
  want.clear();
  for (auto* f : p.endsequent().suc) have[f]++;
  for (auto* f : s.suc) want[f]++;
  for (auto& [f, w] : want)
    for (int i = have[f]; i < w; i++) p = weaken(p, f, Side::Suc);
  r.kind = SearchResult::Kind::Proved;
  r.proof = reorder_root(p, s);
  return r;
}

}  // namespace prehist
