#include "prehist/families.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace prehist {

using nlohmann::json;

namespace {

// Rebuild a formula applying `ann` at the given box/proof marker paths.
const Formula* apply_annotations(const Formula* f, const std::map<Path, BoxAnn>& anns, Path& path) {
  switch (f->conn) {
    case Conn::Bottom:
    case Conn::Atom:
      return f;
    case Conn::Implies:
    case Conn::And:
    case Conn::Or: {
      path.push_back(0);
      const Formula* l = apply_annotations(f->left, anns, path);
      path.back() = 1;
      const Formula* r = apply_annotations(f->right, anns, path);
      path.pop_back();
      switch (f->conn) {
        case Conn::Implies: return mk_implies(l, r);
        case Conn::And: return mk_and(l, r);
        default: return mk_or(l, r);
      }
    }
    case Conn::Not:
    case Conn::Diamond:
    case Conn::Proof: {
      path.push_back(0);
      const Formula* l = apply_annotations(f->left, anns, path);
      path.pop_back();
      if (f->conn == Conn::Not) return mk_not(l);
      if (f->conn == Conn::Diamond) return mk_diamond(l);
      return mk_proof(f->term, l);
    }
    case Conn::Box: {
      auto it = anns.find(path);
      BoxAnn a = it != anns.end() ? it->second : f->ann;
      path.push_back(0);
      const Formula* l = apply_annotations(f->left, anns, path);
      path.pop_back();
      return mk_box(l, a);
    }
  }
  return f;
}

Polarity occ_root_polarity(Side side) {
  return side == Side::Ant ? Polarity::Negative : Polarity::Positive;
}

}  // namespace

FamilyAnalysis classify_families(const Proof& p, CalculusVariant v) {
  if (v != CalculusVariant::G3sMin && v != CalculusVariant::G3sFull)
    throw std::invalid_argument("family classification needs a cut-free G3s proof");
  for (const auto& n : p.nodes) {
    if (n.rule == Rule::Cut || n.rule == Rule::BoxCut)
      throw std::invalid_argument("family classification needs a cut-free proof");
    for (const auto& side : {n.sequent.ant, n.sequent.suc})
      for (auto* f : side)
        if (has_diamond(f))
          throw std::invalid_argument("family classification is undefined for diamond formulas");
  }

  FamilyAnalysis fa;
  fa.corr = build_correspondence(p, v);
  const Correspondence& c = fa.corr;

  int nclasses = c.class_count;
  std::vector<int> pol(size_t(nclasses), -1);  // 0 pos, 1 neg
  std::vector<char> principal(size_t(nclasses), 0);

  // polarity per class, checked for consistency
  for (int s = 0; s < c.table.total; s++) {
    auto [occ, k] = c.table.syms[size_t(s)];
    const auto& oi = c.table.occs[size_t(occ)];
    Path path = c.table.sym_path(s);
    Polarity q = polarity_at(oi.f, path, occ_root_polarity(oi.side));
    int bit = q == Polarity::Positive ? 0 : 1;
    int cls = c.class_of_sym[size_t(s)];
    if (pol[size_t(cls)] < 0) pol[size_t(cls)] = bit;
    else if (pol[size_t(cls)] != bit)
      throw std::logic_error("polarity clash inside a family");
  }

  // principal positive: some member is introduced by a (=> []) rule
  for (int id = 0; id < p.size(); id++) {
    const ProofNode& n = p.at(id);
    if (n.rule != Rule::BoxR) continue;
    int occ = c.table.occ_of(id, n.principal.side, n.principal.index);
    int sym = c.table.occs[size_t(occ)].sym_base;  // topmost box is the first marker
    principal[size_t(c.class_of_sym[size_t(sym)])] = 1;
  }

  int np = 0, no = 0, nn = 0;
  fa.families.resize(size_t(nclasses));
  fa.family_of_class.resize(size_t(nclasses));
  for (int cls = 0; cls < nclasses; cls++) {
    FamilyInfo fi;
    fi.cls = cls;
    fi.sample = c.table.sym_subformula(c.class_rep[size_t(cls)]);
    if (pol[size_t(cls)] == 1) {
      fi.kind = FamilyClass::Negative;
      fi.number = nn++;
      fi.name = "n" + std::to_string(fi.number);
    } else if (principal[size_t(cls)]) {
      fi.kind = FamilyClass::PrincipalPositive;
      fi.number = np++;
      fi.name = "p" + std::to_string(fi.number);
    } else {
      fi.kind = FamilyClass::NonPrincipalPositive;
      fi.number = no++;
      fi.name = "o" + std::to_string(fi.number);
    }
    fa.families[size_t(cls)] = fi;
    fa.family_of_class[size_t(cls)] = cls;
  }
  return fa;
}

namespace {
Proof annotate_with(const Proof& p, const Correspondence& c,
                    const std::function<BoxAnn(int cls)>& ann_of) {
  Proof out = p;
  for (int id = 0; id < p.size(); id++) {
    Sequent& s = out.at(id).sequent;
    for (int side = 0; side < 2; side++) {
      auto& v = side == 0 ? s.ant : s.suc;
      for (int i = 0; i < int(v.size()); i++) {
        int occ = c.table.occ_of(id, side == 0 ? Side::Ant : Side::Suc, i);
        int base = c.table.occs[size_t(occ)].sym_base;
        const Formula* f = c.table.occs[size_t(occ)].f;
        std::map<Path, BoxAnn> anns;
        const auto& mk = SymbolTable::markers(f);
        const PositionTable& pt = positions(f);
        for (int k = 0; k < int(mk.size()); k++) {
          if (pt.nodes[size_t(mk[size_t(k)])]->conn != Conn::Box) continue;
          anns[pt.paths[size_t(mk[size_t(k)])]] = ann_of(c.class_of_sym[size_t(base + k)]);
        }
        Path path;
        v[size_t(i)] = apply_annotations(f, anns, path);
      }
    }
  }
  // Cut formulas in principal refs follow the premise actives; recompute them
  // from the relabelled premises so the labelled proof still validates.
  for (int id = 0; id < p.size(); id++) {
    ProofNode& n = out.at(id);
    if (!n.principal.cut) continue;
    if (n.rule == Rule::Cut) {
      // first succedent occurrence of premise 0 matching the erased cut formula
      const Sequent& prem = out.at(n.premises[0]).sequent;
      for (auto* f : prem.suc)
        if (erase_annotations(f) == erase_annotations(n.principal.cut)) {
          n.principal.cut = f;
          break;
        }
    } else if (n.rule == Rule::BoxCut) {
      const Sequent& prem = out.at(n.premises[1]).sequent;
      for (auto* f : prem.suc)
        if (f->conn == Conn::Box && erase_annotations(f->left) == erase_annotations(n.principal.cut)) {
          n.principal.cut = f->left;
          break;
        }
    }
  }
  return out;
}
}  // namespace

AnnotatedProof classify_and_annotate(const Proof& p, CalculusVariant v) {
  AnnotatedProof ap;
  ap.source = p;
  ap.analysis = classify_families(p, v);
  const FamilyAnalysis& fa = ap.analysis;
  ap.proof = annotate_with(p, fa.corr, [&](int cls) {
    const FamilyInfo& fi = fa.families[size_t(cls)];
    AnnKind kind = fi.kind == FamilyClass::PrincipalPositive ? AnnKind::Plus
                 : fi.kind == FamilyClass::NonPrincipalPositive ? AnnKind::Dot
                                                               : AnnKind::Minus;
    return BoxAnn{kind, fi.number};
  });
  return ap;
}

Proof label_by_family(const Proof& p, CalculusVariant v, int* class_count) {
  Proof plain = erase_proof_annotations(p);
  Correspondence c = build_correspondence(plain, v);
  if (class_count) *class_count = c.class_count;
  return annotate_with(plain, c, [](int cls) { return BoxAnn{AnnKind::Fam, cls}; });
}

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

bool PrehistoricGraph::has_edge(int from, int to) const {
  for (const Edge& e : edges)
    if (e.from == from && e.to == to) return true;
  return false;
}

namespace {
void add_edge(std::set<PrehistoricGraph::Edge>& es, int from, int to, char label) {
  es.insert(PrehistoricGraph::Edge{from, to, label});
}
}  // namespace

PrehistoricGraph prehistoric_graph(const Proof& p, GraphMode mode, CalculusVariant v) {
  PrehistoricGraph g;
  g.mode = mode;
  std::set<PrehistoricGraph::Edge> edges;

  if (mode == GraphMode::Labeled) {
    // vertices = [#i] labels present in the proof
    std::map<int, int> vertex_of_label;
    auto vertex = [&](int label) {
      auto it = vertex_of_label.find(label);
      if (it != vertex_of_label.end()) return it->second;
      int id = int(g.vertex_names.size());
      vertex_of_label.emplace(label, id);
      g.vertex_names.push_back("f" + std::to_string(label));
      return id;
    };
    // deterministic vertex order: scan root-first
    TreeIndex t = index_tree(p);
    auto scan_formula = [&](const Formula* f, const std::function<void(const Formula*)>& fn) {
      std::function<void(const Formula*)> rec = [&](const Formula* g2) {
        fn(g2);
        if (g2->left) rec(g2->left);
        if (g2->right) rec(g2->right);
      };
      rec(f);
    };
    for (int id : t.preorder) {
      const Sequent& s = p.at(id).sequent;
      for (const auto& vside : {s.ant, s.suc})
        for (auto* f : vside)
          scan_formula(f, [&](const Formula* g2) {
            if (g2->conn == Conn::Box && g2->ann.kind == AnnKind::Fam) vertex(g2->ann.index);
          });
    }
    for (int id = 0; id < p.size(); id++) {
      const ProofNode& n = p.at(id);
      if (n.rule != Rule::BoxR) continue;
      const Formula* pf = n.principal.side == Side::Ant ? n.sequent.ant[size_t(n.principal.index)]
                                                        : n.sequent.suc[size_t(n.principal.index)];
      if (pf->ann.kind != AnnKind::Fam) throw std::invalid_argument("labeled graph needs [#i] labels");
      int head = vertex(pf->ann.index);
      const Sequent& prem = p.at(n.premises[0]).sequent;
      for (int side = 0; side < 2; side++) {
        const auto& vv = side == 0 ? prem.ant : prem.suc;
        char label = side == 0 ? 'L' : 'R';
        for (auto* f : vv)
          scan_formula(f, [&](const Formula* g2) {
            if (g2->conn == Conn::Box && g2->ann.kind == AnnKind::Fam)
              add_edge(edges, vertex(g2->ann.index), head, label);
          });
      }
    }
    g.edges.assign(edges.begin(), edges.end());
    return g;
  }

  // correspondence-based modes
  const bool lp = mode == GraphMode::LpTerm;
  if (lp && v != CalculusVariant::G3lp)
    throw std::invalid_argument("lp-term graphs need a G3lp proof");
  if (mode == GraphMode::G3sPrincipal &&
      !(v == CalculusVariant::G3sMin || v == CalculusVariant::G3sFull))
    throw std::invalid_argument("g3s-principal graphs need cut-free G3s proofs");

  std::optional<FamilyAnalysis> fa;
  Correspondence corr;
  if (mode == GraphMode::G3sPrincipal) {
    fa = classify_families(p, v);
    corr = fa->corr;
  } else {
    corr = build_correspondence(p, v);
  }

  // vertex per class (principal mode: principal classes only)
  std::vector<int> vertex_of_class(size_t(corr.class_count), -1);
  if (mode == GraphMode::G3sPrincipal) {
    for (int cls = 0; cls < corr.class_count; cls++) {
      const FamilyInfo& fi = fa->families[size_t(cls)];
      if (fi.kind == FamilyClass::PrincipalPositive) {
        vertex_of_class[size_t(cls)] = int(g.vertex_names.size());
        g.vertex_names.push_back(fi.name);
      }
    }
  } else {
    for (int cls = 0; cls < corr.class_count; cls++) {
      vertex_of_class[size_t(cls)] = int(g.vertex_names.size());
      g.vertex_names.push_back((lp ? "t" : "f") + std::to_string(cls));
    }
  }

  for (int id = 0; id < p.size(); id++) {
    const ProofNode& n = p.at(id);
    bool is_intro = lp ? (n.rule == Rule::ColonRc || n.rule == Rule::ColonRt) : n.rule == Rule::BoxR;
    if (!is_intro) continue;
    int pocc = corr.table.occ_of(id, n.principal.side, n.principal.index);
    int head_cls = corr.class_of_sym[size_t(corr.table.occs[size_t(pocc)].sym_base)];
    int head = vertex_of_class[size_t(head_cls)];
    if (head < 0) continue;
    const Sequent& prem = p.at(n.premises[0]).sequent;
    int prem_node = n.premises[0];
    for (int side = 0; side < 2; side++) {
      const auto& vv = side == 0 ? prem.ant : prem.suc;
      char label = side == 0 ? 'L' : 'R';
      for (int i = 0; i < int(vv.size()); i++) {
        int occ = corr.table.occ_of(prem_node, side == 0 ? Side::Ant : Side::Suc, i);
        int base = corr.table.occs[size_t(occ)].sym_base;
        int cnt = int(SymbolTable::markers(vv[size_t(i)]).size());
        for (int k = 0; k < cnt; k++) {
          int cls = corr.class_of_sym[size_t(base + k)];
          int from = vertex_of_class[size_t(cls)];
          if (from < 0) continue;  // non-principal in principal mode
          add_edge(edges, from, head, label);
        }
      }
    }
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

std::string PrehistoricGraph::to_dot() const {
  std::ostringstream os;
  os << "digraph prehistoric {\n";
  for (size_t i = 0; i < vertex_names.size(); i++)
    os << "  \"" << vertex_names[i] << "\";\n";
  for (const Edge& e : edges)
    os << "  \"" << vertex_names[size_t(e.from)] << "\" -> \"" << vertex_names[size_t(e.to)]
       << "\" [label=\"" << e.label << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string PrehistoricGraph::to_json() const {
  json j;
  j["format"] = "prehist/1";
  json vs = json::array();
  for (const auto& v : vertex_names) vs.push_back(v);
  j["vertices"] = vs;
  json es = json::array();
  for (const Edge& e : edges)
    es.push_back({{"from", vertex_names[size_t(e.from)]},
                  {"to", vertex_names[size_t(e.to)]},
                  {"label", std::string(1, e.label)}});
  j["edges"] = es;
  return j.dump(2);
}

std::optional<std::vector<int>> find_cycle(const PrehistoricGraph& g, bool left_only) {
  int n = int(g.vertex_names.size());
  std::vector<std::vector<int>> adj(static_cast<size_t>(n));
  for (const auto& e : g.edges) {
    if (left_only && e.label != 'L') continue;
    adj[size_t(e.from)].push_back(e.to);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  // shortest cycle through each start vertex, smallest start first
  int best_len = -1, best_start = -1;
  for (int s = 0; s < n; s++) {
    // BFS from s; distance to return to s
    std::vector<int> dist(size_t(n), -1);
    std::vector<int> queue{s};
    dist[size_t(s)] = 0;
    int found = -1;
    for (size_t qi = 0; qi < queue.size() && found < 0; qi++) {
      int u = queue[qi];
      for (int w : adj[size_t(u)]) {
        if (w == s) { found = dist[size_t(u)] + 1; break; }
        if (dist[size_t(w)] < 0) {
          dist[size_t(w)] = dist[size_t(u)] + 1;
          queue.push_back(w);
        }
      }
    }
    if (found > 0 && (best_len < 0 || found < best_len)) {
      best_len = found;
      best_start = s;
    }
  }
  if (best_len < 0) return std::nullopt;
  // reconstruct lexicographically-smallest cycle of length best_len from best_start:
  // dist_to_target[v] = shortest distance from v to best_start
  std::vector<std::vector<int>> radj(static_cast<size_t>(n));
  for (const auto& e : g.edges) {
    if (left_only && e.label != 'L') continue;
    radj[size_t(e.to)].push_back(e.from);
  }
  std::vector<int> dist_to(size_t(n), -1);
  std::vector<int> queue{best_start};
  dist_to[size_t(best_start)] = 0;
  for (size_t qi = 0; qi < queue.size(); qi++) {
    int u = queue[qi];
    for (int w : radj[size_t(u)])
      if (dist_to[size_t(w)] < 0) {
        dist_to[size_t(w)] = dist_to[size_t(u)] + 1;
        queue.push_back(w);
      }
  }
  std::vector<int> cycle{best_start};
  int cur = best_start;
  for (int step = best_len - 1; step > 0; step--) {
    for (int w : adj[size_t(cur)]) {
      if (dist_to[size_t(w)] == step) {
        cycle.push_back(w);
        cur = w;
        break;
      }
    }
  }
  return cycle;
}

// ---------------------------------------------------------------------------
// Witnesses
// ---------------------------------------------------------------------------

std::vector<PrehistoryWitness> prehistory_witness(const AnnotatedProof& ap, const std::string& h,
                                                  const std::string& i) {
  const FamilyAnalysis& fa = ap.analysis;
  int h_cls = -1, i_cls = -1;
  for (const auto& fi : fa.families) {
    if (fi.name == h) h_cls = fi.cls;
    if (fi.name == i) i_cls = fi.cls;
  }
  if (h_cls < 0 || i_cls < 0) throw std::invalid_argument("unknown family name");
  const Proof& p = ap.source;
  const Correspondence& c = fa.corr;
  TreeIndex t = index_tree(p);
  std::vector<PrehistoryWitness> out;
  for (int id = 0; id < p.size(); id++) {
    const ProofNode& n = p.at(id);
    if (n.rule != Rule::BoxR) continue;
    int pocc = c.table.occ_of(id, n.principal.side, n.principal.index);
    if (c.class_of_sym[size_t(c.table.occs[size_t(pocc)].sym_base)] != i_cls) continue;
    int prem = n.premises[0];
    for (int sub : t.subtree[size_t(prem)]) {
      const Sequent& s = p.at(sub).sequent;
      for (int side = 0; side < 2; side++) {
        const auto& vv = side == 0 ? s.ant : s.suc;
        for (int k = 0; k < int(vv.size()); k++) {
          int occ = c.table.occ_of(sub, side == 0 ? Side::Ant : Side::Suc, k);
          int base = c.table.occs[size_t(occ)].sym_base;
          int cnt = int(SymbolTable::markers(vv[size_t(k)]).size());
          for (int m = 0; m < cnt; m++) {
            if (c.class_of_sym[size_t(base + m)] != h_cls) continue;
            for (int leaf : t.leaves[size_t(sub)])
              out.push_back(PrehistoryWitness{leaf, sub, side == 0 ? Side::Ant : Side::Suc, k,
                                              c.table.sym_path(base + m)});
          }
        }
      }
    }
  }
  return out;
}

}  // namespace prehist
