#include "prehist/lp_analysis.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <nlohmann/json.hpp>

#include "prehist/correspond.hpp"

namespace prehist {

using nlohmann::json;

HilbertReport check_hilbert(const std::vector<HilbertStep>& steps,
                            const std::vector<const Formula*>& assumptions,
                            const AxiomChecker& ax) {
  HilbertReport rep;
  auto complain = [&](int i, const std::string& msg) {
    rep.ok = false;
    rep.issues.push_back("step " + std::to_string(i) + ": " + msg);
  };
  for (int i = 0; i < int(steps.size()); i++) {
    const HilbertStep& st = steps[size_t(i)];
    if (!is_lp(st.formula)) {
      complain(i, "not an LP formula");
      continue;
    }
    switch (st.kind) {
      case HilbertStep::Kind::Axiom:
        if (!ax.is_lp_axiom(st.formula)) complain(i, "not an instance of A0-A4: " + render(st.formula));
        break;
      case HilbertStep::Kind::Assumption: {
        bool found = false;
        for (auto* g : assumptions)
          if (g == st.formula) found = true;
        if (!found) complain(i, "not among the assumptions: " + render(st.formula));
        break;
      }
      case HilbertStep::Kind::ModusPonens: {
        if (st.impl_step < 0 || st.impl_step >= i || st.arg_step < 0 || st.arg_step >= i) {
          complain(i, "modus ponens must reference earlier steps");
          break;
        }
        const Formula* impl = steps[size_t(st.impl_step)].formula;
        const Formula* arg = steps[size_t(st.arg_step)].formula;
        if (impl->conn != Conn::Implies || impl->left != arg || impl->right != st.formula)
          complain(i, "modus ponens shape mismatch");
        break;
      }
      case HilbertStep::Kind::Necessitation: {
        if (st.formula->conn != Conn::Proof || st.formula->term->op != TermOp::Const) {
          complain(i, "axiom necessitation must derive c:A with c a constant");
          break;
        }
        const Formula* body = st.formula->left;
        if (st.axiom_step >= 0) {
          if (st.axiom_step >= i) {
            complain(i, "necessitation must reference an earlier step");
            break;
          }
          if (steps[size_t(st.axiom_step)].formula != body) {
            complain(i, "referenced step does not carry the boxed axiom");
            break;
          }
        }
        if (!ax.is_lp_axiom(body)) {
          complain(i, "necessitation target is not an axiom A0-A4: " + render(body));
          break;
        }
        rep.generated_cs.push_back(st.formula);
        break;
      }
    }
  }
  return rep;
}

std::pair<std::vector<HilbertStep>, std::vector<const Formula*>> hilbert_from_json(
    const std::string& text, const Lexicon& lex) {
  json j = json::parse(text);
  std::vector<const Formula*> assumptions;
  if (j.contains("assumptions"))
    for (const auto& a : j.at("assumptions"))
      assumptions.push_back(parse_formula(a.get<std::string>(), Language::Lp, lex));
  std::vector<HilbertStep> steps;
  for (const auto& sj : j.at("steps")) {
    HilbertStep st;
    st.formula = parse_formula(sj.at("formula").get<std::string>(), Language::Lp, lex);
    std::string rule = sj.at("rule").get<std::string>();
    if (rule == "axiom") st.kind = HilbertStep::Kind::Axiom;
    else if (rule == "assumption") st.kind = HilbertStep::Kind::Assumption;
    else if (rule == "mp") {
      st.kind = HilbertStep::Kind::ModusPonens;
      st.impl_step = sj.at("premises").at(0).get<int>();
      st.arg_step = sj.at("premises").at(1).get<int>();
    } else if (rule == "nec") {
      st.kind = HilbertStep::Kind::Necessitation;
      if (sj.contains("premises") && !sj.at("premises").empty())
        st.axiom_step = sj.at("premises").at(0).get<int>();
    } else {
      throw std::invalid_argument("unknown hilbert rule: " + rule);
    }
    steps.push_back(st);
  }
  return {steps, assumptions};
}

// ---------------------------------------------------------------------------

std::vector<InputEntry> inputs_of(const Proof& p) {
  std::map<const Formula*, InputEntry> seen;
  for (const auto& n : p.nodes) {
    if (n.rule != Rule::ColonRt && n.rule != Rule::ColonRc) continue;
    const Formula* f = n.principal.side == Side::Ant ? n.sequent.ant[size_t(n.principal.index)]
                                                     : n.sequent.suc[size_t(n.principal.index)];
    InputEntry& e = seen.emplace(f, InputEntry{f, false, false}).first->second;
    if (n.rule == Rule::ColonRt) e.from_term_rule = true;
    else e.from_const_rule = true;
  }
  std::vector<InputEntry> out;
  for (auto& [f, e] : seen) out.push_back(e);
  std::sort(out.begin(), out.end(),
            [](const InputEntry& a, const InputEntry& b) { return render(a.formula) < render(b.formula); });
  return out;
}

SelfRefVerdict classify_selfref(const std::vector<const Formula*>& entries) {
  int n = int(entries.size());
  for (auto* f : entries)
    if (f->conn != Conn::Proof)
      throw std::invalid_argument("self-referentiality is defined on justified formulas t:A");
  // edge i -> j iff term(j) is a subterm of body(i)
  std::vector<std::vector<int>> adj(static_cast<size_t>(n));
  for (int i = 0; i < n; i++) {
    std::set<const Term*> subs = subterms_of_formula(entries[size_t(i)]->left);
    for (int j = 0; j < n; j++)
      if (subs.count(entries[size_t(j)]->term)) adj[size_t(i)].push_back(j);
  }
  // shortest cycle, deterministic (smallest start, BFS)
  int best_len = -1, best_start = -1;
  for (int s = 0; s < n; s++) {
    std::vector<int> dist(static_cast<size_t>(n), -1);
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
  SelfRefVerdict v;
  if (best_len < 0) return v;
  v.kind = best_len == 1 ? SelfRefKind::Direct : SelfRefKind::Cyclic;
  // reconstruct a shortest cycle from best_start
  std::vector<std::vector<int>> radj(static_cast<size_t>(n));
  for (int a = 0; a < n; a++)
    for (int b : adj[size_t(a)]) radj[size_t(b)].push_back(a);
  std::vector<int> dist_to(static_cast<size_t>(n), -1);
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
  int cur = best_start;
  v.witness.push_back(entries[size_t(cur)]);
  for (int step = best_len - 1; step > 0; step--) {
    for (int w : adj[size_t(cur)]) {
      if (dist_to[size_t(w)] == step) {
        v.witness.push_back(entries[size_t(w)]);
        cur = w;
        break;
      }
    }
  }
  return v;
}

std::vector<const Formula*> extract_selfref_chain(const Proof& p, const std::vector<int>& cycle) {
  if (cycle.empty()) throw std::invalid_argument("empty cycle");
  Correspondence corr = build_correspondence(p, CalculusVariant::G3lp);
  // vertex ids of the lp-term graph are class indices (named "t<cls>")
  std::vector<const Formula*> chain;
  for (size_t k = 0; k < cycle.size(); k++) {
    int tail = cycle[k];
    int head = cycle[(k + 1) % cycle.size()];
    // find a (=> :) rule introducing an occurrence of `head` whose premise
    // carries an occurrence of `tail`
    const Formula* witness = nullptr;
    for (int id = 0; id < p.size() && !witness; id++) {
      const ProofNode& n = p.at(id);
      if (n.rule != Rule::ColonRc && n.rule != Rule::ColonRt) continue;
      int pocc = corr.table.occ_of(id, n.principal.side, n.principal.index);
      if (corr.class_of_sym[size_t(corr.table.occs[size_t(pocc)].sym_base)] != head) continue;
      const Sequent& prem = p.at(n.premises[0]).sequent;
      for (int side = 0; side < 2 && !witness; side++) {
        const auto& v = side == 0 ? prem.ant : prem.suc;
        for (int i = 0; i < int(v.size()) && !witness; i++) {
          int occ = corr.table.occ_of(n.premises[0], side == 0 ? Side::Ant : Side::Suc, i);
          int base = corr.table.occs[size_t(occ)].sym_base;
          int cnt = int(SymbolTable::markers(v[size_t(i)]).size());
          for (int m = 0; m < cnt; m++)
            if (corr.class_of_sym[size_t(base + m)] == tail) {
              witness = n.principal.side == Side::Ant ? n.sequent.ant[size_t(n.principal.index)]
                                                      : n.sequent.suc[size_t(n.principal.index)];
              break;
            }
        }
      }
    }
    if (!witness)
      throw std::invalid_argument("cycle edge t" + std::to_string(tail) + " -> t" +
                                  std::to_string(head) + " is not present in the proof");
    if (std::find(chain.begin(), chain.end(), witness) == chain.end()) chain.push_back(witness);
  }
  return chain;
}

// ---------------------------------------------------------------------------

const Term* RealizationFunction::at(AnnKind kind, int index) const {
  auto it = map.find({kind, index});
  if (it == map.end())
    throw std::invalid_argument("realization function lacks a symbol mapping");
  return it->second;
}

RealizationFunction RealizationFunction::from_json(const std::string& text, const Lexicon& lex) {
  json j = json::parse(text);
  RealizationFunction r;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();  // "p0" / "o1" / "n2"
    if (key.size() < 2) throw std::invalid_argument("bad realization key: " + key);
    AnnKind kind = key[0] == 'p' ? AnnKind::Plus
                 : key[0] == 'o' ? AnnKind::Dot
                 : key[0] == 'n' ? AnnKind::Minus
                                 : AnnKind::None;
    if (kind == AnnKind::None) throw std::invalid_argument("bad realization key: " + key);
    int index = std::stoi(key.substr(1));
    r.map[{kind, index}] = parse_term(it.value().get<std::string>(), lex);
  }
  return r;
}

const Formula* apply_realization(const RealizationFunction& r, const Formula* f) {
  switch (f->conn) {
    case Conn::Bottom:
    case Conn::Atom:
      return f;
    case Conn::Implies:
      return mk_implies(apply_realization(r, f->left), apply_realization(r, f->right));
    case Conn::And:
      return mk_and(apply_realization(r, f->left), apply_realization(r, f->right));
    case Conn::Or:
      return mk_or(apply_realization(r, f->left), apply_realization(r, f->right));
    case Conn::Not:
      return mk_not(apply_realization(r, f->left));
    case Conn::Box: {
      if (f->ann.kind == AnnKind::None || f->ann.kind == AnnKind::Fam)
        throw std::invalid_argument("apply_realization needs an annotated formula");
      return mk_proof(r.at(f->ann.kind, f->ann.index), apply_realization(r, f->left));
    }
    case Conn::Diamond:
      throw std::invalid_argument("diamond formulas have no realization");
    case Conn::Proof:
      throw std::invalid_argument("apply_realization expects a modal formula");
  }
  return f;
}

bool cs_injective(const std::vector<const Formula*>& cs) {
  std::map<const Term*, std::set<const Formula*>> per_const;
  for (auto* f : cs) {
    if (f->conn != Conn::Proof || f->term->op != TermOp::Const) return false;
    per_const[f->term].insert(f->left);
  }
  for (auto& [c, bodies] : per_const)
    if (bodies.size() > 1) return false;
  return true;
}

bool check_normal(const RealizationFunction& r, const std::vector<const Formula*>& cs) {
  std::set<const Term*> seen;
  for (const auto& [key, term] : r.map) {
    if (key.first == AnnKind::Plus) continue;  // principal symbols are unconstrained
    if (term->op != TermOp::Var) return false;
    if (!seen.insert(term).second) return false;  // duplicate variable
  }
  return cs_injective(cs);
}

}  // namespace prehist
