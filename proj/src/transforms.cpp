#include "prehist/transforms.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

namespace prehist {

namespace {

struct Ctx {
  long steps = 0;
  void tick() {
    if (++steps > 20'000'000) throw std::runtime_error("transform step limit exceeded");
  }
};

const Formula* occ_at(const Sequent& s, Side side, int idx) {
  const auto& v = side == Side::Ant ? s.ant : s.suc;
  if (idx < 0 || idx >= int(v.size())) throw std::out_of_range("occurrence index");
  return v[size_t(idx)];
}

Sequent remove_occ(Sequent s, Side side, int idx) {
  auto& v = side == Side::Ant ? s.ant : s.suc;
  v.erase(v.begin() + idx);
  return s;
}

PrincipalRef shift_principal(PrincipalRef pr, Side removed_side, int removed_idx) {
  if (pr.has_occ && pr.side == removed_side && pr.index > removed_idx) pr.index--;
  return pr;
}

RuleMatch match_node(const Proof& p, int id) {
  const ProofNode& n = p.at(id);
  std::vector<const Sequent*> prem;
  for (int q : n.premises) prem.push_back(&p.at(q).sequent);
  RuleMatch m = match_rule(n.rule, n.sequent, n.principal, prem, AxiomChecker::tautology());
  if (!m.ok)
    throw std::invalid_argument("transform on invalid node " + std::to_string(id) + " (" +
                                rule_display(n.rule) + "): " + m.error);
  return m;
}

bool occ_weakened(const RuleMatch& m, Occ o) {
  for (Occ w : m.weakened)
    if (w == o) return true;
  return false;
}

bool occ_is_principal(const RuleMatch& m, Occ o) { return m.principal.index >= 0 && m.principal == o; }

// Premise occurrences side-linked 1:1 to the given conclusion occurrence.
std::vector<std::pair<int, Occ>> mapped_occs(const RuleMatch& m, Occ o) {
  std::vector<std::pair<int, Occ>> out;
  for (const SymLink& l : m.links) {
    if (l.kind != SymLink::Subtree) continue;
    if (!l.a_prefix.empty() || !l.b_prefix.empty()) continue;
    if (l.b.premise != -1 || !(l.b.occ == o)) continue;
    if (occ_is_principal(m, o)) continue;
    out.emplace_back(l.a.premise, l.a.occ);
  }
  return out;
}

// Active occurrence of premise k embedded at `prefix` inside the principal.
Occ active_occ(const RuleMatch& m, int k, const Path& prefix) {
  for (const SymLink& l : m.links) {
    if (l.kind != SymLink::Subtree) continue;
    if (l.a.premise != k) continue;
    if (l.b.premise != -1 || !(l.b.occ == m.principal)) continue;
    if (!l.a_prefix.empty()) continue;
    if (l.b_prefix == prefix) return l.a.occ;
  }
  throw std::logic_error("active occurrence not found");
}

std::optional<Rule> axiom_rule(const Sequent& s) {
  for (auto* f : s.ant)
    if (f->conn == Conn::Bottom) return Rule::BotL;
  for (auto* f : s.suc) {
    if (!f->is_atom()) continue;
    for (auto* g : s.ant)
      if (g == f) return Rule::Ax;
  }
  return std::nullopt;
}

bool sequent_has_diamond(const Sequent& s) {
  for (const auto& v : {s.ant, s.suc})
    for (auto* f : v)
      if (has_diamond(f)) return true;
  return false;
}

void require_no_diamond(const Proof& p, const char* op) {
  for (const auto& n : p.nodes)
    if (sequent_has_diamond(n.sequent))
      throw std::invalid_argument(std::string(op) + " does not support diamond formulas");
}

}  // namespace

// ---------------------------------------------------------------------------
// Basic surgery
// ---------------------------------------------------------------------------

Proof subproof(const Proof& p, int node) {
  Proof out;
  std::function<int(int)> rec = [&](int id) -> int {
    const ProofNode& n = p.at(id);
    std::vector<int> prem;
    for (int q : n.premises) prem.push_back(rec(q));
    return add_node(out, n.rule, n.sequent, n.principal, std::move(prem));
  };
  out.root = rec(node);
  return out;
}

int graft(Proof& dst, const Proof& src) {
  std::function<int(int)> rec = [&](int id) -> int {
    const ProofNode& n = src.at(id);
    std::vector<int> prem;
    for (int q : n.premises) prem.push_back(rec(q));
    return add_node(dst, n.rule, n.sequent, n.principal, std::move(prem));
  };
  return rec(src.root);
}

Proof weaken(const Proof& p, const Formula* f, Side side) {
  Proof out;
  std::function<int(int)> rec = [&](int id) -> int {
    const ProofNode& n = p.at(id);
    bool stop = n.rule == Rule::Ax || n.rule == Rule::BotL || n.rule == Rule::BoxR ||
                n.rule == Rule::DiaL || n.rule == Rule::ColonRc || n.rule == Rule::ColonRt;
    Sequent s = n.sequent;
    (side == Side::Ant ? s.ant : s.suc).push_back(f);
    std::vector<int> prem;
    for (int q : n.premises) prem.push_back(stop ? graft(out, subproof(p, q)) : rec(q));
    return add_node(out, n.rule, std::move(s), n.principal, std::move(prem));
  };
  out.root = rec(p.root);
  return out;
}

Proof weaken_many(const Proof& p, const std::vector<const Formula*>& ant,
                  const std::vector<const Formula*>& suc) {
  Proof out = p;
  for (auto* f : ant) out = weaken(out, f, Side::Ant);
  for (auto* f : suc) out = weaken(out, f, Side::Suc);
  return out;
}

Proof reorder_root(const Proof& p, const Sequent& target) {
  const Sequent& s = p.endsequent();
  auto permute = [](const std::vector<const Formula*>& from, const std::vector<const Formula*>& to)
      -> std::vector<int> {
    if (from.size() != to.size()) throw std::invalid_argument("reorder: size mismatch");
    std::vector<char> used(from.size(), 0);
    std::vector<int> perm(to.size(), -1);  // new index -> old index
    for (size_t j = 0; j < to.size(); j++) {
      bool ok = false;
      for (size_t i = 0; i < from.size(); i++) {
        if (!used[i] && from[i] == to[j]) {
          used[i] = 1;
          perm[j] = int(i);
          ok = true;
          break;
        }
      }
      if (!ok) throw std::invalid_argument("reorder: multiset mismatch at " + render(to[j]));
    }
    return perm;
  };
  std::vector<int> pa = permute(s.ant, target.ant);
  std::vector<int> ps = permute(s.suc, target.suc);
  Proof out = p;
  ProofNode& root = out.at(out.root);
  root.sequent = target;
  if (root.principal.has_occ) {
    const std::vector<int>& perm = root.principal.side == Side::Ant ? pa : ps;
    for (size_t j = 0; j < perm.size(); j++)
      if (perm[j] == root.principal.index) {
        root.principal.index = int(j);
        break;
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inversion
// ---------------------------------------------------------------------------

namespace {

struct InvSchema {
  Rule rule;
  int arity;
  // actives per premise: lists of (side, formula) appended in order
  std::vector<std::vector<std::pair<Side, const Formula*>>> actives;
};

InvSchema inv_schema(const Formula* f, Side side) {
  switch (f->conn) {
    case Conn::Implies:
      if (side == Side::Suc)
        return {Rule::ImpR, 1, {{{Side::Ant, f->left}, {Side::Suc, f->right}}}};
      return {Rule::ImpL, 2, {{{Side::Suc, f->left}}, {{Side::Ant, f->right}}}};
    case Conn::And:
      if (side == Side::Ant)
        return {Rule::AndL, 1, {{{Side::Ant, f->left}, {Side::Ant, f->right}}}};
      return {Rule::AndR, 2, {{{Side::Suc, f->left}}, {{Side::Suc, f->right}}}};
    case Conn::Or:
      if (side == Side::Suc)
        return {Rule::OrR, 1, {{{Side::Suc, f->left}, {Side::Suc, f->right}}}};
      return {Rule::OrL, 2, {{{Side::Ant, f->left}}, {{Side::Ant, f->right}}}};
    case Conn::Not:
      if (side == Side::Ant) return {Rule::NotL, 1, {{{Side::Suc, f->left}}}};
      return {Rule::NotR, 1, {{{Side::Ant, f->left}}}};
    default:
      throw std::invalid_argument("occurrence is not invertible: " + render(f));
  }
}

Sequent append_actives(Sequent s, const std::vector<std::pair<Side, const Formula*>>& actives) {
  for (auto [side, f] : actives) (side == Side::Ant ? s.ant : s.suc).push_back(f);
  return s;
}

std::vector<Proof> invert_rec(Ctx& ctx, const Proof& p, Side side, int index);

// Shared by the "side formula" case: rebuild the root rule over premise
// results (one per inversion branch).
std::vector<Proof> invert_through(Ctx& ctx, const Proof& p, Side side, int index,
                                  const RuleMatch& m, const InvSchema& sch) {
  const ProofNode& n = p.at(p.root);
  Occ occ{side, index};
  auto maps = mapped_occs(m, occ);
  // premise k -> mapped occ
  std::map<int, Occ> where;
  for (auto [k, o] : maps) where[k] = o;
  std::vector<std::vector<Proof>> per_premise;  // premise k -> branch r -> proof
  for (int k = 0; k < int(n.premises.size()); k++) {
    auto it = where.find(k);
    if (it == where.end()) throw std::logic_error("side occurrence not mapped to premise");
    per_premise.push_back(invert_rec(ctx, subproof(p, n.premises[size_t(k)]), it->second.side,
                                     it->second.index));
  }
  std::vector<Proof> out;
  for (int r = 0; r < sch.arity; r++) {
    Sequent concl = append_actives(remove_occ(n.sequent, side, index), sch.actives[size_t(r)]);
    Proof q;
    std::vector<int> prem;
    for (int k = 0; k < int(n.premises.size()); k++) prem.push_back(graft(q, per_premise[size_t(k)][size_t(r)]));
    q.root = add_node(q, n.rule, std::move(concl), shift_principal(n.principal, side, index), std::move(prem));
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<Proof> invert_rec(Ctx& ctx, const Proof& p, Side side, int index) {
  ctx.tick();
  const ProofNode& n = p.at(p.root);
  const Formula* f = occ_at(n.sequent, side, index);
  InvSchema sch = inv_schema(f, side);
  RuleMatch m = match_node(p, p.root);
  Occ occ{side, index};

  if (n.rule == Rule::Ax || n.rule == Rule::BotL || occ_weakened(m, occ)) {
    // replace the occurrence by its actives inside the same node
    std::vector<Proof> out;
    for (int r = 0; r < sch.arity; r++) {
      Sequent concl = append_actives(remove_occ(n.sequent, side, index), sch.actives[size_t(r)]);
      Proof q;
      std::vector<int> prem;
      for (int pk : n.premises) prem.push_back(graft(q, subproof(p, pk)));
      q.root = add_node(q, n.rule, std::move(concl), shift_principal(n.principal, side, index), std::move(prem));
      if (n.rule == Rule::Ax || n.rule == Rule::BotL) {
        if (!axiom_rule(q.at(q.root).sequent))
          throw std::logic_error("inversion destroyed an axiom");
      }
      out.push_back(std::move(q));
    }
    return out;
  }
  if (occ_is_principal(m, occ)) {
    // premises already prove the inverted sequents; normalize their layout
    std::vector<Proof> out;
    for (int r = 0; r < sch.arity; r++) {
      Sequent target = append_actives(remove_occ(n.sequent, side, index), sch.actives[size_t(r)]);
      out.push_back(reorder_root(subproof(p, n.premises[size_t(r)]), target));
    }
    return out;
  }
  return invert_through(ctx, p, side, index, m, sch);
}

}  // namespace

std::vector<Proof> invert(const Proof& p, Side side, int index) {
  const Formula* f = occ_at(p.endsequent(), side, index);
  // expansion rules invert by weakening
  if (side == Side::Ant && (f->conn == Conn::Box || f->conn == Conn::Proof))
    return {weaken(p, f->left, Side::Ant)};
  if (side == Side::Suc && f->conn == Conn::Proof) {
    const Term* t = f->term;
    if (t->op == TermOp::Bang && f->left->conn == Conn::Proof && f->left->term == t->left)
      return {weaken(p, f->left, Side::Suc)};
    if (t->op == TermOp::Sum) {
      Proof q = weaken(p, mk_proof(t->left, f->left), Side::Suc);
      return {weaken(q, mk_proof(t->right, f->left), Side::Suc)};
    }
    throw std::invalid_argument("succedent justification occurrence is not invertible");
  }
  if (side == Side::Suc && f->conn == Conn::Box)
    throw std::invalid_argument("(=> []) is not invertible");
  Ctx ctx;
  return invert_rec(ctx, p, side, index);
}

// ---------------------------------------------------------------------------
// Contraction
// ---------------------------------------------------------------------------

namespace {

Proof contract_rec(Ctx& ctx, const Proof& p, Side side, int i, int j);

Proof rebuild_without(const Proof& p, Side side, int idx) {
  Proof out;
  const ProofNode& n = p.at(p.root);
  std::vector<int> prem;
  for (int q : n.premises) prem.push_back(graft(out, subproof(p, q)));
  out.root = add_node(out, n.rule, remove_occ(n.sequent, side, idx),
                      shift_principal(n.principal, side, idx), std::move(prem));
  return out;
}

// Remove one copy of the formula at (side, drop) from the premise subproof
// `prem_id` and re-apply the root rule without the conclusion copy.
Proof contract_principal_case(Ctx& ctx, const Proof& p, const RuleMatch& m, Side side, int pr_idx,
                              int copy_idx) {
  const ProofNode& n = p.at(p.root);
  Occ copy{side, copy_idx};
  auto maps = mapped_occs(m, copy);
  std::map<int, Occ> where;
  for (auto [k, o] : maps) where[k] = o;
  const Formula* f = occ_at(n.sequent, side, pr_idx);

  Proof out;
  std::vector<int> prem_ids;
  switch (n.rule) {
    case Rule::BoxL:
    case Rule::ColonL:
    case Rule::BangR:
    case Rule::PlusR:
    case Rule::DotR:
    case Rule::BoxCut: {
      // the premise(s) already carry a second copy as the rule's own active
      for (int k = 0; k < int(n.premises.size()); k++) {
        Proof sub = subproof(p, n.premises[size_t(k)]);
        auto it = where.find(k);
        if (it == where.end()) throw std::logic_error("contract: copy not mapped");
        Sequent target = remove_occ(sub.endsequent(), it->second.side, it->second.index);
        ctx.tick();
        // contract_to pairs the copy with the rule's own active occurrence
        Proof reduced = [&] {
          // find another occurrence of the same formula to pair with
          const auto& v = it->second.side == Side::Ant ? sub.endsequent().ant : sub.endsequent().suc;
          int other = -1;
          for (int x = 0; x < int(v.size()); x++)
            if (x != it->second.index && v[size_t(x)] == occ_at(sub.endsequent(), it->second.side, it->second.index)) {
              other = x;
              break;
            }
          if (other < 0) throw std::logic_error("contract: no partner occurrence in premise");
          int a = std::min(other, it->second.index), b = std::max(other, it->second.index);
          return contract_rec(ctx, sub, it->second.side, a, b);
        }();
        prem_ids.push_back(graft(out, reorder_root(reduced, target)));
      }
      break;
    }
    default: {
      // inversion route for the classical connectives
      InvSchema sch = inv_schema(f, side);
      if (sch.rule != n.rule) throw std::logic_error("contract: principal rule mismatch");
      for (int k = 0; k < int(n.premises.size()); k++) {
        auto it = where.find(k);
        if (it == where.end()) throw std::logic_error("contract: copy not mapped");
        Proof sub = subproof(p, n.premises[size_t(k)]);
        Sequent target = remove_occ(sub.endsequent(), it->second.side, it->second.index);
        std::vector<Proof> inv = invert_rec(ctx, sub, it->second.side, it->second.index);
        prem_ids.push_back(graft(out, contract_to(inv[size_t(k)], target)));
      }
      break;
    }
  }
  Sequent concl = remove_occ(n.sequent, side, copy_idx);
  PrincipalRef pr = shift_principal(n.principal, side, copy_idx);
  out.root = add_node(out, n.rule, std::move(concl), pr, std::move(prem_ids));
  return out;
}

Proof contract_rec(Ctx& ctx, const Proof& p, Side side, int i, int j) {
  ctx.tick();
  if (i > j) std::swap(i, j);
  const ProofNode& n = p.at(p.root);
  if (occ_at(n.sequent, side, i) != occ_at(n.sequent, side, j))
    throw std::invalid_argument("contract: occurrences differ");
  if (n.rule == Rule::Ax || n.rule == Rule::BotL) {
    Proof out;
    out.root = add_node(out, n.rule, remove_occ(n.sequent, side, j),
                        shift_principal(n.principal, side, j), {});
    return out;
  }
  RuleMatch m = match_node(p, p.root);
  Occ oi{side, i}, oj{side, j};
  if (occ_weakened(m, oj)) return rebuild_without(p, side, j);
  if (occ_weakened(m, oi)) return rebuild_without(p, side, i);
  bool ip = occ_is_principal(m, oi), jp = occ_is_principal(m, oj);
  if (ip || jp) {
    int pr_idx = ip ? i : j;
    int copy_idx = ip ? j : i;
    return contract_principal_case(ctx, p, m, side, pr_idx, copy_idx);
  }
  // both side formulas: contract inside every premise that carries both
  auto mi = mapped_occs(m, oi), mj = mapped_occs(m, oj);
  std::map<int, Occ> wi, wj;
  for (auto [k, o] : mi) wi[k] = o;
  for (auto [k, o] : mj) wj[k] = o;
  Proof out;
  std::vector<int> prem_ids;
  for (int k = 0; k < int(n.premises.size()); k++) {
    Proof sub = subproof(p, n.premises[size_t(k)]);
    auto a = wi.find(k), b = wj.find(k);
    if (a != wi.end() && b != wj.end()) {
      if (a->second.side != b->second.side) throw std::logic_error("contract: mapped sides differ");
      prem_ids.push_back(graft(out, contract_rec(ctx, sub, a->second.side,
                                                 std::min(a->second.index, b->second.index),
                                                 std::max(a->second.index, b->second.index))));
    } else if (a == wi.end() && b == wj.end()) {
      prem_ids.push_back(graft(out, sub));
    } else {
      throw std::logic_error("contract: only one copy mapped into a premise");
    }
  }
  out.root = add_node(out, n.rule, remove_occ(n.sequent, side, j), shift_principal(n.principal, side, j),
                      std::move(prem_ids));
  return out;
}

}  // namespace

Proof contract_occurrences(const Proof& p, Side side, int i, int j) {
  Ctx ctx;
  return contract_rec(ctx, p, side, i, j);
}

Proof contract(const Proof& p, const Formula* f, Side side) {
  const Sequent& s = p.endsequent();
  const auto& v = side == Side::Ant ? s.ant : s.suc;
  int i = -1, j = -1;
  for (int x = 0; x < int(v.size()); x++) {
    if (v[size_t(x)] != f) continue;
    if (i < 0) i = x;
    else { j = x; break; }
  }
  if (j < 0) throw std::invalid_argument("contract: formula does not occur twice: " + render(f));
  return contract_occurrences(p, side, i, j);
}

Proof contract_to(const Proof& p, const Sequent& target) {
  Proof cur = p;
  Ctx ctx;
  for (Side side : {Side::Ant, Side::Suc}) {
    auto count = [&](const std::vector<const Formula*>& v) {
      std::map<const Formula*, int> c;
      for (auto* f : v) c[f]++;
      return c;
    };
    const auto& tv = side == Side::Ant ? target.ant : target.suc;
    std::map<const Formula*, int> want = count(tv);
    bool again = true;
    while (again) {
      again = false;
      const Sequent& s = cur.endsequent();
      const auto& v = side == Side::Ant ? s.ant : s.suc;
      std::map<const Formula*, int> have = count(v);
      for (auto& [f, c] : have) {
        int w = want.count(f) ? want[f] : 0;
        if (c > w) {
          if (w == 0)
            throw std::invalid_argument("contract_to: surplus formula not in target: " + render(f));
          cur = contract(cur, f, side);
          again = true;
          break;
        }
        if (c < w) throw std::invalid_argument("contract_to: target needs more copies of " + render(f));
      }
    }
  }
  return reorder_root(cur, target);
}

// ---------------------------------------------------------------------------
// Cut elimination (context-splitting core + contraction at the interface)
// ---------------------------------------------------------------------------

namespace {

Sequent cut_target(const Sequent& l, int lidx, const Sequent& r, int ridx) {
  Sequent t;
  t.ant = l.ant;
  Sequent rr = remove_occ(r, Side::Ant, ridx);
  t.ant.insert(t.ant.end(), rr.ant.begin(), rr.ant.end());
  Sequent ll = remove_occ(l, Side::Suc, lidx);
  t.suc = ll.suc;
  t.suc.insert(t.suc.end(), r.suc.begin(), r.suc.end());
  return t;
}

Proof make_axiom(const Sequent& s) {
  auto r = axiom_rule(s);
  if (!r) throw std::logic_error("make_axiom: not an axiom sequent");
  Proof out;
  out.root = add_node(out, *r, s, {}, {});
  return out;
}

// p proves some sequent; produce a proof of `target` (multiset superset via
// weakening, then contraction of duplicates, then reordering).
Proof adjust_to(const Proof& p, const Sequent& target) {
  // weaken in whatever is missing
  std::map<const Formula*, int> have_a, have_s, want_a, want_s;
  const Sequent& s = p.endsequent();
  for (auto* f : s.ant) have_a[f]++;
  for (auto* f : s.suc) have_s[f]++;
  for (auto* f : target.ant) want_a[f]++;
  for (auto* f : target.suc) want_s[f]++;
  Proof cur = p;
  for (auto& [f, w] : want_a)
    for (int k = have_a[f]; k < w; k++) cur = weaken(cur, f, Side::Ant);
  for (auto& [f, w] : want_s)
    for (int k = have_s[f]; k < w; k++) cur = weaken(cur, f, Side::Suc);
  return contract_to(cur, target);
}

Proof cut_adm(Ctx& ctx, const Proof& pL, int lidx, const Proof& pR, int ridx, const Formula* A);

// Removes a succedent occurrence that is never principal anywhere along its
// history (bottom on the right qualifies: no rule introduces it there).
Proof drop_passive_suc(const Proof& p, int idx) {
  const ProofNode& n = p.at(p.root);
  if (n.rule == Rule::Ax || n.rule == Rule::BotL) {
    Proof out;
    out.root = add_node(out, n.rule, remove_occ(n.sequent, Side::Suc, idx),
                        shift_principal(n.principal, Side::Suc, idx), {});
    if (!axiom_rule(out.at(out.root).sequent))
      throw std::logic_error("drop_passive_suc removed the axiom justification");
    return out;
  }
  RuleMatch m = match_node(p, p.root);
  Occ occ{Side::Suc, idx};
  if (occ_is_principal(m, occ))
    throw std::logic_error("drop_passive_suc hit a principal occurrence");
  if (occ_weakened(m, occ)) return rebuild_without(p, Side::Suc, idx);
  auto maps = mapped_occs(m, occ);
  std::map<int, Occ> where;
  for (auto [k, o] : maps) where[k] = o;
  Proof out;
  std::vector<int> prem_ids;
  for (int k = 0; k < int(n.premises.size()); k++) {
    Proof sub = subproof(p, n.premises[size_t(k)]);
    auto it = where.find(k);
    if (it == where.end()) throw std::logic_error("drop_passive_suc: occurrence not mapped");
    prem_ids.push_back(graft(out, drop_passive_suc(sub, it->second.index)));
  }
  out.root = add_node(out, n.rule, remove_occ(n.sequent, Side::Suc, idx),
                      shift_principal(n.principal, Side::Suc, idx), std::move(prem_ids));
  return out;
}

// Both designated occurrences principal: one case per connective.
Proof cut_principal(Ctx& ctx, const Proof& pL, int lidx, const Proof& pR, int ridx,
                    const Formula* A, const RuleMatch& mL, const RuleMatch& mR) {
  const ProofNode& nL = pL.at(pL.root);
  const ProofNode& nR = pR.at(pR.root);
  Sequent target = cut_target(nL.sequent, lidx, nR.sequent, ridx);
  switch (A->conn) {
    case Conn::Implies: {
      // pL ends (=> ->), pR ends (-> =>)
      Proof PL = subproof(pL, nL.premises[0]);
      Occ aI = active_occ(mL, 0, Path{0});
      Occ bI = active_occ(mL, 0, Path{1});
      Proof P0 = subproof(pR, nR.premises[0]);
      Occ a0 = active_occ(mR, 0, Path{0});
      Proof P1 = subproof(pR, nR.premises[1]);
      Occ b1 = active_occ(mR, 1, Path{1});
      Proof cut1 = cut_adm(ctx, P0, a0.index, PL, aI.index, A->left);
      int bX = int(P0.endsequent().suc.size()) - 1 + bI.index;
      Proof cut2 = cut_adm(ctx, cut1, bX, P1, b1.index, A->right);
      return contract_to(cut2, target);
    }
    case Conn::Not: {
      Proof PL = subproof(pL, nL.premises[0]);
      Occ aI = active_occ(mL, 0, Path{0});  // antecedent of PL
      Proof PR = subproof(pR, nR.premises[0]);
      Occ a0 = active_occ(mR, 0, Path{0});  // succedent of PR
      Proof cut1 = cut_adm(ctx, PR, a0.index, PL, aI.index, A->left);
      return contract_to(cut1, target);
    }
    case Conn::And: {
      Proof PL0 = subproof(pL, nL.premises[0]);
      Occ aL = active_occ(mL, 0, Path{0});
      Proof PL1 = subproof(pL, nL.premises[1]);
      Occ bL = active_occ(mL, 1, Path{1});
      Proof PR = subproof(pR, nR.premises[0]);
      Occ aR = active_occ(mR, 0, Path{0});
      Occ bR = active_occ(mR, 0, Path{1});
      Proof cut1 = cut_adm(ctx, PL0, aL.index, PR, aR.index, A->left);
      int bX = int(PL0.endsequent().ant.size()) + bR.index - (aR.index < bR.index ? 1 : 0);
      Proof cut2 = cut_adm(ctx, PL1, bL.index, cut1, bX, A->right);
      return contract_to(cut2, target);
    }
    case Conn::Or: {
      Proof PL = subproof(pL, nL.premises[0]);
      Occ aL = active_occ(mL, 0, Path{0});
      Occ bL = active_occ(mL, 0, Path{1});
      Proof PR0 = subproof(pR, nR.premises[0]);
      Occ aR = active_occ(mR, 0, Path{0});
      Proof PR1 = subproof(pR, nR.premises[1]);
      Occ bR = active_occ(mR, 1, Path{1});
      Proof cut1 = cut_adm(ctx, PL, aL.index, PR0, aR.index, A->left);
      int bX = bL.index - (aL.index < bL.index ? 1 : 0);
      Proof cut2 = cut_adm(ctx, cut1, bX, PR1, bR.index, A->right);
      return contract_to(cut2, target);
    }
    case Conn::Box: {
      // pL ends (=> []), pR ends ([] =>) on the same box
      Proof TL = subproof(pL, nL.premises[0]);
      Proof TR = subproof(pR, nR.premises[0]);
      Occ copy = active_occ(mR, 0, Path{});   // contraction copy of []A0 in TR
      Occ body = active_occ(mR, 0, Path{0});  // A0 in TR
      Proof step1 = cut_adm(ctx, pL, lidx, TR, copy.index, A);
      int aX = int(nL.sequent.ant.size()) + body.index - (copy.index < body.index ? 1 : 0);
      Proof step2 = cut_adm(ctx, TL, 0, step1, aX, A->left);
      return contract_to(step2, target);
    }
    default:
      throw std::logic_error("cut on an atomic principal formula");
  }
}

Proof cut_adm(Ctx& ctx, const Proof& pL, int lidx, const Proof& pR, int ridx, const Formula* A) {
  ctx.tick();
  const ProofNode& nL = pL.at(pL.root);
  const ProofNode& nR = pR.at(pR.root);
  if (occ_at(nL.sequent, Side::Suc, lidx) != A || occ_at(nR.sequent, Side::Ant, ridx) != A)
    throw std::logic_error("cut_adm: designated occurrences do not carry the cut formula");
  Sequent target = cut_target(nL.sequent, lidx, nR.sequent, ridx);
  if (axiom_rule(target)) return make_axiom(target);
  if (A->conn == Conn::Bottom) {
    // bottom is never principal on the right; strip it from the left premise
    return adjust_to(drop_passive_suc(subproof(pL, pL.root), lidx), target);
  }
  if (nL.rule == Rule::Ax || nL.rule == Rule::BotL) {
    // the axiom must involve the designated occurrence: A atomic, A in pL.ant
    return adjust_to(subproof(pR, pR.root), target);
  }
  if (nR.rule == Rule::Ax || nR.rule == Rule::BotL) {
    return adjust_to(subproof(pL, pL.root), target);
  }
  RuleMatch mL = match_node(pL, pL.root);
  RuleMatch mR = match_node(pR, pR.root);
  Occ ol{Side::Suc, lidx}, orr{Side::Ant, ridx};
  bool l_principal = occ_is_principal(mL, ol);
  bool r_principal = occ_is_principal(mR, orr);

  if (!r_principal) {
    if (nR.rule == Rule::BoxR) {
      if (occ_weakened(mR, orr)) {
        Proof pruned = rebuild_without(pR, Side::Ant, ridx);
        return adjust_to(pruned, target);
      }
      // A is boxed and passed into the premise: the key case, or a left
      // reduction when the left occurrence is not principal.
      if (l_principal) {
        // paper's rearrangement: move the cut up on the right
        Proof TL = subproof(pL, nL.premises[0]);
        Proof TR = subproof(pR, nR.premises[0]);
        Occ tr = mapped_occs(mR, orr)[0].second;
        Sequent mid_concl;
        mid_concl.ant = remove_occ(TR.endsequent(), Side::Ant, tr.index).ant;
        mid_concl.ant.insert(mid_concl.ant.end(), TL.endsequent().ant.begin(),
                             TL.endsequent().ant.end());
        mid_concl.suc = {TR.endsequent().suc[0], A};
        Proof mid;
        {
          int prem = graft(mid, TL);
          PrincipalRef pr;
          pr.has_occ = true;
          pr.side = Side::Suc;
          pr.index = 1;
          mid.root = add_node(mid, Rule::BoxR, mid_concl, pr, {prem});
        }
        Proof cutX = cut_adm(ctx, mid, 1, TR, tr.index, A);
        Sequent reduced;
        reduced.ant = mid_concl.ant;
        reduced.suc = {TR.endsequent().suc[0]};
        Proof inner = contract_to(cutX, reduced);
        // re-apply (=> []) to reach the target
        Proof out;
        int prem = graft(out, inner);
        PrincipalRef pr;
        pr.has_occ = true;
        pr.side = Side::Suc;
        pr.index = int(nL.sequent.suc.size()) - 1 + mR.principal.index;
        out.root = add_node(out, Rule::BoxR, target, pr, {prem});
        return out;
      }
      // fall through to the left reduction below
    } else {
      // permute the cut into the right premises
      auto maps = mapped_occs(mR, orr);
      std::map<int, Occ> where;
      for (auto [k, o] : maps) where[k] = o;
      Proof out;
      std::vector<int> prem_ids;
      for (int k = 0; k < int(nR.premises.size()); k++) {
        Proof sub = subproof(pR, nR.premises[size_t(k)]);
        auto it = where.find(k);
        if (it == where.end()) throw std::logic_error("cut: side occurrence not mapped (right)");
        prem_ids.push_back(graft(out, cut_adm(ctx, pL, lidx, sub, it->second.index, A)));
      }
      PrincipalRef pr = nR.principal;
      if (pr.has_occ) {
        if (pr.side == Side::Ant)
          pr.index = int(nL.sequent.ant.size()) + pr.index - (ridx < pr.index ? 1 : 0);
        else
          pr.index = int(nL.sequent.suc.size()) - 1 + pr.index;
      }
      out.root = add_node(out, nR.rule, target, pr, std::move(prem_ids));
      return out;
    }
  }
  if (!l_principal) {
    if (nL.rule == Rule::BoxR) {
      // in the diamond-free fragment every non-principal succedent formula
      // of (=> []) is a weakening formula
      Proof pruned = rebuild_without(pL, Side::Suc, lidx);
      return adjust_to(pruned, target);
    }
    auto maps = mapped_occs(mL, ol);
    std::map<int, Occ> where;
    for (auto [k, o] : maps) where[k] = o;
    Proof out;
    std::vector<int> prem_ids;
    for (int k = 0; k < int(nL.premises.size()); k++) {
      Proof sub = subproof(pL, nL.premises[size_t(k)]);
      auto it = where.find(k);
      if (it == where.end()) throw std::logic_error("cut: side occurrence not mapped (left)");
      prem_ids.push_back(graft(out, cut_adm(ctx, sub, it->second.index, pR, ridx, A)));
    }
    PrincipalRef pr = nL.principal;
    if (pr.has_occ && pr.side == Side::Suc) pr.index -= (lidx < pr.index ? 1 : 0);
    out.root = add_node(out, nL.rule, target, pr, std::move(prem_ids));
    return out;
  }
  return cut_principal(ctx, pL, lidx, pR, ridx, A, mL, mR);
}

}  // namespace

// ---------------------------------------------------------------------------
// BoxCut elimination
// ---------------------------------------------------------------------------

namespace {

Sequent boxcut_target(const Sequent& l, int ai, int bi, const Sequent& r, int ci, int di,
                      const Formula* boxB) {
  Sequent t;
  t.ant = l.ant;
  t.ant.insert(t.ant.end(), r.ant.begin(), r.ant.end());
  for (int x = 0; x < int(l.suc.size()); x++)
    if (x != ai && x != bi) t.suc.push_back(l.suc[size_t(x)]);
  for (int x = 0; x < int(r.suc.size()); x++)
    if (x != ci && x != di) t.suc.push_back(r.suc[size_t(x)]);
  t.suc.push_back(boxB);
  return t;
}

Proof boxcut_adm(Ctx& ctx, const Proof& pL, int ai, int bi, const Proof& pR, int ci, int di);

Proof boxcut_reduce_side(Ctx& ctx, const Proof& pSide, int xi, int yi, const Proof& pOther,
                         int oi, int oj, bool side_is_left, const RuleMatch& m,
                         const Sequent& target) {
  // recurse into the premises of pSide where both designated occurrences map
  const ProofNode& n = pSide.at(pSide.root);
  auto mx = mapped_occs(m, Occ{Side::Suc, xi});
  auto my = mapped_occs(m, Occ{Side::Suc, yi});
  std::map<int, Occ> wx, wy;
  for (auto [k, o] : mx) wx[k] = o;
  for (auto [k, o] : my) wy[k] = o;
  Proof out;
  std::vector<int> prem_ids;
  for (int k = 0; k < int(n.premises.size()); k++) {
    Proof sub = subproof(pSide, n.premises[size_t(k)]);
    auto a = wx.find(k), b = wy.find(k);
    if (a == wx.end() || b == wy.end())
      throw std::logic_error("boxcut: designated occurrences not mapped to a premise");
    Proof r = side_is_left
                  ? boxcut_adm(ctx, sub, a->second.index, b->second.index, pOther, oi, oj)
                  : boxcut_adm(ctx, pOther, oi, oj, sub, a->second.index, b->second.index);
    prem_ids.push_back(graft(out, r));
  }
  PrincipalRef pr = n.principal;
  if (pr.has_occ) {
    int lo = std::min(xi, yi), hi = std::max(xi, yi);
    if (side_is_left) {
      if (pr.side == Side::Suc)
        pr.index -= (lo < pr.index ? 1 : 0) + (hi < pr.index ? 1 : 0);
    } else {
      if (pr.side == Side::Ant) {
        pr.index += int(pOther.endsequent().ant.size());
      } else {
        pr.index = int(pOther.endsequent().suc.size()) - 2 + pr.index -
                   (lo < pr.index ? 1 : 0) - (hi < pr.index ? 1 : 0);
      }
    }
  }
  out.root = add_node(out, n.rule, target, pr, std::move(prem_ids));
  return out;
}

Proof boxcut_adm(Ctx& ctx, const Proof& pL, int ai, int bi, const Proof& pR, int ci, int di) {
  ctx.tick();
  const ProofNode& nL = pL.at(pL.root);
  const ProofNode& nR = pR.at(pR.root);
  const Formula* boxA = occ_at(nL.sequent, Side::Suc, ai);
  const Formula* boxB = occ_at(nL.sequent, Side::Suc, bi);
  const Formula* boxAB = occ_at(nR.sequent, Side::Suc, ci);
  Sequent target = boxcut_target(nL.sequent, ai, bi, nR.sequent, ci, di, boxB);
  if (axiom_rule(target)) return make_axiom(target);
  if (nL.rule == Rule::Ax || nL.rule == Rule::BotL) {
    // the axiom pair is atomic, hence it survives into the target
    throw std::logic_error("boxcut: axiom conclusion should have been caught by the target check");
  }
  if (nR.rule == Rule::Ax || nR.rule == Rule::BotL) {
    throw std::logic_error("boxcut: axiom conclusion should have been caught by the target check");
  }
  RuleMatch mL = match_node(pL, pL.root);
  RuleMatch mR = match_node(pR, pR.root);
  Occ oa{Side::Suc, ai}, oc{Side::Suc, ci};
  bool a_principal = occ_is_principal(mL, oa);
  bool c_principal = occ_is_principal(mR, oc);

  if (!a_principal) {
    if (occ_weakened(mL, oa)) {
      // case 1: remove the weakened []A; pL already proves G => D, []B
      Proof pruned = rebuild_without(pL, Side::Suc, ai);
      return adjust_to(pruned, target);
    }
    return boxcut_reduce_side(ctx, pL, ai, bi, pR, ci, di, true, mL, target);
  }
  if (!c_principal) {
    if (occ_weakened(mR, oc)) {
      Proof pruned = rebuild_without(pR, Side::Suc, ci);
      return adjust_to(pruned, target);
    }
    return boxcut_reduce_side(ctx, pR, ci, di, pL, ai, bi, false, mR, target);
  }
  // case 3: both principal
  Proof TL = subproof(pL, nL.premises[0]);  // []G_L => A
  Proof TR = subproof(pR, nR.premises[0]);  // []P_0 => A -> B
  if (TR.endsequent().suc.size() != 1 || TL.endsequent().suc.size() != 1)
    throw std::logic_error("boxcut: unexpected (=> []) premise shape");
  std::vector<Proof> inv = invert(TR, Side::Suc, 0);
  Proof TRi = inv[0];  // []P_0, A' => B'
  const Formula* Abody = TL.endsequent().suc[0];
  if (TRi.endsequent().ant.back() != Abody)
    throw std::logic_error("boxcut: cut formula bodies disagree (label mismatch)");
  Proof cut = cut_adm(ctx, TL, 0, TRi, int(TRi.endsequent().ant.size()) - 1, Abody);
  if (cut.endsequent().suc.size() != 1 || cut.endsequent().suc[0] != boxB->left)
    throw std::logic_error("boxcut: inner cut produced an unexpected sequent");
  Proof out;
  int prem = graft(out, cut);
  PrincipalRef pr;
  pr.has_occ = true;
  pr.side = Side::Suc;
  pr.index = int(target.suc.size()) - 1;
  out.root = add_node(out, Rule::BoxR, target, pr, {prem});
  (void)boxAB;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Box doubling
// ---------------------------------------------------------------------------

namespace {
Proof double_box_rec(Ctx& ctx, const Proof& p, int suc_index);

Proof eliminate_boxcut_node(Ctx& ctx, const Proof& p) {
  // root must be a BoxCut whose premises are arbitrary (possibly containing
  // further boxcuts); eliminates only the root node.
  const ProofNode& n = p.at(p.root);
  RuleMatch m = match_node(p, p.root);
  // the match already resolved the designated occurrences; read them off the links
  int oa = -1, ob0 = -1, oab = -1, ob1 = -1;
  for (const SymLink& l : m.links) {
    if (l.b.premise != -1 || !(l.b.occ == m.principal)) continue;
    if (l.kind == SymLink::Single && l.a_prefix.empty() && l.b_prefix.empty()) {
      if (l.a.premise == 0) oa = l.a.occ.index;
      if (l.a.premise == 1) oab = l.a.occ.index;
    }
    if (l.kind == SymLink::Subtree && l.a_prefix.empty() && l.b_prefix.empty()) {
      if (l.a.premise == 0) ob0 = l.a.occ.index;
      if (l.a.premise == 1) ob1 = l.a.occ.index;
    }
  }
  if (oa < 0 || ob0 < 0 || oab < 0 || ob1 < 0)
    throw std::logic_error("boxcut match did not resolve the designated occurrences");
  Proof adm = boxcut_adm(ctx, subproof(p, n.premises[0]), oa, ob0, subproof(p, n.premises[1]),
                         oab, ob1);
  return contract_to(adm, n.sequent);
}

Proof double_box_rec(Ctx& ctx, const Proof& p, int suc_index) {
  ctx.tick();
  const ProofNode& n = p.at(p.root);
  const Formula* f = occ_at(n.sequent, Side::Suc, suc_index);
  if (f->conn != Conn::Box) throw std::invalid_argument("double_box expects a boxed occurrence");
  const Formula* doubled = mk_box(f, f->ann);
  Sequent new_concl = n.sequent;
  new_concl.suc[size_t(suc_index)] = doubled;
  if (n.rule == Rule::Ax || n.rule == Rule::BotL) {
    Proof out;
    out.root = add_node(out, n.rule, new_concl, n.principal, {});
    return out;
  }
  RuleMatch m = match_node(p, p.root);
  Occ occ{Side::Suc, suc_index};
  if (occ_weakened(m, occ)) {
    Proof out;
    std::vector<int> prem;
    for (int q : n.premises) prem.push_back(graft(out, subproof(p, q)));
    out.root = add_node(out, n.rule, new_concl, n.principal, std::move(prem));
    return out;
  }
  if (occ_is_principal(m, occ)) {
    if (n.rule == Rule::BoxR) {
      // stack a second (=> []) on the bare premise
      Proof out;
      int prem = graft(out, subproof(p, n.premises[0]));
      Sequent midc;
      midc.ant = p.at(n.premises[0]).sequent.ant;
      midc.suc = {f};
      PrincipalRef pm;
      pm.has_occ = true;
      pm.side = Side::Suc;
      pm.index = 0;
      int mid = add_node(out, Rule::BoxR, midc, pm, {prem});
      out.root = add_node(out, Rule::BoxR, new_concl, n.principal, {mid});
      return out;
    }
    if (n.rule == Rule::BoxCut) {
      // no direct case: clear this boxcut first, then double in the result
      Proof cleared = eliminate_boxcut_node(ctx, p);
      return double_box_rec(ctx, cleared, suc_index);
    }
    throw std::logic_error("double_box: boxed principal of an unexpected rule");
  }
  // side occurrence: recurse into every premise carrying it
  auto maps = mapped_occs(m, occ);
  std::map<int, Occ> where;
  for (auto [k, o] : maps) where[k] = o;
  Proof out;
  std::vector<int> prem_ids;
  for (int k = 0; k < int(n.premises.size()); k++) {
    Proof sub = subproof(p, n.premises[size_t(k)]);
    auto it = where.find(k);
    if (it == where.end()) throw std::logic_error("double_box: occurrence not mapped");
    prem_ids.push_back(graft(out, double_box_rec(ctx, sub, it->second.index)));
  }
  // a boxcut's principal reference is its cut formula; occurrence shifts do not apply
  out.root = add_node(out, n.rule, new_concl, n.principal, std::move(prem_ids));
  return out;
}
}  // namespace

Proof double_box(const Proof& p, int suc_index) {
  require_no_diamond(p, "double_box");
  Ctx ctx;
  return double_box_rec(ctx, p, suc_index);
}

// ---------------------------------------------------------------------------
// Reports and drivers
// ---------------------------------------------------------------------------

namespace {

std::set<std::pair<int, int>> labeled_edge_pairs(const PrehistoricGraph& g) {
  std::set<std::pair<int, int>> out;
  auto label_of = [&](int v) { return std::stoi(g.vertex_names[size_t(v)].substr(1)); };
  for (const auto& e : g.edges) out.emplace(label_of(e.from), label_of(e.to));
  return out;
}

std::set<int> labels_in_formula(const Formula* f) {
  std::set<int> out;
  std::function<void(const Formula*)> rec = [&](const Formula* g) {
    if (g->conn == Conn::Box && g->ann.kind == AnnKind::Fam) out.insert(g->ann.index);
    if (g->left) rec(g->left);
    if (g->right) rec(g->right);
  };
  rec(f);
  return out;
}

CutStep check_step(const PrehistoricGraph& gin, const PrehistoricGraph& gout,
                   const std::set<int>& mediators) {
  CutStep step;
  auto in = labeled_edge_pairs(gin);
  auto out = labeled_edge_pairs(gout);
  for (auto [i, j] : out) {
    if (in.count({i, j})) continue;
    CutStep::NewEdge e{i, j, -1, false};
    for (int k : mediators) {
      if (in.count({i, k}) && in.count({k, j})) {
        e.via = k;
        e.justified = true;
        break;
      }
    }
    if (!e.justified) step.all_justified = false;
    step.new_edges.push_back(e);
  }
  return step;
}

// Eliminates all Cut (or BoxCut) nodes of a labelled proof, innermost first,
// collecting per-step reports.
Proof eliminate_rec(Ctx& ctx, const Proof& p, int id, Rule kind, std::vector<CutStep>& steps) {
  const ProofNode& n = p.at(id);
  std::vector<Proof> prem;
  for (int q : n.premises) prem.push_back(eliminate_rec(ctx, p, q, kind, steps));
  if (n.rule != kind) {
    Proof out;
    std::vector<int> ids;
    for (auto& q : prem) ids.push_back(graft(out, q));
    out.root = add_node(out, n.rule, n.sequent, n.principal, std::move(ids));
    return out;
  }
  // node to eliminate, premises already clean
  Proof local;
  std::vector<int> ids;
  for (auto& q : prem) ids.push_back(graft(local, q));
  local.root = add_node(local, n.rule, n.sequent, n.principal, std::move(ids));
  PrehistoricGraph gin = prehistoric_graph(local, GraphMode::Labeled,
                                           kind == Rule::Cut ? CalculusVariant::G3sCut
                                                             : CalculusVariant::G3sBoxCut);
  Proof out;
  std::set<int> mediators;
  if (kind == Rule::Cut) {
    const Formula* A = local.at(local.root).principal.cut;
    int lidx = -1, ridx = -1;
    const Sequent& sl = prem[0].endsequent();
    const Sequent& sr = prem[1].endsequent();
    for (int i = 0; i < int(sl.suc.size()); i++)
      if (sl.suc[size_t(i)] == A) { lidx = i; break; }
    for (int i = 0; i < int(sr.ant.size()); i++)
      if (sr.ant[size_t(i)] == A) { ridx = i; break; }
    if (lidx < 0 || ridx < 0) throw std::logic_error("cut formula missing from premises");
    Proof adm = cut_adm(ctx, prem[0], lidx, prem[1], ridx, A);
    out = contract_to(adm, n.sequent);
    mediators = labels_in_formula(A);
  } else {
    out = eliminate_boxcut_node(ctx, local);
    RuleMatch m = match_node(local, local.root);
    mediators = labels_in_formula(mk_box(m.boxcut_impl));
    // the boxed actives of the node share the principal's family label
    const Formula* pf = occ_at(n.sequent, Side::Suc, m.principal.index);
    if (pf->ann.kind == AnnKind::Fam) mediators.insert(pf->ann.index);
  }
  PrehistoricGraph gout = prehistoric_graph(out, GraphMode::Labeled, CalculusVariant::G3sFull);
  steps.push_back(check_step(gin, gout, mediators));
  return out;
}

TransformReport run_elimination(const Proof& input, Rule kind, CalculusVariant variant) {
  require_no_diamond(input, kind == Rule::Cut ? "cut elimination" : "boxcut elimination");
  TransformReport rep;
  Proof labeled = label_by_family(input, variant);
  rep.input_graph = prehistoric_graph(labeled, GraphMode::Labeled, variant);
  Ctx ctx;
  rep.output = eliminate_rec(ctx, labeled, labeled.root, kind, rep.steps);
  rep.output_graph = prehistoric_graph(rep.output, GraphMode::Labeled, CalculusVariant::G3sFull);
  for (const auto& s : rep.steps)
    if (!s.all_justified) rep.all_new_edges_justified = false;
  rep.input_cyclic = find_cycle(rep.input_graph, false).has_value();
  rep.output_cyclic = find_cycle(rep.output_graph, false).has_value();
  return rep;
}

}  // namespace

TransformReport eliminate_cuts(const Proof& p) {
  return run_elimination(p, Rule::Cut, CalculusVariant::G3sCut);
}

TransformReport eliminate_cut(const Proof& pL, const Proof& pR, const Formula* a) {
  // build the context-sharing cut node and reuse the driver
  const Sequent& sl = pL.endsequent();
  const Sequent& sr = pR.endsequent();
  int lidx = -1, ridx = -1;
  for (int i = 0; i < int(sl.suc.size()); i++)
    if (sl.suc[size_t(i)] == a) { lidx = i; break; }
  for (int i = 0; i < int(sr.ant.size()); i++)
    if (sr.ant[size_t(i)] == a) { ridx = i; break; }
  if (lidx < 0) throw std::invalid_argument("left premise lacks the cut formula in its succedent");
  if (ridx < 0) throw std::invalid_argument("right premise lacks the cut formula in its antecedent");
  Sequent concl;
  concl.ant = sl.ant;
  concl.suc = remove_occ(sl, Side::Suc, lidx).suc;
  Proof combined;
  int l = graft(combined, pL);
  int r = graft(combined, pR);
  PrincipalRef pr;
  pr.cut = a;
  combined.root = add_node(combined, Rule::Cut, concl, pr, {l, r});
  RuleMatch m = match_rule(Rule::Cut, concl, pr, {&sl, &sr}, AxiomChecker::tautology());
  if (!m.ok) throw std::invalid_argument("cut premises do not share contexts: " + m.error);
  return eliminate_cuts(combined);
}

TransformReport eliminate_boxcuts(const Proof& p) {
  return run_elimination(p, Rule::BoxCut, CalculusVariant::G3sBoxCut);
}

TransformReport eliminate_boxcut(const Proof& pL, const Proof& pR, const Formula* a,
                                 const Formula* b) {
  const Sequent& sl = pL.endsequent();
  const Sequent& sr = pR.endsequent();
  const Formula* impl = mk_implies(a, b);
  // conclusion: left sequent without its []A occurrence
  int ai = -1;
  for (int i = 0; i < int(sl.suc.size()); i++)
    if (sl.suc[size_t(i)]->conn == Conn::Box && erase_annotations(sl.suc[size_t(i)]->left) == erase_annotations(a)) {
      ai = i;
      break;
    }
  if (ai < 0) throw std::invalid_argument("left premise lacks the boxed cut antecedent");
  Sequent concl;
  concl.ant = sl.ant;
  concl.suc = remove_occ(sl, Side::Suc, ai).suc;
  Proof combined;
  int l = graft(combined, pL);
  int r = graft(combined, pR);
  PrincipalRef pr;
  pr.cut = impl;
  combined.root = add_node(combined, Rule::BoxCut, concl, pr, {l, r});
  RuleMatch m = match_rule(Rule::BoxCut, concl, pr, {&sl, &sr}, AxiomChecker::tautology());
  if (!m.ok) throw std::invalid_argument("boxcut premises do not fit the rule: " + m.error);
  return eliminate_boxcuts(combined);
}

// ---------------------------------------------------------------------------
// Forgetful projection of G3lp proofs
// ---------------------------------------------------------------------------

namespace {

// Projection of one formula occurrence: t:A becomes a box labelled with the
// term family of the occurrence's Proof position.
const Formula* project_occ_formula(const Correspondence& c, int occ, const Formula* f, Path& path) {
  switch (f->conn) {
    case Conn::Bottom:
    case Conn::Atom:
      return f;
    case Conn::Implies:
    case Conn::And:
    case Conn::Or: {
      path.push_back(0);
      const Formula* l = project_occ_formula(c, occ, f->left, path);
      path.back() = 1;
      const Formula* r = project_occ_formula(c, occ, f->right, path);
      path.pop_back();
      return f->conn == Conn::Implies ? mk_implies(l, r)
           : f->conn == Conn::And ? mk_and(l, r)
                                  : mk_or(l, r);
    }
    case Conn::Not: {
      path.push_back(0);
      const Formula* l = project_occ_formula(c, occ, f->left, path);
      path.pop_back();
      return mk_not(l);
    }
    case Conn::Proof: {
      int sym = c.table.sym_at(occ, path);
      if (sym < 0) throw std::logic_error("projection: untracked term position");
      int cls = c.class_of_sym[size_t(sym)];
      path.push_back(0);
      const Formula* l = project_occ_formula(c, occ, f->left, path);
      path.pop_back();
      return mk_box(l, BoxAnn{AnnKind::Fam, cls});
    }
    case Conn::Box:
    case Conn::Diamond:
      throw std::invalid_argument("projection expects an LP proof");
  }
  return f;
}

Sequent project_sequent(const Correspondence& c, const Proof& p, int node) {
  const Sequent& s = p.at(node).sequent;
  Sequent out;
  for (int side = 0; side < 2; side++) {
    const auto& v = side == 0 ? s.ant : s.suc;
    auto& o = side == 0 ? out.ant : out.suc;
    for (int i = 0; i < int(v.size()); i++) {
      int occ = c.table.occ_of(node, side == 0 ? Side::Ant : Side::Suc, i);
      Path path;
      o.push_back(project_occ_formula(c, occ, v[size_t(i)], path));
    }
  }
  return out;
}

Proof project_rec(Ctx& ctx, const Proof& p, const Correspondence& c, int id) {
  ctx.tick();
  const ProofNode& n = p.at(id);
  Sequent concl = project_sequent(c, p, id);
  switch (n.rule) {
    case Rule::Ax:
    case Rule::BotL: {
      Proof out;
      out.root = add_node(out, n.rule, std::move(concl), n.principal, {});
      return out;
    }
    case Rule::NotL:
    case Rule::NotR:
    case Rule::AndL:
    case Rule::AndR:
    case Rule::OrL:
    case Rule::OrR:
    case Rule::ImpL:
    case Rule::ImpR: {
      Proof out;
      std::vector<int> ids;
      for (int q : n.premises) ids.push_back(graft(out, project_rec(ctx, p, c, q)));
      out.root = add_node(out, n.rule, std::move(concl), n.principal, std::move(ids));
      return out;
    }
    case Rule::ColonL: {
      Proof out;
      int q = graft(out, project_rec(ctx, p, c, n.premises[0]));
      out.root = add_node(out, Rule::BoxL, std::move(concl), n.principal, {q});
      return out;
    }
    case Rule::ColonRc:
    case Rule::ColonRt: {
      Proof out;
      int q = graft(out, project_rec(ctx, p, c, n.premises[0]));
      out.root = add_node(out, Rule::BoxR, std::move(concl), n.principal, {q});
      return out;
    }
    case Rule::PlusR: {
      // the three succedent copies project to one box each; contract to the goal
      Proof sub = project_rec(ctx, p, c, n.premises[0]);
      return contract_to(sub, concl);
    }
    case Rule::DotR: {
      // schema premise 0 carries s:(A -> B); the boxcut wants []A first
      Proof p0 = project_rec(ctx, p, c, n.premises[0]);
      Proof p1 = project_rec(ctx, p, c, n.premises[1]);
      const Formula* principal = occ_at(concl, n.principal.side, n.principal.index);
      const Formula* Bp = principal->left;
      // find the projected s:(A -> B): a box whose body is an implication to B
      const Formula* implp = nullptr;
      {
        std::map<const Formula*, int> concl_count;
        for (auto* g : concl.suc) concl_count[g]++;
        for (auto* g : p0.endsequent().suc) {
          if (concl_count[g] > 0) { concl_count[g]--; continue; }
          if (g->conn == Conn::Box && g->left->conn == Conn::Implies && g->left->right == Bp)
            implp = g->left;
        }
      }
      if (!implp) throw std::logic_error("projection: missing boxed implication premise");
      Proof out;
      int i1 = graft(out, p1);  // Gamma => Delta, []A, []B
      int i0 = graft(out, p0);  // Gamma => Delta, [](A->B), []B
      PrincipalRef pr = n.principal;  // same position as the source principal
      pr.cut = implp;
      out.root = add_node(out, Rule::BoxCut, std::move(concl), pr, {i1, i0});
      return out;
    }
    case Rule::BangR: {
      Proof sub = project_rec(ctx, p, c, n.premises[0]);
      // locate the projected t:A occurrence (image of the contraction formula)
      RuleMatch m = match_node(p, id);
      Occ tA = active_occ(m, 0, Path{0});
      Proof doubled = double_box_rec(ctx, sub, tA.index);
      return contract_to(doubled, concl);
    }
    default:
      throw std::invalid_argument("projection: unexpected rule in a G3lp proof");
  }
}

}  // namespace

ProjectionReport project_proof(const Proof& p, const AxiomChecker& ax) {
  ValidationReport vr = check_proof(p, CalculusVariant::G3lp, ax);
  if (!vr.ok) throw std::invalid_argument("project_proof needs a valid G3lp proof: " + vr.summary());
  ProjectionReport rep;
  Correspondence c = build_correspondence(p, CalculusVariant::G3lp, ax);
  Ctx ctx;
  rep.output = project_rec(ctx, p, c, p.root);
  rep.source_graph = prehistoric_graph(p, GraphMode::LpTerm, CalculusVariant::G3lp);
  rep.output_graph = prehistoric_graph(rep.output, GraphMode::Labeled, CalculusVariant::G3sBoxCut);

  // family map: output box families -> labels (source term families). The
  // correspondence runs over the labelled output so that occurrence pairing
  // among equal-looking formulas follows the construction, not the greedy
  // interchange convention.
  Correspondence oc = build_correspondence(rep.output, CalculusVariant::G3sBoxCut);
  for (int s = 0; s < oc.table.total; s++) {
    const Formula* sub = oc.table.sym_subformula(s);
    int cls = oc.class_of_sym[size_t(s)];
    if (sub->conn != Conn::Box || sub->ann.kind != AnnKind::Fam) {
      rep.map_total = false;
      continue;
    }
    rep.family_map[cls].insert(sub->ann.index);
  }
  for (auto& [cls, labels] : rep.family_map)
    if (labels.size() != 1) rep.map_single_valued = false;

  // edge mapping: i < j in the projection implies ĩ = j̃ or ĩ < j̃ in the source
  auto out_edges = labeled_edge_pairs(rep.output_graph);
  auto src_edges = labeled_edge_pairs(rep.source_graph);
  for (auto [i, j] : out_edges) {
    if (i == j) continue;
    if (!src_edges.count({i, j})) {
      // labels ARE term families, so equal-or-related reduces to this check
      rep.edge_map_ok = rep.edge_map_ok && false;
    }
  }
  return rep;
}

}  // namespace prehist
