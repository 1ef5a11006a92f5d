#include "prehist/calculus.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <sstream>

namespace prehist {

const char* variant_name(CalculusVariant v) {
  switch (v) {
    case CalculusVariant::G3sMin: return "g3s-min";
    case CalculusVariant::G3sFull: return "g3s-full";
    case CalculusVariant::G3sCut: return "g3s-cut";
    case CalculusVariant::G3sBoxCut: return "g3s-boxcut";
    case CalculusVariant::G3lp: return "g3lp";
  }
  return "?";
}

std::optional<CalculusVariant> variant_from_name(const std::string& s) {
  for (CalculusVariant v : {CalculusVariant::G3sMin, CalculusVariant::G3sFull, CalculusVariant::G3sCut,
                            CalculusVariant::G3sBoxCut, CalculusVariant::G3lp})
    if (s == variant_name(v)) return v;
  return std::nullopt;
}

bool rule_allowed(Rule r, CalculusVariant v) {
  switch (r) {
    case Rule::Ax:
    case Rule::BotL:
    case Rule::ImpL:
    case Rule::ImpR:
      return true;
    case Rule::NotL:
    case Rule::NotR:
    case Rule::AndL:
    case Rule::AndR:
    case Rule::OrL:
    case Rule::OrR:
      return v != CalculusVariant::G3sMin;
    case Rule::BoxL:
    case Rule::BoxR:
      return v != CalculusVariant::G3lp;
    case Rule::DiaL:
    case Rule::DiaR:
      return v == CalculusVariant::G3sFull || v == CalculusVariant::G3sCut ||
             v == CalculusVariant::G3sBoxCut;
    case Rule::Cut:
      return v == CalculusVariant::G3sCut;
    case Rule::BoxCut:
      return v == CalculusVariant::G3sBoxCut;
    case Rule::ColonL:
    case Rule::ColonRc:
    case Rule::ColonRt:
    case Rule::BangR:
    case Rule::PlusR:
    case Rule::DotR:
      return v == CalculusVariant::G3lp;
  }
  return false;
}

// ---------------------------------------------------------------------------
// LP axioms
// ---------------------------------------------------------------------------

bool is_propositional_tautology(const Formula* f) {
  // Maximal Proof/Box/Diamond subformulas and atoms become variables.
  std::map<const Formula*, int> var;
  std::function<void(const Formula*)> scan = [&](const Formula* g) {
    switch (g->conn) {
      case Conn::Bottom:
        return;
      case Conn::Atom:
      case Conn::Proof:
      case Conn::Box:
      case Conn::Diamond:
        var.emplace(g, int(var.size()));
        return;
      case Conn::Not:
        scan(g->left);
        return;
      default:
        scan(g->left);
        scan(g->right);
        return;
    }
  };
  scan(f);
  if (var.size() > 20) throw std::invalid_argument("tautology check: too many distinct atoms");
  std::function<bool(const Formula*, uint32_t)> eval = [&](const Formula* g, uint32_t bits) -> bool {
    switch (g->conn) {
      case Conn::Bottom: return false;
      case Conn::Atom:
      case Conn::Proof:
      case Conn::Box:
      case Conn::Diamond: return (bits >> var.at(g)) & 1;
      case Conn::Not: return !eval(g->left, bits);
      case Conn::And: return eval(g->left, bits) && eval(g->right, bits);
      case Conn::Or: return eval(g->left, bits) || eval(g->right, bits);
      case Conn::Implies: return !eval(g->left, bits) || eval(g->right, bits);
    }
    return false;
  };
  for (uint32_t bits = 0; bits < (1u << var.size()); bits++)
    if (!eval(f, bits)) return false;
  return true;
}

int AxiomChecker::axiom_a1_to_a4(const Formula* f) {
  if (f->conn != Conn::Implies) return 0;
  const Formula* l = f->left;
  const Formula* r = f->right;
  // A1: t:F -> F
  if (l->conn == Conn::Proof && l->left == r) return 1;
  // A2: s:(F -> G) -> (t:F -> s*t:G)
  if (l->conn == Conn::Proof && l->left->conn == Conn::Implies && r->conn == Conn::Implies &&
      r->left->conn == Conn::Proof && r->right->conn == Conn::Proof) {
    const Term* s = l->term;
    const Formula* F = l->left->left;
    const Formula* G = l->left->right;
    const Term* t = r->left->term;
    if (r->left->left == F && r->right->term == mk_app(s, t) && r->right->left == G) return 2;
  }
  // A3: t:F -> !t:(t:F)
  if (l->conn == Conn::Proof && r->conn == Conn::Proof && r->term->op == TermOp::Bang &&
      r->term->left == l->term && r->left == l)
    return 3;
  // A4: s:F -> (s+t):F  and  t:F -> (s+t):F
  if (l->conn == Conn::Proof && r->conn == Conn::Proof && r->term->op == TermOp::Sum &&
      r->left == l->left && (r->term->left == l->term || r->term->right == l->term))
    return 4;
  return 0;
}

namespace {
bool match_schema(const Formula* schema, const Formula* f, std::map<std::string, const Formula*>& fvars,
                  std::map<std::string, const Term*>& tvars);

bool match_schema_term(const Term* schema, const Term* t, std::map<std::string, const Term*>& tvars) {
  switch (schema->op) {
    case TermOp::Const:
    case TermOp::Var: {
      auto [it, inserted] = tvars.emplace(schema->name, t);
      return inserted || it->second == t;
    }
    case TermOp::App:
      return t->op == TermOp::App && match_schema_term(schema->left, t->left, tvars) &&
             match_schema_term(schema->right, t->right, tvars);
    case TermOp::Sum:
      return t->op == TermOp::Sum && match_schema_term(schema->left, t->left, tvars) &&
             match_schema_term(schema->right, t->right, tvars);
    case TermOp::Bang:
      return t->op == TermOp::Bang && match_schema_term(schema->left, t->left, tvars);
  }
  return false;
}

bool match_schema(const Formula* schema, const Formula* f, std::map<std::string, const Formula*>& fvars,
                  std::map<std::string, const Term*>& tvars) {
  switch (schema->conn) {
    case Conn::Atom: {
      auto [it, inserted] = fvars.emplace(schema->atom, f);
      return inserted || it->second == f;
    }
    case Conn::Bottom:
      return f->conn == Conn::Bottom;
    case Conn::Not:
      return f->conn == Conn::Not && match_schema(schema->left, f->left, fvars, tvars);
    case Conn::Implies:
    case Conn::And:
    case Conn::Or:
      return f->conn == schema->conn && match_schema(schema->left, f->left, fvars, tvars) &&
             match_schema(schema->right, f->right, fvars, tvars);
    case Conn::Proof:
      return f->conn == Conn::Proof && match_schema_term(schema->term, f->term, tvars) &&
             match_schema(schema->left, f->left, fvars, tvars);
    case Conn::Box:
    case Conn::Diamond:
      return false;
  }
  return false;
}
}  // namespace

AxiomChecker AxiomChecker::schema_list(std::vector<const Formula*> schemas) {
  AxiomChecker a;
  a.mode = AxiomMode::SchemaList;
  a.schemas = std::move(schemas);
  return a;
}

std::vector<const Formula*> AxiomChecker::default_schemas() {
  static const char* texts[] = {
      "A -> (B -> A)",
      "(A -> (B -> C)) -> ((A -> B) -> (A -> C))",
      "A & B -> A",
      "A & B -> B",
      "A -> (B -> A & B)",
      "A -> A | B",
      "B -> A | B",
      "(A -> C) -> ((B -> C) -> (A | B -> C))",
      "(A -> B) -> ((A -> ~B) -> ~A)",
      "~~A -> A",
      "~A -> (A -> B)",
      "bot -> A",
  };
  std::vector<const Formula*> out;
  for (const char* t : texts) out.push_back(parse_formula(t, Language::Lp));
  return out;
}

bool AxiomChecker::is_a0(const Formula* f) const {
  if (mode == AxiomMode::Tautology) return is_propositional_tautology(f);
  for (const Formula* s : schemas) {
    std::map<std::string, const Formula*> fv;
    std::map<std::string, const Term*> tv;
    if (match_schema(s, f, fv, tv)) return true;
  }
  return false;
}

bool AxiomChecker::is_lp_axiom(const Formula* f) const {
  return axiom_a1_to_a4(f) != 0 || is_a0(f);
}

// ---------------------------------------------------------------------------
// Rule matching
// ---------------------------------------------------------------------------

namespace {

const Formula* occ_formula(const Sequent& s, Occ o) {
  const auto& v = o.side == Side::Ant ? s.ant : s.suc;
  if (o.index < 0 || o.index >= int(v.size())) throw std::out_of_range("occurrence index");
  return v[size_t(o.index)];
}

struct Matcher {
  Rule rule;
  const Sequent& concl;
  const std::vector<const Sequent*>& prem;
  RuleMatch m;
  // consumption flags for conclusion occurrences
  std::vector<char> used_ant, used_suc;
  // consumption flags per premise
  std::vector<std::vector<char>> p_used_ant, p_used_suc;

  Matcher(Rule r, const Sequent& c, const std::vector<const Sequent*>& ps)
      : rule(r), concl(c), prem(ps) {
    used_ant.assign(c.ant.size(), 0);
    used_suc.assign(c.suc.size(), 0);
    for (const Sequent* s : ps) {
      p_used_ant.push_back(std::vector<char>(s->ant.size(), 0));
      p_used_suc.push_back(std::vector<char>(s->suc.size(), 0));
    }
  }

  [[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

  std::vector<char>& cflags(Side s) { return s == Side::Ant ? used_ant : used_suc; }
  std::vector<char>& pflags(int k, Side s) { return s == Side::Ant ? p_used_ant[size_t(k)] : p_used_suc[size_t(k)]; }
  const std::vector<const Formula*>& cside(Side s) const { return s == Side::Ant ? concl.ant : concl.suc; }
  const std::vector<const Formula*>& pside(int k, Side s) const {
    return s == Side::Ant ? prem[size_t(k)]->ant : prem[size_t(k)]->suc;
  }

  Occ take_principal(const PrincipalRef& pr, Conn want, const char* what) {
    if (!pr.has_occ) fail(std::string("rule needs a principal occurrence (") + what + ")");
    Occ o{pr.side, pr.index};
    const auto& v = cside(o.side);
    if (o.index < 0 || o.index >= int(v.size())) fail("principal index out of range");
    const Formula* f = v[size_t(o.index)];
    if (f->conn != want) fail(std::string("principal is not ") + what + ": " + render(f));
    cflags(o.side)[size_t(o.index)] = 2;  // principal mark
    m.principal = o;
    return o;
  }

  // First unconsumed occurrence of `f` on `side` of premise k; consume it.
  Occ take_premise(int k, Side side, const Formula* f, const char* what) {
    const auto& v = pside(k, side);
    auto& flags = pflags(k, side);
    for (int i = 0; i < int(v.size()); i++) {
      if (!flags[size_t(i)] && v[size_t(i)] == f) {
        flags[size_t(i)] = 1;
        return Occ{side, i};
      }
    }
    fail(std::string("premise ") + std::to_string(k) + " lacks " + what + " " + render(f));
  }

  template <typename Pred>
  Occ take_premise_pred(int k, Side side, Pred pred, const char* what) {
    const auto& v = pside(k, side);
    auto& flags = pflags(k, side);
    for (int i = 0; i < int(v.size()); i++) {
      if (!flags[size_t(i)] && pred(v[size_t(i)])) {
        flags[size_t(i)] = 1;
        return Occ{side, i};
      }
    }
    fail(std::string("premise ") + std::to_string(k) + " lacks " + what);
  }

  void link_active(int k, Occ pocc, Occ concl_occ, Path prefix) {
    m.links.push_back(SymLink{SymLink::Subtree, LocRef{k, pocc}, LocRef{-1, concl_occ}, {}, std::move(prefix)});
  }
  void link_cross_subtree(LocRef a, Path ap, LocRef b, Path bp) {
    m.links.push_back(SymLink{SymLink::Subtree, a, b, std::move(ap), std::move(bp)});
  }
  void link_cross_single(LocRef a, Path ap, LocRef b, Path bp) {
    m.links.push_back(SymLink{SymLink::Single, a, b, std::move(ap), std::move(bp)});
  }

  // Greedily match all remaining occurrences of premise k against unconsumed
  // conclusion occurrences with identical formulas (side formulas).
  void match_sides(int k) {
    for (Side side : {Side::Ant, Side::Suc}) {
      const auto& pv = pside(k, side);
      auto& pf = pflags(k, side);
      const auto& cv = cside(side);
      auto& cf = cflags(side);
      std::vector<char> local_used(cv.size(), 0);
      for (int i = 0; i < int(pv.size()); i++) {
        if (pf[size_t(i)]) continue;
        bool found = false;
        for (int j = 0; j < int(cv.size()); j++) {
          if (cf[size_t(j)] == 2 || local_used[size_t(j)]) continue;
          if (cv[size_t(j)] != pv[size_t(i)]) continue;
          local_used[size_t(j)] = 1;
          cf[size_t(j)] = 1;
          pf[size_t(i)] = 1;
          m.links.push_back(SymLink{SymLink::Subtree, LocRef{k, Occ{side, i}}, LocRef{-1, Occ{side, j}}, {}, {}});
          found = true;
          break;
        }
        if (!found)
          fail("premise formula " + render(pv[size_t(i)]) + " has no matching side formula in the conclusion");
      }
    }
  }

  // As match_sides but each premise occurrence must satisfy `pred`; used by
  // the context-restricted rules where the conclusion may add weakening.
  template <typename Pred>
  void match_sides_restricted(int k, Side side, Pred pred, const char* what) {
    const auto& pv = pside(k, side);
    auto& pf = pflags(k, side);
    const auto& cv = cside(side);
    auto& cf = cflags(side);
    for (int i = 0; i < int(pv.size()); i++) {
      if (pf[size_t(i)]) continue;
      if (!pred(pv[size_t(i)])) fail("premise formula " + render(pv[size_t(i)]) + " is not " + what);
      bool found = false;
      for (int j = 0; j < int(cv.size()); j++) {
        if (cf[size_t(j)]) continue;
        if (cv[size_t(j)] != pv[size_t(i)]) continue;
        cf[size_t(j)] = 1;
        pf[size_t(i)] = 1;
        m.links.push_back(SymLink{SymLink::Subtree, LocRef{k, Occ{side, i}}, LocRef{-1, Occ{side, j}}, {}, {}});
        found = true;
        break;
      }
      if (!found)
        fail("premise formula " + render(pv[size_t(i)]) + " does not occur in the conclusion");
    }
  }

  void expect_premise_exhausted(int k) {
    for (Side side : {Side::Ant, Side::Suc}) {
      const auto& pv = pside(k, side);
      const auto& pf = pflags(k, side);
      for (size_t i = 0; i < pv.size(); i++)
        if (!pf[i]) fail("premise formula " + render(pv[i]) + " is not justified by the rule shape");
    }
  }

  void finish(bool weakening_allowed) {
    for (Side side : {Side::Ant, Side::Suc}) {
      const auto& cv = cside(side);
      const auto& cf = cflags(side);
      for (int j = 0; j < int(cv.size()); j++) {
        if (!cf[size_t(j)]) {
          if (!weakening_allowed)
            fail("conclusion formula " + render(cv[size_t(j)]) + " is a weakening where the rule allows none");
          m.weakened.push_back(Occ{side, j});
        }
      }
    }
    m.ok = true;
  }
};

bool is_box(const Formula* f) { return f->conn == Conn::Box; }
bool is_diamond(const Formula* f) { return f->conn == Conn::Diamond; }

// Multiset difference a \ b (by interned pointer).
std::vector<const Formula*> mdiff(const std::vector<const Formula*>& a,
                                  const std::vector<const Formula*>& b) {
  std::map<const Formula*, int> count;
  for (auto* f : b) count[f]++;
  std::vector<const Formula*> out;
  for (auto* f : a) {
    auto it = count.find(f);
    if (it != count.end() && it->second > 0) it->second--;
    else out.push_back(f);
  }
  return out;
}

}  // namespace

RuleMatch match_rule(Rule rule, const Sequent& concl, const PrincipalRef& principal,
                     const std::vector<const Sequent*>& prem, const AxiomChecker& ax,
                     const Lexicon& lex) {
  Matcher M(rule, concl, prem);
  try {
    if (int(prem.size()) != rule_premise_count(rule))
      M.fail("rule expects " + std::to_string(rule_premise_count(rule)) + " premises");
    switch (rule) {
      case Rule::Ax: {
        // P atomic on both sides. An explicit principal designates the
        // succedent copy; otherwise the first match is used.
        bool found = false;
        for (int j = 0; j < int(concl.suc.size()) && !found; j++) {
          const Formula* f = concl.suc[size_t(j)];
          if (!f->is_atom()) continue;
          if (principal.has_occ && !(principal.side == Side::Suc && principal.index == j)) continue;
          for (auto* g : concl.ant)
            if (g == f) { found = true; break; }
        }
        if (!found) M.fail("no atomic formula occurs on both sides");
        M.finish(true);
        break;
      }
      case Rule::BotL: {
        bool found = false;
        for (auto* g : concl.ant)
          if (g->conn == Conn::Bottom) found = true;
        if (!found) M.fail("no bottom in the antecedent");
        M.finish(true);
        break;
      }
      case Rule::NotL: {
        Occ p = M.take_principal(principal, Conn::Not, "a negation");
        const Formula* a = occ_formula(concl, p)->left;
        Occ act = M.take_premise(0, Side::Suc, a, "active formula");
        M.link_active(0, act, p, Path{0});
        M.match_sides(0);
        M.expect_premise_exhausted(0);
        M.finish(false);
        break;
      }
      case Rule::NotR: {
        Occ p = M.take_principal(principal, Conn::Not, "a negation");
        const Formula* a = occ_formula(concl, p)->left;
        Occ act = M.take_premise(0, Side::Ant, a, "active formula");
        M.link_active(0, act, p, Path{0});
        M.match_sides(0);
        M.expect_premise_exhausted(0);
        M.finish(false);
        break;
      }
      case Rule::AndL: {
        Occ p = M.take_principal(principal, Conn::And, "a conjunction");
        const Formula* f = occ_formula(concl, p);
        Occ a = M.take_premise(0, Side::Ant, f->left, "left conjunct");
        Occ b = M.take_premise(0, Side::Ant, f->right, "right conjunct");
        M.link_active(0, a, p, Path{0});
        M.link_active(0, b, p, Path{1});
        M.match_sides(0);
        M.expect_premise_exhausted(0);
        M.finish(false);
        break;
      }
      case Rule::AndR: {
        Occ p = M.take_principal(principal, Conn::And, "a conjunction");
        const Formula* f = occ_formula(concl, p);
        Occ a = M.take_premise(0, Side::Suc, f->left, "left conjunct");
        Occ b = M.take_premise(1, Side::Suc, f->right, "right conjunct");
        M.link_active(0, a, p, Path{0});
        M.link_active(1, b, p, Path{1});
        M.match_sides(0);
        M.match_sides(1);
        M.expect_premise_exhausted(0);
        M.expect_premise_exhausted(1);
        M.finish(false);
        break;
      }
      case Rule::OrL: {
        Occ p = M.take_principal(principal, Conn::Or, "a disjunction");
        const Formula* f = occ_formula(concl, p);
        Occ a = M.take_premise(0, Side::Ant, f->left, "left disjunct");
        Occ b = M.take_premise(1, Side::Ant, f->right, "right disjunct");
        M.link_active(0, a, p, Path{0});
        M.link_active(1, b, p, Path{1});
        M.match_sides(0);
        M.match_sides(1);
        M.expect_premise_exhausted(0);
        M.expect_premise_exhausted(1);
        M.finish(false);
        break;
      }
      case Rule::OrR: {
        Occ p = M.take_principal(principal, Conn::Or, "a disjunction");
        const Formula* f = occ_formula(concl, p);
        Occ a = M.take_premise(0, Side::Suc, f->left, "left disjunct");
        Occ b = M.take_premise(0, Side::Suc, f->right, "right disjunct");
        M.link_active(0, a, p, Path{0});
        M.link_active(0, b, p, Path{1});
        M.match_sides(0);
        M.expect_premise_exhausted(0);
        M.finish(false);
        break;
      }
      case Rule::ImpL: {
        Occ p = M.take_principal(principal, Conn::Implies, "an implication");
        const Formula* f = occ_formula(concl, p);
        Occ a = M.take_premise(0, Side::Suc, f->left, "antecedent of the implication");
        Occ b = M.take_premise(1, Side::Ant, f->right, "consequent of the implication");
        M.link_active(0, a, p, Path{0});
        M.link_active(1, b, p, Path{1});
        M.match_sides(0);
        M.match_sides(1);
        M.expect_premise_exhausted(0);
        M.expect_premise_exhausted(1);
        M.finish(false);
        break;
      }
      case Rule::ImpR: {
        Occ p = M.take_principal(principal, Conn::Implies, "an implication");
        const Formula* f = occ_formula(concl, p);
        Occ a = M.take_premise(0, Side::Ant, f->left, "antecedent of the implication");
        Occ b = M.take_premise(0, Side::Suc, f->right, "consequent of the implication");
        M.link_active(0, a, p, Path{0});
        M.link_active(0, b, p, Path{1});
        M.match_sides(0);
        M.expect_premise_exhausted(0);
        M.finish(false);
        break;
      }
      case Rule::BoxL: {
        Occ p = M.take_principal(principal, Conn::Box, "a boxed formula");
        const Formula* f = occ_formula(concl, p);
        Occ a = M.take_premise(0, Side::Ant, f->left, "unboxed copy");
        Occ c = M.take_premise(0, Side::Ant, f, "contraction copy");
        M.link_active(0, a, p, Path{0});
        M.link_active(0, c, p, Path{});
        M.match_sides(0);
        M.expect_premise_exhausted(0);
        M.finish(false);
        break;
      }
      case Rule::BoxR: {
        Occ p = M.take_principal(principal, Conn::Box, "a boxed formula");
        const Formula* f = occ_formula(concl, p);
        Occ a = M.take_premise(0, Side::Suc, f->left, "box body");
        M.link_active(0, a, p, Path{0});
        M.match_sides_restricted(0, Side::Ant, is_box, "a boxed side formula");
        M.match_sides_restricted(0, Side::Suc, is_diamond, "a diamond side formula");
        M.expect_premise_exhausted(0);
        M.finish(true);
        break;
      }
      case Rule::DiaL: {
        Occ p = M.take_principal(principal, Conn::Diamond, "a diamond formula");
        const Formula* f = occ_formula(concl, p);
        Occ a = M.take_premise(0, Side::Ant, f->left, "diamond body");
        M.link_active(0, a, p, Path{0});
        M.match_sides_restricted(0, Side::Ant, is_box, "a boxed side formula");
        M.match_sides_restricted(0, Side::Suc, is_diamond, "a diamond side formula");
        M.expect_premise_exhausted(0);
        M.finish(true);
        break;
      }
      case Rule::DiaR: {
        Occ p = M.take_principal(principal, Conn::Diamond, "a diamond formula");
        const Formula* f = occ_formula(concl, p);
        Occ a = M.take_premise(0, Side::Suc, f->left, "diamond body");
        Occ c = M.take_premise(0, Side::Suc, f, "contraction copy");
        M.link_active(0, a, p, Path{0});
        M.link_active(0, c, p, Path{});
        M.match_sides(0);
        M.expect_premise_exhausted(0);
        M.finish(false);
        break;
      }
      case Rule::Cut: {
        if (!principal.cut) M.fail("cut rule needs the cut formula");
        const Formula* a = principal.cut;
        M.m.cut_a = a;
        Occ l = M.take_premise(0, Side::Suc, a, "cut formula");
        Occ r = M.take_premise(1, Side::Ant, a, "cut formula");
        M.link_cross_subtree(LocRef{0, l}, {}, LocRef{1, r}, {});
        M.match_sides(0);
        M.match_sides(1);
        M.expect_premise_exhausted(0);
        M.expect_premise_exhausted(1);
        M.finish(false);
        break;
      }
      case Rule::BoxCut: {
        if (!principal.cut || principal.cut->conn != Conn::Implies)
          M.fail("boxcut needs its cut implication A -> B");
        const Formula* impl = principal.cut;
        const Formula* A = impl->left;
        const Formula* B = impl->right;
        M.m.cut_a = A;
        M.m.cut_b = B;
        M.m.boxcut_impl = impl;
        // Boxed formulas are matched by body so that annotated outer boxes
        // (labelled proofs) are accepted; the principal's annotation, when
        // present, disambiguates against context boxes over the same body.
        int pidx = -1;
        if (principal.has_occ && principal.side == Side::Suc) {
          pidx = principal.index;
          if (pidx < 0 || pidx >= int(concl.suc.size()) ||
              concl.suc[size_t(pidx)]->conn != Conn::Box || concl.suc[size_t(pidx)]->left != B)
            M.fail("designated boxcut principal is not a box over the cut consequent");
        } else {
          for (int j = 0; j < int(concl.suc.size()); j++) {
            const Formula* g = concl.suc[size_t(j)];
            if (g->conn == Conn::Box && g->left == B) { pidx = j; break; }
          }
          if (pidx < 0) M.fail("conclusion lacks the boxed cut consequent over " + render(B));
        }
        PrincipalRef pref;
        pref.has_occ = true;
        pref.side = Side::Suc;
        pref.index = pidx;
        Occ p = M.take_principal(pref, Conn::Box, "the boxed consequent");
        const Formula* boxB = occ_formula(concl, p);
        auto active_box = [&](const Formula* want) {
          return [want, boxB](const Formula* g) {
            return g->conn == Conn::Box && g->left == want &&
                   (boxB->ann.kind != AnnKind::Fam || g->ann == boxB->ann);
          };
        };
        // premise 0: Gamma => Delta, []A, []B
        Occ oA = M.take_premise_pred(0, Side::Suc, active_box(A), "boxed cut antecedent");
        Occ oB0 = M.take_premise(0, Side::Suc, boxB, "boxed consequent");
        // premise 1: Gamma => Delta, [](A->B), []B
        Occ oAB = M.take_premise_pred(1, Side::Suc, active_box(impl), "boxed cut implication");
        Occ oB1 = M.take_premise(1, Side::Suc, boxB, "boxed consequent");
        M.link_active(0, oB0, p, Path{});
        M.link_active(1, oB1, p, Path{});
        // topmost boxes of the active formulas all correspond to the principal
        M.link_cross_single(LocRef{0, oA}, {}, LocRef{-1, p}, {});
        M.link_cross_single(LocRef{1, oAB}, {}, LocRef{-1, p}, {});
        // the A parts correspond to each other across the premises
        M.link_cross_subtree(LocRef{0, oA}, Path{0}, LocRef{1, oAB}, Path{0, 0});
        // the B parts correspond
        M.link_cross_subtree(LocRef{1, oAB}, Path{0, 1}, LocRef{-1, p}, Path{0});
        M.match_sides(0);
        M.match_sides(1);
        M.expect_premise_exhausted(0);
        M.expect_premise_exhausted(1);
        M.finish(false);
        break;
      }
      case Rule::ColonL: {
        Occ p = M.take_principal(principal, Conn::Proof, "a justified formula");
        const Formula* f = occ_formula(concl, p);
        Occ a = M.take_premise(0, Side::Ant, f->left, "unfolded body");
        Occ c = M.take_premise(0, Side::Ant, f, "contraction copy");
        M.link_active(0, a, p, Path{0});
        M.link_active(0, c, p, Path{});
        M.match_sides(0);
        M.expect_premise_exhausted(0);
        M.finish(false);
        break;
      }
      case Rule::ColonRc: {
        Occ p = M.take_principal(principal, Conn::Proof, "a justified formula");
        const Formula* f = occ_formula(concl, p);
        if (f->term->op != TermOp::Const)
          M.fail("(=> :)c introduces a constant, got " + render(f->term));
        if (!ax.is_lp_axiom(f->left))
          M.fail("(=> :)c body is not an LP axiom: " + render(f->left));
        if (!prem[0]->ant.empty() || prem[0]->suc.size() != 1 || prem[0]->suc[0] != f->left)
          M.fail("(=> :)c premise must be exactly '=> " + render(f->left) + "'");
        Occ a{Side::Suc, 0};
        M.pflags(0, Side::Suc)[0] = 1;
        M.link_active(0, a, p, Path{0});
        M.finish(true);
        break;
      }
      case Rule::ColonRt: {
        Occ p = M.take_principal(principal, Conn::Proof, "a justified formula");
        const Formula* f = occ_formula(concl, p);
        if (prem[0]->ant.size() != 1 || prem[0]->ant[0] != f || prem[0]->suc.size() != 1 ||
            prem[0]->suc[0] != f->left)
          M.fail("(=> :)t premise must be exactly '" + render(f) + " => " + render(f->left) + "'");
        // the left copy in the conclusion is required by the rule shape
        int lidx = -1;
        for (int j = 0; j < int(concl.ant.size()); j++)
          if (concl.ant[size_t(j)] == f) { lidx = j; break; }
        if (lidx < 0) M.fail("(=> :)t conclusion must carry " + render(f) + " on the left");
        M.used_ant[size_t(lidx)] = 1;
        M.pflags(0, Side::Ant)[0] = 1;
        M.pflags(0, Side::Suc)[0] = 1;
        // premise-left t:A is a side formula of the conclusion's left copy
        M.m.links.push_back(SymLink{SymLink::Subtree, LocRef{0, Occ{Side::Ant, 0}},
                                    LocRef{-1, Occ{Side::Ant, lidx}}, {}, {}});
        M.link_active(0, Occ{Side::Suc, 0}, p, Path{0});
        M.finish(true);
        break;
      }
      case Rule::BangR: {
        Occ p = M.take_principal(principal, Conn::Proof, "a justified formula");
        const Formula* f = occ_formula(concl, p);
        if (f->term->op != TermOp::Bang || f->left->conn != Conn::Proof ||
            f->left->term != f->term->left)
          M.fail("(=> !) principal must have the shape !t:t:A");
        const Formula* tA = f->left;
        Occ a = M.take_premise(0, Side::Suc, tA, "contraction formula t:A");
        Occ c = M.take_premise(0, Side::Suc, f, "active copy of the principal");
        M.link_active(0, a, p, Path{0});
        M.link_active(0, c, p, Path{});
        // top term t of the contraction formula corresponds to the top term !t
        M.link_cross_single(LocRef{0, a}, {}, LocRef{-1, p}, {});
        M.match_sides(0);
        M.expect_premise_exhausted(0);
        M.finish(false);
        break;
      }
      case Rule::PlusR: {
        Occ p = M.take_principal(principal, Conn::Proof, "a justified formula");
        const Formula* f = occ_formula(concl, p);
        if (f->term->op != TermOp::Sum) M.fail("(=> +) principal must be a sum term");
        const Formula* sA = mk_proof(f->term->left, f->left);
        const Formula* tA = mk_proof(f->term->right, f->left);
        Occ a = M.take_premise(0, Side::Suc, sA, "left summand formula");
        Occ b = M.take_premise(0, Side::Suc, tA, "right summand formula");
        Occ c = M.take_premise(0, Side::Suc, f, "contraction copy");
        // s:A and t:A align positionally with (s+t):A (same formula skeleton)
        M.link_active(0, a, p, Path{});
        M.link_active(0, b, p, Path{});
        M.link_active(0, c, p, Path{});
        M.match_sides(0);
        M.expect_premise_exhausted(0);
        M.finish(false);
        break;
      }
      case Rule::DotR: {
        Occ p = M.take_principal(principal, Conn::Proof, "a justified formula");
        const Formula* f = occ_formula(concl, p);
        if (f->term->op != TermOp::App) M.fail("(=> *) principal must be an application term");
        const Term* s = f->term->left;
        const Term* t = f->term->right;
        const Formula* B = f->left;
        // infer A from the first premise's extra formula s:(A -> B)
        std::vector<const Formula*> extra0 = mdiff(prem[0]->suc, concl.suc);
        const Formula* sAB = nullptr;
        for (auto* g : extra0)
          if (g->conn == Conn::Proof && g->term == s && g->left->conn == Conn::Implies &&
              g->left->right == B)
            sAB = g;
        if (!sAB) M.fail("(=> *) first premise lacks s:(A -> B) for the principal " + render(f));
        const Formula* A = sAB->left->left;
        const Formula* tA = mk_proof(t, A);
        Occ o_sAB = M.take_premise(0, Side::Suc, sAB, "s:(A -> B)");
        Occ o_c0 = M.take_premise(0, Side::Suc, f, "principal copy");
        Occ o_tA = M.take_premise(1, Side::Suc, tA, "t:A");
        Occ o_c1 = M.take_premise(1, Side::Suc, f, "principal copy");
        M.link_active(0, o_c0, p, Path{});
        M.link_active(1, o_c1, p, Path{});
        // topmost terms correspond to the principal's topmost term
        M.link_cross_single(LocRef{0, o_sAB}, {}, LocRef{-1, p}, {});
        M.link_cross_single(LocRef{1, o_tA}, {}, LocRef{-1, p}, {});
        // A parts correspond across the premises, B parts into the principal
        M.link_cross_subtree(LocRef{1, o_tA}, Path{0}, LocRef{0, o_sAB}, Path{0, 0});
        M.link_cross_subtree(LocRef{0, o_sAB}, Path{0, 1}, LocRef{-1, p}, Path{0});
        M.match_sides(0);
        M.match_sides(1);
        M.expect_premise_exhausted(0);
        M.expect_premise_exhausted(1);
        M.finish(false);
        break;
      }
    }
  } catch (const std::runtime_error& e) {
    M.m.ok = false;
    M.m.error = e.what();
  }
  (void)lex;
  return M.m;
}

// ---------------------------------------------------------------------------

ValidationReport check_proof(const Proof& p, CalculusVariant v, const AxiomChecker& ax,
                             const Lexicon& lex) {
  ValidationReport report;
  if (p.root < 0 || p.root >= p.size()) {
    report.ok = false;
    report.issues.push_back({-1, "empty proof"});
    return report;
  }
  for (int id = 0; id < p.size(); id++) {
    const ProofNode& n = p.at(id);
    if (!rule_allowed(n.rule, v)) {
      report.ok = false;
      report.issues.push_back({id, std::string("rule ") + rule_display(n.rule) + " is not part of " +
                                       variant_name(v)});
      continue;
    }
    if (int(n.premises.size()) != rule_premise_count(n.rule)) {
      report.ok = false;
      report.issues.push_back({id, "wrong number of premises"});
      continue;
    }
    std::vector<const Sequent*> prem;
    for (int q : n.premises) prem.push_back(&p.at(q).sequent);
    RuleMatch m = match_rule(n.rule, n.sequent, n.principal, prem, ax, lex);
    if (!m.ok) {
      report.ok = false;
      report.issues.push_back({id, std::string(rule_display(n.rule)) + ": " + m.error});
    }
  }
  return report;
}

std::string ValidationReport::summary() const {
  if (ok) return "valid";
  std::ostringstream os;
  os << issues.size() << " issue(s):";
  for (const auto& i : issues) os << "\n  node " << i.node << ": " << i.message;
  return os.str();
}

}  // namespace prehist
