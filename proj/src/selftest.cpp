#include "prehist/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "prehist/correspond.hpp"
#include "prehist/families.hpp"
#include "prehist/lp_analysis.hpp"
#include "prehist/prover.hpp"
#include "prehist/semantics.hpp"
#include "prehist/transforms.hpp"

namespace prehist {

// ---------------------------------------------------------------------------
// Random generators
// ---------------------------------------------------------------------------

namespace {
const char* kAtoms[] = {"P", "Q", "R"};

int pick(std::mt19937& rng, int n) { return int(rng() % uint32_t(n)); }
}  // namespace

const Formula* random_minimal_formula(std::mt19937& rng, int depth, int atoms) {
  if (depth <= 0 || pick(rng, 100) < 25) {
    if (pick(rng, 100) < 12) return mk_bottom();
    return mk_atom(kAtoms[pick(rng, atoms)]);
  }
  if (pick(rng, 100) < 40) return mk_box(random_minimal_formula(rng, depth - 1, atoms));
  return mk_implies(random_minimal_formula(rng, depth - 1, atoms),
                    random_minimal_formula(rng, depth - 1, atoms));
}

const Formula* random_modal_formula(std::mt19937& rng, int depth, int atoms) {
  if (depth <= 0 || pick(rng, 100) < 22) {
    if (pick(rng, 100) < 10) return mk_bottom();
    return mk_atom(kAtoms[pick(rng, atoms)]);
  }
  switch (pick(rng, 7)) {
    case 0: return mk_box(random_modal_formula(rng, depth - 1, atoms));
    case 1: return mk_diamond(random_modal_formula(rng, depth - 1, atoms));
    case 2: return mk_not(random_modal_formula(rng, depth - 1, atoms));
    case 3:
      return mk_and(random_modal_formula(rng, depth - 1, atoms),
                    random_modal_formula(rng, depth - 1, atoms));
    case 4:
      return mk_or(random_modal_formula(rng, depth - 1, atoms),
                   random_modal_formula(rng, depth - 1, atoms));
    default:
      return mk_implies(random_modal_formula(rng, depth - 1, atoms),
                        random_modal_formula(rng, depth - 1, atoms));
  }
}

const Formula* random_propositional_formula(std::mt19937& rng, int depth, int atoms) {
  if (depth <= 0 || pick(rng, 100) < 28) {
    if (pick(rng, 100) < 12) return mk_bottom();
    return mk_atom(kAtoms[pick(rng, atoms)]);
  }
  switch (pick(rng, 4)) {
    case 0: return mk_not(random_propositional_formula(rng, depth - 1, atoms));
    case 1:
      return mk_and(random_propositional_formula(rng, depth - 1, atoms),
                    random_propositional_formula(rng, depth - 1, atoms));
    case 2:
      return mk_or(random_propositional_formula(rng, depth - 1, atoms),
                   random_propositional_formula(rng, depth - 1, atoms));
    default:
      return mk_implies(random_propositional_formula(rng, depth - 1, atoms),
                        random_propositional_formula(rng, depth - 1, atoms));
  }
}

namespace {
void collect_subformulas(const Formula* f, std::vector<const Formula*>& out) {
  out.push_back(f);
  if (f->left) collect_subformulas(f->left, out);
  if (f->right) collect_subformulas(f->right, out);
}
}  // namespace

std::vector<Proof> generate_cut_corpus(int count, uint32_t seed, int max_nodes) {
  std::mt19937 rng(seed);
  std::vector<Proof> out;
  long attempts = 0;
  while (int(out.size()) < count && attempts < 2000L * count) {
    attempts++;
    Sequent base;
    int na = pick(rng, 2), ns = 1 + pick(rng, 2);
    for (int i = 0; i < na; i++) base.ant.push_back(random_minimal_formula(rng, 2, 2));
    for (int i = 0; i < ns; i++) base.suc.push_back(random_minimal_formula(rng, 2, 2));
    std::vector<const Formula*> subs;
    for (const auto& v : {base.ant, base.suc})
      for (auto* f : v) collect_subformulas(f, subs);
    subs.push_back(random_minimal_formula(rng, 2, 2));
    const Formula* a = subs[size_t(pick(rng, int(subs.size())))];
    Sequent ls = base;
    ls.suc.push_back(a);
    Sequent rs = base;
    rs.ant.push_back(a);
    SearchResult dl = decide_g3s(ls);
    if (!dl.proved()) continue;
    SearchResult dr = decide_g3s(rs);
    if (!dr.proved()) continue;
    if (dl.proof->size() + dr.proof->size() + 1 > max_nodes) continue;
    Proof combined;
    int l = graft(combined, *dl.proof);
    int r = graft(combined, *dr.proof);
    PrincipalRef pr;
    pr.cut = a;
    combined.root = add_node(combined, Rule::Cut, base, pr, {l, r});
    if (!check_proof(combined, CalculusVariant::G3sCut).ok) continue;
    out.push_back(std::move(combined));
  }
  if (int(out.size()) < count)
    throw std::runtime_error("cut corpus generation starved (got " + std::to_string(out.size()) + ")");
  return out;
}

std::vector<Proof> generate_g3s_corpus(int count, uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<Proof> out;
  long attempts = 0;
  while (int(out.size()) < count && attempts < 4000L * count) {
    attempts++;
    Sequent s;
    int na = pick(rng, 3), ns = 1 + pick(rng, 2);
    for (int i = 0; i < na; i++) s.ant.push_back(random_minimal_formula(rng, 3, 2));
    for (int i = 0; i < ns; i++) s.suc.push_back(random_minimal_formula(rng, 3, 2));
    SearchResult d = decide_g3s(s);
    if (!d.proved()) continue;
    if (d.proof->size() > 40) continue;
    out.push_back(*d.proof);
  }
  if (int(out.size()) < count)
    throw std::runtime_error("g3s corpus generation starved");
  return out;
}

namespace {
const Term* random_term(std::mt19937& rng, int depth) {
  static const char* consts[] = {"c", "s", "t"};
  static const char* vars[] = {"x", "y"};
  if (depth <= 0 || pick(rng, 100) < 45) {
    if (pick(rng, 2)) return mk_const(consts[pick(rng, 3)]);
    return mk_var(vars[pick(rng, 2)]);
  }
  switch (pick(rng, 3)) {
    case 0: return mk_app(random_term(rng, depth - 1), random_term(rng, depth - 1));
    case 1: return mk_sum(random_term(rng, depth - 1), random_term(rng, depth - 1));
    default: return mk_bang(random_term(rng, depth - 1));
  }
}

const Formula* random_lp_formula(std::mt19937& rng, int depth) {
  if (depth <= 0 || pick(rng, 100) < 35) {
    int r = pick(rng, 100);
    if (r < 10) return mk_bottom();
    if (r < 80) return mk_atom(kAtoms[pick(rng, 2)]);
    return mk_proof(random_term(rng, 1), mk_atom(kAtoms[pick(rng, 2)]));
  }
  switch (pick(rng, 4)) {
    case 0: return mk_not(random_lp_formula(rng, depth - 1));
    case 1:
      return mk_and(random_lp_formula(rng, depth - 1), random_lp_formula(rng, depth - 1));
    case 2: return mk_proof(random_term(rng, 1), random_lp_formula(rng, depth - 1));
    default:
      return mk_implies(random_lp_formula(rng, depth - 1), random_lp_formula(rng, depth - 1));
  }
}
}  // namespace

std::vector<Proof> generate_g3lp_corpus(int count, uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<Proof> out;
  G3lpOptions opts;
  opts.depth_bound = 48;
  long attempts = 0;
  auto try_goal = [&](const Formula* goal) {
    if (int(out.size()) >= count) return;
    Sequent s;
    s.suc.push_back(goal);
    SearchResult r = search_g3lp(s, opts);
    if (r.proved() && check_proof(*r.proof, CalculusVariant::G3lp).ok) out.push_back(*r.proof);
  };
  // the paper's realization goal first
  try_goal(parse_formula("~x:(P & ~(t*x):P)", Language::Lp));
  try_goal(parse_formula("y:(P & ~(y*x):P -> P) -> ~x:(P & ~(y*x):P)", Language::Lp));
  while (int(out.size()) < count && attempts < 400L * count) {
    attempts++;
    const Formula* F = random_lp_formula(rng, 2);
    const Formula* G = random_lp_formula(rng, 1);
    const Term* ts = random_term(rng, 1);
    const Term* tt = random_term(rng, 1);
    const Formula* goal = nullptr;
    switch (pick(rng, 11)) {
      case 0:  // reflection
        goal = mk_implies(mk_proof(ts, F), F);
        break;
      case 1:  // application
        goal = mk_implies(mk_proof(ts, mk_implies(F, G)),
                          mk_implies(mk_proof(tt, F), mk_proof(mk_app(ts, tt), G)));
        break;
      case 2:  // proof checker
        goal = mk_implies(mk_proof(ts, F), mk_proof(mk_bang(ts), mk_proof(ts, F)));
        break;
      case 3:  // sum, left
        goal = mk_implies(mk_proof(ts, F), mk_proof(mk_sum(ts, tt), F));
        break;
      case 4:  // sum, right
        goal = mk_implies(mk_proof(tt, F), mk_proof(mk_sum(ts, tt), F));
        break;
      case 5: {  // constant for a tautology
        const Term* c = mk_const("c");
        goal = mk_proof(c, mk_implies(F, F));
        break;
      }
      case 6: {  // conjunction of two reflections
        goal = mk_and(mk_implies(mk_proof(ts, F), F), mk_implies(mk_proof(tt, G), G));
        break;
      }
      case 7: {  // nested proof checker
        goal = mk_implies(mk_proof(ts, F),
                          mk_proof(mk_bang(mk_bang(ts)),
                                   mk_proof(mk_bang(ts), mk_proof(ts, F))));
        break;
      }
      case 10: {  // bang over an application principal (exercises the
                  // boxcut-principal fallback during projection)
        const Formula* F0 = mk_atom(kAtoms[pick(rng, 2)]);
        const Formula* G0 = mk_atom(kAtoms[pick(rng, 2)]);
        const Term* u = mk_const("s");
        const Term* v = pick(rng, 2) ? mk_var("x") : mk_const("t");
        const Term* uv = mk_app(u, v);
        goal = mk_implies(mk_proof(u, mk_implies(F0, G0)),
                          mk_implies(mk_proof(v, F0), mk_proof(mk_bang(uv), mk_proof(uv, G0))));
        break;
      }
      case 8: {  // self-referential: ~x:(F0 & ~(u*x):F0) with a constant u
        const Formula* F0 = mk_atom(kAtoms[pick(rng, 2)]);
        const Term* u = mk_const(pick(rng, 2) ? "t" : "s");
        const Term* x = mk_var("x");
        goal = mk_not(mk_proof(x, mk_and(F0, mk_not(mk_proof(mk_app(u, x), F0)))));
        break;
      }
      default: {  // self-referential with an assumption instead of a constant
        const Formula* F0 = mk_atom(kAtoms[pick(rng, 2)]);
        const Term* y = mk_var("y");
        const Term* x = mk_var("x");
        const Formula* inner = mk_and(F0, mk_not(mk_proof(mk_app(y, x), F0)));
        goal = mk_implies(mk_proof(y, mk_implies(inner, F0)), mk_not(mk_proof(x, inner)));
        break;
      }
    }
    try_goal(goal);
  }
  if (int(out.size()) < count)
    throw std::runtime_error("g3lp corpus generation starved (got " + std::to_string(out.size()) + ")");
  return out;
}

// ---------------------------------------------------------------------------
// Acceptance criteria
// ---------------------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;
double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Check {
  bool ok = true;
  std::string why;
  void require(bool c, const std::string& msg) {
    if (!c && ok) {
      ok = false;
      why = msg;
    }
  }
};

CriterionResult criterion1() {
  auto t0 = Clock::now();
  CriterionResult r{1, "paper figure reproduction", true, "", 0, {}};
  Check c;
  try {
    Proof g3s = proof_from_json(fixture_g3s_proof());
    c.require(check_proof(g3s, CalculusVariant::G3sFull).ok, "G3s figure does not validate");
    AnnotatedProof ap = classify_and_annotate(g3s, CalculusVariant::G3sFull);
    int np = 0, nn = 0, no = 0;
    for (const auto& fi : ap.analysis.families) {
      np += fi.kind == FamilyClass::PrincipalPositive;
      nn += fi.kind == FamilyClass::Negative;
      no += fi.kind == FamilyClass::NonPrincipalPositive;
    }
    c.require(np == 1 && nn == 1 && no == 0, "families are not exactly {n0, p0}");
    c.require(ap.analysis.corr.class_count == 2, "expected exactly 2 box classes");
    c.require(render(ap.proof.endsequent()) == "=> ~[-0](P & ~[+0]P)",
              "annotated endsequent mismatch: " + render(ap.proof.endsequent()));
    PrehistoricGraph g = prehistoric_graph(g3s, GraphMode::G3sPrincipal, CalculusVariant::G3sFull);
    c.require(g.vertex_names == std::vector<std::string>{"p0"}, "principal graph vertices");
    c.require(g.edges.size() == 1 && g.edges[0].from == 0 && g.edges[0].to == 0 &&
                  g.edges[0].label == 'L',
              "principal graph edges are not exactly {p0 <L p0}");
    auto cyc = find_cycle(g, false);
    auto cycL = find_cycle(g, true);
    c.require(cyc && cyc->size() == 1 && cycL && cycL->size() == 1,
              "length-1 left cycle not detected");

    // realization column: the image of the annotated proof
    RealizationFunction rf;
    rf.map[{AnnKind::Minus, 0}] = parse_term("x");
    rf.map[{AnnKind::Plus, 0}] = parse_term("t*x");
    std::vector<Sequent> golden;
    {
      auto j = nlohmann::json::parse(fixture_g3s_realization());
      for (const auto& sg : j.at("sequents"))
        golden.push_back(parse_sequent(sg.get<std::string>(), Language::Lp));
    }
    TreeIndex ti = index_tree(ap.proof);
    c.require(golden.size() == size_t(ap.proof.size()), "realization column length mismatch");
    for (size_t k = 0; k < golden.size() && c.ok; k++) {
      const Sequent& an = ap.proof.at(ti.preorder[k]).sequent;
      Sequent realized;
      for (auto* f : an.ant) realized.ant.push_back(apply_realization(rf, f));
      for (auto* f : an.suc) realized.suc.push_back(apply_realization(rf, f));
      c.require(realized == golden[k], "realization column mismatch at node " + std::to_string(k));
    }

    Proof g3lp = proof_from_json(fixture_g3lp_proof());
    c.require(check_proof(g3lp, CalculusVariant::G3lp).ok, "G3lp figure does not validate");
    Proof proj = proof_from_json(fixture_g3lp_projection());
    c.require(check_proof(proj, CalculusVariant::G3sBoxCut).ok,
              "projection figure does not validate");
    Correspondence pc = build_correspondence(proj, CalculusVariant::G3sBoxCut);
    c.require(pc.class_count == 3, "projection should have exactly 3 box families, got " +
                                       std::to_string(pc.class_count));
    int rootless = 0;
    for (int cls = 0; cls < pc.class_count; cls++)
      if (root_occurrences_of_class(proj, pc, cls).empty()) rootless++;
    c.require(rootless == 1, "exactly one cut family should be rootless");
    // the all-box graph contains minus <L plus and plus <L plus
    int occ = pc.table.occ_of(proj.root, Side::Suc, 0);
    int outer_cls = pc.class_of_sym[size_t(pc.table.sym_at(occ, Path{0}))];
    int inner_cls = pc.class_of_sym[size_t(pc.table.sym_at(occ, Path{0, 0, 1, 0}))];
    PrehistoricGraph ab = prehistoric_graph(proj, GraphMode::AllBox, CalculusVariant::G3sBoxCut);
    auto has = [&](int f, int t, char l) {
      for (const auto& e : ab.edges)
        if (e.from == f && e.to == t && e.label == l) return true;
      return false;
    };
    c.require(has(outer_cls, inner_cls, 'L'), "missing minus <L plus in the projection graph");
    c.require(has(inner_cls, inner_cls, 'L'), "missing plus <L plus cycle in the projection graph");
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  r.pass = c.ok;
  r.detail = c.why;
  r.ms = ms_since(t0);
  if (r.pass && r.ms > 1000) {
    r.pass = false;
    r.detail = "runtime over 1 s";
  }
  return r;
}

CriterionResult criterion2() {
  auto t0 = Clock::now();
  CriterionResult r{2, "counterexample, negative half", true, "", 0, {}};
  Check c;
  try {
    Sequent goal = parse_sequent("=> [](P & ~[]P -> P) -> ~[](P & ~[]P)", Language::Modal);
    SearchResult plain = decide_g3s(goal);
    c.require(plain.kind == SearchResult::Kind::Proved, "plain prove should succeed");
    if (plain.proof)
      c.require(check_proof(*plain.proof, CalculusVariant::G3sFull).ok, "found proof is invalid");
    SearchResult cf = find_cycle_free_proof(goal);
    c.require(cf.kind == SearchResult::Kind::NoCycleFreeProof,
              std::string("cycle-free search returned ") + search_result_name(cf.kind));
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  r.pass = c.ok;
  r.detail = c.why;
  r.ms = ms_since(t0);
  if (r.pass && r.ms > 10000) {
    r.pass = false;
    r.detail = "runtime over 10 s";
  }
  return r;
}

CriterionResult criterion3() {
  auto t0 = Clock::now();
  CriterionResult r{3, "counterexample, positive half", true, "", 0, {}};
  Check c;
  try {
    Sequent goal = parse_sequent("=> y:(P & ~(y*x):P -> P) -> ~x:(P & ~(y*x):P)", Language::Lp);
    G3lpOptions opts;
    opts.forbid_const_intro = true;
    SearchResult sr = search_g3lp(goal, opts);
    c.require(sr.kind == SearchResult::Kind::Proved,
              std::string("search returned ") + search_result_name(sr.kind));
    if (!sr.proof) throw std::runtime_error("no proof");
    c.require(check_proof(*sr.proof, CalculusVariant::G3lp).ok, "proof is invalid");
    auto ins = inputs_of(*sr.proof);
    for (const auto& e : ins)
      c.require(!e.from_const_rule, "constant specification part should be empty");
    const Formula* proj = forgetful(goal.suc[0]);
    const Formula* expected =
        parse_formula("[](P & ~[]P -> P) -> ~[](P & ~[]P)", Language::Modal);
    c.require(proj == expected, "forgetful projection mismatch: " + render(proj));
    PrehistoricGraph g = prehistoric_graph(*sr.proof, GraphMode::LpTerm, CalculusVariant::G3lp);
    auto cyc = find_cycle(g, false);
    c.require(cyc.has_value(), "term-family graph should be cyclic");
    if (cyc) {
      auto chain = extract_selfref_chain(*sr.proof, *cyc);
      c.require(!chain.empty(), "chain extraction returned nothing");
      SelfRefVerdict v = classify_selfref(chain);
      c.require(v.kind != SelfRefKind::NonSelfReferential,
                "extracted chain is not self-referential");
    }
    std::vector<const Formula*> all;
    for (const auto& e : ins) all.push_back(e.formula);
    c.require(classify_selfref(all).kind != SelfRefKind::NonSelfReferential,
              "input set should be self-referential");
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  r.pass = c.ok;
  r.detail = c.why;
  r.ms = ms_since(t0);
  if (r.pass && r.ms > 10000) {
    r.pass = false;
    r.detail = "runtime over 10 s";
  }
  return r;
}

CriterionResult criterion4() {
  CriterionResult r{4, "singleton Kripke model", true, "", 0, {}};
  Check c;
  try {
    KripkeModel m = KripkeModel::from_json(fixture_kripke());
    const Formula* f1 = parse_formula("[](P & ~[]P -> P) -> P", Language::Modal);
    const Formula* f2 = parse_formula("[](P & ~[]P -> P)", Language::Modal);
    auto t0 = Clock::now();
    bool v1 = eval(m, "w", f1);
    bool v2 = eval(m, "w", f2);
    r.ms = ms_since(t0);
    c.require(!v1, "[](P & ~[]P -> P) -> P should be false at w");
    c.require(v2, "[](P & ~[]P -> P) should be true at w");
    c.require(is_s4_frame(m), "the singleton model should be an S4 frame");
    if (r.ms > 1.0) c.require(false, "runtime over 1 ms");
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  r.pass = c.ok;
  r.detail = c.why;
  return r;
}

CriterionResult criterion5() {
  auto t0 = Clock::now();
  CriterionResult r{5, "cut elimination property suite (500 proofs)", true, "", 0, {}};
  Check c;
  int n_checked = 0;
  try {
    std::vector<Proof> corpus = generate_cut_corpus(500, 20260809);
    for (const Proof& p : corpus) {
      TransformReport rep = eliminate_cuts(p);
      bool valid = check_proof(erase_proof_annotations(rep.output), CalculusVariant::G3sFull).ok;
      bool cutfree = count_rule(rep.output, Rule::Cut) == 0;
      bool same_end = erase_annotations(rep.output.endsequent()) ==
                      erase_annotations(p.endsequent());
      c.require(valid, "eliminated proof does not validate");
      c.require(cutfree, "output still contains a cut");
      c.require(same_end, "endsequent not preserved");
      if (!rep.all_new_edges_justified)
        r.findings.push_back("unmediated new edge; input proof: " + render(p.endsequent()));
      if (!rep.input_cyclic && rep.output_cyclic)
        r.findings.push_back("cycle introduced by cut elimination; input: " +
                             proof_to_json(p, Language::Modal));
      n_checked++;
      if (!c.ok) break;
    }
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  r.pass = c.ok && r.findings.empty();
  r.detail = c.ok ? (std::to_string(n_checked) + " proofs, " + std::to_string(r.findings.size()) +
                     " finding(s)")
                  : c.why;
  r.ms = ms_since(t0);
  return r;
}

CriterionResult criterion6() {
  auto t0 = Clock::now();
  CriterionResult r{6, "projection and boxcut elimination suite (200 proofs)", true, "", 0, {}};
  Check c;
  int n_checked = 0, n_cycle_free = 0;
  try {
    std::vector<Proof> corpus = generate_g3lp_corpus(200, 20260810);
    for (const Proof& p : corpus) {
      ProjectionReport rep = project_proof(p);
      bool valid = check_proof(rep.output, CalculusVariant::G3sBoxCut).ok;
      c.require(valid, "projection does not validate");
      Sequent want = forgetful(erase_annotations(p.endsequent()));
      c.require(erase_annotations(rep.output.endsequent()) == want,
                "projection endsequent mismatch");
      c.require(rep.map_total, "family map is not total");
      c.require(rep.map_single_valued, "family map is not single-valued");
      c.require(rep.edge_map_ok, "projected edge without source relation");
      bool source_cyclic = find_cycle(rep.source_graph, false).has_value();
      if (!source_cyclic) {
        n_cycle_free++;
        TransformReport el = eliminate_boxcuts(rep.output);
        bool evalid = check_proof(erase_proof_annotations(el.output), CalculusVariant::G3sFull).ok;
        bool ecutfree = count_rule(el.output, Rule::BoxCut) == 0 &&
                        count_rule(el.output, Rule::Cut) == 0;
        c.require(evalid && ecutfree, "boxcut elimination failed on a cycle-free instance");
        c.require(!el.output_cyclic,
                  "cycle-free instance became cyclic through boxcut elimination");
      }
      n_checked++;
      if (!c.ok) break;
    }
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  r.pass = c.ok;
  r.detail = c.ok ? (std::to_string(n_checked) + " proofs, " + std::to_string(n_cycle_free) +
                     " cycle-free instances")
                  : c.why;
  r.ms = ms_since(t0);
  return r;
}

CriterionResult criterion7() {
  auto t0 = Clock::now();
  CriterionResult r{7, "main theorem property over the G3lp corpus", true, "", 0, {}};
  Check c;
  int cyclic = 0, acyclic = 0;
  try {
    std::vector<Proof> corpus = generate_g3lp_corpus(200, 20260811);
    for (const Proof& p : corpus) {
      auto ins = inputs_of(p);
      std::vector<const Formula*> formulas;
      for (const auto& e : ins) formulas.push_back(e.formula);
      SelfRefVerdict v = classify_selfref(formulas);
      PrehistoricGraph g = prehistoric_graph(p, GraphMode::LpTerm, CalculusVariant::G3lp);
      auto cyc = find_cycle(g, false);
      if (v.kind == SelfRefKind::NonSelfReferential)
        c.require(!cyc.has_value(), "non-self-referential inputs with a cyclic term graph");
      if (cyc) {
        cyclic++;
        auto chain = extract_selfref_chain(p, *cyc);
        c.require(classify_selfref(chain).kind != SelfRefKind::NonSelfReferential,
                  "extracted chain fails to witness self-referentiality");
      } else {
        acyclic++;
      }
      if (!c.ok) break;
    }
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  r.pass = c.ok;
  r.detail = c.ok ? (std::to_string(cyclic) + " cyclic / " + std::to_string(acyclic) + " acyclic")
                  : c.why;
  r.ms = ms_since(t0);
  return r;
}

bool brute_selfref(const std::vector<const Formula*>& entries, bool& direct) {
  int n = int(entries.size());
  std::vector<std::vector<char>> edge(static_cast<size_t>(n), std::vector<char>(size_t(n), 0));
  for (int i = 0; i < n; i++) {
    std::set<const Term*> subs = subterms_of_formula(entries[size_t(i)]->left);
    for (int j = 0; j < n; j++)
      if (subs.count(entries[size_t(j)]->term)) edge[size_t(i)][size_t(j)] = 1;
  }
  direct = false;
  for (int i = 0; i < n; i++)
    if (edge[size_t(i)][size_t(i)]) direct = true;
  // every nonempty subset, every cyclic arrangement
  for (uint32_t bits = 1; bits < (1u << n); bits++) {
    std::vector<int> subset;
    for (int i = 0; i < n; i++)
      if ((bits >> i) & 1) subset.push_back(i);
    std::sort(subset.begin(), subset.end());
    do {
      bool ok = true;
      for (size_t k = 0; k < subset.size(); k++)
        if (!edge[size_t(subset[k])][size_t(subset[(k + 1) % subset.size()])]) {
          ok = false;
          break;
        }
      if (ok) return true;
    } while (std::next_permutation(subset.begin(), subset.end()));
  }
  return false;
}

CriterionResult criterion8() {
  auto t0 = Clock::now();
  CriterionResult r{8, "oracle equivalences", true, "", 0, {}};
  Check c;
  try {
    // (a) classify_selfref vs brute force
    std::mt19937 rng(7);
    for (int round = 0; round < 200 && c.ok; round++) {
      int n = 1 + pick(rng, 8);
      std::vector<const Term*> terms;
      for (int i = 0; i < n; i++) terms.push_back(mk_const("c" + std::to_string(i)));
      std::vector<const Formula*> entries;
      for (int i = 0; i < n; i++) {
        // body mentions up to two other terms
        const Formula* body = mk_atom("P");
        for (int k = 0; k < 2; k++)
          if (pick(rng, 100) < 55)
            body = mk_and(body, mk_proof(terms[size_t(pick(rng, n))], mk_atom("Q")));
        entries.push_back(mk_proof(terms[size_t(i)], body));
      }
      bool direct = false;
      bool brute = brute_selfref(entries, direct);
      SelfRefVerdict v = classify_selfref(entries);
      c.require(brute == (v.kind != SelfRefKind::NonSelfReferential),
                "classify/brute disagree on self-referentiality");
      c.require(direct == (v.kind == SelfRefKind::Direct),
                "classify/brute disagree on directness");
    }
    // (b) decide_g3s vs truth tables on box-free sequents
    for (int round = 0; round < 300 && c.ok; round++) {
      Sequent s;
      int na = pick(rng, 2), ns = 1 + pick(rng, 2);
      for (int i = 0; i < na; i++) s.ant.push_back(random_propositional_formula(rng, 2, 3));
      for (int i = 0; i < ns; i++) s.suc.push_back(random_propositional_formula(rng, 2, 3));
      const Formula* body = s.suc[0];
      for (size_t i = 1; i < s.suc.size(); i++) body = mk_or(body, s.suc[i]);
      const Formula* whole = body;
      for (auto* f : s.ant) whole = mk_implies(f, whole);
      bool taut = is_propositional_tautology(whole);
      SearchResult d = decide_g3s(s);
      c.require(taut == d.proved(), "decide_g3s/truth tables disagree on " + render(s));
    }
    // (c) proved sequents hold in every small S4 model
    std::vector<KripkeModel> models;
    for (int n = 1; n <= 3; n++) {
      for (const auto& rel : all_s4_relations(n)) {
        // all valuations over P, Q
        int cells = 2 * n;
        for (uint32_t bits = 0; bits < (1u << cells); bits++) {
          KripkeModel m;
          for (int w = 0; w < n; w++) m.worlds.push_back("w" + std::to_string(w));
          m.relation = rel;
          for (int w = 0; w < n; w++) {
            if ((bits >> (2 * w)) & 1) m.valuation["P"].insert(w);
            if ((bits >> (2 * w + 1)) & 1) m.valuation["Q"].insert(w);
          }
          models.push_back(std::move(m));
        }
      }
    }
    int proved = 0;
    for (int round = 0; round < 120 && c.ok; round++) {
      Sequent s;
      int na = pick(rng, 2), ns = 1 + pick(rng, 2);
      for (int i = 0; i < na; i++) s.ant.push_back(random_modal_formula(rng, 3, 2));
      for (int i = 0; i < ns; i++) s.suc.push_back(random_modal_formula(rng, 3, 2));
      SearchResult d = decide_g3s(s);
      if (!d.proved()) continue;
      proved++;
      for (const KripkeModel& m : models)
        if (!sequent_valid_in(m, s)) {
          c.require(false, "proved sequent fails in an S4 model: " + render(s));
          break;
        }
    }
    c.require(proved > 0, "no proved sequents sampled");
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  r.pass = c.ok;
  r.detail = c.why;
  r.ms = ms_since(t0);
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
  return {criterion1(), criterion2(), criterion3(), criterion4(),
          criterion5(), criterion6(), criterion7(), criterion8()};
}

int print_acceptance(std::ostream& os) {
  int failures = 0;
  for (const CriterionResult& r : run_acceptance()) {
    os << (r.pass ? "PASS" : "FAIL") << " criterion " << r.number << ": " << r.title;
    if (!r.detail.empty()) os << " [" << r.detail << "]";
    char buf[32];
    snprintf(buf, sizeof buf, " (%.1f ms)", r.ms);
    os << buf << "\n";
    for (const auto& f : r.findings) os << "  finding: " << f << "\n";
    if (!r.pass) failures++;
  }
  os.flush();
  return failures;
}

}  // namespace prehist
