#include <doctest.h>

#include <fstream>
#include <sstream>

#include "prehist/correspond.hpp"
#include "prehist/selftest.hpp"

using namespace prehist;

namespace {
std::string read_fixture(const char* name) {
  std::ifstream in(std::string(PREHIST_FIXTURE_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Proof single_node(const char* sequent, Rule rule, Language lang = Language::Modal) {
  Proof p;
  p.root = add_node(p, rule, parse_sequent(sequent, lang), {}, {});
  return p;
}
}  // namespace

TEST_CASE("fixture files match the embedded copies") {
  CHECK(read_fixture("g3s_example_proof.json") == fixture_g3s_proof());
  CHECK(read_fixture("g3lp_example_proof.json") == fixture_g3lp_proof());
  CHECK(read_fixture("g3lp_example_projection.json") == fixture_g3lp_projection());
  CHECK(read_fixture("g3s_example_realization.json") == fixture_g3s_realization());
  CHECK(read_fixture("kripke_singleton.json") == fixture_kripke());
}

TEST_CASE("paper figures validate under their calculi") {
  Proof g3s = proof_from_json(fixture_g3s_proof());
  CHECK(check_proof(g3s, CalculusVariant::G3sFull).ok);
  CHECK_FALSE(check_proof(g3s, CalculusVariant::G3sMin).ok);  // uses & and ~

  Proof g3lp = proof_from_json(fixture_g3lp_proof());
  CHECK(check_proof(g3lp, CalculusVariant::G3lp).ok);

  Proof proj = proof_from_json(fixture_g3lp_projection());
  CHECK(check_proof(proj, CalculusVariant::G3sBoxCut).ok);
  CHECK_FALSE(check_proof(proj, CalculusVariant::G3sFull).ok);  // contains a boxcut
}

TEST_CASE("axiom shapes") {
  CHECK(check_proof(single_node("P => P", Rule::Ax), CalculusVariant::G3sFull).ok);
  CHECK_FALSE(check_proof(single_node("=> P", Rule::Ax), CalculusVariant::G3sFull).ok);
  CHECK(check_proof(single_node("bot => Q", Rule::BotL), CalculusVariant::G3sFull).ok);
  // the axiom pair must be atomic
  CHECK_FALSE(check_proof(single_node("[]P => []P", Rule::Ax), CalculusVariant::G3sFull).ok);
  CHECK(check_proof(single_node("[]P, Q => Q", Rule::Ax), CalculusVariant::G3sFull).ok);
}

TEST_CASE("rule shape diagnostics") {
  // (=> []) premise must keep only boxed antecedents
  Proof p;
  int leaf = add_node(p, Rule::Ax, parse_sequent("P, Q => P", Language::Modal), {}, {});
  PrincipalRef pr;
  pr.has_occ = true;
  pr.side = Side::Suc;
  pr.index = 0;
  p.root = add_node(p, Rule::BoxR, parse_sequent("P, Q => []P", Language::Modal), pr, {leaf});
  ValidationReport rep = check_proof(p, CalculusVariant::G3sFull);
  CHECK_FALSE(rep.ok);
  CHECK(rep.issues.size() == 1);
}

TEST_CASE("colon-r-const side condition") {
  // c:A with A an axiom passes in tautology mode, fails for a non-axiom
  Proof good;
  int l1 = add_node(good, Rule::Ax, parse_sequent("P => P", Language::Lp), {}, {});
  PrincipalRef impr;
  impr.has_occ = true;
  impr.side = Side::Suc;
  impr.index = 0;
  int l2 = add_node(good, Rule::ImpR, parse_sequent("=> P -> P", Language::Lp), impr, {l1});
  good.root = add_node(good, Rule::ColonRc, parse_sequent("Q => c:(P -> P), R", Language::Lp), impr, {l2});
  CHECK(check_proof(good, CalculusVariant::G3lp).ok);

  Proof bad = good;
  bad.at(bad.root).sequent = parse_sequent("Q => c:(P -> Q), R", Language::Lp);
  CHECK_FALSE(check_proof(bad, CalculusVariant::G3lp).ok);

  // schema-list mode: A & B -> A matches, P -> P does not unless listed
  AxiomChecker narrow = AxiomChecker::schema_list({parse_formula("A & B -> A", Language::Lp)});
  CHECK_FALSE(check_proof(good, CalculusVariant::G3lp, narrow).ok);
  CHECK(narrow.is_lp_axiom(parse_formula("x:P & Q -> x:P", Language::Lp)));
}

TEST_CASE("lp axiom recognition") {
  AxiomChecker ax;
  CHECK(AxiomChecker::axiom_a1_to_a4(parse_formula("t:P -> P", Language::Lp)) == 1);
  CHECK(AxiomChecker::axiom_a1_to_a4(
            parse_formula("s:(P -> Q) -> (t:P -> (s*t):Q)", Language::Lp)) == 2);
  CHECK(AxiomChecker::axiom_a1_to_a4(parse_formula("t:P -> !t:t:P", Language::Lp)) == 3);
  CHECK(AxiomChecker::axiom_a1_to_a4(parse_formula("s:P -> (s+t):P", Language::Lp)) == 4);
  CHECK(AxiomChecker::axiom_a1_to_a4(parse_formula("t:P -> (s+t):P", Language::Lp)) == 4);
  CHECK(AxiomChecker::axiom_a1_to_a4(parse_formula("t:P -> Q", Language::Lp)) == 0);
  CHECK(ax.is_lp_axiom(parse_formula("P & ~(t*x):P -> P", Language::Lp)));
  CHECK_FALSE(ax.is_lp_axiom(parse_formula("P -> Q", Language::Lp)));
  CHECK(is_propositional_tautology(parse_formula("x:P -> x:P", Language::Lp)));
  CHECK_FALSE(is_propositional_tautology(parse_formula("x:P -> P", Language::Lp)));
}

TEST_CASE("correspondence classes of the figures") {
  Proof g3s = proof_from_json(fixture_g3s_proof());
  Correspondence c = build_correspondence(g3s, CalculusVariant::G3sFull);
  CHECK(c.class_count == 2);

  Proof proj = proof_from_json(fixture_g3lp_projection());
  Correspondence cp = build_correspondence(proj, CalculusVariant::G3sBoxCut);
  CHECK(cp.class_count == 3);
  int rootless = 0;
  for (int cls = 0; cls < cp.class_count; cls++)
    if (root_occurrences_of_class(proj, cp, cls).empty()) rootless++;
  CHECK(rootless == 1);

  // one-node proof P => P has no boxes at all
  Proof tiny = single_node("P => P", Rule::Ax);
  Correspondence ct = build_correspondence(tiny, CalculusVariant::G3sFull);
  CHECK(ct.class_count == 0);
}

TEST_CASE("trace_to_root") {
  Proof g3s = proof_from_json(fixture_g3s_proof());
  Correspondence c = build_correspondence(g3s, CalculusVariant::G3sFull);
  // every symbol traces to exactly one root occurrence
  for (int s = 0; s < c.table.total; s++) CHECK_NOTHROW(trace_to_root(g3s, c, s));
  // a root occurrence traces to itself
  int occ = c.table.occ_of(g3s.root, Side::Suc, 0);
  int sym = c.table.sym_at(occ, Path{0});
  CHECK(trace_to_root(g3s, c, sym) == sym);
  // the premise of the (=> []) rule: its inner box traces to the root's inner box
  int inner_root = c.table.sym_at(occ, Path{0, 0, 1, 0});
  bool found = false;
  for (int id = 0; id < g3s.size(); id++) {
    if (g3s.at(id).rule != Rule::BoxR) continue;
    int prem = g3s.at(id).premises[0];
    int pocc = c.table.occ_of(prem, Side::Ant, 0);  // [](P & ~[]P)
    int psym = c.table.sym_at(pocc, Path{0, 1, 0});  // the boxed P inside
    CHECK(trace_to_root(g3s, c, psym) == inner_root);
    found = true;
  }
  CHECK(found);
}

TEST_CASE("totality of trace_to_root on machine-found proofs") {
  auto corpus = generate_g3s_corpus(200, 11);
  for (const Proof& p : corpus) {
    Correspondence c = build_correspondence(p, CalculusVariant::G3sMin);
    for (int s = 0; s < c.table.total; s++) CHECK_NOTHROW(trace_to_root(p, c, s));
  }
}

TEST_CASE("proof json round trip") {
  Proof p = proof_from_json(fixture_g3lp_proof());
  std::string text = proof_to_json(p, Language::Lp);
  Proof q = proof_from_json(text);
  REQUIRE(p.size() == q.size());
  CHECK(proof_to_json(q, Language::Lp) == text);
}
