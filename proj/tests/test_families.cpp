#include <doctest.h>

#include "prehist/families.hpp"
#include "prehist/prover.hpp"
#include "prehist/selftest.hpp"

using namespace prehist;

TEST_CASE("classification and annotation of the paper figure") {
  Proof p = proof_from_json(fixture_g3s_proof());
  AnnotatedProof ap = classify_and_annotate(p, CalculusVariant::G3sFull);
  int np = 0, nn = 0, no = 0;
  for (const auto& fi : ap.analysis.families) {
    np += fi.kind == FamilyClass::PrincipalPositive;
    nn += fi.kind == FamilyClass::Negative;
    no += fi.kind == FamilyClass::NonPrincipalPositive;
  }
  CHECK(np == 1);
  CHECK(nn == 1);
  CHECK(no == 0);
  CHECK(render(ap.proof.endsequent()) == "=> ~[-0](P & ~[+0]P)");
  // erasing annotations returns the source proof
  Proof erased = erase_proof_annotations(ap.proof);
  REQUIRE(erased.size() == p.size());
  for (int i = 0; i < p.size(); i++) CHECK(erased.at(i).sequent == p.at(i).sequent);
}

TEST_CASE("annotation of => []P -> []P") {
  SearchResult r = decide_g3s(parse_sequent("=> []P -> []P", Language::Modal));
  REQUIRE(r.proved());
  AnnotatedProof ap = classify_and_annotate(*r.proof, CalculusVariant::G3sFull);
  int np = 0, nn = 0;
  for (const auto& fi : ap.analysis.families) {
    np += fi.kind == FamilyClass::PrincipalPositive;
    nn += fi.kind == FamilyClass::Negative;
  }
  CHECK(np == 1);
  CHECK(nn == 1);
  // and its principal graph has no edges
  PrehistoricGraph g = prehistoric_graph(*r.proof, GraphMode::G3sPrincipal, CalculusVariant::G3sFull);
  CHECK(g.edges.empty());
  CHECK_FALSE(find_cycle(g, false).has_value());
}

TEST_CASE("no families without boxes") {
  SearchResult r = decide_g3s(parse_sequent("=> P -> P", Language::Modal));
  REQUIRE(r.proved());
  AnnotatedProof ap = classify_and_annotate(*r.proof, CalculusVariant::G3sFull);
  CHECK(ap.analysis.families.empty());
}

TEST_CASE("principal graph of the figure") {
  Proof p = proof_from_json(fixture_g3s_proof());
  PrehistoricGraph g = prehistoric_graph(p, GraphMode::G3sPrincipal, CalculusVariant::G3sFull);
  REQUIRE(g.vertex_names.size() == 1);
  CHECK(g.vertex_names[0] == "p0");
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].from == 0);
  CHECK(g.edges[0].to == 0);
  CHECK(g.edges[0].label == 'L');
  auto cyc = find_cycle(g, false);
  REQUIRE(cyc.has_value());
  CHECK(*cyc == std::vector<int>{0});
  CHECK(find_cycle(g, true).has_value());
}

TEST_CASE("cycle detector basics") {
  PrehistoricGraph g;
  g.mode = GraphMode::AllBox;
  g.vertex_names = {"a", "b"};
  CHECK_FALSE(find_cycle(g, false).has_value());
  g.edges.push_back({0, 1, 'R'});
  g.edges.push_back({1, 0, 'L'});
  auto c = find_cycle(g, false);
  REQUIRE(c.has_value());
  CHECK(c->size() == 2);
  CHECK_FALSE(find_cycle(g, true).has_value());
}

TEST_CASE("diamonds and cuts are rejected where undefined") {
  SearchResult r = decide_g3s(parse_sequent("=> <>P -> <>P", Language::Modal));
  REQUIRE(r.proved());
  CHECK_THROWS(classify_and_annotate(*r.proof, CalculusVariant::G3sFull));
  Proof cut = generate_cut_corpus(1, 5)[0];
  CHECK_THROWS(classify_families(cut, CalculusVariant::G3sCut));
  // but the all-box graph handles them
  CHECK_NOTHROW(prehistoric_graph(cut, GraphMode::AllBox, CalculusVariant::G3sCut));
}

TEST_CASE("prehistory witnesses and the global lemma") {
  Proof p = proof_from_json(fixture_g3s_proof());
  AnnotatedProof ap = classify_and_annotate(p, CalculusVariant::G3sFull);
  auto ws = prehistory_witness(ap, "p0", "p0");
  CHECK_FALSE(ws.empty());
  CHECK_THROWS(prehistory_witness(ap, "p7", "p0"));

  SearchResult r = decide_g3s(parse_sequent("=> []P -> []P", Language::Modal));
  AnnotatedProof aq = classify_and_annotate(*r.proof, CalculusVariant::G3sFull);
  CHECK(prehistory_witness(aq, "p0", "p0").empty());
}

TEST_CASE("global lemma biconditional over the corpus") {
  // witness(h, i) nonempty iff h < i, for principal families
  auto corpus = generate_g3s_corpus(120, 17);
  for (const Proof& p : corpus) {
    AnnotatedProof ap = classify_and_annotate(p, CalculusVariant::G3sMin);
    PrehistoricGraph g = prehistoric_graph(p, GraphMode::G3sPrincipal, CalculusVariant::G3sMin);
    std::vector<const FamilyInfo*> principals;
    for (const auto& fi : ap.analysis.families)
      if (fi.kind == FamilyClass::PrincipalPositive) principals.push_back(&fi);
    for (const auto* h : principals)
      for (const auto* i : principals) {
        bool has_witness = !prehistory_witness(ap, h->name, i->name).empty();
        bool has_edge = g.has_edge(h->number, i->number);
        CHECK(has_witness == has_edge);
      }
  }
}

TEST_CASE("left cycle lemma over the corpus (reported, not assumed)") {
  // the paper states the equivalence without proof; violations would be findings
  auto corpus = generate_g3s_corpus(120, 23);
  int violations = 0;
  for (const Proof& p : corpus) {
    PrehistoricGraph g = prehistoric_graph(p, GraphMode::G3sPrincipal, CalculusVariant::G3sMin);
    bool any = find_cycle(g, false).has_value();
    bool left = find_cycle(g, true).has_value();
    if (any != left) {
      violations++;
      MESSAGE("left-cycle lemma violation on ", render(p.endsequent()));
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("every prehistoric edge points at a principal family in cut-free proofs") {
  // negative and non-principal families are never introduced by (=> []),
  // so they have no prehistoric families themselves (no incoming edges)
  auto corpus = generate_g3s_corpus(100, 29);
  for (const Proof& p : corpus) {
    FamilyAnalysis fa = classify_families(p, CalculusVariant::G3sMin);
    PrehistoricGraph g = prehistoric_graph(p, GraphMode::AllBox, CalculusVariant::G3sMin);
    // all-box vertices are class-indexed
    for (const auto& e : g.edges) {
      const FamilyInfo& to = fa.families[size_t(e.to)];
      CHECK(to.kind == FamilyClass::PrincipalPositive);
    }
  }
}

TEST_CASE("determinism of family enumeration and graphs") {
  Proof p = proof_from_json(fixture_g3lp_projection());
  auto g1 = prehistoric_graph(p, GraphMode::AllBox, CalculusVariant::G3sBoxCut);
  auto g2 = prehistoric_graph(p, GraphMode::AllBox, CalculusVariant::G3sBoxCut);
  CHECK(g1.vertex_names == g2.vertex_names);
  CHECK(g1.edges == g2.edges);
  CHECK(g1.to_dot() == g2.to_dot());
  CHECK(g1.to_json() == g2.to_json());
}

TEST_CASE("lp term graph of the g3lp figure") {
  Proof p = proof_from_json(fixture_g3lp_proof());
  PrehistoricGraph g = prehistoric_graph(p, GraphMode::LpTerm, CalculusVariant::G3lp);
  auto cyc = find_cycle(g, false);
  REQUIRE(cyc.has_value());
  CHECK(cyc->size() == 1);  // a term family with a relation to itself
}
