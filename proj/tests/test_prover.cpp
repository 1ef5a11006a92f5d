#include <doctest.h>

#include "prehist/prover.hpp"
#include "prehist/selftest.hpp"
#include "prehist/semantics.hpp"

using namespace prehist;

TEST_CASE("decide_g3s on the paper's sequents") {
  SearchResult r1 = decide_g3s(parse_sequent("=> ~[](P & ~[]P)", Language::Modal));
  CHECK(r1.kind == SearchResult::Kind::Proved);
  REQUIRE(r1.proof);
  CHECK(check_proof(*r1.proof, CalculusVariant::G3sFull).ok);
  CHECK(render(r1.proof->endsequent()) == "=> ~[](P & ~[]P)");

  SearchResult r2 = decide_g3s(parse_sequent("=> [](P & ~[]P -> P) -> P", Language::Modal));
  CHECK(r2.kind == SearchResult::Kind::Unprovable);

  SearchResult r3 = decide_g3s(parse_sequent("=> P -> []P", Language::Modal));
  CHECK(r3.kind == SearchResult::Kind::Unprovable);

  // S4 staples
  CHECK(decide_g3s(parse_sequent("=> []P -> P", Language::Modal)).proved());
  CHECK(decide_g3s(parse_sequent("=> []P -> [][]P", Language::Modal)).proved());
  CHECK(decide_g3s(parse_sequent("=> [](P -> Q) -> []P -> []Q", Language::Modal)).proved());
  CHECK(decide_g3s(parse_sequent("=> <>P -> []<>P", Language::Modal)).kind ==
        SearchResult::Kind::Unprovable);  // an S5 principle
  CHECK(decide_g3s(parse_sequent("=> <><>P -> <>P", Language::Modal)).proved());
}

TEST_CASE("decide_g3s determinism") {
  Sequent s = parse_sequent("=> [](P & ~[]P -> P) -> ~[](P & ~[]P)", Language::Modal);
  SearchResult a = decide_g3s(s);
  SearchResult b = decide_g3s(s);
  CHECK(a.stats.expanded == b.stats.expanded);
  CHECK(a.stats.loop_hits == b.stats.loop_hits);
  CHECK(proof_to_json(*a.proof, Language::Modal) == proof_to_json(*b.proof, Language::Modal));
}

TEST_CASE("cycle-free search") {
  // the example theorem has proofs, but all have a prehistoric cycle
  SearchResult r1 = find_cycle_free_proof(parse_sequent("=> ~[](P & ~[]P)", Language::Modal));
  CHECK(r1.kind == SearchResult::Kind::NoCycleFreeProof);

  SearchResult r2 = find_cycle_free_proof(parse_sequent("=> []P -> []P", Language::Modal));
  CHECK(r2.kind == SearchResult::Kind::CycleFreeProved);
  REQUIRE(r2.proof);
  CHECK(check_proof(*r2.proof, CalculusVariant::G3sMin).ok);
  PrehistoricGraph g = prehistoric_graph(*r2.proof, GraphMode::G3sPrincipal, CalculusVariant::G3sMin);
  CHECK_FALSE(find_cycle(g, false).has_value());

  // unprovable sequents have no cycle-free proof either
  SearchResult r3 = find_cycle_free_proof(parse_sequent("=> []P", Language::Modal));
  CHECK(r3.kind == SearchResult::Kind::NoCycleFreeProof);
}

TEST_CASE("cycle-free results are consistent with plain provability") {
  std::mt19937 rng(51);
  int proved_agree = 0;
  for (int round = 0; round < 60; round++) {
    Sequent s;
    s.suc.push_back(random_minimal_formula(rng, 3, 2));
    SearchResult plain = decide_g3s(s);
    SearchResult cf = find_cycle_free_proof(s);
    if (cf.kind == SearchResult::Kind::CycleFreeProved) {
      CHECK(plain.proved());
      REQUIRE(cf.proof);
      CHECK(check_proof(*cf.proof, CalculusVariant::G3sMin).ok);
      PrehistoricGraph g =
          prehistoric_graph(*cf.proof, GraphMode::G3sPrincipal, CalculusVariant::G3sMin);
      CHECK_FALSE(find_cycle(g, false).has_value());
      proved_agree++;
    }
  }
  CHECK(proved_agree > 3);
}

TEST_CASE("search_g3lp on the paper's sequents") {
  G3lpOptions forbid;
  forbid.forbid_const_intro = true;
  SearchResult r1 = search_g3lp(
      parse_sequent("=> y:(P & ~(y*x):P -> P) -> ~x:(P & ~(y*x):P)", Language::Lp), forbid);
  CHECK(r1.kind == SearchResult::Kind::Proved);
  REQUIRE(r1.proof);
  CHECK(check_proof(*r1.proof, CalculusVariant::G3lp).ok);

  SearchResult r2 = search_g3lp(parse_sequent("=> ~x:(P & ~(t*x):P)", Language::Lp));
  CHECK(r2.kind == SearchResult::Kind::Proved);
  REQUIRE(r2.proof);
  CHECK(check_proof(*r2.proof, CalculusVariant::G3lp).ok);

  SearchResult r3 = search_g3lp(parse_sequent("=> x:P", Language::Lp));
  CHECK((r3.kind == SearchResult::Kind::Unprovable ||
         r3.kind == SearchResult::Kind::BoundExceeded));
}

TEST_CASE("search_g3lp respects the constant flag") {
  // c:(P -> P) needs (=> :)c
  SearchResult with_c = search_g3lp(parse_sequent("=> c:(P -> P)", Language::Lp));
  CHECK(with_c.kind == SearchResult::Kind::Proved);
  G3lpOptions forbid;
  forbid.forbid_const_intro = true;
  SearchResult without_c = search_g3lp(parse_sequent("=> c:(P -> P)", Language::Lp), forbid);
  CHECK_FALSE(without_c.proved());
}

TEST_CASE("propositional fragment agrees with truth tables") {
  std::mt19937 rng(61);
  for (int round = 0; round < 150; round++) {
    Sequent s;
    int na = int(rng() % 2), ns = 1 + int(rng() % 2);
    for (int i = 0; i < na; i++) s.ant.push_back(random_propositional_formula(rng, 2, 3));
    for (int i = 0; i < ns; i++) s.suc.push_back(random_propositional_formula(rng, 2, 3));
    const Formula* body = s.suc[0];
    for (size_t i = 1; i < s.suc.size(); i++) body = mk_or(body, s.suc[i]);
    const Formula* whole = body;
    for (auto* f : s.ant) whole = mk_implies(f, whole);
    CHECK(decide_g3s(s).proved() == is_propositional_tautology(whole));
  }
}

TEST_CASE("proved sequents are S4-valid on small frames") {
  std::mt19937 rng(71);
  std::vector<KripkeModel> models;
  for (const auto& rel : all_s4_relations(2)) {
    for (uint32_t bits = 0; bits < 16; bits++) {
      KripkeModel m;
      m.worlds = {"a", "b"};
      m.relation = rel;
      for (int w = 0; w < 2; w++) {
        if ((bits >> (2 * w)) & 1) m.valuation["P"].insert(w);
        if ((bits >> (2 * w + 1)) & 1) m.valuation["Q"].insert(w);
      }
      models.push_back(std::move(m));
    }
  }
  int proved = 0;
  for (int round = 0; round < 80; round++) {
    Sequent s;
    s.suc.push_back(random_modal_formula(rng, 3, 2));
    SearchResult d = decide_g3s(s);
    if (!d.proved()) continue;
    proved++;
    for (const auto& m : models) CHECK(sequent_valid_in(m, s));
  }
  CHECK(proved > 5);
}
