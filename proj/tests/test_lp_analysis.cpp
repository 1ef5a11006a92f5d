#include <doctest.h>

#include "prehist/lp_analysis.hpp"
#include "prehist/prover.hpp"
#include "prehist/selftest.hpp"

using namespace prehist;

TEST_CASE("hilbert derivations") {
  // A = instance of A1; c:A by R2 -> accepted with CS = {c:A}
  std::vector<HilbertStep> steps;
  steps.push_back({parse_formula("t:P -> P", Language::Lp), HilbertStep::Kind::Axiom, -1, -1, -1});
  steps.push_back({parse_formula("c:(t:P -> P)", Language::Lp), HilbertStep::Kind::Necessitation,
                   -1, -1, 0});
  HilbertReport rep = check_hilbert(steps, {});
  CHECK(rep.ok);
  REQUIRE(rep.generated_cs.size() == 1);
  CHECK(rep.generated_cs[0] == parse_formula("c:(t:P -> P)", Language::Lp));

  // a small modus ponens chain from an assumption
  std::vector<HilbertStep> mp;
  mp.push_back({parse_formula("t:P", Language::Lp), HilbertStep::Kind::Assumption, -1, -1, -1});
  mp.push_back({parse_formula("t:P -> P", Language::Lp), HilbertStep::Kind::Axiom, -1, -1, -1});
  mp.push_back({parse_formula("P", Language::Lp), HilbertStep::Kind::ModusPonens, 1, 0, -1});
  CHECK(check_hilbert(mp, {parse_formula("t:P", Language::Lp)}).ok);

  // forward references are rejected
  std::vector<HilbertStep> bad;
  bad.push_back({parse_formula("P", Language::Lp), HilbertStep::Kind::ModusPonens, 1, 2, -1});
  CHECK_FALSE(check_hilbert(bad, {}).ok);

  // necessitation of a non-axiom is rejected
  std::vector<HilbertStep> bad2;
  bad2.push_back({parse_formula("c:(P -> Q)", Language::Lp), HilbertStep::Kind::Necessitation, -1,
                  -1, -1});
  CHECK_FALSE(check_hilbert(bad2, {}).ok);
}

TEST_CASE("inputs of the g3lp figure") {
  Proof p = proof_from_json(fixture_g3lp_proof());
  auto ins = inputs_of(p);
  REQUIRE(ins.size() == 3);
  // sorted by rendering: (t*x):P, t:(...), x:(...)
  CHECK(render(ins[0].formula) == "(t*x):P");
  CHECK(ins[0].from_term_rule);
  CHECK_FALSE(ins[0].from_const_rule);
  CHECK(render(ins[1].formula) == "t:(P & ~(t*x):P -> P)");
  CHECK(ins[1].from_const_rule);
  CHECK(render(ins[2].formula) == "x:(P & ~(t*x):P)");
  CHECK(ins[2].from_term_rule);
}

TEST_CASE("no inputs without colon rules") {
  SearchResult r = search_g3lp(parse_sequent("=> P -> P", Language::Lp));
  REQUIRE(r.proved());
  CHECK(inputs_of(*r.proof).empty());
}

TEST_CASE("classify_selfref examples") {
  SelfRefVerdict direct =
      classify_selfref({parse_formula("t:(P & ~(t*x):P -> P)", Language::Lp)});
  CHECK(direct.kind == SelfRefKind::Direct);
  REQUIRE(direct.witness.size() == 1);

  SelfRefVerdict none = classify_selfref({parse_formula("c:(P -> P)", Language::Lp)});
  CHECK(none.kind == SelfRefKind::NonSelfReferential);

  // c0:(c1:P -> c1:P), c1:(c0:Q -> c0:Q): a two-cycle
  SelfRefVerdict two = classify_selfref({
      parse_formula("c0:(c1:P -> c1:P)", Language::Lp),
      parse_formula("c1:(c0:Q -> c0:Q)", Language::Lp),
  });
  CHECK(two.kind == SelfRefKind::Cyclic);
  CHECK(two.witness.size() == 2);
}

TEST_CASE("chain extraction on the g3lp figure") {
  Proof p = proof_from_json(fixture_g3lp_proof());
  PrehistoricGraph g = prehistoric_graph(p, GraphMode::LpTerm, CalculusVariant::G3lp);
  auto cyc = find_cycle(g, false);
  REQUIRE(cyc.has_value());
  auto chain = extract_selfref_chain(p, *cyc);
  REQUIRE_FALSE(chain.empty());
  SelfRefVerdict v = classify_selfref(chain);
  CHECK(v.kind != SelfRefKind::NonSelfReferential);

  // a cycle that is not in the proof is rejected
  CHECK_THROWS(extract_selfref_chain(p, std::vector<int>{9999}));
}

TEST_CASE("counterexample separation: IN self-referential, CS empty") {
  G3lpOptions forbid;
  forbid.forbid_const_intro = true;
  SearchResult r = search_g3lp(
      parse_sequent("=> y:(P & ~(y*x):P -> P) -> ~x:(P & ~(y*x):P)", Language::Lp), forbid);
  REQUIRE(r.proved());
  auto ins = inputs_of(*r.proof);
  std::vector<const Formula*> fs;
  for (const auto& e : ins) {
    CHECK_FALSE(e.from_const_rule);
    fs.push_back(e.formula);
  }
  PrehistoricGraph g = prehistoric_graph(*r.proof, GraphMode::LpTerm, CalculusVariant::G3lp);
  auto cyc = find_cycle(g, false);
  REQUIRE(cyc.has_value());
  auto chain = extract_selfref_chain(*r.proof, *cyc);
  CHECK(classify_selfref(chain).kind != SelfRefKind::NonSelfReferential);
  CHECK(classify_selfref(fs).kind != SelfRefKind::NonSelfReferential);
}

TEST_CASE("apply_realization") {
  RealizationFunction r;
  r.map[{AnnKind::Minus, 0}] = parse_term("x");
  r.map[{AnnKind::Plus, 0}] = parse_term("t*x");
  const Formula* af = parse_formula("~[-0](P & ~[+0]P)", Language::Modal);
  const Formula* realized = apply_realization(r, af);
  CHECK(realized == parse_formula("~x:(P & ~(t*x):P)", Language::Lp));
  // projection inverts realization
  CHECK(forgetful(realized) == erase_annotations(af));
  // missing symbols are an error
  RealizationFunction partial;
  partial.map[{AnnKind::Minus, 0}] = parse_term("x");
  CHECK_THROWS(apply_realization(partial, af));
  // unannotated boxes are an error
  CHECK_THROWS(apply_realization(r, parse_formula("[]P", Language::Modal)));
}

TEST_CASE("check_normal") {
  std::vector<const Formula*> cs{parse_formula("c:(P -> P)", Language::Lp)};
  RealizationFunction ok;
  ok.map[{AnnKind::Minus, 0}] = parse_term("x");
  ok.map[{AnnKind::Minus, 1}] = parse_term("y");
  ok.map[{AnnKind::Plus, 0}] = parse_term("t*x");
  CHECK(check_normal(ok, cs));

  RealizationFunction dup;
  dup.map[{AnnKind::Minus, 0}] = parse_term("x");
  dup.map[{AnnKind::Minus, 1}] = parse_term("x");
  CHECK_FALSE(check_normal(dup, cs));

  RealizationFunction nonvar;
  nonvar.map[{AnnKind::Minus, 0}] = parse_term("t*x");
  CHECK_FALSE(check_normal(nonvar, cs));

  std::vector<const Formula*> bad_cs{parse_formula("c:(P -> P)", Language::Lp),
                                     parse_formula("c:(Q -> Q)", Language::Lp)};
  CHECK_FALSE(cs_injective(bad_cs));
  CHECK_FALSE(check_normal(ok, bad_cs));
}

TEST_CASE("cs is a subset of inputs with matching tags") {
  auto corpus = generate_g3lp_corpus(40, 83);
  for (const Proof& p : corpus) {
    auto ins = inputs_of(p);
    for (const auto& e : ins) {
      if (!e.from_const_rule) continue;
      CHECK(e.formula->term->op == TermOp::Const);
    }
  }
}
