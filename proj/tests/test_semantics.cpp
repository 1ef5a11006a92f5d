#include <doctest.h>

#include "prehist/selftest.hpp"
#include "prehist/semantics.hpp"

using namespace prehist;

TEST_CASE("the singleton model computation") {
  KripkeModel m = KripkeModel::from_json(fixture_kripke());
  CHECK(is_s4_frame(m));
  CHECK_FALSE(eval(m, "w", parse_formula("[](P & ~[]P -> P) -> P", Language::Modal)));
  CHECK(eval(m, "w", parse_formula("[](P & ~[]P -> P)", Language::Modal)));
  CHECK_FALSE(eval(m, "w", mk_bottom()));
  // unknown atoms default to false
  CHECK_FALSE(eval(m, "w", mk_atom("Zeta")));
  CHECK_THROWS(eval(m, "v", mk_atom("P")));
}

TEST_CASE("s4 frame check") {
  KripkeModel m;
  m.worlds = {"a", "b"};
  m.relation = {{0, 1}};
  CHECK_FALSE(is_s4_frame(m));  // irreflexive
  m.relation = {{0, 0}, {1, 1}, {0, 1}};
  CHECK(is_s4_frame(m));

  KripkeModel t;
  t.worlds = {"a", "b", "c"};
  t.relation = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}};
  CHECK_FALSE(is_s4_frame(t));  // missing (a, c)
  t.relation.insert({0, 2});
  CHECK(is_s4_frame(t));
}

TEST_CASE("box truth is monotone along R in S4 frames") {
  for (const auto& rel : all_s4_relations(3)) {
    KripkeModel m;
    m.worlds = {"a", "b", "c"};
    m.relation = rel;
    m.valuation["P"] = {1};
    const Formula* f = mk_box(mk_atom("P"));
    for (auto [u, v] : rel)
      if (eval(m, u, f)) CHECK(eval(m, v, f));
  }
}

TEST_CASE("model json round trip") {
  KripkeModel m = KripkeModel::from_json(fixture_kripke());
  KripkeModel m2 = KripkeModel::from_json(m.to_json());
  CHECK(m.worlds == m2.worlds);
  CHECK(m.relation == m2.relation);
}
