#include <gtest/gtest.h>

#include "pdl/json_io.hpp"
#include "pdl/parser.hpp"
#include "pdl/random.hpp"
#include "pdl/semantics.hpp"

using namespace pdl;

namespace {

Formula F(const char* s) { return parse_formula(s); }
Program P(const char* s) { return parse_program(s); }

KripkeModel chain(std::initializer_list<std::pair<std::string, StatePair>> edges, int n) {
  KripkeModel m;
  m.states = n;
  for (const auto& [a, e] : edges) m.relations[a].insert(e);
  return m;
}

// Brute-force closure used as an independent oracle for star.
Relation closure(int n, Relation r) {
  for (int i = 0; i < n; ++i) r.emplace(i, i);
  for (bool grew = true; grew;) {
    grew = false;
    Relation next = r;
    for (auto [i, j] : r)
      for (auto [k, l] : r)
        if (j == k) grew |= next.emplace(i, l).second;
    r = std::move(next);
  }
  return r;
}

}  // namespace

TEST(Eval, SelfLoopSatisfiesStarFormula) {
  KripkeModel m = chain({{"a", {0, 0}}}, 1);
  EXPECT_TRUE(eval(m, 0, F("[a*]~[a]p & ~p")));
}

TEST(Eval, BottomIsFalse) {
  KripkeModel m = random_model(5, 4, {"p"}, {"a"}, 0.5);
  for (int w = 0; w < m.states; ++w) EXPECT_FALSE(eval(m, w, Formula::bottom()));
}

TEST(Eval, FailingTestMakesBoxTrue) {
  KripkeModel m;
  EXPECT_TRUE(eval(m, 0, F("[?(p)]q")));
}

TEST(Eval, LoadedFormulaAsUnloaded) {
  KripkeModel m = chain({{"a", {0, 1}}}, 2);
  m.valuation["p"] = {0};
  LoadedFormula lf{{P("a")}, F("p")};
  EXPECT_EQ(eval(m, 0, lf), eval(m, 0, lf.unload()));
  EXPECT_TRUE(eval(m, 0, lf));
}

TEST(Relate, Test) {
  KripkeModel m;
  m.states = 3;
  m.valuation["p"] = {0, 2};
  EXPECT_EQ(relate(m, P("?(p)")), (Relation{{0, 0}, {2, 2}}));
}

TEST(Relate, StarOnChain) {
  KripkeModel m = chain({{"a", {0, 1}}}, 2);
  EXPECT_EQ(relate(m, P("a*")), (Relation{{0, 0}, {0, 1}, {1, 1}}));
}

TEST(Relate, Union) {
  KripkeModel m = chain({{"a", {0, 1}}, {"b", {1, 0}}}, 2);
  EXPECT_EQ(relate(m, P("a u b")), (Relation{{0, 1}, {1, 0}}));
}

TEST(Relate, StarIsLeastReflexiveTransitiveSuperset) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    KripkeModel m = random_model(seed, 5, {"p"}, {"a", "b"}, 0.3);
    Program a = P("a ; ?(p) u b");
    EXPECT_EQ(relate(m, Program::star(a)), closure(m.states, relate(m, a)));
  }
}

TEST(RelateSeq, EmptyIsIdentity) {
  KripkeModel m = chain({}, 3);
  EXPECT_EQ(relate_seq(m, {}), (Relation{{0, 0}, {1, 1}, {2, 2}}));
}

TEST(RelateSeq, Composition) {
  KripkeModel m = chain({{"a", {0, 1}}, {"b", {1, 2}}}, 3);
  EXPECT_EQ(relate_seq(m, {P("a"), P("b")}), (Relation{{0, 2}}));
  EXPECT_EQ(relate_seq(m, {P("a u b")}), relate(m, P("a u b")));
}

TEST(RelateSeq, AgreesWithSequentialComposition) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    KripkeModel m = random_model(seed, 5, {"p"}, {"a", "b"}, 0.4);
    ProgramList dl{P("a*"), P("?(p)"), P("b u a")};
    EXPECT_EQ(relate_seq(m, dl), relate(m, sequence(dl)));
  }
}

TEST(Eval, BoxChainsQuantifyOverSuccessors) {
  RandomGen gen(21);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    KripkeModel m = random_model(seed, 5, {"p", "q"}, {"a", "b"}, 0.35);
    ProgramList dl{gen.program(3), gen.program(2)};
    Formula phi = gen.formula(4);
    Relation r = relate_seq(m, dl);
    for (int w = 0; w < m.states; ++w) {
      bool expect = true;
      for (auto [i, j] : r)
        if (i == w && !eval(m, j, phi)) expect = false;
      EXPECT_EQ(eval(m, w, boxes(dl, phi)), expect);
    }
  }
}

TEST(Eval, SubstitutionMatchesRevaluation) {
  RandomGen gen(4);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    KripkeModel m = random_model(seed, 4, {"p", "q"}, {"a", "b"}, 0.4);
    Formula phi = gen.formula(1 + gen.below(8));
    Formula sigma = gen.formula(1 + gen.below(5));
    KripkeModel revalued = m;
    revalued.valuation["p"].clear();
    for (int w = 0; w < m.states; ++w)
      if (eval(m, w, sigma)) revalued.valuation["p"].insert(w);
    Formula substituted = substitute({{"p", sigma}}, phi);
    for (int w = 0; w < m.states; ++w) EXPECT_EQ(eval(m, w, substituted), eval(revalued, w, phi));
  }
}

TEST(CheckSequent, Conjunction) {
  KripkeModel m;
  EXPECT_TRUE(check_sequent(m, 0, Sequent{}));
  EXPECT_FALSE(check_sequent(m, 0, Sequent{F("p"), F("~p")}));
}

TEST(RandomModel, Deterministic) {
  EXPECT_EQ(random_model(9, 5, {"p"}, {"a"}, 0.5), random_model(9, 5, {"p"}, {"a"}, 0.5));
}

TEST(RandomModel, DensityExtremes) {
  KripkeModel none = random_model(3, 5, {"p"}, {"a", "b"}, 0.0);
  for (const auto& [a, rel] : none.relations) EXPECT_TRUE(rel.empty());
  KripkeModel full = random_model(3, 1, {"p"}, {"a", "b"}, 1.0);
  EXPECT_EQ(full.states, 1);
  EXPECT_EQ(full.relations.at("a"), (Relation{{0, 0}}));
  EXPECT_EQ(full.relations.at("b"), (Relation{{0, 0}}));
  EXPECT_NO_THROW(random_model(77, 5, {"p", "q"}, {"a"}, 0.5).validate());
}

TEST(ModelJson, ExactLayout) {
  KripkeModel m = chain({{"a", {1, 0}}, {"a", {0, 1}}}, 2);
  m.valuation["p"] = {1};
  EXPECT_EQ(model_to_json(m, 0).dump(),
            R"({"states":2,"relations":{"a":[[0,1],[1,0]]},"valuation":{"p":[1]},"point":0})");
}

TEST(ModelJson, RoundTrip) {
  KripkeModel m = random_model(12, 5, {"p", "q"}, {"a", "b"}, 0.4);
  PointedModel back = model_from_json(nlohmann::json::parse(model_to_json(m, 1).dump()));
  EXPECT_EQ(back.model, m);
  EXPECT_EQ(back.point, 1);
}
