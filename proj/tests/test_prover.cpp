#include <gtest/gtest.h>

#include "pdl/parser.hpp"
#include "pdl/properties.hpp"
#include "pdl/prover.hpp"

using namespace pdl;

namespace {

Formula F(const char* s) { return parse_formula(s); }
Program P(const char* s) { return parse_program(s); }

Member loaded(std::initializer_list<const char*> prefix, const char* tail) {
  ProgramList dl;
  for (const char* x : prefix) dl.push_back(P(x));
  return Member(LoadedFormula{std::move(dl), F(tail)});
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto i = hay.find(needle); i != std::string::npos; i = hay.find(needle, i + 1)) ++n;
  return n;
}

}  // namespace

TEST(Projection, KeepsOnlyMatchingBoxes) {
  Sequent s{F("[a]p"), F("[b]q"), F("~[a]r"), F("[a][b]p"), F("[a*]p")};
  EXPECT_EQ(projection(s, "a"), (Sequent{F("p"), F("[b]p")}));
  EXPECT_TRUE(projection(s, "c").empty());
}

TEST(Closed, LiteralClashAndBottom) {
  EXPECT_TRUE(is_closed(Sequent{F("p"), F("~p")}));
  EXPECT_TRUE(is_closed(Sequent{F("bot"), F("q")}));
  EXPECT_FALSE(is_closed(Sequent{F("p"), F("~~p")}));
}

TEST(Closed, ModuloUnloading) {
  Sequent s({Member(F("~~[a*]p")), loaded({"a*"}, "p")});
  EXPECT_TRUE(is_closed(s));
  EXPECT_FALSE(is_closed(Sequent({Member(F("[a*]q")), loaded({"a*"}, "p")})));
  Sequent t({Member(F("[a][a*]p")), loaded({"a", "a*"}, "p")});
  EXPECT_TRUE(is_closed(t));
}

TEST(RuleChildren, NegAndBranches) {
  auto kids = rule_children(Sequent{F("~(p & q)"), F("r")}, RuleId::NegAnd, Member(F("~(p & q)")));
  EXPECT_EQ(kids, (std::vector<Sequent>{Sequent{F("~p"), F("r")}, Sequent{F("~q"), F("r")}}));
}

TEST(RuleChildren, LoadingAndModal) {
  Sequent s{F("[a]q"), F("~[a][b]p")};
  auto loaded_kids = rule_children(s, RuleId::LoadPlus, Member(F("~[a][b]p")));
  ASSERT_EQ(loaded_kids.size(), 1u);
  EXPECT_EQ(to_string(loaded_kids[0]), "{[a]q, ~{a}{b}p}");
  auto modal = rule_children(loaded_kids[0], RuleId::Modal, loaded({"a", "b"}, "p"));
  EXPECT_EQ(modal, (std::vector<Sequent>{Sequent({Member(F("q")), loaded({"b"}, "p")})}));
}

TEST(RuleChildren, RejectsMismatchedRule) {
  Sequent s{F("p & q")};
  EXPECT_THROW(rule_children(s, RuleId::Neg, Member(F("p & q"))), RuleError);
  EXPECT_THROW(rule_children(s, RuleId::And, Member(F("r"))), RuleError);
}

TEST(ProverMoves, BasicSequentOffersLoading) {
  Sequent s{F("p"), F("~[a]q")};
  auto moves = prover_moves(s);
  ASSERT_EQ(moves.size(), 1u);
  EXPECT_EQ(moves[0].rule, RuleId::LoadPlus);
}

TEST(ProverMoves, NonBranchingFirst) {
  auto moves = prover_moves(Sequent{F("p & q"), F("~~r")});
  ASSERT_EQ(moves.size(), 2u);
  EXPECT_EQ(moves[0].rule, RuleId::And);
  EXPECT_EQ(moves[1].rule, RuleId::Neg);
}

TEST(ProverMoves, NoUnloadingRightAfterLoading) {
  Sequent s({loaded({"a"}, "p")});
  auto after_load = prover_moves(s, RuleId::LoadPlus);
  for (const Move& m : after_load) EXPECT_NE(m.rule, RuleId::LoadMinus);
  EXPECT_EQ(prover_moves(s).front().rule, RuleId::LoadMinus);
}

TEST(Verdicts, StarBoxSubsumption) {
  ProofResult r = prove(F("[a*]q -> [a][(a u ?(p))*]q"));
  ASSERT_TRUE(r.closed);
  EXPECT_TRUE(check_tableau(r.tableau, Sequent{single_neg(F("[a*]q -> [a][(a u ?(p))*]q"))}).empty());
}

TEST(Verdicts, FourLocalBranches) { EXPECT_TRUE(is_valid(F("([a;b](p & q) & [c]bot) -> ([a;b]q & [c]r)"))); }

TEST(Verdicts, FreeRepeatCountermodel) {
  ProofResult r = prove(F("[a*]~[a]p -> p"));
  ASSERT_FALSE(r.closed);
  EXPECT_LE(r.model.states, 3);
  EXPECT_FALSE(eval(r.model, r.point, F("[a*]~[a]p -> p")));
}

TEST(Verdicts, LoadedRepeatCountermodel) {
  ProofResult r = prove(F("[a][a*]p -> [a][a*]q"));
  ASSERT_FALSE(r.closed);
  EXPECT_LE(r.model.states, 3);
  EXPECT_FALSE(eval(r.model, r.point, F("[a][a*]p -> [a][a*]q")));
}

TEST(ModelGraph, SingleStateForSelfLoop) {
  ProofResult r = prove(Sequent{F("[a*]~[a]p"), F("~p")});
  ASSERT_FALSE(r.closed);
  EXPECT_EQ(r.model.states, 1);
  EXPECT_TRUE(check_sequent(r.model, r.point, Sequent{F("[a*]~[a]p"), F("~p")}));
}

TEST(ModelGraph, AtomOnly) {
  ProofResult r = prove(Sequent{F("p")});
  ASSERT_FALSE(r.closed);
  EXPECT_EQ(r.model.states, 1);
  EXPECT_TRUE(r.model.valuation.at("p").count(r.point));
}

TEST(Tableau, DotHasBackEdge) {
  ProofResult r = prove(F("[a*]q -> [a][(a u ?(p))*]q"));
  ASSERT_TRUE(r.closed);
  std::string dot = export_dot(r.tableau);
  EXPECT_EQ(count(dot, "style=dashed"), r.tableau.companions.size());
  EXPECT_EQ(count(dot, " -> "), r.tableau.size() - 1 + r.tableau.companions.size());
  EXPECT_GE(r.tableau.companions.size(), 1u);
}

TEST(Tableau, CheckerRejectsTampering) {
  ProofResult r = prove(F("[a*]q -> [a][(a u ?(p))*]q"));
  ASSERT_TRUE(r.closed);
  Tableau bad = r.tableau;
  bad.nodes[static_cast<std::size_t>(bad.root)].label = Sequent{F("p")};
  EXPECT_FALSE(check_tableau(bad, bad[bad.root].label).empty());
  Tableau no_back = r.tableau;
  no_back.companions.clear();
  EXPECT_FALSE(check_tableau(no_back, Sequent{single_neg(F("[a*]q -> [a][(a u ?(p))*]q"))}).empty());
}

TEST(Measure, DiamondCounterexample) {
  // The (Dia) child ~~~~p carries more weight than its parent.
  EXPECT_EQ(measure(F("~[a*]~~~p")), 1u);
  EXPECT_EQ(measure(F("~~~~p")), 2u);
  Sequent parent{F("~[a*]~~~p")};
  auto kids = rule_children(parent, RuleId::Dia, Member(F("~[a*]~~~p")));
  for (const Sequent& k : kids) EXPECT_LT(termination_measure(k), termination_measure(parent));
}

TEST(Measure, TerminationMeasureDecreasesOnRandomRules) {
  RandomGen gen(31);
  for (int i = 0; i < 400; ++i) {
    Sequent s = gen.sequent(3, 10);
    for (const Move& m : prover_moves(s)) {
      if (!is_plain_local(m.rule)) continue;
      for (const Sequent& k : rule_children(s, m.rule, m.principal))
        EXPECT_LT(termination_measure(k), termination_measure(s)) << to_string(s);
    }
  }
}

TEST(Budget, ExhaustionThrows) {
  EXPECT_THROW(prove(F("[a*]q -> [a][(a u ?(p))*]q"), ProverOptions{3, true}), BudgetExhausted);
}

TEST(Cache, SameVerdictsWithAndWithout) {
  RandomGen gen(12);
  for (int i = 0; i < 300; ++i) {
    Sequent s = gen.sequent(3, 9);
    EXPECT_EQ(prove(s, {100000, true}).closed, prove(s, {100000, false}).closed) << to_string(s);
  }
}

TEST(Suites, RuleSoundness) {
  SuiteReport r = rule_suite(3, 200, 6);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(Suites, RoundTrip) {
  SuiteReport r = roundtrip_suite(3, 100);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}
