#include <gtest/gtest.h>

#include "pdl/parser.hpp"
#include "pdl/properties.hpp"
#include "pdl/unfold.hpp"

using namespace pdl;

namespace {

Formula F(const char* s) { return parse_formula(s); }
Program P(const char* s) { return parse_program(s); }

ProgramList L(std::initializer_list<const char*> xs) {
  ProgramList out;
  for (const char* x : xs) out.push_back(P(x));
  return out;
}

std::vector<ProgramList> Ls(std::vector<ProgramList> v) { return detail::canonical_lists(std::move(v)); }

std::vector<Sequent> Ss(std::vector<Sequent> v) { return canonical(std::move(v)); }

TestProfile profile(std::vector<Formula> fs) { return TestProfile{canonical(std::move(fs))}; }

const Formula psi = Formula::atom("r");

}  // namespace

TEST(TestProfiles, Enumeration) {
  auto tp = test_profiles(P("(a u ?(p)) ; b*"));
  ASSERT_EQ(tp.size(), 2u);
  EXPECT_TRUE(tp[0].chosen.empty());
  EXPECT_EQ(tp[1].chosen, std::vector<Formula>{F("p")});
  EXPECT_EQ(test_profiles(P("a")).size(), 1u);
  EXPECT_EQ(test_profiles(P("(a*)*")).size(), 1u);
}

TEST(TestProfiles, SignatureFormula) {
  Program a = P("?(p & q) ; ?(~p) ; ?(~q)");
  Formula sig = signature_formula(a, profile({F("p & q"), F("~p")}));
  // p & q is chosen together with ~p, so no state can satisfy the signature.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    KripkeModel m = random_model(seed, 4, {"p", "q"}, {}, 0.5);
    for (int w = 0; w < m.states; ++w) EXPECT_FALSE(eval(m, w, sig));
  }
  EXPECT_EQ(signature_formula(P("a ; b"), {}), Formula::top());
  EXPECT_EQ(signature_formula(P("?(p) u ?(q)"), profile({F("p"), F("q")})), F("p & q"));
}

TEST(UnfoldP, ChoiceWithTest) {
  Program a = P("(a u ?(p)) ; b*");
  EXPECT_EQ(unfold_P(a, {}), Ls({L({"a", "b*"})}));
  EXPECT_EQ(unfold_F(a, {}), std::vector<Formula>{F("~p")});
  EXPECT_EQ(unfold_P(a, profile({F("p")})), Ls({L({"a", "b*"}), {}, L({"b", "b*"})}));
  EXPECT_TRUE(unfold_F(a, profile({F("p")})).empty());
}

TEST(UnfoldP, DoubleStar) { EXPECT_EQ(unfold_P(P("(a*)*"), {}), Ls({{}, L({"a", "a*", "(a*)*"})})); }

TEST(UnfoldBox, ChoiceWithTest) {
  Formula body = Formula::box(P("a"), Formula::box(P("b*"), psi));
  EXPECT_EQ(unfold_box(P("(a u ?(p)) ; b*"), psi),
            Ss({Sequent{F("~p"), body}, Sequent{psi, body, Formula::box(P("b"), Formula::box(P("b*"), psi))}}));
}

TEST(UnfoldBox, DoubleStarIsOneSequent) {
  EXPECT_EQ(unfold_box(P("(a*)*"), psi), Ss({Sequent{psi, F("[a][a*][(a*)*]r")}}));
}

TEST(UnfoldBox, PlainTest) { EXPECT_EQ(unfold_box(P("?(p)"), psi), Ss({Sequent{F("~p")}, Sequent{psi}})); }

TEST(H, DoubleStar) {
  std::vector<HPair> expect{{{}, {}}, {{}, L({"a", "a*", "(a*)*"})}};
  std::sort(expect.begin(), expect.end());
  EXPECT_EQ(H(P("(a*)*")), expect);
}

TEST(H, CompositionWithStar) {
  std::vector<HPair> expect{{{}, L({"a", "b*"})}, {{F("p")}, {}}, {{F("p")}, L({"b", "b*"})}};
  std::sort(expect.begin(), expect.end());
  EXPECT_EQ(H(P("(?(p) u a) ; b*")), expect);
}

TEST(H, StarOverTestAndAtom) {
  std::vector<HPair> expect{{{}, {}}, {{}, L({"a", "(?(p) u a)*"})}};
  std::sort(expect.begin(), expect.end());
  EXPECT_EQ(H(P("(?(p) u a)*")), expect);
}

TEST(H, HeadIsAtomicAndFresh) {
  RandomGen gen(5);
  for (int i = 0; i < 300; ++i) {
    Program a = gen.program(1 + gen.below(8));
    for (const HPair& hp : H(a)) {
      if (!hp.rest.empty()) {
        EXPECT_TRUE(hp.rest.front().is_atomic()) << to_string(a);
      }
      Vocabulary v;
      for (const Program& x : hp.rest) detail::add_vocab(x, v);
      for (const Formula& g : hp.guards) detail::add_vocab(g, v);
      EXPECT_TRUE(v.subset_of(vocabulary(a)));
    }
  }
}

TEST(UnfoldDia, DoubleStar) {
  EXPECT_EQ(unfold_dia(P("(a*)*"), psi), Ss({Sequent{F("~r")}, Sequent{F("~[a][a*][(a*)*]r")}}));
}

TEST(UnfoldDia, CompositionWithStar) {
  EXPECT_EQ(unfold_dia(P("(?(p) u a) ; b*"), psi),
            Ss({Sequent{F("~[a][b*]r")}, Sequent{F("p"), F("~r")}, Sequent{F("p"), F("~[b][b*]r")}}));
}

TEST(UnfoldDia, Atomic) { EXPECT_EQ(unfold_dia(P("b"), psi), Ss({Sequent{F("~[b]r")}})); }

TEST(UnfoldDiaLoaded, DoubleStar) {
  Sequent deep({Member(LoadedFormula{L({"a", "a*", "(a*)*"}), psi})});
  EXPECT_EQ(unfold_dia_loaded(P("(a*)*"), {}, psi), Ss({Sequent{F("~r")}, deep}));
}

TEST(UnfoldDiaLoaded, KeepsResidueLoaded) {
  // The residue [b]r stays loaded behind the new chain.
  auto out = unfold_dia_loaded(P("(?(p) u a)*"), L({"b"}), psi);
  Sequent direct({Member(LoadedFormula{L({"b"}), psi})});
  Sequent via({Member(LoadedFormula{L({"a", "(?(p) u a)*", "b"}), psi})});
  EXPECT_EQ(out, Ss({direct, via}));
  EXPECT_EQ(unfold_dia_loaded(P("b"), {}, psi), Ss({Sequent({Member(LoadedFormula{L({"b"}), psi})})}));
}

// Negated tests are built with a literal ~, so membership is checked up to one negation.
bool in_closure(const std::vector<Formula>& fl, const Formula& f) {
  auto has = [&](const Formula& g) { return std::binary_search(fl.begin(), fl.end(), g); };
  return has(f) || (f.is(FormulaKind::Neg) && has(f.sub()));
}

TEST(UnfoldMembers, StayInClosure) {
  RandomGen gen(8);
  for (int i = 0; i < 150; ++i) {
    Program a = gen.program(2 + gen.below(6));
    Formula f = gen.formula(1 + gen.below(4));
    auto fl = fischer_ladner({Formula::box(a, f)});
    for (const Sequent& s : unfold_box(a, f))
      for (const Member& m : s) EXPECT_TRUE(in_closure(fl, m.unloaded())) << to_string(m);
    auto fld = fischer_ladner({Formula::neg(Formula::box(a, f))});
    for (const Sequent& s : unfold_dia(a, f))
      for (const Member& m : s) EXPECT_TRUE(in_closure(fld, m.unloaded())) << to_string(m);
  }
}

TEST(UnfoldSemantics, RandomEquivalence) {
  SuiteReport r = unfold_suite(17, 200, 10);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}
