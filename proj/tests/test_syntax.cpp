#include <gtest/gtest.h>

#include "pdl/parser.hpp"
#include "pdl/random.hpp"
#include "pdl/sequent.hpp"
#include "pdl/syntax.hpp"

using namespace pdl;

namespace {

Formula F(const char* s) { return parse_formula(s); }
Program P(const char* s) { return parse_program(s); }
Formula p() { return Formula::atom("p"); }
Formula q() { return Formula::atom("q"); }

bool has(const std::vector<Formula>& v, const Formula& f) { return std::find(v.begin(), v.end(), f) != v.end(); }

}  // namespace

TEST(Parser, DoubleNegation) { EXPECT_EQ(F("~~p"), Formula::neg(Formula::neg(p()))); }

TEST(Parser, BoxOverCompositeProgram) {
  Program a = Program::seq(Program::choice(Program::atomic("a"), Program::test(p())), Program::star(Program::atomic("b")));
  EXPECT_EQ(F("[(a u ?(p)) ; b*] q"), Formula::box(a, q()));
}

TEST(Parser, ImplicationIsDesugared) { EXPECT_EQ(F("p -> q"), Formula::neg(Formula::conj(p(), Formula::neg(q())))); }

TEST(Parser, DisjunctionAndEquivalenceAreDesugared) {
  EXPECT_EQ(F("p | q"), Formula::neg(Formula::conj(Formula::neg(p()), Formula::neg(q()))));
  EXPECT_EQ(F("p <-> q"), Formula::conj(F("p -> q"), F("q -> p")));
}

TEST(Parser, ImplicationIsRightAssociative) { EXPECT_EQ(F("p -> q -> p"), F("p -> (q -> p)")); }

TEST(Parser, ProgramPrecedence) {
  EXPECT_EQ(P("a ; b u c"), Program::choice(P("a ; b"), P("c")));
  EXPECT_EQ(P("a ; b*"), Program::seq(P("a"), Program::star(P("b"))));
}

TEST(Parser, RejectsReservedPrefix) { EXPECT_THROW(F("_q0 & p"), ParseError); }

TEST(Parser, ReportsPosition) {
  try {
    F("p & & q");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(Printer, Basics) {
  EXPECT_EQ(to_string(Formula::neg(Formula::neg(p()))), "~~p");
  EXPECT_EQ(to_string(Formula::box(Program::star(Program::atomic("a")), q())), "[a*]q");
  EXPECT_EQ(to_string(Formula::bottom()), "bot");
}

TEST(Printer, RoundTripOnRandomFormulas) {
  RandomGen gen(7);
  for (int i = 0; i < 2000; ++i) {
    Formula f = gen.formula(1 + gen.below(14));
    ASSERT_EQ(F(to_string(f).c_str()), f) << to_string(f);
  }
}

TEST(SingleNegation, StripsOrAdds) {
  EXPECT_EQ(single_neg(Formula::neg(q())), q());
  EXPECT_EQ(single_neg(p()), Formula::neg(p()));
  EXPECT_EQ(single_neg(Formula::bottom()), Formula::top());
}

TEST(FischerLadner, EmptySet) { EXPECT_TRUE(fischer_ladner({}).empty()); }

TEST(FischerLadner, AtomicBox) {
  // Saturation by hand: [a]p gives ~[a]p, p and ~p, and nothing else.
  auto fl = fischer_ladner({F("[a]p")});
  EXPECT_EQ(fl, canonical({F("[a]p"), F("~[a]p"), p(), F("~p")}));
}

TEST(FischerLadner, StarUnfolds) {
  auto fl = fischer_ladner({F("[(a;b)*]p")});
  EXPECT_TRUE(has(fl, F("[a;b][(a;b)*]p")));
  EXPECT_TRUE(has(fl, F("[a][b][(a;b)*]p")));
}

TEST(FischerLadner, IdempotentAndMonotone) {
  RandomGen gen(3);
  for (int i = 0; i < 100; ++i) {
    Formula f = gen.formula(1 + gen.below(8));
    Formula g = gen.formula(1 + gen.below(8));
    auto fl = fischer_ladner({f});
    EXPECT_EQ(fischer_ladner(fl), fl);
    auto both = fischer_ladner({f, g});
    for (const Formula& x : fl) EXPECT_TRUE(has(both, x));
  }
}

TEST(Tests, ShallowOnly) {
  EXPECT_EQ(tests_of(P("?([?(q)]p) ; a")), std::vector<Formula>{F("[?(q)]p")});
  EXPECT_TRUE(tests_of(P("a")).empty());
  EXPECT_EQ(tests_of(P("(?(p) u a) ; b*")), std::vector<Formula>{p()});
}

TEST(Progs, ShallowSubprograms) {
  EXPECT_EQ(progs_of(P("?([?(q)]p) ; a")), canonical(std::vector<Program>{P("?([?(q)]p) ; a"), P("?([?(q)]p)"), P("a")}));
  EXPECT_EQ(progs_of(P("a")), std::vector<Program>{P("a")});
  EXPECT_EQ(progs_of(P("b*")), canonical(std::vector<Program>{P("b*"), P("b")}));
}

TEST(Boxes, FoldRight) {
  EXPECT_EQ(boxes({}, p()), p());
  EXPECT_EQ(boxes({P("a"), P("b")}, p()), F("[a][b]p"));
  LoadedFormula lf{{P("a"), P("b*")}, p()};
  EXPECT_EQ(to_string(Member(lf)), "~{a}{b*}p");
  EXPECT_EQ(lf.unload(), F("~[a][b*]p"));
}

TEST(Substitution, Simultaneous) {
  Substitution s{{"p", Formula::atom("r")}, {"r", p()}};
  EXPECT_EQ(substitute(s, F("[?([?(r)]p)]r")), F("[?([?(p)]r)]p"));
  EXPECT_EQ(substitute({}, F("[a*]p & q")), F("[a*]p & q"));
  EXPECT_EQ(substitute({{"p", F("[a]r")}}, q()), q());
}

TEST(Substitution, VocabularyBound) {
  RandomGen gen(11);
  for (int i = 0; i < 200; ++i) {
    Formula f = gen.formula(1 + gen.below(10));
    Formula t = gen.formula(1 + gen.below(4));
    Formula g = substitute({{"p", t}}, f);
    Vocabulary allowed = vocabulary(f);
    allowed.props.erase("p");
    allowed.add(vocabulary(t));
    EXPECT_TRUE(vocabulary(g).subset_of(allowed));
  }
}

TEST(Vocabulary, Collects) {
  Vocabulary v = vocabulary(F("[a]p"));
  EXPECT_EQ(v.props, std::set<std::string>{"p"});
  EXPECT_EQ(v.progs, std::set<std::string>{"a"});
  Vocabulary w = vocabulary(F("[?(q)]bot"));
  EXPECT_EQ(w.props, std::set<std::string>{"q"});
  EXPECT_TRUE(w.progs.empty());
}

TEST(Measure, Values) {
  EXPECT_EQ(measure(F("~~p")), 1u);
  EXPECT_EQ(measure(F("[a]~~p")), 0u);
  EXPECT_EQ(measure(F("~(p & q)")), 1u);
}

TEST(Sequents, CanonicalAndBasic) {
  Sequent s{F("~[a]q"), p(), p()};
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s, (Sequent{p(), F("~[a]q")}));
  EXPECT_TRUE(s.is_basic());
  EXPECT_FALSE((Sequent{F("p & q")}).is_basic());
  EXPECT_FALSE((Sequent{F("[a*]p")}).is_basic());
}

TEST(Sequents, UnloadingDropsMarks) {
  Sequent s({Member(p()), Member(LoadedFormula{{P("a")}, q()})});
  EXPECT_TRUE(s.is_loaded());
  EXPECT_EQ(s.unloaded(), (Sequent{p(), F("~[a]q")}));
  EXPECT_EQ(to_string(s), "{p, ~{a}q}");
}

TEST(Sequents, AtMostOneLoadedMember) {
  std::vector<Member> two{Member(LoadedFormula{{P("a")}, q()}), Member(LoadedFormula{{P("b")}, q()})};
  EXPECT_THROW(Sequent{two}, std::logic_error);
}
