#pragma once

// Randomized property suites.  Each suite is a deterministic function of its
// seed and reports the number of cases and the first failure, if any.

#include <cstdint>
#include <string>

#include "interp.hpp"
#include "parser.hpp"
#include "prover.hpp"
#include "random.hpp"
#include "rules.hpp"
#include "semantics.hpp"
#include "unfold.hpp"

namespace pdl {

struct SuiteReport {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::size_t cyclic = 0;  // cases whose proof needed a repeat
  std::string first_failure;

  bool ok() const { return failures == 0; }
  void fail(const std::string& why) {
    if (failures++ == 0) first_failure = why;
  }
};

namespace detail {

inline std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

// States where every member holds.
inline std::vector<bool> sequent_ext(Evaluator& ev, int n, const Sequent& s) {
  std::vector<bool> out(static_cast<std::size_t>(n), true);
  for (const Member& m : s) {
    auto e = ev.extension(m.unloaded());
    for (int i = 0; i < n; ++i) out[i] = out[i] && e[i];
  }
  return out;
}

// States where some alternative holds.
inline std::vector<bool> some_ext(Evaluator& ev, int n, const std::vector<Sequent>& alts) {
  std::vector<bool> out(static_cast<std::size_t>(n), false);
  for (const Sequent& s : alts) {
    auto e = sequent_ext(ev, n, s);
    for (int i = 0; i < n; ++i) out[i] = out[i] || e[i];
  }
  return out;
}

}  // namespace detail

// [alpha]psi and ~[alpha]psi agree with their unfoldings at every state.
inline SuiteReport unfold_suite(std::uint64_t seed, std::size_t count = 200, int models = 10) {
  SuiteReport r;
  r.name = "unfold equivalence";
  RandomGen gen(seed);
  while (r.cases < count) {
    Program a = gen.program(1 + gen.below(8));
    if (size_of(a) > 8) continue;
    Formula psi = gen.formula(1 + gen.below(4));
    ++r.cases;
    auto boxes = unfold_box(a, psi);
    auto dias = unfold_dia(a, psi);
    Formula box = Formula::box(a, psi);
    for (int k = 0; k < models; ++k) {
      KripkeModel m = random_model(gen.engine()(), 5, detail::as_set(gen.config().props),
                                   detail::as_set(gen.config().progs), 0.3);
      detail::Evaluator ev(m);
      auto truth = ev.extension(box);
      auto via_box = detail::some_ext(ev, m.states, boxes);
      auto via_dia = detail::some_ext(ev, m.states, dias);
      bool bad = false;
      for (int w = 0; w < m.states && !bad; ++w) {
        if (truth[w] != via_box[w]) r.fail("box unfolding of " + to_string(box));
        else if (!truth[w] != via_dia[w]) r.fail("diamond unfolding of ~" + to_string(box));
        else continue;
        bad = true;
      }
      if (bad) break;
    }
  }
  return r;
}

// Local rules, loading and unloading preserve truth in both directions.
inline SuiteReport rule_suite(std::uint64_t seed, std::size_t count = 500, int models = 6) {
  SuiteReport r;
  r.name = "local rule soundness and invertibility";
  RandomGen gen(seed);
  while (r.cases < count) {
    Sequent s = gen.sequent(3, 8);
    if (gen.below(3) == 0 && s.is_free()) {
      // Add a loaded diamond with a random chain.
      ProgramList chain{gen.program(1 + gen.below(4))};
      if (gen.below(2) == 0) chain.push_back(gen.program(1 + gen.below(3)));
      Formula tail = gen.formula(1 + gen.below(3));
      if (!tail.is(FormulaKind::Box)) s = s.with({Member(LoadedFormula{chain, tail})});
    }
    std::vector<Move> local;
    for (const Move& m : prover_moves(s))
      if (m.rule != RuleId::Modal) local.push_back(m);
    if (local.empty()) continue;
    const Move& mv = local[static_cast<std::size_t>(gen.below(static_cast<int>(local.size())))];
    ++r.cases;
    std::vector<Sequent> kids;
    try {
      kids = rule_children(s, mv.rule, mv.principal);
    } catch (const std::exception& e) {
      r.fail(to_string(mv) + " on " + to_string(s) + ": " + e.what());
      continue;
    }
    Vocabulary voc;
    for (const Member& m : s) detail::add_vocab(m.unloaded(), voc);
    for (int k = 0; k < models; ++k) {
      KripkeModel m = random_model(gen.engine()(), 4, voc.props, voc.progs, 0.35);
      detail::Evaluator ev(m);
      if (detail::sequent_ext(ev, m.states, s) != detail::some_ext(ev, m.states, kids)) {
        r.fail(to_string(mv) + " on " + to_string(s));
        break;
      }
    }
  }
  return r;
}

// Countermodels satisfy their sequents and closed tableaux are well formed.
inline SuiteReport roundtrip_suite(std::uint64_t seed, std::size_t count = 200) {
  SuiteReport r;
  r.name = "satisfiability round trip";
  RandomGen gen(seed);
  for (; r.cases < count; ++r.cases) {
    Sequent s = gen.sequent(4, 10);
    ProofResult res;
    try {
      res = prove(s);
    } catch (const std::exception& e) {
      r.fail(to_string(s) + ": " + e.what());
      continue;
    }
    if (!res.closed) {
      if (!check_sequent(res.model, res.point, s)) r.fail("countermodel fails " + to_string(s));
      continue;
    }
    auto errs = check_tableau(res.tableau, s);
    if (!errs.empty()) r.fail(to_string(s) + ": " + errs.front());
  }
  return r;
}

// Interpolants for valid implications pass all three checks.
inline SuiteReport interpolation_suite(std::uint64_t seed, std::size_t count = 100) {
  SuiteReport r;
  r.name = "interpolation";
  RandomGen left(seed, GenConfig{{"p", "q", "r"}, {"a", "b"}, true});
  RandomGen right(seed ^ 0x5bd1e995u, GenConfig{{"p", "q", "s"}, {"a", "c"}, true});
  std::size_t attempts = 0;
  while (r.cases < count) {
    Formula f = Formula::bottom(), g = Formula::bottom();
    // Shared material, and one private conjunct / disjunct per side.
    RandomGen shared(left.engine()(), GenConfig{{"p", "q"}, {"a"}, true});
    Formula psi = shared.formula(2 + shared.below(4));
    Program alpha = shared.program(1 + shared.below(3));
    Formula chi = left.formula(1 + left.below(4));
    Formula rho = right.formula(1 + right.below(4));
    Formula star_box = Formula::box(Program::star(alpha), psi);
    switch (r.cases % 4) {
      case 0:  // psi & chi -> psi | rho
        f = Formula::conj(psi, chi);
        g = make_or(psi, rho);
        break;
      case 1:  // one unfolding of a star
        f = Formula::conj(star_box, chi);
        g = make_or(Formula::box(alpha, star_box), rho);
        break;
      case 2:  // induction
        f = Formula::conj(Formula::conj(psi, Formula::box(Program::star(alpha), make_implies(psi, Formula::box(alpha, psi)))), chi);
        g = make_or(star_box, rho);
        break;
      default:  // unrelated random pair, kept only when valid
        f = left.formula(2 + left.below(6));
        g = right.formula(2 + right.below(6));
        if (++attempts > 200000) {
          r.fail("could not find enough random valid implications");
          return r;
        }
        if (!prove(make_implies(f, g)).closed) continue;
    }
    ++r.cases;
    try {
      InterpolationResult res = interpolate_detailed(f, g);
      const Formula& th = res.interpolant;
      if (res.stats.proper_clusters > 0) ++r.cyclic;
      InterpolantReport rep = verify_interpolant(f, g, th);
      if (!rep.ok())
        r.fail(to_string(f) + " -> " + to_string(g) + " gave " + to_string(th) + " (voc " +
               std::to_string(rep.voc_ok) + ", left " + std::to_string(rep.left_ok) + ", right " +
               std::to_string(rep.right_ok) + ")");
    } catch (const std::exception& e) {
      r.fail(to_string(f) + " -> " + to_string(g) + ": " + e.what());
    }
  }
  return r;
}

// p <-> chi defines p explicitly; the definition found must be equivalent to chi.
inline SuiteReport beth_suite(std::uint64_t seed, std::size_t count = 20) {
  SuiteReport r;
  r.name = "beth definability";
  RandomGen gen(seed, GenConfig{{"q", "r"}, {"a", "b"}, true});
  for (; r.cases < count; ++r.cases) {
    Formula chi = gen.formula(1 + gen.below(7));
    Formula f = make_iff(Formula::atom("p"), chi);
    try {
      Formula d = beth(f, "p");
      if (vocabulary(d).props.count("p")) r.fail("definition mentions p: " + to_string(d));
      else if (!prove(make_iff(d, chi)).closed)
        r.fail("definition " + to_string(d) + " differs from " + to_string(chi));
    } catch (const std::exception& e) {
      r.fail(to_string(f) + ": " + e.what());
    }
  }
  return r;
}

}  // namespace pdl
