#pragma once

// Tableau rules over (unsplit) sequents: the local rules, loading and
// unloading, and the modal rule.

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "formula.hpp"
#include "sequent.hpp"
#include "syntax.hpp"
#include "unfold.hpp"

namespace pdl {

enum class RuleId : std::uint8_t { Neg, And, NegAnd, Box, Dia, DiaLoaded, LoadPlus, LoadMinus, Modal };

inline const char* rule_name(RuleId r) {
  switch (r) {
    case RuleId::Neg: return "Neg";
    case RuleId::And: return "And";
    case RuleId::NegAnd: return "NegAnd";
    case RuleId::Box: return "Box";
    case RuleId::Dia: return "Dia";
    case RuleId::DiaLoaded: return "DiaLoaded";
    case RuleId::LoadPlus: return "L+";
    case RuleId::LoadMinus: return "L-";
    case RuleId::Modal: return "M";
  }
  return "?";
}

// Local rules that neither load nor unload.
inline bool is_plain_local(RuleId r) {
  return r != RuleId::LoadPlus && r != RuleId::LoadMinus && r != RuleId::Modal;
}

struct Move {
  RuleId rule;
  Member principal;

  friend bool operator==(const Move& x, const Move& y) { return x.rule == y.rule && x.principal == y.principal; }
};

inline std::string to_string(const Move& m) { return std::string(rule_name(m.rule)) + " " + to_string(m.principal); }

class RuleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// {phi | [a]phi in s}, over unloaded members only.
inline Sequent projection(const Sequent& s, const std::string& a) {
  std::vector<Member> out;
  for (const Member& m : s) {
    if (m.loaded()) continue;
    const Formula& f = m.formula();
    if (f.is(FormulaKind::Box) && f.prog().is_atomic() && f.prog().name() == a) out.emplace_back(f.sub());
  }
  return Sequent(std::move(out));
}

// Closedness ignores loading marks: a loaded ~[a]p clashes with [a]p.
inline bool is_closed(const Sequent& s) {
  std::unordered_set<Formula, FormulaHash> present;
  for (const Member& m : s) present.insert(m.unloaded());
  for (const Formula& f : present) {
    if (f.is(FormulaKind::Bottom)) return true;
    if (f.is(FormulaKind::Neg) && present.count(f.sub())) return true;
  }
  return false;
}

namespace detail {

inline bool is_double_neg(const Formula& f) { return f.is(FormulaKind::Neg) && f.sub().is(FormulaKind::Neg); }
inline bool is_neg_and(const Formula& f) { return f.is(FormulaKind::Neg) && f.sub().is(FormulaKind::And); }
inline bool is_complex_box(const Formula& f) { return f.is(FormulaKind::Box) && !f.prog().is_atomic(); }
inline bool is_complex_dia(const Formula& f) {
  return f.is(FormulaKind::Neg) && f.sub().is(FormulaKind::Box) && !f.sub().prog().is_atomic();
}
inline bool is_atomic_dia(const Formula& f) {
  return f.is(FormulaKind::Neg) && f.sub().is(FormulaKind::Box) && f.sub().prog().is_atomic();
}

inline std::vector<Sequent> dedup_keep_order(std::vector<Sequent> v) {
  std::vector<Sequent> out;
  for (Sequent& s : v)
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  return out;
}

// Loads ~[a][b1]...[bn]phi with phi not a box.
inline Member load_maximally(const Formula& dia) {
  auto [chain, rest] = unbox(dia.sub());
  return Member(LoadedFormula{std::move(chain), std::move(rest)});
}

}  // namespace detail

inline std::vector<Sequent> rule_children(const Sequent& s, RuleId r, const Member& principal) {
  if (!s.contains(principal)) throw RuleError("principal formula is not in the sequent");
  const Sequent ctx = s.without(principal);
  auto fail = [&]() -> std::vector<Sequent> {
    throw RuleError(std::string("rule ") + rule_name(r) + " does not apply to " + to_string(principal));
  };
  auto extend = [&](const std::vector<Sequent>& parts) {
    std::vector<Sequent> out;
    for (const Sequent& g : parts) out.push_back(ctx.with(g.members()));
    return detail::dedup_keep_order(std::move(out));
  };

  if (!principal.loaded()) {
    const Formula& f = principal.formula();
    switch (r) {
      case RuleId::Neg:
        if (!detail::is_double_neg(f)) return fail();
        return {ctx.with({Member(f.sub().sub())})};
      case RuleId::And:
        if (!f.is(FormulaKind::And)) return fail();
        return {ctx.with({Member(f.left()), Member(f.right())})};
      case RuleId::NegAnd:
        if (!detail::is_neg_and(f)) return fail();
        return detail::dedup_keep_order({ctx.with({Member(Formula::neg(f.sub().left()))}),
                                         ctx.with({Member(Formula::neg(f.sub().right()))})});
      case RuleId::Box:
        if (!detail::is_complex_box(f)) return fail();
        return extend(unfold_box(f.prog(), f.sub()));
      case RuleId::Dia:
        if (!detail::is_complex_dia(f)) return fail();
        return extend(unfold_dia(f.sub().prog(), f.sub().sub()));
      case RuleId::LoadPlus:
        if (!detail::is_atomic_dia(f) || !s.is_free() || !ctx.is_basic()) return fail();
        return {ctx.with({detail::load_maximally(f)})};
      default:
        return fail();
    }
  }

  const LoadedFormula& lf = principal.loaded_formula();
  const Program& head = lf.prefix.front();
  switch (r) {
    case RuleId::DiaLoaded:
      if (head.is_atomic()) return fail();
      return extend(unfold_dia_loaded(lf));
    case RuleId::LoadMinus:
      if (!ctx.is_basic()) return fail();
      return {ctx.with({Member(lf.unload())})};
    case RuleId::Modal: {
      if (!head.is_atomic() || !ctx.is_basic()) return fail();
      ProgramList rest(lf.prefix.begin() + 1, lf.prefix.end());
      return {projection(ctx, head.name()).with({negated_residue({}, rest, lf.tail)})};
    }
    default:
      return fail();
  }
}

// Every admissible (rule, principal) pair.  Order: non-branching local rules
// (Neg, And, L-), branching local rules, loadings, the modal rule; ties by
// member order.
inline std::vector<Move> prover_moves(const Sequent& s, std::optional<RuleId> last = std::nullopt) {
  if (is_closed(s)) return {};
  std::vector<Move> nonbranching, branching, loading, modal;
  const bool all_basic = s.is_basic();
  for (const Member& m : s) {
    // The context is basic iff every other member is basic.
    const bool ctx_basic = all_basic || (!m.basic() && s.without(m).is_basic());
    if (!m.loaded()) {
      const Formula& f = m.formula();
      if (detail::is_double_neg(f)) nonbranching.push_back({RuleId::Neg, m});
      else if (f.is(FormulaKind::And)) nonbranching.push_back({RuleId::And, m});
      else if (detail::is_neg_and(f)) branching.push_back({RuleId::NegAnd, m});
      else if (detail::is_complex_box(f)) branching.push_back({RuleId::Box, m});
      else if (detail::is_complex_dia(f)) branching.push_back({RuleId::Dia, m});
      else if (detail::is_atomic_dia(f) && s.is_free() && all_basic) loading.push_back({RuleId::LoadPlus, m});
      continue;
    }
    const bool atomic_head = m.loaded_formula().prefix.front().is_atomic();
    if (ctx_basic && last != RuleId::LoadPlus) nonbranching.push_back({RuleId::LoadMinus, m});
    if (!atomic_head) branching.push_back({RuleId::DiaLoaded, m});
    else if (ctx_basic) modal.push_back({RuleId::Modal, m});
  }
  std::vector<Move> out;
  for (auto* part : {&nonbranching, &branching, &loading, &modal}) out.insert(out.end(), part->begin(), part->end());
  return out;
}

// A measure that strictly decreases along every plain local rule.  It
// agrees with `measure` except that a diamond over a complex program also
// counts the negated body, which the (Dia) rule may expose.
inline unsigned termination_measure(const Formula& f) {
  if (detail::is_complex_dia(f)) {
    unsigned m = 1 + termination_measure(Formula::neg(f.sub().sub()));
    for (const Formula& t : tests_of(f.sub().prog())) m += termination_measure(t);
    return m;
  }
  switch (f.kind()) {
    case FormulaKind::Bottom:
    case FormulaKind::Atom:
      return 0;
    case FormulaKind::And:
      return 1 + termination_measure(f.left()) + termination_measure(f.right());
    case FormulaKind::Box: {
      if (f.prog().is_atomic()) return 0;
      unsigned m = 1 + termination_measure(f.sub());
      for (const Formula& t : tests_of(f.prog())) m += termination_measure(Formula::neg(t));
      return m;
    }
    case FormulaKind::Neg: {
      const Formula& g = f.sub();
      if (g.is(FormulaKind::Neg)) return 1 + termination_measure(g.sub());
      if (g.is(FormulaKind::And))
        return 1 + std::max(termination_measure(Formula::neg(g.left())), termination_measure(Formula::neg(g.right())));
      return 0;
    }
  }
  return 0;
}

inline unsigned termination_measure(const Sequent& s) {
  unsigned total = 0;
  for (const Member& m : s) total += termination_measure(m.unloaded());
  return total;
}

}  // namespace pdl
