#pragma once

// Syntactic utilities: single negation, tests and subprograms, box chains,
// substitution, vocabulary, Fischer-Ladner closure and the local measure.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "formula.hpp"

namespace pdl {

inline Formula single_neg(const Formula& f) {
  return f.is(FormulaKind::Neg) ? f.sub() : Formula::neg(f);
}

// Sorted, duplicate-free formula list.
inline std::vector<Formula> canonical(std::vector<Formula> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline std::vector<Program> canonical(std::vector<Program> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

namespace detail {
inline void collect_tests(const Program& a, std::vector<Formula>& out) {
  switch (a.kind()) {
    case ProgramKind::Atomic:
      return;
    case ProgramKind::Test:
      out.push_back(a.cond());
      return;
    case ProgramKind::Union:
    case ProgramKind::Comp:
      collect_tests(a.left(), out);
      collect_tests(a.right(), out);
      return;
    case ProgramKind::Star:
      collect_tests(a.sub(), out);
      return;
  }
}

inline void collect_progs(const Program& a, std::vector<Program>& out) {
  out.push_back(a);
  switch (a.kind()) {
    case ProgramKind::Atomic:
    case ProgramKind::Test:
      return;
    case ProgramKind::Union:
    case ProgramKind::Comp:
      collect_progs(a.left(), out);
      collect_progs(a.right(), out);
      return;
    case ProgramKind::Star:
      collect_progs(a.sub(), out);
      return;
  }
}
}  // namespace detail

// Shallow tests of a program, in canonical order.
inline std::vector<Formula> tests_of(const Program& a) {
  std::vector<Formula> out;
  detail::collect_tests(a, out);
  return canonical(std::move(out));
}

// Shallow subprograms (including the program itself), in canonical order.
inline std::vector<Program> progs_of(const Program& a) {
  std::vector<Program> out;
  detail::collect_progs(a, out);
  return canonical(std::move(out));
}

// [d1][d2]...[dn]f; the empty list gives f.
inline Formula boxes(const ProgramList& dl, Formula f) {
  for (auto it = dl.rbegin(); it != dl.rend(); ++it) f = Formula::box(*it, std::move(f));
  return f;
}

// Splits f into its maximal leading box chain and the remaining formula.
inline std::pair<ProgramList, Formula> unbox(Formula f) {
  ProgramList dl;
  while (f.is(FormulaKind::Box)) {
    dl.push_back(f.prog());
    Formula next = f.sub();
    f = std::move(next);
  }
  return {std::move(dl), std::move(f)};
}

// Conjunction / disjunction helpers with the empty cases rendered as ~bot
// and bot respectively.  Both fold to the right.
inline Formula conjunction(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = Formula::conj(fs[i], acc);
  return acc;
}

inline Formula disjunction(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::bottom();
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;)
    acc = Formula::neg(Formula::conj(Formula::neg(fs[i]), Formula::neg(acc)));
  return acc;
}

inline Program sequence(const ProgramList& dl) {
  Program acc = dl.back();
  for (std::size_t i = dl.size() - 1; i-- > 0;) acc = Program::seq(dl[i], acc);
  return acc;
}

inline Program choice(const std::vector<Program>& ps) {
  Program acc = ps.back();
  for (std::size_t i = ps.size() - 1; i-- > 0;) acc = Program::choice(ps[i], acc);
  return acc;
}

// ---------------------------------------------------------------------------
// substitution

using Substitution = std::map<std::string, Formula>;

Formula substitute(const Substitution& s, const Formula& f);

inline Program substitute(const Substitution& s, const Program& p) {
  switch (p.kind()) {
    case ProgramKind::Atomic:
      return p;
    case ProgramKind::Test:
      return Program::test(substitute(s, p.cond()));
    case ProgramKind::Union:
      return Program::choice(substitute(s, p.left()), substitute(s, p.right()));
    case ProgramKind::Comp:
      return Program::seq(substitute(s, p.left()), substitute(s, p.right()));
    case ProgramKind::Star:
      return Program::star(substitute(s, p.sub()));
  }
  return p;
}

inline Formula substitute(const Substitution& s, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Bottom:
      return f;
    case FormulaKind::Atom: {
      auto it = s.find(f.name());
      return it == s.end() ? f : it->second;
    }
    case FormulaKind::Neg:
      return Formula::neg(substitute(s, f.sub()));
    case FormulaKind::And:
      return Formula::conj(substitute(s, f.left()), substitute(s, f.right()));
    case FormulaKind::Box:
      return Formula::box(substitute(s, f.prog()), substitute(s, f.sub()));
  }
  return f;
}

// ---------------------------------------------------------------------------
// vocabulary

struct Vocabulary {
  std::set<std::string> props;
  std::set<std::string> progs;

  void add(const Vocabulary& o) {
    props.insert(o.props.begin(), o.props.end());
    progs.insert(o.progs.begin(), o.progs.end());
  }
  bool subset_of(const Vocabulary& o) const {
    return std::includes(o.props.begin(), o.props.end(), props.begin(), props.end()) &&
           std::includes(o.progs.begin(), o.progs.end(), progs.begin(), progs.end());
  }
  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;
};

inline Vocabulary intersect(const Vocabulary& x, const Vocabulary& y) {
  Vocabulary v;
  std::set_intersection(x.props.begin(), x.props.end(), y.props.begin(), y.props.end(),
                        std::inserter(v.props, v.props.end()));
  std::set_intersection(x.progs.begin(), x.progs.end(), y.progs.begin(), y.progs.end(),
                        std::inserter(v.progs, v.progs.end()));
  return v;
}

namespace detail {
void add_vocab(const Formula& f, Vocabulary& v);
inline void add_vocab(const Program& p, Vocabulary& v) {
  switch (p.kind()) {
    case ProgramKind::Atomic:
      v.progs.insert(p.name());
      return;
    case ProgramKind::Test:
      add_vocab(p.cond(), v);
      return;
    case ProgramKind::Union:
    case ProgramKind::Comp:
      add_vocab(p.left(), v);
      add_vocab(p.right(), v);
      return;
    case ProgramKind::Star:
      add_vocab(p.sub(), v);
      return;
  }
}
inline void add_vocab(const Formula& f, Vocabulary& v) {
  switch (f.kind()) {
    case FormulaKind::Bottom:
      return;
    case FormulaKind::Atom:
      v.props.insert(f.name());
      return;
    case FormulaKind::Neg:
      add_vocab(f.sub(), v);
      return;
    case FormulaKind::And:
      add_vocab(f.left(), v);
      add_vocab(f.right(), v);
      return;
    case FormulaKind::Box:
      add_vocab(f.prog(), v);
      add_vocab(f.sub(), v);
      return;
  }
}
}  // namespace detail

inline Vocabulary vocabulary(const Formula& f) {
  Vocabulary v;
  detail::add_vocab(f, v);
  return v;
}

inline Vocabulary vocabulary(const Program& p) {
  Vocabulary v;
  detail::add_vocab(p, v);
  return v;
}

// ---------------------------------------------------------------------------
// Fischer-Ladner closure

inline std::vector<Formula> fischer_ladner(const std::vector<Formula>& xs) {
  std::unordered_set<Formula, FormulaHash> seen;
  std::vector<Formula> todo(xs.begin(), xs.end());
  std::vector<Formula> out;
  auto push = [&](const Formula& g) { todo.push_back(g); };
  while (!todo.empty()) {
    Formula f = todo.back();
    todo.pop_back();
    if (!seen.insert(f).second) continue;
    out.push_back(f);
    push(single_neg(f));
    switch (f.kind()) {
      case FormulaKind::Bottom:
      case FormulaKind::Atom:
        break;
      case FormulaKind::Neg:
        push(f.sub());
        break;
      case FormulaKind::And:
        push(f.left());
        push(f.right());
        break;
      case FormulaKind::Box: {
        const Program& a = f.prog();
        push(f.sub());
        for (const Formula& t : tests_of(a)) push(t);
        if (a.is(ProgramKind::Union)) {
          push(Formula::box(a.left(), f.sub()));
          push(Formula::box(a.right(), f.sub()));
        } else if (a.is(ProgramKind::Comp)) {
          push(Formula::box(a.left(), Formula::box(a.right(), f.sub())));
        } else if (a.is(ProgramKind::Star)) {
          push(Formula::box(a.sub(), f));
        }
        break;
      }
    }
  }
  return canonical(std::move(out));
}

// ---------------------------------------------------------------------------
// measure

inline unsigned measure(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Bottom:
    case FormulaKind::Atom:
      return 0;
    case FormulaKind::And:
      return 1 + measure(f.left()) + measure(f.right());
    case FormulaKind::Box: {
      if (f.prog().is_atomic()) return 0;
      unsigned m = 1 + measure(f.sub());
      for (const Formula& t : tests_of(f.prog())) m += measure(Formula::neg(t));
      return m;
    }
    case FormulaKind::Neg: {
      const Formula& g = f.sub();
      switch (g.kind()) {
        case FormulaKind::Bottom:
        case FormulaKind::Atom:
          return 0;
        case FormulaKind::Neg:
          return 1 + measure(g.sub());
        case FormulaKind::And:
          return 1 + std::max(measure(Formula::neg(g.left())), measure(Formula::neg(g.right())));
        case FormulaKind::Box: {
          if (g.prog().is_atomic()) return 0;
          unsigned m = 1;
          for (const Formula& t : tests_of(g.prog())) m += measure(t);
          return m;
        }
      }
    }
  }
  return 0;
}

// Shapes that no local rule other than loading applies to.
inline bool is_basic_formula(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Bottom:
    case FormulaKind::Atom:
      return true;
    case FormulaKind::And:
      return false;
    case FormulaKind::Box:
      return f.prog().is_atomic();
    case FormulaKind::Neg: {
      const Formula& g = f.sub();
      return g.is(FormulaKind::Bottom) || g.is(FormulaKind::Atom) ||
             (g.is(FormulaKind::Box) && g.prog().is_atomic());
    }
  }
  return false;
}

// Number of constructors.
std::size_t size_of(const Formula& f);

inline std::size_t size_of(const Program& p) {
  switch (p.kind()) {
    case ProgramKind::Atomic:
      return 1;
    case ProgramKind::Test:
      return 1 + size_of(p.cond());
    case ProgramKind::Union:
    case ProgramKind::Comp:
      return 1 + size_of(p.left()) + size_of(p.right());
    case ProgramKind::Star:
      return 1 + size_of(p.sub());
  }
  return 1;
}

inline std::size_t size_of(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Bottom:
    case FormulaKind::Atom:
      return 1;
    case FormulaKind::Neg:
      return 1 + size_of(f.sub());
    case FormulaKind::And:
      return 1 + size_of(f.left()) + size_of(f.right());
    case FormulaKind::Box:
      return 1 + size_of(f.prog()) + size_of(f.sub());
  }
  return 1;
}

}  // namespace pdl
