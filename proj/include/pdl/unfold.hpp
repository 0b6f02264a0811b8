#pragma once

// Local unfolding of boxes and diamonds over non-atomic programs.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "formula.hpp"
#include "sequent.hpp"
#include "syntax.hpp"

namespace pdl {

struct TestProfile {
  std::vector<Formula> chosen;  // canonical order

  bool contains(const Formula& t) const { return std::binary_search(chosen.begin(), chosen.end(), t); }
  friend bool operator==(const TestProfile&, const TestProfile&) = default;
};

// All subsets of the shallow tests, by increasing bitmask over the
// canonical test order.
inline std::vector<TestProfile> test_profiles(const Program& a) {
  std::vector<Formula> ts = tests_of(a);
  if (ts.size() > 20) throw std::length_error("too many tests in one program");
  std::vector<TestProfile> out;
  for (std::uint32_t mask = 0; mask < (1u << ts.size()); ++mask) {
    TestProfile l;
    for (std::size_t i = 0; i < ts.size(); ++i)
      if (mask & (1u << i)) l.chosen.push_back(ts[i]);
    out.push_back(std::move(l));
  }
  return out;
}

inline Formula signature_formula(const Program& a, const TestProfile& l) {
  std::vector<Formula> parts;
  for (const Formula& t : tests_of(a)) parts.push_back(l.contains(t) ? t : Formula::neg(t));
  return conjunction(parts);
}

namespace detail {
inline std::vector<ProgramList> canonical_lists(std::vector<ProgramList> v) {
  std::sort(v.begin(), v.end(), [](const ProgramList& x, const ProgramList& y) { return compare(x, y) < 0; });
  v.erase(std::unique(v.begin(), v.end(),
                      [](const ProgramList& x, const ProgramList& y) { return compare(x, y) == 0; }),
          v.end());
  return v;
}
}  // namespace detail

inline std::vector<ProgramList> unfold_P(const Program& a, const TestProfile& l) {
  std::vector<ProgramList> out;
  switch (a.kind()) {
    case ProgramKind::Atomic:
      out.push_back({a});
      break;
    case ProgramKind::Test:
      if (l.contains(a.cond())) out.push_back({});
      break;
    case ProgramKind::Union: {
      out = unfold_P(a.left(), l);
      auto r = unfold_P(a.right(), l);
      out.insert(out.end(), r.begin(), r.end());
      break;
    }
    case ProgramKind::Comp: {
      bool left_empty = false;
      for (ProgramList dl : unfold_P(a.left(), l)) {
        if (dl.empty()) {
          left_empty = true;
          continue;
        }
        dl.push_back(a.right());
        out.push_back(std::move(dl));
      }
      if (left_empty) {
        auto r = unfold_P(a.right(), l);
        out.insert(out.end(), r.begin(), r.end());
      }
      break;
    }
    case ProgramKind::Star:
      out.push_back({});
      for (ProgramList dl : unfold_P(a.sub(), l)) {
        if (dl.empty()) continue;
        dl.push_back(a);
        out.push_back(std::move(dl));
      }
      break;
  }
  return detail::canonical_lists(std::move(out));
}

// Negations of the tests the profile lets fail.
inline std::vector<Formula> unfold_F(const Program& a, const TestProfile& l) {
  std::vector<Formula> out;
  for (const Formula& t : tests_of(a))
    if (!l.contains(t)) out.push_back(Formula::neg(t));
  return canonical(std::move(out));
}

inline std::vector<Sequent> unfold_box(const Program& a, const Formula& f) {
  std::vector<Sequent> out;
  for (const TestProfile& l : test_profiles(a)) {
    std::vector<Member> x;
    for (const Formula& g : unfold_F(a, l)) x.emplace_back(g);
    for (const ProgramList& dl : unfold_P(a, l)) x.emplace_back(boxes(dl, f));
    out.emplace_back(std::move(x));
  }
  return canonical(std::move(out));
}

struct HPair {
  std::vector<Formula> guards;  // canonical order
  ProgramList rest;

  friend int compare(const HPair& x, const HPair& y) {
    for (std::size_t i = 0; i < x.guards.size() && i < y.guards.size(); ++i)
      if (int c = compare(x.guards[i], y.guards[i]); c != 0) return c;
    if (x.guards.size() != y.guards.size()) return x.guards.size() < y.guards.size() ? -1 : 1;
    return compare(x.rest, y.rest);
  }
  friend bool operator==(const HPair& x, const HPair& y) { return compare(x, y) == 0; }
  friend bool operator<(const HPair& x, const HPair& y) { return compare(x, y) < 0; }
};

inline std::vector<HPair> H(const Program& a) {
  std::vector<HPair> out;
  switch (a.kind()) {
    case ProgramKind::Atomic:
      out.push_back({{}, {a}});
      break;
    case ProgramKind::Test:
      out.push_back({{a.cond()}, {}});
      break;
    case ProgramKind::Union: {
      out = H(a.left());
      auto r = H(a.right());
      out.insert(out.end(), r.begin(), r.end());
      break;
    }
    case ProgramKind::Comp: {
      auto right = H(a.right());
      for (const HPair& hp : H(a.left())) {
        if (!hp.rest.empty()) {
          HPair q = hp;
          q.rest.push_back(a.right());
          out.push_back(std::move(q));
          continue;
        }
        for (const HPair& hq : right) {
          std::vector<Formula> g = hp.guards;
          g.insert(g.end(), hq.guards.begin(), hq.guards.end());
          out.push_back({canonical(std::move(g)), hq.rest});
        }
      }
      break;
    }
    case ProgramKind::Star:
      out.push_back({{}, {}});
      for (const HPair& hp : H(a.sub())) {
        if (hp.rest.empty()) continue;
        HPair q = hp;
        q.rest.push_back(a);
        out.push_back(std::move(q));
      }
      break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<Sequent> unfold_dia(const Program& a, const Formula& f) {
  std::vector<Sequent> out;
  for (const HPair& hp : H(a)) {
    std::vector<Member> x(hp.guards.begin(), hp.guards.end());
    x.emplace_back(Formula::neg(boxes(hp.rest, f)));
    out.emplace_back(std::move(x));
  }
  return canonical(std::move(out));
}

// Loaded variant: the residue xi = [rest]tail keeps its loading marks and the
// new chain in front of it is loaded as well.
inline std::vector<Sequent> unfold_dia_loaded(const Program& a, const ProgramList& rest, const Formula& tail) {
  std::vector<Sequent> out;
  for (const HPair& hp : H(a)) {
    std::vector<Member> x(hp.guards.begin(), hp.guards.end());
    x.push_back(negated_residue(hp.rest, rest, tail));
    out.emplace_back(std::move(x));
  }
  return canonical(std::move(out));
}

inline std::vector<Sequent> unfold_dia_loaded(const LoadedFormula& principal) {
  ProgramList rest(principal.prefix.begin() + 1, principal.prefix.end());
  return unfold_dia_loaded(principal.prefix.front(), rest, principal.tail);
}

}  // namespace pdl
