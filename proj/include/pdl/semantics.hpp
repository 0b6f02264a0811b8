#pragma once

// Finite Kripke models, truth evaluation and program relations.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "formula.hpp"
#include "sequent.hpp"
#include "syntax.hpp"

namespace pdl {

using StatePair = std::pair<int, int>;
using Relation = std::set<StatePair>;

struct KripkeModel {
  int states = 1;
  std::map<std::string, Relation> relations;
  std::map<std::string, std::set<int>> valuation;

  void validate() const {
    if (states < 1) throw std::invalid_argument("a model needs at least one state");
    for (const auto& [a, rel] : relations)
      for (auto [i, j] : rel)
        if (i < 0 || j < 0 || i >= states || j >= states)
          throw std::invalid_argument("relation '" + a + "' mentions an unknown state");
    for (const auto& [p, set] : valuation)
      for (int i : set)
        if (i < 0 || i >= states) throw std::invalid_argument("valuation of '" + p + "' mentions an unknown state");
  }

  friend bool operator==(const KripkeModel&, const KripkeModel&) = default;
};

struct PointedModel {
  KripkeModel model;
  int point = 0;
};

namespace detail {

// Dense boolean matrix used while evaluating.
class Matrix {
 public:
  explicit Matrix(int n) : n_(n), bits_(static_cast<std::size_t>(n) * n, 0) {}
  static Matrix identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, i);
    return m;
  }
  bool get(int i, int j) const { return bits_[static_cast<std::size_t>(i) * n_ + j] != 0; }
  void set(int i, int j) { bits_[static_cast<std::size_t>(i) * n_ + j] = 1; }
  int size() const { return n_; }

  Matrix operator|(const Matrix& o) const {
    Matrix r = *this;
    for (std::size_t k = 0; k < bits_.size(); ++k) r.bits_[k] |= o.bits_[k];
    return r;
  }
  Matrix compose(const Matrix& o) const {
    Matrix r(n_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k)
        if (get(i, k))
          for (int j = 0; j < n_; ++j)
            if (o.get(k, j)) r.set(i, j);
    return r;
  }
  // Reflexive-transitive closure (Warshall).
  Matrix star() const {
    Matrix r = *this | identity(n_);
    for (int k = 0; k < n_; ++k)
      for (int i = 0; i < n_; ++i)
        if (r.get(i, k))
          for (int j = 0; j < n_; ++j)
            if (r.get(k, j)) r.set(i, j);
    return r;
  }
  Relation pairs() const {
    Relation out;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (get(i, j)) out.emplace(i, j);
    return out;
  }

 private:
  int n_;
  std::vector<std::uint8_t> bits_;
};

class Evaluator {
 public:
  explicit Evaluator(const KripkeModel& m) : m_(m) {}

  std::vector<bool> extension(const Formula& f) {
    const int n = m_.states;
    std::vector<bool> out(n, false);
    switch (f.kind()) {
      case FormulaKind::Bottom:
        break;
      case FormulaKind::Atom: {
        auto it = m_.valuation.find(f.name());
        if (it != m_.valuation.end())
          for (int i : it->second) out[i] = true;
        break;
      }
      case FormulaKind::Neg: {
        auto s = extension(f.sub());
        for (int i = 0; i < n; ++i) out[i] = !s[i];
        break;
      }
      case FormulaKind::And: {
        auto l = extension(f.left());
        auto r = extension(f.right());
        for (int i = 0; i < n; ++i) out[i] = l[i] && r[i];
        break;
      }
      case FormulaKind::Box: {
        Matrix rel = relation(f.prog());
        auto s = extension(f.sub());
        for (int i = 0; i < n; ++i) {
          bool ok = true;
          for (int j = 0; j < n && ok; ++j)
            if (rel.get(i, j) && !s[j]) ok = false;
          out[i] = ok;
        }
        break;
      }
    }
    return out;
  }

  Matrix relation(const Program& a) {
    const int n = m_.states;
    switch (a.kind()) {
      case ProgramKind::Atomic: {
        Matrix r(n);
        auto it = m_.relations.find(a.name());
        if (it != m_.relations.end())
          for (auto [i, j] : it->second) r.set(i, j);
        return r;
      }
      case ProgramKind::Test: {
        Matrix r(n);
        auto s = extension(a.cond());
        for (int i = 0; i < n; ++i)
          if (s[i]) r.set(i, i);
        return r;
      }
      case ProgramKind::Union:
        return relation(a.left()) | relation(a.right());
      case ProgramKind::Comp:
        return relation(a.left()).compose(relation(a.right()));
      case ProgramKind::Star:
        return relation(a.sub()).star();
    }
    return Matrix(n);
  }

 private:
  const KripkeModel& m_;
};

}  // namespace detail

inline bool eval(const KripkeModel& m, int w, const Formula& f) {
  return detail::Evaluator(m).extension(f)[w];
}

inline bool eval(const KripkeModel& m, int w, const Member& x) { return eval(m, w, x.unloaded()); }

inline bool eval(const KripkeModel& m, int w, const LoadedFormula& lf) { return eval(m, w, lf.unload()); }

// Extension of a formula: truth value at every state.
inline std::vector<bool> extension(const KripkeModel& m, const Formula& f) {
  return detail::Evaluator(m).extension(f);
}

inline Relation relate(const KripkeModel& m, const Program& a) {
  return detail::Evaluator(m).relation(a).pairs();
}

inline Relation relate_seq(const KripkeModel& m, const ProgramList& dl) {
  detail::Evaluator ev(m);
  detail::Matrix r = detail::Matrix::identity(m.states);
  for (const Program& a : dl) r = r.compose(ev.relation(a));
  return r.pairs();
}

inline bool check_sequent(const KripkeModel& m, int w, const Sequent& s) {
  detail::Evaluator ev(m);
  for (const Member& x : s)
    if (!ev.extension(x.unloaded())[w]) return false;
  return true;
}

// Deterministic pseudo-random model.  The state count is drawn from
// [1, max_states]; each possible edge and valuation entry is present with
// probability `density`.
inline KripkeModel random_model(std::uint64_t seed, int max_states, const std::set<std::string>& props,
                                const std::set<std::string>& progs, double density) {
  if (max_states < 1) throw std::invalid_argument("max_states must be at least 1");
  std::mt19937_64 rng(seed);
  auto coin = [&](double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; };
  KripkeModel m;
  m.states = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_states));
  for (const std::string& a : progs) {
    Relation& rel = m.relations[a];
    for (int i = 0; i < m.states; ++i)
      for (int j = 0; j < m.states; ++j)
        if (coin(density)) rel.emplace(i, j);
  }
  for (const std::string& p : props) {
    std::set<int>& v = m.valuation[p];
    for (int i = 0; i < m.states; ++i)
      if (coin(0.5)) v.insert(i);
  }
  return m;
}

}  // namespace pdl
