#pragma once

// Seeded generators of random programs, formulas and sequents for the
// property suites.

#include <random>
#include <string>
#include <vector>

#include "formula.hpp"
#include "sequent.hpp"
#include "syntax.hpp"

namespace pdl {

struct GenConfig {
  std::vector<std::string> props{"p", "q"};
  std::vector<std::string> progs{"a", "b"};
  bool tests = true;  // allow ?phi inside programs
};

class RandomGen {
 public:
  explicit RandomGen(std::uint64_t seed, GenConfig cfg = {}) : rng_(seed), cfg_(std::move(cfg)) {}

  std::mt19937_64& engine() { return rng_; }
  const GenConfig& config() const { return cfg_; }

  int below(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

  // Formula with at most `size` constructors (atoms count as one).
  Formula formula(int size) {
    if (size <= 1) return leaf();
    switch (below(4)) {
      case 0:
        return Formula::neg(formula(size - 1));
      case 1: {
        int l = 1 + below(size - 1);
        return Formula::conj(formula(l), formula(std::max(1, size - 1 - l)));
      }
      default: {
        int p = 1 + below(std::max(1, size / 2));
        Formula body = formula(std::max(1, size - 1 - p));
        Formula box = Formula::box(program(p), body);
        return below(2) == 0 ? box : Formula::neg(box);
      }
    }
  }

  // Program with at most `size` constructors.
  Program program(int size) {
    if (size <= 1) return Program::atomic(pick(cfg_.progs));
    const int choices = cfg_.tests ? 5 : 4;
    switch (below(choices)) {
      case 0:
      case 1:
        return Program::star(program(size - 1));
      case 2: {
        int l = 1 + below(size - 1);
        return Program::choice(program(l), program(std::max(1, size - 1 - l)));
      }
      case 3: {
        int l = 1 + below(size - 1);
        return Program::seq(program(l), program(std::max(1, size - 1 - l)));
      }
      default:
        return Program::test(formula(std::min(3, size - 1)));
    }
  }

  Sequent sequent(int max_members, int max_size) {
    std::vector<Member> ms;
    const int n = 1 + below(max_members);
    while (static_cast<int>(ms.size()) < n) {
      Formula f = formula(1 + below(max_size));
      if (static_cast<int>(size_of(f)) <= max_size) ms.emplace_back(std::move(f));
    }
    return Sequent(std::move(ms));
  }

 private:
  std::mt19937_64 rng_;
  GenConfig cfg_;

  const std::string& pick(const std::vector<std::string>& v) { return v[static_cast<std::size_t>(below(static_cast<int>(v.size())))]; }

  Formula leaf() {
    if (below(8) == 0) return Formula::bottom();
    return Formula::atom(pick(cfg_.props));
  }
};

}  // namespace pdl
