#pragma once

// Loaded formulas and sequents.
//
// A loaded formula ~[a1]...[an]phi (n >= 1) keeps its box chain marked; the
// negation is part of the type.  A sequent is a sorted duplicate-free list
// of members with at most one loaded member.  Unloaded members sort before
// loaded ones.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "formula.hpp"
#include "syntax.hpp"

namespace pdl {

struct LoadedFormula {
  ProgramList prefix;  // never empty
  Formula tail;

  Formula unload() const { return Formula::neg(boxes(prefix, tail)); }

  friend int compare(const LoadedFormula& x, const LoadedFormula& y) {
    if (int c = compare(x.prefix, y.prefix); c != 0) return c;
    return compare(x.tail, y.tail);
  }
};

// ~[d1]...[dn]xi where xi = [rest]tail is the residue of a loaded formula
// (rest may be empty).  Loading collapses when the whole chain is empty.
class Member;
Member negated_residue(const ProgramList& dl, const ProgramList& rest, const Formula& tail);

class Member {
 public:
  Member(Formula f) : free_(std::move(f)), unloaded_(free_) {}  // NOLINT(implicit)
  explicit Member(LoadedFormula lf)
      : loaded_(true), lf_(std::move(lf)), unloaded_(lf_.unload()) {
    if (lf_.prefix.empty()) throw std::invalid_argument("loaded formula needs a nonempty box chain");
  }

  bool loaded() const { return loaded_; }
  const Formula& formula() const { return free_; }  // unloaded members only
  const LoadedFormula& loaded_formula() const { return lf_; }
  // The member with every loading mark dropped.
  const Formula& unloaded() const { return unloaded_; }
  std::size_t hash() const { return unloaded_.hash() * 2 + (loaded_ ? 1 : 0); }

  // Basic shapes tested on the unloaded version; a loaded member is basic
  // exactly when the head of its chain is atomic.
  bool basic() const {
    return loaded_ ? lf_.prefix.front().is_atomic() : is_basic_formula(free_);
  }

  friend int compare(const Member& x, const Member& y) {
    if (x.loaded_ != y.loaded_) return x.loaded_ ? 1 : -1;
    if (!x.loaded_) return compare(x.free_, y.free_);
    return compare(x.lf_, y.lf_);
  }
  friend bool operator==(const Member& x, const Member& y) {
    return x.loaded_ == y.loaded_ && x.unloaded_.hash() == y.unloaded_.hash() && compare(x, y) == 0;
  }
  friend bool operator<(const Member& x, const Member& y) { return compare(x, y) < 0; }

 private:
  bool loaded_ = false;
  Formula free_;
  LoadedFormula lf_;
  Formula unloaded_;
};

inline Member negated_residue(const ProgramList& dl, const ProgramList& rest, const Formula& tail) {
  ProgramList chain = dl;
  chain.insert(chain.end(), rest.begin(), rest.end());
  if (chain.empty()) return Member(Formula::neg(tail));
  return Member(LoadedFormula{std::move(chain), tail});
}

inline std::string to_string(const Member& m) {
  if (!m.loaded()) return to_string(m.formula());
  // Loaded boxes print with braces instead of brackets.
  std::string s = "~";
  for (const Program& p : m.loaded_formula().prefix) s += "{" + to_string(p) + "}";
  std::string t = to_string(m.loaded_formula().tail);
  if (m.loaded_formula().tail.is(FormulaKind::And)) t = "(" + t + ")";
  return s + t;
}

class Sequent {
 public:
  Sequent() = default;
  Sequent(std::vector<Member> ms) : members_(std::move(ms)) { normalize(); }  // NOLINT(implicit)
  Sequent(std::initializer_list<Formula> fs) {
    for (const Formula& f : fs) members_.emplace_back(f);
    normalize();
  }

  const std::vector<Member>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::size_t hash() const { return hash_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool contains(const Member& m) const { return std::binary_search(members_.begin(), members_.end(), m); }

  bool contains_unloaded(const Formula& f) const {
    for (const Member& m : members_)
      if (m.unloaded() == f) return true;
    return false;
  }

  // Index of the loaded member, if any.
  std::optional<std::size_t> loaded_index() const {
    if (!members_.empty() && members_.back().loaded()) return members_.size() - 1;
    return std::nullopt;
  }
  bool is_loaded() const { return loaded_index().has_value(); }
  bool is_free() const { return !is_loaded(); }
  const Member& loaded_member() const { return members_.back(); }

  bool is_basic() const {
    return std::all_of(members_.begin(), members_.end(), [](const Member& m) { return m.basic(); });
  }

  Sequent without(const Member& m) const {
    std::vector<Member> out;
    out.reserve(members_.size());
    for (const Member& x : members_)
      if (!(x == m)) out.push_back(x);
    return Sequent(std::move(out), true);
  }

  Sequent with(const std::vector<Member>& extra) const {
    std::vector<Member> out = members_;
    out.insert(out.end(), extra.begin(), extra.end());
    return Sequent(std::move(out));
  }

  Sequent unloaded() const {
    std::vector<Member> out;
    for (const Member& m : members_) out.emplace_back(m.unloaded());
    return Sequent(std::move(out));
  }

  std::vector<Formula> unloaded_formulas() const {
    std::vector<Formula> out;
    for (const Member& m : members_) out.push_back(m.unloaded());
    return out;
  }

  friend int compare(const Sequent& x, const Sequent& y) {
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
      if (int c = compare(x.members_[i], y.members_[i]); c != 0) return c;
    if (x.size() == y.size()) return 0;
    return x.size() < y.size() ? -1 : 1;
  }
  friend bool operator==(const Sequent& x, const Sequent& y) {
    return x.hash_ == y.hash_ && x.size() == y.size() && compare(x, y) == 0;
  }
  friend bool operator<(const Sequent& x, const Sequent& y) { return compare(x, y) < 0; }

 private:
  Sequent(std::vector<Member> ms, bool /*already sorted*/) : members_(std::move(ms)) { rehash(); }

  void normalize() {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    std::size_t loaded = std::count_if(members_.begin(), members_.end(), [](const Member& m) { return m.loaded(); });
    if (loaded > 1) throw std::logic_error("a sequent may contain at most one loaded formula");
    rehash();
  }

  void rehash() {
    std::size_t h = 0x5e9;
    for (const Member& m : members_) h = detail::mix(h, m.hash());
    hash_ = h;
  }

  std::vector<Member> members_;
  std::size_t hash_ = 0x5e9;
};

struct SequentHash {
  std::size_t operator()(const Sequent& s) const { return s.hash(); }
};

inline std::string to_string(const Sequent& s) {
  std::string out = "{";
  bool first = true;
  for (const Member& m : s) {
    if (!first) out += ", ";
    first = false;
    out += to_string(m);
  }
  return out + "}";
}

inline Vocabulary vocabulary(const Sequent& s) {
  Vocabulary v;
  for (const Member& m : s) v.add(vocabulary(m.unloaded()));
  return v;
}

inline unsigned measure(const Member& m) { return measure(m.unloaded()); }

inline unsigned measure(const Sequent& s) {
  unsigned total = 0;
  for (const Member& m : s) total += measure(m);
  return total;
}

inline Formula unload(const LoadedFormula& lf) { return lf.unload(); }

// The canonical set of sequents: sorted and deduplicated.
inline std::vector<Sequent> canonical(std::vector<Sequent> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace pdl
