#pragma once

// Split sequents and the uniform split tableau prover.

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "prover.hpp"
#include "rules.hpp"
#include "search.hpp"
#include "sequent.hpp"

namespace pdl {

enum class Side : std::uint8_t { Left, Right };

inline Side other(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
inline const char* side_name(Side s) { return s == Side::Left ? "1" : "2"; }

class SplitSequent {
 public:
  SplitSequent() = default;
  SplitSequent(Sequent left, Sequent right) : left_(std::move(left)), right_(std::move(right)) {
    if (left_.is_loaded() && right_.is_loaded())
      throw std::logic_error("at most one component of a split sequent may be loaded");
  }

  const Sequent& left() const { return left_; }
  const Sequent& right() const { return right_; }
  const Sequent& side(Side s) const { return s == Side::Left ? left_ : right_; }

  bool is_loaded() const { return left_.is_loaded() || right_.is_loaded(); }
  bool is_free() const { return !is_loaded(); }
  std::optional<Side> loaded_side() const {
    if (left_.is_loaded()) return Side::Left;
    if (right_.is_loaded()) return Side::Right;
    return std::nullopt;
  }

  // Both components as one sequent.
  Sequent merged() const { return left_.with(right_.members()); }

  SplitSequent with_side(Side s, Sequent x) const {
    return s == Side::Left ? SplitSequent(std::move(x), right_) : SplitSequent(left_, std::move(x));
  }

  std::size_t hash() const { return detail::mix(left_.hash(), right_.hash() + 0x9e37); }

  friend bool operator==(const SplitSequent& x, const SplitSequent& y) {
    return x.left_ == y.left_ && x.right_ == y.right_;
  }

 private:
  Sequent left_;
  Sequent right_;
};

struct SplitSequentHash {
  std::size_t operator()(const SplitSequent& g) const { return g.hash(); }
};

inline std::string to_string(const SplitSequent& g) { return to_string(g.left()) + " ; " + to_string(g.right()); }

inline bool is_closed(const SplitSequent& g) { return is_closed(g.merged()); }

struct SplitMove {
  RuleId rule;
  Side side;
  Member principal;
};

inline std::string to_string(const SplitMove& m) {
  return std::string(rule_name(m.rule)) + "_" + side_name(m.side) + " " + to_string(m.principal);
}

// Children of a split rule instance.  The split unloading rule has no side
// condition on the context.
inline std::vector<SplitSequent> split_rule_children(const SplitSequent& g, const SplitMove& m) {
  const Sequent& mine = g.side(m.side);
  const Sequent& theirs = g.side(other(m.side));
  std::vector<SplitSequent> out;
  switch (m.rule) {
    case RuleId::LoadPlus:
      if (!theirs.is_basic() || !theirs.is_free())
        throw RuleError("loading needs both components free and basic");
      break;
    case RuleId::LoadMinus: {
      if (!m.principal.loaded() || !mine.contains(m.principal)) throw RuleError("unloading needs the loaded formula");
      out.push_back(g.with_side(m.side, mine.without(m.principal).with({Member(m.principal.loaded_formula().unload())})));
      return out;
    }
    case RuleId::Modal: {
      if (!theirs.is_basic()) throw RuleError("the modal rule needs both components basic");
      const std::string& a = m.principal.loaded_formula().prefix.front().name();
      Sequent child = rule_children(mine, RuleId::Modal, m.principal).front();
      Sequent proj = projection(theirs, a);
      out.push_back(m.side == Side::Left ? SplitSequent(child, proj) : SplitSequent(proj, child));
      return out;
    }
    default:
      break;
  }
  for (Sequent& c : rule_children(mine, m.rule, m.principal)) out.push_back(g.with_side(m.side, std::move(c)));
  return out;
}

struct SplitTableauNode {
  SplitSequent label;
  std::optional<SplitMove> move;
  std::optional<int> parent;
  std::vector<int> children;
};

struct SplitTableau {
  std::vector<SplitTableauNode> nodes;
  int root = 0;
  std::map<int, int> companions;

  std::size_t size() const { return nodes.size(); }
  const SplitTableauNode& operator[](int i) const { return nodes[static_cast<std::size_t>(i)]; }
};

struct SplitProofResult {
  bool closed = false;
  SplitTableau tableau;  // when closed
  KripkeModel model;     // when not provable
  int point = 0;
  std::size_t search_nodes = 0;
};

namespace detail {

struct SplitPolicy {
  using Label = SplitSequent;
  using Move = SplitMove;
  using Hash = SplitSequentHash;

  bool closed(const SplitSequent& g) const { return is_closed(g); }
  bool loaded(const SplitSequent& g) const { return g.is_loaded(); }

  // First plain local rule on one component; depends on that component only.
  static std::optional<SplitMove> first_local(const Sequent& s, Side side) {
    for (const pdl::Move& m : prover_moves(s))
      if (is_plain_local(m.rule)) return SplitMove{m.rule, side, m.principal};
    return std::nullopt;
  }

  Expansion<SplitSequent, SplitMove> expand(const SplitSequent& g, std::optional<SplitMove> last) const {
    using E = Expansion<SplitSequent, SplitMove>;
    E out;
    auto and_node = [&](const SplitMove& m) {
      out.kind = E::Kind::And;
      out.options.emplace_back(m, split_rule_children(g, m));
      return out;
    };
    auto local_on = [&](Side side) -> std::optional<SplitMove> {
      if (g.side(side).is_basic()) return std::nullopt;
      auto m = first_local(g.side(side), side);
      if (!m) throw std::logic_error("non-basic component without a local rule");
      return m;
    };

    std::vector<SplitMove> picked;
    if (auto ls = g.loaded_side()) {
      // Reduce the unloaded component first, then the loaded one.
      if (auto m = local_on(other(*ls))) return and_node(*m);
      if (auto m = local_on(*ls)) return and_node(*m);
      const Member& lm = g.side(*ls).loaded_member();
      picked.push_back({RuleId::Modal, *ls, lm});
      if (!(last && last->rule == RuleId::LoadPlus && last->side == *ls))
        picked.push_back({RuleId::LoadMinus, *ls, lm});
    } else {
      if (auto m = local_on(Side::Left)) return and_node(*m);
      if (auto m = local_on(Side::Right)) return and_node(*m);
      for (Side side : {Side::Left, Side::Right})
        for (const Member& m : g.side(side))
          if (!m.loaded() && detail::is_atomic_dia(m.formula())) picked.push_back({RuleId::LoadPlus, side, m});
    }
    if (picked.empty()) return out;
    out.kind = E::Kind::Or;
    for (const SplitMove& m : picked) out.options.emplace_back(m, split_rule_children(g, m));
    return out;
  }
};

}  // namespace detail

// Searches for a closed uniform split tableau.  When none exists the plain
// prover supplies a model of both components.
inline SplitProofResult prove_split(const SplitSequent& g, const ProverOptions& opts = {}) {
  if (g.is_loaded()) throw std::invalid_argument("prove_split expects free components");
  detail::SplitPolicy policy;
  detail::SearchEngine<detail::SplitPolicy> engine(policy, opts.budget, opts.use_cache);
  auto outcome = engine.run(g);
  SplitProofResult r;
  r.search_nodes = engine.visited();
  if (outcome.proof) {
    r.closed = true;
    std::vector<std::pair<int, int>> comps;
    std::vector<int> ancestry;
    detail::flatten_proof<SplitTableauNode>(outcome.proof, r.tableau.nodes, comps, std::nullopt, ancestry);
    r.tableau.companions.insert(comps.begin(), comps.end());
    return r;
  }
  ProofResult plain = prove(g.merged(), opts);
  if (plain.closed) throw std::logic_error("internal error: split search open but the plain prover closed");
  r.model = std::move(plain.model);
  r.point = plain.point;
  return r;
}

// Structural check of a closed split tableau, including uniformity.
inline std::vector<std::string> check_split_tableau(const SplitTableau& t, const SplitSequent& root_label) {
  std::vector<std::string> errs;
  auto err = [&](int i, const std::string& what) { errs.push_back("node " + std::to_string(i) + ": " + what); };
  if (t.nodes.empty()) return {"empty tableau"};
  if (!(t[t.root].label == root_label)) err(t.root, "root label differs from the input");
  std::map<std::pair<Side, std::string>, std::string> uniform;  // loaded component -> rule used on it
  for (int i = 0; i < static_cast<int>(t.size()); ++i) {
    const SplitTableauNode& n = t[i];
    std::optional<int> comp;
    for (auto p = n.parent; p; p = t[*p].parent)
      if (t[*p].label == n.label) {
        comp = *p;
        break;
      }
    bool lpr = false;
    if (comp) {
      lpr = true;
      for (int k = i; k != *comp; k = *t[k].parent) lpr = lpr && t[k].label.is_loaded();
      lpr = lpr && t[*comp].label.is_loaded();
    }
    if (n.children.empty()) {
      if (is_closed(n.label)) continue;
      if (!lpr) err(i, "open leaf " + to_string(n.label));
      else if (!t.companions.count(i) || t.companions.at(i) != *comp) err(i, "companion mismatch");
      continue;
    }
    if (comp && (lpr || n.label.is_free())) err(i, "repeat is not a leaf");
    if (!n.move) {
      err(i, "interior node without a rule");
      continue;
    }
    std::vector<SplitSequent> expect;
    try {
      expect = split_rule_children(n.label, *n.move);
    } catch (const std::exception& e) {
      err(i, e.what());
      continue;
    }
    if (expect.size() != n.children.size()) {
      err(i, "wrong number of children");
      continue;
    }
    for (std::size_t k = 0; k < expect.size(); ++k)
      if (!(t[n.children[k]].label == expect[k])) err(i, "child does not match the rule");
    if (auto ls = n.label.loaded_side()) {
      const Sequent& unl = n.label.side(other(*ls));
      const Sequent& ld = n.label.side(*ls);
      if (!unl.is_basic() && n.move->side != other(*ls)) err(i, "U1 violated");
      if (unl.is_basic() && !ld.is_basic()) {
        std::string used = to_string(*n.move);
        auto key = std::make_pair(*ls, to_string(ld));
        auto [it, fresh] = uniform.emplace(key, used);
        if (!fresh && it->second != used) err(i, "U2 violated");
      }
    }
  }
  return errs;
}

inline std::string export_dot(const SplitTableau& t) {
  std::ostringstream out;
  out << "digraph split_tableau {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    out << "  n" << i << " [label=\"" << detail::dot_escape(to_string(t.nodes[i].label)) << "\"];\n";
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    for (int c : t.nodes[i].children) {
      const SplitMove& m = *t.nodes[i].move;
      out << "  n" << i << " -> n" << c << " [label=\"" << rule_name(m.rule) << "_" << side_name(m.side) << "\"];\n";
    }
  for (const auto& [leaf, comp] : t.companions)
    out << "  n" << leaf << " -> n" << comp << " [style=dashed, label=\"♥\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace pdl
