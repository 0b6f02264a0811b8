#pragma once

// Depth-first AND-OR proof search shared by the plain and the split prover.
//
// A policy supplies the label type, closedness, loadedness and the moves
// available at a label.  The engine handles repeats, the budget and a cache
// of free labels that are known to have a closed subtree.

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace pdl {

class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(std::size_t visited)
      : std::runtime_error("proof search budget exhausted after " + std::to_string(visited) + " nodes"),
        visited_(visited) {}
  std::size_t visited() const { return visited_; }

 private:
  std::size_t visited_;
};

namespace detail {

// Closed subtree.  Loaded-path repeats store their companion as a distance
// in levels, so shared subtrees stay valid wherever they are grafted.
template <class Label, class MoveT>
struct ProofNode {
  Label label;
  std::optional<MoveT> move;
  std::vector<std::shared_ptr<const ProofNode>> children;
  int companion_up = 0;
};

// Builder's answer to the restricted game.
template <class Label, class MoveT>
struct StrategyNode {
  enum class Kind { Inner, Stuck, FreeRepeat };
  Label label;
  Kind kind = Kind::Inner;
  std::vector<std::pair<MoveT, std::shared_ptr<const StrategyNode>>> edges;
  int companion_up = 0;
};

template <class Label, class MoveT>
struct Expansion {
  enum class Kind { And, Or, Stuck };
  Kind kind = Kind::Stuck;
  // And: a single option with all rule children.  Or: one option per move.
  std::vector<std::pair<MoveT, std::vector<Label>>> options;
};

template <class Policy>
class SearchEngine {
 public:
  using Label = typename Policy::Label;
  using MoveT = typename Policy::Move;
  using PNode = ProofNode<Label, MoveT>;
  using SNode = StrategyNode<Label, MoveT>;
  using Hash = typename Policy::Hash;

  struct Outcome {
    std::shared_ptr<const PNode> proof;     // set when closed
    std::shared_ptr<const SNode> strategy;  // set when open
  };

  SearchEngine(Policy& policy, std::size_t budget, bool use_cache)
      : policy_(policy), budget_(budget), use_cache_(use_cache) {}

  Outcome run(const Label& root) { return visit(root, std::nullopt); }
  std::size_t visited() const { return visited_; }

 private:
  struct CacheEntry {
    std::shared_ptr<const PNode> proof;
    std::vector<std::size_t> inner_free;  // hashes of free labels below the root
  };

  Policy& policy_;
  std::size_t budget_;
  bool use_cache_;
  std::size_t visited_ = 0;
  std::vector<Label> path_;
  std::vector<std::size_t> free_prefix_{0};  // free nodes among path_[0..i)
  std::unordered_map<std::size_t, int> free_on_path_;
  std::unordered_map<Label, CacheEntry, Hash> cache_;

  static std::shared_ptr<const PNode> leaf(const Label& s, int up = 0) {
    auto n = std::make_shared<PNode>();
    n->label = s;
    n->companion_up = up;
    return n;
  }

  void push(const Label& s) {
    const bool free = !policy_.loaded(s);
    path_.push_back(s);
    free_prefix_.push_back(free_prefix_.back() + (free ? 1 : 0));
    if (free) ++free_on_path_[Hash{}(s)];
  }

  void pop() {
    const Label& s = path_.back();
    if (!policy_.loaded(s)) {
      auto it = free_on_path_.find(Hash{}(s));
      if (--it->second == 0) free_on_path_.erase(it);
    }
    path_.pop_back();
    free_prefix_.pop_back();
  }

  struct PathGuard {
    SearchEngine& e;
    ~PathGuard() { e.pop(); }
  };

  std::vector<std::size_t> inner_free_hashes(const std::shared_ptr<const PNode>& root) const {
    std::unordered_set<const PNode*> seen;
    std::unordered_set<std::size_t> hashes;
    std::vector<const PNode*> todo;
    for (const auto& c : root->children) todo.push_back(c.get());
    while (!todo.empty()) {
      const PNode* n = todo.back();
      todo.pop_back();
      if (!seen.insert(n).second) continue;
      if (!policy_.loaded(n->label)) hashes.insert(Hash{}(n->label));
      for (const auto& c : n->children) todo.push_back(c.get());
    }
    return {hashes.begin(), hashes.end()};
  }

  Outcome visit(const Label& s, std::optional<MoveT> last) {
    if (++visited_ > budget_) throw BudgetExhausted(visited_);
    if (policy_.closed(s)) return {leaf(s), nullptr};

    const bool loaded = policy_.loaded(s);
    for (std::size_t i = path_.size(); i-- > 0;) {
      if (!(path_[i] == s)) continue;
      const int up = static_cast<int>(path_.size() - i);
      if (loaded && free_prefix_.back() == free_prefix_[i]) return {leaf(s, up), nullptr};
      if (!loaded) {
        auto n = std::make_shared<SNode>();
        n->label = s;
        n->kind = SNode::Kind::FreeRepeat;
        n->companion_up = up;
        return {nullptr, n};
      }
      break;  // a loaded repeat across a free node: keep going
    }

    if (!loaded && use_cache_) {
      auto it = cache_.find(s);
      if (it != cache_.end()) {
        bool clash = false;
        for (std::size_t h : it->second.inner_free)
          if (free_on_path_.count(h)) {
            clash = true;
            break;
          }
        if (!clash) return {it->second.proof, nullptr};
      }
    }

    Expansion<Label, MoveT> exp = policy_.expand(s, last);
    if (exp.kind == Expansion<Label, MoveT>::Kind::Stuck) {
      auto n = std::make_shared<SNode>();
      n->label = s;
      n->kind = SNode::Kind::Stuck;
      return {nullptr, n};
    }

    std::shared_ptr<const PNode> proof;
    {
      push(s);
      PathGuard guard{*this};
      if (exp.kind == Expansion<Label, MoveT>::Kind::And) {
        auto& [move, kids] = exp.options.front();
        auto n = std::make_shared<PNode>();
        n->label = s;
        n->move = move;
        for (const Label& k : kids) {
          Outcome o = visit(k, move);
          if (o.strategy) {
            auto sn = std::make_shared<SNode>();
            sn->label = s;
            sn->edges.emplace_back(move, o.strategy);
            return {nullptr, sn};
          }
          n->children.push_back(o.proof);
        }
        proof = n;
      } else {
        auto sn = std::make_shared<SNode>();
        sn->label = s;
        for (auto& [move, kids] : exp.options) {
          Outcome o = visit(kids.front(), move);
          if (o.proof) {
            auto n = std::make_shared<PNode>();
            n->label = s;
            n->move = move;
            n->children.push_back(o.proof);
            proof = n;
            break;
          }
          sn->edges.emplace_back(move, o.strategy);
        }
        if (!proof) return {nullptr, sn};
      }
    }

    if (!loaded && use_cache_) cache_.emplace(s, CacheEntry{proof, inner_free_hashes(proof)});
    return {proof, nullptr};
  }
};

// Expands a shared proof DAG into a tree arena.  `Node` must provide
// label, move, parent and children members.
template <class Node, class PNodeT>
int flatten_proof(const std::shared_ptr<const PNodeT>& root, std::vector<Node>& nodes,
                  std::vector<std::pair<int, int>>& companions, std::optional<int> parent,
                  std::vector<int>& ancestry) {
  const int id = static_cast<int>(nodes.size());
  nodes.push_back(Node{root->label, root->move, parent, {}});
  if (root->companion_up > 0) {
    companions.emplace_back(id, ancestry[ancestry.size() - static_cast<std::size_t>(root->companion_up)]);
  }
  ancestry.push_back(id);
  for (const auto& c : root->children) {
    int cid = flatten_proof<Node>(c, nodes, companions, id, ancestry);
    nodes[id].children.push_back(cid);
  }
  ancestry.pop_back();
  return id;
}

}  // namespace detail
}  // namespace pdl
