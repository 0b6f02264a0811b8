#pragma once

// Cyclic tableau prover for PDL sequents with countermodel extraction.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rules.hpp"
#include "search.hpp"
#include "semantics.hpp"
#include "sequent.hpp"

namespace pdl {

struct TableauNode {
  Sequent label;
  std::optional<Move> move;  // empty at leaves
  std::optional<int> parent;
  std::vector<int> children;
};

struct Tableau {
  std::vector<TableauNode> nodes;
  int root = 0;
  std::map<int, int> companions;  // loaded-path repeat -> companion

  std::size_t size() const { return nodes.size(); }
  const TableauNode& operator[](int i) const { return nodes[static_cast<std::size_t>(i)]; }
};

struct StrategyTreeNode {
  Sequent label;
  std::vector<std::pair<Move, int>> edges;  // move and the child realizing Builder's answer
  std::optional<int> parent;
  std::optional<int> companion;  // set on free repeat leaves
};

struct StrategyTree {
  std::vector<StrategyTreeNode> nodes;
  int root = 0;
};

struct ProverOptions {
  std::size_t budget = 1'000'000;
  bool use_cache = true;
};

struct ProofResult {
  bool closed = false;
  Tableau tableau;          // when closed
  StrategyTree strategy;    // when open
  KripkeModel model;        // when open
  int point = 0;            // when open
  std::size_t search_nodes = 0;
};

namespace detail {

struct PlainPolicy {
  using Label = Sequent;
  using Move = pdl::Move;
  using Hash = SequentHash;

  bool closed(const Sequent& s) const { return is_closed(s); }
  bool loaded(const Sequent& s) const { return s.is_loaded(); }

  // Restricted game: local rules one at a time until the sequent is basic,
  // then every loading (free) or the modal rule and unloading (loaded).
  Expansion<Sequent, pdl::Move> expand(const Sequent& s, std::optional<pdl::Move> last) const {
    using E = Expansion<Sequent, pdl::Move>;
    E out;
    std::optional<RuleId> last_rule;
    if (last) last_rule = last->rule;
    std::vector<pdl::Move> moves = prover_moves(s, last_rule);
    if (!s.is_basic()) {
      for (const pdl::Move& m : moves)
        if (is_plain_local(m.rule)) {
          out.kind = E::Kind::And;
          out.options.emplace_back(m, rule_children(s, m.rule, m.principal));
          return out;
        }
      throw std::logic_error("non-basic sequent without a local rule: " + to_string(s));
    }
    std::vector<pdl::Move> picked;
    if (s.is_free()) {
      for (const pdl::Move& m : moves)
        if (m.rule == RuleId::LoadPlus) picked.push_back(m);
    } else {
      for (const pdl::Move& m : moves)
        if (m.rule == RuleId::Modal) picked.push_back(m);
      for (const pdl::Move& m : moves)
        if (m.rule == RuleId::LoadMinus) picked.push_back(m);
    }
    if (picked.empty()) return out;  // stuck
    out.kind = E::Kind::Or;
    for (const pdl::Move& m : picked) out.options.emplace_back(m, rule_children(s, m.rule, m.principal));
    return out;
  }
};

inline int flatten_strategy(const std::shared_ptr<const StrategyNode<Sequent, Move>>& n, StrategyTree& t,
                            std::optional<int> parent, std::vector<int>& ancestry) {
  const int id = static_cast<int>(t.nodes.size());
  t.nodes.push_back(StrategyTreeNode{n->label, {}, parent, std::nullopt});
  if (n->kind == StrategyNode<Sequent, Move>::Kind::FreeRepeat)
    t.nodes[id].companion = ancestry[ancestry.size() - static_cast<std::size_t>(n->companion_up)];
  ancestry.push_back(id);
  for (const auto& [move, child] : n->edges) {
    int cid = flatten_strategy(child, t, id, ancestry);
    t.nodes[id].edges.emplace_back(move, cid);
  }
  ancestry.pop_back();
  return id;
}

}  // namespace detail

// Model graph of a Builder strategy: one state per distinct unloaded union
// along a pre-state.
inline PointedModel model_graph(const StrategyTree& t) {
  std::vector<int> initial{t.root};
  for (const StrategyTreeNode& n : t.nodes)
    for (const auto& [move, child] : n.edges)
      if (move.rule == RuleId::Modal) initial.push_back(child);
  std::sort(initial.begin(), initial.end());

  auto plain_local_child = [&](int i) -> std::optional<int> {
    const auto& e = t.nodes[static_cast<std::size_t>(i)].edges;
    if (e.size() == 1 && is_plain_local(e.front().first.rule)) return e.front().second;
    return std::nullopt;
  };

  std::vector<std::vector<Formula>> states;
  int point = 0;
  for (int start : initial) {
    std::set<Formula> acc;
    auto absorb = [&](int i) {
      for (const Member& m : t.nodes[static_cast<std::size_t>(i)].label) acc.insert(m.unloaded());
    };
    int cur = start;
    while (true) {
      absorb(cur);
      if (auto next = plain_local_child(cur)) {
        cur = *next;
        continue;
      }
      if (auto c = t.nodes[static_cast<std::size_t>(cur)].companion) {
        int k = *c;
        absorb(k);
        while (auto next = plain_local_child(k)) {
          k = *next;
          absorb(k);
        }
      }
      break;
    }
    std::vector<Formula> x(acc.begin(), acc.end());
    auto it = std::find(states.begin(), states.end(), x);
    const int idx = static_cast<int>(it - states.begin());
    if (it == states.end()) states.push_back(std::move(x));
    if (start == t.root) point = idx;
  }

  KripkeModel m;
  m.states = static_cast<int>(states.size());
  Vocabulary voc;
  for (const auto& x : states)
    for (const Formula& f : x) voc.add(vocabulary(f));
  for (const std::string& a : voc.progs) m.relations[a];
  for (const std::string& p : voc.props) m.valuation[p];

  auto contains = [](const std::vector<Formula>& x, const Formula& f) {
    return std::binary_search(x.begin(), x.end(), f);
  };
  for (int i = 0; i < m.states; ++i) {
    const auto& x = states[static_cast<std::size_t>(i)];
    for (const Formula& f : x) {
      if (f.is(FormulaKind::Atom)) m.valuation[f.name()].insert(i);
      if (!detail::is_atomic_dia(f)) continue;
      const std::string& a = f.sub().prog().name();
      std::vector<Formula> need{Formula::neg(f.sub().sub())};
      for (const Formula& g : x)
        if (g.is(FormulaKind::Box) && g.prog().is_atomic() && g.prog().name() == a) need.push_back(g.sub());
      for (int j = 0; j < m.states; ++j) {
        const auto& y = states[static_cast<std::size_t>(j)];
        if (std::all_of(need.begin(), need.end(), [&](const Formula& g) { return contains(y, g); }))
          m.relations[a].emplace(i, j);
      }
    }
  }
  return {m, point};
}

inline ProofResult prove(const Sequent& s, const ProverOptions& opts = {}) {
  detail::PlainPolicy policy;
  detail::SearchEngine<detail::PlainPolicy> engine(policy, opts.budget, opts.use_cache);
  auto outcome = engine.run(s);
  ProofResult r;
  r.search_nodes = engine.visited();
  if (outcome.proof) {
    r.closed = true;
    std::vector<std::pair<int, int>> comps;
    std::vector<int> ancestry;
    detail::flatten_proof<TableauNode>(outcome.proof, r.tableau.nodes, comps, std::nullopt, ancestry);
    r.tableau.companions.insert(comps.begin(), comps.end());
    return r;
  }
  std::vector<int> ancestry;
  detail::flatten_strategy(outcome.strategy, r.strategy, std::nullopt, ancestry);
  PointedModel pm = model_graph(r.strategy);
  r.model = std::move(pm.model);
  r.point = pm.point;
  if (!check_sequent(r.model, r.point, s))
    throw std::logic_error("internal error: extracted model does not satisfy " + to_string(s));
  return r;
}

// Validity of a formula: its single negation has a closed tableau.
inline ProofResult prove(const Formula& f, const ProverOptions& opts = {}) {
  return prove(Sequent{single_neg(f)}, opts);
}

inline bool is_valid(const Formula& f, const ProverOptions& opts = {}) { return prove(f, opts).closed; }
inline bool is_satisfiable(const Sequent& s, const ProverOptions& opts = {}) { return !prove(s, opts).closed; }

// Structural check of a closed tableau; returns a list of violations.
inline std::vector<std::string> check_tableau(const Tableau& t, const Sequent& root_label) {
  std::vector<std::string> errs;
  auto err = [&](int i, const std::string& what) { errs.push_back("node " + std::to_string(i) + ": " + what); };
  if (t.nodes.empty()) return {"empty tableau"};
  if (!(t[t.root].label == root_label)) err(t.root, "root label differs from the input");

  auto ancestors = [&](int i) {
    std::vector<int> out;  // nearest first
    for (auto p = t[i].parent; p; p = t[*p].parent) out.push_back(*p);
    return out;
  };

  for (int i = 0; i < static_cast<int>(t.size()); ++i) {
    const TableauNode& n = t[i];
    // Repeat classification.
    std::optional<int> comp;
    std::vector<int> anc = ancestors(i);
    for (int a : anc)
      if (t[a].label == n.label) {
        comp = a;
        break;
      }
    bool lpr = false;
    if (comp) {
      lpr = true;
      for (int k = i; k != *comp; k = *t[k].parent) lpr = lpr && t[k].label.is_loaded();
      lpr = lpr && t[*comp].label.is_loaded();
    }
    const bool free_repeat = comp && n.label.is_free();

    if (n.children.empty()) {
      if (n.move) err(i, "leaf with a rule");
      if (is_closed(n.label)) continue;
      if (!lpr) {
        err(i, "open leaf " + to_string(n.label));
        continue;
      }
      auto it = t.companions.find(i);
      if (it == t.companions.end() || it->second != *comp) err(i, "companion mismatch");
      bool modal = false;
      for (int k = i; k != *comp; k = *t[k].parent)
        if (t[*t[k].parent].move && t[*t[k].parent].move->rule == RuleId::Modal) modal = true;
      if (!modal) err(i, "loaded-path repeat without a modal step");
      continue;
    }

    if (lpr) err(i, "loaded-path repeat is not a leaf");
    if (free_repeat) err(i, "free repeat is not a leaf");
    if (!n.move) {
      err(i, "interior node without a rule");
      continue;
    }
    std::vector<Sequent> expect;
    try {
      expect = rule_children(n.label, n.move->rule, n.move->principal);
    } catch (const RuleError& e) {
      err(i, e.what());
      continue;
    }
    if (expect.size() != n.children.size()) {
      err(i, "wrong number of children");
      continue;
    }
    for (std::size_t k = 0; k < expect.size(); ++k)
      if (!(t[n.children[k]].label == expect[k])) err(i, "child " + std::to_string(k) + " does not match the rule");
    if (n.move->rule == RuleId::LoadMinus && n.parent && t[*n.parent].move &&
        t[*n.parent].move->rule == RuleId::LoadPlus)
      err(i, "unloading right after loading");
    if (is_plain_local(n.move->rule)) {
      const unsigned before = termination_measure(n.label);
      for (int c : n.children)
        if (termination_measure(t[c].label) >= before) err(i, "measure does not decrease");
    }
  }
  return errs;
}

namespace detail {
inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}
}  // namespace detail

inline std::string export_dot(const Tableau& t) {
  std::ostringstream out;
  out << "digraph tableau {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    out << "  n" << i << " [label=\"" << detail::dot_escape(to_string(t.nodes[i].label)) << "\"];\n";
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    for (int c : t.nodes[i].children)
      out << "  n" << i << " -> n" << c << " [label=\"" << rule_name(t.nodes[i].move->rule) << "\"];\n";
  for (const auto& [leaf, comp] : t.companions)
    out << "  n" << leaf << " -> n" << comp << " [style=dashed, label=\"♥\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace pdl
