#pragma once

// Craig interpolants from closed uniform split tableaux.
//
// Singleton clusters are handled bottom-up by the leaf and local cases.  A
// proper cluster is reduced to a quasi-tableau over its loaded components;
// its pre-interpolants use internal variables `_q<k>` that are eliminated
// at companions by a star-box fixpoint.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "parser.hpp"
#include "prover.hpp"
#include "split.hpp"
#include "syntax.hpp"

namespace pdl {

class UniformityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class GrammarViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Thrown when the implication to interpolate is not valid.
class NotValid : public std::runtime_error {
 public:
  NotValid(const std::string& what, KripkeModel m, int point)
      : std::runtime_error(what), model(std::move(m)), point(point) {}
  KripkeModel model;
  int point;
};

// ---------------------------------------------------------------------------
// clusters

struct Cluster {
  int root = 0;
  std::vector<int> members;  // ascending
  std::vector<int> exits;    // ascending
  bool proper = false;

  bool contains(int n) const { return std::binary_search(members.begin(), members.end(), n); }
};

struct ClusterInfo {
  std::vector<int> cluster_of;  // node -> index into groups
  std::vector<Cluster> groups;  // ordered by root

  std::size_t proper_count() const {
    return static_cast<std::size_t>(std::count_if(groups.begin(), groups.end(), [](const Cluster& c) { return c.proper; }));
  }
};

inline ClusterInfo clusters(const SplitTableau& t) {
  const int n = static_cast<int>(t.size());
  std::vector<int> uf(static_cast<std::size_t>(n));
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
  // Every node on the tree path from a companion to its repeat lies on a cycle.
  for (auto [leaf, comp] : t.companions)
    for (int k = leaf; k != comp; k = *t[k].parent) uf[find(k)] = find(*t[k].parent);

  ClusterInfo info;
  info.cluster_of.assign(static_cast<std::size_t>(n), -1);
  std::map<int, int> id_of_rep;
  for (int i = 0; i < n; ++i) {
    auto [it, fresh] = id_of_rep.emplace(find(i), static_cast<int>(info.groups.size()));
    if (fresh) info.groups.push_back(Cluster{i, {}, {}, false});
    info.cluster_of[i] = it->second;
    info.groups[it->second].members.push_back(i);
  }
  for (Cluster& c : info.groups) {
    c.proper = c.members.size() > 1 || t.companions.count(c.root);
    for (int m : c.members)
      for (int ch : t[m].children)
        if (!c.contains(ch)) c.exits.push_back(ch);
    std::sort(c.exits.begin(), c.exits.end());
  }
  return info;
}

// ---------------------------------------------------------------------------
// singleton cases

inline Formula leaf_interpolant(const SplitSequent& g) {
  if (is_closed(g.left())) return Formula::bottom();
  if (is_closed(g.right())) return Formula::top();
  for (const Member& m : g.left())
    if (g.right().contains_unloaded(Formula::neg(m.unloaded()))) return m.unloaded();
  for (const Member& m : g.left()) {
    const Formula& f = m.unloaded();
    if (f.is(FormulaKind::Neg) && g.right().contains_unloaded(f.sub())) return f;
  }
  throw std::invalid_argument("leaf_interpolant: not a closed split sequent: " + to_string(g));
}

inline Formula local_interpolant_step(const SplitTableau& t, int node, const std::vector<Formula>& child_itps) {
  const SplitTableauNode& n = t[node];
  if (!n.move) throw std::invalid_argument("local_interpolant_step: node has no rule");
  const SplitMove& m = *n.move;
  if (m.rule == RuleId::Modal) {
    const std::string& a = m.principal.loaded_formula().prefix.front().name();
    const SplitSequent& child = t[n.children.front()].label;
    if (m.side == Side::Left) {
      if (child.right().empty()) return Formula::bottom();
      return Formula::neg(Formula::box(Program::atomic(a), Formula::neg(child_itps.front())));
    }
    if (child.left().empty()) return Formula::top();
    return Formula::box(Program::atomic(a), child_itps.front());
  }
  return m.side == Side::Left ? disjunction(child_itps) : conjunction(child_itps);
}

// ---------------------------------------------------------------------------
// proper clusters

// A proper cluster seen from its loaded side.  When the left component is
// loaded the roles are swapped and exit interpolants are negated.
struct ClusterView {
  const SplitTableau& tableau;
  const Cluster& cluster;
  Side loaded;
  const std::map<int, Formula>& exit_itps;

  const Sequent& loaded_comp(int n) const { return tableau[n].label.side(loaded); }
  const Sequent& free_comp(int n) const { return tableau[n].label.side(other(loaded)); }
  Formula exit_theta(int e) const {
    const Formula& f = exit_itps.at(e);
    return loaded == Side::Left ? Formula::neg(f) : f;
  }
  bool in_region(const Sequent& d) const {
    for (int m : cluster.members)
      if (loaded_comp(m) == d) return true;
    return false;
  }
};

// Disjunction of the exit interpolants whose loaded-side component is d.
inline Formula theta_region(const ClusterView& v, const Sequent& d) {
  std::vector<Formula> parts;
  for (int e : v.cluster.exits) {
    if (!(v.loaded_comp(e) == d)) continue;
    Formula th = v.exit_theta(e);
    if (std::find(parts.begin(), parts.end(), th) == parts.end()) parts.push_back(th);
  }
  return disjunction(parts);
}

struct QNode {
  int type = 1;  // 1, 2 or 3
  Sequent label;
  std::vector<int> children;
  std::optional<int> parent;
  std::optional<int> companion;  // set on repeats
  bool exit = false;             // type-1 leaf whose label lies outside the cluster
};

struct QuasiTableau {
  std::vector<QNode> nodes;
  int root = 0;
  std::map<int, int> companions;  // repeat -> companion
  std::map<int, int> q_index;     // companion -> k in `_q<k>`

  std::size_t size() const { return nodes.size(); }
  const QNode& operator[](int i) const { return nodes[static_cast<std::size_t>(i)]; }
  bool is_companion(int i) const { return q_index.count(i) > 0; }
  std::string q_name(int companion) const { return "_q" + std::to_string(q_index.at(companion)); }
};

namespace detail {

class QBuilder {
 public:
  QBuilder(const ClusterView& v, QuasiTableau& q) : v_(v), q_(q) {}

  int build(int type, const Sequent& label, std::optional<int> parent) {
    const int id = static_cast<int>(q_.nodes.size());
    q_.nodes.push_back(QNode{type, label, {}, parent, std::nullopt, false});
    if (type == 1) {
      for (auto p = parent; p; p = q_.nodes[*p].parent)
        if (q_.nodes[*p].type == 1 && q_.nodes[*p].label == label) {
          q_.nodes[id].companion = *p;
          q_.companions[id] = *p;
          return id;
        }
      if (!v_.in_region(label)) {
        q_.nodes[id].exit = true;
        return id;
      }
      attach(id, build(2, label, id));
    } else if (type == 2) {
      attach(id, build(3, label, id));
    } else if (!label.is_basic()) {
      auto [rule, principal] = uniform_rule(label);
      for (const Sequent& c : rule_children(label, rule, principal)) attach(id, build(1, c, id));
    } else {
      if (!label.is_loaded()) throw UniformityViolation("basic free label inside a cluster");
      attach(id, build(1, rule_children(label, RuleId::Modal, label.loaded_member()).front(), id));
    }
    return id;
  }

 private:
  const ClusterView& v_;
  QuasiTableau& q_;

  void attach(int parent, int child) { q_.nodes[static_cast<std::size_t>(parent)].children.push_back(child); }

  std::pair<RuleId, Member> uniform_rule(const Sequent& d) const {
    std::optional<std::pair<RuleId, Member>> found;
    for (int m : v_.cluster.members) {
      const SplitTableauNode& n = v_.tableau[m];
      if (!n.move || n.move->side != v_.loaded || !(v_.loaded_comp(m) == d)) continue;
      if (!found) found.emplace(n.move->rule, n.move->principal);
      else if (found->first != n.move->rule || !(found->second == n.move->principal))
        throw UniformityViolation("different rules applied to the loaded component " + to_string(d));
    }
    if (!found) throw UniformityViolation("no loaded-side rule for " + to_string(d));
    return *found;
  }
};

}  // namespace detail

inline QuasiTableau quasi_tableau(const ClusterView& v) {
  QuasiTableau q;
  detail::QBuilder b(v, q);
  q.root = b.build(1, v.loaded_comp(v.cluster.root), std::nullopt);
  int k = 0;
  for (int i = 0; i < static_cast<int>(q.size()); ++i)
    for (const auto& [rep, comp] : q.companions)
      if (comp == i) {
        q.q_index[i] = k++;
        break;
      }
  return q;
}

// ---------------------------------------------------------------------------
// normal forms of pre-interpolants

inline bool is_internal_var(const Formula& f) {
  return f.is(FormulaKind::Atom) && f.name().rfind("_q", 0) == 0;
}

inline bool mentions_internal(const Vocabulary& v) {
  return std::any_of(v.props.begin(), v.props.end(), [](const std::string& p) { return p.rfind("_q", 0) == 0; });
}

// A box chain over either a q-free formula or a single internal variable.
struct SimpleFormula {
  ProgramList chain;
  Formula base;
};

inline Formula render(const SimpleFormula& s) {
  if (s.chain.empty()) return is_internal_var(s.base) ? Formula::box(Program::test(Formula::top()), s.base) : s.base;
  return Formula::box(sequence(s.chain), s.base);
}

inline std::vector<SimpleFormula> spl(const Formula& f) {
  if (is_internal_var(f) || !mentions_internal(vocabulary(f))) return {SimpleFormula{{}, f}};
  if (f.is(FormulaKind::And)) {
    auto out = spl(f.left());
    auto r = spl(f.right());
    out.insert(out.end(), r.begin(), r.end());
    return out;
  }
  if (f.is(FormulaKind::Box)) {
    if (mentions_internal(vocabulary(f.prog()))) throw GrammarViolation("internal variable inside a program");
    auto out = spl(f.sub());
    for (SimpleFormula& s : out) s.chain.insert(s.chain.begin(), f.prog());
    return out;
  }
  throw GrammarViolation("internal variable under a negation: " + to_string(f));
}

inline Formula normal_form(const Formula& f) {
  std::vector<Formula> parts;
  for (const SimpleFormula& s : spl(f)) parts.push_back(render(s));
  return conjunction(parts);
}

// ---------------------------------------------------------------------------
// pre-interpolants

namespace detail {

inline Vocabulary sequent_vocabulary(const SplitSequent& g) {
  Vocabulary v;
  for (const Member& m : g.merged()) add_vocab(m.unloaded(), v);
  return v;
}

// [(u alpha_i)*]rest, where the alpha_i come from the chains ending in q.
inline Formula solve_companion(const Formula& body, const std::string& q) {
  std::vector<Program> alphas;
  std::vector<Formula> rest;
  for (SimpleFormula& s : spl(body)) {
    if (is_internal_var(s.base) && s.base.name() == q) {
      Program a = s.chain.empty() ? Program::test(Formula::top()) : sequence(s.chain);
      if (mentions_internal(vocabulary(a))) throw GrammarViolation("internal variable inside a program");
      alphas.push_back(std::move(a));
    } else {
      rest.push_back(render(s));
    }
  }
  Formula remainder = conjunction(canonical(std::move(rest)));
  if (alphas.empty()) return remainder;
  return Formula::box(Program::star(choice(canonical(std::move(alphas)))), remainder);
}

}  // namespace detail

inline std::vector<Formula> pre_interpolants(const QuasiTableau& q, const ClusterView& v) {
  std::vector<std::optional<Formula>> iota(q.size());
  Vocabulary shared;
  {
    const SplitSequent& root = v.tableau[v.cluster.root].label;
    shared = intersect(vocabulary(conjunction(root.left().unloaded_formulas())),
                       vocabulary(conjunction(root.right().unloaded_formulas())));
  }
  std::function<void(int)> solve = [&](int x) {
    for (int c : q[x].children) solve(c);
    const QNode& n = q[x];
    Formula out = Formula::bottom();
    if (n.type == 1 && n.companion) {
      out = Formula::atom(q.q_name(*n.companion));
    } else if (n.type == 1 && n.exit) {
      out = theta_region(v, n.label);
    } else if (n.type == 2) {
      out = Formula::box(Program::test(Formula::neg(theta_region(v, n.label))), *iota[n.children.front()]);
    } else if (n.type == 3 && !n.label.is_basic()) {
      std::vector<Formula> parts;
      for (int c : n.children) parts.push_back(*iota[c]);
      out = conjunction(parts);
    } else if (n.type == 3) {
      const std::string& a = n.label.loaded_member().loaded_formula().prefix.front().name();
      out = Formula::box(Program::atomic(a), *iota[n.children.front()]);
    } else if (q.is_companion(x)) {
      out = detail::solve_companion(*iota[n.children.front()], q.q_name(x));
    } else {
      out = *iota[n.children.front()];
    }
    Vocabulary voc = vocabulary(out);
    Vocabulary plain;
    plain.progs = voc.progs;
    for (const std::string& p : voc.props)
      if (p.rfind("_q", 0) != 0) plain.props.insert(p);
    if (!plain.subset_of(shared)) throw std::logic_error("pre-interpolant leaves the shared vocabulary");
    iota[x] = std::move(out);
  };
  solve(q.root);
  std::vector<Formula> res;
  for (auto& f : iota) res.push_back(*f);
  if (mentions_internal(vocabulary(res[q.root]))) throw std::logic_error("root pre-interpolant mentions an internal variable");
  return res;
}

inline Formula cluster_interpolant(const SplitTableau& t, const Cluster& c, const std::map<int, Formula>& exit_itps) {
  const SplitSequent& root = t[c.root].label;
  auto ls = root.loaded_side();
  if (!ls) throw std::invalid_argument("cluster_interpolant: the cluster root is not loaded");
  ClusterView v{t, c, *ls, exit_itps};
  Formula res = Formula::top();
  if (!v.free_comp(c.root).empty()) {
    QuasiTableau q = quasi_tableau(v);
    res = pre_interpolants(q, v)[static_cast<std::size_t>(q.root)];
  }
  return *ls == Side::Left ? Formula::neg(res) : res;
}

// ---------------------------------------------------------------------------
// whole tableaux

struct InterpolationStats {
  std::size_t tableau_nodes = 0;
  std::size_t clusters = 0;
  std::size_t proper_clusters = 0;
};

inline Formula interpolant_of_tableau(const SplitTableau& t, const ClusterInfo& info) {
  std::map<int, Formula> memo;
  std::function<Formula(int)> solve = [&](int n) -> Formula {
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    const Cluster& c = info.groups[static_cast<std::size_t>(info.cluster_of[n])];
    Formula out = Formula::bottom();
    if (!c.proper) {
      if (t[n].children.empty()) {
        out = leaf_interpolant(t[n].label);
      } else {
        std::vector<Formula> kids;
        for (int ch : t[n].children) kids.push_back(solve(ch));
        out = local_interpolant_step(t, n, kids);
      }
    } else {
      if (c.root != n) throw std::logic_error("entered a proper cluster below its root");
      std::map<int, Formula> exits;
      for (int e : c.exits) exits.emplace(e, solve(e));
      out = cluster_interpolant(t, c, exits);
    }
    memo.emplace(n, out);
    return out;
  };
  return solve(t.root);
}

inline Formula interpolant_of_tableau(const SplitTableau& t) { return interpolant_of_tableau(t, clusters(t)); }

struct InterpolationResult {
  Formula interpolant;
  SplitTableau tableau;
  InterpolationStats stats;
};

inline InterpolationResult interpolate_detailed(const Formula& f, const Formula& g, const ProverOptions& opts = {}) {
  SplitSequent root(Sequent({Member(f)}), Sequent({Member(Formula::neg(g))}));
  SplitProofResult pr = prove_split(root, opts);
  if (!pr.closed) throw NotValid("the implication is not valid", std::move(pr.model), pr.point);
  ClusterInfo info = clusters(pr.tableau);
  InterpolationResult r{interpolant_of_tableau(pr.tableau, info), std::move(pr.tableau), {}};
  r.stats = {r.tableau.size(), info.groups.size(), info.proper_count()};
  return r;
}

inline Formula interpolate(const Formula& f, const Formula& g, const ProverOptions& opts = {}) {
  return interpolate_detailed(f, g, opts).interpolant;
}

struct InterpolantReport {
  bool voc_ok = false;
  bool left_ok = false;
  bool right_ok = false;
  bool ok() const { return voc_ok && left_ok && right_ok; }
};

inline InterpolantReport verify_interpolant(const Formula& f, const Formula& g, const Formula& th,
                                            const ProverOptions& opts = {}) {
  InterpolantReport r;
  r.voc_ok = vocabulary(th).subset_of(intersect(vocabulary(f), vocabulary(g)));
  r.left_ok = prove(Sequent({Member(f), Member(Formula::neg(th))}), opts).closed;
  r.right_ok = prove(Sequent({Member(th), Member(Formula::neg(g))}), opts).closed;
  return r;
}

// ---------------------------------------------------------------------------
// simplification

namespace detail {

inline bool is_top_test(const Program& p) { return p.is(ProgramKind::Test) && p.cond() == Formula::top(); }

inline Program simplify_once(const Program& p);

inline Formula simplify_once(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Bottom:
    case FormulaKind::Atom:
      return f;
    case FormulaKind::Neg: {
      Formula s = simplify_once(f.sub());
      if (s.is(FormulaKind::Neg)) return s.sub();
      return Formula::neg(s);
    }
    case FormulaKind::And: {
      Formula l = simplify_once(f.left());
      Formula r = simplify_once(f.right());
      if (l == Formula::top()) return r;
      if (r == Formula::top()) return l;
      return Formula::conj(l, r);
    }
    case FormulaKind::Box: {
      Program p = simplify_once(f.prog());
      Formula s = simplify_once(f.sub());
      if (is_top_test(p)) return s;
      return Formula::box(p, s);
    }
  }
  return f;
}

inline Program simplify_once(const Program& p) {
  switch (p.kind()) {
    case ProgramKind::Atomic:
      return p;
    case ProgramKind::Test:
      return Program::test(simplify_once(p.cond()));
    case ProgramKind::Union:
      return Program::choice(simplify_once(p.left()), simplify_once(p.right()));
    case ProgramKind::Comp: {
      Program l = simplify_once(p.left());
      Program r = simplify_once(p.right());
      if (is_top_test(l)) return r;
      if (is_top_test(r)) return l;
      return Program::seq(l, r);
    }
    case ProgramKind::Star:
      return Program::star(simplify_once(p.sub()));
  }
  return p;
}

}  // namespace detail

inline Formula simplify(const Formula& th) {
  Formula cur = th;
  for (;;) {
    Formula next = detail::simplify_once(cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

// ---------------------------------------------------------------------------
// Beth definability

class NotImplicitDefinition : public std::runtime_error {
 public:
  NotImplicitDefinition(const std::string& what, KripkeModel m, int point)
      : std::runtime_error(what), model(std::move(m)), point(point) {}
  KripkeModel model;
  int point;
};

inline Formula beth(const Formula& f, const std::string& p, const ProverOptions& opts = {}) {
  Vocabulary voc = vocabulary(f);
  if (!voc.props.count(p)) throw std::invalid_argument("beth: " + p + " does not occur in the formula");
  auto fresh = [&](std::string base) {
    std::string name = base;
    for (int i = 0; voc.props.count(name); ++i) name = base + "_" + std::to_string(i);
    voc.props.insert(name);
    return name;
  };
  const std::string p0 = fresh(p + "0");
  const std::string p1 = fresh(p + "1");
  Formula a0 = Formula::atom(p0);
  Formula a1 = Formula::atom(p1);
  Formula lhs = Formula::conj(substitute({{p, a0}}, f), a0);
  Formula rhs = make_implies(substitute({{p, a1}}, f), a1);
  try {
    return interpolate(lhs, rhs, opts);
  } catch (const NotValid& e) {
    throw NotImplicitDefinition(p + " is not implicitly defined", e.model, e.point);
  }
}

}  // namespace pdl
