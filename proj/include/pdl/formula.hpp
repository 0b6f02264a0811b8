#pragma once

// Formula and program ASTs.  Nodes are immutable and shared; every node
// caches a structural hash and its size so equality tests are cheap.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdl {

enum class FormulaKind : std::uint8_t { Bottom, Atom, And, Box, Neg };
enum class ProgramKind : std::uint8_t { Atomic, Test, Union, Comp, Star };

class Formula;
class Program;

namespace detail {
struct FormulaNode;
struct ProgramNode;
}  // namespace detail

class Formula {
 public:
  Formula();  // bottom

  static Formula bottom();
  static Formula top();  // ~bot
  static Formula atom(std::string name);
  static Formula neg(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula box(Program p, Formula f);

  FormulaKind kind() const;
  bool is(FormulaKind k) const { return kind() == k; }
  const std::string& name() const;   // Atom
  const Formula& sub() const;        // Neg, Box
  const Formula& left() const;       // And
  const Formula& right() const;      // And
  const Program& prog() const;       // Box
  std::size_t hash() const;
  std::uint32_t size() const;

  const detail::FormulaNode* raw() const { return node_.get(); }

 private:
  friend class Program;
  explicit Formula(std::shared_ptr<const detail::FormulaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::FormulaNode> node_;
};

class Program {
 public:
  Program();  // atomic program "a"

  static Program atomic(std::string name);
  static Program test(Formula f);
  static Program choice(Program l, Program r);
  static Program seq(Program l, Program r);
  static Program star(Program p);

  ProgramKind kind() const;
  bool is(ProgramKind k) const { return kind() == k; }
  bool is_atomic() const { return kind() == ProgramKind::Atomic; }
  const std::string& name() const;  // Atomic
  const Formula& cond() const;      // Test
  const Program& left() const;      // Union, Comp
  const Program& right() const;     // Union, Comp
  const Program& sub() const;       // Star
  std::size_t hash() const;
  std::uint32_t size() const;

  const detail::ProgramNode* raw() const { return node_.get(); }

 private:
  friend class Formula;
  explicit Program(std::shared_ptr<const detail::ProgramNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::ProgramNode> node_;
};

namespace detail {

struct FormulaNode {
  FormulaKind kind;
  std::string name;
  Formula a;
  Formula b;
  Program prog;
  std::size_t hash;
  std::uint32_t size;
};

struct ProgramNode {
  ProgramKind kind;
  std::string name;
  Formula cond;
  Program a;
  Program b;
  std::size_t hash;
  std::uint32_t size;
};

inline std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// construction

inline Formula Formula::bottom() {
  static const auto node = std::make_shared<const detail::FormulaNode>(detail::FormulaNode{
      FormulaKind::Bottom, {}, Formula(nullptr), Formula(nullptr), Program(nullptr), 0x51ed27u, 1});
  return Formula(node);
}

inline Formula::Formula() : Formula(bottom()) {}

inline Formula Formula::top() { return neg(bottom()); }

inline Formula Formula::atom(std::string name) {
  std::size_t h = detail::mix(0xa70bu, std::hash<std::string>{}(name));
  return Formula(std::make_shared<const detail::FormulaNode>(detail::FormulaNode{
      FormulaKind::Atom, std::move(name), Formula(nullptr), Formula(nullptr), Program(nullptr), h, 1}));
}

inline Formula Formula::neg(Formula f) {
  std::size_t h = detail::mix(0x4e6u, f.hash());
  std::uint32_t s = f.size() + 1;
  return Formula(std::make_shared<const detail::FormulaNode>(detail::FormulaNode{
      FormulaKind::Neg, {}, std::move(f), Formula(nullptr), Program(nullptr), h, s}));
}

inline Formula Formula::conj(Formula l, Formula r) {
  std::size_t h = detail::mix(detail::mix(0xa7du, l.hash()), r.hash());
  std::uint32_t s = l.size() + r.size() + 1;
  return Formula(std::make_shared<const detail::FormulaNode>(detail::FormulaNode{
      FormulaKind::And, {}, std::move(l), std::move(r), Program(nullptr), h, s}));
}

inline Formula Formula::box(Program p, Formula f) {
  std::size_t h = detail::mix(detail::mix(0xb0fu, p.hash()), f.hash());
  std::uint32_t s = p.size() + f.size() + 1;
  return Formula(std::make_shared<const detail::FormulaNode>(detail::FormulaNode{
      FormulaKind::Box, {}, std::move(f), Formula(nullptr), std::move(p), h, s}));
}

inline FormulaKind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::name() const { return node_->name; }
inline const Formula& Formula::sub() const { return node_->a; }
inline const Formula& Formula::left() const { return node_->a; }
inline const Formula& Formula::right() const { return node_->b; }
inline const Program& Formula::prog() const { return node_->prog; }
inline std::size_t Formula::hash() const { return node_->hash; }
inline std::uint32_t Formula::size() const { return node_->size; }

inline Program Program::atomic(std::string name) {
  std::size_t h = detail::mix(0xa7u, std::hash<std::string>{}(name));
  return Program(std::make_shared<const detail::ProgramNode>(detail::ProgramNode{
      ProgramKind::Atomic, std::move(name), Formula(nullptr), Program(nullptr), Program(nullptr), h, 1}));
}

inline Program::Program() : Program(atomic("a")) {}

inline Program Program::test(Formula f) {
  std::size_t h = detail::mix(0x7e57u, f.hash());
  std::uint32_t s = f.size() + 1;
  return Program(std::make_shared<const detail::ProgramNode>(detail::ProgramNode{
      ProgramKind::Test, {}, std::move(f), Program(nullptr), Program(nullptr), h, s}));
}

inline Program Program::choice(Program l, Program r) {
  std::size_t h = detail::mix(detail::mix(0xc01u, l.hash()), r.hash());
  std::uint32_t s = l.size() + r.size() + 1;
  return Program(std::make_shared<const detail::ProgramNode>(detail::ProgramNode{
      ProgramKind::Union, {}, Formula(nullptr), std::move(l), std::move(r), h, s}));
}

inline Program Program::seq(Program l, Program r) {
  std::size_t h = detail::mix(detail::mix(0x5e9u, l.hash()), r.hash());
  std::uint32_t s = l.size() + r.size() + 1;
  return Program(std::make_shared<const detail::ProgramNode>(detail::ProgramNode{
      ProgramKind::Comp, {}, Formula(nullptr), std::move(l), std::move(r), h, s}));
}

inline Program Program::star(Program p) {
  std::size_t h = detail::mix(0x57a4u, p.hash());
  std::uint32_t s = p.size() + 1;
  return Program(std::make_shared<const detail::ProgramNode>(detail::ProgramNode{
      ProgramKind::Star, {}, Formula(nullptr), std::move(p), Program(nullptr), h, s}));
}

inline ProgramKind Program::kind() const { return node_->kind; }
inline const std::string& Program::name() const { return node_->name; }
inline const Formula& Program::cond() const { return node_->cond; }
inline const Program& Program::left() const { return node_->a; }
inline const Program& Program::right() const { return node_->b; }
inline const Program& Program::sub() const { return node_->a; }
inline std::size_t Program::hash() const { return node_->hash; }
inline std::uint32_t Program::size() const { return node_->size; }

// ---------------------------------------------------------------------------
// canonical order: kind rank first, then children left to right

int compare(const Formula& x, const Formula& y);
int compare(const Program& x, const Program& y);

inline int compare(const Formula& x, const Formula& y) {
  if (x.raw() == y.raw()) return 0;
  if (x.kind() != y.kind()) return x.kind() < y.kind() ? -1 : 1;
  switch (x.kind()) {
    case FormulaKind::Bottom:
      return 0;
    case FormulaKind::Atom:
      return x.name().compare(y.name()) < 0 ? -1 : (x.name() == y.name() ? 0 : 1);
    case FormulaKind::Neg:
      return compare(x.sub(), y.sub());
    case FormulaKind::And: {
      int c = compare(x.left(), y.left());
      return c != 0 ? c : compare(x.right(), y.right());
    }
    case FormulaKind::Box: {
      int c = compare(x.prog(), y.prog());
      return c != 0 ? c : compare(x.sub(), y.sub());
    }
  }
  return 0;
}

inline int compare(const Program& x, const Program& y) {
  if (x.raw() == y.raw()) return 0;
  if (x.kind() != y.kind()) return x.kind() < y.kind() ? -1 : 1;
  switch (x.kind()) {
    case ProgramKind::Atomic:
      return x.name().compare(y.name()) < 0 ? -1 : (x.name() == y.name() ? 0 : 1);
    case ProgramKind::Test:
      return compare(x.cond(), y.cond());
    case ProgramKind::Star:
      return compare(x.sub(), y.sub());
    case ProgramKind::Union:
    case ProgramKind::Comp: {
      int c = compare(x.left(), y.left());
      return c != 0 ? c : compare(x.right(), y.right());
    }
  }
  return 0;
}

inline bool operator==(const Formula& x, const Formula& y) {
  return x.raw() == y.raw() || (x.hash() == y.hash() && x.size() == y.size() && compare(x, y) == 0);
}
inline bool operator==(const Program& x, const Program& y) {
  return x.raw() == y.raw() || (x.hash() == y.hash() && x.size() == y.size() && compare(x, y) == 0);
}
inline bool operator<(const Formula& x, const Formula& y) { return compare(x, y) < 0; }
inline bool operator<(const Program& x, const Program& y) { return compare(x, y) < 0; }

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};
struct ProgramHash {
  std::size_t operator()(const Program& p) const { return p.hash(); }
};

// A program list; the empty list plays the role of the empty word.
using ProgramList = std::vector<Program>;

inline int compare(const ProgramList& x, const ProgramList& y) {
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
    if (int c = compare(x[i], y[i]); c != 0) return c;
  if (x.size() == y.size()) return 0;
  return x.size() < y.size() ? -1 : 1;
}

// ---------------------------------------------------------------------------
// printing (primitives only; the output parses back to the same tree)

namespace detail {

inline void print_formula(std::string& out, const Formula& f, bool tight);

inline void print_program(std::string& out, const Program& p);

inline void print_wrapped(std::string& out, const Program& p, bool paren) {
  if (paren) out += "(";
  print_program(out, p);
  if (paren) out += ")";
}

// ';' and 'u' associate to the right; '*' binds tightest.
inline void print_program(std::string& out, const Program& p) {
  switch (p.kind()) {
    case ProgramKind::Atomic:
      out += p.name();
      return;
    case ProgramKind::Test:
      out += "?(";
      print_formula(out, p.cond(), false);
      out += ")";
      return;
    case ProgramKind::Star:
      print_wrapped(out, p.sub(), !p.sub().is_atomic() && !p.sub().is(ProgramKind::Test));
      out += "*";
      return;
    case ProgramKind::Comp:
      print_wrapped(out, p.left(), p.left().is(ProgramKind::Comp) || p.left().is(ProgramKind::Union));
      out += " ; ";
      print_wrapped(out, p.right(), p.right().is(ProgramKind::Union));
      return;
    case ProgramKind::Union:
      print_wrapped(out, p.left(), p.left().is(ProgramKind::Union));
      out += " u ";
      print_program(out, p.right());
      return;
  }
}

inline void print_formula(std::string& out, const Formula& f, bool tight) {
  switch (f.kind()) {
    case FormulaKind::Bottom:
      out += "bot";
      return;
    case FormulaKind::Atom:
      out += f.name();
      return;
    case FormulaKind::Neg:
      out += "~";
      print_formula(out, f.sub(), true);
      return;
    case FormulaKind::Box:
      out += "[";
      print_program(out, f.prog());
      out += "]";
      print_formula(out, f.sub(), true);
      return;
    case FormulaKind::And: {
      if (tight) out += "(";
      print_formula(out, f.left(), f.left().kind() == FormulaKind::And);
      out += " & ";
      print_formula(out, f.right(), false);
      if (tight) out += ")";
      return;
    }
  }
}

}  // namespace detail

inline std::string to_string(const Formula& f) {
  std::string s;
  detail::print_formula(s, f, false);
  return s;
}

inline std::string to_string(const Program& p) {
  std::string s;
  detail::print_program(s, p);
  return s;
}

}  // namespace pdl

template <>
struct std::hash<pdl::Formula> {
  std::size_t operator()(const pdl::Formula& f) const { return f.hash(); }
};
template <>
struct std::hash<pdl::Program> {
  std::size_t operator()(const pdl::Program& p) const { return p.hash(); }
};
