#ifndef ALWB_FORMULA_HPP
#define ALWB_FORMULA_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace alwb {

enum class Kind { Var, ConstT, ConstF, Impl, Fus, Join, Meet };

inline bool is_binary(Kind k) { return k == Kind::Impl || k == Kind::Fus || k == Kind::Join || k == Kind::Meet; }

/// Immutable formula tree over {->, *, \/, /\, t, f} and indexed variables.
/// Copies share structure.
class Formula {
 public:
  /// The constant t.
  Formula() : Formula(Kind::ConstT, 0, nullptr, nullptr) {}
  static Formula var(std::size_t index) { return Formula(Kind::Var, index, nullptr, nullptr); }
  static Formula t() { return Formula(Kind::ConstT, 0, nullptr, nullptr); }
  static Formula f() { return Formula(Kind::ConstF, 0, nullptr, nullptr); }
  static Formula impl(const Formula& a, const Formula& b) { return Formula(Kind::Impl, 0, a.node_, b.node_); }
  static Formula fus(const Formula& a, const Formula& b) { return Formula(Kind::Fus, 0, a.node_, b.node_); }
  static Formula join(const Formula& a, const Formula& b) { return Formula(Kind::Join, 0, a.node_, b.node_); }
  static Formula meet(const Formula& a, const Formula& b) { return Formula(Kind::Meet, 0, a.node_, b.node_); }
  static Formula binary(Kind k, const Formula& a, const Formula& b) { return Formula(k, 0, a.node_, b.node_); }

  Kind kind() const { return node_->kind; }
  std::size_t var_index() const { return node_->index; }
  Formula left() const { return Formula(node_->left); }
  Formula right() const { return Formula(node_->right); }

  /// Identity of the shared node; equal ids imply structural equality.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->kind != b.node_->kind || a.node_->size != b.node_->size) return false;
    switch (a.node_->kind) {
      case Kind::Var: return a.node_->index == b.node_->index;
      case Kind::ConstT:
      case Kind::ConstF: return true;
      default: return a.left() == b.left() && a.right() == b.right();
    }
  }
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

  /// Number of nodes in the tree.
  std::size_t size() const { return node_->size; }
  std::size_t depth() const { return node_->depth; }
  bool contains_f() const { return node_->has_f; }

 private:
  struct Node {
    Kind kind;
    std::size_t index;
    std::shared_ptr<const Node> left, right;
    std::size_t size;
    std::size_t depth;
    bool has_f;
  };

  Formula(Kind k, std::size_t index, std::shared_ptr<const Node> l, std::shared_ptr<const Node> r) {
    std::size_t size = 1 + (l ? l->size : 0) + (r ? r->size : 0);
    std::size_t depth = 1 + std::max(l ? l->depth : 0, r ? r->depth : 0);
    bool has_f = k == Kind::ConstF || (l && l->has_f) || (r && r->has_f);
    node_ = std::make_shared<const Node>(Node{k, index, std::move(l), std::move(r), size, depth, has_f});
  }
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

// Derived connectives, eliminated at construction time.

/// -a := a -> t
inline Formula neg(const Formula& a) { return Formula::impl(a, Formula::t()); }
/// ~a := a -> f
inline Formula lneg(const Formula& a) { return Formula::impl(a, Formula::f()); }
/// n.a: n-fold fusion, right-associated, 0.a = t.
inline Formula multiple(std::size_t n, const Formula& a) {
  if (n == 0) return Formula::t();
  Formula acc = a;
  for (std::size_t i = 1; i < n; ++i) acc = Formula::fus(a, acc);
  return acc;
}

struct Consecution {
  std::vector<Formula> premises;
  Formula conclusion;

  friend bool operator==(const Consecution& a, const Consecution& b) {
    return a.premises == b.premises && a.conclusion == b.conclusion;
  }
};

/// Variable index -> replacement. Unmapped variables stay fixed.
using Substitution = std::map<std::size_t, Formula>;

namespace detail {

inline int precedence(Kind k) {
  switch (k) {
    case Kind::Impl: return 1;
    case Kind::Join: return 2;
    case Kind::Meet: return 3;
    case Kind::Fus: return 4;
    default: return 5;
  }
}

inline const char* symbol(Kind k) {
  switch (k) {
    case Kind::Impl: return " -> ";
    case Kind::Join: return " \\/ ";
    case Kind::Meet: return " /\\ ";
    case Kind::Fus: return " * ";
    default: return "";
  }
}

inline void print_into(const Formula& x, std::string& out) {
  switch (x.kind()) {
    case Kind::Var:
      out += "p" + std::to_string(x.var_index());
      return;
    case Kind::ConstT: out += "t"; return;
    case Kind::ConstF: out += "f"; return;
    default: break;
  }
  int prec = precedence(x.kind());
  bool right_assoc = x.kind() == Kind::Impl;
  auto child = [&](const Formula& c, bool is_left) {
    int cp = precedence(c.kind());
    bool parens = right_assoc ? (is_left ? cp <= prec : cp < prec) : (is_left ? cp < prec : cp <= prec);
    if (parens) out += "(";
    print_into(c, out);
    if (parens) out += ")";
  };
  child(x.left(), true);
  out += symbol(x.kind());
  child(x.right(), false);
}

inline void collect_vars(const Formula& x, std::set<std::size_t>& out) {
  if (x.kind() == Kind::Var) {
    out.insert(x.var_index());
  } else if (is_binary(x.kind())) {
    collect_vars(x.left(), out);
    collect_vars(x.right(), out);
  }
}

inline void first_occurrence(const Formula& x, std::vector<std::size_t>& order, std::set<std::size_t>& seen) {
  if (x.kind() == Kind::Var) {
    if (seen.insert(x.var_index()).second) order.push_back(x.var_index());
  } else if (is_binary(x.kind())) {
    first_occurrence(x.left(), order, seen);
    first_occurrence(x.right(), order, seen);
  }
}

}  // namespace detail

/// Minimal-parenthesis rendering that parses back to the same tree.
inline std::string print_formula(const Formula& x) {
  std::string out;
  detail::print_into(x, out);
  return out;
}

inline std::string print_consecution(const Consecution& c) {
  std::string out;
  for (std::size_t i = 0; i < c.premises.size(); ++i) {
    if (i) out += ", ";
    out += print_formula(c.premises[i]);
  }
  out += out.empty() ? "|- " : " |- ";
  out += print_formula(c.conclusion);
  return out;
}

inline std::set<std::size_t> variables(const Formula& x) {
  std::set<std::size_t> out;
  detail::collect_vars(x, out);
  return out;
}

inline std::set<std::size_t> variables(const Consecution& c) {
  std::set<std::size_t> out;
  for (const auto& p : c.premises) detail::collect_vars(p, out);
  detail::collect_vars(c.conclusion, out);
  return out;
}

inline bool contains_f(const Consecution& c) {
  if (c.conclusion.contains_f()) return true;
  for (const auto& p : c.premises)
    if (p.contains_f()) return true;
  return false;
}

inline Formula substitute(const Formula& x, const Substitution& sigma) {
  switch (x.kind()) {
    case Kind::Var: {
      auto it = sigma.find(x.var_index());
      return it == sigma.end() ? x : it->second;
    }
    case Kind::ConstT:
    case Kind::ConstF: return x;
    default:
      return Formula::binary(x.kind(), substitute(x.left(), sigma), substitute(x.right(), sigma));
  }
}

inline Consecution substitute(const Consecution& c, const Substitution& sigma) {
  Consecution out{{}, substitute(c.conclusion, sigma)};
  out.premises.reserve(c.premises.size());
  for (const auto& p : c.premises) out.premises.push_back(substitute(p, sigma));
  return out;
}

/// rho after sigma: applies rho to every image of sigma and keeps rho's own bindings
/// for variables sigma leaves fixed.
inline Substitution compose(const Substitution& rho, const Substitution& sigma) {
  Substitution out;
  for (const auto& [v, img] : sigma) out.emplace(v, substitute(img, rho));
  for (const auto& [v, img] : rho) out.emplace(v, img);
  return out;
}

/// (G |- phi) with side psi becomes G \/ psi |- phi \/ psi.
inline Consecution vee_form(const Consecution& c, const Formula& side) {
  Consecution out{{}, Formula::join(c.conclusion, side)};
  out.premises.reserve(c.premises.size());
  for (const auto& p : c.premises) out.premises.push_back(Formula::join(p, side));
  return out;
}

/// Renames variables to 0..k-1 in order of first occurrence (premises, then conclusion).
inline Consecution normalize_variables(const Consecution& c) {
  std::vector<std::size_t> order;
  std::set<std::size_t> seen;
  for (const auto& p : c.premises) detail::first_occurrence(p, order, seen);
  detail::first_occurrence(c.conclusion, order, seen);
  Substitution rename;
  for (std::size_t i = 0; i < order.size(); ++i) rename.emplace(order[i], Formula::var(i));
  return substitute(c, rename);
}

/// Smallest index not used by the consecution.
inline std::size_t fresh_variable(const Consecution& c) {
  auto vars = variables(c);
  return vars.empty() ? 0 : *vars.rbegin() + 1;
}

}  // namespace alwb

#endif  // ALWB_FORMULA_HPP
