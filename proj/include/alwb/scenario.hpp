#ifndef ALWB_SCENARIO_HPP
#define ALWB_SCENARIO_HPP

#include "alwb/formula.hpp"
#include "alwb/linear.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace alwb {

/// l-group semantics (designated iff >= 0, f a free variable) or the standard MV-algebra
/// (designated iff = 1, variables in [0,1], f = 0).
enum class Semantics { EllGroup, MvUnit };

inline constexpr std::uint64_t kDefaultScenarioBudget = std::uint64_t{1} << 20;

class ScenarioBudgetExceeded : public std::runtime_error {
 public:
  explicit ScenarioBudgetExceeded(std::uint64_t budget)
      : std::runtime_error("scenario budget exceeded (" + std::to_string(budget) + ")") {}
};

/// One combined branch choice over every case-split node of a consecution.
struct Scenario {
  /// Branch per split node, in split order. 0 = left / untruncated, 1 = right / truncated.
  std::vector<int> choices;
  std::vector<Constraint> guards;
  /// Linear value of each premise, then the conclusion, under this scenario.
  std::vector<LinearTerm> values;
  /// guards + designation constraints + f constraints + MV bounds.
  LinearSystem system;
};

/// Piecewise-linear compilation of a consecution. Identical subformulas share one node
/// and hence one branch choice. Split nodes are ordered post-order over the premises,
/// then the conclusion.
class ScenarioSpace {
 public:
  ScenarioSpace(const Consecution& c, Semantics sem, std::vector<Constraint> f_constraints = {})
      : sem_(sem), f_constraints_(std::move(f_constraints)) {
    for (const auto& p : c.premises) roots_.push_back(intern(p));
    roots_.push_back(intern(c.conclusion));
    has_f_ = contains_f(c);
    for (auto v : variables(c)) universe_.insert(v);
    if (sem_ == Semantics::EllGroup && has_f_) universe_.insert(kFVar);
    if (!has_f_) f_constraints_.clear();

    std::vector<bool> seen(nodes_.size(), false);
    for (int r : roots_) order_splits(r, seen);
    // Constant side conditions: f constraints and MV bounds.
    base_ = f_constraints_;
    if (sem_ == Semantics::MvUnit) {
      for (auto v : variables(c)) {
        base_.push_back(Constraint::geq(LinearTerm::variable(v)));
        base_.push_back(Constraint::geq(LinearTerm(Rational(1)) - LinearTerm::variable(v)));
      }
    }
  }

  std::size_t split_count() const { return splits_.size(); }
  std::size_t formula_count() const { return roots_.size(); }
  const std::set<VarId>& universe() const { return universe_; }

  /// Every scenario, in branch-choice order (first split most significant). No pruning.
  std::vector<Scenario> expand(std::uint64_t budget = kDefaultScenarioBudget) const {
    if (splits_.size() >= 63 || (std::uint64_t{1} << splits_.size()) > budget) throw ScenarioBudgetExceeded(budget);
    std::vector<Scenario> out;
    const std::uint64_t total = std::uint64_t{1} << splits_.size();
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<int> choices(splits_.size());
      for (std::size_t i = 0; i < splits_.size(); ++i)
        choices[i] = static_cast<int>((code >> (splits_.size() - 1 - i)) & 1U);
      out.push_back(build(choices));
    }
    return out;
  }

  /// Scenario for an explicit branch choice vector.
  Scenario build(const std::vector<int>& choices) const {
    if (choices.size() != splits_.size()) throw std::invalid_argument("one choice per split node required");
    Scenario s;
    s.choices = choices;
    std::vector<std::optional<LinearTerm>> memo(nodes_.size());
    for (std::size_t i = 0; i < splits_.size(); ++i) {
      auto [guard, value] = branch(splits_[i], choices[i], memo);
      s.guards.push_back(guard);
      memo[splits_[i]] = std::move(value);
    }
    for (int r : roots_) s.values.push_back(value_of(r, memo));
    s.system.universe = universe_;
    s.system.constraints = s.guards;
    for (std::size_t i = 0; i < roots_.size(); ++i)
      s.system.constraints.push_back(designation(s.values[i], i + 1 == roots_.size()));
    s.system.constraints.insert(s.system.constraints.end(), base_.begin(), base_.end());
    return s;
  }

 private:
  struct Node {
    Kind kind;
    std::size_t var;
    int left, right;
    bool split;
  };

  bool is_split(Kind k) const {
    if (k == Kind::Join || k == Kind::Meet) return true;
    return sem_ == Semantics::MvUnit && (k == Kind::Impl || k == Kind::Fus);
  }

  int intern(const Formula& x) {
    int l = -1, r = -1;
    if (is_binary(x.kind())) {
      l = intern(x.left());
      r = intern(x.right());
    }
    std::size_t var = x.kind() == Kind::Var ? x.var_index() : 0;
    auto key = std::make_tuple(static_cast<int>(x.kind()), var, l, r);
    auto [it, inserted] = index_.emplace(key, static_cast<int>(nodes_.size()));
    if (inserted) nodes_.push_back(Node{x.kind(), var, l, r, is_split(x.kind())});
    return it->second;
  }

  void order_splits(int n, std::vector<bool>& seen) {
    if (seen[n]) return;
    seen[n] = true;
    const Node& node = nodes_[n];
    if (node.left >= 0) order_splits(node.left, seen);
    if (node.right >= 0) order_splits(node.right, seen);
    if (node.split) splits_.push_back(n);
  }

  // Value of a node whose split descendants are all decided (recorded in memo).
  LinearTerm value_of(int n, std::vector<std::optional<LinearTerm>>& memo) const {
    if (memo[n]) return *memo[n];
    const Node& node = nodes_[n];
    LinearTerm out;
    switch (node.kind) {
      case Kind::Var: out = LinearTerm::variable(node.var); break;
      case Kind::ConstT: out = LinearTerm(sem_ == Semantics::MvUnit ? Rational(1) : Rational(0)); break;
      case Kind::ConstF:
        out = sem_ == Semantics::MvUnit ? LinearTerm(Rational(0)) : LinearTerm::variable(kFVar);
        break;
      case Kind::Impl: out = value_of(node.right, memo) - value_of(node.left, memo); break;
      case Kind::Fus: out = value_of(node.left, memo) + value_of(node.right, memo); break;
      default: throw std::logic_error("undecided split node");
    }
    memo[n] = out;
    return out;
  }

  // Guard and resulting value of branch `choice` at split node n.
  std::pair<Constraint, LinearTerm> branch(int n, int choice, std::vector<std::optional<LinearTerm>>& memo) const {
    const Node& node = nodes_[n];
    LinearTerm a = value_of(node.left, memo);
    LinearTerm b = value_of(node.right, memo);
    switch (node.kind) {
      case Kind::Join:
        if (choice == 0) return {Constraint::geq(a - b), a};
        return {Constraint::geq(b - a), b};
      case Kind::Meet:
        if (choice == 0) return {Constraint::geq(b - a), a};
        return {Constraint::geq(a - b), b};
      case Kind::Impl: {  // min(1, 1 - a + b)
        LinearTerm inner = LinearTerm(Rational(1)) - a + b;
        LinearTerm slack = b - a;  // 1 - inner
        if (choice == 0) return {Constraint::geq(-slack), inner};
        return {Constraint::geq(slack), LinearTerm(Rational(1))};
      }
      case Kind::Fus: {  // max(0, a + b - 1)
        LinearTerm inner = a + b - LinearTerm(Rational(1));
        if (choice == 0) return {Constraint::geq(inner), inner};
        return {Constraint::geq(-inner), LinearTerm(Rational(0))};
      }
      default: throw std::logic_error("not a split node");
    }
  }

  Constraint designation(const LinearTerm& value, bool conclusion) const {
    if (sem_ == Semantics::EllGroup) {
      if (conclusion) return Constraint::gt(-value);
      return Constraint::geq(value);
    }
    if (conclusion) return Constraint::gt(LinearTerm(Rational(1)) - value);
    return Constraint::eq(value - LinearTerm(Rational(1)));
  }

  Semantics sem_;
  std::vector<Constraint> f_constraints_;
  std::vector<Constraint> base_;
  std::vector<Node> nodes_;
  std::map<std::tuple<int, std::size_t, int, int>, int> index_;
  std::vector<int> roots_;
  std::vector<int> splits_;
  std::set<VarId> universe_;
  bool has_f_ = false;
};

/// All scenario systems of a consecution: the consecution fails in the semantics
/// (with f restricted by `f_constraints`) iff at least one system is feasible.
inline std::vector<Scenario> scenario_expand(const Consecution& c, Semantics sem,
                                             std::vector<Constraint> f_constraints = {},
                                             std::uint64_t budget = kDefaultScenarioBudget) {
  return ScenarioSpace(c, sem, std::move(f_constraints)).expand(budget);
}

}  // namespace alwb

#endif  // ALWB_SCENARIO_HPP
