#ifndef ALWB_REFUTE_HPP
#define ALWB_REFUTE_HPP

#include "alwb/formula.hpp"
#include "alwb/linear.hpp"
#include "alwb/scenario.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace alwb {

/// Refutation search over a consecution's piecewise-linear semantics.
///
/// Every formula compiles to a linear term plus weighted lattice atoms (\/ and /\ nodes;
/// in MV also -> and *, as min(1, 1 - a + b) and max(0, a + b - 1)). A designation goal
/// T >= 0 or T < 0 is rewritten by pulling one atom out,
///   T = lin + c*(X op Y) + rest = (lin + cX + rest) op' (lin + cY + rest),
/// with op' = op for c > 0 and its dual for c < 0, and then split by polarity:
/// A \/ B >= 0 and A /\ B < 0 branch, A /\ B >= 0 and A \/ B < 0 conjoin. Leaf goals are
/// linear constraints.
class Refuter {
 public:
  Refuter(const Consecution& c, Semantics sem, std::vector<Constraint> side = {}) : sem_(sem) {
    has_f_ = contains_f(c);
    for (auto v : variables(c)) universe_.insert(v);
    if (sem_ == Semantics::EllGroup && has_f_) universe_.insert(kFVar);
    if (has_f_) base_ = std::move(side);
    if (sem_ == Semantics::MvUnit) {
      for (auto v : variables(c)) {
        base_.push_back(Constraint::geq(LinearTerm::variable(v)));
        base_.push_back(Constraint::geq(LinearTerm(Rational(1)) - LinearTerm::variable(v)));
      }
    }
    const Rational threshold = sem_ == Semantics::MvUnit ? Rational(1) : Rational(0);
    for (const auto& p : c.premises) goals_.push_back(Goal{shift(expand(intern(p)), -threshold), false});
    goals_.push_back(Goal{shift(expand(intern(c.conclusion)), -threshold), true});
  }

  /// A valuation refuting the consecution, or nullopt if none exists. `budget` caps the
  /// number of feasibility checks.
  std::optional<Valuation> run(std::uint64_t budget = kDefaultScenarioBudget) {
    budget_ = budget;
    checks_ = 0;
    std::vector<Constraint> constraints;
    for (const auto& b : base_) {
      auto n = detail::normalize(b);
      if (!n) continue;
      if (n->term.is_constant()) return std::nullopt;
      constraints.push_back(*n);
    }
    return search(goals_, constraints, std::nullopt);
  }

  std::uint64_t checks() const { return checks_; }

 private:
  struct Term {
    LinearTerm lin;
    std::map<int, Rational> atoms;  // atom node -> coefficient
  };
  struct Atom {
    Kind op;  // Join or Meet
    Term left, right;
  };
  struct Goal {
    Term term;
    bool negative;  // term < 0, else term >= 0
  };

  static Term shift(Term t, const Rational& by) {
    t.lin = t.lin + LinearTerm(by);
    return t;
  }

  static void add_scaled(Term& into, const Term& t, const Rational& k) {
    into.lin = into.lin + k * t.lin;
    for (const auto& [a, c] : t.atoms) {
      Rational& slot = into.atoms[a];
      slot += k * c;
      if (slot == 0) into.atoms.erase(a);
    }
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
    if (inserted) nodes_.push_back(Node{x.kind(), var, l, r});
    return it->second;
  }

  const Term& expand(int n) {
    if (auto it = expanded_.find(n); it != expanded_.end()) return it->second;
    const Node node = nodes_[n];
    const bool mv = sem_ == Semantics::MvUnit;
    Term out;
    auto constant = [](const Rational& k) { return Term{LinearTerm(k), {}}; };
    switch (node.kind) {
      case Kind::Var: out.lin = LinearTerm::variable(node.var); break;
      case Kind::ConstT: out.lin = LinearTerm(mv ? Rational(1) : Rational(0)); break;
      case Kind::ConstF: out.lin = mv ? LinearTerm(Rational(0)) : LinearTerm::variable(kFVar); break;
      case Kind::Join:
      case Kind::Meet:
        atoms_[n] = Atom{node.kind, expand(node.left), expand(node.right)};
        out.atoms[n] = 1;
        break;
      case Kind::Impl: {
        Term diff = expand(node.right);
        add_scaled(diff, expand(node.left), Rational(-1));
        if (!mv) {
          out = diff;
          break;
        }
        atoms_[n] = Atom{Kind::Meet, constant(1), shift(diff, 1)};
        out.atoms[n] = 1;
        break;
      }
      case Kind::Fus: {
        Term sum = expand(node.left);
        add_scaled(sum, expand(node.right), Rational(1));
        if (!mv) {
          out = sum;
          break;
        }
        atoms_[n] = Atom{Kind::Join, constant(0), shift(sum, -1)};
        out.atoms[n] = 1;
        break;
      }
    }
    return expanded_[n] = std::move(out);
  }

  std::optional<Valuation> check(const std::vector<Constraint>& cs) {
    if (++checks_ > budget_) throw ScenarioBudgetExceeded(budget_);
    return fm_check(LinearSystem{cs, universe_}).witness;
  }

  // Goal with its outermost atom pulled out: whether the two halves branch, and the halves.
  std::tuple<bool, Goal, Goal> split(const Goal& g) const {
    auto [id, c] = *g.term.atoms.rbegin();
    const Atom& atom = atoms_.at(id);
    Goal a{g.term, g.negative}, b{g.term, g.negative};
    a.term.atoms.erase(id);
    b.term.atoms.erase(id);
    add_scaled(a.term, atom.left, c);
    add_scaled(b.term, atom.right, c);
    bool join = (atom.op == Kind::Join) == (c > 0);
    return {join != g.negative, std::move(a), std::move(b)};
  }

  Rational value(const Term& t, const Valuation& w, std::map<int, Rational>& memo) const {
    Rational out = t.lin.evaluate(w);
    for (const auto& [id, c] : t.atoms) {
      auto it = memo.find(id);
      if (it == memo.end()) {
        const Atom& atom = atoms_.at(id);
        Rational l = value(atom.left, w, memo), r = value(atom.right, w, memo);
        it = memo.emplace(id, atom.op == Kind::Join ? std::max(l, r) : std::min(l, r)).first;
      }
      out += c * it->second;
    }
    return out;
  }

  // Goal with its outermost atom replaced by one of its sides.
  Goal resolve(const Goal& g, int id, bool left) const {
    const Atom& atom = atoms_.at(id);
    Goal out = g;
    Rational c = out.term.atoms.at(id);
    out.term.atoms.erase(id);
    add_scaled(out.term, left ? atom.left : atom.right, c);
    return out;
  }

  // Only goals violated by the current witness are refined: a violated leaf becomes a
  // constraint, a violated conjunction is replaced by its halves, a violated disjunction
  // decides its atom for the whole branch (the chosen side is the active one, recorded as
  // a comparison goal). The search ends when the witness satisfies every goal.
  std::optional<Valuation> search(std::vector<Goal> goals, std::vector<Constraint> constraints,
                                  std::optional<Valuation> w, std::map<int, bool> decided = {}) {
    for (;;) {
      if (!w) {
        w = check(constraints);
        if (!w) return std::nullopt;
      }
      std::map<int, Rational> memo;
      auto violated = goals.end();
      std::size_t best = 0;
      for (auto it = goals.begin(); it != goals.end(); ++it) {
        Rational v = value(it->term, *w, memo);
        if (it->negative ? v >= 0 : v < 0) {
          std::size_t rank = 0;
          if (!it->term.atoms.empty())
            rank = decided.count(it->term.atoms.rbegin()->first) || !std::get<0>(split(*it)) ? 1 : 2;
          if (violated == goals.end() || rank < best) {
            violated = it;
            best = rank;
            if (rank == 0) break;
          }
        }
      }
      if (violated == goals.end()) return w;

      Goal g = std::move(*violated);
      auto pos = goals.erase(violated);
      if (g.term.atoms.empty()) {
        auto n = detail::normalize(g.negative ? Constraint::gt(-g.term.lin) : Constraint::geq(g.term.lin));
        if (n && n->term.is_constant()) return std::nullopt;
        if (n) constraints.push_back(*n);
        w.reset();
        continue;
      }
      int id = g.term.atoms.rbegin()->first;
      if (auto d = decided.find(id); d != decided.end()) {
        goals.insert(pos, resolve(g, id, d->second));
        continue;
      }
      auto [branches, a, b] = split(g);
      if (!branches) {
        pos = goals.insert(pos, std::move(b));
        goals.insert(pos, std::move(a));
        continue;
      }
      const Atom& atom = atoms_.at(id);
      Rational l = value(atom.left, *w, memo), r = value(atom.right, *w, memo);
      bool join = atom.op == Kind::Join;
      bool first = join ? l >= r : l <= r;
      for (bool left : {first, !first}) {
        Goal cmp{join == left ? atom.left : atom.right, false};
        add_scaled(cmp.term, join == left ? atom.right : atom.left, Rational(-1));
        auto next = goals;
        auto at = next.insert(next.begin() + (pos - goals.begin()), resolve(g, id, left));
        next.insert(at, std::move(cmp));
        auto nd = decided;
        nd[id] = left;
        if (auto hit = search(std::move(next), constraints, w, std::move(nd))) return hit;
      }
      return std::nullopt;
    }
  }

  struct Node {
    Kind kind;
    std::size_t var;
    int left, right;
  };

  Semantics sem_;
  bool has_f_ = false;
  std::set<VarId> universe_;
  std::vector<Constraint> base_;
  std::vector<Goal> goals_;
  std::vector<Node> nodes_;
  std::map<std::tuple<int, std::size_t, int, int>, int> index_;
  std::map<int, Term> expanded_;
  std::map<int, Atom> atoms_;
  std::uint64_t budget_ = kDefaultScenarioBudget;
  std::uint64_t checks_ = 0;
};

/// First refuting valuation found by Refuter, or nullopt when the consecution holds.
inline std::optional<Valuation> find_refutation(const Consecution& c, Semantics sem, std::vector<Constraint> side = {},
                                                std::uint64_t budget = kDefaultScenarioBudget) {
  return Refuter(c, sem, std::move(side)).run(budget);
}

}  // namespace alwb

#endif  // ALWB_REFUTE_HPP
