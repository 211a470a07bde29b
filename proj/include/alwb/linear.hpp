#ifndef ALWB_LINEAR_HPP
#define ALWB_LINEAR_HPP

#include "alwb/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace alwb {

using VarId = std::size_t;

/// Reserved variable standing for the interpretation of f.
inline constexpr VarId kFVar = std::numeric_limits<VarId>::max();

inline std::string var_name(VarId v) { return v == kFVar ? "f" : "p" + std::to_string(v); }

/// sum(coeff_v * v) + constant, zero coefficients never stored.
class LinearTerm {
 public:
  LinearTerm() = default;
  explicit LinearTerm(Rational constant) : constant_(std::move(constant)) {}

  static LinearTerm variable(VarId v, const Rational& coeff = Rational(1)) {
    LinearTerm t;
    if (coeff != 0) t.coeffs_.emplace(v, coeff);
    return t;
  }

  const std::map<VarId, Rational>& coefficients() const { return coeffs_; }
  const Rational& constant() const { return constant_; }
  Rational coefficient(VarId v) const {
    auto it = coeffs_.find(v);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }
  Rational f_coefficient() const { return coefficient(kFVar); }
  bool is_constant() const { return coeffs_.empty(); }

  LinearTerm& operator+=(const LinearTerm& o) {
    for (const auto& [v, c] : o.coeffs_) add_coeff(v, c);
    constant_ += o.constant_;
    return *this;
  }
  LinearTerm& operator-=(const LinearTerm& o) {
    for (const auto& [v, c] : o.coeffs_) add_coeff(v, -c);
    constant_ -= o.constant_;
    return *this;
  }
  LinearTerm& operator*=(const Rational& k) {
    if (k == 0) {
      coeffs_.clear();
      constant_ = 0;
      return *this;
    }
    for (auto& [v, c] : coeffs_) c *= k;
    constant_ *= k;
    return *this;
  }
  friend LinearTerm operator+(LinearTerm a, const LinearTerm& b) { return a += b; }
  friend LinearTerm operator-(LinearTerm a, const LinearTerm& b) { return a -= b; }
  friend LinearTerm operator*(const Rational& k, LinearTerm a) { return a *= k; }
  LinearTerm operator-() const { return Rational(-1) * *this; }

  friend bool operator==(const LinearTerm& a, const LinearTerm& b) {
    return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
  }

  /// Replaces v by `by` (v's coefficient times `by`).
  LinearTerm substitute(VarId v, const LinearTerm& by) const {
    auto it = coeffs_.find(v);
    if (it == coeffs_.end()) return *this;
    Rational k = it->second;
    LinearTerm out = *this;
    out.coeffs_.erase(v);
    out += k * by;
    return out;
  }

  /// Value under `values`; absent variables count as 0.
  Rational evaluate(const std::map<VarId, Rational>& values) const {
    Rational out = constant_;
    for (const auto& [v, c] : coeffs_) {
      auto it = values.find(v);
      if (it != values.end()) out += c * it->second;
    }
    return out;
  }

  std::string str() const {
    std::string out;
    for (const auto& [v, c] : coeffs_) {
      bool negative = c < 0;
      Rational mag = negative ? Rational(-c) : c;
      if (out.empty()) out += negative ? "-" : "";
      else out += negative ? " - " : " + ";
      if (mag != 1) out += to_string(mag) + "*";
      out += var_name(v);
    }
    if (out.empty()) return to_string(constant_);
    if (constant_ != 0) out += (constant_ < 0 ? " - " : " + ") + to_string(constant_ < 0 ? Rational(-constant_) : constant_);
    return out;
  }

 private:
  void add_coeff(VarId v, const Rational& c) {
    auto [it, inserted] = coeffs_.emplace(v, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    } else if (c == 0) {
      coeffs_.erase(it);
    }
  }

  std::map<VarId, Rational> coeffs_;
  Rational constant_{0};
};

enum class Relation { Geq, Gt, Eq };

/// term >= 0, term > 0, or term = 0.
struct Constraint {
  LinearTerm term;
  Relation rel;

  static Constraint geq(LinearTerm t) { return {std::move(t), Relation::Geq}; }
  static Constraint gt(LinearTerm t) { return {std::move(t), Relation::Gt}; }
  static Constraint eq(LinearTerm t) { return {std::move(t), Relation::Eq}; }

  bool strict() const { return rel == Relation::Gt; }

  bool holds(const Rational& value) const {
    switch (rel) {
      case Relation::Geq: return value >= 0;
      case Relation::Gt: return value > 0;
      case Relation::Eq: return value == 0;
    }
    return false;
  }
  bool satisfied_by(const std::map<VarId, Rational>& values) const { return holds(term.evaluate(values)); }

  friend bool operator==(const Constraint& a, const Constraint& b) { return a.rel == b.rel && a.term == b.term; }

  std::string str() const {
    const char* r = rel == Relation::Geq ? " >= 0" : rel == Relation::Gt ? " > 0" : " = 0";
    return term.str() + r;
  }
};

struct LinearSystem {
  std::vector<Constraint> constraints;
  /// Variables a witness must cover, even when no constraint mentions them.
  std::set<VarId> universe;

  std::set<VarId> occurring() const {
    std::set<VarId> out;
    for (const auto& c : constraints)
      for (const auto& [v, k] : c.term.coefficients()) out.insert(v);
    return out;
  }
};

using Valuation = std::map<VarId, Rational>;

/// Feasible iff `witness` is present; the witness satisfies every constraint exactly.
struct FeasibilityResult {
  std::optional<Valuation> witness;
  bool feasible() const { return witness.has_value(); }
};

namespace detail {

// Scales so the leading coefficient has magnitude 1 (equalities: exactly 1), and decides
// constant constraints. Returns nullopt for trivially true constraints.
inline std::optional<Constraint> normalize(Constraint c) {
  if (c.term.is_constant()) {
    if (c.holds(c.term.constant())) return std::nullopt;
    // Canonical false constraint: 0 > 0.
    return Constraint::gt(LinearTerm());
  }
  const Rational lead = c.term.coefficients().begin()->second;
  Rational scale = c.rel == Relation::Eq ? Rational(1) / lead : Rational(1) / abs(lead);
  if (scale != 1) c.term *= scale;
  return c;
}

// Normalizes, drops true constraints, and keeps only the tightest of parallel inequalities.
inline std::vector<Constraint> tidy(const std::vector<Constraint>& in) {
  std::vector<Constraint> out;
  std::map<std::map<VarId, Rational>, std::size_t> inequality_slot;
  std::set<std::pair<std::map<VarId, Rational>, Rational>> equalities;
  bool has_false = false;
  for (const auto& raw : in) {
    auto c = normalize(raw);
    if (!c) continue;
    if (c->term.is_constant()) {
      if (!has_false) out.push_back(*c);
      has_false = true;
      continue;
    }
    if (c->rel == Relation::Eq) {
      if (equalities.emplace(c->term.coefficients(), c->term.constant()).second) out.push_back(*c);
      continue;
    }
    auto [it, inserted] = inequality_slot.emplace(c->term.coefficients(), out.size());
    if (inserted) {
      out.push_back(*c);
      continue;
    }
    Constraint& kept = out[it->second];
    const Rational& a = kept.term.constant();
    const Rational& b = c->term.constant();
    if (b < a || (b == a && c->strict() && !kept.strict())) kept = *c;
  }
  return out;
}

inline bool has_contradiction(const std::vector<Constraint>& cs) {
  for (const auto& c : cs)
    if (c.term.is_constant() && !c.holds(c.term.constant())) return true;
  return false;
}

}  // namespace detail

/// One Fourier-Motzkin step. Equalities mentioning `v` are used for substitution first;
/// otherwise every lower bound is paired with every upper bound, strict iff either parent is.
inline LinearSystem fm_eliminate(const LinearSystem& sys, VarId v) {
  LinearSystem out;
  out.universe = sys.universe;
  std::vector<Constraint> next;

  auto eq_it = std::find_if(sys.constraints.begin(), sys.constraints.end(), [&](const Constraint& c) {
    return c.rel == Relation::Eq && c.term.coefficient(v) != 0;
  });
  if (eq_it != sys.constraints.end()) {
    // v = -(rest)/a
    Rational a = eq_it->term.coefficient(v);
    LinearTerm rest = eq_it->term - LinearTerm::variable(v, a);
    LinearTerm value = (Rational(-1) / a) * rest;
    for (auto it = sys.constraints.begin(); it != sys.constraints.end(); ++it) {
      if (it == eq_it) continue;
      next.push_back(Constraint{it->term.substitute(v, value), it->rel});
    }
    out.constraints = detail::tidy(next);
    return out;
  }

  std::vector<const Constraint*> lower, upper;
  for (const auto& c : sys.constraints) {
    Rational k = c.term.coefficient(v);
    if (k > 0) lower.push_back(&c);
    else if (k < 0) upper.push_back(&c);
    else next.push_back(c);
  }
  for (const auto* lo : lower) {
    for (const auto* up : upper) {
      Rational a = lo->term.coefficient(v);
      Rational b = -up->term.coefficient(v);
      LinearTerm combined = b * lo->term + a * up->term;
      bool strict = lo->strict() || up->strict();
      next.push_back(strict ? Constraint::gt(std::move(combined)) : Constraint::geq(std::move(combined)));
    }
  }
  out.constraints = detail::tidy(next);
  return out;
}

namespace detail {

// Cheapest next variable: equality-bound first, then fewest lower x upper pairs, ties to the largest id.
inline std::optional<VarId> pick_variable(const LinearSystem& sys) {
  std::map<VarId, std::pair<std::size_t, std::size_t>> counts;
  std::set<VarId> in_equality;
  for (const auto& c : sys.constraints) {
    for (const auto& [v, k] : c.term.coefficients()) {
      if (c.rel == Relation::Eq) in_equality.insert(v);
      auto& slot = counts[v];
      if (k > 0) ++slot.first;
      else ++slot.second;
    }
  }
  if (!in_equality.empty()) return *in_equality.begin();
  std::optional<VarId> best;
  std::size_t best_cost = 0;
  for (const auto& [v, lu] : counts) {
    std::size_t cost = lu.first * lu.second;
    if (!best || cost <= best_cost) {
      best = v;
      best_cost = cost;
    }
  }
  return best;
}

// Value for v given the constraints of the system it was eliminated from, with every
// other variable in them already assigned.
inline Rational choose_value(const std::vector<Constraint>& cs, VarId v, const Valuation& assigned) {
  Bound lo, hi;
  auto tighten_lo = [&](const Rational& x, bool closed) {
    if (!lo.value || x > *lo.value || (x == *lo.value && !closed)) lo = Bound::at(x, closed);
  };
  auto tighten_hi = [&](const Rational& x, bool closed) {
    if (!hi.value || x < *hi.value || (x == *hi.value && !closed)) hi = Bound::at(x, closed);
  };
  for (const auto& c : cs) {
    Rational a = c.term.coefficient(v);
    if (a == 0) continue;
    Rational rest = c.term.evaluate(assigned) - a * assigned.at(v);
    Rational root = -rest / a;
    if (c.rel == Relation::Eq) return root;
    bool closed = !c.strict();
    if (a > 0) tighten_lo(root, closed);
    else tighten_hi(root, closed);
  }
  auto value = simplest_in(lo, hi);
  if (!value) throw std::logic_error("empty interval during back-substitution");
  return *value;
}

}  // namespace detail

/// Decides feasibility by full elimination; on success back-substitutes, choosing for
/// each variable the simplest rational of its residual interval.
inline FeasibilityResult fm_check(const LinearSystem& sys) {
  LinearSystem cur{detail::tidy(sys.constraints), sys.universe};
  std::vector<std::pair<VarId, std::vector<Constraint>>> trail;
  while (true) {
    if (detail::has_contradiction(cur.constraints)) return {};
    auto v = detail::pick_variable(cur);
    if (!v) break;
    LinearSystem next = fm_eliminate(cur, *v);
    trail.emplace_back(*v, std::move(cur.constraints));
    cur = std::move(next);
  }

  Valuation witness;
  for (VarId u : sys.universe) witness[u] = 0;
  for (VarId u : sys.occurring()) witness[u] = 0;
  for (auto it = trail.rbegin(); it != trail.rend(); ++it) {
    witness[it->first] = 0;
    witness[it->first] = detail::choose_value(it->second, it->first, witness);
  }
  for (const auto& c : sys.constraints)
    if (!c.satisfied_by(witness)) throw std::logic_error("witness fails constraint " + c.str());
  return {std::move(witness)};
}

}  // namespace alwb

#endif  // ALWB_LINEAR_HPP
