#ifndef ALWB_DECIDE_HPP
#define ALWB_DECIDE_HPP

#include "alwb/formula.hpp"
#include "alwb/linear.hpp"
#include "alwb/model.hpp"
#include "alwb/refute.hpp"
#include "alwb/scenario.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace alwb {

enum class Language { Ab, Pointed, Mv };

/// Admissible sign of the interpretation of f in one semantic case.
enum class FSign { Lt, Leq, Eq, Geq, Gt, Free };

/// A logic together with its semantic reduction: validity means validity over rational
/// chains whose point ranges over each listed case (or over the MV unit interval).
struct LogicId {
  std::string name;
  Language language;
  std::vector<FSign> cases;
  Semantics semantics;
  std::string description;

  bool pointed() const { return language != Language::Ab; }
};

class LanguageMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<LogicId>& registry() {
  static const std::vector<LogicId> logics = {
      {"ab", Language::Ab, {FSign::Free}, Semantics::EllGroup, "Abelian logic"},
      {"pab", Language::Pointed, {FSign::Free}, Semantics::EllGroup, "pointed Abelian logic"},
      {"lu", Language::Pointed, {FSign::Lt}, Semantics::EllGroup, "Lukasiewicz unbound logic (pAb + f \\/ phi |- phi)"},
      {"lustar", Language::Pointed, {FSign::Gt}, Semantics::EllGroup, "pAb + -f \\/ phi |- phi"},
      {"pab-f", Language::Pointed, {FSign::Geq}, Semantics::EllGroup, "pAb + |- f"},
      {"pab-negf", Language::Pointed, {FSign::Leq}, Semantics::EllGroup, "pAb + |- -f"},
      {"pab-fneq0", Language::Pointed, {FSign::Lt, FSign::Gt}, Semantics::EllGroup, "pAb + (f /\\ -f) \\/ phi |- phi"},
      {"ab-as-pab", Language::Pointed, {FSign::Eq}, Semantics::EllGroup, "pAb + |- f /\\ -f"},
      {"luk", Language::Mv, {FSign::Free}, Semantics::MvUnit, "Lukasiewicz logic (standard MV-algebra)"},
  };
  return logics;
}

struct LogicLookup {
  const LogicId* logic = nullptr;
  /// Set when the name was an alias that only coincides on finite consecutions.
  std::optional<std::string> notice;
};

inline LogicLookup find_logic(std::string_view name) {
  LogicLookup out;
  std::string_view target = name;
  if (name == "rab") {
    target = "ab";
    out.notice = "rab coincides with ab on finite consecutions; deciding ab";
  } else if (name == "luinf") {
    target = "lu";
    out.notice = "luinf coincides with lu on finite consecutions; deciding lu";
  }
  for (const auto& l : registry())
    if (l.name == target) out.logic = &l;
  if (!out.logic) throw std::invalid_argument("unknown logic '" + std::string(name) + "'");
  return out;
}

inline const LogicId& logic(std::string_view name) { return *find_logic(name).logic; }

inline std::vector<Constraint> f_constraints(FSign s) {
  LinearTerm f = LinearTerm::variable(kFVar);
  switch (s) {
    case FSign::Lt: return {Constraint::gt(-f)};
    case FSign::Leq: return {Constraint::geq(-f)};
    case FSign::Eq: return {Constraint::eq(f)};
    case FSign::Geq: return {Constraint::geq(f)};
    case FSign::Gt: return {Constraint::gt(f)};
    case FSign::Free: return {};
  }
  return {};
}

inline bool sign_admits(FSign s, const Rational& f) {
  switch (s) {
    case FSign::Lt: return f < 0;
    case FSign::Leq: return f <= 0;
    case FSign::Eq: return f == 0;
    case FSign::Geq: return f >= 0;
    case FSign::Gt: return f > 0;
    case FSign::Free: return true;
  }
  return false;
}

/// Valid, Invalid with a witness refuting the consecution in `model`, or no
/// counterexample found up to `bound` (discrete models only).
struct Verdict {
  enum class Kind { Valid, Invalid, UnknownUpToBound };

  Kind kind = Kind::Valid;
  std::optional<Model> model;
  Assignment witness;
  std::uint64_t bound = 0;

  static Verdict valid() { return {}; }
  static Verdict invalid(Model m, Assignment w) { return {Kind::Invalid, std::move(m), std::move(w), 0}; }
  static Verdict unknown(std::uint64_t b) { return {Kind::UnknownUpToBound, std::nullopt, {}, b}; }

  bool is_valid() const { return kind == Kind::Valid; }
  bool is_invalid() const { return kind == Kind::Invalid; }
  bool is_unknown() const { return kind == Kind::UnknownUpToBound; }

  /// Value of f in the witness model, when that model interprets f as a point.
  std::optional<Element> f_value() const {
    if (!model || !model->interprets_f()) return std::nullopt;
    return model->point();
  }
};

struct DecideOptions {
  std::uint64_t scenario_budget = kDefaultScenarioBudget;
};

namespace detail {

inline void check_language(const LogicId& l, const Consecution& c) {
  if (l.language == Language::Ab && contains_f(c))
    throw LanguageMismatch("logic " + l.name + " has no constant f");
}

inline Assignment to_assignment(const Valuation& w) {
  Assignment out;
  for (const auto& [v, q] : w)
    if (v != kFVar) out.emplace(v, Element{{q}});
  return out;
}

}  // namespace detail

/// Decides a finite consecution in a registry logic. Never returns UnknownUpToBound.
inline Verdict decide(const LogicId& l, const Consecution& c, const DecideOptions& opt = {}) {
  detail::check_language(l, c);
  if (l.semantics == Semantics::MvUnit) {
    if (auto w = find_refutation(c, Semantics::MvUnit, {}, opt.scenario_budget))
      return Verdict::invalid(Model::mv_unit(), detail::to_assignment(*w));
    return Verdict::valid();
  }
  for (FSign s : l.cases) {
    if (auto w = find_refutation(c, Semantics::EllGroup, f_constraints(s), opt.scenario_budget)) {
      std::optional<Rational> point;
      if (l.pointed()) {
        auto it = w->find(kFVar);
        // f absent from the consecution: any admissible point works, pick the simplest.
        if (it != w->end()) point = it->second;
        else point = s == FSign::Lt ? Rational(-1) : s == FSign::Gt ? Rational(1) : Rational(0);
      }
      return Verdict::invalid(Model::rational_chain(point), detail::to_assignment(*w));
    }
  }
  return Verdict::valid();
}

inline Verdict decide(std::string_view logic_name, const Consecution& c, const DecideOptions& opt = {}) {
  return decide(logic(logic_name), c, opt);
}

/// Validity in a single model. Rational chains and MV are decided exactly; integer,
/// lexicographic, and product models fall back to bounded search.
inline Verdict decide_in_model(const Model& m, const Consecution& c, std::uint64_t bound,
                               const DecideOptions& opt = {}) {
  if (contains_f(c) && !m.interprets_f()) throw LanguageMismatch("model " + m.spec() + " does not interpret f");
  if (m.is_mv()) {
    if (auto w = find_refutation(c, Semantics::MvUnit, {}, opt.scenario_budget)) return Verdict::invalid(m, detail::to_assignment(*w));
    return Verdict::valid();
  }
  if (m.is_rational_chain()) {
    std::vector<Constraint> fixed;
    if (m.interprets_f()) fixed.push_back(Constraint::eq(LinearTerm::variable(kFVar) - LinearTerm(m.point().coords[0])));
    if (auto w = find_refutation(c, Semantics::EllGroup, std::move(fixed), opt.scenario_budget))
      return Verdict::invalid(m, detail::to_assignment(*w));
    return Verdict::valid();
  }
  if (auto w = search_counterexample(m, c, bound)) return Verdict::invalid(m, std::move(*w));
  return Verdict::unknown(bound);
}

/// Alternative reduction for pointed logics: check the representative chains Q@-1, Q@0,
/// Q@1 admitted by each case. Agrees with decide() up to the isomorphism x -> q*x.
inline Verdict decide_by_points(const LogicId& l, const Consecution& c, const DecideOptions& opt = {}) {
  if (l.semantics != Semantics::EllGroup || !l.pointed()) return decide(l, c, opt);
  for (int point : {-1, 0, 1}) {
    bool admitted = false;
    for (FSign s : l.cases) admitted = admitted || sign_admits(s, Rational(point));
    if (!admitted) continue;
    Verdict v = decide_in_model(Model::rational_chain(Rational(point)), c, 0, opt);
    if (!v.is_valid()) return v;
  }
  return Verdict::valid();
}

}  // namespace alwb

#endif  // ALWB_DECIDE_HPP
