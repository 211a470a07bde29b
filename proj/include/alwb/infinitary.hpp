#ifndef ALWB_INFINITARY_HPP
#define ALWB_INFINITARY_HPP

#include "alwb/decide.hpp"
#include "alwb/formula.hpp"
#include "alwb/model.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace alwb {

/// Rule schemata. The Vee variants disjoin every premise and the conclusion with a
/// single side variable.
enum class RuleName { Arch, ArchVee, IDC, IDCVee, Hay, Lu };

struct RuleSchema {
  RuleName name;
  std::string id;  // CLI spelling
  bool indexed;    // premises depend on the cutoff N
  bool vee;
};

inline const std::vector<RuleSchema>& rule_schemata() {
  static const std::vector<RuleSchema> rules = {
      {RuleName::Arch, "arch", true, false}, {RuleName::ArchVee, "archv", true, true},
      {RuleName::IDC, "idc", true, false},   {RuleName::IDCVee, "idcv", true, true},
      {RuleName::Hay, "hay", true, false},   {RuleName::Lu, "lu", false, false},
  };
  return rules;
}

inline const RuleSchema& rule_schema(std::string_view id) {
  for (const auto& r : rule_schemata())
    if (r.id == id) return r;
  throw std::invalid_argument("unknown rule '" + std::string(id) + "'");
}

inline const RuleSchema& rule_schema(RuleName name) {
  for (const auto& r : rule_schemata())
    if (r.name == name) return r;
  throw std::logic_error("unregistered rule");
}

// Schema variables are ordinary variable indices. Arch/Hay/Lu: phi = 0, psi = 1.
// IDC: phi_i = i for i <= N. The side variable of a Vee form comes right after.
inline std::map<std::size_t, std::string> schema_variable_names(RuleName r, std::size_t n) {
  std::map<std::size_t, std::string> out;
  std::size_t side = 0;
  switch (r) {
    case RuleName::Arch:
    case RuleName::ArchVee:
      out = {{0, "phi"}, {1, "psi"}};
      side = 2;
      break;
    case RuleName::Hay:
    case RuleName::Lu:
      out = {{0, "phi"}};
      side = 1;
      break;
    case RuleName::IDC:
    case RuleName::IDCVee:
      for (std::size_t i = 0; i <= n; ++i) out[i] = "phi" + std::to_string(i);
      side = n + 1;
      break;
  }
  if (rule_schema(r).vee) out[side] = "chi";
  return out;
}

struct ApproximantInstance {
  RuleName schema;
  std::size_t cutoff;
  Substitution substitution;
  Consecution consecution;
};

/// Finite approximant with premises for n <= N (IDC: n < N), under `sigma`.
inline ApproximantInstance instantiate(RuleName r, std::size_t n, const Substitution& sigma = {}) {
  auto phi = Formula::var(0);
  Consecution c;
  switch (r) {
    case RuleName::Arch:
    case RuleName::ArchVee: {
      auto psi = Formula::var(1);
      for (std::size_t k = 0; k <= n; ++k) c.premises.push_back(Formula::impl(psi, multiple(k, phi)));
      c.conclusion = phi;
      break;
    }
    case RuleName::Hay:
      for (std::size_t k = 0; k <= n; ++k) c.premises.push_back(Formula::impl(lneg(phi), multiple(k, phi)));
      c.conclusion = phi;
      break;
    case RuleName::IDC:
    case RuleName::IDCVee:
      for (std::size_t k = 0; k < n; ++k) {
        auto cur = Formula::var(k);
        auto next = Formula::var(k + 1);
        c.premises.push_back(Formula::impl(multiple(2, next), cur));
        c.premises.push_back(Formula::impl(cur, multiple(4, next)));
      }
      c.conclusion = Formula::impl(phi, Formula::t());
      break;
    case RuleName::Lu:
      c.premises.push_back(Formula::join(Formula::f(), phi));
      c.conclusion = phi;
      break;
  }
  if (rule_schema(r).vee) c = vee_form(c, Formula::var(schema_variable_names(r, n).rbegin()->first));
  return {r, n, sigma, sigma.empty() ? c : substitute(c, sigma)};
}

/// Decides the N-approximant. Valid at some N means the full rule is valid in the
/// class; Invalid at N says nothing about the full rule.
inline Verdict approx_decide(RuleName r, std::size_t n, const LogicId& l, const DecideOptions& opt = {}) {
  return decide(l, instantiate(r, n).consecution, opt);
}

inline Verdict approx_decide(RuleName r, std::size_t n, const Model& m, std::uint64_t bound,
                             const DecideOptions& opt = {}) {
  return decide_in_model(m, instantiate(r, n).consecution, bound, opt);
}

/// Whether phi = x, psi = y refutes the full Arch rule in the lexicographic square:
/// x, y < 0 and y <= n*x for every n. Decided by the closed form, with the first
/// `check_cap` + 1 premises also evaluated directly.
inline bool verify_full_arch_countermodel(const Element& x, const Element& y, std::uint64_t check_cap) {
  if (check_cap < 1) throw std::invalid_argument("check_cap must be at least 1");
  Model m = Model::lex_zz();
  m.check_element(x);
  m.check_element(y);
  const auto& a = x.coords;
  const auto& b = y.coords;
  bool closed_form = a[0] == 0 && a[1] < 0 && b[0] < 0;
  if (!closed_form) return false;
  Element nx = m.zero();
  for (std::uint64_t n = 0; n <= check_cap; ++n) {
    if (!m.designated(m.implies(y, nx))) return false;
    nx = m.fuse(nx, x);
  }
  return !m.designated(x) && !m.designated(y);
}

}  // namespace alwb

#endif  // ALWB_INFINITARY_HPP
