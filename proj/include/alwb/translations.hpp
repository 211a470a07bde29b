#ifndef ALWB_TRANSLATIONS_HPP
#define ALWB_TRANSLATIONS_HPP

#include "alwb/formula.hpp"
#include "alwb/model.hpp"

namespace alwb {

/// Lukasiewicz logic into Lukasiewicz unbound logic: variables are clamped into [f, t],
/// implication is capped at t and fusion floored at f.
inline Formula tau_luk_to_lu(const Formula& x) {
  switch (x.kind()) {
    case Kind::Var: return Formula::meet(Formula::join(x, Formula::f()), Formula::t());
    case Kind::ConstT:
    case Kind::ConstF: return x;
    case Kind::Impl: return Formula::meet(Formula::impl(tau_luk_to_lu(x.left()), tau_luk_to_lu(x.right())), Formula::t());
    case Kind::Fus: return Formula::join(Formula::fus(tau_luk_to_lu(x.left()), tau_luk_to_lu(x.right())), Formula::f());
    case Kind::Join:
    case Kind::Meet: return Formula::binary(x.kind(), tau_luk_to_lu(x.left()), tau_luk_to_lu(x.right()));
  }
  return x;
}

/// f -> (f -> t), homomorphic elsewhere.
inline Formula tau_flip(const Formula& x) {
  if (x.kind() == Kind::ConstF) return neg(x);
  if (!x.contains_f()) return x;
  return Formula::binary(x.kind(), tau_flip(x.left()), tau_flip(x.right()));
}

template <class Map>
Consecution translate(const Consecution& c, Map map) {
  Consecution out;
  for (const auto& p : c.premises) out.premises.push_back(map(p));
  out.conclusion = map(c.conclusion);
  return out;
}

inline Consecution tau_luk_to_lu(const Consecution& c) { return translate(c, [](const Formula& x) { return tau_luk_to_lu(x); }); }
inline Consecution tau_flip(const Consecution& c) { return translate(c, [](const Formula& x) { return tau_flip(x); }); }

inline Rational clip(const Rational& q) {
  if (q < 0) return Rational(0);
  if (q > 1) return Rational(1);
  return q;
}

/// Clamps every value of a rational assignment into [0, 1].
inline Assignment clip(const Assignment& e) {
  Assignment out;
  for (const auto& [v, el] : e) {
    if (el.coords.size() != 1) throw ModelError("clip expects rational values");
    out.emplace(v, Element{{clip(el.coords[0])}});
  }
  return out;
}

/// The MV value of chi under clip(e) against tau(chi) in the unbound algebra under e.
/// The unbound algebra (t = 1, f = 0) is the chain with point -1 shifted by +1, so its
/// evaluation under e is the chain evaluation under e - 1, plus 1.
inline bool correspondence_check(const Formula& chi, const Assignment& e) {
  Assignment shifted;
  for (const auto& [v, el] : e) {
    if (el.coords.size() != 1) throw ModelError("correspondence_check expects rational values");
    shifted.emplace(v, Element{{el.coords[0] - 1}});
  }
  Element mv = evaluate(Model::mv_unit(), clip(e), chi);
  Element lu = evaluate(Model::rational_chain(Rational(-1)), shifted, tau_luk_to_lu(chi));
  return mv.coords[0] == lu.coords[0] + 1;
}

}  // namespace alwb

#endif  // ALWB_TRANSLATIONS_HPP
