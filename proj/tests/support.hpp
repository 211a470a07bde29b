#ifndef ALWB_TESTS_SUPPORT_HPP
#define ALWB_TESTS_SUPPORT_HPP

#include "alwb/alwb.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <string>
#include <map>
#include <random>
#include <vector>

namespace alwb::testing {

struct GenOptions {
  std::size_t max_depth = 4;
  std::size_t vars = 3;
  bool use_f = true;
  std::size_t max_premises = 3;
};

class FormulaGen {
 public:
  explicit FormulaGen(std::uint64_t seed, GenOptions opt = {}) : rng_(seed), opt_(opt) {}

  Formula formula() { return formula(opt_.max_depth); }

  Formula formula(std::size_t depth) {
    std::uniform_int_distribution<int> pick(0, 9);
    if (depth == 0 || pick(rng_) < 3) return leaf();
    static constexpr Kind ops[] = {Kind::Impl, Kind::Fus, Kind::Join, Kind::Meet};
    Kind k = ops[std::uniform_int_distribution<int>(0, 3)(rng_)];
    return Formula::binary(k, formula(depth - 1), formula(depth - 1));
  }

  Consecution consecution() {
    Consecution c;
    auto n = std::uniform_int_distribution<std::size_t>(0, opt_.max_premises)(rng_);
    for (std::size_t i = 0; i < n; ++i) c.premises.push_back(formula());
    c.conclusion = formula();
    return c;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  Formula leaf() {
    int r = std::uniform_int_distribution<int>(0, 9)(rng_);
    if (r == 0) return Formula::t();
    if (r == 1 && opt_.use_f) return Formula::f();
    return Formula::var(std::uniform_int_distribution<std::size_t>(0, opt_.vars - 1)(rng_));
  }

  std::mt19937_64 rng_;
  GenOptions opt_;
};

/// Evaluation on numerators over a fixed denominator, in plain integers. In l-group
/// semantics values are scaled copies; in MV semantics the unit is `denom`.
struct IntEval {
  bool mv = false;
  std::int64_t denom = 1;
  std::int64_t f = 0;  // numerator of f (l-group)
  std::map<std::size_t, std::int64_t> vars;

  std::int64_t operator()(const Formula& x) const {
    switch (x.kind()) {
      case Kind::Var: return vars.at(x.var_index());
      case Kind::ConstT: return mv ? denom : 0;
      case Kind::ConstF: return mv ? 0 : f;
      case Kind::Impl: {
        std::int64_t a = (*this)(x.left()), b = (*this)(x.right());
        return mv ? std::min(denom, denom - a + b) : b - a;
      }
      case Kind::Fus: {
        std::int64_t a = (*this)(x.left()), b = (*this)(x.right());
        return mv ? std::max<std::int64_t>(0, a + b - denom) : a + b;
      }
      case Kind::Join: return std::max((*this)(x.left()), (*this)(x.right()));
      case Kind::Meet: return std::min((*this)(x.left()), (*this)(x.right()));
    }
    return 0;
  }

  bool designated(std::int64_t v) const { return mv ? v == denom : v >= 0; }

  bool refutes(const Consecution& c) const {
    for (const auto& p : c.premises)
      if (!designated((*this)(p))) return false;
    return !designated((*this)(c.conclusion));
  }
};

/// Random evaluation with values in [-10, 10] (MV: [0, 1]) on the grid 1/denom, f drawn
/// inside the sign region `sign`.
inline IntEval random_eval(std::mt19937_64& rng, bool mv, FSign sign, std::size_t vars, std::int64_t denom = 12) {
  IntEval e;
  e.mv = mv;
  e.denom = denom;
  std::int64_t lo = mv ? 0 : -10 * denom, hi = mv ? denom : 10 * denom;
  std::uniform_int_distribution<std::int64_t> pick(lo, hi);
  for (std::size_t v = 0; v < vars; ++v) e.vars[v] = pick(rng);
  if (!mv) {
    std::uniform_int_distribution<std::int64_t> mag(1, 10 * denom);
    switch (sign) {
      case FSign::Lt: e.f = -mag(rng); break;
      case FSign::Gt: e.f = mag(rng); break;
      case FSign::Eq: e.f = 0; break;
      case FSign::Leq: e.f = (rng() % 4 == 0) ? 0 : -mag(rng); break;
      case FSign::Geq: e.f = (rng() % 4 == 0) ? 0 : mag(rng); break;
      case FSign::Free: e.f = pick(rng); break;
    }
  }
  return e;
}

struct SystemGenOptions {
  std::size_t vars = 3;
  std::size_t max_constraints = 6;
  int coeff = 3;
};

/// Random integer-coefficient system over variables 0..vars-1.
inline LinearSystem random_system(std::mt19937_64& rng, SystemGenOptions opt = {}) {
  std::uniform_int_distribution<int> co(-opt.coeff, opt.coeff);
  LinearSystem sys;
  auto n = std::uniform_int_distribution<std::size_t>(1, opt.max_constraints)(rng);
  for (std::size_t v = 0; v < opt.vars; ++v) sys.universe.insert(v);
  for (std::size_t i = 0; i < n; ++i) {
    LinearTerm t(Rational(co(rng)));
    for (std::size_t v = 0; v < opt.vars; ++v) t += LinearTerm::variable(v, Rational(co(rng)));
    int r = std::uniform_int_distribution<int>(0, 9)(rng);
    sys.constraints.push_back(r < 5 ? Constraint::geq(t) : r < 9 ? Constraint::gt(t) : Constraint::eq(t));
  }
  return sys;
}

/// Grid search over x = k/60 in [-range, range] (every fraction with denominator <= 6),
/// integer arithmetic only. Requires integer coefficients.
inline bool grid_feasible(const LinearSystem& sys, std::size_t vars, int range = 4) {
  constexpr std::int64_t D = 60;
  struct Row {
    std::vector<std::int64_t> a;
    std::int64_t c;
    Relation rel;
  };
  std::vector<Row> rows;
  for (const auto& con : sys.constraints) {
    Row r{std::vector<std::int64_t>(vars, 0), static_cast<std::int64_t>(numerator_of(con.term.constant())) * D, con.rel};
    for (const auto& [v, k] : con.term.coefficients()) r.a[v] = static_cast<std::int64_t>(numerator_of(k));
    rows.push_back(r);
  }
  std::vector<std::int64_t> axis;
  for (std::int64_t k = -range * D; k <= range * D; ++k)
    for (std::int64_t d = 1; d <= 6; ++d)
      if ((k * d) % D == 0) {
        axis.push_back(k);
        break;
      }
  std::vector<std::int64_t> x(vars, 0);
  auto ok = [&]() {
    for (const auto& r : rows) {
      std::int64_t s = r.c;
      for (std::size_t v = 0; v < vars; ++v) s += r.a[v] * x[v];
      if (r.rel == Relation::Geq ? s < 0 : r.rel == Relation::Gt ? s <= 0 : s != 0) return false;
    }
    return true;
  };
  std::vector<std::size_t> idx(vars, 0);
  if (vars == 0) return ok();
  for (;;) {
    for (std::size_t v = 0; v < vars; ++v) x[v] = axis[idx[v]];
    if (ok()) return true;
    std::size_t v = vars;
    while (v-- > 0) {
      if (++idx[v] < axis.size()) break;
      idx[v] = 0;
      if (v == 0) return false;
    }
  }
}

/// Plain Fourier-Motzkin over Boost's own rational type: variables eliminated in index
/// order, equalities split into two inequalities, every lower/upper pair combined.
inline bool naive_fm_feasible(const LinearSystem& sys, std::size_t vars) {
  using R = boost::multiprecision::cpp_rational;
  struct Row {
    std::vector<R> a;
    R c;
    bool strict;
  };
  std::vector<Row> rows;
  auto conv = [](const Rational& q) {
    return R(boost::multiprecision::cpp_int(numerator_of(q).str())) / R(boost::multiprecision::cpp_int(denominator_of(q).str()));
  };
  for (const auto& con : sys.constraints) {
    Row r{std::vector<R>(vars, R(0)), conv(con.term.constant()), con.rel == Relation::Gt};
    for (const auto& [v, k] : con.term.coefficients()) r.a[v] = conv(k);
    rows.push_back(r);
    if (con.rel == Relation::Eq) {
      for (auto& k : r.a) k = -k;
      r.c = -r.c;
      rows.push_back(r);
    }
  }
  for (std::size_t v = 0; v < vars; ++v) {
    std::vector<Row> lo, hi, next;
    for (auto& r : rows) (r.a[v] > 0 ? lo : r.a[v] < 0 ? hi : next).push_back(r);
    for (const auto& l : lo)
      for (const auto& h : hi) {
        R wl = -h.a[v], wh = l.a[v];
        Row n{std::vector<R>(vars, R(0)), wl * l.c + wh * h.c, l.strict || h.strict};
        for (std::size_t u = 0; u < vars; ++u) n.a[u] = wl * l.a[u] + wh * h.a[u];
        next.push_back(n);
      }
    rows = std::move(next);
  }
  for (const auto& r : rows)
    if (r.strict ? r.c <= 0 : r.c < 0) return false;
  return true;
}

struct Mutant {
  Proof proof;
  std::size_t step;
  std::string kind;
};

/// Single-step mutations of a proof, each of which must be rejected at `step`: altered
/// formulas, wrong references, wrong substitutions, wrong axiom names.
inline std::vector<Mutant> single_step_mutants(const Proof& proof) {
  std::vector<Mutant> out;
  auto with = [&](std::size_t k, auto&& edit, std::string kind) {
    Proof m = proof;
    edit(m.steps[k]);
    out.push_back({std::move(m), k, std::move(kind)});
  };
  for (std::size_t k = 0; k < proof.steps.size(); ++k) {
    const ProofStep& s = proof.steps[k];
    with(k, [](ProofStep& st) { st.formula = Formula::fus(st.formula, Formula::t()); }, "formula");
    if (auto* h = std::get_if<Hypothesis>(&s.justification)) {
      with(k, [&](ProofStep& st) { st.justification = Hypothesis{proof.claimed.premises.size()}; }, "reference");
      for (std::size_t i = 0; i < proof.claimed.premises.size(); ++i)
        if (!(proof.claimed.premises[i] == proof.claimed.premises[h->index]))
          with(k, [&](ProofStep& st) { st.justification = Hypothesis{i}; }, "reference");
    } else if (auto* mp = std::get_if<ModusPonens>(&s.justification)) {
      with(k, [&](ProofStep& st) { st.justification = ModusPonens{mp->minor, k}; }, "reference");
      with(k, [&](ProofStep& st) { st.justification = ModusPonens{k, mp->major}; }, "reference");
      with(k, [&](ProofStep& st) { st.justification = ModusPonens{mp->major, mp->minor}; }, "reference");
      for (std::size_t i = 0; i < k; ++i)
        if (!(proof.steps[i].formula == proof.steps[mp->major].formula))
          with(k, [&](ProofStep& st) { st.justification = ModusPonens{mp->minor, i}; }, "reference");
    } else if (auto* adj = std::get_if<Adjunction>(&s.justification)) {
      with(k, [&](ProofStep& st) { st.justification = Adjunction{adj->left, k}; }, "reference");
      if (!(proof.steps[adj->left].formula == proof.steps[adj->right].formula))
        with(k, [&](ProofStep& st) { st.justification = Adjunction{adj->right, adj->left}; }, "reference");
      for (std::size_t i = 0; i < k; ++i)
        if (!(proof.steps[i].formula == proof.steps[adj->left].formula))
          with(k, [&](ProofStep& st) { st.justification = Adjunction{i, adj->right}; }, "reference");
    } else {
      const auto& ax = std::get<AxiomUse>(s.justification);
      for (const auto& [v, phi] : ax.substitution) {
        with(k, [&, v = v, phi = phi](ProofStep& st) {
          AxiomUse bad = ax;
          bad.substitution[v] = Formula::fus(phi, Formula::t());
          st.justification = bad;
        }, "substitution");
      }
      for (const auto& other : axioms())
        if (other.name != ax.name && !match_axiom(s.formula, other))
          with(k, [&](ProofStep& st) { st.justification = AxiomUse{other.name, {}}; }, "reference");
    }
  }
  return out;
}

inline std::vector<std::string> proof_corpus_files() {
  std::vector<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(ALWB_DATA_DIR "/proofs"))
    if (entry.path().extension() == ".proof") out.push_back(entry.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

inline Rational q(long long n, long long d = 1) { return Rational(n) / Rational(d); }

inline Element el(long long n, long long d = 1) { return Element{{q(n, d)}}; }

}  // namespace alwb::testing

#endif  // ALWB_TESTS_SUPPORT_HPP
