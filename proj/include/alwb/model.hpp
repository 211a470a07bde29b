#ifndef ALWB_MODEL_HPP
#define ALWB_MODEL_HPP

#include "alwb/formula.hpp"
#include "alwb/rational.hpp"

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace alwb {

/// Raised for malformed models, elements, and evaluations outside a model's language.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FactorKind { RationalChain, IntegerChain, LexZZ, MVUnit };

/// One directly indecomposable block of a model. Coordinates are stored as rationals;
/// integer-valued kinds keep them integral.
struct Factor {
  FactorKind kind;
  std::optional<std::vector<Rational>> point;

  std::size_t width() const { return kind == FactorKind::LexZZ ? 2 : 1; }
  bool discrete() const { return kind == FactorKind::IntegerChain || kind == FactorKind::LexZZ; }
};

/// A group element: the concatenated coordinates of every factor.
struct Element {
  std::vector<Rational> coords;

  friend bool operator==(const Element& a, const Element& b) { return a.coords == b.coords; }
};

/// Variable index -> element. The value of f comes from the model's point.
using Assignment = std::map<std::size_t, Element>;

/// A pointed (or unpointed) Abelian l-group built from chains, or the standard MV-algebra.
class Model {
 public:
  static Model rational_chain(std::optional<Rational> point = std::nullopt) {
    return Model({wrap(FactorKind::RationalChain, std::move(point))});
  }
  static Model integer_chain(std::optional<Integer> point = std::nullopt) {
    std::optional<Rational> p;
    if (point) p = Rational(*point);
    return Model({wrap(FactorKind::IntegerChain, std::move(p))});
  }
  static Model lex_zz(std::optional<std::pair<Integer, Integer>> point = std::nullopt) {
    Factor fac{FactorKind::LexZZ, std::nullopt};
    if (point) fac.point = std::vector<Rational>{Rational(point->first), Rational(point->second)};
    return Model({fac});
  }
  static Model mv_unit() { return Model({Factor{FactorKind::MVUnit, std::nullopt}}); }

  /// Direct product; nested products are flattened.
  static Model product(const std::vector<Model>& parts) {
    if (parts.empty()) throw ModelError("product needs at least one factor");
    std::vector<Factor> factors;
    for (const auto& m : parts) {
      if (m.is_mv()) throw ModelError("MV cannot be a product factor");
      factors.insert(factors.end(), m.factors_.begin(), m.factors_.end());
    }
    bool pointed = factors.front().point.has_value();
    for (const auto& fac : factors)
      if (fac.point.has_value() != pointed) throw ModelError("product factors must all be pointed or all unpointed");
    return Model(std::move(factors));
  }

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_mv() const { return factors_.size() == 1 && factors_[0].kind == FactorKind::MVUnit; }
  bool is_product() const { return factors_.size() > 1; }
  /// Linearly ordered (single non-MV factor).
  bool is_chain() const { return factors_.size() == 1 && !is_mv(); }
  bool is_rational_chain() const { return is_chain() && factors_[0].kind == FactorKind::RationalChain; }
  /// Interprets f: pointed l-group, or MV where f = 0.
  bool interprets_f() const { return is_mv() || factors_.front().point.has_value(); }
  std::size_t dimension() const {
    std::size_t d = 0;
    for (const auto& fac : factors_) d += fac.width();
    return d;
  }

  Element zero() const { return Element{std::vector<Rational>(dimension(), Rational(0))}; }

  Element top() const {
    if (is_mv()) return Element{{Rational(1)}};
    return zero();
  }

  Element point() const {
    if (is_mv()) return Element{{Rational(0)}};
    if (!interprets_f()) throw ModelError("unpointed model cannot interpret f");
    Element out;
    for (const auto& fac : factors_) out.coords.insert(out.coords.end(), fac.point->begin(), fac.point->end());
    return out;
  }

  // l-group operations; MV uses its truncated versions.

  Element implies(const Element& a, const Element& b) const {
    Element out{std::vector<Rational>(a.coords.size())};
    for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] = b.coords[i] - a.coords[i];
    if (is_mv()) out.coords[0] = std::min(Rational(1), Rational(1) + out.coords[0]);
    return out;
  }

  Element fuse(const Element& a, const Element& b) const {
    Element out{std::vector<Rational>(a.coords.size())};
    for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] = a.coords[i] + b.coords[i];
    if (is_mv()) out.coords[0] = std::max(Rational(0), out.coords[0] - 1);
    return out;
  }

  Element join(const Element& a, const Element& b) const { return lattice(a, b, true); }
  Element meet(const Element& a, const Element& b) const { return lattice(a, b, false); }

  Element negate(const Element& a) const {
    Element out = a;
    for (auto& c : out.coords) c = -c;
    return out;
  }

  Element times(const Rational& q, const Element& a) const {
    Element out = a;
    for (auto& c : out.coords) c *= q;
    return out;
  }

  /// Lattice order; componentwise across factors, lexicographic inside LexZZ.
  bool leq(const Element& a, const Element& b) const {
    std::size_t off = 0;
    for (const auto& fac : factors_) {
      if (fac.kind == FactorKind::LexZZ) {
        if (lex_cmp(a, b, off) > 0) return false;
      } else if (a.coords[off] > b.coords[off]) {
        return false;
      }
      off += fac.width();
    }
    return true;
  }

  bool designated(const Element& a) const { return leq(top(), a); }

  /// Throws ModelError unless `a` is a well-formed element of this model.
  void check_element(const Element& a) const {
    if (a.coords.size() != dimension()) throw ModelError("element has the wrong number of coordinates");
    std::size_t off = 0;
    for (const auto& fac : factors_) {
      for (std::size_t i = 0; i < fac.width(); ++i) {
        const Rational& c = a.coords[off + i];
        if (fac.discrete() && !is_integral(c)) throw ModelError("non-integer coordinate in a discrete factor");
        if (fac.kind == FactorKind::MVUnit && (c < 0 || c > 1)) throw ModelError("MV element outside [0,1]");
      }
      off += fac.width();
    }
  }

  std::string format(const Element& a) const {
    auto factor_text = [&](const Factor& fac, std::size_t off) {
      if (fac.kind == FactorKind::LexZZ) return "(" + to_string(a.coords[off]) + "," + to_string(a.coords[off + 1]) + ")";
      return to_string(a.coords[off]);
    };
    if (factors_.size() == 1) return factor_text(factors_[0], 0);
    std::string out = "(";
    std::size_t off = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) out += ",";
      out += factor_text(factors_[i], off);
      off += factors_[i].width();
    }
    return out + ")";
  }

  /// Canonical spec string, e.g. "Q@-1", "ZxZ@(0,0)", "Q@-1 x Q@0", "MV".
  std::string spec() const {
    std::string out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) out += " x ";
      const Factor& fac = factors_[i];
      switch (fac.kind) {
        case FactorKind::RationalChain: out += "Q"; break;
        case FactorKind::IntegerChain: out += "Z"; break;
        case FactorKind::LexZZ: out += "ZxZ"; break;
        case FactorKind::MVUnit: out += "MV"; break;
      }
      if (fac.point) {
        if (fac.kind == FactorKind::LexZZ)
          out += "@(" + to_string((*fac.point)[0]) + "," + to_string((*fac.point)[1]) + ")";
        else
          out += "@" + to_string((*fac.point)[0]);
      }
    }
    return out;
  }

 private:
  explicit Model(std::vector<Factor> factors) : factors_(std::move(factors)) {}

  static Factor wrap(FactorKind k, std::optional<Rational> p) {
    Factor fac{k, std::nullopt};
    if (p) fac.point = std::vector<Rational>{std::move(*p)};
    return fac;
  }

  static int lex_cmp(const Element& a, const Element& b, std::size_t off) {
    if (a.coords[off] != b.coords[off]) return a.coords[off] < b.coords[off] ? -1 : 1;
    if (a.coords[off + 1] != b.coords[off + 1]) return a.coords[off + 1] < b.coords[off + 1] ? -1 : 1;
    return 0;
  }

  Element lattice(const Element& a, const Element& b, bool upper) const {
    Element out = a;
    std::size_t off = 0;
    for (const auto& fac : factors_) {
      if (fac.kind == FactorKind::LexZZ) {
        int c = lex_cmp(a, b, off);
        bool take_b = upper ? c < 0 : c > 0;
        if (take_b) {
          out.coords[off] = b.coords[off];
          out.coords[off + 1] = b.coords[off + 1];
        }
      } else {
        bool take_b = upper ? b.coords[off] > a.coords[off] : b.coords[off] < a.coords[off];
        if (take_b) out.coords[off] = b.coords[off];
      }
      off += fac.width();
    }
    return out;
  }

  std::vector<Factor> factors_;
};

// --- Evaluation ----------------------------------------------------------

/// Homomorphic evaluation: -> is difference, * is sum, \/ and /\ are sup and inf,
/// t is the unit and f the point (MV: truncated operations, t = 1, f = 0).
inline Element evaluate(const Model& m, const Assignment& e, const Formula& x) {
  switch (x.kind()) {
    case Kind::Var: {
      auto it = e.find(x.var_index());
      if (it == e.end()) throw ModelError("variable p" + std::to_string(x.var_index()) + " unassigned");
      return it->second;
    }
    case Kind::ConstT: return m.top();
    case Kind::ConstF: return m.point();
    case Kind::Impl: return m.implies(evaluate(m, e, x.left()), evaluate(m, e, x.right()));
    case Kind::Fus: return m.fuse(evaluate(m, e, x.left()), evaluate(m, e, x.right()));
    case Kind::Join: return m.join(evaluate(m, e, x.left()), evaluate(m, e, x.right()));
    case Kind::Meet: return m.meet(evaluate(m, e, x.left()), evaluate(m, e, x.right()));
  }
  throw ModelError("unreachable formula kind");
}

inline bool is_designated(const Model& m, const Element& a) { return m.designated(a); }

/// True iff every premise is designated under `e` and the conclusion is not.
inline bool refutes(const Model& m, const Assignment& e, const Consecution& c) {
  for (const auto& p : c.premises)
    if (!m.designated(evaluate(m, e, p))) return false;
  return !m.designated(evaluate(m, e, c.conclusion));
}

/// The isomorphism x -> q*x between rational chains with points a and q*a.
inline Rational scale_iso(const Rational& q, const Rational& x) {
  if (q <= 0) throw ModelError("scale factor must be positive");
  return q * x;
}

/// Image of a rational chain under scale_iso.
inline Model scale_model(const Rational& q, const Model& m) {
  if (!m.is_rational_chain()) throw ModelError("scale_iso applies to rational chains");
  if (q <= 0) throw ModelError("scale factor must be positive");
  const auto& fac = m.factors()[0];
  if (!fac.point) return m;
  return Model::rational_chain(scale_iso(q, (*fac.point)[0]));
}

// --- Bounded counterexample search -----------------------------------------

namespace detail {

// Coordinate value order inside a shell: 0, 1, -1, 2, -2, ...
inline std::int64_t zigzag(std::int64_t i) { return (i % 2 == 1) ? (i + 1) / 2 : -(i / 2); }

}  // namespace detail

/// Enumerates assignments with integer coordinates in [-bound, bound], shell by shell
/// in increasing max-norm, returning the first refuting one. Finding nothing is not a
/// validity proof.
inline std::optional<Assignment> search_counterexample(const Model& m, const Consecution& c, std::uint64_t bound) {
  if (m.is_mv()) throw ModelError("bounded search needs an l-group model");
  if (contains_f(c) && !m.interprets_f()) throw ModelError("unpointed model cannot interpret f");
  auto vars = variables(c);
  const std::vector<std::size_t> var_list(vars.begin(), vars.end());
  const std::size_t width = m.dimension();
  const std::size_t dims = var_list.size() * width;

  std::vector<std::int64_t> coords(dims, 0);
  auto try_current = [&]() -> std::optional<Assignment> {
    Assignment e;
    for (std::size_t v = 0; v < var_list.size(); ++v) {
      Element el;
      el.coords.reserve(width);
      for (std::size_t k = 0; k < width; ++k) el.coords.emplace_back(coords[v * width + k]);
      e.emplace(var_list[v], std::move(el));
    }
    if (refutes(m, e, c)) return e;
    return std::nullopt;
  };

  if (auto hit = try_current()) return hit;  // shell 0
  const auto b = static_cast<std::int64_t>(bound);
  for (std::int64_t k = 1; k <= b && dims > 0; ++k) {
    // Shell k: pick the first coordinate with |value| = k, earlier ones strictly inside,
    // later ones anywhere in [-k, k]. Each shell tuple is visited exactly once.
    for (std::size_t pivot = 0; pivot < dims; ++pivot) {
      const std::size_t inner = 2 * static_cast<std::size_t>(k) - 1;  // values with |x| <= k-1
      const std::size_t outer = 2 * static_cast<std::size_t>(k) + 1;  // values with |x| <= k
      std::vector<std::size_t> digit(dims, 0);
      for (;;) {
        for (std::size_t i = 0; i < dims; ++i) {
          if (i == pivot) coords[i] = digit[i] == 0 ? k : -k;
          else coords[i] = detail::zigzag(static_cast<std::int64_t>(digit[i]));
        }
        if (auto hit = try_current()) return hit;
        // Odometer, last coordinate fastest.
        std::size_t i = dims;
        bool done = true;
        while (i-- > 0) {
          std::size_t radix = i < pivot ? inner : (i == pivot ? 2 : outer);
          if (++digit[i] < radix) {
            done = false;
            break;
          }
          digit[i] = 0;
        }
        if (done) break;
      }
    }
  }
  return std::nullopt;
}

// --- Strongly decreasing sequences ----------------------------------------

/// Each consecutive pair satisfies n*a_{i+1} >= a_i >= 2*a_{i+1} for some 4 <= n <= n_cap.
inline bool check_strongly_decreasing(const Model& m, const std::vector<Element>& prefix, std::uint64_t n_cap) {
  if (!m.is_chain()) throw ModelError("strongly decreasing sequences need a chain model");
  if (n_cap < 4) throw ModelError("n_cap must be at least 4");
  if (prefix.empty()) throw ModelError("sequence prefix must be nonempty");
  for (const auto& a : prefix) m.check_element(a);
  for (std::size_t i = 0; i + 1 < prefix.size(); ++i) {
    const Element& a = prefix[i];
    const Element& next = prefix[i + 1];
    if (!m.leq(m.times(2, next), a)) return false;
    // n*next is monotone in n, so one of the extreme multipliers is optimal.
    bool upper = m.leq(a, m.times(4, next)) || m.leq(a, m.times(Rational(Integer(n_cap)), next));
    if (!upper) return false;
  }
  return true;
}

/// (start, start/2, start/4, ...) in a rational chain.
inline std::vector<Element> build_sd_sequence(const Model& m, const Rational& start, std::size_t length) {
  if (!m.is_rational_chain()) throw ModelError("build_sd_sequence needs a rational chain");
  if (start <= 0) throw ModelError("start must be positive");
  if (length == 0) throw ModelError("length must be at least 1");
  std::vector<Element> out;
  Rational cur = start;
  for (std::size_t i = 0; i < length; ++i) {
    out.push_back(Element{{cur}});
    cur /= 2;
  }
  return out;
}

// --- Text forms ---------------------------------------------------------------

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits on `sep` at parenthesis depth 0.
inline std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == sep && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

inline std::string_view strip_parens(std::string_view s) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw ModelError("expected a parenthesized tuple: '" + std::string(s) + "'");
  return s.substr(1, s.size() - 2);
}

inline std::string_view strip_quotes(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) s = s.substr(1, s.size() - 2);
  return trim(s);
}

inline Rational rational_arg(std::string_view s) {
  try {
    return parse_rational(s);
  } catch (const std::invalid_argument& ex) {
    throw ModelError(ex.what());
  }
}

inline Model parse_factor(std::string_view s) {
  s = trim(s);
  std::string_view name = s;
  std::optional<std::string_view> point;
  if (auto at = s.find('@'); at != std::string_view::npos) {
    name = trim(s.substr(0, at));
    point = trim(s.substr(at + 1));
  }
  if (name == "MV") {
    if (point) throw ModelError("MV takes no point");
    return Model::mv_unit();
  }
  if (name == "Q") {
    if (!point) return Model::rational_chain();
    return Model::rational_chain(rational_arg(*point));
  }
  if (name == "Z") {
    if (!point) return Model::integer_chain();
    Rational p = rational_arg(*point);
    if (!is_integral(p)) throw ModelError("Z point must be an integer");
    return Model::integer_chain(numerator_of(p));
  }
  if (name == "ZxZ") {
    if (!point) return Model::lex_zz();
    auto parts = split_top(strip_parens(*point), ',');
    if (parts.size() != 2) throw ModelError("ZxZ point must be a pair");
    Rational a = rational_arg(parts[0]), b = rational_arg(parts[1]);
    if (!is_integral(a) || !is_integral(b)) throw ModelError("ZxZ point must be integral");
    return Model::lex_zz(std::pair{numerator_of(a), numerator_of(b)});
  }
  throw ModelError("unknown model '" + std::string(s) + "'");
}

inline void append_factor_element(const Factor& fac, std::string_view text, Element& out) {
  if (fac.kind == FactorKind::LexZZ) {
    auto parts = split_top(strip_parens(text), ',');
    if (parts.size() != 2) throw ModelError("ZxZ element must be a pair");
    out.coords.push_back(rational_arg(parts[0]));
    out.coords.push_back(rational_arg(parts[1]));
  } else {
    out.coords.push_back(rational_arg(text));
  }
}

inline std::optional<std::size_t> variable_index(std::string_view name) {
  if (name == "p") return 0;
  if (name == "q") return 1;
  if (name == "r") return 2;
  if (name == "s") return 3;
  if (name.size() > 1 && name[0] == 'p') {
    std::size_t idx = 0;
    for (char d : name.substr(1)) {
      if (!std::isdigit(static_cast<unsigned char>(d))) return std::nullopt;
      idx = idx * 10 + static_cast<std::size_t>(d - '0');
    }
    return idx;
  }
  return std::nullopt;
}

}  // namespace detail

/// Parses "Q", "Q@-1", "Q@a/b", "Z@n", "ZxZ@(m,n)", "MV", and products joined by " x ".
inline Model parse_model(std::string_view text) {
  std::vector<Model> parts;
  std::string_view rest = detail::trim(text);
  for (;;) {
    auto sep = rest.find(" x ");
    parts.push_back(detail::parse_factor(rest.substr(0, sep)));
    if (sep == std::string_view::npos) break;
    rest = rest.substr(sep + 3);
  }
  if (parts.size() == 1) return parts[0];
  return Model::product(parts);
}

/// Parses an element: "3/2" for chains, "(a,b)" for ZxZ, "(x1,...,xk)" for products.
inline Element parse_element(const Model& m, std::string_view text) {
  text = detail::strip_quotes(text);
  Element out;
  const auto& factors = m.factors();
  if (factors.size() == 1) {
    detail::append_factor_element(factors[0], text, out);
  } else {
    auto parts = detail::split_top(detail::strip_parens(text), ',');
    if (parts.size() != factors.size()) throw ModelError("product element needs one entry per factor");
    for (std::size_t i = 0; i < factors.size(); ++i) detail::append_factor_element(factors[i], parts[i], out);
  }
  m.check_element(out);
  return out;
}

/// Assignment text "p=3,q=1/2"; the optional f entry is returned separately.
struct ParsedAssignment {
  Assignment values;
  std::optional<Element> f_value;
};

inline ParsedAssignment parse_assignment(const Model& m, std::string_view text) {
  ParsedAssignment out;
  text = detail::trim(text);
  if (text.empty()) return out;
  for (auto item : detail::split_top(text, ',')) {
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ModelError("assignment entries look like name=value");
    auto name = detail::trim(item.substr(0, eq));
    Element value = parse_element(m, item.substr(eq + 1));
    if (name == "f") {
      out.f_value = std::move(value);
      continue;
    }
    auto idx = detail::variable_index(name);
    if (!idx) throw ModelError("unknown variable '" + std::string(name) + "'");
    out.values[*idx] = std::move(value);
  }
  return out;
}

inline std::string format_assignment(const Model& m, const Assignment& e) {
  std::string out;
  for (const auto& [v, el] : e) {
    if (!out.empty()) out += ", ";
    out += "p" + std::to_string(v) + "=" + m.format(el);
  }
  return out;
}

}  // namespace alwb

#endif  // ALWB_MODEL_HPP
