#ifndef ALWB_RATIONAL_HPP
#define ALWB_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace alwb {

// Arbitrary-precision rational, always kept in lowest terms by GMP.
// Expression templates are disabled so `auto` captures values.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rational& q) { return denominator_of(q) == 1; }

// Largest integer <= q.
inline Integer floor_of(const Rational& q) {
  Integer n = numerator_of(q);
  Integer d = denominator_of(q);
  Integer quot = n / d;  // truncates toward zero
  if (n < 0 && quot * d != n) quot -= 1;
  return quot;
}

/// Prints `a` for integers and `a/b` in lowest terms otherwise.
inline std::string to_string(const Rational& q) {
  if (is_integral(q)) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

/// Parses `[-]a` or `[-]a/b` with decimal digits. Throws std::invalid_argument.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [&](std::string_view s) {
    s = trim(s);
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j])))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return Integer(digits);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer num = parse_int(text.substr(0, slash));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

/// One end of an interval; absent value means unbounded.
struct Bound {
  std::optional<Rational> value;
  bool closed = false;

  static Bound unbounded() { return {}; }
  static Bound at(Rational v, bool closed) { return {std::move(v), closed}; }
};

namespace detail {

// Simplest rational in the positive interval (lo, hi) with given closedness, lo > 0 or
// lo == 0 open. hi may be unbounded. Continued-fraction descent of the Stern-Brocot tree.
inline Rational simplest_positive(Rational lo, bool lo_closed, std::optional<Rational> hi,
                                  bool hi_closed) {
  Integer n = floor_of(lo);
  if (is_integral(lo) && lo_closed && lo > 0) return lo;
  Rational candidate(n + 1);
  if (!hi || candidate < *hi || (candidate == *hi && hi_closed)) return candidate;
  // The interval sits inside [n, n+1]; recurse on the reciprocal of the fractional part.
  Rational shifted_hi = *hi - Rational(n);
  Rational shifted_lo = lo - Rational(n);
  Rational new_lo = Rational(1) / shifted_hi;
  std::optional<Rational> new_hi;
  if (shifted_lo > 0) new_hi = Rational(1) / shifted_lo;
  Rational y = simplest_positive(new_lo, hi_closed, new_hi, lo_closed);
  return Rational(n) + Rational(1) / y;
}

}  // namespace detail

/// Simplest rational (smallest denominator, then smallest magnitude) in the interval
/// described by `lo` and `hi`. Returns nullopt if the interval is empty.
inline std::optional<Rational> simplest_in(const Bound& lo, const Bound& hi) {
  if (lo.value && hi.value) {
    if (*lo.value > *hi.value) return std::nullopt;
    if (*lo.value == *hi.value) {
      if (lo.closed && hi.closed) return *lo.value;
      return std::nullopt;
    }
  }
  auto above_zero = [&] { return lo.value && (*lo.value > 0 || (*lo.value == 0 && !lo.closed)); };
  auto below_zero = [&] { return hi.value && (*hi.value < 0 || (*hi.value == 0 && !hi.closed)); };
  if (!above_zero() && !below_zero()) return Rational(0);
  if (above_zero()) return detail::simplest_positive(*lo.value, lo.closed, hi.value, hi.closed);
  std::optional<Rational> neg_hi;
  if (lo.value) neg_hi = -*lo.value;
  return -detail::simplest_positive(-*hi.value, hi.closed, neg_hi, lo.closed);
}

}  // namespace alwb

#endif  // ALWB_RATIONAL_HPP
