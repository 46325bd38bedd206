#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace influence {

/// Exact rational number used for every weight, threshold, propensity,
/// spend and budget in the library.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Thrown for malformed numeric literals and out-of-range values.
class ValueError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace detail

/// Parses "7", "-3", "0.25", "-1.5", ".5", "3/4" or "-3/4".
inline Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den))
      throw ValueError("malformed rational literal '" + std::string(text) + "'");
    Integer d{std::string(den)};
    if (d == 0) throw ValueError("zero denominator in '" + std::string(text) + "'");
    value = Rational(Integer(std::string(num)), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((!whole.empty() && !detail::all_digits(whole)) || !detail::all_digits(frac))
      throw ValueError("malformed decimal literal '" + std::string(text) + "'");
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer w = whole.empty() ? Integer(0) : Integer(std::string(whole));
    value = Rational(w * scale + Integer(std::string(frac)), scale);
  } else {
    if (!detail::all_digits(s))
      throw ValueError("malformed number '" + std::string(text) + "'");
    value = Rational(Integer(std::string(s)));
  }
  return negative ? Rational(-value) : value;
}

/// "3", "-1/2"; always in lowest terms.
inline std::string to_string(const Rational& r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Rational rational(long long num, long long den = 1) {
  return Rational(Integer(num), Integer(den));
}

}  // namespace influence
