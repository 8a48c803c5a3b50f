#pragma once

// Exact arithmetic helpers on top of Boost.Multiprecision.
//
// Every quantity on the analytic side (eigenphases, spacings, window
// counts, number variance) is a rational number; keeping it exact means
// the closed forms can be compared with `==` instead of a tolerance.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace skewtorus {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& x) { return boost::multiprecision::numerator(x); }
inline BigInt denominator_of(const Rational& x) { return boost::multiprecision::denominator(x); }

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  return Rational(num, den);
}

// Floor division with a positive divisor.
inline BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  if (num % den != 0 && ((num < 0) != (den < 0))) --q;
  return q;
}

inline BigInt floor(const Rational& x) { return floor_div(numerator_of(x), denominator_of(x)); }

// Fractional part {x} = x - floor(x), always in [0, 1).
inline Rational frac(const Rational& x) { return x - Rational(floor(x)); }

// Representative of x modulo m in [0, m). m must be positive.
inline Rational mod(const Rational& x, const Rational& m) {
  return x - m * Rational(floor(x / m));
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline std::int64_t to_int64(const BigInt& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer does not fit in 64 bits: " + x.str());
  return x.convert_to<std::int64_t>();
}

// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& x) {
  auto d = denominator_of(x);
  if (d == 1) return numerator_of(x).str();
  return numerator_of(x).str() + "/" + d.str();
}

// Parses "3", "-7/4" or a finite decimal such as "0.125" exactly.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { return std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();

  auto parse_int = [&](std::string_view s) {
    std::size_t i = 0;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
      negative = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) throw fail();
    BigInt v = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw fail();
      v = v * 10 + (s[i] - '0');
    }
    return negative ? BigInt(-v) : v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw fail();
    return make_rational(parse_int(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto digits = text.substr(dot + 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos) throw fail();
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole == "-" || whole == "+" || whole.empty()) whole = "0";
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits.size()));
    BigInt w = boost::multiprecision::abs(parse_int(whole));
    Rational r = Rational(w) + make_rational(parse_int(digits), scale);
    return negative ? Rational(-r) : r;
  }
  return Rational(parse_int(text));
}

}  // namespace skewtorus
