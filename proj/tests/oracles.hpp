#pragma once

// Test-only reference computations. Each one takes a different path from
// the library code it checks: high-precision decimals instead of continued
// fractions, linear scans on a fine lattice instead of breakpoint sweeps,
// unreduced long-double exponentials instead of modular reduction.

#include "skewtorus/rational.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

namespace oracle {

using skewtorus::BigInt;
using skewtorus::Rational;

// 50-digit decimal expansions.
inline Rational golden_decimal() {
  return skewtorus::parse_rational("1.61803398874989484820458683436563811772030917980576");
}
inline Rational sqrt2_decimal() {
  return skewtorus::parse_rational("1.41421356237309504880168872420969807856967187537694");
}

// round(N * alpha) from a decimal approximation accurate to 1e-50.
inline BigInt nearest_integer(const Rational& alpha, std::int64_t n) {
  return skewtorus::floor(alpha * n + Rational(1, 2));
}

// |S_D(k)| by summing unreduced phases in long double.
inline std::complex<long double> gauss_sum_brute(std::int64_t d, std::int64_t k) {
  std::complex<long double> s{0.0L, 0.0L};
  const long double pi = std::numbers::pi_v<long double>;
  for (std::int64_t eta = 1; eta <= d; ++eta) {
    long double angle = -2.0L * pi * static_cast<long double>(k) * static_cast<long double>(eta * eta) /
                        static_cast<long double>(d);
    s += std::polar(1.0L, angle);
  }
  return s;
}

// Levels of the P-periodic extension in the half-open window [x, x + w),
// by linear scan over the periods that can intersect it.
inline std::int64_t window_count(const std::vector<Rational>& levels, const Rational& period, const Rational& x,
                                 const Rational& w) {
  std::int64_t count = 0;
  const BigInt first = skewtorus::floor(x / period) - 1;
  const BigInt last = skewtorus::floor((x + w) / period) + 1;
  for (BigInt shift = first; shift <= last; ++shift) {
    for (const auto& v : levels) {
      Rational y = v + period * Rational(shift);
      if (y >= x && y < x + w) ++count;
    }
  }
  return count;
}

// Number variance by midpoint sampling of every cell of a lattice that
// contains all breakpoints. `lattice` must be a multiple of every level
// denominator and of the denominator of w.
inline Rational number_variance_lattice(const std::vector<Rational>& levels, const Rational& period,
                                        const Rational& w, std::int64_t lattice) {
  const std::int64_t cells = skewtorus::to_int64(skewtorus::numerator_of(period * lattice));
  Rational total = 0;
  for (std::int64_t c = 0; c < cells; ++c) {
    Rational mid = Rational(2 * c + 1, 2 * lattice);
    Rational dev = Rational(window_count(levels, period, mid, w)) - w;
    total += dev * dev;
  }
  return total / lattice / period;
}

inline std::int64_t lcm_of_denominators(const std::vector<Rational>& xs) {
  std::int64_t l = 1;
  for (const auto& x : xs) l = std::lcm(l, skewtorus::to_int64(skewtorus::denominator_of(x)));
  return l;
}

// (2/pi^2) sum_{k<=K} sin^2(k pi x) / k^2 in long double; converges to {x} - {x}^2.
inline long double rigid_series(long double x, std::int64_t terms) {
  const long double pi = std::numbers::pi_v<long double>;
  long double s = 0.0L;
  for (std::int64_t k = terms; k >= 1; --k) {
    long double v = std::sin(static_cast<long double>(k) * pi * x);
    s += v * v / (static_cast<long double>(k) * static_cast<long double>(k));
  }
  return 2.0L / (pi * pi) * s;
}

}  // namespace oracle
