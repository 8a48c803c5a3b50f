#pragma once

// Rational approximation of the map parameter alpha.
//
// alpha is held as a finite prefix [c0; c1, ..., cn] of an infinite
// continued fraction. Whatever the unknown tail is, alpha lies strictly
// between the last convergent p_n/q_n and the mediant
// (p_n + p_{n-1}) / (q_n + q_{n-1}), so every approximation claim below is
// decided with integer arithmetic on that open bracket. When the bracket
// is too wide to decide, PrecisionExhausted is thrown instead of guessing.

#include "skewtorus/errors.hpp"
#include "skewtorus/rational.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace skewtorus {

struct Convergent {
  BigInt p;
  BigInt q;

  Rational value() const { return make_rational(p, q); }
  friend bool operator==(const Convergent&, const Convergent&) = default;
};

// Open interval (lo, hi) known to contain alpha.
struct Bracket {
  Rational lo;
  Rational hi;

  // True when every point of the open bracket is strictly closer than
  // `radius` to `center`. The distance is convex along the bracket, so
  // checking both closed endpoints with <= is sufficient.
  bool strictly_within(const Rational& center, const Rational& radius) const {
    using boost::multiprecision::abs;
    return abs(lo - center) <= radius && abs(hi - center) <= radius;
  }
};

class IrrationalAlpha {
 public:
  static constexpr std::size_t kPresetTerms = 96;

  explicit IrrationalAlpha(std::vector<std::uint64_t> coefficients, std::string name = {})
      : coefficients_(std::move(coefficients)), name_(std::move(name)) {
    if (coefficients_.empty()) throw std::invalid_argument("continued fraction needs at least one coefficient");
    for (std::size_t i = 1; i < coefficients_.size(); ++i) {
      if (coefficients_[i] == 0)
        throw std::invalid_argument("continued fraction coefficients after the first must be >= 1");
    }
    if (coefficients_.size() == 1 && coefficients_[0] == 0)
      throw std::invalid_argument("alpha must be positive");
    if (name_.empty()) name_ = "cf:" + join_coefficients();
    build_convergents();
  }

  // (1 + sqrt 5) / 2 = [1; 1, 1, ...]
  static IrrationalAlpha golden(std::size_t terms = kPresetTerms) {
    return IrrationalAlpha(std::vector<std::uint64_t>(std::max<std::size_t>(terms, 1), 1), "golden");
  }

  // sqrt 2 = [1; 2, 2, ...]
  static IrrationalAlpha sqrt2(std::size_t terms = kPresetTerms) {
    std::vector<std::uint64_t> cf(std::max<std::size_t>(terms, 1), 2);
    cf[0] = 1;
    return IrrationalAlpha(std::move(cf), "sqrt2");
  }

  // Accepts "golden", "sqrt2" or "cf:c0,c1,...".
  static IrrationalAlpha parse(std::string_view text) {
    if (text == "golden") return golden();
    if (text == "sqrt2") return sqrt2();
    if (text.substr(0, 3) != "cf:")
      throw std::invalid_argument("unknown alpha '" + std::string(text) + "' (expected golden, sqrt2 or cf:c0,c1,...)");
    std::vector<std::uint64_t> cf;
    std::string_view rest = text.substr(3);
    while (true) {
      auto comma = rest.find(',');
      auto item = rest.substr(0, comma);
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
        throw std::invalid_argument("bad continued-fraction coefficient '" + std::string(item) + "'");
      cf.push_back(v);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return IrrationalAlpha(std::move(cf));
  }

  const std::vector<std::uint64_t>& coefficients() const { return coefficients_; }
  const std::string& name() const { return name_; }
  std::size_t size() const { return coefficients_.size(); }

  const std::vector<Convergent>& all_convergents() const { return convergents_; }

  Bracket bracket() const {
    const auto& last = convergents_.back();
    BigInt prev_p = convergents_.size() > 1 ? convergents_[convergents_.size() - 2].p : BigInt(1);
    BigInt prev_q = convergents_.size() > 1 ? convergents_[convergents_.size() - 2].q : BigInt(0);
    Rational a = last.value();
    Rational b = make_rational(last.p + prev_p, last.q + prev_q);
    return a < b ? Bracket{a, b} : Bracket{b, a};
  }

  // Floating value for the dynamics diagnostics only.
  double approx_value() const { return to_double(convergents_.back().value()); }

 private:
  std::string join_coefficients() const {
    std::string s;
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(coefficients_[i]);
    }
    return s;
  }

  void build_convergents() {
    BigInt p_prev2 = 0, q_prev2 = 1, p_prev1 = 1, q_prev1 = 0;
    convergents_.reserve(coefficients_.size());
    for (auto c : coefficients_) {
      BigInt p = BigInt(c) * p_prev1 + p_prev2;
      BigInt q = BigInt(c) * q_prev1 + q_prev2;
      convergents_.push_back({p, q});
      p_prev2 = std::exchange(p_prev1, p);
      q_prev2 = std::exchange(q_prev1, q);
    }
  }

  std::vector<std::uint64_t> coefficients_;
  std::string name_;
  std::vector<Convergent> convergents_;
};

// Pair (a_N, N) together with its spectral period gcd(a_N, N) and the
// number of copies N / gcd.
struct Approximant {
  std::int64_t numerator = 1;
  std::int64_t dimension = 1;
  std::int64_t period = 1;
  std::int64_t copies = 1;

  static Approximant from_pair(std::int64_t numerator, std::int64_t dimension) {
    if (numerator < 1 || dimension < 1)
      throw std::invalid_argument("approximant needs positive a and N");
    std::int64_t g = std::gcd(numerator, dimension);
    return {numerator, dimension, g, dimension / g};
  }

  Rational value() const { return make_rational(numerator, dimension); }
  friend bool operator==(const Approximant&, const Approximant&) = default;
};

// Exact check of |alpha - a/N| < 1/(2N) against the bracket of alpha.
inline bool satisfies_approximant_condition(const IrrationalAlpha& alpha, const Approximant& app) {
  return alpha.bracket().strictly_within(app.value(), make_rational(1, 2 * BigInt(app.dimension)));
}

// The unique a with |alpha - a/N| < 1/(2N), i.e. the integer nearest to N*alpha.
inline Approximant nearest_approximant(const IrrationalAlpha& alpha, std::int64_t dimension) {
  if (dimension < 1) throw std::invalid_argument("N must be positive");
  const Bracket b = alpha.bracket();
  const Rational half(1, 2);
  const Rational lo = b.lo * dimension;
  const Rational hi = b.hi * dimension;
  const BigInt a = floor(lo + half);
  // N*alpha lies in the open interval (lo, hi); the nearest integer is
  // decided only if no half-integer falls strictly inside it.
  if (Rational(a) - half > lo || hi > Rational(a) + half) {
    throw PrecisionExhausted("continued-fraction prefix of " + alpha.name() + " (" +
                             std::to_string(alpha.size()) + " terms) cannot decide the approximant for N=" +
                             std::to_string(dimension));
  }
  if (a < 1) throw std::domain_error("alpha*N rounds to zero; no positive approximant for N=" + std::to_string(dimension));
  return Approximant::from_pair(to_int64(a), dimension);
}

// First `count` convergents p_k/q_k. Each is checked to satisfy
// |alpha - p/q| < 1/q^2 exactly.
inline std::vector<Convergent> convergents(const IrrationalAlpha& alpha, std::size_t count) {
  if (count > alpha.size())
    throw PrecisionExhausted("requested " + std::to_string(count) + " convergents but " + alpha.name() +
                             " only has " + std::to_string(alpha.size()) + " coefficients");
  const Bracket b = alpha.bracket();
  std::vector<Convergent> out(alpha.all_convergents().begin(), alpha.all_convergents().begin() + count);
  for (const auto& c : out) {
    if (!b.strictly_within(c.value(), make_rational(1, c.q * c.q)))
      throw std::logic_error("convergent " + c.p.str() + "/" + c.q.str() + " fails |alpha - p/q| < 1/q^2");
  }
  return out;
}

// `count` approximants with gcd(a, N) = period, obtained as
// (period * p, period * q) from convergents with q >= 2 * period. The
// approximant condition is re-verified exactly for every pair.
inline std::vector<Approximant> approximants_with_gcd(const IrrationalAlpha& alpha, std::int64_t period,
                                                      std::size_t count) {
  if (period < 1) throw std::invalid_argument("period D must be positive");
  std::vector<Approximant> out;
  if (count == 0) return out;
  const Bracket b = alpha.bracket();
  for (const auto& c : alpha.all_convergents()) {
    if (c.q < 2 * BigInt(period)) continue;
    if (c.p < 1) continue;
    // |alpha - p/q| < 1/(2 D q)
    if (!b.strictly_within(c.value(), make_rational(1, 2 * BigInt(period) * c.q))) continue;
    auto app = Approximant::from_pair(to_int64(c.p * period), to_int64(c.q * period));
    if (app.period != period) throw std::logic_error("scaled convergent has unexpected gcd");
    out.push_back(app);
    if (out.size() == count) return out;
  }
  throw PrecisionExhausted("only " + std::to_string(out.size()) + " of " + std::to_string(count) +
                           " approximants with gcd " + std::to_string(period) + " available from " + alpha.name());
}

}  // namespace skewtorus
