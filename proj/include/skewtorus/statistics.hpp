#pragma once

// Level-spacing distribution and number variance.
//
// Three routes are provided and checked against each other in the tests:
//  * exact evaluation on a spectrum (rational arithmetic, no tolerance),
//  * the Fourier series weighted by squared quadratic Gauss sums,
//  * closed forms for D in {1, 2, 3, 6}.
//
// The closed forms use F(x) = {x} - {x}^2. This is the value forced by the
// defining window integral (a rigid unit-spaced spectrum has variance 1/4
// at L = 1/2); the variant {x} + {x}^2 is inconsistent with it.

#include "skewtorus/diophantine.hpp"
#include "skewtorus/errors.hpp"
#include "skewtorus/rational.hpp"
#include "skewtorus/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace skewtorus {

// ---------------------------------------------------------------------------
// Level spacings

enum class SpacingSource { empirical, closed_form };

struct SpacingAtom {
  Rational spacing;
  Rational weight;
  friend bool operator==(const SpacingAtom&, const SpacingAtom&) = default;
};

// Discrete law of nearest-neighbour spacings: distinct sorted spacing
// values, weights summing to exactly one.
struct SpacingDistribution {
  std::vector<SpacingAtom> atoms;
  SpacingSource source = SpacingSource::empirical;

  // Same law, regardless of where it came from.
  bool same_law(const SpacingDistribution& other) const { return atoms == other.atoms; }
};

namespace detail {

inline SpacingDistribution aggregate(const std::map<Rational, std::int64_t>& counts, std::int64_t total,
                                     SpacingSource source) {
  SpacingDistribution dist{{}, source};
  for (const auto& [s, c] : counts) dist.atoms.push_back({s, make_rational(c, total)});
  return dist;
}

}  // namespace detail

// Circular spacings on the period-N circle: consecutive differences of the
// sorted phases, closed by phi_0 + N - phi_{N-1}.
inline SpacingDistribution spacings(const Spectrum& spec) {
  if (spec.phases.empty()) throw std::invalid_argument("spacings of an empty spectrum");
  const auto n = static_cast<std::int64_t>(spec.phases.size());
  std::map<Rational, std::int64_t> counts;
  for (std::size_t i = 0; i + 1 < spec.phases.size(); ++i)
    ++counts[spec.phases[i + 1].value - spec.phases[i].value];
  ++counts[spec.phases.front().value + Rational(spec.dimension()) - spec.phases.back().value];
  return detail::aggregate(counts, n, SpacingSource::empirical);
}

inline SpacingDistribution spacing_distribution_closed(std::int64_t period) {
  switch (period) {
    case 1:
    case 2:
      return {{{Rational(1), Rational(1)}}, SpacingSource::closed_form};
    case 3:
      return {{{Rational(0), Rational(1, 3)}, {Rational(1), Rational(1, 3)}, {Rational(2), Rational(1, 3)}},
              SpacingSource::closed_form};
    default:
      throw UnsupportedPeriod("no closed-form spacing law for D=" + std::to_string(period));
  }
}

// CSV "s_numerator,s_denominator,weight"; weight is written as an exact fraction.
inline void write_spacing_csv(std::ostream& out, const SpacingDistribution& dist) {
  out << "s_numerator,s_denominator,weight\n";
  for (const auto& atom : dist.atoms)
    out << numerator_of(atom.spacing) << ',' << denominator_of(atom.spacing) << ',' << to_string(atom.weight)
        << '\n';
}

// ---------------------------------------------------------------------------
// Counting function and exact number variance

namespace detail {

// Levels of the periodically continued multiset lying in [0, phi).
// `levels` is sorted and contained in [0, period).
inline BigInt count_below(const std::vector<Rational>& levels, const Rational& period, const Rational& phi) {
  const BigInt wraps = floor(phi / period);
  const Rational rest = phi - period * Rational(wraps);
  const auto below = std::lower_bound(levels.begin(), levels.end(), rest) - levels.begin();
  return wraps * static_cast<std::int64_t>(levels.size()) + below;
}

// (1/P) * integral_0^P (n(phi + L) - n(phi) - L)^2 dphi for a P-periodic
// multiset; the integrand is constant between breakpoints, so this is an
// exact finite sum. The mean density must be one (levels.size() == P).
inline Rational window_variance(const std::vector<Rational>& levels, const Rational& period, const Rational& width) {
  std::vector<Rational> cuts;
  cuts.reserve(2 * levels.size() + 2);
  cuts.push_back(Rational(0));
  for (const auto& x : levels) {
    cuts.push_back(x);
    cuts.push_back(mod(x - width, period));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(period);

  Rational total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational length = cuts[i + 1] - cuts[i];
    const Rational mid = (cuts[i] + cuts[i + 1]) / 2;
    const Rational deviation =
        Rational(count_below(levels, period, mid + width) - count_below(levels, period, mid)) - width;
    total += length * deviation * deviation;
  }
  return total / period;
}

}  // namespace detail

// Number of levels in [0, phi) of the N-periodically extended spectrum.
inline BigInt counting_function(const Spectrum& spec, const Rational& phi) {
  return detail::count_below(spec.values(), Rational(spec.dimension()), phi);
}

inline Rational number_variance_direct(const Spectrum& spec, const Rational& width) {
  if (width < 0) throw std::invalid_argument("L must be non-negative");
  if (spec.phases.empty()) throw std::invalid_argument("number variance of an empty spectrum");
  return detail::window_variance(spec.values(), Rational(spec.dimension()), width);
}

// ---------------------------------------------------------------------------
// Gauss sums and the Fourier route

// S_D(k) = sum_{eta=1..D} exp(-2 pi i k eta^2 / D), with k eta^2 reduced mod D.
inline std::complex<double> gauss_sum(std::int64_t period, std::int64_t k) {
  if (period < 1) throw std::invalid_argument("period D must be positive");
  const std::int64_t kr = ((k % period) + period) % period;
  std::complex<double> sum{0.0, 0.0};
  for (std::int64_t eta = 1; eta <= period; ++eta) {
    const std::int64_t e = (kr * eta % period) * eta % period;
    sum += std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(period));
  }
  return sum;
}

// |S_D(k)|^2 in closed form. With g = gcd(k, D) and D' = D/g it equals
// g D for odd D', 0 for D' = 2 mod 4 and 2 g D for D' = 0 mod 4.
inline std::int64_t gauss_sum_norm_squared(std::int64_t period, std::int64_t k) {
  if (period < 1) throw std::invalid_argument("period D must be positive");
  const std::int64_t g = std::gcd(((k % period) + period) % period, period);
  const std::int64_t reduced = period / g;
  if (reduced % 2 == 1) return g * period;
  if (reduced % 4 == 2) return 0;
  return 2 * g * period;
}

struct FourierEstimate {
  double value = 0.0;
  double truncation_bound = 0.0;  // |value - exact| <= truncation_bound
};

// (2/pi^2) sum_{k=1..K} sin^2(k pi L / D) |S_D(k)|^2 / k^2.
// The tail is bounded with |S_D|^2 <= D^2, sin^2 <= 1 and
// sum_{k>K} 1/k^2 < 1/(K + 1/2).
inline FourierEstimate number_variance_fourier(std::int64_t period, double width, std::int64_t terms) {
  if (period < 1) throw std::invalid_argument("period D must be positive");
  if (terms < 1) throw std::invalid_argument("truncation order K must be positive");
  std::vector<double> weight(static_cast<std::size_t>(period));
  for (std::int64_t r = 0; r < period; ++r)
    weight[static_cast<std::size_t>(r)] = static_cast<double>(gauss_sum_norm_squared(period, r));

  const double d = static_cast<double>(period);
  double sum = 0.0;
  // Fixed order, smallest terms first.
  for (std::int64_t k = terms; k >= 1; --k) {
    const double w = weight[static_cast<std::size_t>(k % period)];
    if (w == 0.0) continue;
    const double x = static_cast<double>(k) * width / d;
    const double s = std::sin(std::numbers::pi * (x - std::floor(x)));
    const double kd = static_cast<double>(k);
    sum += w * s * s / (kd * kd);
  }
  const double scale = 2.0 / (std::numbers::pi * std::numbers::pi);
  return {scale * sum, scale * d * d / (static_cast<double>(terms) + 0.5)};
}

// ---------------------------------------------------------------------------
// Closed forms

inline bool has_closed_number_variance(std::int64_t period) {
  return period == 1 || period == 2 || period == 3 || period == 6;
}

// D in {1,2}: F(L).  D in {3,6}: -8/9 + 5F(L/3) + 2F((L-2)/3) + 2F((L+2)/3).
inline Rational number_variance_closed(std::int64_t period, const Rational& width) {
  auto f = [](const Rational& x) {
    const Rational t = frac(x);
    return Rational(t - t * t);
  };
  switch (period) {
    case 1:
    case 2:
      return f(width);
    case 3:
    case 6:
      return Rational(-8, 9) + 5 * f(width / 3) + 2 * f((width - 2) / 3) + 2 * f((width + 2) / 3);
    default:
      throw UnsupportedPeriod("no closed-form number variance for D=" + std::to_string(period));
  }
}

inline double number_variance_closed(std::int64_t period, double width) {
  auto f = [](double x) {
    const double t = x - std::floor(x);
    return t - t * t;
  };
  switch (period) {
    case 1:
    case 2:
      return f(width);
    case 3:
    case 6:
      return -8.0 / 9.0 + 5.0 * f(width / 3.0) + 2.0 * f((width - 2.0) / 3.0) + 2.0 * f((width + 2.0) / 3.0);
    default:
      throw UnsupportedPeriod("no closed-form number variance for D=" + std::to_string(period));
  }
}

// ---------------------------------------------------------------------------
// Curves

enum class VarianceMethod { direct_exact, fourier, closed_form };

struct CurveSample {
  Rational width;
  double value = 0.0;
  std::optional<Rational> exact;  // set for direct and closed-form samples
};

struct NumberVarianceCurve {
  VarianceMethod method = VarianceMethod::closed_form;
  std::int64_t period = 1;
  std::int64_t terms = 0;  // Fourier truncation order
  std::optional<double> truncation_bound;
  std::vector<CurveSample> samples;

  std::string method_tag() const {
    switch (method) {
      case VarianceMethod::direct_exact:
        return "direct-exact";
      case VarianceMethod::fourier:
        return "fourier(" + std::to_string(terms) + ")";
      case VarianceMethod::closed_form:
        return "closed-form";
    }
    return "unknown";
  }
};

inline NumberVarianceCurve curve_direct(const Spectrum& spec, const std::vector<Rational>& grid) {
  NumberVarianceCurve curve{VarianceMethod::direct_exact, spec.approximant.period, 0, std::nullopt, {}};
  const auto levels = spec.values();
  const Rational period(spec.dimension());
  for (const auto& width : grid) {
    if (width < 0) throw std::invalid_argument("L must be non-negative");
    Rational v = detail::window_variance(levels, period, width);
    curve.samples.push_back({width, to_double(v), v});
  }
  return curve;
}

inline NumberVarianceCurve curve_closed(std::int64_t period, const std::vector<Rational>& grid) {
  if (!has_closed_number_variance(period))
    throw UnsupportedPeriod("no closed-form number variance for D=" + std::to_string(period));
  NumberVarianceCurve curve{VarianceMethod::closed_form, period, 0, std::nullopt, {}};
  for (const auto& width : grid) {
    Rational v = number_variance_closed(period, width);
    curve.samples.push_back({width, to_double(v), v});
  }
  return curve;
}

inline NumberVarianceCurve curve_fourier(std::int64_t period, const std::vector<Rational>& grid, std::int64_t terms) {
  NumberVarianceCurve curve{VarianceMethod::fourier, period, terms, std::nullopt, {}};
  double bound = 0.0;
  for (const auto& width : grid) {
    auto est = number_variance_fourier(period, to_double(width), terms);
    bound = est.truncation_bound;
    curve.samples.push_back({width, est.value, std::nullopt});
  }
  curve.truncation_bound = grid.empty() ? number_variance_fourier(period, 0.0, terms).truncation_bound : bound;
  return curve;
}

// CSV "L,value,method,D,truncation_bound"; the bound column is empty for exact methods.
inline void write_curve_csv(std::ostream& out, const NumberVarianceCurve& curve, bool header = true) {
  const auto old_precision = out.precision(17);
  if (header) out << "L,value,method,D,truncation_bound\n";
  for (const auto& s : curve.samples) {
    out << to_double(s.width) << ',' << s.value << ',' << curve.method_tag() << ',' << curve.period << ',';
    if (curve.truncation_bound) out << *curve.truncation_bound;
    out << '\n';
  }
  out.precision(old_precision);
}

// ---------------------------------------------------------------------------
// Non-existence of a limit law

struct WitnessFamily {
  std::int64_t period = 1;
  std::vector<Approximant> approximants;
  std::vector<SpacingDistribution> laws;
  std::vector<Rational> variance_at_one;  // exact Sigma^2(L = 1) per member

  // Every member has the same spacing law and the same variance at L = 1.
  bool constant() const {
    for (std::size_t i = 1; i < laws.size(); ++i) {
      if (!laws[i].same_law(laws[0]) || variance_at_one[i] != variance_at_one[0]) return false;
    }
    return true;
  }
};

// Two approximant families of alpha with D = 1 and D = 3. Each family has a
// constant spacing law, and the two laws differ, so the sequence of laws
// along all N has at least two accumulation points.
struct DivergenceWitness {
  WitnessFamily rigid;   // D = 1
  WitnessFamily triple;  // D = 3

  bool empty() const { return rigid.approximants.empty() && triple.approximants.empty(); }
  bool laws_differ() const {
    if (rigid.laws.empty() || triple.laws.empty()) return false;
    return !rigid.laws[0].same_law(triple.laws[0]) && rigid.variance_at_one[0] != triple.variance_at_one[0];
  }
};

inline WitnessFamily witness_family(const IrrationalAlpha& alpha, std::int64_t period, std::size_t count) {
  WitnessFamily family{period, approximants_with_gcd(alpha, period, count), {}, {}};
  for (const auto& app : family.approximants) {
    const auto spec = eigenphases(app);
    family.laws.push_back(spacings(spec));
    family.variance_at_one.push_back(number_variance_direct(spec, Rational(1)));
  }
  return family;
}

inline DivergenceWitness divergence_witness(const IrrationalAlpha& alpha, std::size_t count) {
  return {witness_family(alpha, 1, count), witness_family(alpha, 3, count)};
}

}  // namespace skewtorus
