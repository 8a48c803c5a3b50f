#pragma once

// Composite workflows used by the command-line tool: L grids, the
// number-variance figure for D = 1, 2, 3, 6, 8, 9 and the cross-method
// verification report.

#include "skewtorus/diophantine.hpp"
#include "skewtorus/errors.hpp"
#include "skewtorus/propagator.hpp"
#include "skewtorus/rational.hpp"
#include "skewtorus/spectrum.hpp"
#include "skewtorus/statistics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace skewtorus {

// Either a single width ("0.5", "1/3") or an inclusive grid "min:max:steps".
struct WidthGrid {
  Rational min = 0;
  Rational max = 0;
  std::int64_t steps = 1;

  std::vector<Rational> points() const {
    std::vector<Rational> pts;
    pts.reserve(static_cast<std::size_t>(steps));
    if (steps == 1) {
      pts.push_back(min);
      return pts;
    }
    const Rational h = (max - min) / (steps - 1);
    for (std::int64_t i = 0; i < steps; ++i) pts.push_back(min + h * i);
    return pts;
  }
};

inline WidthGrid parse_grid(std::string_view text) {
  auto rational = [&](std::string_view s) {
    try {
      return parse_rational(s);
    } catch (const std::invalid_argument&) {
      throw InvalidGrid("bad L value '" + std::string(s) + "' in '" + std::string(text) + "'");
    }
  };
  const auto first = text.find(':');
  if (first == std::string_view::npos) {
    Rational x = rational(text);
    if (x < 0) throw InvalidGrid("L must be non-negative");
    return {x, x, 1};
  }
  const auto second = text.find(':', first + 1);
  if (second == std::string_view::npos) throw InvalidGrid("expected min:max:steps, got '" + std::string(text) + "'");
  WidthGrid grid{rational(text.substr(0, first)), rational(text.substr(first + 1, second - first - 1)), 0};
  const auto steps_text = text.substr(second + 1);
  auto [ptr, ec] = std::from_chars(steps_text.data(), steps_text.data() + steps_text.size(), grid.steps);
  if (steps_text.empty() || ec != std::errc{} || ptr != steps_text.data() + steps_text.size())
    throw InvalidGrid("bad step count '" + std::string(steps_text) + "'");
  if (grid.steps < 2) throw InvalidGrid("grid needs at least two steps");
  if (grid.min < 0) throw InvalidGrid("grid minimum must be non-negative");
  if (!(grid.max > grid.min)) throw InvalidGrid("grid maximum must exceed the minimum");
  return grid;
}

// ---------------------------------------------------------------------------
// Figure: Sigma^2_D(L) for D = 1, 2, 3, 6, 8, 9

struct FigureOptions {
  WidthGrid grid{Rational(0), Rational(9), 361};
  std::int64_t terms = 10000;
  std::vector<std::int64_t> periods{1, 2, 3, 6, 8, 9};
};

// Exact direct sweep on a real spectrum compared with the Fourier value.
struct SpotCheck {
  std::int64_t period = 1;
  Approximant approximant;
  Rational width;
  Rational exact;
  double fourier = 0.0;
  double bound = 0.0;

  bool passed() const { return std::abs(fourier - to_double(exact)) <= bound; }
};

struct Figure {
  std::vector<Rational> grid;
  std::vector<NumberVarianceCurve> curves;
  std::vector<SpotCheck> spot_checks;

  const NumberVarianceCurve& curve(std::int64_t period) const {
    for (const auto& c : curves)
      if (c.period == period) return c;
    throw std::out_of_range("figure has no curve for D=" + std::to_string(period));
  }
};

// Closed forms where they exist, Fourier series otherwise. Fourier curves
// get spot checks against exact sweeps of an approximant spectrum of alpha.
inline Figure figure1(const IrrationalAlpha& alpha, const FigureOptions& options = {}) {
  Figure fig{options.grid.points(), {}, {}};
  for (auto d : options.periods) {
    if (has_closed_number_variance(d)) {
      fig.curves.push_back(curve_closed(d, fig.grid));
      continue;
    }
    fig.curves.push_back(curve_fourier(d, fig.grid, options.terms));
    const auto app = approximants_with_gcd(alpha, d, 1).front();
    const auto spec = eigenphases(app);
    for (const Rational& width : {Rational(1, 2), Rational(1), Rational(d, 2), Rational(2 * d + 1, 4)}) {
      const auto est = number_variance_fourier(d, to_double(width), options.terms);
      fig.spot_checks.push_back({d, app, width, number_variance_direct(spec, width), est.value, est.truncation_bound});
    }
  }
  return fig;
}

// Wide CSV: "L,D1_closed-form,...,D8_fourier(10000),...,D8_bound,...".
inline void write_figure_csv(std::ostream& out, const Figure& fig) {
  const auto old_precision = out.precision(17);
  out << 'L';
  for (const auto& c : fig.curves) out << ",D" << c.period << '_' << c.method_tag();
  for (const auto& c : fig.curves)
    if (c.truncation_bound) out << ",D" << c.period << "_bound";
  out << '\n';
  for (std::size_t i = 0; i < fig.grid.size(); ++i) {
    out << to_double(fig.grid[i]);
    for (const auto& c : fig.curves) out << ',' << c.samples[i].value;
    for (const auto& c : fig.curves)
      if (c.truncation_bound) out << ',' << *c.truncation_bound;
    out << '\n';
  }
  out.precision(old_precision);
}

// ---------------------------------------------------------------------------
// Cross-method verification

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  bool skipped = false;
  std::string detail;
};

struct VerifyReport {
  Approximant approximant;
  std::vector<Check> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
};

struct VerifyOptions {
  std::int64_t max_dimension = 256;
  std::int64_t terms = 10000;
};

inline VerifyReport verify(const Approximant& app, const VerifyOptions& options = {}) {
  const std::int64_t n = app.dimension;
  const double dn = static_cast<double>(n);
  VerifyReport report{app, {}};
  if (n > options.max_dimension)
    throw std::length_error("N=" + std::to_string(n) + " exceeds the verification limit " +
                            std::to_string(options.max_dimension));

  const auto u = build_propagator(app, {options.max_dimension});
  const auto spec = eigenphases(app);
  {
    const double tol = 1e-12 * std::max(1.0, dn / 256.0);
    const double defect = unitarity_defect(u);
    report.checks.push_back({"unitarity", defect, tol, defect < tol, false, "max |U U^+ - I|"});
  }

  const auto numeric = trace_powers_numeric(u, 2 * n);
  {
    double worst = 0.0;
    std::int64_t zeros = 0;
    for (std::int64_t p = 1; p <= 2 * n; ++p) {
      const auto analytic = trace_power_analytic(app, p);
      if (analytic == Complex(0.0, 0.0)) ++zeros;
      worst = std::max(worst, std::abs(numeric[static_cast<std::size_t>(p - 1)] - analytic));
    }
    const double tol = 1e-9 * dn;
    report.checks.push_back({"trace_analytic_vs_numeric", worst, tol, worst < tol, false,
                             "n=1.." + std::to_string(2 * n) + ", " + std::to_string(zeros) + " exact zeros"});
  }
  {
    double worst = 0.0;
    for (std::int64_t p = 1; p <= n; ++p) {
      Complex power_sum{0.0, 0.0};
      for (const auto& phase : spec.phases) power_sum += detail::unit_phase(phase.value * p / n);
      worst = std::max(worst, std::abs(power_sum - numeric[static_cast<std::size_t>(p - 1)]));
    }
    const double tol = 1e-8 * dn;
    report.checks.push_back({"spectrum_power_sums", worst, tol, worst < tol, false, "n=1.." + std::to_string(n)});
  }

  const auto empirical = spacings(spec);
  if (app.period <= 3) {
    const bool same = empirical.same_law(spacing_distribution_closed(app.period));
    report.checks.push_back({"spacing_closed_vs_empirical", same ? 0.0 : 1.0, 0.0, same, false, "exact atom sets"});
  } else {
    report.checks.push_back({"spacing_closed_vs_empirical", 0.0, 0.0, true, true,
                             "no closed-form spacing law for D=" + std::to_string(app.period)});
  }

  std::vector<Rational> widths;
  for (std::int64_t i = 0; i <= 8 * app.period; ++i) widths.push_back(Rational(i, 4));
  const auto direct = curve_direct(spec, widths);

  if (has_closed_number_variance(app.period)) {
    double worst = 0.0;
    bool exact = true;
    for (const auto& s : direct.samples) {
      const Rational closed = number_variance_closed(app.period, s.width);
      exact = exact && closed == *s.exact;
      worst = std::max(worst, std::abs(to_double(closed - *s.exact)));
    }
    report.checks.push_back({"numvar_direct_vs_closed", worst, 0.0, exact, false,
                             std::to_string(widths.size()) + " widths in [0, 2D], exact equality"});
  } else {
    report.checks.push_back({"numvar_direct_vs_closed", 0.0, 0.0, true, true,
                             "no closed-form number variance for D=" + std::to_string(app.period)});
  }
  {
    double worst = 0.0;
    double bound = 0.0;
    for (const auto& s : direct.samples) {
      const auto est = number_variance_fourier(app.period, to_double(s.width), options.terms);
      bound = est.truncation_bound;
      worst = std::max(worst, std::abs(est.value - s.value));
    }
    report.checks.push_back({"numvar_fourier_vs_direct", worst, bound, worst <= bound, false,
                             "K=" + std::to_string(options.terms)});
  }
  return report;
}

}  // namespace skewtorus
