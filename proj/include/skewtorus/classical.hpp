#pragma once

// Classical skew translation (p, q) -> (p + alpha, q + 2p) mod 1 and a
// Birkhoff-average diagnostic for equidistribution of its orbits.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace skewtorus {

inline double wrap_unit(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

struct TorusPoint {
  double p = 0.0;
  double q = 0.0;
};

inline TorusPoint step(TorusPoint pt, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  return {wrap_unit(pt.p + alpha), wrap_unit(pt.q + 2.0 * pt.p)};
}

inline std::vector<TorusPoint> orbit(TorusPoint start, double alpha, std::int64_t length) {
  std::vector<TorusPoint> pts;
  if (length <= 0) return pts;
  pts.reserve(static_cast<std::size_t>(length));
  TorusPoint pt{wrap_unit(start.p), wrap_unit(start.q)};
  for (std::int64_t t = 0; t < length; ++t) {
    pts.push_back(pt);
    pt = step(pt, alpha);
  }
  return pts;
}

struct FourierMode {
  std::int64_t m = 0;
  std::int64_t n = 0;
};

// (1/T) sum_{t<T} exp(2 pi i (m p_t + n q_t)) along the orbit of `start`.
inline std::complex<double> weyl_sum(TorusPoint start, double alpha, FourierMode mode, std::int64_t iterations) {
  if (mode.m == 0 && mode.n == 0) throw std::invalid_argument("Weyl sum needs a non-constant mode (m, n) != (0, 0)");
  if (iterations < 1) throw std::invalid_argument("T must be positive");
  std::complex<double> sum{0.0, 0.0};
  TorusPoint pt{wrap_unit(start.p), wrap_unit(start.q)};
  for (std::int64_t t = 0; t < iterations; ++t) {
    const double phase = wrap_unit(static_cast<double>(mode.m) * pt.p + static_cast<double>(mode.n) * pt.q);
    sum += std::polar(1.0, 2.0 * std::numbers::pi * phase);
    pt = step(pt, alpha);
  }
  return sum / static_cast<double>(iterations);
}

// CSV "t,p,q".
inline void write_orbit_csv(std::ostream& out, const std::vector<TorusPoint>& pts) {
  const auto old_precision = out.precision(17);
  out << "t,p,q\n";
  for (std::size_t t = 0; t < pts.size(); ++t) out << t << ',' << pts[t].p << ',' << pts[t].q << '\n';
  out.precision(old_precision);
}

}  // namespace skewtorus
