#pragma once

#include "skewtorus/diophantine.hpp"
#include "skewtorus/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace skewtorus {

// phi_{eta,l} = l D - eta^2 + eta a - a^2 (M-1)(2M-1)/6  (mod N), in [0, N).
struct Eigenphase {
  std::int64_t eta = 1;
  std::int64_t l = 0;
  Rational value;
};

struct Spectrum {
  Approximant approximant;
  std::vector<Eigenphase> phases;  // sorted by value

  std::int64_t dimension() const { return approximant.dimension; }
  std::size_t size() const { return phases.size(); }

  std::vector<Rational> values() const {
    std::vector<Rational> v;
    v.reserve(phases.size());
    for (const auto& p : phases) v.push_back(p.value);
    return v;
  }
};

// Constant part of every eigenphase, a^2 (M-1)(2M-1)/6.
inline Rational eigenphase_shift(const Approximant& app) {
  const BigInt a = app.numerator;
  const BigInt m = app.copies;
  return make_rational(a * a * (m - 1) * (2 * m - 1), 6);
}

inline Spectrum eigenphases(const Approximant& app) {
  const Rational period_n(app.dimension);
  const Rational shift = eigenphase_shift(app);
  Spectrum spec{app, {}};
  spec.phases.reserve(static_cast<std::size_t>(app.dimension));
  for (std::int64_t eta = 1; eta <= app.period; ++eta) {
    const Rational base = Rational(BigInt(-eta) * eta + BigInt(eta) * app.numerator) - shift;
    for (std::int64_t l = 0; l < app.copies; ++l) {
      spec.phases.push_back({eta, l, mod(base + Rational(BigInt(l) * app.period), period_n)});
    }
  }
  std::sort(spec.phases.begin(), spec.phases.end(), [](const Eigenphase& x, const Eigenphase& y) {
    return std::tie(x.value, x.eta, x.l) < std::tie(y.value, y.eta, y.l);
  });
  return spec;
}

// {-eta^2 mod D : eta = 1..D}, kept in eta order.
struct ReducedSpectrum {
  std::int64_t period = 1;
  std::vector<std::int64_t> residues;
};

inline ReducedSpectrum reduced_spectrum(std::int64_t period) {
  if (period < 1) throw std::invalid_argument("period D must be positive");
  ReducedSpectrum rs{period, {}};
  rs.residues.reserve(static_cast<std::size_t>(period));
  for (std::int64_t eta = 1; eta <= period; ++eta) {
    std::int64_t r = -((eta * eta) % period);
    rs.residues.push_back(r < 0 ? r + period : r);
  }
  return rs;
}

struct DegeneracyProfile {
  std::map<std::int64_t, std::int64_t> multiplicity;
  std::int64_t max_multiplicity = 0;
};

inline DegeneracyProfile degeneracy_profile(const ReducedSpectrum& rs) {
  DegeneracyProfile profile;
  for (auto r : rs.residues) ++profile.multiplicity[r];
  for (const auto& [residue, count] : profile.multiplicity)
    profile.max_multiplicity = std::max(profile.max_multiplicity, count);
  return profile;
}

// CSV "eta,l,numerator,denominator,value".
inline void write_spectrum_csv(std::ostream& out, const Spectrum& spec) {
  const auto old_precision = out.precision(17);
  out << "eta,l,numerator,denominator,value\n";
  for (const auto& p : spec.phases) {
    out << p.eta << ',' << p.l << ',' << numerator_of(p.value) << ',' << denominator_of(p.value) << ','
        << to_double(p.value) << '\n';
  }
  out.precision(old_precision);
}

}  // namespace skewtorus
