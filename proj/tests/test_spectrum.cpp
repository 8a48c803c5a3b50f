#include "skewtorus/diophantine.hpp"
#include "skewtorus/propagator.hpp"
#include "skewtorus/spectrum.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <sstream>

using namespace skewtorus;

namespace {

std::vector<Rational> rationals(std::initializer_list<Rational> xs) { return xs; }

std::vector<std::int64_t> sorted(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Approximant> sample_approximants() {
  std::vector<Approximant> apps;
  for (std::int64_t n = 1; n <= 40; ++n)
    for (std::int64_t a = 1; a <= 2 * n; a += 3) apps.push_back(Approximant::from_pair(a, n));
  return apps;
}

}  // namespace

TEST(Eigenphases, SpecExamples) {
  EXPECT_EQ(eigenphases(Approximant::from_pair(1, 3)).values(),
            rationals({Rational(1, 3), Rational(4, 3), Rational(7, 3)}));
  EXPECT_EQ(eigenphases(Approximant::from_pair(2, 4)).values(), rationals({0, 1, 2, 3}));
  EXPECT_EQ(eigenphases(Approximant::from_pair(3, 9)).values(), rationals({0, 2, 2, 3, 5, 5, 6, 8, 8}));
}

TEST(Eigenphases, ProvenanceMatchesFormula) {
  auto spec = eigenphases(Approximant::from_pair(39, 24));
  ASSERT_EQ(spec.size(), 24u);
  const Rational shift = eigenphase_shift(spec.approximant);
  for (const auto& p : spec.phases) {
    Rational raw = Rational(p.l * 3 - p.eta * p.eta + p.eta * 39) - shift;
    EXPECT_EQ(mod(p.value - raw, Rational(24)), 0);
    EXPECT_GE(p.value, 0);
    EXPECT_LT(p.value, 24);
    EXPECT_EQ(BigInt(6) % denominator_of(p.value), 0);
  }
}

TEST(Eigenphases, SizeAndPeriodicity) {
  for (const auto& app : sample_approximants()) {
    auto values = eigenphases(app).values();
    ASSERT_EQ(static_cast<std::int64_t>(values.size()), app.dimension);
    ASSERT_TRUE(std::is_sorted(values.begin(), values.end()));
    std::vector<Rational> shifted;
    for (const auto& v : values) shifted.push_back(mod(v + Rational(app.period), Rational(app.dimension)));
    std::sort(shifted.begin(), shifted.end());
    ASSERT_EQ(shifted, values) << app.numerator << "/" << app.dimension;
  }
}

TEST(Eigenphases, ResiduesModDAreShiftedReducedSpectrum) {
  for (const auto& app : sample_approximants()) {
    const Rational d(app.period);
    const Rational shift = eigenphase_shift(app);
    std::vector<Rational> actual;
    for (const auto& v : eigenphases(app).values()) actual.push_back(mod(v, d));
    std::vector<Rational> expected;
    for (auto r : reduced_spectrum(app.period).residues)
      for (std::int64_t l = 0; l < app.copies; ++l) expected.push_back(mod(Rational(r) - shift, d));
    std::sort(actual.begin(), actual.end());
    std::sort(expected.begin(), expected.end());
    ASSERT_EQ(actual, expected);
  }
}

TEST(Eigenphases, PowerSumsMatchPropagatorTraces) {
  for (std::int64_t n = 1; n <= 32; ++n) {
    for (std::int64_t a : {std::int64_t{1}, n / 2 + 1, n, 2 * n - 1}) {
      auto app = Approximant::from_pair(std::max<std::int64_t>(a, 1), n);
      auto traces = trace_powers_numeric(build_propagator(app), n);
      auto spec = eigenphases(app);
      for (std::int64_t p = 1; p <= n; ++p) {
        Complex sum{0.0, 0.0};
        for (const auto& phase : spec.phases)
          sum += std::polar(1.0, 2.0 * std::numbers::pi * to_double(frac(phase.value * p / n)));
        ASSERT_LT(std::abs(sum - traces[p - 1]), 1e-8 * n);
      }
    }
  }
}

TEST(ReducedSpectrum, SpecExamples) {
  EXPECT_EQ(reduced_spectrum(1).residues, (std::vector<std::int64_t>{0}));
  EXPECT_EQ(reduced_spectrum(3).residues, (std::vector<std::int64_t>{2, 2, 0}));
  EXPECT_EQ(sorted(reduced_spectrum(8).residues), (std::vector<std::int64_t>{0, 0, 4, 4, 7, 7, 7, 7}));
  EXPECT_THROW(reduced_spectrum(0), std::invalid_argument);
}

TEST(ReducedSpectrum, ReflectionSymmetry) {
  for (std::int64_t d = 1; d <= 60; ++d) {
    auto rs = reduced_spectrum(d);
    ASSERT_EQ(static_cast<std::int64_t>(rs.residues.size()), d);
    for (std::int64_t eta = 1; eta < d; ++eta) ASSERT_EQ(rs.residues[eta - 1], rs.residues[d - eta - 1]);
    // Residues hit by an eta other than D/2 and D come in reflected pairs.
    std::map<std::int64_t, std::int64_t> unpaired;
    for (std::int64_t eta = 1; eta < d; ++eta)
      if (2 * eta != d) ++unpaired[rs.residues[eta - 1]];
    for (const auto& [r, c] : unpaired) ASSERT_EQ(c % 2, 0) << "D=" << d << " residue " << r;
  }
}

TEST(DegeneracyProfile, SpecExamples) {
  auto d3 = degeneracy_profile(reduced_spectrum(3));
  EXPECT_EQ(d3.multiplicity, (std::map<std::int64_t, std::int64_t>{{0, 1}, {2, 2}}));
  EXPECT_EQ(d3.max_multiplicity, 2);

  auto d1 = degeneracy_profile(reduced_spectrum(1));
  EXPECT_EQ(d1.multiplicity, (std::map<std::int64_t, std::int64_t>{{0, 1}}));
  EXPECT_EQ(d1.max_multiplicity, 1);

  auto d8 = degeneracy_profile(reduced_spectrum(8));
  EXPECT_EQ(d8.max_multiplicity, 4);
  EXPECT_EQ(d8.multiplicity.at(7), 4);
}

TEST(SpectrumCsv, Columns) {
  std::ostringstream out;
  write_spectrum_csv(out, eigenphases(Approximant::from_pair(1, 3)));
  EXPECT_EQ(out.str().substr(0, 33), "eta,l,numerator,denominator,value");
  EXPECT_NE(out.str().find("\n1,2,1,3,0.33333333333333331\n"), std::string::npos) << out.str();
}
