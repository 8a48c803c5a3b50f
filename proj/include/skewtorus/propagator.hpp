#pragma once

// Quantum propagator of the skew translation in the position basis,
//
//   U_kj = (1/N) sum_l exp(2 pi i / N * (l k - (l - a)^2 - (l - a) j)),
//
// together with traces of its powers, both numerically from the matrix and
// from the explicit eigenphases.

#include "skewtorus/diophantine.hpp"
#include "skewtorus/rational.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace skewtorus {

using Complex = std::complex<double>;

struct PropagatorOptions {
  std::int64_t max_dimension = 4096;
};

struct Propagator {
  Approximant approximant;
  Eigen::MatrixXcd matrix;

  std::int64_t dimension() const { return approximant.dimension; }
};

namespace detail {

inline std::int64_t reduce_mod(std::int64_t x, std::int64_t m) {
  x %= m;
  return x < 0 ? x + m : x;
}

// exp(2 pi i r / N) for r = 0..N-1.
inline std::vector<Complex> roots_of_unity(std::int64_t n) {
  std::vector<Complex> w(static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < n; ++r) {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    w[static_cast<std::size_t>(r)] = std::polar(1.0, angle);
  }
  return w;
}

// exp(2 pi i x) for a rational x, reduced into [0, 1) before conversion.
inline Complex unit_phase(const Rational& x) {
  return std::polar(1.0, 2.0 * std::numbers::pi * to_double(frac(x)));
}

}  // namespace detail

inline Propagator build_propagator(const Approximant& app, const PropagatorOptions& options = {}) {
  const std::int64_t n = app.dimension;
  if (n < 1) throw std::invalid_argument("N must be positive");
  if (n > options.max_dimension)
    throw std::length_error("N=" + std::to_string(n) + " exceeds the matrix size limit " +
                            std::to_string(options.max_dimension));

  const auto w = detail::roots_of_unity(n);
  const std::int64_t a = detail::reduce_mod(app.numerator, n);
  Eigen::MatrixXcd u(n, n);
  // Every exponent is an integer; reduce it mod N so each phase is looked up
  // exactly rather than accumulated.
  for (std::int64_t k = 0; k < n; ++k) {
    for (std::int64_t j = 0; j < n; ++j) {
      Complex sum{0.0, 0.0};
      for (std::int64_t l = 0; l < n; ++l) {
        const std::int64_t shifted = l - a;
        const std::int64_t e = detail::reduce_mod(l * k - shifted * shifted - shifted * j, n);
        sum += w[static_cast<std::size_t>(e)];
      }
      u(k, j) = sum / static_cast<double>(n);
    }
  }
  return {app, std::move(u)};
}

// max |(U U^dagger - I)_kj|
inline double unitarity_defect(const Propagator& u) {
  const auto n = u.matrix.rows();
  Eigen::MatrixXcd product = u.matrix * u.matrix.adjoint();
  return (product - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

// Tr(U^n) for n = 1..max_power, by successive multiplication.
inline std::vector<Complex> trace_powers_numeric(const Propagator& u, std::int64_t max_power) {
  if (max_power < 1) return {};
  std::vector<Complex> traces;
  traces.reserve(static_cast<std::size_t>(max_power));
  Eigen::MatrixXcd power = u.matrix;
  traces.push_back(power.trace());
  for (std::int64_t p = 2; p <= max_power; ++p) {
    power = power * u.matrix;
    traces.push_back(power.trace());
  }
  return traces;
}

// Tr(U^n); n = 0 gives N.
inline Complex trace_power_numeric(const Propagator& u, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("power must be non-negative");
  if (n == 0) return Complex(static_cast<double>(u.dimension()), 0.0);
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(u.matrix.rows(), u.matrix.cols());
  Eigen::MatrixXcd base = u.matrix;
  for (std::int64_t e = n; e > 0; e >>= 1) {
    if (e & 1) result = result * base;
    if (e > 1) base = base * base;
  }
  return result.trace();
}

// Tr(U^n) from the eigenphases:
//   M [n mod M == 0] sum_{eta=1..D} exp(2 pi i n / N (-eta^2 + eta a - a^2 (M-1)(2M-1)/6)).
// The exponent is reduced exactly before the single conversion to a phase.
inline Complex trace_power_analytic(const Approximant& app, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("power must be non-negative");
  const std::int64_t big_n = app.dimension;
  const std::int64_t d = app.period;
  const std::int64_t m = app.copies;
  if (n == 0) return Complex(static_cast<double>(big_n), 0.0);
  if (n % m != 0) return Complex(0.0, 0.0);

  const BigInt a = app.numerator;
  const Rational shift = make_rational(a * a * (m - 1) * (2 * m - 1), 6);
  Complex sum{0.0, 0.0};
  for (std::int64_t eta = 1; eta <= d; ++eta) {
    Rational exponent = Rational(BigInt(-eta) * eta + a * eta) - shift;
    sum += detail::unit_phase(exponent * n / big_n);
  }
  return sum * static_cast<double>(m);
}

// CSV rows "k,j,re,im", row-major.
inline void write_matrix_csv(std::ostream& out, const Propagator& u) {
  const auto old_precision = out.precision(17);
  out << "k,j,re,im\n";
  for (Eigen::Index k = 0; k < u.matrix.rows(); ++k)
    for (Eigen::Index j = 0; j < u.matrix.cols(); ++j)
      out << k << ',' << j << ',' << u.matrix(k, j).real() << ',' << u.matrix(k, j).imag() << '\n';
  out.precision(old_precision);
}

}  // namespace skewtorus
