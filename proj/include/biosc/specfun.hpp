#pragma once

#include <array>
#include <cmath>
#include <utility>

#include "biosc/common.hpp"

namespace biosc {

// Truncation controls for the hypergeometric series and the Mellin-Barnes
// contour. A series term is accepted as converged once |term| stays below
// rel_tol * |partial sum| for three consecutive terms (guards alternating
// stalls).
struct SeriesConfig {
  double rel_tol      = 1e-15;
  int    max_terms    = 2000;
  double contour_height = 40.0;  // truncation |Im s| <= T of the contour
  int    contour_points = 4001;

  void validate() const {
    if (!(rel_tol > 0.0)) throw std::domain_error("SeriesConfig: rel_tol must be > 0");
    if (max_terms < 1) throw std::domain_error("SeriesConfig: max_terms must be >= 1");
    if (!(contour_height > 0.0)) throw std::domain_error("SeriesConfig: contour_height must be > 0");
    if (contour_points < 2) throw std::domain_error("SeriesConfig: contour_points must be >= 2");
  }
};

namespace detail {

// Lanczos (g = 7, n = 9) log-gamma, valid for Re z > 0. Good to ~1e-15
// relative on the positive real axis, which also covers the complex
// arguments 1 + it (+ positive shifts) used on the Mellin-Barnes contour.
inline constexpr std::array<double, 9> lanczos_g7 = {
    0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,     12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6,  1.5056327351493116e-7};

template <typename T>
T log_gamma_positive(T z) {
  // caller guarantees Re z > 0
  T x = lanczos_g7[0];
  for (int i = 1; i < 9; ++i) x += lanczos_g7[i] / (z + T(i - 1));
  const T t = z + T(6.5);
  return T(0.5) * std::log(T(2) * T(pi)) + (z - T(0.5)) * std::log(t) - t + std::log(x);
}

inline double log_gamma(double x) { return log_gamma_positive(x); }
inline cplx   log_gamma(cplx z)   { return log_gamma_positive(z); }

inline bool is_nonpositive_integer(double c) {
  return c <= 0.0 && c == std::floor(c);
}

}  // namespace detail

// Gamma function for x > 0, >= 12 significant digits.
inline double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be > 0");
  return std::exp(detail::log_gamma(x));
}

inline double log_gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma_fn: argument must be > 0");
  return detail::log_gamma(x);
}

// Error function; the libm implementation is correctly rounded to < 1 ulp,
// far inside the 1e-12 budget.
inline double erf_fn(double x) { return std::erf(x); }

// Confluent hypergeometric 1F1(a, c; x) by direct Taylor series.
// Intended for x >= 0 (all uses here have x = x^2 or r^2/2); moderate
// negative arguments converge too and are used by the Kummer cross-check.
inline double kummer_1f1(double a, double c, double x, const SeriesConfig& cfg = {}) {
  if (detail::is_nonpositive_integer(c))
    throw std::domain_error("kummer_1f1: c is a non-positive integer (pole)");
  double term = 1.0, sum = 1.0;
  int quiet = 0;
  for (int n = 0; n < cfg.max_terms; ++n) {
    term *= (a + n) / (c + n) * x / (n + 1);
    sum += term;
    if (std::abs(term) < cfg.rel_tol * std::abs(sum)) {
      if (++quiet >= 3) return sum;
    } else {
      quiet = 0;
    }
  }
  throw truncation_error("kummer_1f1: series did not converge", sum);
}

// Generalized hypergeometric 0F2(b1, b2; x) = sum x^n / (n! (b1)_n (b2)_n).
inline double hyp0f2(double b1, double b2, double x, const SeriesConfig& cfg = {}) {
  if (detail::is_nonpositive_integer(b1) || detail::is_nonpositive_integer(b2))
    throw std::domain_error("hyp0f2: lower parameter is a non-positive integer (pole)");
  double term = 1.0, sum = 1.0;
  int quiet = 0;
  for (int n = 0; n < cfg.max_terms; ++n) {
    term *= x / ((n + 1) * (b1 + n) * (b2 + n));
    sum += term;
    if (std::abs(term) < cfg.rel_tol * std::abs(sum)) {
      if (++quiet >= 3) return sum;
    } else {
      quiet = 0;
    }
  }
  throw truncation_error("hyp0f2: series did not converge", sum);
}

// Normalized eigenfunction phi_n of H = p^2 + x^2 (E_n = 2n+1) and its
// derivative. Stable three-term recurrence on the normalized functions;
// raw Hermite polynomials overflow past n ~ 20.
//   phi_{n+1} = (2x phi_n - sqrt(2n) phi_{n-1}) / sqrt(2(n+1))
//   phi_n'    = sqrt(2n) phi_{n-1} - x phi_n
struct HermiteValue {
  double value;
  double derivative;
};

inline HermiteValue hermite_phi(int n, double x) {
  if (n < 0) throw std::domain_error("hermite_phi: n must be >= 0");
  const double g = std::exp(-0.5 * x * x) / std::sqrt(sqrt_pi);
  double prev = 0.0, cur = g;
  for (int k = 0; k < n; ++k) {
    const double next = (2.0 * x * cur - std::sqrt(2.0 * k) * prev) / std::sqrt(2.0 * (k + 1));
    prev = cur;
    cur = next;
  }
  return {cur, std::sqrt(2.0 * n) * prev - x * cur};
}

}  // namespace biosc
