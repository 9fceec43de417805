#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "biosc/common.hpp"
#include "biosc/quadrature.hpp"
#include "biosc/specfun.hpp"

namespace biosc {

// The five real parameters of one non-Hermitian oscillator: ground energy
// eps < 1, imaginary strength lambda, and the non-negative {a, b, c} with
// 4ac - b^2 = 4 lambda^2.
struct ModelParams {
  double eps;
  double lambda;
  double a;
  double b;
  double c;

  void validate() const {
    if (!(eps < 1.0))
      throw std::invalid_argument("ModelParams.eps: must be < 1 (below the oscillator ground energy)");
    if (!(a >= 0.0)) throw std::invalid_argument("ModelParams.a: must be >= 0");
    if (!(b >= 0.0)) throw std::invalid_argument("ModelParams.b: must be >= 0");
    if (!(c >= 0.0)) throw std::invalid_argument("ModelParams.c: must be >= 0");
    const double lhs = 4.0 * a * c - b * b;
    const double rhs = 4.0 * lambda * lambda;
    // 1e-12 on the constraint, scaled so large-magnitude parameter sets
    // (e.g. the AMM limit a = gamma^2) are not rejected for float rounding
    const double scale = std::max({1.0, std::abs(4.0 * a * c), b * b, rhs});
    if (std::abs(lhs - rhs) > 1e-12 * scale)
      throw std::invalid_argument("ModelParams: constraint 4ac - b^2 = 4 lambda^2 violated (|residual| = " +
                                  std::to_string(std::abs(lhs - rhs)) + ")");
  }
};

// Uniform real grid carrying complex samples.
struct GridFunction {
  double x_min;
  double x_max;
  std::size_t n_points;
  std::vector<cplx> values;

  double dx() const { return (x_max - x_min) / static_cast<double>(n_points - 1); }
  double x(std::size_t i) const { return grid_x(x_min, x_max, n_points, i); }
};

// Grid domain only (no samples yet). Defaults chosen so Gaussian factors are
// < 1e-21 at the edges.
struct GridSpec {
  double x_min = -10.0;
  double x_max = 10.0;
  std::size_t n_points = 2001;

  void validate() const {
    if (n_points < 2) throw std::invalid_argument("GridSpec.n_points: must be >= 2");
    if (!(x_max > x_min)) throw std::invalid_argument("GridSpec: x_max must be > x_min");
  }
  double dx() const { return (x_max - x_min) / static_cast<double>(n_points - 1); }
  double x(std::size_t i) const { return grid_x(x_min, x_max, n_points, i); }
};

inline constexpr double singularity_floor = 1e-10;  // alpha^2 below this counts as a node

// Seed solutions of -u'' + x^2 u = eps u and their first derivatives.
// Derivatives come from the term-wise differentiated 1F1 series
// (d/dz 1F1(a,c;z) = (a/c) 1F1(a+1,c+1;z)) with z = x^2; second derivatives
// are exact via the ODE, u'' = (x^2 - eps) u.
struct SeedState {
  double u1, u2, du1, du2;
};

inline SeedState seed_solutions_full(double x, double eps, const SeriesConfig& cfg = {}) {
  const double a1 = (1.0 - eps) / 4.0;
  const double a2 = (3.0 - eps) / 4.0;
  const double z = x * x;
  const double f1 = kummer_1f1(a1, 0.5, z, cfg);
  const double f2 = kummer_1f1(a2, 1.5, z, cfg);
  const double df1 = 2.0 * a1 * kummer_1f1(a1 + 1.0, 1.5, z, cfg);        // d/dz
  const double df2 = (a2 / 1.5) * kummer_1f1(a2 + 1.0, 2.5, z, cfg);      // d/dz
  const double g = std::exp(-0.5 * z);
  SeedState s;
  s.u1 = f1 * g;
  s.u2 = f2 * x * g;
  s.du1 = (2.0 * x * df1 - x * f1) * g;
  s.du2 = (f2 + 2.0 * z * df2 - z * f2) * g;
  return s;
}

inline std::pair<double, double> seed_solutions(double x, double eps, const SeriesConfig& cfg = {}) {
  const SeedState s = seed_solutions_full(x, eps, cfg);
  return {s.u1, s.u2};
}

// Everything the Darboux transform needs at one point. Ratios of the
// quadratic form q = alpha^2 are used throughout so the e^{x^2} growth of
// the seeds never gets squared.
struct ModelPoint {
  double x;
  SeedState seed;
  double q;        // alpha^2
  double dq;       // q'
  double ddq;      // q''
  double alpha;    // sqrt(q)
  double dlog;     // alpha'/alpha = q'/(2q)
  cplx beta;       // -alpha'/alpha + i lambda/alpha^2
  cplx dbeta;      // beta'
  cplx V;          // x^2 + 2 beta'
};

inline ModelPoint model_point(double x, const ModelParams& p, const SeriesConfig& cfg = {}) {
  ModelPoint m;
  m.x = x;
  m.seed = seed_solutions_full(x, p.eps, cfg);
  const SeedState& s = m.seed;
  m.q = p.a * s.u1 * s.u1 + p.b * s.u1 * s.u2 + p.c * s.u2 * s.u2;
  if (m.q < 0.0)
    throw std::domain_error("alpha^2 < 0 at x = " + std::to_string(x) +
                            ": parameter invariants violated");
  if (m.q < singularity_floor)
    throw singularity_error("alpha(x) has a node at x = " + std::to_string(x));
  m.dq = 2.0 * p.a * s.u1 * s.du1 + p.b * (s.du1 * s.u2 + s.u1 * s.du2) + 2.0 * p.c * s.u2 * s.du2;
  const double p2 = p.a * s.du1 * s.du1 + p.b * s.du1 * s.du2 + p.c * s.du2 * s.du2;
  m.ddq = 2.0 * p2 + 2.0 * (x * x - p.eps) * m.q;
  m.alpha = std::sqrt(m.q);
  m.dlog = m.dq / (2.0 * m.q);
  m.beta = cplx(-m.dlog, p.lambda / m.q);
  const double dlog_prime = m.ddq / (2.0 * m.q) - 0.5 * (m.dq / m.q) * (m.dq / m.q);
  m.dbeta = cplx(-dlog_prime, -2.0 * p.lambda * m.dlog / m.q);
  m.V = cplx(x * x, 0.0) + 2.0 * m.dbeta;
  return m;
}

// alpha(x) = [a u1^2 + b u1 u2 + c u2^2]^{1/2}
inline double alpha_fn(double x, const ModelParams& p, const SeriesConfig& cfg = {}) {
  return model_point(x, p, cfg).alpha;
}

// beta(x) = -alpha'/alpha + i lambda / alpha^2
inline cplx beta_fn(double x, const ModelParams& p, const SeriesConfig& cfg = {}) {
  return model_point(x, p, cfg).beta;
}

// true iff alpha^2 stays above the singularity floor over the whole grid.
// For lambda != 0 the quadratic form is strictly positive (q p - (q'/2)^2 =
// lambda^2 W^2 with Wronskian W = 1), so the floor test suffices. At
// lambda = 0 the form is a perfect square (sqrt(a) u1 + sqrt(c) u2)^2 whose
// node can fall between grid points with a steep slope; the sign of the
// linear factor is tracked there instead.
inline bool nodeless_check(const ModelParams& p, const GridSpec& grid,
                           const SeriesConfig& cfg = {}) {
  const bool factorable =
      p.lambda == 0.0 && std::abs(4.0 * p.a * p.c - p.b * p.b) < 1e-10;
  const double sa = std::sqrt(std::max(p.a, 0.0));
  const double sc = std::sqrt(std::max(p.c, 0.0));
  double prev = 0.0;
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double x = grid.x(i);
    const SeedState s = seed_solutions_full(x, p.eps, cfg);
    const double q = p.a * s.u1 * s.u1 + p.b * s.u1 * s.u2 + p.c * s.u2 * s.u2;
    if (!(q > singularity_floor)) return false;
    if (factorable) {
      const double lin = sa * s.u1 + sc * s.u2;
      if (lin * prev < 0.0) return false;  // sign change: a node sits between nodes
      prev = lin;
    }
  }
  return true;
}

// V_lambda(x) = x^2 + 2 beta'(x), the Darboux transform of the oscillator.
inline cplx potential(double x, const ModelParams& p, const SeriesConfig& cfg = {}) {
  return model_point(x, p, cfg).V;
}

// Re/Im split route: substituting the Riccati relation beta' = beta^2 - (x^2 - eps)
// gives V = 2 eps - x^2 + 2 beta^2, i.e.
//   Re V = 2 eps - x^2 + 2 (alpha'/alpha)^2 - 2 lambda^2/alpha^4
//   Im V = -4 lambda alpha'/alpha^3
inline cplx potential_parts(double x, const ModelParams& p, const SeriesConfig& cfg = {}) {
  const ModelPoint m = model_point(x, p, cfg);
  const double re = 2.0 * p.eps - x * x + 2.0 * m.dlog * m.dlog -
                    2.0 * p.lambda * p.lambda / (m.q * m.q);
  const double im = -4.0 * p.lambda * m.dlog / m.q;
  return {re, im};
}

// int_{-L}^{L} Im V dx by adaptive quadrature.
inline double zero_total_area(const ModelParams& p, double L, const SeriesConfig& cfg = {}) {
  const auto f = [&](double x) { return potential(x, p, cfg).imag(); };
  return adaptive_simpson(f, -L, L, 1e-13, 32);
}

// Closed endpoint form of the same integral: 2 lambda / alpha^2 evaluated
// across [-L, L] (Im V is an exact derivative).
inline double zero_total_area_endpoint(const ModelParams& p, double L,
                                       const SeriesConfig& cfg = {}) {
  const double qR = model_point(L, p, cfg).q;
  const double qL = model_point(-L, p, cfg).q;
  return 2.0 * p.lambda * (1.0 / qR - 1.0 / qL);
}

// Closed form of the eps = -1 potential,
//   V = x^2 - 2 - 2 d/dx [ N(x) / (sqrt(pi) alpha^2) ],
//   N = (pi c / 2) Erf x + (sqrt(pi)/2) b - i sqrt(pi) lambda,
// with the derivative taken analytically. The numerator follows from
// alpha^2 = e^{x^2} [a + b (sqrt(pi)/2) Erf + c (pi/4) Erf^2]; the often-seen
// variant 2a Erf + b is equivalent only when b = 0 and 4a = pi c (the
// fig5a preset pattern) and differs for b > 0.
inline cplx potential_eps_minus1(double x, double a, double b, double c, double lambda,
                                 const SeriesConfig& cfg = {}) {
  const ModelParams p{-1.0, lambda, a, b, c};
  const ModelPoint m = model_point(x, p, cfg);
  const cplx N(0.5 * pi * c * erf_fn(x) + 0.5 * sqrt_pi * b, -sqrt_pi * lambda);
  const double dN = sqrt_pi * c * std::exp(-x * x);
  const cplx ddx = (dN - N * (m.dq / m.q)) / (sqrt_pi * m.q);
  return cplx(x * x - 2.0, 0.0) - 2.0 * ddx;
}

// Abraham-Moses-Mielnik oscillator potential
//   V(x; gamma) = x^2 - 2 - 2 M'(x),  M = e^{-x^2} / (gamma + int_0^x e^{-y^2} dy),
// using M' = -2xM - M^2.
inline double amm_potential(double x, double gamma) {
  const double denom = gamma + 0.5 * sqrt_pi * erf_fn(x);
  if (std::abs(denom) < 1e-12)
    throw singularity_error("amm_potential: gamma + int_0^x e^{-y^2} dy vanishes at x = " +
                            std::to_string(x));
  const double M = std::exp(-x * x) / denom;
  return x * x - 2.0 + 4.0 * x * M + 2.0 * M * M;
}

// AMM parameter embedding: lambda = 0, eps = -1, alpha ~ e^{x^2/2}(gamma + int_0^x e^{-y^2}).
inline ModelParams amm_params(double gamma) {
  if (!(gamma > 0.5 * sqrt_pi))
    throw std::invalid_argument("amm_params: need gamma > sqrt(pi)/2 for a nodeless alpha");
  return ModelParams{-1.0, 0.0, gamma * gamma, 2.0 * gamma, 1.0};
}

}  // namespace biosc
