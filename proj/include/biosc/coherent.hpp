#pragma once

#include <cmath>
#include <vector>

#include "biosc/common.hpp"
#include "biosc/matexp.hpp"
#include "biosc/meijer.hpp"
#include "biosc/operators.hpp"
#include "biosc/quadrature.hpp"
#include "biosc/specfun.hpp"

namespace biosc {

enum class Family { transformed, natural, distorted, displaced };

// Generalized coherent state as a truncated coefficient vector over the
// eigenbasis {|psi_n>}. coeffs[0] = 0 for every family: all four are
// superpositions over |psi_{n+1}> (the fiducial state is |psi_1>).
struct CoherentState {
  Family family;
  double w = 0.0;  // distortion parameter (distorted/displaced families)
  cplx z;
  std::vector<cplx> coeffs;
  double norm_const = 1.0;

  double norm_sq() const {
    double s = 0.0;
    for (const auto& c : coeffs) s += std::norm(c);
    return s;
  }
};

namespace detail {

// 0F2 and 1F1 for complex argument; only the reproducing kernels need this,
// so it stays private to the coherent module.
inline cplx hyp0f2_c(double b1, double b2, cplx x, const SeriesConfig& cfg = {}) {
  cplx term = 1.0, sum = 1.0;
  int quiet = 0;
  for (int n = 0; n < cfg.max_terms; ++n) {
    term *= x / cplx((n + 1.0) * (b1 + n) * (b2 + n));
    sum += term;
    if (std::abs(term) < cfg.rel_tol * std::abs(sum)) {
      if (++quiet >= 3) return sum;
    } else {
      quiet = 0;
    }
  }
  throw truncation_error("hyp0f2_c: series did not converge", std::abs(sum));
}

inline cplx hyp1f1_c(double a, double c, cplx x, const SeriesConfig& cfg = {}) {
  cplx term = 1.0, sum = 1.0;
  int quiet = 0;
  for (int n = 0; n < cfg.max_terms; ++n) {
    term *= cplx((a + n) / ((c + n) * (n + 1.0))) * x;
    sum += term;
    if (std::abs(term) < cfg.rel_tol * std::abs(sum)) {
      if (++quiet >= 3) return sum;
    } else {
      quiet = 0;
    }
  }
  throw truncation_error("hyp1f1_c: series did not converge", std::abs(sum));
}

}  // namespace detail

// Image of the oscillator coherent state |alpha> under B (normalized):
// coeffs[n+1] = e^{-|a|^2/4}/sqrt(|a|^2 + 1 - eps) sqrt((2n+1-eps)/n!) (a/sqrt2)^n.
// For eps = -1 this is the one-photon-added coherent state pattern.
inline CoherentState transformed_cs(cplx alpha, double eps, int N) {
  if (!(eps < 1.0)) throw std::domain_error("transformed_cs: eps must be < 1");
  const double r2 = std::norm(alpha);
  const double pref = std::exp(-r2 / 4.0) / std::sqrt(r2 + 1.0 - eps);
  CoherentState st{Family::transformed, 0.0, alpha, std::vector<cplx>(N, cplx{}), pref};
  cplx zn = 1.0;  // (alpha/sqrt2)^n
  double log_nfact = 0.0;
  for (int n = 0; n + 1 < N; ++n) {
    if (n > 0) log_nfact += std::log(static_cast<double>(n));
    st.coeffs[n + 1] = pref * std::exp(0.5 * (std::log(2.0 * n + 1.0 - eps) - log_nfact)) * zn;
    zn *= alpha / std::sqrt(2.0);
  }
  return st;
}

// Natural coherent state: eigenvector of the transformed annihilator A with
// eigenvalue z. coeffs[n+1] = c0 rho_n (z/sqrt8)^n with
// rho_n = sqrt(G(c1)G(c2) / (n! G(n+c1) G(n+c2))), c1 = (1-eps)/2, c2 = (3-eps)/2.
inline CoherentState natural_cs(cplx z, double eps, int N) {
  if (!(eps < 1.0)) throw std::domain_error("natural_cs: eps must be < 1");
  const double c1 = (1.0 - eps) / 2.0, c2 = (3.0 - eps) / 2.0;
  const double c0 = 1.0 / std::sqrt(hyp0f2(c1, c2, std::norm(z) / 8.0));
  const double lg0 = detail::log_gamma(c1) + detail::log_gamma(c2);
  CoherentState st{Family::natural, 0.0, z, std::vector<cplx>(N, cplx{}), c0};
  cplx zn = 1.0;
  for (int n = 0; n + 1 < N; ++n) {
    const double lg = 0.5 * (lg0 - detail::log_gamma(n + 1.0) - detail::log_gamma(n + c1) -
                             detail::log_gamma(n + c2));
    st.coeffs[n + 1] = c0 * std::exp(lg) * zn;
    zn *= z / std::sqrt(8.0);
  }
  return st;
}

// Reproducing kernel of the natural family, K(y*, z); equals 1 at y = z.
inline cplx natural_kernel(cplx y, cplx z, double eps) {
  const double c1 = (1.0 - eps) / 2.0, c2 = (3.0 - eps) / 2.0;
  const cplx num = detail::hyp0f2_c(c1, c2, z * std::conj(y) / 8.0);
  const double dy = hyp0f2(c1, c2, std::norm(y) / 8.0);
  const double dz = hyp0f2(c1, c2, std::norm(z) / 8.0);
  return num / std::sqrt(dy * dz);
}

// Closed-form moments of H_lambda over the natural coherent state and the
// resulting uncertainty product DX DP = (1/2)[3<H^2> - 4 eps <H> + eps^2].
struct NaturalVariance {
  double mean_H;
  double mean_H2;
  double dxdp;
};

inline NaturalVariance natural_variance(cplx z, double eps) {
  const double c1 = (1.0 - eps) / 2.0, c2 = (3.0 - eps) / 2.0;
  const double r2 = std::norm(z);
  const double x = r2 / 8.0;
  const double F0 = hyp0f2(c1, c2, x);
  const double F1 = hyp0f2(c2, c2 + 1.0, x);
  const double F2 = hyp0f2(c2 + 1.0, c2 + 2.0, x);
  NaturalVariance v;
  v.mean_H = 1.0 + r2 / ((1.0 - eps) * (3.0 - eps)) * F1 / F0;
  v.mean_H2 = 4.0 * v.mean_H - 3.0 +
              r2 * r2 / ((1.0 - eps) * (3.0 - eps) * (3.0 - eps) * (5.0 - eps)) * F2 / F0;
  v.dxdp = 0.5 * (3.0 * v.mean_H2 - 4.0 * eps * v.mean_H + eps * eps);
  return v;
}

// Same quantities through the truncated-matrix route, as the bi-orthogonal
// quadratic form sum_n c_n^* O_nm c_m.
inline NaturalVariance natural_variance_matrix(cplx z, double eps, int N) {
  const CoherentState st = natural_cs(z, eps, N);
  NaturalVariance v{0.0, 0.0, 0.0};
  double poly = 0.0;
  for (int k = 0; k < N; ++k) {
    const double E = eigen_energy(k, eps);
    const double p = std::norm(st.coeffs[k]);
    v.mean_H += p * E;
    v.mean_H2 += p * E * E;
    poly += p * (3.0 * E - eps) * (E - eps);
  }
  v.dxdp = 0.5 * poly;
  return v;
}

// Resolution-of-identity weights for the natural family. Lambda_n is the
// (n+1)-th Mellin moment of the inverted density normalized by its exact
// value; returns |Lambda_n - 1| for n = 0..n_max.
inline std::vector<double> natural_identity_check(double eps, int n_max,
                                                  const SeriesConfig& cfg = {}) {
  const MellinBarnesH h(eps, cfg);
  std::vector<double> out;
  out.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n)
    out.push_back(std::abs(h.moment(n + 1.0) / h.moment_target(n + 1.0) - 1.0));
  return out;
}

// Distorted coherent state: eigenvector of C_w with eigenvalue z.
// coeffs[n+1] = c0 sqrt(G(w)/G(w+n)) (z/sqrt2)^n. Requires w > 0 (the
// algebra itself allows w = 0, but Gamma(w) poles the coefficients there).
inline CoherentState distorted_cs(cplx z, double w, int N) {
  if (!(w > 0.0)) throw std::domain_error("distorted_cs: w must be > 0");
  const double c0 = 1.0 / std::sqrt(kummer_1f1(1.0, w, std::norm(z) / 2.0));
  const double lgw = detail::log_gamma(w);
  CoherentState st{Family::distorted, w, z, std::vector<cplx>(N, cplx{}), c0};
  cplx zn = 1.0;
  for (int n = 0; n + 1 < N; ++n) {
    st.coeffs[n + 1] = c0 * std::exp(0.5 * (lgw - detail::log_gamma(w + n))) * zn;
    zn *= z / std::sqrt(2.0);
  }
  return st;
}

// Reproducing kernel of the distorted family.
inline cplx distorted_kernel(cplx y, cplx z, double w) {
  const cplx num = detail::hyp1f1_c(1.0, w, std::conj(y) * z / 2.0);
  const double dy = kummer_1f1(1.0, w, std::norm(y) / 2.0);
  const double dz = kummer_1f1(1.0, w, std::norm(z) / 2.0);
  return num / std::sqrt(dy * dz);
}

// |Lambda_n - 1| for the distorted family, integrating the explicit measure
//   d mu^(w) = r^{2(w-1)}/(pi Gamma(w) 2^w) e^{-r^2/2} 1F1(1, w; r^2/2) r dr dtheta
// against the normalized coefficient density. The integrable r^{2w-1}
// endpoint for w < 1 is handled by the substitution t = r^{2w} near 0.
inline std::vector<double> distorted_identity_check(double w, int n_max) {
  if (!(w > 0.0)) throw std::domain_error("distorted_identity_check: w must be > 0");
  const double lgw = detail::log_gamma(w);
  std::vector<double> out;
  out.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    const double lgr = lgw - detail::log_gamma(w + n);  // log(G(w)/G(w+n))
    const auto integrand = [&](double r) {
      if (r <= 0.0) return 0.0;
      const double x = r * r / 2.0;
      const double f11 = kummer_1f1(1.0, w, x);
      const double c0sq = 1.0 / f11;
      const double coeff_sq = std::exp(lgr + n * std::log(x));
      const double weight = std::exp((2.0 * w - 1.0) * std::log(r) - x - lgw -
                                     w * std::log(2.0)) * f11 / pi;
      return 2.0 * pi * c0sq * coeff_sq * weight;
    };
    const double R = std::sqrt(4.0 * (2.0 * n + 2.0 * w) + 120.0);
    double val = 0.0;
    if (w < 1.0) {
      // [0, delta] with t = r^{2w}: dr r^{2w-1} = dt/(2w)
      const double delta = 0.5;
      const auto sub = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double r = std::pow(t, 1.0 / (2.0 * w));
        return integrand(r) / (2.0 * w) * std::pow(r, 1.0 - 2.0 * w);
      };
      val += adaptive_simpson(sub, 0.0, std::pow(delta, 2.0 * w), 1e-12, 36);
      val += adaptive_simpson(integrand, delta, R, 1e-12, 36);
    } else {
      val = adaptive_simpson(integrand, 0.0, R, 1e-12, 36);
    }
    out.push_back(std::abs(val - 1.0));
  }
  return out;
}

// Uncertainty product of the distorted quadratures over |phi^(w)(z)>:
// DX_w DP_w = (1/2)<I_w>_z = (1/2)[1 + (w-1)/1F1(1, w; r^2/2)].
// Constant 1/2 at w = 1 and w/2 at r = 0.
inline double distorted_variance(cplx z, double w) {
  if (!(w > 0.0)) throw std::domain_error("distorted_variance: w must be > 0");
  return 0.5 * (1.0 + (w - 1.0) / kummer_1f1(1.0, w, std::norm(z) / 2.0));
}

// Matrix route: (1/2) sum c_n^* (I_w)_nm c_m with the explicit diagonal.
inline double distorted_variance_matrix(cplx z, double w, int N) {
  const CoherentState st = distorted_cs(z, w, N);
  const DistortedLadder L = ladder_cw(w, N);
  cplx s{};
  for (int k = 0; k < N; ++k) s += std::conj(st.coeffs[k]) * L.I_w(k, k) * st.coeffs[k];
  return 0.5 * s.real();
}

// D_w(z) = exp(z C_w^+) exp(-z* C_w) applied to |psi_1>, against the closed
// form  |phi^(wd)> ~ sum sqrt(G(w+n)/G(w)) (sqrt2 z)^n / n! |psi_{n+1}>
// normalized by 1F1(w, 1; 2|z|^2)^{-1/2}. The residual is the L2 distance
// minimized over a global phase.
struct DisplacedResult {
  CoherentState numeric;
  CoherentState closed;
  double residual;
};

inline CoherentState displaced_closed_form(cplx z, double w, int N) {
  if (!(w > 0.0)) throw std::domain_error("displaced_closed_form: w must be > 0");
  const double pref = 1.0 / std::sqrt(kummer_1f1(w, 1.0, 2.0 * std::norm(z)));
  const double lgw = detail::log_gamma(w);
  CoherentState st{Family::displaced, w, z, std::vector<cplx>(N, cplx{}), pref};
  cplx zn = 1.0;
  double log_nfact = 0.0;
  for (int n = 0; n + 1 < N; ++n) {
    if (n > 0) log_nfact += std::log(static_cast<double>(n));
    st.coeffs[n + 1] = pref * std::exp(0.5 * (detail::log_gamma(w + n) - lgw) - log_nfact) * zn;
    zn *= std::sqrt(2.0) * z;
  }
  return st;
}

inline DisplacedResult displaced_state(cplx z, double w, int N) {
  if (!(w > 0.0)) throw std::domain_error("displaced_state: w must be > 0");
  const DistortedLadder L = ladder_cw(w, N);
  const TruncatedOperator Dplus = expm(cplx(z.real(), z.imag()) * L.C_plus);
  const TruncatedOperator Dminus = expm(cplx(-1.0) * std::conj(z) * L.C);
  std::vector<cplx> e1(N, cplx{});
  e1[1] = 1.0;
  std::vector<cplx> v = Dplus.apply(Dminus.apply(e1));
  double nrm = 0.0;
  for (const auto& c : v) nrm += std::norm(c);
  if (nrm < 1e-24) throw truncation_error("displaced_state: numeric vector vanished", 0.0);
  nrm = std::sqrt(nrm);
  for (auto& c : v) c /= nrm;

  DisplacedResult r{CoherentState{Family::displaced, w, z, v, 1.0 / nrm},
                    displaced_closed_form(z, w, N), 0.0};
  // tail check: truncation must have left the dropped coefficients negligible
  if (std::abs(r.closed.coeffs[N - 1]) > 1e-12)
    throw truncation_error("displaced_state: truncation N too small for this z",
                           std::abs(r.closed.coeffs[N - 1]));
  cplx overlap{};
  for (int k = 0; k < N; ++k) overlap += std::conj(r.closed.coeffs[k]) * r.numeric.coeffs[k];
  const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0);
  double dist = 0.0;
  for (int k = 0; k < N; ++k) dist += std::norm(r.numeric.coeffs[k] - phase * r.closed.coeffs[k]);
  r.residual = std::sqrt(dist);
  return r;
}

}  // namespace biosc
