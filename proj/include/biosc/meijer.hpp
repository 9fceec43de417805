#pragma once

#include <cmath>
#include <vector>

#include "biosc/common.hpp"
#include "biosc/quadrature.hpp"
#include "biosc/specfun.hpp"

namespace biosc {

// Radial density h of the natural-family resolution-of-identity measure,
// recovered from its Mellin transform
//   int_0^inf x^{m-1} [8 pi h(x)] dx = Gamma(m) Gamma(m-(1+eps)/2) Gamma(m+(1-eps)/2)
// by numerical inversion along the vertical contour Re s = 1 (right of every
// pole of the three Gamma factors for eps < 1), trapezoid rule truncated at
// |Im s| = contour_height. The Gamma product on the contour is cached, so
// evaluations cost one complex exponential per node.
class MellinBarnesH {
public:
  MellinBarnesH(double eps, const SeriesConfig& cfg = {}) : eps_(eps) {
    cfg.validate();
    if (!(eps < 1.0)) throw std::domain_error("MellinBarnesH: eps must be < 1");
    const int n = cfg.contour_points;
    const double T = cfg.contour_height;
    dt_ = 2.0 * T / (n - 1);
    nodes_.resize(n);
    gprod_.resize(n);
    const double b2 = -(1.0 + eps) / 2.0, b3 = (1.0 - eps) / 2.0;
    for (int k = 0; k < n; ++k) {
      const double t = -T + k * dt_;
      const cplx s(1.0, t);
      nodes_[k] = t;
      gprod_[k] = std::exp(detail::log_gamma(s) + detail::log_gamma(s + b2) +
                           detail::log_gamma(s + b3));
      if (k == 0 || k == n - 1) gprod_[k] *= 0.5;  // trapezoid end weights
    }
  }

  double eps() const { return eps_; }

  // h(x), x > 0. The sum is accumulated in long double: the moment
  // integrands multiply h by x^{m-1}, which amplifies the cancellation noise
  // of the oscillatory trapezoid sum at large x.
  double value(double x) const {
    if (!(x > 0.0)) throw std::domain_error("MellinBarnesH::value: x must be > 0");
    using cld = std::complex<long double>;
    const long double L = std::log(static_cast<long double>(x));
    cld phase(std::cos(-nodes_[0] * L), std::sin(-nodes_[0] * L));
    const cld step(std::cos(-dt_ * L), std::sin(-dt_ * L));
    cld sum = 0.0L;
    for (std::size_t k = 0; k < gprod_.size(); ++k) {
      sum += cld(gprod_[k].real(), gprod_[k].imag()) * phase;
      phase *= step;
    }
    return static_cast<double>(sum.real()) * dt_ / (16.0 * pi * pi * x);
  }

  // Exact m-th Mellin moment of 8 pi h.
  double moment_target(double m) const {
    return std::exp(detail::log_gamma(m) + detail::log_gamma(m - (1.0 + eps_) / 2.0) +
                    detail::log_gamma(m + (1.0 - eps_) / 2.0));
  }

  // Quadrature of int_0^inf x^{m-1} 8 pi h(x) dx against the inverted density.
  double moment(double m, double rel_tol = 1e-6) const {
    const auto f = [this, m](double x) {
      return std::pow(x, m - 1.0) * 8.0 * pi * value(x);
    };
    const double scale = moment_target(m);
    // the integrand decays like exp(-3 x^{1/3}); panel splitting keeps the
    // adaptive recursion from missing the peak
    static constexpr double cuts[] = {1e-8, 1.0, 10.0, 100.0, 1000.0, 8000.0};
    double total = 0.0;
    for (int i = 0; i + 1 < 6; ++i)
      total += adaptive_simpson(f, cuts[i], cuts[i + 1], rel_tol * scale / 8.0, 28);
    return total;
  }

  // |moment/target - 1| for the m-th moment; the contour self-check.
  double moment_relative_error(double m, double rel_tol = 1e-6) const {
    return std::abs(moment(m, rel_tol) / moment_target(m) - 1.0);
  }

  // Estimated relative accuracy of the inversion (first-moment check).
  // Values above the caller's tolerance mean the contour truncation is too
  // aggressive for the requested eps.
  double accuracy_estimate() const { return moment_relative_error(1.0); }

private:
  double eps_;
  double dt_;
  std::vector<double> nodes_;
  std::vector<cplx> gprod_;
};

// One-shot evaluation; hot loops should hold a MellinBarnesH instead.
inline double meijer_h_natural(double x, double eps, const SeriesConfig& cfg = {}) {
  return MellinBarnesH(eps, cfg).value(x);
}

}  // namespace biosc
