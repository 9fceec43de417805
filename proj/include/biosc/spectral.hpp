#pragma once

#include <cmath>
#include <vector>

#include "biosc/common.hpp"
#include "biosc/model.hpp"
#include "biosc/quadrature.hpp"
#include "biosc/specfun.hpp"

namespace biosc {

// One eigenstate of H_lambda sampled on the working grid.
// energy = eps for index 0, else 2(index-1)+1.
struct Eigenstate {
  int index;
  double energy;
  GridFunction wavefunction;
};

// Concomitant psi_bar_n = psi_n^* (shares the eigenstate's index and energy).
inline Eigenstate psi_bar(const Eigenstate& state) {
  Eigenstate out = state;
  for (auto& v : out.wavefunction.values) v = std::conj(v);
  return out;
}

// Immutable per-grid cache of the Darboux data (u1, u2, alpha, beta, V) plus
// the cumulative phase integral int_0^x dy/alpha^2. Eigenstate construction,
// the Gram matrix and the CLI all share one of these.
class SpectralWorkspace {
public:
  SpectralWorkspace(const ModelParams& p, const GridSpec& grid, const SeriesConfig& cfg = {})
      : p_(p), grid_(grid), cfg_(cfg) {
    p_.validate();
    grid_.validate();
    pts_.reserve(grid_.n_points);
    for (std::size_t i = 0; i < grid_.n_points; ++i)
      pts_.push_back(model_point(grid_.x(i), p_, cfg_));

    std::vector<double> inv_q(grid_.n_points);
    for (std::size_t i = 0; i < grid_.n_points; ++i) inv_q[i] = 1.0 / pts_[i].q;
    phase_ = cumulative_simpson(inv_q, grid_.dx());
    // rebase the cumulative integral so it vanishes at x = 0
    const double ref0 = phase_at_origin_offset();
    for (auto& v : phase_) v -= ref0;

    origin_ = model_point(0.0, p_, cfg_);
    compute_ground_normalization();
  }

  const ModelParams& params() const { return p_; }
  const GridSpec& grid() const { return grid_; }
  const ModelPoint& point(std::size_t i) const { return pts_[i]; }

  // int_0^{x_i} dy / alpha^2(y)
  double phase_integral(std::size_t i) const { return phase_[i]; }

  cplx potential_at(std::size_t i) const { return pts_[i].V; }

  // psi_{n+1} = [phi_n' + beta phi_n] / sqrt(E_n - eps), eigenstate index n+1.
  Eigenstate psi_excited(int n) const {
    if (n < 0) throw std::domain_error("psi_excited: n must be >= 0");
    const double En = 2.0 * n + 1.0;
    const double theta = 1.0 / std::sqrt(En - p_.eps);
    Eigenstate st{n + 1, En, {grid_.x_min, grid_.x_max, grid_.n_points, {}}};
    st.wavefunction.values.resize(grid_.n_points);
    for (std::size_t i = 0; i < grid_.n_points; ++i) {
      const HermiteValue ph = hermite_phi(n, grid_.x(i));
      st.wavefunction.values[i] = theta * (ph.derivative + pts_[i].beta * ph.value);
    }
    return st;
  }

  cplx psi_excited_at(int n, double x) const {
    const double En = 2.0 * n + 1.0;
    const HermiteValue ph = hermite_phi(n, x);
    const ModelPoint m = model_point(x, p_, cfg_);
    return (ph.derivative + m.beta * ph.value) / std::sqrt(En - p_.eps);
  }

  // psi_0 = |<psibar_eps|psi_eps>|^{-1/2} e^{-i chi/2} psi_eps with
  // psi_eps = (alpha(0)/alpha(x)) exp(i lambda int_0^x dy/alpha^2)
  // and <psibar_eps|psi_eps> = int psi_eps^2 dx (no conjugation).
  Eigenstate psi_ground() const {
    Eigenstate st{0, p_.eps, {grid_.x_min, grid_.x_max, grid_.n_points, {}}};
    st.wavefunction.values.resize(grid_.n_points);
    for (std::size_t i = 0; i < grid_.n_points; ++i)
      st.wavefunction.values[i] = ground_prefactor_ * unnormalized_ground(i);
    return st;
  }

  cplx psi_ground_at(double x) const {
    const ModelPoint m = model_point(x, p_, cfg_);
    const auto inv_q = [this](double y) { return 1.0 / model_point(y, p_, cfg_).q; };
    const double ph = adaptive_simpson(inv_q, 0.0, x, 1e-13, 32);
    return ground_prefactor_ * (origin_.alpha / m.alpha) *
           std::exp(cplx(0.0, p_.lambda * ph));
  }

  // chi: principal argument of the ground bi-norm integral (phase fixed at x = 0).
  double ground_chi() const { return ground_chi_; }

private:
  double phase_at_origin_offset() const {
    // cumulative_simpson integrates from x_min; find int_{x_min}^{0}
    if (grid_.x_min >= 0.0) {
      const auto inv_q = [this](double y) { return 1.0 / model_point(y, p_, cfg_).q; };
      return -adaptive_simpson(inv_q, 0.0, grid_.x_min, 1e-13, 32);
    }
    // 0 lies inside the grid for every supported configuration; when it is a
    // node use the cached value, otherwise integrate the short leftover leg
    const double h = grid_.dx();
    const double k = (0.0 - grid_.x_min) / h;
    const std::size_t k0 = static_cast<std::size_t>(k);
    if (std::abs(k - static_cast<double>(k0)) < 1e-9) return phase_[k0];
    const auto inv_q = [this](double y) { return 1.0 / model_point(y, p_, cfg_).q; };
    return phase_[k0] + adaptive_simpson(inv_q, grid_.x(k0), 0.0, 1e-13, 32);
  }

  cplx unnormalized_ground(std::size_t i) const {
    return (origin_.alpha / pts_[i].alpha) * std::exp(cplx(0.0, p_.lambda * phase_[i]));
  }

  void compute_ground_normalization() {
    std::vector<cplx> sq(grid_.n_points);
    for (std::size_t i = 0; i < grid_.n_points; ++i) {
      const cplx v = unnormalized_ground(i);
      sq[i] = v * v;
    }
    const cplx S = simpson(sq, grid_.dx());
    if (std::abs(S) < 1e-12)
      throw normalization_error("ground-state bi-norm |int psi_eps^2 dx| below floor");
    ground_chi_ = std::arg(S);
    ground_prefactor_ = std::exp(cplx(0.0, -0.5 * ground_chi_)) / std::sqrt(std::abs(S));
  }

  ModelParams p_;
  GridSpec grid_;
  SeriesConfig cfg_;
  std::vector<ModelPoint> pts_;
  std::vector<double> phase_;
  ModelPoint origin_{};
  double ground_chi_ = 0.0;
  cplx ground_prefactor_{1.0, 0.0};
};

inline Eigenstate psi_excited(int n, const ModelParams& p, const GridSpec& grid,
                              const SeriesConfig& cfg = {}) {
  return SpectralWorkspace(p, grid, cfg).psi_excited(n);
}

inline Eigenstate psi_ground(const ModelParams& p, const GridSpec& grid,
                             const SeriesConfig& cfg = {}) {
  return SpectralWorkspace(p, grid, cfg).psi_ground();
}

// Gram matrix G[m][n] = int psi_n psi_m dx (bi-product: no conjugation).
struct BiorthoResult {
  int dim;                  // n_max + 1
  std::vector<cplx> gram;   // row-major dim x dim
  double max_abs_dev;       // max |G - I|

  cplx at(int m, int n) const { return gram[static_cast<std::size_t>(m) * dim + n]; }
};

inline BiorthoResult biorthogonality_matrix(const SpectralWorkspace& ws, int n_max) {
  const std::size_t np = ws.grid().n_points;
  const double h = ws.grid().dx();
  std::vector<Eigenstate> states;
  states.push_back(ws.psi_ground());
  for (int n = 0; n < n_max; ++n) states.push_back(ws.psi_excited(n));

  BiorthoResult r{n_max + 1, {}, 0.0};
  r.gram.assign(static_cast<std::size_t>(r.dim) * r.dim, cplx{});
  std::vector<cplx> prod(np);
  for (int m = 0; m <= n_max; ++m) {
    for (int n = m; n <= n_max; ++n) {
      const auto& vm = states[m].wavefunction.values;
      const auto& vn = states[n].wavefunction.values;
      for (std::size_t i = 0; i < np; ++i) prod[i] = vm[i] * vn[i];
      const cplx g = simpson(prod, h);
      r.gram[static_cast<std::size_t>(m) * r.dim + n] = g;
      r.gram[static_cast<std::size_t>(n) * r.dim + m] = g;  // integrand symmetric
      const double dev = std::abs(g - (m == n ? cplx(1.0) : cplx(0.0)));
      if (dev > r.max_abs_dev) r.max_abs_dev = dev;
    }
  }
  return r;
}

inline BiorthoResult biorthogonality_matrix(const ModelParams& p, int n_max,
                                            const GridSpec& grid, const SeriesConfig& cfg = {}) {
  return biorthogonality_matrix(SpectralWorkspace(p, grid, cfg), n_max);
}

}  // namespace biosc
