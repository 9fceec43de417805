#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "biosc/bargmann.hpp"
#include "biosc/coherent.hpp"
#include "biosc/common.hpp"
#include "biosc/meijer.hpp"
#include "biosc/model.hpp"
#include "biosc/operators.hpp"
#include "biosc/runconfig.hpp"
#include "biosc/spectral.hpp"

namespace biosc {

// One verified identity: key is the stable report tag, residual the worst
// value found across the configured sweep, tolerance the pinned bound.
struct CheckResult {
  std::string key;
  double residual;
  double tolerance;
  bool pass() const { return residual < tolerance; }
};

namespace detail {

inline double max_abs_diff(const TruncatedOperator& A, const TruncatedOperator& B) {
  return (A - B).max_norm();
}

inline std::vector<cplx> random_state(std::mt19937_64& rng, int dim, int n_coeffs) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(dim, cplx{});
  for (int i = 1; i <= n_coeffs && i < dim; ++i) v[i] = cplx(u(rng), u(rng));
  return v;
}

inline double series_max_diff(const PowerSeries& a, const PowerSeries& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.c.size() && i < b.c.size(); ++i)
    m = std::max(m, std::abs(a.c[i] - b.c[i]));
  return m;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// algebra suite

inline std::vector<CheckResult> suite_algebra(const std::vector<double>& eps_list,
                                              const std::vector<double>& w_list, int N) {
  double acomm1 = 0.0, acomm2 = 0.0, acomm3 = 0.0, acomm4 = 0.0, quad1 = 0.0;
  double rcom2 = 0.0, dist2 = 0.0, ob = 0.0, oc = 0.0;
  for (const double eps : eps_list) {
    const NaturalAlgebraCheck nat = check_natural_algebra(eps, N);
    acomm1 = std::max(acomm1, nat.acomm1);
    acomm2 = std::max(acomm2, nat.acomm2);
    acomm4 = std::max(acomm4, nat.acomm4);
    quad1 = std::max(quad1, nat.quad1);
    const auto [A, Ap] = ladder_a(eps, N);

    // conjugate-transpose relation between the two transform routes
    const TruncatedOperator a = oscillator_annihilator(N);
    acomm3 = std::max(acomm3, detail::max_abs_diff(transform_operator(a, eps).adjoint(),
                                                   transform_operator(a.adjoint(), eps)));

    // transform anchors: identity -> H - eps (shifted), H -> H(H-eps), a -> A
    const TruncatedOperator tI = transform_operator(TruncatedOperator::identity(N), eps);
    TruncatedOperator expectI(N);
    for (int k = 1; k < N; ++k) expectI(k, k) = eigen_energy(k, eps) - eps;
    ob = std::max(ob, detail::max_abs_diff(tI, expectI));
    TruncatedOperator Hosc(N);
    for (int n = 0; n < N; ++n) Hosc(n, n) = 2.0 * n + 1.0;
    const TruncatedOperator tH = transform_operator(Hosc, eps);
    TruncatedOperator expectH(N);
    for (int k = 1; k < N; ++k)
      expectH(k, k) = eigen_energy(k, eps) * (eigen_energy(k, eps) - eps);
    ob = std::max(ob, detail::max_abs_diff(tH, expectH));
    ob = std::max(ob, detail::max_abs_diff(transform_operator(a, eps), A));
    oc = std::max(oc, detail::max_abs_diff(transform_operator(a.adjoint(), eps), Ap));

    for (const double w : w_list) {
      const DistortedAlgebraCheck dis = check_distorted_algebra(w, eps, N);
      rcom2 = std::max(rcom2, dis.rcom2);
      dist2 = std::max(dist2, dis.dist2);
    }
  }

  // Hubbard multiplication rule, exact on every index pair
  double hub = 0.0;
  const int M = 6;
  for (int n = 0; n < M; ++n)
    for (int m = 0; m < M; ++m)
      for (int r = 0; r < M; ++r)
        for (int s = 0; s < M; ++s) {
          const TruncatedOperator prod = hubbard(n, m, M) * hubbard(r, s, M);
          const TruncatedOperator expect =
              m == r ? hubbard(n, s, M) : TruncatedOperator(M);
          hub = std::max(hub, detail::max_abs_diff(prod, expect));
        }

  return {{"Acomm1", acomm1, 1e-9}, {"Acomm2", acomm2, 1e-9}, {"Acomm3", acomm3, 1e-12},
          {"Acomm4", acomm4, 1e-9}, {"quad1", quad1, 1e-9},   {"rcom2", rcom2, 1e-12},
          {"dist2", dist2, 1e-12},  {"Ob", ob, 1e-12},        {"Oc", oc, 1e-12},
          {"hubbard", hub, 1e-15}};
}

// ---------------------------------------------------------------------------
// biorthogonality suite (model + spectral identities on the configured set)

inline std::vector<CheckResult> suite_biorthogonality(const ModelParams& p, const GridSpec& grid,
                                                      int n_max = 8) {
  const SpectralWorkspace ws(p, grid);
  std::vector<CheckResult> out;
  out.push_back({"ortho1", biorthogonality_matrix(ws, n_max).max_abs_dev, 1e-6});

  const double L = std::min(-grid.x_min, grid.x_max);
  const double area = zero_total_area(p, L);
  out.push_back({"zero", std::abs(area), 1e-8});
  out.push_back({"zero_vs_closed", std::abs(area - zero_total_area_endpoint(p, L)), 1e-10});

  // potential route agreement on the grid interior
  double routes = 0.0, closed_form = 0.0, riccati = 0.0;
  const double h = 1e-3;  // stencil for the finite-difference Riccati check
  for (std::size_t i = 0; i < grid.n_points; i += 5) {
    const double x = grid.x(i);
    const cplx VA = potential(x, p);
    routes = std::max(routes, std::abs(VA - potential_parts(x, p)));
    if (p.eps == -1.0)
      closed_form =
          std::max(closed_form, std::abs(VA - potential_eps_minus1(x, p.a, p.b, p.c, p.lambda)));
    // five-point derivative of beta
    const cplx d = (-beta_fn(x + 2 * h, p) + 8.0 * beta_fn(x + h, p) - 8.0 * beta_fn(x - h, p) +
                    beta_fn(x - 2 * h, p)) /
                   (12.0 * h);
    const cplx b = ws.point(i).beta;
    riccati = std::max(riccati, std::abs(-d + b * b - cplx(x * x - p.eps)));
  }
  out.push_back({"potparts", routes, 1e-8});
  if (p.eps == -1.0) out.push_back({"potosc", closed_form, 1e-8});
  out.push_back({"rica1", riccati, 1e-6});
  return out;
}

// ---------------------------------------------------------------------------
// measures suite

inline std::vector<CheckResult> suite_measures(double eps, const std::vector<double>& w_list,
                                               const SeriesConfig& cfg = {}) {
  double mu = 0.0;
  for (const double w : w_list) {
    if (!(w > 0.0)) continue;  // coherent-state measure needs w > 0
    for (const double dev : distorted_identity_check(w, 8)) mu = std::max(mu, dev);
  }
  const MellinBarnesH h(eps, cfg);
  double int4 = 0.0;
  for (int m = 1; m <= 5; ++m) int4 = std::max(int4, h.moment_relative_error(m));
  double int3 = 0.0;
  for (const double dev : natural_identity_check(eps, 4, cfg)) int3 = std::max(int3, dev);
  return {{"mu", mu, 1e-6}, {"int4", int4, 1e-4}, {"int3", int3, 1e-3}};
}

// ---------------------------------------------------------------------------
// bargmann suite

inline std::vector<CheckResult> suite_bargmann(double eps, double w, int n_states = 100,
                                               std::uint64_t seed = 0xB105C0DEULL) {
  const int dim = 12, n_coeffs = 10;
  std::mt19937_64 rng(seed);
  const auto [A, Ap] = ladder_a(eps, dim);
  const DistortedLadder L = ladder_cw(w, dim);
  const TruncatedOperator Ad = partial_ladder_matrix(eps, dim);

  double create_nat = 0.0, create_dist = 0.0, annih_nat = 0.0, annih_dist = 0.0, partial = 0.0;
  for (int s = 0; s < n_states; ++s) {
    const std::vector<cplx> v = detail::random_state(rng, dim, n_coeffs);
    const PowerSeries fn = to_bargmann(v, Family::natural, eps);
    const PowerSeries fw = to_bargmann(v, Family::distorted, w);

    create_nat = std::max(create_nat, detail::series_max_diff(
        to_bargmann(Ap.apply(v), Family::natural, eps), bargmann_create(fn)));
    create_dist = std::max(create_dist, detail::series_max_diff(
        to_bargmann(L.C_plus.apply(v), Family::distorted, w), bargmann_create(fw)));
    annih_nat = std::max(annih_nat, detail::series_max_diff(
        to_bargmann(A.apply(v), Family::natural, eps), bargmann_annihilate_natural(fn, eps)));
    annih_dist = std::max(annih_dist, detail::series_max_diff(
        to_bargmann(L.C.apply(v), Family::distorted, w),
        bargmann_annihilate_distorted(fw, w, fw.c[0])));
    partial = std::max(partial, detail::series_max_diff(
        to_bargmann(Ad.apply(v), Family::natural, eps), bargmann_partial_natural(fn)));
  }

  // P-representation pairings (P3): delta-derivative eigenstate projectors for
  // n = 0, 1 (distorted family) and displaced-delta coherent projectors.
  double p3 = 0.0;
  for (int n = 0; n <= 1; ++n) {
    const PDistribution P = p_representation_eigenstate(n + 1, Family::distorted, w);
    for (int m = 1; m <= 3; ++m)
      for (int k = 1; k <= 3; ++k) {
        const cplx got = p_pair_distorted_eigenstate(P, w, m, k);
        const cplx expect = (m == n + 1 && k == n + 1) ? cplx(1.0) : cplx{};
        p3 = std::max(p3, std::abs(got - expect));
      }
  }
  {
    const cplx alpha(0.7, -0.4);
    const PDistribution P = p_representation_coherent(alpha, Family::distorted, w);
    const CoherentState st = distorted_cs(alpha, w, dim);
    for (int m = 1; m <= 3; ++m)
      for (int k = 1; k <= 3; ++k) {
        const cplx got = p_pair_coherent_projector(P, Family::distorted, w, m, k);
        const cplx expect = st.coeffs[m] * std::conj(st.coeffs[k]);
        p3 = std::max(p3, std::abs(got - expect));
      }
  }

  return {{"bargmann1", std::max(create_nat, create_dist), 1e-12},
          {"fockop1", annih_nat, 1e-12},
          {"fockop2", partial, 1e-12},
          {"fockop3", annih_dist, 1e-12},
          {"P3", p3, 1e-4}};
}

// ---------------------------------------------------------------------------
// limits suite (gamma -> infinity convergence to the oscillator)

inline double sup_deviation_phase_aligned(const Eigenstate& psi, int n) {
  const GridFunction& wf = psi.wavefunction;
  cplx overlap{};
  for (std::size_t i = 0; i < wf.n_points; ++i)
    overlap += hermite_phi(n, wf.x(i)).value * std::conj(wf.values[i]);
  const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0);
  double dev = 0.0;
  for (std::size_t i = 0; i < wf.n_points; ++i)
    dev = std::max(dev, std::abs(phase * wf.values[i] - hermite_phi(n, wf.x(i)).value));
  return dev;
}

inline std::vector<CheckResult> suite_limits(const GridSpec& grid,
                                             const std::vector<double>& w_list, int N = 30) {
  const double gamma = 1e6;
  const SpectralWorkspace ws(amm_params(gamma), grid);
  double states = sup_deviation_phase_aligned(ws.psi_ground(), 0);
  for (int n = 0; n < 4; ++n)
    states = std::max(states, sup_deviation_phase_aligned(ws.psi_excited(n), n + 1));

  double potg = 0.0;
  for (int i = 0; i <= 240; ++i) {
    const double x = -6.0 + i * 0.05;
    potg = std::max(potg, std::abs(amm_potential(x, gamma) - (x * x - 2.0)));
  }

  const auto [A, Ap] = ladder_a(-1.0, N);
  double aosc = 0.0, cosc = 0.0;
  for (const double w : w_list) {
    if (!(w > 0.0)) continue;
    const OscillatorLimitOps ops = oscillator_limit_ops(w, N);
    aosc = std::max(aosc, detail::max_abs_diff(ops.A_osc, A));
    cosc = std::max(cosc, detail::max_abs_diff(ops.C_osc, ladder_cw(w, N).C));
  }

  return {{"states", states, 1e-5}, {"potg", potg, 1e-5},
          {"aosc", aosc, 1e-12},    {"cosc", cosc, 1e-12}};
}

}  // namespace biosc
