#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "biosc/quadrature.hpp"
#include "biosc/spectral.hpp"

using namespace biosc;

namespace {

const ModelParams fig5a{-1.0, sqrt_pi / 2.0, pi / 4.0, 0.0, 1.0};
const ModelParams pt_eps_m3{-3.0, sqrt_pi / 2.0, pi / 4.0, 0.0, 1.0};

template <typename F>
cplx fd1(const F& f, double x, double h) {
  return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

template <typename F>
cplx fd2c(const F& f, double x, double h) {
  return (-f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2 * h)) /
         (12.0 * h * h);
}

}  // namespace

TEST_CASE("excited states: energies, Schrodinger residual, bi-normalization") {
  const SpectralWorkspace ws(fig5a, GridSpec{});
  for (int n : {0, 1, 2, 3, 4, 5, 6, 7, 8}) {
    const Eigenstate st = ws.psi_excited(n);
    CHECK(st.index == n + 1);
    CHECK(st.energy == doctest::Approx(2.0 * n + 1.0));
    // pointwise residual with five-point second differences
    const auto psi = [&](double y) { return ws.psi_excited_at(n, y); };
    for (double x : {-3.1, -0.7, 0.4, 1.9}) {
      const cplx res = -fd2c(psi, x, 1e-2) + potential(x, fig5a) * psi(x) -
                       cplx(st.energy) * psi(x);
      CHECK(std::abs(res) < 1e-5);
    }
    // int psi^2 = 1 (no conjugation)
    std::vector<cplx> sq(st.wavefunction.n_points);
    for (std::size_t i = 0; i < sq.size(); ++i)
      sq[i] = st.wavefunction.values[i] * st.wavefunction.values[i];
    CHECK(std::abs(simpson(sq, st.wavefunction.dx()) - cplx(1.0)) < 1e-6);
  }
}

TEST_CASE("ground state: annihilation residual, bi-normalization, phase") {
  const SpectralWorkspace ws(fig5a, GridSpec{});
  const Eigenstate g = ws.psi_ground();
  CHECK(g.index == 0);
  CHECK(g.energy == doctest::Approx(-1.0));
  // A psi_0 = -psi_0' + beta psi_0 = 0
  const auto psi0 = [&](double y) { return ws.psi_ground_at(y); };
  for (double x : {-2.2, -0.4, 0.9, 2.6}) {
    const cplx res = -fd1(psi0, x, 1e-3) + beta_fn(x, fig5a) * psi0(x);
    CHECK(std::abs(res) < 1e-6);
  }
  std::vector<cplx> sq(g.wavefunction.n_points);
  for (std::size_t i = 0; i < sq.size(); ++i)
    sq[i] = g.wavefunction.values[i] * g.wavefunction.values[i];
  CHECK(std::abs(simpson(sq, g.wavefunction.dx()) - cplx(1.0)) < 1e-6);
  CHECK(ws.ground_chi() > -pi);
  CHECK(ws.ground_chi() <= pi);
}

TEST_CASE("Hermitian limit: real positive ground state") {
  const SpectralWorkspace ws(amm_params(2.0), GridSpec{});
  const Eigenstate g = ws.psi_ground();
  CHECK(std::abs(ws.ground_chi()) < 1e-12);
  for (const cplx& v : g.wavefunction.values) {
    CHECK(std::abs(v.imag()) < 1e-14);
    CHECK(v.real() >= 0.0);
  }
}

TEST_CASE("concomitant: psi_bar is the complex conjugate") {
  const SpectralWorkspace ws(fig5a, GridSpec{});
  const Eigenstate st = ws.psi_excited(2);
  const Eigenstate bar = psi_bar(st);
  for (std::size_t i = 0; i < st.wavefunction.n_points; ++i)
    CHECK((std::conj(bar.wavefunction.values[i]) == st.wavefunction.values[i]));
  // B^+ psibar_0 = -psibar_0' + beta^* psibar_0 = conj(A psi_0) = 0
  const auto psib = [&](double y) { return std::conj(ws.psi_ground_at(y)); };
  for (double x : {-1.1, 0.7}) {
    const cplx res = -fd1(psib, x, 1e-3) + std::conj(beta_fn(x, fig5a)) * psib(x);
    CHECK(std::abs(res) < 1e-6);
  }
}

TEST_CASE("A reverses B: A psi_{n+1} = sqrt(E_n - eps) phi_n") {
  // analytic route: A psi_{n+1} = [-phi'' + (beta^2 - beta') phi]/sqrt(E_n-eps)
  // with phi'' = (x^2 - E_n) phi
  for (int n : {0, 1, 4, 8}) {
    const double En = 2.0 * n + 1.0;
    const double s = std::sqrt(En - fig5a.eps);
    for (double x : {-2.7, -0.5, 1.3}) {
      const ModelPoint m = model_point(x, fig5a);
      const HermiteValue ph = hermite_phi(n, x);
      const cplx phi_dd = (x * x - En) * ph.value;
      const cplx lhs = (-phi_dd + (m.beta * m.beta - m.dbeta) * ph.value) / s;
      CHECK(std::abs(lhs - s * ph.value) < 1e-6);
    }
  }
}

TEST_CASE("bi-norm of B phi_n is real and positive before normalization") {
  const SpectralWorkspace ws(fig5a, GridSpec{});
  const GridSpec grid = ws.grid();
  for (int n : {0, 3, 6}) {
    std::vector<cplx> sq(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) {
      const HermiteValue ph = hermite_phi(n, grid.x(i));
      const cplx b = ph.derivative + ws.point(i).beta * ph.value;
      sq[i] = b * b;
    }
    const cplx bn = simpson(sq, grid.dx());
    CHECK(bn.real() > 0.0);
    CHECK(std::abs(bn.imag()) < 1e-8);
    CHECK(bn.real() == doctest::Approx(2.0 * n + 1.0 - fig5a.eps).epsilon(1e-8));
  }
}

TEST_CASE("bi-orthogonality: Gram matrix within 1e-6 of identity") {
  CHECK(biorthogonality_matrix(fig5a, 8, GridSpec{}).max_abs_dev < 1e-6);
  CHECK(biorthogonality_matrix(pt_eps_m3, 6, GridSpec{}).max_abs_dev < 1e-6);
  // lambda = 0: ordinary orthonormality
  CHECK(biorthogonality_matrix(amm_params(2.0), 8, GridSpec{}).max_abs_dev < 1e-6);
}

TEST_CASE("oscillator limit: psi_n approaches phi_n as gamma grows") {
  const GridSpec grid{};
  const SpectralWorkspace far(amm_params(1e6), grid);
  const SpectralWorkspace near(amm_params(2.0), grid);
  const SpectralWorkspace mid(amm_params(20.0), grid);
  auto dev = [&](const SpectralWorkspace& ws, int n) {
    const Eigenstate st = n == 0 ? ws.psi_ground() : ws.psi_excited(n - 1);
    cplx overlap{};
    for (std::size_t i = 0; i < grid.n_points; ++i)
      overlap += hermite_phi(n, grid.x(i)).value * std::conj(st.wavefunction.values[i]);
    const cplx phase = overlap / std::abs(overlap);
    double d = 0.0;
    for (std::size_t i = 0; i < grid.n_points; ++i)
      d = std::max(d, std::abs(phase * st.wavefunction.values[i] -
                               hermite_phi(n, grid.x(i)).value));
    return d;
  };
  for (int n : {0, 1, 2}) {
    CHECK(dev(far, n) < 1e-5);
    CHECK(dev(mid, n) < dev(near, n));  // monotone approach
  }
}

TEST_CASE("workspace phase integral is antisymmetric on a symmetric grid") {
  const SpectralWorkspace ws(fig5a, GridSpec{});
  const std::size_t np = ws.grid().n_points;
  // int_0^x dy/alpha^2 is odd for even alpha^2 (b = 0)
  for (std::size_t i = 0; i < np / 2; i += 97) {
    CHECK(std::abs(ws.phase_integral(i) + ws.phase_integral(np - 1 - i)) < 1e-9);
  }
  CHECK(std::abs(ws.phase_integral(np / 2)) < 1e-12);  // x = 0 node
}
