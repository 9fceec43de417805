#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "biosc/coherent.hpp"

using namespace biosc;

namespace {

// worst interior deviation of (annihilator . v) from z v
double eigen_residual(const TruncatedOperator& ann, const std::vector<cplx>& v, cplx z) {
  const std::vector<cplx> lhs = ann.apply(v);
  double r = 0.0;
  for (std::size_t k = 0; k + 4 < v.size(); ++k) r = std::max(r, std::abs(lhs[k] - z * v[k]));
  return r;
}

}  // namespace

TEST_CASE("transformed coherent state") {
  const CoherentState at0 = transformed_cs(cplx{}, -1.0, 20);
  CHECK(std::abs(at0.coeffs[1] - cplx(1.0)) < 1e-14);
  for (std::size_t k = 0; k < at0.coeffs.size(); ++k)
    if (k != 1) CHECK(std::abs(at0.coeffs[k]) == 0.0);

  // eps = -1: one-photon-added pattern, oracle coefficients built directly
  const cplx alpha(1.3, -0.7);
  const CoherentState st = transformed_cs(alpha, -1.0, 60);
  const double r2 = std::norm(alpha);
  double fact = 1.0;
  for (int n = 0; n < 12; ++n) {
    if (n > 0) fact *= n;
    const cplx expect = std::exp(-r2 / 4.0) / std::sqrt(r2 + 2.0) *
                        std::sqrt(2.0 * (n + 1) / fact) * std::pow(alpha / std::sqrt(2.0), n);
    CHECK(std::abs(st.coeffs[n + 1] - expect) < 1e-13);
  }
  CHECK(st.norm_sq() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK((st.coeffs[0] == cplx{}));
  // normalization holds at other eps too
  CHECK(transformed_cs(alpha, 0.5, 60).norm_sq() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("natural coherent state: fiducial limit, eigen-property, normalization") {
  const CoherentState at0 = natural_cs(cplx{}, -1.0, 20);
  CHECK(std::abs(at0.coeffs[1] - cplx(1.0)) < 1e-14);

  const cplx z(1.0, 0.5);
  const CoherentState st = natural_cs(z, -1.0, 60);
  CHECK(st.norm_sq() == doctest::Approx(1.0).epsilon(1e-10));
  const auto [A, Ap] = ladder_a(-1.0, 60);
  CHECK(eigen_residual(A, st.coeffs, z) < 1e-8);

  // z = 0 is twice degenerate: e0 and e1 are both annihilated
  std::vector<cplx> e0(10, cplx{}), e1(10, cplx{});
  e0[0] = 1.0;
  e1[1] = 1.0;
  const auto [A10, Ap10] = ladder_a(-1.0, 10);
  for (const cplx& v : A10.apply(e0)) CHECK((v == cplx{}));
  for (const cplx& v : A10.apply(e1)) CHECK((v == cplx{}));
}

TEST_CASE("natural reproducing kernel") {
  const double eps = -1.0;
  const cplx z(0.9, -0.3), y(0.2, 1.1);
  CHECK(std::abs(natural_kernel(z, z, eps) - cplx(1.0)) < 1e-12);
  CHECK(std::abs(natural_kernel(y, z, eps) - std::conj(natural_kernel(z, y, eps))) < 1e-12);
  // kernel reproduces the coefficient overlap sum c_n(y)^* c_n(z)
  const CoherentState sy = natural_cs(y, eps, 80), sz = natural_cs(z, eps, 80);
  cplx overlap{};
  for (int k = 0; k < 80; ++k) overlap += std::conj(sy.coeffs[k]) * sz.coeffs[k];
  CHECK(std::abs(overlap - natural_kernel(y, z, eps)) < 1e-10);
}

TEST_CASE("natural variance: r = 0 anchors and the matrix cross-route") {
  CHECK(natural_variance(cplx{}, 0.5).dxdp == doctest::Approx(0.625).epsilon(1e-14));
  CHECK(natural_variance(cplx{}, -3.0).dxdp == doctest::Approx(12.0).epsilon(1e-14));
  CHECK(natural_variance(cplx{}, -5.0).dxdp == doctest::Approx(24.0).epsilon(1e-14));
  for (double eps : {0.5, -3.0, -5.0}) {
    CHECK(natural_variance(cplx{}, eps).mean_H == doctest::Approx(1.0));  // state is psi_1
    for (double r = 0.0; r <= 6.0; r += 0.5) {
      const NaturalVariance closed = natural_variance(cplx(r, 0.0), eps);
      const NaturalVariance mat = natural_variance_matrix(cplx(r, 0.0), eps, 80);
      CHECK(std::abs(closed.dxdp - mat.dxdp) < 1e-8 * std::max(1.0, std::abs(closed.dxdp)));
      CHECK(std::abs(closed.mean_H - mat.mean_H) < 1e-8 * closed.mean_H);
      CHECK(std::abs(closed.mean_H2 - mat.mean_H2) < 1e-8 * closed.mean_H2);
    }
  }
  // uncertainty grows with |eps| at fixed r
  for (double r : {1.0, 3.0}) {
    const double v1 = natural_variance(cplx(r, 0.0), 0.5).dxdp;
    const double v2 = natural_variance(cplx(r, 0.0), -3.0).dxdp;
    const double v3 = natural_variance(cplx(r, 0.0), -5.0).dxdp;
    CHECK(v1 < v2);
    CHECK(v2 < v3);
  }
}

TEST_CASE("distorted coherent state: fiducial limit, eigen-property, normalization") {
  const CoherentState at0 = distorted_cs(cplx{}, 2.0, 20);
  CHECK(std::abs(at0.coeffs[1] - cplx(1.0)) < 1e-14);

  const cplx z(0.7, -0.3);
  const CoherentState st = distorted_cs(z, 2.0, 60);
  CHECK(st.norm_sq() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(eigen_residual(ladder_cw(2.0, 60).C, st.coeffs, z) < 1e-10);

  // w = 1: Gamma(1+n) = n!, pure oscillator pattern on the shifted ladder
  const CoherentState w1 = distorted_cs(cplx(1.2, 0.4), 1.0, 60);
  CHECK(w1.norm_sq() == doctest::Approx(1.0).epsilon(1e-10));
  double fact = 1.0;
  for (int n = 0; n < 10; ++n) {
    if (n > 0) fact *= n;
    const cplx expect = w1.norm_const * std::pow(cplx(1.2, 0.4) / std::sqrt(2.0), n) /
                        std::sqrt(fact);
    CHECK(std::abs(w1.coeffs[n + 1] - expect) < 1e-13);
  }
  CHECK_THROWS_AS(distorted_cs(cplx(1.0, 0.0), 0.0, 10), std::domain_error);

  // z = 0 degeneracy for the distorted annihilator too
  std::vector<cplx> e0(10, cplx{}), e1(10, cplx{});
  e0[0] = 1.0;
  e1[1] = 1.0;
  const DistortedLadder L = ladder_cw(2.0, 10);
  for (const cplx& v : L.C.apply(e0)) CHECK((v == cplx{}));
  for (const cplx& v : L.C.apply(e1)) CHECK((v == cplx{}));
}

TEST_CASE("distorted kernel is 1 on the diagonal") {
  for (double w : {0.5, 1.0, 2.0}) {
    const cplx z(0.8, 0.6);
    CHECK(std::abs(distorted_kernel(z, z, w) - cplx(1.0)) < 1e-12);
  }
}

TEST_CASE("distorted resolution of identity") {
  for (const double dev : distorted_identity_check(1.0, 8)) CHECK(dev < 1e-8);
  for (const double dev : distorted_identity_check(2.0, 8)) CHECK(dev < 1e-6);
  for (const double dev : distorted_identity_check(0.5, 8)) CHECK(dev < 1e-6);
}

TEST_CASE("distorted variance: anchors and matrix route") {
  CHECK(distorted_variance(cplx{}, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  for (double w : {0.1, 0.5, 1.0, 2.0, 3.0})
    CHECK(distorted_variance(cplx{}, w) == doctest::Approx(w / 2.0).epsilon(1e-13));
  for (double r = 0.0; r <= 5.0; r += 0.7)
    CHECK(distorted_variance(cplx(r, 0.0), 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(distorted_variance(cplx(2.0, 0.0), 0.1) -
                 distorted_variance_matrix(cplx(2.0, 0.0), 0.1, 120)) < 1e-8);
  for (double w : {0.5, 2.0, 3.0})
    for (double r : {0.5, 1.5, 3.0})
      CHECK(std::abs(distorted_variance(cplx(0.0, r), w) -
                     distorted_variance_matrix(cplx(0.0, r), w, 120)) < 1e-8);
}

TEST_CASE("natural resolution of identity (mellin-barnes route)") {
  const std::vector<double> devs = natural_identity_check(-1.0, 4);
  for (const double d : devs) CHECK(d < 1e-3);
}

TEST_CASE("displacement operator: invariant ground state, closed form") {
  const DisplacedResult at0 = displaced_state(cplx{}, 1.5, 40);
  CHECK(at0.residual < 1e-14);
  CHECK(std::abs(at0.numeric.coeffs[1] - cplx(1.0)) < 1e-13);

  // D_w(z) e0 = e0 exactly
  const double w = 1.5;
  const cplx z(0.4, 0.2);
  const DistortedLadder L = ladder_cw(w, 40);
  const TruncatedOperator D =
      expm(cplx(z.real(), z.imag()) * L.C_plus) * expm(cplx(-1.0) * std::conj(z) * L.C);
  std::vector<cplx> e0(40, cplx{});
  e0[0] = 1.0;
  const std::vector<cplx> im = D.apply(e0);
  CHECK(std::abs(im[0] - cplx(1.0)) < 1e-14);
  for (std::size_t k = 1; k < im.size(); ++k) CHECK(std::abs(im[k]) < 1e-14);

  CHECK(displaced_state(cplx(0.4, 0.2), 1.5, 80).residual < 1e-8);
  CHECK_THROWS_AS(displaced_state(cplx(0.4, 0.2), 1.5, 6), truncation_error);
}
