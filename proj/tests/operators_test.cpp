#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "biosc/matexp.hpp"
#include "biosc/operators.hpp"

using namespace biosc;

TEST_CASE("hubbard dyads and their multiplication rule") {
  const int N = 6;
  CHECK((hubbard(0, 0, N) * hubbard(0, 0, N) - hubbard(0, 0, N)).max_norm() == 0.0);
  CHECK((hubbard(1, 2, N) * hubbard(2, 3, N) - hubbard(1, 3, N)).max_norm() == 0.0);
  CHECK((hubbard(1, 2, N) * hubbard(3, 4, N)).max_norm() == 0.0);
  CHECK_THROWS_AS(hubbard(6, 0, N), std::out_of_range);

  std::mt19937 rng(7);
  std::uniform_int_distribution<int> idx(0, N - 1);
  for (int t = 0; t < 200; ++t) {
    const int n = idx(rng), m = idx(rng), r = idx(rng), s = idx(rng);
    const TruncatedOperator prod = hubbard(n, m, N) * hubbard(r, s, N);
    const TruncatedOperator expect = m == r ? hubbard(n, s, N) : TruncatedOperator(N);
    CHECK((prod - expect).max_norm() == 0.0);
  }
}

TEST_CASE("diagonal dyads sum to the truncated identity") {
  const int N = 7;
  TruncatedOperator sum(N);
  for (int n = 0; n < N; ++n) sum = sum + hubbard(n, n, N);
  CHECK((sum - TruncatedOperator::identity(N)).max_norm() == 0.0);
}

TEST_CASE("f-boson weights satisfy R(n) = kappa (w + n) with kappa = 2") {
  // theta_w(n, eps) = sqrt(2(n+1)) f_w(n+1); the distorted algebra is the
  // telescoping of R(n) - R(n-1) = kappa.
  for (double w : {0.0, 0.3, 1.0, 2.7}) {
    for (double eps : {-1.0, 0.5, -4.0}) {
      for (int n = 0; n < 12; ++n) {
        const double fw_sq = f_boson_entry(w, n, eps) * f_boson_entry(w, n, eps) /
                             (2.0 * (n + 1));
        const double R = 2.0 * (n + 1) * fw_sq * (2.0 * n + 3.0 - eps) * (2.0 * n + 1.0 - eps);
        CHECK(R == doctest::Approx(2.0 * (w + n)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("hamiltonian matrix: spectrum, trace, diagonal commutant") {
  const TruncatedOperator H = hamiltonian_matrix(-1.0, 4);
  CHECK((H(0, 0) == cplx(-1.0)));
  CHECK((H(1, 1) == cplx(1.0)));
  CHECK((H(2, 2) == cplx(3.0)));
  CHECK((H(3, 3) == cplx(5.0)));
  const TruncatedOperator H2 = hamiltonian_matrix(0.5, 4);
  cplx tr{};
  for (int i = 0; i < 4; ++i) tr += H2(i, i);
  CHECK(tr.real() == doctest::Approx(9.5));
  TruncatedOperator D(4);
  for (int i = 0; i < 4; ++i) D(i, i) = cplx(i * 0.3, -1.1 * i);
  CHECK(commutator(H, D).max_norm() == 0.0);
}

TEST_CASE("natural ladder: entries and kernel") {
  CHECK(natural_ladder_entry(0, -1.0) == doctest::Approx(4.0));  // sqrt(2*1*2*4)
  const auto [A, Ap] = ladder_a(-1.0, 8);
  std::vector<cplx> e0(8, cplx{}), e1(8, cplx{});
  e0[0] = 1.0;
  e1[1] = 1.0;
  for (const cplx& v : A.apply(e0)) CHECK((v == cplx{}));
  for (const cplx& v : A.apply(e1)) CHECK((v == cplx{}));
  for (const cplx& v : Ap.apply(e0)) CHECK((v == cplx{}));
  for (int j = 0; j < 8; ++j) {
    CHECK((A(0, j) == cplx{}));
    CHECK((A(j, 0) == cplx{}));
  }
}

TEST_CASE("distorted ladder: entries, kernel, distorted identity") {
  const DistortedLadder L1 = ladder_cw(1.0, 8);
  for (int n = 0; n + 2 < 8; ++n)
    CHECK(L1.C(n + 1, n + 2).real() == doctest::Approx(std::sqrt(2.0 * n + 2.0)));
  const DistortedLadder L0 = ladder_cw(0.0, 6);
  CHECK((L0.I_w(0, 0) == cplx{}));
  CHECK((L0.I_w(1, 1) == cplx{}));
  for (int k = 2; k < 6; ++k) CHECK((L0.I_w(k, k) == cplx(1.0)));
  std::vector<cplx> e0(8, cplx{}), e1(8, cplx{});
  e0[0] = 1.0;
  e1[1] = 1.0;
  const DistortedLadder L = ladder_cw(2.0, 8);
  for (const cplx& v : L.C.apply(e1)) CHECK((v == cplx{}));
  for (const cplx& v : L.C.apply(e0)) CHECK((v == cplx{}));
  for (const cplx& v : L.C_plus.apply(e0)) CHECK((v == cplx{}));
}

TEST_CASE("quadratures: structure and commutator") {
  const auto [X, P] = quadrature_pair(-1.0, 12);
  for (int j = 0; j < 12; ++j) {
    CHECK((X(0, j) == cplx{}));
    CHECK((X(j, 0) == cplx{}));
    CHECK((P(0, j) == cplx{}));
    CHECK((P(j, 0) == cplx{}));
  }
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      CHECK(X(i, j).imag() == 0.0);
      CHECK((X(i, j) == X(j, i)));
      CHECK(P(i, j).real() == 0.0);
      CHECK((P(i, j) == -P(j, i)));
    }
  CHECK(verify_xp_commutator(-1.0, 30).residual < 1e-10);
}

TEST_CASE("commutator basics") {
  const int N = 5;
  const TruncatedOperator lhs = commutator(hubbard(1, 2, N), hubbard(2, 1, N));
  const TruncatedOperator rhs = hubbard(1, 1, N) - hubbard(2, 2, N);
  CHECK((lhs - rhs).max_norm() == 0.0);
  CHECK_THROWS_AS(commutator(TruncatedOperator(3), TruncatedOperator(4)),
                  std::invalid_argument);
}

TEST_CASE("quadratic polynomial algebra holds on the interior block") {
  for (double eps : {0.5, -1.0, -3.0, -5.0}) {
    for (int N : {10, 30, 100}) {
      CHECK(verify_quadratic_algebra(eps, N).residual < 1e-9);
      CHECK(verify_quadrature_identity(eps, N).residual < 1e-9);
    }
  }
  // spec anchor: 1e-10 at N = 30
  CHECK(verify_quadratic_algebra(-1.0, 30).residual < 1e-10);
  CHECK(verify_quadratic_algebra(0.5, 30).residual < 1e-10);
  CHECK(verify_quadratic_algebra(-5.0, 30).residual < 1e-10);
}

TEST_CASE("distorted algebra holds for all distortion parameters") {
  for (double w : {0.0, 0.1, 0.5, 1.0, 2.0, 3.0}) {
    for (int N : {10, 30, 100}) {
      CHECK(verify_distorted_algebra(w, -1.0, N).residual < 1e-12);
    }
    CHECK(verify_distorted_algebra(w, 0.5, 30).residual < 1e-12);
  }
}

TEST_CASE("truncation artifacts live only in the last two rows/columns") {
  const int N = 20;
  const double eps = -3.0;
  const auto [A, Ap] = ladder_a(eps, N);
  const TruncatedOperator H = hamiltonian_matrix(eps, N);
  const TruncatedOperator I = TruncatedOperator::identity(N);
  const TruncatedOperator resid =
      commutator(A, Ap) - cplx(2.0) * ((cplx(3.0) * H - cplx(eps) * I) * (H - cplx(eps) * I));
  CHECK(resid.max_norm() > 1.0);  // the truncation corner is large...
  for (int i = 0; i < N - 2; ++i)
    for (int j = 0; j < N - 2; ++j)
      CHECK(std::abs(resid(i, j)) < 1e-11);  // ...but the interior is exact (few ulps)
}

TEST_CASE("operator transform: anchors and adjoint route") {
  const int N = 12;
  const double eps = -1.0;
  const TruncatedOperator tI = transform_operator(TruncatedOperator::identity(N), eps);
  for (int k = 0; k < N; ++k)
    for (int j = 0; j < N; ++j) {
      const cplx expect = (k == j && k >= 1) ? cplx(eigen_energy(k, eps) - eps) : cplx{};
      CHECK(std::abs(tI(k, j) - expect) < 1e-12);
    }
  TruncatedOperator Hosc(N);
  for (int n = 0; n < N; ++n) Hosc(n, n) = 2.0 * n + 1.0;
  const TruncatedOperator tH = transform_operator(Hosc, eps);
  for (int k = 1; k < N; ++k)
    CHECK(std::abs(tH(k, k) - eigen_energy(k, eps) * (eigen_energy(k, eps) - eps)) < 1e-11);
  const auto [A, Ap] = ladder_a(eps, N);
  CHECK((transform_operator(oscillator_annihilator(N), eps) - A).max_norm() < 1e-12);
  // adjoint route: transform(O)^+ == transform(O^+)
  const TruncatedOperator a = oscillator_annihilator(N);
  CHECK((transform_operator(a, eps).adjoint() - transform_operator(a.adjoint(), eps)).max_norm() <
        1e-12);
}

TEST_CASE("oscillator-limit operators equal the transformed ladders") {
  CHECK(f_boson_entry(1.0, 0, -1.0) == doctest::Approx(0.5));
  for (double w : {0.5, 1.0, 2.5}) {
    const int N = 30;
    const OscillatorLimitOps ops = oscillator_limit_ops(w, N);
    CHECK((ops.A_osc - ladder_a(-1.0, N).first).max_norm() < 1e-12);
    CHECK((ops.C_osc - ladder_cw(w, N).C).max_norm() < 1e-12);
  }
  CHECK_THROWS_AS(oscillator_limit_ops(0.0, 10), std::domain_error);
}

TEST_CASE("matrix exponential against a Taylor-series oracle") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  const int N = 6;
  TruncatedOperator A(N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) A(i, j) = cplx(u(rng), u(rng));
  // independent oracle: plain Taylor sum
  TruncatedOperator sum = TruncatedOperator::identity(N);
  TruncatedOperator term = TruncatedOperator::identity(N);
  for (int k = 1; k <= 40; ++k) {
    term = cplx(1.0 / k) * (term * A);
    sum = sum + term;
  }
  CHECK((expm(A) - sum).max_norm() < 1e-12);
  // exp(0) = I, exp(diag) = diag of exponentials
  CHECK((expm(TruncatedOperator(N)) - TruncatedOperator::identity(N)).max_norm() == 0.0);
  TruncatedOperator D(N);
  for (int i = 0; i < N; ++i) D(i, i) = cplx(0.3 * i, -0.2 * i);
  const TruncatedOperator E = expm(D);
  for (int i = 0; i < N; ++i)
    CHECK(std::abs(E(i, i) - std::exp(D(i, i))) < 1e-13);
}
