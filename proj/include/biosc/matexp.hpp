#pragma once

#include <cmath>
#include <vector>

#include "biosc/common.hpp"
#include "biosc/operators.hpp"

namespace biosc {

namespace detail {

// Solve D X = E for X by LU with partial pivoting (dense, desk scale).
inline TruncatedOperator lu_solve(TruncatedOperator D, TruncatedOperator E) {
  const int n = D.dim();
  std::vector<int> piv(n);
  for (int i = 0; i < n; ++i) piv[i] = i;
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(D(k, k));
    for (int i = k + 1; i < n; ++i)
      if (std::abs(D(i, k)) > best) { best = std::abs(D(i, k)); p = i; }
    if (best == 0.0) throw std::runtime_error("lu_solve: singular matrix");
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(D(k, j), D(p, j));
      for (int j = 0; j < n; ++j) std::swap(E(k, j), E(p, j));
    }
    const cplx pivot = D(k, k);
    for (int i = k + 1; i < n; ++i) {
      const cplx f = D(i, k) / pivot;
      if (f == cplx{}) continue;
      for (int j = k + 1; j < n; ++j) D(i, j) -= f * D(k, j);
      for (int j = 0; j < n; ++j) E(i, j) -= f * E(k, j);
    }
  }
  // back substitution
  for (int k = n - 1; k >= 0; --k) {
    const cplx pivot = D(k, k);
    for (int j = 0; j < n; ++j) E(k, j) /= pivot;
    for (int i = 0; i < k; ++i) {
      const cplx f = D(i, k);
      if (f == cplx{}) continue;
      for (int j = 0; j < n; ++j) E(i, j) -= f * E(k, j);
    }
  }
  return E;
}

inline double inf_norm(const TruncatedOperator& A) {
  double m = 0.0;
  for (int i = 0; i < A.dim(); ++i) {
    double row = 0.0;
    for (int j = 0; j < A.dim(); ++j) row += std::abs(A(i, j));
    m = std::max(m, row);
  }
  return m;
}

}  // namespace detail

// Matrix exponential by scaling and squaring with a diagonal Pade
// approximant (q = 6). Exact up to round-off for the strictly shifted
// (nilpotent) ladder matrices used by the displacement operator, where the
// Taylor series itself terminates.
inline TruncatedOperator expm(const TruncatedOperator& A) {
  const int n = A.dim();
  const double norm = detail::inf_norm(A);
  int s = 0;
  if (norm > 0.5) s = std::max(0, static_cast<int>(std::floor(std::log2(norm))) + 2);
  const cplx scale(1.0 / std::ldexp(1.0, s), 0.0);
  const TruncatedOperator As = scale * A;

  constexpr int q = 6;
  TruncatedOperator X = As;
  TruncatedOperator E = TruncatedOperator::identity(n) + cplx(0.5) * As;
  TruncatedOperator D = TruncatedOperator::identity(n) - cplx(0.5) * As;
  double c = 0.5;
  bool plus = true;  // denominator signs alternate starting with + at k = 2
  for (int k = 2; k <= q; ++k) {
    c *= static_cast<double>(q - k + 1) / static_cast<double>(k * (2 * q - k + 1));
    X = As * X;
    E = E + cplx(c) * X;
    D = plus ? D + cplx(c) * X : D - cplx(c) * X;
    plus = !plus;
  }
  TruncatedOperator R = detail::lu_solve(D, E);
  for (int k = 0; k < s; ++k) R = R * R;
  R.set_label("exp(" + A.label() + ")");
  return R;
}

}  // namespace biosc
