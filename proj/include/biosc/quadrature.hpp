#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "biosc/common.hpp"

namespace biosc {

// Composite Simpson on uniformly spaced samples. An odd sample count is the
// intended use; a trailing even interval is closed with a three-point
// parabola so callers with even counts still get O(h^4).
template <typename T>
T simpson(const std::vector<T>& f, double h) {
  const std::size_t n = f.size();
  if (n < 2) return T{};
  if (n == 2) return (f[0] + f[1]) * (h / 2.0);
  T sum{};
  std::size_t i = 0;
  for (; i + 2 < n; i += 2) sum += (f[i] + 4.0 * f[i + 1] + f[i + 2]) * (h / 3.0);
  if (i + 1 < n)  // one interval left
    sum += (5.0 * f[n - 1] + 8.0 * f[n - 2] - f[n - 3]) * (h / 12.0);
  return sum;
}

// Cumulative integral I_k = int_{x_0}^{x_k} f, Simpson on even offsets and a
// single half-panel parabola for the odd points.
template <typename T>
std::vector<T> cumulative_simpson(const std::vector<T>& f, double h) {
  const std::size_t n = f.size();
  std::vector<T> out(n, T{});
  if (n < 2) return out;
  if (n == 2) {
    out[1] = (f[0] + f[1]) * (h / 2.0);
    return out;
  }
  for (std::size_t i = 2; i < n; i += 2)
    out[i] = out[i - 2] + (f[i - 2] + 4.0 * f[i - 1] + f[i]) * (h / 3.0);
  for (std::size_t i = 1; i < n; i += 2) {
    if (i + 1 < n)
      out[i] = out[i - 1] + (5.0 * f[i - 1] + 8.0 * f[i] - f[i + 1]) * (h / 12.0);
    else
      out[i] = out[i - 1] + (5.0 * f[i] + 8.0 * f[i - 1] - f[i - 2]) * (h / 12.0);
  }
  return out;
}

namespace detail {

template <typename F, typename T>
T adaptive_simpson_step(const F& f, double a, double b, T fa, T fm, T fb, T whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const T flm = f(lm), frm = f(rm);
  const T left  = (fa + 4.0 * flm + fm) * ((m - a) / 6.0);
  const T right = (fm + 4.0 * frm + fb) * ((b - m) / 6.0);
  const T delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson with absolute tolerance. T may be double or cplx.
template <typename F>
auto adaptive_simpson(const F& f, double a, double b, double tol = 1e-12, int max_depth = 40)
    -> decltype(f(a)) {
  using T = decltype(f(a));
  const T fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const T whole = (fa + 4.0 * fm + fb) * ((b - a) / 6.0);
  return detail::adaptive_simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// x-coordinate of the i-th node of a uniform grid.
inline double grid_x(double x_min, double x_max, std::size_t n_points, std::size_t i) {
  return x_min + (x_max - x_min) * static_cast<double>(i) / static_cast<double>(n_points - 1);
}

}  // namespace biosc
