#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace biosc {

using cplx = std::complex<double>;

inline constexpr double pi      = 3.14159265358979323846;
inline constexpr double sqrt_pi = 1.77245385090551602730;

// Spectrum of H_lambda: eps below the oscillator ladder, then 2n+1.
inline double eigen_energy(int index, double eps) {
  return index == 0 ? eps : 2.0 * (index - 1) + 1.0;
}

// A series that failed to converge within its term budget. Carries the
// partial sum so callers can decide whether it is still usable.
class truncation_error : public std::runtime_error {
public:
  truncation_error(const std::string& what, double partial)
    : std::runtime_error(what), partial_(partial) {}
  double partial() const { return partial_; }
private:
  double partial_;
};

// alpha(x) hit a node (or an invalid parameter set produced a negative
// radicand); the Darboux transform is singular there.
class singularity_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// The ground-state bi-norm integral was below the usable floor.
class normalization_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace biosc
