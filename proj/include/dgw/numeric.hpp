#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dgw {

using cplx = std::complex<double>;

/// Tolerance for comparing character values and rounding inner products.
inline constexpr double kTol = 1e-6;

/// exp(2 pi i k / n).
inline cplx unit_root(long long k, long long n) {
  k %= n;
  if (k < 0) k += n;
  const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(t), std::sin(t)};
}

struct NumericResidual : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rounds a value that must be an integer; throws when the residual is too large.
inline long long round_exact(cplx z, const std::string& what, double tol = kTol) {
  const double r = std::round(z.real());
  const double res = std::abs(z - cplx(r, 0.0));
  if (res >= tol)
    throw NumericResidual(what + ": value (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                          ") is not an integer within tolerance");
  return static_cast<long long>(r);
}

inline bool near(cplx a, cplx b, double tol = kTol) { return std::abs(a - b) < tol; }

}  // namespace dgw
