#pragma once

#include <array>
#include <span>

namespace ertrust {

/// Cubic least-squares model. Stored in the centered and scaled abscissa
/// s = (t - center) / scale, which keeps the design well conditioned for
/// long histories.
struct Poly3 {
  double center = 0.0;
  double scale = 1.0;
  std::array<double, 4> scaled{}; // ascending powers of s
  bool fallback = false;          // true when the fit degraded to the mean

  double operator()(double t) const;

  /// Coefficients in the raw power basis of t, ascending.
  std::array<double, 4> coefficients() const;
};

/// Fits y ~ c0 + c1 t + c2 t^2 + c3 t^3. With fewer than four points or
/// fewer than four distinct abscissae the result is the constant mean
/// predictor with `fallback` set. Throws std::invalid_argument on empty or
/// mismatched input.
Poly3 fit_poly3(std::span<const double> t, std::span<const double> y);

} // namespace ertrust
