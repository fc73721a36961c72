#include "ertrust/polyfit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ertrust {

double Poly3::operator()(double t) const {
  const double s = (t - center) / scale;
  return ((scaled[3] * s + scaled[2]) * s + scaled[1]) * s + scaled[0];
}

std::array<double, 4> Poly3::coefficients() const {
  static constexpr double binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  std::array<double, 4> raw{};
  for (int k = 0; k < 4; ++k) {
    const double ck = scaled[k] / std::pow(scale, k);
    for (int j = 0; j <= k; ++j) raw[j] += ck * binom[k][j] * std::pow(-center, k - j);
  }
  return raw;
}

Poly3 fit_poly3(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size()) throw std::invalid_argument("fit_poly3: t and y differ in length");
  if (t.empty()) throw std::invalid_argument("fit_poly3: no points");

  const auto n = static_cast<Eigen::Index>(t.size());
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  Poly3 mean_model;
  mean_model.scaled = {mean, 0.0, 0.0, 0.0};
  mean_model.fallback = true;
  if (n < 4) return mean_model;

  const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
  Poly3 fit;
  fit.center = 0.5 * (*lo + *hi);
  fit.scale = 0.5 * (*hi - *lo);
  if (!(fit.scale > 0.0)) return mean_model;

  Eigen::MatrixXd design(n, 4);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = (t[static_cast<std::size_t>(i)] - fit.center) / fit.scale;
    design(i, 0) = 1.0;
    design(i, 1) = s;
    design(i, 2) = s * s;
    design(i, 3) = s * s * s;
    rhs(i) = y[static_cast<std::size_t>(i)];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < 4) return mean_model;

  const Eigen::Vector4d c = qr.solve(rhs);
  for (int k = 0; k < 4; ++k) fit.scaled[k] = c(k);
  return fit;
}

} // namespace ertrust
