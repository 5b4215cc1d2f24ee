#include "ancsim/analysis/geometry.hpp"

#include <cmath>
#include <numbers>

#include "ancsim/errors.hpp"

namespace ancsim::analysis {

std::vector<std::array<double, 2>> constraint_ellipse(const Matrix& R, double rho_sq,
                                                      std::size_t points) {
  if (R.rows() != 2 || R.cols() != 2) throw DataError("constraint_ellipse: R must be 2x2");
  if (!(rho_sq > 0.0)) throw ConfigError("constraint_ellipse: rho_sq must be > 0");
  const auto eig = eigen_symmetric(R);
  if (!(eig.values[0] > 0.0)) throw DataError("constraint_ellipse: R is not positive definite");
  const double a0 = std::sqrt(rho_sq / eig.values[0]);
  const double a1 = std::sqrt(rho_sq / eig.values[1]);
  std::vector<std::array<double, 2>> out(points);
  for (std::size_t k = 0; k < points; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(points);
    const double u0 = a0 * std::cos(t);
    const double u1 = a1 * std::sin(t);
    out[k] = {eig.vectors(0, 0) * u0 + eig.vectors(0, 1) * u1,
              eig.vectors(1, 0) * u0 + eig.vectors(1, 1) * u1};
  }
  return out;
}

std::vector<double> boundary_point(const Matrix& R, const std::vector<double>& w, double rho_sq) {
  const double p = quadratic_form(R, w);
  if (!(p > 0.0)) throw DataError("boundary_point: w has zero projected power");
  const double c = std::sqrt(rho_sq / p);
  std::vector<double> out(w);
  for (double& v : out) v *= c;
  return out;
}

}  // namespace ancsim::analysis
