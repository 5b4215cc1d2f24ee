#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "ancsim/analysis/linalg.hpp"

namespace ancsim::analysis {

/// Points on {w : wᵀR w = ρ²} for a 2×2 positive definite R, traced by angle
/// at evenly spaced angles in [0, 2π).
std::vector<std::array<double, 2>> constraint_ellipse(const Matrix& R, double rho_sq,
                                                      std::size_t points = 256);

/// Scales w onto the constraint boundary along its own direction.
std::vector<double> boundary_point(const Matrix& R, const std::vector<double>& w, double rho_sq);

}  // namespace ancsim::analysis
