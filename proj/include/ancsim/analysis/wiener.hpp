#pragma once

#include <vector>

#include "ancsim/analysis/correlation.hpp"

namespace ancsim::analysis {

/// Right-hand side paired with (ςR_x + R_x′) in the sub-optimal solution.
///  - reference: P_dx (default)
///  - filtered: P_dx′
enum class SuboptimalVariant { reference, filtered };

/// Solves R_x′·w = P_dx′. Throws SingularMatrixError when cond(R_x′) ≥ 1e12.
std::vector<double> wiener_optimal(const CorrelationModel& model);

/// Solves (ςR_x + R_x′)·w = P_dx (or P_dx′ with the filtered variant).
std::vector<double> wiener_suboptimal(const CorrelationModel& model, double varsigma,
                                      SuboptimalVariant variant = SuboptimalVariant::reference);

}  // namespace ancsim::analysis
