#pragma once
#include <Eigen/Dense>

#include "lapgeo/grid.hpp"

namespace lapgeo {

// Finite differences on uniform grids. Central stencils of the requested
// order in the interior, periodic wrap on periodic axes, one-sided low-order
// stencils near non-periodic boundaries (those samples sit in the trim band
// and are excluded from verdicts).
namespace fd {

/// k-th derivative (k = 1..3) along `axis` of a per-sample field
/// (rows = samples, cols = components).
Eigen::MatrixXd derivative(const Grid& grid, const Eigen::MatrixXd& field, int axis, int k, int order);

inline Eigen::VectorXd derivative(const Grid& grid, const Eigen::VectorXd& field, int axis, int k, int order) {
  return derivative(grid, Eigen::MatrixXd(field), axis, k, order).col(0);
}

/// Width of the boundary band where one-sided stencils are used.
int boundary_band(int k, int order);

/// Marks samples at least `extra` + trim samples away from every non-periodic end.
Eigen::Array<bool, Eigen::Dynamic, 1> interior_mask(const Grid& grid, int trim);

}  // namespace fd
}  // namespace lapgeo
