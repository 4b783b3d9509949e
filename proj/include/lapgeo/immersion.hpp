#pragma once
#include <Eigen/Dense>
#include <string>

#include "lapgeo/grid.hpp"

namespace lapgeo {

/// A sampled immersion x: M^n -> E^m on a uniform grid.
/// points is (grid.total() x m), row-major over grid indices, last axis fastest.
struct SampledImmersion {
  Grid grid;
  int ambient_dim = 0;
  Eigen::MatrixXd points;
  std::string label;

  int n() const { return grid.dim(); }
  int m() const { return ambient_dim; }

  double scale() const { return points.size() ? points.rowwise().norm().maxCoeff() : 0.0; }

  void validate() const {
    grid.validate();
    if (ambient_dim < 2) throw Error(ErrorCode::BadInput, "ambient dimension must be >= 2");
    if (points.rows() != grid.total() || points.cols() != ambient_dim)
      throw Error(ErrorCode::BadInput, "points shape does not match grid/ambient_dim");
  }
};

inline SampledImmersion scaled(const SampledImmersion& s, double c) {
  SampledImmersion out = s;
  out.points *= c;
  return out;
}

}  // namespace lapgeo
