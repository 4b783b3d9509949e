#pragma once
#include <Eigen/Dense>
#include <string>
#include <vector>

#include "lapgeo/tolerances.hpp"

namespace lapgeo {

// Geometric primitive fits. Residuals are rms geometric distances divided by
// max(point spread, 1e-3 * scale_hint) so degenerate images (e.g. a Laplace
// image collapsing to a point) stay well defined.

struct SphereFit {
  Eigen::VectorXd center;
  double radius = 0;
  double residual = 0;  // rms(|p-c| - R), unnormalized
};

struct PlaneFit {
  Eigen::VectorXd point, normal;
  double rms = 0;
};

struct LineFit {
  Eigen::VectorXd point, direction;
  double rms = 0;
};

struct CylinderFit {
  Eigen::Vector3d axis_point, axis_dir;
  double radius = 0;
  double rms = 0;
};

struct ConeFit {
  Eigen::Vector3d vertex, axis_dir;
  double cos_half_angle = 0;
  double rms_angular = 0;  // rms(<u,d> - cos phi) over unit rays u
};

SphereFit fit_sphere(const Eigen::MatrixXd& pts);
PlaneFit fit_plane(const Eigen::MatrixXd& pts);
LineFit fit_line(const Eigen::MatrixXd& pts);
CylinderFit fit_cylinder(const Eigen::MatrixXd& pts);          // m = 3
ConeFit fit_cone(const Eigen::MatrixXd& pts, bool pin_vertex_at_origin = false);  // m = 3

struct PrimitiveFitReport {
  struct Entry {
    std::string name;
    double residual = 0;  // normalized
    bool passes = false;
  };
  std::vector<Entry> entries;
  std::string best;
  double denom = 0;
  SphereFit sphere;
  PlaneFit plane;
  LineFit line;
  CylinderFit cylinder;
  ConeFit cone;
  Eigen::VectorXd point_center;
  double circle_radius = 0;
  Eigen::VectorXd circle_center;

  double residual_of(const std::string& name) const;
};

/// Fits point/line/circle/plane/sphere/cylinder/cone and ranks them; the best
/// primitive is the simplest one passing fit_tol, else the argmin.
PrimitiveFitReport fit_primitives(const Eigen::MatrixXd& pts, double scale_hint, double fit_tol);

}  // namespace lapgeo
