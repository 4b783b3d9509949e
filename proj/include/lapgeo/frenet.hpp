#pragma once
#include <Eigen/Dense>
#include <vector>

#include "lapgeo/immersion.hpp"
#include "lapgeo/tolerances.hpp"

namespace lapgeo {

/// Frenet data of a unit-speed curve: curvatures kappa[0..d-1] (= k1..kd) and
/// orthonormal frames frame[0..d] (= b1..b_{d+1}), one row per sample.
/// kappa[d-1] may sit below the rank floor; that is what fixes the rank.
struct FrenetApparatus {
  Grid grid;
  int m = 0;
  int rank = 0;
  double rank_floor = 0;
  std::vector<Eigen::VectorXd> kappa;
  std::vector<Eigen::MatrixXd> frame;
  double residual = 0;  // max Frenet-equation defect on the verdict mask
  bool rank_collapsed = false;
  Eigen::Array<bool, Eigen::Dynamic, 1> mask;  // samples used for verdicts
};

struct CurveLaplace {
  SampledImmersion L;   // points = -x''
  Eigen::MatrixXd dL;   // -x'''
  bool degenerate = false;
  double fd_tol = 0;
};

struct ConstancyVerdict {
  Eigen::VectorXd field;
  bool holds = false;
  double fitted = 0;     // mean of the field
  double rel_std = 0;
  double tol_used = 0;
};

struct ResidualVerdict {
  Eigen::VectorXd residual;
  bool holds = false;
  double sup = 0;
  double scale = 0;
  double tol_used = 0;
};

struct LineImageVerdict {
  bool holds = false;
  bool planar_branch = true;
  double ode_residual = 0;       // relative residual of the governing equation
  double ratio_residual = 0;     // sup |k2 - c k1| / sup k2 (helix branch)
  double fitted_ratio = 0;       // c with k2 = c k1
  double svd_collinearity = 0;   // sigma2/sigma1 of centered Laplace image
};

struct CircleImageVerdict {
  bool holds = false;
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double radius = 0;
  double residual = 0;
};

struct LGCurveMetrics {
  Eigen::VectorXd g_L, g_G, ratio;
  bool homothetic = false;
  bool conformal = false;
  double fitted_ratio = 0;
  double rel_std = 0;
};

/// Resamples a regular curve at uniform arclength; N, periodicity and total
/// length are preserved.
SampledImmersion reparametrize_unit_speed(const SampledImmersion& curve, const Tolerances& tol = {});

double max_speed_deviation(const SampledImmersion& curve, const Tolerances& tol = {});

FrenetApparatus frenet(const SampledImmersion& curve, int d_max, const Tolerances& tol = {});

CurveLaplace curve_laplace(const SampledImmersion& curve, const Tolerances& tol = {});

/// k1^4 + k1'^2 + k1^2 k2^2; constant iff the Laplace transformation is homothetic.
ConstancyVerdict homothety_functional(const FrenetApparatus& F, const Tolerances& tol = {});

/// k1'(2k1^3 + k1'') + k1 k2 (k1' k2 + k1 k2'); zero iff the Laplace
/// transformation is harmonic.
ResidualVerdict harmonic_lt_residual(const FrenetApparatus& F, const Tolerances& tol = {});

LineImageVerdict laplace_in_line_check(const SampledImmersion& curve, const FrenetApparatus& F,
                                       const Tolerances& tol = {});

CircleImageVerdict laplace_in_circle_check(const SampledImmersion& curve, const FrenetApparatus& F,
                                           const Tolerances& tol = {});

LGCurveMetrics lg_metrics_curve(const FrenetApparatus& F, const Tolerances& tol = {});

/// FD derivative of a per-sample curve field, order-4 stencils.
Eigen::VectorXd curve_derivative(const Grid& grid, const Eigen::VectorXd& field, int k,
                                 const Tolerances& tol = {});

}  // namespace lapgeo
