#pragma once
#include <Eigen/Dense>
#include <optional>

#include "lapgeo/fd.hpp"
#include "lapgeo/immersion.hpp"
#include "lapgeo/tolerances.hpp"

namespace lapgeo {

/// Per-sample differential-geometric data of a sampled immersion.
/// Matrices are stored row-per-sample; the n x n metric is flattened
/// row-major into n*n columns.
struct GeometryFields {
  Eigen::MatrixXd g;           // first fundamental form, per sample (n*n cols)
  Eigen::VectorXd sqrt_det_g;
  Eigen::MatrixXd g_inv;
  Eigen::MatrixXd dx[2];       // first partials of x, one block per axis
  Eigen::MatrixXd H;           // mean curvature vector (filled by add_mean_curvature)
  Eigen::VectorXd alpha;       // |H|
  Eigen::VectorXd K;           // Gauss curvature (surfaces)
  Eigen::MatrixXd normal;      // unit normal (hypersurfaces)
  Eigen::MatrixXd principal;   // principal curvatures, descending (hypersurfaces)
  Eigen::Array<bool, Eigen::Dynamic, 1> untrimmed;
  int trim = 0;
  bool has_H = false, has_K = false, has_shape = false;

  Eigen::Matrix2d metric_at(std::int64_t i, int n) const {
    Eigen::Matrix2d M = Eigen::Matrix2d::Identity();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) M(a, b) = g(i, a * n + b);
    return M;
  }
};

/// g_ij = <d_i x, d_j x> by central differences; throws DegenerateMetric when
/// det g collapses on an untrimmed sample.
GeometryFields induced_metric(const SampledImmersion& S, const Tolerances& tol = {});

/// Laplace-Beltrami of a per-sample field, sign convention Delta = -div grad
/// (positive spectrum); exact zero on constants. Applied componentwise.
Eigen::MatrixXd laplace_beltrami(const SampledImmersion& S, const GeometryFields& G,
                                 const Eigen::MatrixXd& field, const Tolerances& tol = {});

/// Adds H = -Delta x / n and alpha = |H|.
void add_mean_curvature(const SampledImmersion& S, GeometryFields& G, const Tolerances& tol = {});

/// Hypersurface shape data (m = n+1): unit normal, principal curvatures
/// sorted descending. Signs fixed so the round sphere with outward
/// parametrization reports +1/r.
void add_hypersurface_shape(const SampledImmersion& S, GeometryFields& G, const Tolerances& tol = {});

/// Intrinsic Gauss curvature of a surface from the metric alone
/// (Brioschi formula), valid in any codimension.
void add_gauss_curvature(const SampledImmersion& S, GeometryFields& G, const Tolerances& tol = {});

/// Quadrature of a per-sample scalar against the area element
/// (midpoint weights on periodic axes, trapezoid on bounded ones).
double integrate(const SampledImmersion& S, const GeometryFields& G, const Eigen::VectorXd& field);

/// First variation of area under x + t f c: returns (numeric derivative,
/// quadrature of <Delta x, c> f). Throws NotCompact when f touches the
/// trim band of a bounded axis.
std::pair<double, double> first_variation_area(const SampledImmersion& S, const GeometryFields& G,
                                               const Eigen::VectorXd& c, const Eigen::VectorXd& f,
                                               const Tolerances& tol = {}, double delta = 1e-3);

/// 50 h^4 times an FD estimate of the driving derivative scale; the honest
/// error bar attached to fourth-order verdicts.
double fd_tolerance(const SampledImmersion& S, const Tolerances& tol = {});

/// Verdict mask for quantities built from `levels` stacked first-derivative
/// applications: one-sided-stencil error reaches 2*levels samples into a
/// bounded axis, so verdicts exclude that band (periodic axes are untouched).
Eigen::Array<bool, Eigen::Dynamic, 1> verdict_mask(const Grid& grid, int levels, int base_trim = 2);

/// Relative sample standard deviation over untrimmed samples.
double relative_std(const Eigen::VectorXd& field, const Eigen::Array<bool, Eigen::Dynamic, 1>& mask);

double masked_sup(const Eigen::VectorXd& field, const Eigen::Array<bool, Eigen::Dynamic, 1>& mask);
double masked_mean(const Eigen::VectorXd& field, const Eigen::Array<bool, Eigen::Dynamic, 1>& mask);

}  // namespace lapgeo
