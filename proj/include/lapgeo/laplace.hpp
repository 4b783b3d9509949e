#pragma once
#include <Eigen/Dense>
#include <map>
#include <string>

#include "lapgeo/fitting.hpp"
#include "lapgeo/geometry.hpp"
#include "lapgeo/immersion.hpp"

namespace lapgeo {

/// The Laplace map L = Delta x over the source grid, with its pullback metric.
struct LaplaceResult {
  SampledImmersion L;
  Eigen::MatrixXd g_L;       // per-sample n x n pullback metric, row-major cols
  Eigen::MatrixXd dL[2];     // partials of L
  bool degenerate = false;   // sup|L| below the FD floor (minimal source)
  double fd_tol = 0;
  double sup_norm = 0;
};

struct RankProfile {
  Eigen::VectorXi rank;
  bool constant = false;
  int value = 0;
};

/// Classifier verdicts form a lattice: homothetic => conformal => weakly_conformal.
struct AnalysisReport {
  std::string verdict;  // degenerate | isometric | homothetic | conformal | weakly_conformal | none
  bool degenerate = false, homothetic = false, isometric = false;
  bool conformal = false, weakly_conformal = false;
  double c = 0;              // fitted mean of rho
  double rho_rel_std = 0;
  double sup_anisotropy = 0;
  double inf_rho2 = 0;
  double tol_used = 0;
  std::int64_t trimmed = 0;
};

struct ConformalSurfaceReport {
  double principal_angle_sin = 0;  // condition (1), sup |sin|
  double gauss_residual = 0;       // condition (2), sup relative
  double gauss_residual_abs = 0;   // condition (2), sup absolute
  double laplace_residual = 0;     // condition (3), sup relative
  std::int64_t gradient_active = 0;
  bool c1 = false, c2 = false, c3 = false, holds = false;
  double tol_used = 0;
};

struct ResidualReport {
  Eigen::VectorXd field;
  double sup = 0;
  double scale = 0;
  double threshold = 0;
  bool holds = false;
};

struct SphericalLaplaceReport {
  double radius = 0;           // n * alpha
  double containment_sup = 0;  // sup | |L| - n alpha |
  Eigen::VectorXd energy;      // 1/2 trace(g_L g^-1)
  double energy_mean = 0, energy_rel_std = 0;
  double tension_sup = 0, tension_scale = 0;
  bool harmonic = false;
};

struct LGReport {
  Eigen::VectorXd ratio;  // g_L/g_G on active directions, flattened
  double fitted_ratio = 0, rel_std = 0, sup_anisotropy = 0;
  bool homothetic = false, conformal = false, weakly_conformal = false;
  bool spherical_variant = false;
  double sphere_radius = 0;
};

struct TotallyRealReport {
  double x_defect = 0, L_defect = 0;  // sup |<J dx_i, dx_j>| / sup trace g
  bool x_totally_real = false, L_totally_real = false;
  bool L_degenerate = false;
};

LaplaceResult laplace_map(const SampledImmersion& S, const GeometryFields& G, const Tolerances& tol = {});

RankProfile rank_profile(const SampledImmersion& S, const LaplaceResult& R,
                         const GeometryFields& G, const Tolerances& tol = {});

AnalysisReport classify_transformation(const SampledImmersion& S, const GeometryFields& G,
                                       const LaplaceResult& R, const Tolerances& tol = {});

/// The three conditions characterizing conformal Laplace transformations of
/// surfaces in E^3; conditions (1) and (3) apply where grad(alpha^2) is
/// resolved, condition (2) everywhere untrimmed.
ConformalSurfaceReport conformal_surface_report_E3(const SampledImmersion& S, GeometryFields& G,
                                                   const Tolerances& tol = {});

/// |Delta^2 x| per sample; zero iff the Laplace map is harmonic (biharmonic source).
ResidualReport biharmonic_residual(const SampledImmersion& S, const GeometryFields& G,
                                   const Tolerances& tol = {});

/// |Delta alpha| per sample.
ResidualReport harmonic_mean_curvature_residual(const SampledImmersion& S, GeometryFields& G,
                                                const Tolerances& tol = {});

SphericalLaplaceReport spherical_laplace(const SampledImmersion& S, GeometryFields& G,
                                         const LaplaceResult& R, const Tolerances& tol = {});

/// Laplace-image vs Gauss-image metric comparison for hypersurfaces
/// (m = n+1), or for surfaces of a hypersphere of E^4 when `spherical`.
LGReport lg_hypersurface(const SampledImmersion& S, GeometryFields& G, const LaplaceResult& R,
                         bool spherical = false, const Tolerances& tol = {});

TotallyRealReport totally_real_check(const SampledImmersion& S, const GeometryFields& G,
                                     const LaplaceResult& R, const Tolerances& tol = {});

/// Analytic Laplace maps of the catalogue families, cross-checked against
/// the FD laplace_map of the sampled immersion (agreement stored in
/// `fd_agreement_rel`).
struct ClosedFormLaplace {
  LaplaceResult result;
  double fd_agreement_rel = 0;
};
ClosedFormLaplace closed_form_laplace(const std::string& kind,
                                      const std::map<std::string, double>& params, const Grid& grid,
                                      const Tolerances& tol = {});

}  // namespace lapgeo
