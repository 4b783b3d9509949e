#pragma once
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lapgeo/immersion.hpp"

namespace lapgeo {

using Params = std::map<std::string, double>;

struct GeneratorInfo {
  std::string name;
  int intrinsic_dim = 1;
  int ambient_dim = 2;
  Params defaults;
  std::string provenance;  // what the family is, in plain words
};

const std::vector<GeneratorInfo>& catalogue();

/// Analytic or ODE-driven evaluation of a catalogue entry. `counts` overrides
/// the per-axis sample counts (empty = entry defaults).
SampledImmersion generate(const std::string& name, const Params& params = {},
                          const std::vector<int>& counts = {});

/// Theorem-traceability rows: entry name (at catalogue defaults) -> expected
/// verdict id, executed by the property suite.
const std::vector<std::pair<std::string, std::string>>& traceability();

/// Plane curve from a curvature function: theta' = kappa, gamma' = (cos, sin).
/// Unit speed by construction.
SampledImmersion curve_from_curvature(const std::function<double(double)>& kappa, double theta0,
                                      double x0, double y0, double length, int samples);

struct OdeCurveResult {
  SampledImmersion curve;
  Eigen::VectorXd kappa;       // curvature at the emitted nodes
  bool truncated = false;      // BlowUp guard shortened the domain
  double richardson = 0;       // endpoint shift between step and step/2
};

/// kind: harmonic_lt (k'' = -2k^3), laplace_line (k k'' = k^4 + 3k'^2),
/// lg_homothetic (k'' = c^2 k - 2k^3, param c).
OdeCurveResult solve_curvature_ode(const std::string& kind, double k0, double k0p, double length,
                                   int samples, const Params& params = {});

struct OdeSurfaceResult {
  SampledImmersion surface;
  bool truncated = false;
  double richardson = 0;
};

/// kind: harmonic_mc (param c), conformal_lt, laplace_in_sphere (param r;
/// second order, f0pp ignored). Emits the revolution surface about the x-axis.
OdeSurfaceResult solve_profile_ode(const std::string& kind, double f0, double f0p, double f0pp,
                                   double t1, int nt, int ntheta, const Params& params = {});

/// Space curve in E^3 from prescribed Frenet curvatures (frame ODE).
SampledImmersion curve_from_curvatures_3d(const std::function<double(double)>& k1,
                                          const std::function<double(double)>& k2, double s0,
                                          double length, int samples);

/// Unit-sphere curve with prescribed geodesic curvature, arclength parametrized.
Eigen::MatrixXd spherical_curve_from_curvature(const std::function<double(double)>& kbar,
                                               double length, int samples);

}  // namespace lapgeo
