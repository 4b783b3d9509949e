#pragma once

namespace lapgeo {

/// Tolerance ladder shared by all verdicts. Every report echoes the values
/// that produced it, so a verdict is reproducible from the report alone.
struct Tolerances {
  int fd_order = 4;            // central stencil order, 2 or 4
  double const_tol = 1e-2;     // relative std for "constant" verdicts on FD fields
  double const_tol_exact = 1e-4;  // same, for near-analytic (curve) fields
  double fit_tol = 1e-3;       // primitive-fit residual on FD data
  double fit_tol_closed = 1e-6;   // primitive-fit residual on closed-form data
  double ode_tol = 1e-5;       // relative residual for curvature-ODE verdicts
  double amp_tol = 1e-8;       // relative spectral amplitude cutoff
  double poly_tol = 1e-8;      // minimal-polynomial relative residual
  double rank_tol = 1e-6;      // singular-value ratio for rank decisions
  double angle_tol = 1e-4;     // |sin angle| for direction comparisons
  double frame_tol = 1e-8;     // frame orthonormality defect
  double reg_eps = 1e-10;      // metric degeneracy threshold, relative
  double speed_tol = 1e-6;     // unit-speed deviation accepted as unit speed
  double var_tol = 1e-4;       // first-variation agreement, relative to area
  int trim_override = -1;      // -1 = per-order default (2 for order 4, 1 for order 2)

  int trim() const { return trim_override >= 0 ? trim_override : (fd_order == 4 ? 2 : 1); }
};

}  // namespace lapgeo
