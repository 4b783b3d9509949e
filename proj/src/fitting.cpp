#include "lapgeo/fitting.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "lapgeo/errors.hpp"

namespace lapgeo {

namespace {

Eigen::MatrixXd centered(const Eigen::MatrixXd& pts, Eigen::VectorXd* mean = nullptr) {
  Eigen::VectorXd c = pts.colwise().mean();
  if (mean) *mean = c;
  return pts.rowwise() - c.transpose();
}

// the 26 nonzero integer directions in {-1,0,1}^3
std::vector<Eigen::Vector3d> coarse_directions() {
  std::vector<Eigen::Vector3d> dirs;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c) {
        if (!a && !b && !c) continue;
        dirs.push_back(Eigen::Vector3d(a, b, c).normalized());
      }
  return dirs;
}

// orthonormal completion of a unit vector
void frame_of(const Eigen::Vector3d& d, Eigen::Vector3d& e1, Eigen::Vector3d& e2) {
  Eigen::Vector3d ref = std::abs(d.z()) < 0.9 ? Eigen::Vector3d::UnitZ() : Eigen::Vector3d::UnitX();
  e1 = d.cross(ref).normalized();
  e2 = d.cross(e1);
}

double cylinder_objective(const Eigen::MatrixXd& pts, const Eigen::Vector3d& d,
                          Eigen::Vector3d* center_out, double* radius_out) {
  Eigen::Vector3d e1, e2;
  frame_of(d, e1, e2);
  Eigen::MatrixXd proj(pts.rows(), 2);
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    Eigen::Vector3d p = pts.row(i);
    proj(i, 0) = p.dot(e1);
    proj(i, 1) = p.dot(e2);
  }
  SphereFit c = fit_sphere(proj);
  if (center_out) *center_out = c.center[0] * e1 + c.center[1] * e2;
  if (radius_out) *radius_out = c.radius;
  return c.residual;
}

double cone_objective(const Eigen::MatrixXd& pts, const Eigen::Vector3d& v,
                      Eigen::Vector3d* dir_out, double* cos_out) {
  Eigen::MatrixXd u(pts.rows(), 3);
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    Eigen::Vector3d r = Eigen::Vector3d(pts.row(i)) - v;
    double len = r.norm();
    if (len < 1e-300) return 1e9;
    u.row(i) = r / len;
  }
  // rays of a circular cone lie on a plane <u,d> = cos(phi) of the unit sphere
  Eigen::VectorXd mean;
  Eigen::MatrixXd uc = centered(u, &mean);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(uc, Eigen::ComputeThinV);
  Eigen::Vector3d d = svd.matrixV().col(2);
  if (d.dot(Eigen::Vector3d(mean)) < 0) d = -d;
  double c = (u * d).mean();
  double rms = std::sqrt(((u * d).array() - c).square().mean());
  if (dir_out) *dir_out = d;
  if (cos_out) *cos_out = c;
  return rms;
}

}  // namespace

SphereFit fit_sphere(const Eigen::MatrixXd& pts) {
  const int m = static_cast<int>(pts.cols());
  Eigen::MatrixXd A(pts.rows(), m + 1);
  A.leftCols(m) = 2 * pts;
  A.col(m).setOnes();
  Eigen::VectorXd b = pts.rowwise().squaredNorm();
  Eigen::VectorXd sol = A.colPivHouseholderQr().solve(b);
  SphereFit f;
  f.center = sol.head(m);
  f.radius = std::sqrt(std::max(sol[m] + f.center.squaredNorm(), 0.0));
  Eigen::VectorXd d = (pts.rowwise() - f.center.transpose()).rowwise().norm();
  f.residual = std::sqrt((d.array() - f.radius).square().mean()) / std::max(f.radius, 1e-300);
  return f;
}

PlaneFit fit_plane(const Eigen::MatrixXd& pts) {
  PlaneFit f;
  Eigen::VectorXd mean;
  Eigen::MatrixXd c = centered(pts, &mean);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeThinV);
  f.point = mean;
  f.normal = svd.matrixV().col(pts.cols() - 1);
  f.rms = std::sqrt((c * f.normal).array().square().mean());
  return f;
}

LineFit fit_line(const Eigen::MatrixXd& pts) {
  LineFit f;
  Eigen::VectorXd mean;
  Eigen::MatrixXd c = centered(pts, &mean);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeThinV);
  f.point = mean;
  f.direction = svd.matrixV().col(0);
  Eigen::MatrixXd rej = c - (c * f.direction) * f.direction.transpose();
  f.rms = std::sqrt(rej.rowwise().squaredNorm().mean());
  return f;
}

CylinderFit fit_cylinder(const Eigen::MatrixXd& pts) {
  if (pts.cols() != 3) throw Error(ErrorCode::BadInput, "cylinder fit needs m = 3");
  double best = 1e300;
  Eigen::Vector3d bestd = Eigen::Vector3d::UnitX();
  for (const auto& d : coarse_directions()) {
    double r = cylinder_objective(pts, d, nullptr, nullptr);
    if (r < best) { best = r; bestd = d; }
  }
  // local refinement over the two tangent angles, fixed deterministic schedule
  Eigen::Vector3d e1, e2;
  double step = 0.2;
  for (int it = 0; it < 120 && step > 1e-9; ++it) {
    frame_of(bestd, e1, e2);
    bool improved = false;
    const Eigen::Vector3d cands[4] = {bestd + step * e1, bestd - step * e1, bestd + step * e2,
                                      bestd - step * e2};
    for (const auto& cand : cands) {
      Eigen::Vector3d dn = cand.normalized();
      double r = cylinder_objective(pts, dn, nullptr, nullptr);
      if (r < best - 1e-16 * (1 + best)) { best = r; bestd = dn; improved = true; }
    }
    if (!improved) step *= 0.5;
  }
  CylinderFit f;
  f.axis_dir = bestd;
  Eigen::Vector3d center;
  f.rms = cylinder_objective(pts, bestd, &center, &f.radius) * f.radius;
  f.axis_point = center;
  return f;
}

ConeFit fit_cone(const Eigen::MatrixXd& pts, bool pin_vertex_at_origin) {
  if (pts.cols() != 3) throw Error(ErrorCode::BadInput, "cone fit needs m = 3");
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  double best = cone_objective(pts, v, nullptr, nullptr);
  if (!pin_vertex_at_origin) {
    // deterministic pattern search over the vertex
    double scale = std::max(pts.rowwise().norm().maxCoeff(), 1e-12);
    Eigen::Vector3d centroid = pts.colwise().mean();
    for (const auto& start : {Eigen::Vector3d::Zero().eval(), centroid}) {
      Eigen::Vector3d w = start;
      double cur = cone_objective(pts, w, nullptr, nullptr);
      double step = 0.2 * scale;
      for (int it = 0; it < 200 && step > 1e-10 * scale; ++it) {
        bool improved = false;
        for (int axis = 0; axis < 3; ++axis)
          for (double sgn : {1.0, -1.0}) {
            Eigen::Vector3d cand = w;
            cand[axis] += sgn * step;
            double r = cone_objective(pts, cand, nullptr, nullptr);
            if (r < cur - 1e-14 * (1 + cur)) { cur = r; w = cand; improved = true; }
          }
        if (!improved) step *= 0.5;
      }
      if (cur < best) { best = cur; v = w; }
    }
  }
  ConeFit f;
  f.vertex = v;
  f.rms_angular = cone_objective(pts, v, &f.axis_dir, &f.cos_half_angle);
  return f;
}

double PrimitiveFitReport::residual_of(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return e.residual;
  throw Error(ErrorCode::BadInput, "unknown primitive " + name);
}

PrimitiveFitReport fit_primitives(const Eigen::MatrixXd& pts, double scale_hint, double fit_tol) {
  if (pts.rows() < 16) throw Error(ErrorCode::BadInput, "need at least 16 points");
  PrimitiveFitReport rep;
  Eigen::VectorXd mean;
  Eigen::MatrixXd c = centered(pts, &mean);
  double spread = std::sqrt(c.rowwise().squaredNorm().mean());
  rep.denom = std::max(spread, 1e-3 * std::max(scale_hint, 1e-12));
  rep.point_center = mean;

  auto add = [&](const std::string& name, double rms) {
    rep.entries.push_back({name, rms / rep.denom, rms / rep.denom <= fit_tol});
  };

  add("point", spread);

  rep.line = fit_line(pts);
  add("line", rep.line.rms);

  // circle: in-plane sphere fit combined with out-of-plane distance
  {
    double rms;
    if (pts.cols() == 2) {
      SphereFit s = fit_sphere(pts);
      rep.circle_radius = s.radius;
      rep.circle_center = s.center;
      rms = s.residual * s.radius;
    } else {
      PlaneFit pl = fit_plane(pts);
      Eigen::MatrixXd basis(pts.cols(), 2);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered(pts), Eigen::ComputeThinV);
      basis.col(0) = svd.matrixV().col(0);
      basis.col(1) = svd.matrixV().col(1);
      Eigen::MatrixXd inplane = (pts.rowwise() - mean.transpose()) * basis;
      SphereFit s = fit_sphere(inplane);
      rep.circle_radius = s.radius;
      rep.circle_center = mean + basis * s.center;
      Eigen::VectorXd off = (pts.rowwise() - mean.transpose()) * pl.normal;
      Eigen::VectorXd inr = (inplane.rowwise() - s.center.transpose()).rowwise().norm();
      rms = std::sqrt(((inr.array() - s.radius).square() + off.array().square()).mean());
    }
    add("circle", rms);
  }

  rep.plane = fit_plane(pts);
  add("plane", rep.plane.rms);

  rep.sphere = fit_sphere(pts);
  add("sphere", rep.sphere.residual * rep.sphere.radius);

  if (pts.cols() == 3) {
    rep.cylinder = fit_cylinder(pts);
    add("cylinder", rep.cylinder.rms);
    rep.cone = fit_cone(pts);
    rep.entries.push_back({"cone", rep.cone.rms_angular, rep.cone.rms_angular <= fit_tol});
  }

  rep.best = "";
  for (const auto& e : rep.entries)
    if (e.passes) { rep.best = e.name; break; }
  if (rep.best.empty()) {
    double mn = 1e300;
    for (const auto& e : rep.entries)
      if (e.residual < mn) { mn = e.residual; rep.best = e.name; }
  }
  return rep;
}

}  // namespace lapgeo
