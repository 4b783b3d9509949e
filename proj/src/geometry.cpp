#include "lapgeo/geometry.hpp"

#include <cmath>
#include <vector>

#include "lapgeo/parallel.hpp"

namespace lapgeo {

namespace {

Eigen::VectorXd quadrature_weights(const SampledImmersion& S) {
  const Grid& g = S.grid;
  Eigen::VectorXd w = Eigen::VectorXd::Ones(g.total());
  if (g.dim() == 1) {
    const Axis& a = g.axes[0];
    for (int i = 0; i < a.samples; ++i) {
      double wi = a.step();
      if (!a.periodic && (i == 0 || i == a.samples - 1)) wi *= 0.5;
      w[i] = wi;
    }
    return w;
  }
  for (int i = 0; i < g.axes[0].samples; ++i) {
    double w0 = g.axes[0].step();
    if (!g.axes[0].periodic && (i == 0 || i == g.axes[0].samples - 1)) w0 *= 0.5;
    for (int j = 0; j < g.axes[1].samples; ++j) {
      double w1 = g.axes[1].step();
      if (!g.axes[1].periodic && (j == 0 || j == g.axes[1].samples - 1)) w1 *= 0.5;
      w[g.flat(i, j)] = w0 * w1;
    }
  }
  return w;
}

}  // namespace

GeometryFields induced_metric(const SampledImmersion& S, const Tolerances& tol) {
  S.validate();
  const int n = S.n();
  const std::int64_t N = S.grid.total();
  GeometryFields G;
  G.trim = tol.trim();
  G.untrimmed = fd::interior_mask(S.grid, G.trim);

  for (int a = 0; a < n; ++a) G.dx[a] = fd::derivative(S.grid, S.points, a, 1, tol.fd_order);

  G.g.resize(N, n * n);
  G.sqrt_det_g.resize(N);
  G.g_inv.resize(N, n * n);
  double scale = std::max(S.scale(), 1e-300);
  double det_floor = tol.reg_eps * std::pow(scale, 2 * n);

  for (std::int64_t i = 0; i < N; ++i) {
    if (n == 1) {
      double g11 = G.dx[0].row(i).squaredNorm();
      G.g(i, 0) = g11;
      G.sqrt_det_g[i] = std::sqrt(g11);
      if (!(g11 > det_floor) && G.untrimmed[i])
        throw Error(ErrorCode::DegenerateMetric, "sample " + std::to_string(i));
      G.g_inv(i, 0) = 1.0 / g11;
    } else {
      double g11 = G.dx[0].row(i).squaredNorm();
      double g22 = G.dx[1].row(i).squaredNorm();
      double g12 = G.dx[0].row(i).dot(G.dx[1].row(i));
      double det = g11 * g22 - g12 * g12;
      if (!(det > det_floor) && G.untrimmed[i])
        throw Error(ErrorCode::DegenerateMetric, "sample " + std::to_string(i));
      G.g(i, 0) = g11; G.g(i, 1) = g12; G.g(i, 2) = g12; G.g(i, 3) = g22;
      G.sqrt_det_g[i] = std::sqrt(std::max(det, 0.0));
      double id = 1.0 / det;
      G.g_inv(i, 0) = g22 * id; G.g_inv(i, 1) = -g12 * id;
      G.g_inv(i, 2) = -g12 * id; G.g_inv(i, 3) = g11 * id;
    }
  }
  return G;
}

Eigen::MatrixXd laplace_beltrami(const SampledImmersion& S, const GeometryFields& G,
                                 const Eigen::MatrixXd& field, const Tolerances& tol) {
  const int n = S.n();
  const std::int64_t N = S.grid.total();
  if (field.rows() != N) throw Error(ErrorCode::BadInput, "field rows != sample count");

  // divergence form: Delta f = -(1/sqrt g) d_a ( sqrt g g^{ab} d_b f )
  Eigen::MatrixXd df[2];
  for (int a = 0; a < n; ++a) df[a] = fd::derivative(S.grid, field, a, 1, tol.fd_order);

  Eigen::MatrixXd div = Eigen::MatrixXd::Zero(N, field.cols());
  for (int a = 0; a < n; ++a) {
    Eigen::MatrixXd flux(N, field.cols());
    for (std::int64_t i = 0; i < N; ++i) {
      Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(field.cols());
      for (int b = 0; b < n; ++b) acc += G.g_inv(i, a * n + b) * df[b].row(i);
      flux.row(i) = G.sqrt_det_g[i] * acc;
    }
    div += fd::derivative(S.grid, flux, a, 1, tol.fd_order);
  }
  for (std::int64_t i = 0; i < N; ++i) div.row(i) /= -G.sqrt_det_g[i];
  return div;
}

void add_mean_curvature(const SampledImmersion& S, GeometryFields& G, const Tolerances& tol) {
  Eigen::MatrixXd lap = laplace_beltrami(S, G, S.points, tol);
  G.H = -lap / S.n();
  G.alpha = G.H.rowwise().norm();
  G.has_H = true;
}

void add_hypersurface_shape(const SampledImmersion& S, GeometryFields& G, const Tolerances& tol) {
  const int n = S.n(), m = S.m();
  if (m != n + 1) throw Error(ErrorCode::BadInput, "shape operator needs m = n+1");
  const std::int64_t N = S.grid.total();
  G.normal.resize(N, m);
  G.principal.resize(N, n);

  if (n == 1) {
    Eigen::MatrixXd d2 = fd::derivative(S.grid, S.points, 0, 2, tol.fd_order);
    for (std::int64_t i = 0; i < N; ++i) {
      Eigen::Vector2d t = G.dx[0].row(i);
      double len = t.norm();
      if (len < tol.reg_eps) throw Error(ErrorCode::NormalUndefined, "sample " + std::to_string(i));
      Eigen::Vector2d nu(-t.y() / len, t.x() / len);
      G.normal.row(i) = nu;
      G.principal(i, 0) = d2.row(i).dot(nu) / G.g(i, 0);
    }
  } else {
    Eigen::MatrixXd xuu = fd::derivative(S.grid, S.points, 0, 2, tol.fd_order);
    Eigen::MatrixXd xvv = fd::derivative(S.grid, S.points, 1, 2, tol.fd_order);
    Eigen::MatrixXd xuv = fd::derivative(S.grid, G.dx[0], 1, 1, tol.fd_order);
    for (std::int64_t i = 0; i < N; ++i) {
      Eigen::Vector3d xu = G.dx[0].row(i), xv = G.dx[1].row(i);
      Eigen::Vector3d nu = xu.cross(xv);
      double len = nu.norm();
      if (len < tol.reg_eps * xu.norm() * xv.norm())
        throw Error(ErrorCode::NormalUndefined, "sample " + std::to_string(i));
      nu /= len;
      G.normal.row(i) = nu;
      // curvatures against the inward side so spheres come out positive
      Eigen::Matrix2d b;
      b << -xuu.row(i).dot(nu), -xuv.row(i).dot(nu), -xuv.row(i).dot(nu), -xvv.row(i).dot(nu);
      Eigen::Matrix2d gi;
      gi << G.g_inv(i, 0), G.g_inv(i, 1), G.g_inv(i, 2), G.g_inv(i, 3);
      Eigen::Matrix2d shape = gi * b;
      double tr = shape.trace(), det = shape.determinant();
      double disc = std::sqrt(std::max(tr * tr / 4 - det, 0.0));
      G.principal(i, 0) = tr / 2 + disc;
      G.principal(i, 1) = tr / 2 - disc;
    }
  }
  G.has_shape = true;
}

void add_gauss_curvature(const SampledImmersion& S, GeometryFields& G, const Tolerances& tol) {
  if (S.n() != 2) throw Error(ErrorCode::BadInput, "Gauss curvature needs n = 2");
  const std::int64_t N = S.grid.total();
  Eigen::VectorXd E = G.g.col(0), F = G.g.col(1), Gm = G.g.col(3);

  auto d = [&](const Eigen::VectorXd& f, int axis) { return fd::derivative(S.grid, f, axis, 1, tol.fd_order); };
  Eigen::VectorXd Eu = d(E, 0), Ev = d(E, 1), Gu = d(Gm, 0), Gv = d(Gm, 1), Fu = d(F, 0), Fv = d(F, 1);
  Eigen::VectorXd Evv = fd::derivative(S.grid, E, 1, 2, tol.fd_order);
  Eigen::VectorXd Guu = fd::derivative(S.grid, Gm, 0, 2, tol.fd_order);
  Eigen::VectorXd Fuv = d(Fu, 1);

  G.K.resize(N);
  for (std::int64_t i = 0; i < N; ++i) {
    Eigen::Matrix3d M1, M2;
    M1 << -0.5 * Evv[i] + Fuv[i] - 0.5 * Guu[i], 0.5 * Eu[i], Fu[i] - 0.5 * Ev[i],
          Fv[i] - 0.5 * Gu[i], E[i], F[i],
          0.5 * Gv[i], F[i], Gm[i];
    M2 << 0.0, 0.5 * Ev[i], 0.5 * Gu[i],
          0.5 * Ev[i], E[i], F[i],
          0.5 * Gu[i], F[i], Gm[i];
    double det = E[i] * Gm[i] - F[i] * F[i];
    G.K[i] = (M1.determinant() - M2.determinant()) / (det * det);
  }
  G.has_K = true;
}

double integrate(const SampledImmersion& S, const GeometryFields& G, const Eigen::VectorXd& field) {
  Eigen::VectorXd w = quadrature_weights(S);
  std::vector<double> terms(S.grid.total());
  for (std::int64_t i = 0; i < S.grid.total(); ++i) terms[i] = w[i] * G.sqrt_det_g[i] * field[i];
  return pairwise_sum(terms);
}

std::pair<double, double> first_variation_area(const SampledImmersion& S, const GeometryFields& G,
                                               const Eigen::VectorXd& c, const Eigen::VectorXd& f,
                                               const Tolerances& tol, double delta) {
  const std::int64_t N = S.grid.total();
  if (c.size() != S.m() || f.size() != N) throw Error(ErrorCode::BadInput, "bad deformation data");

  double fmax = f.cwiseAbs().maxCoeff();
  for (std::int64_t i = 0; i < N; ++i)
    if (!G.untrimmed[i] && std::abs(f[i]) > 1e-12 * fmax)
      throw Error(ErrorCode::NotCompact, "deformation reaches a non-periodic boundary");

  auto area_at = [&](double t) {
    SampledImmersion D = S;
    D.points += t * f * c.transpose();
    GeometryFields GD = induced_metric(D, tol);
    return integrate(D, GD, Eigen::VectorXd::Ones(N));
  };
  double scale = std::max(S.scale(), 1e-300);
  double dt = delta * scale / std::max(fmax * c.norm(), 1e-300);
  double a_numeric = (area_at(dt) - area_at(-dt)) / (2 * dt);

  Eigen::MatrixXd lap = laplace_beltrami(S, G, S.points, tol);
  Eigen::VectorXd integrand = (lap * c).cwiseProduct(f);
  double a_formula = integrate(S, G, integrand);
  return {a_numeric, a_formula};
}

double fd_tolerance(const SampledImmersion& S, const Tolerances& tol) {
  // estimate the driving derivative from fourth differences of x
  double bound = 0, hmin = 1e300;
  for (int a = 0; a < S.n(); ++a) {
    Eigen::MatrixXd d2 = fd::derivative(S.grid, S.points, a, 2, tol.fd_order);
    Eigen::MatrixXd d4 = fd::derivative(S.grid, d2, a, 2, tol.fd_order);
    double h = S.grid.axes[a].step();
    hmin = std::min(hmin, h);
    bound = std::max(bound, d4.rowwise().norm().maxCoeff() * std::pow(h, 4));
  }
  // round-off through one second-derivative pass sets the floor
  double roundoff = 1e-15 * std::max(S.scale(), 1.0) / (hmin * hmin);
  return 50.0 * std::max(bound, roundoff);
}

Eigen::Array<bool, Eigen::Dynamic, 1> verdict_mask(const Grid& grid, int levels, int base_trim) {
  return fd::interior_mask(grid, std::max(base_trim, 2 * levels));
}

double relative_std(const Eigen::VectorXd& field, const Eigen::Array<bool, Eigen::Dynamic, 1>& mask) {
  std::vector<double> vals;
  vals.reserve(field.size());
  for (Eigen::Index i = 0; i < field.size(); ++i)
    if (mask[i]) vals.push_back(field[i]);
  if (vals.empty()) return 0.0;
  double mean = pairwise_sum(vals) / vals.size();
  std::vector<double> sq(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) sq[i] = (vals[i] - mean) * (vals[i] - mean);
  double var = pairwise_sum(sq) / vals.size();
  return std::sqrt(var) / std::max(std::abs(mean), 1e-300);
}

double masked_sup(const Eigen::VectorXd& field, const Eigen::Array<bool, Eigen::Dynamic, 1>& mask) {
  double s = 0;
  for (Eigen::Index i = 0; i < field.size(); ++i)
    if (mask[i]) s = std::max(s, std::abs(field[i]));
  return s;
}

double masked_mean(const Eigen::VectorXd& field, const Eigen::Array<bool, Eigen::Dynamic, 1>& mask) {
  std::vector<double> vals;
  for (Eigen::Index i = 0; i < field.size(); ++i)
    if (mask[i]) vals.push_back(field[i]);
  if (vals.empty()) return 0.0;
  return pairwise_sum(vals) / vals.size();
}

}  // namespace lapgeo
