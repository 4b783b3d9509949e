#include "lapgeo/laplace.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "lapgeo/fd.hpp"

namespace lapgeo {

namespace {

Eigen::Matrix2d sample_form(const Eigen::MatrixXd& flat, std::int64_t i, int n) {
  Eigen::Matrix2d M = Eigen::Matrix2d::Identity();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) M(a, b) = flat(i, a * n + b);
  return M;
}

}  // namespace

LaplaceResult laplace_map(const SampledImmersion& S, const GeometryFields& G, const Tolerances& tol) {
  LaplaceResult R;
  R.L = S;
  R.L.points = laplace_beltrami(S, G, S.points, tol);
  R.L.label = "laplace(" + S.label + ")";
  const int n = S.n();
  const std::int64_t N = S.grid.total();

  for (int a = 0; a < n; ++a) R.dL[a] = fd::derivative(S.grid, R.L.points, a, 1, tol.fd_order);
  R.g_L.resize(N, n * n);
  for (std::int64_t i = 0; i < N; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) R.g_L(i, a * n + b) = R.dL[a].row(i).dot(R.dL[b].row(i));

  R.fd_tol = fd_tolerance(S, tol);
  auto mask = verdict_mask(S.grid, 2, G.trim);
  double sup = 0;
  for (std::int64_t i = 0; i < N; ++i)
    if (mask[i]) sup = std::max(sup, R.L.points.row(i).norm());
  R.sup_norm = sup;
  R.degenerate = sup <= R.fd_tol * std::max(S.scale(), 1.0);
  return R;
}

RankProfile rank_profile(const SampledImmersion& S, const LaplaceResult& R,
                         const GeometryFields& G, const Tolerances& tol) {
  const int n = S.n();
  const std::int64_t N = S.grid.total();
  RankProfile P;
  P.rank.resize(N);
  if (R.degenerate) {
    P.rank.setZero();
    P.constant = true;
    P.value = 0;
    return P;
  }
  auto mask = verdict_mask(S.grid, 3, G.trim);
  double sigma_ref = 0;
  Eigen::MatrixXd dl(S.m(), n);
  std::vector<Eigen::VectorXd> sv(N);
  for (std::int64_t i = 0; i < N; ++i) {
    for (int a = 0; a < n; ++a) dl.col(a) = R.dL[a].row(i);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(dl);
    sv[i] = svd.singularValues();
    if (mask[i]) sigma_ref = std::max(sigma_ref, sv[i][0]);
  }
  for (std::int64_t i = 0; i < N; ++i) {
    int r = 0;
    for (int a = 0; a < n; ++a)
      if (sv[i][a] > sigma_ref * tol.rank_tol) ++r;
    P.rank[i] = r;
  }
  P.constant = true;
  P.value = -1;
  for (std::int64_t i = 0; i < N; ++i) {
    if (!mask[i]) continue;
    if (P.value < 0) P.value = P.rank[i];
    if (P.rank[i] != P.value) P.constant = false;
  }
  return P;
}

AnalysisReport classify_transformation(const SampledImmersion& S, const GeometryFields& G,
                                       const LaplaceResult& R, const Tolerances& tol) {
  const int n = S.n();
  const std::int64_t N = S.grid.total();
  AnalysisReport rep;
  rep.tol_used = tol.const_tol;
  rep.trimmed = N;
  if (R.degenerate) {
    rep.degenerate = true;
    rep.verdict = "degenerate";
    return rep;
  }

  auto mask = verdict_mask(S.grid, 3, G.trim);
  Eigen::VectorXd rho2(N), rho(N);
  double sup_a = 0, inf_rho2 = 1e300;
  for (std::int64_t i = 0; i < N; ++i) {
    Eigen::Matrix2d gL = sample_form(R.g_L, i, n);
    Eigen::Matrix2d g = sample_form(G.g, i, n);
    Eigen::Matrix2d gi = sample_form(G.g_inv, i, n);
    double r2 = (gL * gi).trace() / n;
    rho2[i] = r2;
    rho[i] = std::sqrt(std::max(r2, 0.0));
    if (!mask[i]) continue;
    double a = (gL - r2 * g).norm() / g.norm();
    sup_a = std::max(sup_a, a);
    inf_rho2 = std::min(inf_rho2, r2);
  }
  std::int64_t kept = 0;
  for (std::int64_t i = 0; i < N; ++i) kept += mask[i] ? 1 : 0;
  rep.trimmed = N - kept;

  rep.sup_anisotropy = sup_a;
  rep.inf_rho2 = inf_rho2;
  rep.rho_rel_std = relative_std(rho, mask);
  rep.c = masked_mean(rho, mask);

  double rho_floor = tol.rank_tol * masked_sup(rho2, mask);
  rep.weakly_conformal = sup_a <= tol.const_tol;
  rep.conformal = rep.weakly_conformal && inf_rho2 > rho_floor;
  rep.homothetic = rep.conformal && rep.rho_rel_std <= tol.const_tol;
  rep.isometric = rep.homothetic && std::abs(rep.c - 1.0) <= tol.const_tol;
  rep.verdict = rep.isometric      ? "isometric"
                : rep.homothetic   ? "homothetic"
                : rep.conformal    ? "conformal"
                : rep.weakly_conformal ? "weakly_conformal"
                                       : "none";
  return rep;
}

ConformalSurfaceReport conformal_surface_report_E3(const SampledImmersion& S, GeometryFields& G,
                                                   const Tolerances& tol) {
  if (S.n() != 2 || S.m() != 3) throw Error(ErrorCode::BadInput, "needs a surface in E^3");
  if (!G.has_H) add_mean_curvature(S, G, tol);
  if (!G.has_K) add_gauss_curvature(S, G, tol);
  if (!G.has_shape) add_hypersurface_shape(S, G, tol);
  const std::int64_t N = S.grid.total();

  double a_sup = masked_sup(G.alpha, G.untrimmed);
  for (std::int64_t i = 0; i < N; ++i)
    if (G.untrimmed[i] && G.alpha[i] < 1e-6 * a_sup)
      throw Error(ErrorCode::MeanCurvatureVanishes, "sample " + std::to_string(i));

  Eigen::VectorXd a2 = G.alpha.array().square();
  Eigen::VectorXd da2[2] = {fd::derivative(S.grid, a2, 0, 1, tol.fd_order),
                            fd::derivative(S.grid, a2, 1, 1, tol.fd_order)};
  Eigen::VectorXd da[2] = {fd::derivative(S.grid, G.alpha, 0, 1, tol.fd_order),
                           fd::derivative(S.grid, G.alpha, 1, 1, tol.fd_order)};
  Eigen::MatrixXd lap_a2 = laplace_beltrami(S, G, a2, tol);

  // second fundamental form for principal directions
  Eigen::MatrixXd xuu = fd::derivative(S.grid, S.points, 0, 2, tol.fd_order);
  Eigen::MatrixXd xvv = fd::derivative(S.grid, S.points, 1, 2, tol.fd_order);
  Eigen::MatrixXd xuv = fd::derivative(S.grid, G.dx[0], 1, 1, tol.fd_order);

  // gradient floor: |grad alpha^2| resolved relative to alpha^2 / diameter
  double diam = 0;
  Eigen::RowVectorXd lo = S.points.colwise().minCoeff(), hi = S.points.colwise().maxCoeff();
  diam = (hi - lo).norm();
  double grad_floor = 1e-3 * masked_sup(a2, verdict_mask(S.grid, 4, G.trim)) / std::max(diam, 1e-300);

  ConformalSurfaceReport rep;
  rep.tol_used = tol.angle_tol;
  auto mask = verdict_mask(S.grid, 4, G.trim);
  double r1 = 0, r2 = 0, r3 = 0;
  std::int64_t active = 0;
  for (std::int64_t i = 0; i < N; ++i) {
    if (!mask[i]) continue;
    Eigen::Matrix2d g = sample_form(G.g, i, 2);
    Eigen::Matrix2d gi = sample_form(G.g_inv, i, 2);
    Eigen::Vector2d da2_c(da2[0][i], da2[1][i]);     // covariant components
    Eigen::Vector2d grad_a2 = gi * da2_c;            // contravariant
    double grad_norm2 = da2_c.dot(grad_a2);
    Eigen::Vector2d da_c(da[0][i], da[1][i]);
    double grad_a_norm2 = da_c.dot(gi * da_c);

    // condition (2): K = alpha^2 - |grad alpha|^4 / (16 alpha^6)
    double al = G.alpha[i];
    double rhs = al * al - grad_a_norm2 * grad_a_norm2 / (16 * std::pow(al, 6));
    double denom2 = std::abs(G.K[i]) + al * al + grad_a_norm2 * grad_a_norm2 / (16 * std::pow(al, 6));
    r2 = std::max(r2, std::abs(G.K[i] - rhs) / std::max(denom2, 1e-300));
    rep.gauss_residual_abs = std::max(rep.gauss_residual_abs, std::abs(G.K[i] - rhs));

    if (std::sqrt(std::max(grad_norm2, 0.0)) <= grad_floor) continue;
    ++active;

    // condition (1): grad alpha^2 is a principal direction
    Eigen::Vector3d nu = G.normal.row(i);
    Eigen::Matrix2d b;
    b << xuu.row(i).dot(nu), xuv.row(i).dot(nu), xuv.row(i).dot(nu), xvv.row(i).dot(nu);
    Eigen::Matrix2d shape = gi * b;
    Eigen::EigenSolver<Eigen::Matrix2d> es(shape);
    double best = 1.0;
    for (int k = 0; k < 2; ++k) {
      Eigen::Vector2d dir = es.eigenvectors().col(k).real();
      double gd = dir.dot(g * dir), gg = grad_a2.dot(g * grad_a2);
      double cosang = dir.dot(g * grad_a2) / std::sqrt(std::max(gd * gg, 1e-300));
      best = std::min(best, std::sqrt(std::max(1.0 - cosang * cosang, 0.0)));
    }
    r1 = std::max(r1, best);

    // condition (3): Delta alpha^2 = 4 alpha^4 - 5 |grad alpha|^2
    double rhs3 = 4 * std::pow(al, 4) - 5 * grad_a_norm2;
    double denom3 = std::abs(lap_a2(i, 0)) + 4 * std::pow(al, 4) + 5 * grad_a_norm2;
    r3 = std::max(r3, std::abs(lap_a2(i, 0) - rhs3) / std::max(denom3, 1e-300));
  }
  rep.principal_angle_sin = r1;
  rep.gauss_residual = r2;
  rep.laplace_residual = r3;
  rep.gradient_active = active;
  rep.c1 = r1 <= tol.angle_tol;
  rep.c2 = r2 <= tol.angle_tol;
  rep.c3 = r3 <= tol.angle_tol;
  rep.holds = rep.c1 && rep.c2 && rep.c3;
  return rep;
}

ResidualReport biharmonic_residual(const SampledImmersion& S, const GeometryFields& G,
                                   const Tolerances& tol) {
  Eigen::MatrixXd lap = laplace_beltrami(S, G, S.points, tol);
  Eigen::MatrixXd lap2 = laplace_beltrami(S, G, lap, tol);
  ResidualReport rep;
  rep.field = lap2.rowwise().norm();
  rep.sup = masked_sup(rep.field, verdict_mask(S.grid, 4, G.trim));
  rep.scale = std::max(S.scale(), 1.0);
  double hmin = 1e300;
  for (const auto& ax : S.grid.axes) hmin = std::min(hmin, ax.step());
  // second floor: double round-off through two Laplacian passes
  double roundoff = 50 * 2.2e-16 / std::pow(hmin, 4);
  rep.threshold = std::max(fd_tolerance(S, tol), roundoff) * rep.scale;
  rep.holds = rep.sup <= rep.threshold;
  return rep;
}

ResidualReport harmonic_mean_curvature_residual(const SampledImmersion& S, GeometryFields& G,
                                                const Tolerances& tol) {
  if (!G.has_H) add_mean_curvature(S, G, tol);
  Eigen::MatrixXd lap = laplace_beltrami(S, G, G.alpha, tol);
  auto mask = verdict_mask(S.grid, 4, G.trim);
  ResidualReport rep;
  rep.field = lap.col(0).cwiseAbs();
  rep.sup = masked_sup(rep.field, mask);
  rep.scale = masked_sup(G.alpha, mask);
  double rel = std::max(fd_tolerance(S, tol) / std::max(S.scale(), 1.0), 1e-3);
  rep.threshold = rel * std::pow(rep.scale, 3);
  rep.holds = rep.sup <= rep.threshold;
  return rep;
}

SphericalLaplaceReport spherical_laplace(const SampledImmersion& S, GeometryFields& G,
                                         const LaplaceResult& R, const Tolerances& tol) {
  if (!G.has_H) add_mean_curvature(S, G, tol);
  if (relative_std(G.alpha, G.untrimmed) > tol.const_tol)
    throw Error(ErrorCode::NonConstantMeanCurvature, "alpha is not constant");
  const int n = S.n();
  const std::int64_t N = S.grid.total();

  auto mask2 = verdict_mask(S.grid, 2, G.trim);
  auto mask3 = verdict_mask(S.grid, 3, G.trim);
  auto mask4 = verdict_mask(S.grid, 4, G.trim);
  SphericalLaplaceReport rep;
  rep.radius = n * masked_mean(G.alpha, mask2);
  for (std::int64_t i = 0; i < N; ++i)
    if (mask2[i])
      rep.containment_sup = std::max(rep.containment_sup,
                                     std::abs(R.L.points.row(i).norm() - rep.radius));

  rep.energy.resize(N);
  for (std::int64_t i = 0; i < N; ++i) {
    Eigen::Matrix2d gL = sample_form(R.g_L, i, n);
    Eigen::Matrix2d gi = sample_form(G.g_inv, i, n);
    rep.energy[i] = 0.5 * (gL * gi).trace();
  }
  rep.energy_mean = masked_mean(rep.energy, mask3);
  rep.energy_rel_std = relative_std(rep.energy, mask3);

  Eigen::MatrixXd lapL = laplace_beltrami(S, G, R.L.points, tol);
  Eigen::VectorXd tang(N);
  for (std::int64_t i = 0; i < N; ++i) {
    Eigen::VectorXd Lp = R.L.points.row(i);
    double ln = Lp.norm();
    Eigen::VectorXd radial = ln > 1e-300 ? (Lp / ln).eval() : Eigen::VectorXd::Zero(S.m()).eval();
    Eigen::VectorXd t = lapL.row(i).transpose() - lapL.row(i).dot(radial) * radial;
    tang[i] = t.norm();
    if (mask4[i]) rep.tension_scale = std::max(rep.tension_scale, lapL.row(i).norm());
  }
  rep.tension_sup = masked_sup(tang, mask4);
  double rel = std::max(fd_tolerance(S, tol) / std::max(S.scale(), 1.0), 1e-3);
  rep.harmonic = rep.tension_sup <= rel * std::max(rep.tension_scale, 1e-300);
  return rep;
}

namespace {

// ratio comparison of two psd forms; handles a rank-deficient reference form
// (e.g. the Gauss metric of a cylinder) by comparing on its range only.
struct FormComparison {
  std::vector<double> ratios;
  double sup_anisotropy = 0;
  bool degenerate = true;
};

void compare_forms(const Eigen::Matrix2d& gL, const Eigen::Matrix2d& gG, double gG_floor,
                   FormComparison& out) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(gG);
  double lmax = es.eigenvalues()[1];
  if (lmax <= gG_floor) return;  // Gauss metric vanishes here
  out.degenerate = false;
  double rho = 0;
  int active = 0;
  for (int k = 0; k < 2; ++k) {
    if (es.eigenvalues()[k] <= gG_floor * 1e3) continue;
    Eigen::Vector2d e = es.eigenvectors().col(k);
    double r = e.dot(gL * e) / es.eigenvalues()[k];
    out.ratios.push_back(r);
    rho += r;
    ++active;
  }
  if (!active) return;
  rho /= active;
  out.sup_anisotropy = std::max(out.sup_anisotropy, (gL - rho * gG).norm() / (rho * gG.norm()));
}

}  // namespace

LGReport lg_hypersurface(const SampledImmersion& S, GeometryFields& G, const LaplaceResult& R,
                         bool spherical, const Tolerances& tol) {
  const int n = S.n();
  const std::int64_t N = S.grid.total();
  if (!G.has_H) add_mean_curvature(S, G, tol);
  LGReport rep;
  rep.spherical_variant = spherical;
  auto mask3 = verdict_mask(S.grid, 3, G.trim);

  std::vector<double> all_ratios;
  double sup_a = 0;

  if (!spherical) {
    if (S.m() != n + 1) throw Error(ErrorCode::BadInput, "Euclidean LG needs m = n+1");
    if (!G.has_shape) add_hypersurface_shape(S, G, tol);
    Eigen::RowVectorXd lo = S.points.colwise().minCoeff(), hi = S.points.colwise().maxCoeff();
    double kfloor = 1e-7 / std::max((hi - lo).norm(), 1e-300);
    double kscale = 0;
    for (std::int64_t i = 0; i < N; ++i)
      if (mask3[i]) kscale = std::max(kscale, G.principal.row(i).cwiseAbs().maxCoeff());
    if (kscale <= kfloor)
      throw Error(ErrorCode::GaussMapDegenerate, "all principal curvatures vanish");
    // Gauss metric = pullback of the sphere metric under the Gauss map
    Eigen::MatrixXd dN[2];
    for (int a = 0; a < n; ++a) dN[a] = fd::derivative(S.grid, G.normal, a, 1, tol.fd_order);
    double gG_scale = 0;
    std::vector<Eigen::Matrix2d> gGs(N), gLs(N);
    for (std::int64_t i = 0; i < N; ++i) {
      Eigen::Matrix2d gG = Eigen::Matrix2d::Zero(), gL = Eigen::Matrix2d::Zero();
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          gG(a, b) = dN[a].row(i).dot(dN[b].row(i));
          gL(a, b) = R.g_L(i, a * n + b);
        }
      gGs[i] = gG;
      gLs[i] = gL;
      if (mask3[i]) gG_scale = std::max(gG_scale, gG.norm());
    }
    if (gG_scale <= 0) throw Error(ErrorCode::GaussMapDegenerate, "all principal curvatures vanish");
    std::int64_t live = 0;
    for (std::int64_t i = 0; i < N; ++i) {
      if (!mask3[i]) continue;
      FormComparison cmp;
      compare_forms(gLs[i], gGs[i], tol.rank_tol * gG_scale, cmp);
      if (cmp.degenerate) continue;
      ++live;
      sup_a = std::max(sup_a, cmp.sup_anisotropy);
      for (double r : cmp.ratios) all_ratios.push_back(r);
    }
    if (!live) throw Error(ErrorCode::GaussMapDegenerate, "Gauss metric vanishes everywhere");
  } else {
    if (S.m() != 4 || n != 2) throw Error(ErrorCode::BadInput, "spherical LG variant needs a surface in E^4");
    Eigen::VectorXd norms = S.points.rowwise().norm();
    if (relative_std(norms, G.untrimmed) > tol.const_tol)
      throw Error(ErrorCode::BadInput, "surface is not spherical about the origin");
    double r = masked_mean(norms, G.untrimmed);
    (void)0;
    rep.sphere_radius = r;

    Eigen::MatrixXd xuu = fd::derivative(S.grid, S.points, 0, 2, tol.fd_order);
    Eigen::MatrixXd xvv = fd::derivative(S.grid, S.points, 1, 2, tol.fd_order);
    Eigen::MatrixXd xuv = fd::derivative(S.grid, G.dx[0], 1, 1, tol.fd_order);

    // alpha_bar = mean curvature inside S^3, xi = unit normal inside S^3
    Eigen::VectorXd abar(N);
    std::vector<Eigen::Matrix2d> shapes(N), gs(N), gis(N);
    for (std::int64_t i = 0; i < N; ++i) {
      Eigen::Vector4d x = S.points.row(i), xu = G.dx[0].row(i), xv = G.dx[1].row(i);
      Eigen::Vector4d xhat = x.normalized();
      // orthonormalize the normal space and peel off the radial direction
      Eigen::Matrix<double, 4, 3> B;
      B.col(0) = xu.normalized();
      B.col(1) = (xv - xv.dot(B.col(0)) * B.col(0)).normalized();
      B.col(2) = xhat;
      Eigen::Vector4d xi = Eigen::Vector4d::Zero();
      for (int c = 0; c < 4; ++c) {
        Eigen::Vector4d e = Eigen::Vector4d::Unit(c);
        Eigen::Vector4d res = e - B * (B.transpose() * e);
        if (res.norm() > xi.norm()) xi = res;
      }
      xi.normalize();
      Eigen::Matrix2d b;
      b << xuu.row(i).dot(xi), xuv.row(i).dot(xi), xuv.row(i).dot(xi), xvv.row(i).dot(xi);
      Eigen::Matrix2d g = sample_form(G.g, i, 2), gi = sample_form(G.g_inv, i, 2);
      shapes[i] = gi * b;
      gs[i] = g;
      gis[i] = gi;
      abar[i] = shapes[i].trace() / 2;
    }
    Eigen::VectorXd dab[2] = {fd::derivative(S.grid, abar, 0, 1, tol.fd_order),
                              fd::derivative(S.grid, abar, 1, 1, tol.fd_order)};
    for (std::int64_t i = 0; i < N; ++i) {
      if (!mask3[i]) continue;
      // principal frame of the S^3 shape operator, g-orthonormal
      Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix2d> ges(
          0.5 * (gs[i] * shapes[i] + shapes[i].transpose() * gs[i]), gs[i]);
      Eigen::Vector2d mu = ges.eigenvalues();
      Eigen::Matrix2d E = ges.eigenvectors();  // columns g-orthonormal
      Eigen::Vector2d da_cov(dab[0][i], dab[1][i]);
      Eigen::Matrix2d gL = Eigen::Matrix2d::Zero(), gG = Eigen::Matrix2d::Zero();
      double irr = 1.0 / (r * r);
      for (int a = 0; a < 2; ++a) {
        double ea_alpha = E.col(a).dot(da_cov);
        for (int b = 0; b < 2; ++b) {
          double eb_alpha = E.col(b).dot(da_cov);
          gL(a, b) = 4 * (abar[i] * mu[a] + irr) * (abar[i] * mu[b] + irr) * (a == b ? 1 : 0) +
                     4 * ea_alpha * eb_alpha;
          gG(a, b) = (mu[a] * mu[b] + irr) * (a == b ? 1 : 0);
        }
      }
      FormComparison cmp;
      compare_forms(gL, gG, tol.rank_tol * std::max(gG.norm(), 1e-300) * 1e-6, cmp);
      if (cmp.degenerate) continue;
      sup_a = std::max(sup_a, cmp.sup_anisotropy);
      for (double rr : cmp.ratios) all_ratios.push_back(rr);
    }
  }

  rep.ratio = Eigen::Map<Eigen::VectorXd>(all_ratios.data(), all_ratios.size());
  Eigen::Array<bool, Eigen::Dynamic, 1> allmask =
      Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(rep.ratio.size(), true);
  rep.rel_std = relative_std(rep.ratio, allmask);
  rep.fitted_ratio = masked_mean(rep.ratio, allmask);
  rep.sup_anisotropy = sup_a;
  rep.weakly_conformal = sup_a <= tol.const_tol;
  rep.conformal = rep.weakly_conformal && rep.fitted_ratio > 0;
  rep.homothetic = rep.conformal && rep.rel_std <= tol.const_tol;
  return rep;
}

TotallyRealReport totally_real_check(const SampledImmersion& S, const GeometryFields& G,
                                     const LaplaceResult& R, const Tolerances& tol) {
  const int m = S.m(), n = S.n();
  if (m % 2 != 0) throw Error(ErrorCode::OddAmbientDim, "J needs even ambient dimension");
  if (m != 2 * n) throw Error(ErrorCode::BadInput, "totally-real check needs m = 2n");
  auto J = [m](const Eigen::RowVectorXd& v) {
    Eigen::RowVectorXd out(m);
    for (int k = 0; k < m / 2; ++k) {
      out[2 * k] = -v[2 * k + 1];
      out[2 * k + 1] = v[2 * k];
    }
    return out;
  };
  auto defect = [&](const Eigen::MatrixXd* d, const Eigen::Array<bool, Eigen::Dynamic, 1>& mask) {
    double sup = 0, scale = 0;
    for (std::int64_t i = 0; i < S.grid.total(); ++i) {
      if (!mask[i]) continue;
      for (int a = 0; a < n; ++a) {
        scale = std::max(scale, d[a].row(i).squaredNorm());
        for (int b = 0; b < n; ++b) sup = std::max(sup, std::abs(J(d[a].row(i)).dot(d[b].row(i))));
      }
    }
    return sup / std::max(scale, 1e-300);
  };

  TotallyRealReport rep;
  rep.x_defect = defect(G.dx, G.untrimmed);
  rep.x_totally_real = rep.x_defect <= tol.angle_tol;
  rep.L_degenerate = R.degenerate;
  if (R.degenerate) {
    rep.L_defect = 0;
    rep.L_totally_real = true;  // vacuous: the image is a point
  } else {
    rep.L_defect = defect(R.dL, verdict_mask(S.grid, 3, G.trim));
    rep.L_totally_real = rep.L_defect <= tol.angle_tol;
  }
  return rep;
}

}  // namespace lapgeo
