#include "lapgeo/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>

#include "lapgeo/frenet.hpp"

namespace lapgeo {

namespace {
constexpr double two_pi = 2 * std::numbers::pi;
}

const SpectralComponent& SpectralDecomposition::component(int t) const {
  for (const auto& c : components)
    if (c.t == t) return c;
  throw Error(ErrorCode::BadInput, "no component with index " + std::to_string(t));
}

Eigen::MatrixXd SpectralDecomposition::synthesize(int t, int derivative) const {
  const SpectralComponent& c = component(t);
  const double w = two_pi * t / period;
  Eigen::MatrixXd out(samples, m);
  for (int j = 0; j < samples; ++j) {
    double s = period * j / samples;
    double cs = std::cos(w * s), sn = std::sin(w * s);
    Eigen::VectorXd v;
    switch (derivative % 4) {
      case 0: v = c.a * cs + c.b * sn; break;
      case 1: v = -c.a * sn + c.b * cs; break;
      case 2: v = -c.a * cs - c.b * sn; break;
      default: v = c.a * sn - c.b * cs; break;
    }
    out.row(j) = v * std::pow(w, derivative);
  }
  return out;
}

SpectralDecomposition decompose_closed_curve(const SampledImmersion& curve, const Tolerances& tol) {
  curve.validate();
  if (curve.n() != 1 || !curve.grid.axes[0].periodic)
    throw Error(ErrorCode::NotClosed, "spectral analysis needs a closed curve");
  double dev = max_speed_deviation(curve, tol);
  if (dev > tol.speed_tol)
    throw Error(ErrorCode::NotUnitSpeed, "speed deviates by " + std::to_string(dev));

  const int N = curve.grid.axes[0].samples;
  const int m = curve.m();
  SpectralDecomposition D;
  D.samples = N;
  D.m = m;
  D.period = curve.grid.axes[0].extent();
  D.mean = curve.points.colwise().mean();

  // direct DFT with a shared cos/sin table; desk-scale N keeps this cheap
  std::vector<double> cosT(N), sinT(N);
  for (int k = 0; k < N; ++k) {
    cosT[k] = std::cos(two_pi * k / N);
    sinT[k] = std::sin(two_pi * k / N);
  }
  const int nyquist = N / 2;
  double max_amp = 0;
  for (int t = 1; t <= nyquist; ++t) {
    SpectralComponent c;
    c.t = t;
    c.lambda = std::pow(two_pi * t / D.period, 2);
    c.a = Eigen::VectorXd::Zero(m);
    c.b = Eigen::VectorXd::Zero(m);
    for (int j = 0; j < N; ++j) {
      int idx = static_cast<int>((std::int64_t(t) * j) % N);
      c.a += cosT[idx] * curve.points.row(j).transpose();
      c.b += sinT[idx] * curve.points.row(j).transpose();
    }
    double norm = (t == nyquist && N % 2 == 0) ? 1.0 / N : 2.0 / N;
    c.a *= norm;
    c.b *= norm;
    c.amplitude = std::sqrt(c.a.squaredNorm() + c.b.squaredNorm());
    max_amp = std::max(max_amp, c.amplitude);
    D.components.push_back(std::move(c));
  }

  for (const auto& c : D.components)
    if (c.amplitude > tol.amp_tol * max_amp) D.type_set.push_back(c.t);
  D.order_low = D.type_set.empty() ? 0 : D.type_set.front();
  D.order_high = D.type_set.empty() ? 0 : D.type_set.back();
  // infinite type: amplitudes persist within a factor 2 of the Nyquist index
  for (int t : D.type_set)
    if (2 * t >= nyquist) D.infinite = true;
  D.k_type = static_cast<int>(D.type_set.size());
  return D;
}

MinimalPolynomialFit minimal_polynomial_fit(const SampledImmersion& curve, int k_max,
                                            const Tolerances& tol) {
  SpectralDecomposition D = decompose_closed_curve(curve, tol);
  // work on spectral coefficients: H_t = -lambda_t x_t, Delta^j H_t = lambda_t^j H_t.
  // Bins below amp_tol are dropped: lambda^k would amplify DFT round-off
  // at the Nyquist end past any polynomial signal.
  const int nb = static_cast<int>(D.type_set.size());
  if (nb == 0) throw Error(ErrorCode::BadInput, "mean curvature vanishes spectrally");
  const int m = D.m;
  Eigen::MatrixXd Hc(2 * nb, m);
  Eigen::VectorXd lam(nb);
  for (int i = 0; i < nb; ++i) {
    const SpectralComponent& c = D.component(D.type_set[i]);
    lam[i] = c.lambda;
    Hc.row(2 * i) = -lam[i] * c.a.transpose();
    Hc.row(2 * i + 1) = -lam[i] * c.b.transpose();
  }

  MinimalPolynomialFit best;
  best.nonterminating = true;
  for (int k = 1; k <= k_max; ++k) {
    // columns Delta^{k-j} H, j = 1..k; target -Delta^k H
    Eigen::MatrixXd A(2 * nb * m, k);
    Eigen::VectorXd rhs(2 * nb * m);
    for (int i = 0; i < 2 * nb; ++i) {
      double l = lam[i / 2];
      for (int c = 0; c < m; ++c) {
        for (int j = 1; j <= k; ++j) A(i * m + c, j - 1) = std::pow(l, k - j) * Hc(i, c);
        rhs(i * m + c) = -std::pow(l, k) * Hc(i, c);
      }
    }
    Eigen::VectorXd colscale(k);
    for (int j = 0; j < k; ++j) colscale[j] = std::max(A.col(j).norm(), 1e-300);
    for (int j = 0; j < k; ++j) A.col(j) /= colscale[j];
    Eigen::MatrixXd gram = A.transpose() * A;
    Eigen::VectorXd beta = gram.ldlt().solve(A.transpose() * rhs);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    double cond = es.eigenvalues()[k - 1] / std::max(es.eigenvalues()[0], 1e-300);

    double resid = (A * beta - rhs).norm() / std::max(rhs.norm(), 1e-300);
    Eigen::VectorXd coeffs = beta.array() / colscale.array();

    if (resid <= tol.poly_tol || k == k_max) {
      best.degree = k;
      best.coeffs = coeffs;
      best.residual = resid;
      best.rank_warning = cond > 1e12;
      best.nonterminating = resid > tol.poly_tol;
      // roots of t^k + c1 t^{k-1} + ... + ck
      if (k == 1) {
        best.roots = {std::complex<double>(-coeffs[0], 0)};
      } else if (k == 2) {
        std::complex<double> disc = std::sqrt(std::complex<double>(coeffs[0] * coeffs[0] - 4 * coeffs[1], 0));
        best.roots = {(-coeffs[0] + disc) / 2.0, (-coeffs[0] - disc) / 2.0};
      } else {
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(k, k);
        for (int j = 0; j < k; ++j) comp(0, j) = -coeffs[j];
        for (int j = 1; j < k; ++j) comp(j, j - 1) = 1.0;
        Eigen::EigenSolver<Eigen::MatrixXd> ces(comp);
        for (int j = 0; j < k; ++j) best.roots.push_back(ces.eigenvalues()[j]);
      }
      if (!best.nonterminating) break;
    }
  }
  std::sort(best.roots.begin(), best.roots.end(),
            [](auto u, auto v) { return u.real() < v.real(); });
  return best;
}

LinearFitAxb linear_fit_Ax_b(const SampledImmersion& S, const Tolerances& tol) {
  GeometryFields G = induced_metric(S, tol);
  Eigen::MatrixXd lap = laplace_beltrami(S, G, S.points, tol);
  const int m = S.m();
  std::vector<std::int64_t> idx;
  for (std::int64_t i = 0; i < S.grid.total(); ++i)
    if (G.untrimmed[i]) idx.push_back(i);

  Eigen::MatrixXd X(idx.size(), m + 1);
  Eigen::MatrixXd Y(idx.size(), m);
  for (size_t r = 0; r < idx.size(); ++r) {
    X.row(r).head(m) = S.points.row(idx[r]);
    X(r, m) = 1.0;
    Y.row(r) = lap.row(idx[r]);
  }
  Eigen::MatrixXd sol = X.colPivHouseholderQr().solve(Y);  // (m+1) x m
  LinearFitAxb out;
  out.A = sol.topRows(m).transpose();
  out.b = sol.row(m).transpose();
  out.residual = (X * sol - Y).norm() / std::max(Y.norm(), 1e-300);
  out.linearly_independent = out.residual <= tol.fit_tol;
  return out;
}

ConjugateResult conjugate_2type(const SpectralDecomposition& D, const Tolerances& tol) {
  if (D.k_type != 2 || D.infinite)
    throw Error(ErrorCode::Not2Type, "conjugation needs a 2-type decomposition");
  const int p = D.type_set[0], q = D.type_set[1];
  ConjugateResult R;
  R.curve.grid = Grid({Axis{D.samples, 0.0, D.period, true}});
  R.curve.ambient_dim = D.m;
  R.curve.label = "conjugate";
  R.curve.points = D.synthesize(p) - D.synthesize(q);
  R.curve.points.rowwise() += D.mean.transpose();

  Eigen::MatrixXd dp = D.synthesize(p, 1), dq = D.synthesize(q, 1);
  double dev = 0;
  for (int j = 0; j < D.samples; ++j)
    dev = std::max(dev, std::abs((dp.row(j) - dq.row(j)).norm() - 1.0));
  R.speed_deviation = dev;
  R.unit_speed = dev <= tol.speed_tol;
  return R;
}

ComponentSet components_from_decomposition(const SpectralDecomposition& D) {
  ComponentSet C;
  C.m = D.m;
  C.n_axes = 1;
  for (int t : D.type_set) {
    C.lambda.push_back(D.component(t).lambda);
    C.samples.push_back(D.synthesize(t));
    C.dsamples.push_back({D.synthesize(t, 1)});
  }
  return C;
}

OrthogonalityReport orthogonality_report(const ComponentSet& C, const Tolerances& tol) {
  OrthogonalityReport R;
  const int k = static_cast<int>(C.samples.size());
  if (k == 0) return R;

  std::vector<Eigen::MatrixXd> bases;
  int dims_sum = 0;
  std::int64_t rows_total = 0;
  for (const auto& X : C.samples) rows_total += X.rows();
  Eigen::MatrixXd stacked(rows_total, C.m);
  std::int64_t at = 0;
  for (const auto& X : C.samples) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinV);
    int d = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()[i] > tol.rank_tol * svd.singularValues()[0]) ++d;
    R.subspace_dims.push_back(d);
    dims_sum += d;
    bases.push_back(svd.matrixV().leftCols(d));
    stacked.middleRows(at, X.rows()) = X;
    at += X.rows();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> ssvd(stacked);
  R.span_dim = 0;
  for (int i = 0; i < ssvd.singularValues().size(); ++i)
    if (ssvd.singularValues()[i] > tol.rank_tol * ssvd.singularValues()[0]) ++R.span_dim;
  R.linearly_independent = (R.span_dim == dims_sum);

  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) {
      Eigen::JacobiSVD<Eigen::MatrixXd> pc(bases[u].transpose() * bases[v]);
      if (pc.singularValues().size())
        R.max_principal_cosine = std::max(R.max_principal_cosine, pc.singularValues()[0]);
    }
  R.orthogonal = R.max_principal_cosine <= tol.angle_tol;

  double pw = 0, pw_scale = 0, spw = 0, spw_scale = 0;
  for (int u = 0; u < k; ++u) {
    pw_scale = std::max(pw_scale, C.samples[u].rowwise().norm().maxCoeff());
    for (const auto& d : C.dsamples[u]) spw_scale = std::max(spw_scale, d.rowwise().norm().maxCoeff());
  }
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) {
      for (Eigen::Index r = 0; r < C.samples[u].rows(); ++r)
        pw = std::max(pw, std::abs(C.samples[u].row(r).dot(C.samples[v].row(r))));
      for (const auto& du : C.dsamples[u])
        for (const auto& dv : C.dsamples[v])
          for (Eigen::Index r = 0; r < du.rows(); ++r)
            spw = std::max(spw, std::abs(du.row(r).dot(dv.row(r))));
    }
  R.pointwise_sup = pw / std::max(pw_scale * pw_scale, 1e-300);
  R.strongly_sup = spw / std::max(spw_scale * spw_scale, 1e-300);
  R.pointwise_orthogonal = R.pointwise_sup <= tol.angle_tol;
  R.strongly_pointwise_orthogonal = R.strongly_sup <= tol.angle_tol;
  return R;
}

DualVerdict dual_2type_check(double l1, double l2) {
  DualVerdict v;
  double scale = std::max(std::abs(l1), std::abs(l2));
  v.null_2type = scale > 0 && std::min(std::abs(l1), std::abs(l2)) <= 1e-12 * scale &&
                 std::abs(l1 - l2) > 1e-12 * scale;
  v.dual = scale > 0 && std::abs(l1 + l2) <= 1e-12 * scale && std::abs(l1) > 1e-12 * scale;
  return v;
}

TwoTypeInvariants spherical_2type_invariants(double lp, double lq, int n) {
  if (!(lp < lq)) throw Error(ErrorCode::BadOrder, "need lambda_p < lambda_q");
  if (n < 2) throw Error(ErrorCode::BadOrder, "need n >= 2");
  TwoTypeInvariants v;
  v.alpha2 = (lp + lq) / n - lp * lq / double(n) / n;
  v.tau = (lp + lq) / n - lp * lq / (double(n) * (n - 1));
  v.h2 = lp + lq;
  return v;
}

}  // namespace lapgeo
