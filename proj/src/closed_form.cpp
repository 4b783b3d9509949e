#include <cmath>
#include <numbers>

#include "lapgeo/fd.hpp"
#include "lapgeo/generators.hpp"
#include "lapgeo/laplace.hpp"

namespace lapgeo {

namespace {

constexpr double pi = std::numbers::pi;

double pget(const std::map<std::string, double>& p, const std::string& k, double dflt) {
  auto it = p.find(k);
  return it == p.end() ? dflt : it->second;
}

// Laplace map of a revolution surface about the x-axis with profile
// (a(v), b(v)): Delta x = -(1/(w b)) [ (b/w)' x_v + (b/w) x_vv ] + (1/b) n_theta
struct Profile {
  std::function<double(double)> a, ap, app, b, bp, bpp;
};

Eigen::Vector3d revolution_laplace(const Profile& pr, double v, double th) {
  double a = pr.a(v), ap = pr.ap(v), app = pr.app(v);
  double b = pr.b(v), bp = pr.bp(v), bpp = pr.bpp(v);
  double w = std::hypot(ap, bp);
  double wp = (ap * app + bp * bpp) / w;
  double c = std::cos(th), s = std::sin(th);
  Eigen::Vector3d xv(ap, bp * c, bp * s);
  Eigen::Vector3d xvv(app, bpp * c, bpp * s);
  double bw = b / w, bwp = (bp * w - b * wp) / (w * w);
  Eigen::Vector3d lap = -(bwp * xv + bw * xvv) / (w * b);
  lap += Eigen::Vector3d(0, c / b, s / b);
  return lap;
}

}  // namespace

ClosedFormLaplace closed_form_laplace(const std::string& kind,
                                      const std::map<std::string, double>& params, const Grid& grid,
                                      const Tolerances& tol) {
  std::vector<int> counts;
  for (const auto& ax : grid.axes) counts.push_back(ax.samples);
  Params gp(params.begin(), params.end());
  SampledImmersion S = generate(kind, gp, counts);

  const std::int64_t N = S.grid.total();
  Eigen::MatrixXd L(N, S.m());

  auto at = [&](int axis, std::int64_t idx) {
    if (S.n() == 1) return S.grid.axes[0].coord(static_cast<int>(idx));
    int i = static_cast<int>(idx / S.grid.axes[1].samples);
    int j = static_cast<int>(idx % S.grid.axes[1].samples);
    return axis == 0 ? S.grid.axes[0].coord(i) : S.grid.axes[1].coord(j);
  };

  if (kind == "cone") {
    double c = pget(params, "c", 0.8);
    double z = std::sqrt(1 - c * c);
    // L = -(1/t)(beta + beta'') with beta the unit circle of latitude
    for (std::int64_t i = 0; i < N; ++i) {
      double t = at(0, i), s = at(1, i);
      double C = std::cos(s / c), Sn = std::sin(s / c);
      Eigen::Vector3d bpb((c - 1 / c) * C, (c - 1 / c) * Sn, z);
      L.row(i) = -bpb / t;
    }
  } else if (kind == "tangential_developable") {
    double a = pget(params, "a", 1.0), b = pget(params, "b", 0.5);
    double cc = std::hypot(a, b);
    double k1 = a / (cc * cc), k2 = b / (cc * cc);
    // L = -(k2/(t k1)) b3 for the tangent developable of a helix
    for (std::int64_t i = 0; i < N; ++i) {
      double s = at(0, i), t = at(1, i);
      Eigen::Vector3d b3(b / cc * std::sin(s / cc), -b / cc * std::cos(s / cc), a / cc);
      L.row(i) = -(k2 / (t * k1)) * b3;
    }
  } else if (kind == "cylinder") {
    double a = pget(params, "a", 1.0);
    for (std::int64_t i = 0; i < N; ++i) {
      double s = at(0, i);
      L.row(i) = Eigen::Vector3d(0, std::cos(s / a) / a, std::sin(s / a) / a);
    }
  } else if (kind == "helicoid") {
    L.setZero();
  } else if (kind == "torus_revolution") {
    double R = pget(params, "R", 2.0), r = pget(params, "r", 0.5);
    Profile pr{[r](double v) { return r * std::sin(v); },  [r](double v) { return r * std::cos(v); },
               [r](double v) { return -r * std::sin(v); },
               [R, r](double v) { return R + r * std::cos(v); },
               [r](double v) { return -r * std::sin(v); },
               [r](double v) { return -r * std::cos(v); }};
    for (std::int64_t i = 0; i < N; ++i) L.row(i) = revolution_laplace(pr, at(0, i), at(1, i));
  } else if (kind == "catenoid") {
    L.setZero();
  } else if (kind == "revolution_generic") {
    double c0 = pget(params, "c0", 2.0), c1 = pget(params, "c1", 0.5), w = pget(params, "w", 1.0);
    Profile pr{[](double v) { return v; }, [](double) { return 1.0; }, [](double) { return 0.0; },
               [=](double v) { return c0 + c1 * std::sin(w * v); },
               [=](double v) { return c1 * w * std::cos(w * v); },
               [=](double v) { return -c1 * w * w * std::sin(w * v); }};
    for (std::int64_t i = 0; i < N; ++i) L.row(i) = revolution_laplace(pr, at(0, i), at(1, i));
  } else if (kind == "revolution_laplace_in_plane") {
    double a = pget(params, "a", 1.0);
    Profile pr{[a](double t) { return std::log(a * t + std::sqrt(a * a * t * t - 1)) / a; },
               [a](double t) { return 1.0 / std::sqrt(a * a * t * t - 1); },
               [a](double t) { return -a * a * t * std::pow(a * a * t * t - 1, -1.5); },
               [](double t) { return t; }, [](double) { return 1.0; }, [](double) { return 0.0; }};
    for (std::int64_t i = 0; i < N; ++i) L.row(i) = revolution_laplace(pr, at(0, i), at(1, i));
  } else if (kind == "sphere") {
    double r = pget(params, "r", 1.0);
    for (std::int64_t i = 0; i < N; ++i) L.row(i) = (2.0 / (r * r)) * S.points.row(i);
  } else {
    throw Error(ErrorCode::UnknownGenerator, "no closed-form Laplace for " + kind);
  }

  ClosedFormLaplace out;
  GeometryFields G = induced_metric(S, tol);
  out.result = laplace_map(S, G, tol);

  // agreement between the analytic and FD maps, relative to the analytic scale
  auto mask = verdict_mask(S.grid, 2, G.trim);
  double scale = 0, dev = 0;
  for (std::int64_t i = 0; i < N; ++i)
    if (mask[i]) scale = std::max(scale, L.row(i).norm());
  for (std::int64_t i = 0; i < N; ++i)
    if (mask[i]) dev = std::max(dev, (L.row(i) - out.result.L.points.row(i)).norm());
  out.fd_agreement_rel = scale > 0 ? dev / scale : dev / std::max(S.scale(), 1.0);

  // the closed form is authoritative for the returned points
  out.result.L.points = L;
  for (int a = 0; a < S.n(); ++a)
    out.result.dL[a] = fd::derivative(S.grid, L, a, 1, tol.fd_order);
  const int n = S.n();
  for (std::int64_t i = 0; i < N; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        out.result.g_L(i, a * n + b) = out.result.dL[a].row(i).dot(out.result.dL[b].row(i));
  return out;
}

}  // namespace lapgeo
