#include "lapgeo/generators.hpp"

#include <cmath>
#include <numbers>

#include "lapgeo/errors.hpp"

namespace lapgeo {

namespace {

constexpr double pi = std::numbers::pi;

double get(const Params& p, const Params& defaults, const std::string& key) {
  if (auto it = p.find(key); it != p.end()) return it->second;
  if (auto it = defaults.find(key); it != defaults.end()) return it->second;
  throw Error(ErrorCode::ParamOutOfRange, "missing parameter " + key);
}

SampledImmersion make_curve(const Axis& ax, int m, const std::string& label,
                            const std::function<Eigen::VectorXd(double)>& f) {
  SampledImmersion S;
  S.grid = Grid({ax});
  S.ambient_dim = m;
  S.label = label;
  S.points.resize(ax.samples, m);
  for (int i = 0; i < ax.samples; ++i) S.points.row(i) = f(ax.coord(i));
  return S;
}

SampledImmersion make_surface(const Axis& a0, const Axis& a1, int m, const std::string& label,
                              const std::function<Eigen::VectorXd(double, double)>& f) {
  SampledImmersion S;
  S.grid = Grid({a0, a1});
  S.ambient_dim = m;
  S.label = label;
  S.points.resize(S.grid.total(), m);
  for (int i = 0; i < a0.samples; ++i)
    for (int j = 0; j < a1.samples; ++j) S.points.row(S.grid.flat(i, j)) = f(a0.coord(i), a1.coord(j));
  return S;
}

Eigen::VectorXd vec2(double a, double b) { return Eigen::Vector2d(a, b); }
Eigen::VectorXd vec3(double a, double b, double c) { return Eigen::Vector3d(a, b, c); }

int count_or(const std::vector<int>& counts, size_t i, int dflt) {
  if (i < counts.size() && counts[i] > 0) return counts[i];
  return dflt;
}

// fixed-substep RK4 over a state vector
template <typename F>
Eigen::VectorXd rk4_step(const F& f, double t, const Eigen::VectorXd& y, double h) {
  Eigen::VectorXd k1 = f(t, y);
  Eigen::VectorXd k2 = f(t + h / 2, y + h / 2 * k1);
  Eigen::VectorXd k3 = f(t + h / 2, y + h / 2 * k2);
  Eigen::VectorXd k4 = f(t + h, y + h * k3);
  return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
}

template <typename F>
std::vector<Eigen::VectorXd> rk4_path(const F& f, double t0, const Eigen::VectorXd& y0, double h,
                                      int nodes, int substeps, const std::function<bool(const Eigen::VectorXd&)>& bad) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(nodes);
  Eigen::VectorXd y = y0;
  out.push_back(y);
  for (int i = 1; i < nodes; ++i) {
    double t = t0 + (i - 1) * h;
    double hs = h / substeps;
    for (int s = 0; s < substeps; ++s) y = rk4_step(f, t + s * hs, y, hs);
    if (!y.allFinite() || (bad && bad(y))) break;
    out.push_back(y);
  }
  return out;
}

}  // namespace

SampledImmersion curve_from_curvature(const std::function<double(double)>& kappa, double theta0,
                                      double x0, double y0, double length, int samples) {
  // state (theta, x, y): theta' = kappa, gamma' = (cos theta, sin theta)
  auto f = [&](double s, const Eigen::VectorXd& y) {
    Eigen::VectorXd out(3);
    out << kappa(s), std::cos(y[0]), std::sin(y[0]);
    return out;
  };
  double h = length / (samples - 1);
  int substeps = std::max(1, (int)std::lround(h / 1e-3));
  Eigen::VectorXd y0v(3);
  y0v << theta0, x0, y0;
  auto path = rk4_path(f, 0.0, y0v, h, samples, substeps, nullptr);
  if ((int)path.size() != samples) throw Error(ErrorCode::BlowUp, "curvature integration failed");

  Axis ax{samples, 0.0, length, false};
  SampledImmersion S;
  S.grid = Grid({ax});
  S.ambient_dim = 2;
  S.label = "curve_from_curvature";
  S.points.resize(samples, 2);
  for (int i = 0; i < samples; ++i) S.points.row(i) = vec2(path[i][1], path[i][2]);
  return S;
}

OdeCurveResult solve_curvature_ode(const std::string& kind, double k0, double k0p, double length,
                                   int samples, const Params& params) {
  double rk_step = params.count("step") ? params.at("step") : 1e-3;
  std::function<double(double, double)> kpp;
  if (kind == "harmonic_lt") {
    kpp = [](double k, double) { return -2 * k * k * k; };
  } else if (kind == "laplace_line") {
    if (k0 <= 0) throw Error(ErrorCode::ParamOutOfRange, "laplace_line needs k0 > 0");
    kpp = [](double k, double kp) { return (std::pow(k, 4) + 3 * kp * kp) / k; };
  } else if (kind == "lg_homothetic") {
    double c = get(params, {{"c", 2.0}}, "c");
    kpp = [c](double k, double) { return c * c * k - 2 * k * k * k; };
  } else {
    throw Error(ErrorCode::UnknownGenerator, "curvature ode kind " + kind);
  }

  // state: (kappa, kappa', theta, x, y)
  auto f = [&](double, const Eigen::VectorXd& y) {
    Eigen::VectorXd d(5);
    d << y[1], kpp(y[0], y[1]), y[0], std::cos(y[2]), std::sin(y[2]);
    return d;
  };
  double h = length / (samples - 1);
  int substeps = std::max(1, (int)std::lround(h / rk_step));
  double kcap = 1.0 / (h / substeps);
  auto guard = [kcap](const Eigen::VectorXd& y) { return std::abs(y[0]) > kcap; };

  Eigen::VectorXd y0(5);
  y0 << k0, k0p, 0.0, 0.0, 0.0;
  auto path = rk4_path(f, 0.0, y0, h, samples, substeps, guard);

  OdeCurveResult R;
  R.truncated = (int)path.size() < samples;
  int n = (int)path.size();
  if (n < 16) throw Error(ErrorCode::BlowUp, "curvature ode blew up almost immediately");

  // Richardson check at half step
  auto path2 = rk4_path(f, 0.0, y0, h, n, 2 * substeps, guard);
  R.richardson = path2.size() == path.size()
                     ? (path.back().tail(2) - path2.back().tail(2)).norm()
                     : 1e300;

  Axis ax{n, 0.0, (n - 1) * h, false};
  R.curve.grid = Grid({ax});
  R.curve.ambient_dim = 2;
  R.curve.label = "curvature_ode:" + kind;
  R.curve.points.resize(n, 2);
  R.kappa.resize(n);
  for (int i = 0; i < n; ++i) {
    R.curve.points.row(i) = vec2(path[i][3], path[i][4]);
    R.kappa[i] = path[i][0];
  }
  return R;
}

OdeSurfaceResult solve_profile_ode(const std::string& kind, double f0, double f0p, double f0pp,
                                   double t1, int nt, int ntheta, const Params& params) {
  if (f0 <= 0) throw Error(ErrorCode::ParamOutOfRange, "profile needs f0 > 0");
  double rk_step = params.count("step") ? params.at("step") : 1e-3;
  std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> rhs;
  int dim = 3;

  if (kind == "harmonic_mc") {
    double c = get(params, {{"c", 0.3}}, "c");
    rhs = [c](double, const Eigen::VectorXd& y) {
      double f = y[0], fp = y[1], fpp = y[2];
      double w = 1 + fp * fp;
      double f3 = (3 * f * f * fp * fpp * fpp - w * (fp * w + f * fp * fpp) - c * f * w * w * w) /
                  (f * f * w);
      return Eigen::Vector3d(fp, fpp, f3).eval();
    };
  } else if (kind == "conformal_lt") {
    rhs = [](double, const Eigen::VectorXd& y) {
      double f = y[0], fp = y[1], fpp = y[2];
      double w = 1 + fp * fp;
      double sq = std::sqrt(w);
      double N = w - f * fpp, D = f * w * sq;
      double m = N / D;
      double Dp = fp * w * sq + 3 * f * fp * fpp * sq;
      double P = -f / D;  // coefficient of f''' in m'
      double Q = (fp * fpp * D - N * Dp) / (D * D);
      double km = -fpp / (w * sq), kp = 1 / (f * sq);
      double R = m * m * (kp * kp - km * km) * w;
      if (R < 0) throw Error(ErrorCode::DiscriminantNegative, "conformal_lt seed leaves the admissible set");
      double f3 = (-Q + (P < 0 ? -1 : 1) * std::sqrt(R)) / P;
      return Eigen::Vector3d(fp, fpp, f3).eval();
    };
  } else if (kind == "laplace_in_cylinder") {
    double c = get(params, {{"c", 1.0}}, "c");
    dim = 2;
    rhs = [c](double, const Eigen::VectorXd& y) {
      double f = y[0], fp = y[1];
      double w = 1 + fp * fp;
      return Eigen::Vector2d(fp, w * (1 - c * f * w) / f).eval();
    };
  } else if (kind == "laplace_in_sphere") {
    double r = get(params, {{"r", 0.5}}, "r");
    dim = 2;
    rhs = [r](double, const Eigen::VectorXd& y) {
      double f = y[0], fp = y[1];
      double w = 1 + fp * fp;
      return Eigen::Vector2d(fp, w * (1 + 2 * r * f * fp) / f).eval();
    };
  } else {
    throw Error(ErrorCode::UnknownGenerator, "profile ode kind " + kind);
  }

  double h = t1 / (nt - 1);
  int substeps = std::max(1, (int)std::lround(h / rk_step));
  auto guard = [](const Eigen::VectorXd& y) { return y[0] <= 1e-6 || std::abs(y[1]) > 1e3; };

  Eigen::VectorXd y0(dim);
  if (dim == 3)
    y0 << f0, f0p, f0pp;
  else
    y0 << f0, f0p;

  auto path = rk4_path(rhs, 0.0, y0, h, nt, substeps, guard);
  OdeSurfaceResult R;
  R.truncated = (int)path.size() < nt;
  int n = (int)path.size();
  if (n < 16) throw Error(ErrorCode::BlowUp, "profile ode blew up almost immediately");
  auto path2 = rk4_path(rhs, 0.0, y0, h, n, 2 * substeps, guard);
  R.richardson = path2.size() == path.size() ? std::abs(path.back()[0] - path2.back()[0]) : 1e300;

  Axis at{n, 0.0, (n - 1) * h, false};
  Axis ath{ntheta, 0.0, 2 * pi, true};
  R.surface.grid = Grid({at, ath});
  R.surface.ambient_dim = 3;
  R.surface.label = "profile_ode:" + kind;
  R.surface.points.resize(R.surface.grid.total(), 3);
  for (int i = 0; i < n; ++i) {
    double t = at.coord(i), fv = path[i][0];
    for (int j = 0; j < ntheta; ++j) {
      double th = ath.coord(j);
      R.surface.points.row(R.surface.grid.flat(i, j)) = vec3(t, fv * std::cos(th), fv * std::sin(th));
    }
  }
  return R;
}

SampledImmersion curve_from_curvatures_3d(const std::function<double(double)>& k1,
                                          const std::function<double(double)>& k2, double s0,
                                          double length, int samples) {
  // state: (x, b1, b2, b3) in R^12
  auto f = [&](double s, const Eigen::VectorXd& y) {
    Eigen::VectorXd d(12);
    Eigen::Vector3d b1 = y.segment<3>(3), b2 = y.segment<3>(6), b3 = y.segment<3>(9);
    double ka = k1(s), kb = k2(s);
    d.segment<3>(0) = b1;
    d.segment<3>(3) = ka * b2;
    d.segment<3>(6) = -ka * b1 + kb * b3;
    d.segment<3>(9) = -kb * b2;
    return d;
  };
  double h = length / (samples - 1);
  int substeps = std::max(1, (int)std::lround(h / 1e-3));
  Eigen::VectorXd y0 = Eigen::VectorXd::Zero(12);
  y0.segment<3>(3) = Eigen::Vector3d::UnitX();
  y0.segment<3>(6) = Eigen::Vector3d::UnitY();
  y0.segment<3>(9) = Eigen::Vector3d::UnitZ();
  auto path = rk4_path(f, s0, y0, h, samples, substeps, nullptr);
  if ((int)path.size() != samples) throw Error(ErrorCode::BlowUp, "frame integration failed");

  Axis ax{samples, s0, s0 + length, false};
  SampledImmersion S;
  S.grid = Grid({ax});
  S.ambient_dim = 3;
  S.label = "curve_from_curvatures_3d";
  S.points.resize(samples, 3);
  for (int i = 0; i < samples; ++i) S.points.row(i) = path[i].segment<3>(0);
  return S;
}

Eigen::MatrixXd spherical_curve_from_curvature(const std::function<double(double)>& kbar,
                                               double length, int samples) {
  // state: (beta, T) on the unit sphere; n = beta x T
  auto f = [&](double s, const Eigen::VectorXd& y) {
    Eigen::Vector3d b = y.segment<3>(0), T = y.segment<3>(3);
    Eigen::Vector3d nv = b.cross(T);
    Eigen::VectorXd d(6);
    d.segment<3>(0) = T;
    d.segment<3>(3) = -b + kbar(s) * nv;
    return d;
  };
  double h = length / (samples - 1);
  int substeps = std::max(1, (int)std::lround(h / 1e-3));
  Eigen::VectorXd y0(6);
  y0 << 1, 0, 0, 0, 1, 0;
  auto path = rk4_path(f, 0.0, y0, h, samples, substeps, nullptr);
  if ((int)path.size() != samples) throw Error(ErrorCode::BlowUp, "spherical frame integration failed");
  Eigen::MatrixXd out(samples, 3);
  for (int i = 0; i < samples; ++i) out.row(i) = path[i].segment<3>(0);
  return out;
}

const std::vector<GeneratorInfo>& catalogue() {
  static const std::vector<GeneratorInfo> cat = {
      {"line", 1, 2, {{"len", 2.0}}, "straight segment"},
      {"circle", 1, 2, {{"r", 1.0}}, "round circle, arclength parametrized"},
      {"ellipse", 1, 2, {{"a", 2.0}, {"b", 1.0}}, "ellipse, angle parametrized (not unit speed)"},
      {"helix", 1, 3, {{"a", 1.0}, {"b", 0.5}, {"turns", 2.0}}, "circular helix, arclength parametrized"},
      {"w_curve", 1, 4, {{"a1", 0.8}, {"p1", 1.0}, {"a2", 0.3}, {"p2", 2.0}},
       "closed curve with constant Frenet curvatures (two orthogonal circles)"},
      {"two_circles", 1, 4, {{"a1", 0.8}, {"p1", 1.0}, {"a2", 0.3}, {"p2", 2.0}},
       "diagonal immersion of two circles"},
      {"gamma_eps", 1, 3, {{"eps", 6.0}}, "closed two-frequency space curve"},
      {"cornu_spiral", 1, 2, {{"a", 1.0}, {"b", 0.0}, {"s0", 0.5}, {"s1", 3.0}},
       "clothoid: curvature affine in arclength"},
      {"homothetic_plane_curve", 1, 2, {{"a", 1.0}, {"c", 2.0}, {"len", 1.0}},
       "plane curve with k'^2 + k^4 constant"},
      {"laplace_in_circle_curve", 1, 2, {{"c", 1.0}, {"s0", -1.0}, {"s1", 1.0}},
       "plane curve whose Laplace image is a circle"},
      {"harmonic_lt_curve", 1, 2, {{"k0", 1.0}, {"k0p", 0.0}, {"len", 1.0}},
       "plane curve from k'' = -2k^3"},
      {"laplace_line_curve", 1, 2, {{"k0", 1.0}, {"k0p", 0.0}, {"len", 0.85}},
       "plane curve whose Laplace image is collinear"},
      {"lg_homothetic_curve", 1, 2, {{"c", 2.0}, {"k0", 1.0}, {"len", 1.6}},
       "plane curve from k'^2 = c^2 k^2 - k^4"},
      {"line_image_helix", 1, 3, {{"c", 0.5}, {"len", 0.7}},
       "generalized helix (k2 = c k1) with collinear Laplace image"},
      {"plane", 2, 3, {{"len", 2.0}}, "flat patch"},
      {"sphere", 2, 3, {{"r", 1.0}, {"cap", 0.35}}, "round sphere chart away from the poles"},
      {"cylinder", 2, 3, {{"a", 1.0}, {"len", 2.0}}, "circular cylinder"},
      {"cornu_cylinder", 2, 3, {{"a", 1.0}, {"b", 0.0}, {"s0", 0.5}, {"s1", 3.0}, {"len", 2.0}},
       "right cylinder over a clothoid"},
      {"lg_cylinder", 2, 3, {{"c", 2.0}, {"k0", 1.0}, {"klen", 1.6}, {"len", 2.0}},
       "right cylinder over the lg_homothetic_curve"},
      {"torus_E4", 2, 4, {{"a", 0.8}, {"b", 0.6}}, "product of two circles, flat coordinates"},
      {"clifford_torus", 2, 4, {}, "product of two equal circles inside the unit 3-sphere"},
      {"flat_torus_E6", 2, 6, {{"a", 0.8}}, "flat torus immersed with two frequencies"},
      {"torus_revolution", 2, 3, {{"R", 2.0}, {"r", 0.5}}, "torus of revolution"},
      {"cone", 2, 3, {{"c", 0.8}, {"t0", 0.25}, {"t1", 1.25}},
       "cone over a circle of the unit sphere, vertex at the origin"},
      {"tangential_developable", 2, 3,
       {{"a", 1.0}, {"b", 0.5}, {"t0", 0.25}, {"t1", 1.25}, {"turns", 1.5}},
       "tangent developable of a circular helix"},
      {"helicoid", 2, 3, {{"lambda", 1.0}, {"c3", 1.0}, {"tw", 0.5}}, "ruled minimal surface"},
      {"catenoid", 2, 3, {{"len", 1.0}}, "revolution surface of the catenary (minimal)"},
      {"revolution_generic", 2, 3, {{"c0", 2.0}, {"c1", 0.5}, {"w", 1.0}, {"len", 1.0}},
       "revolution surface with a generic analytic profile"},
      {"revolution_laplace_in_plane", 2, 3, {{"a", 1.0}, {"t0", 1.2}, {"t1", 2.2}},
       "revolution surface whose Laplace image sits in a plane"},
      {"revolution_laplace_in_cylinder", 2, 3, {{"c", 1.0}, {"f0", 0.8}, {"f0p", 0.3}, {"t1", 1.0}},
       "revolution surface whose Laplace image sits in a cylinder"},
      {"harmonic_cone", 2, 3, {{"c1", 1.0}, {"c2", 1.0}, {"t0", 0.25}, {"t1", 1.25}, {"slen", 2.2}},
       "cone over a spherical curve with sinusoidal geodesic curvature"},
      {"unduloid", 2, 3, {{"H", 1.0}, {"f0", 0.6}, {"len", 1.5}},
       "revolution surface of constant mean curvature"},
      {"surface_E5", 2, 5, {{"a", 1.0}, {"b", 1.0}}, "homothetic-transform surface, non-spherical, constant alpha"},
      {"helix_product_E6", 2, 6, {{"a", 1.0}, {"c", 1.0}}, "product of two circular helices"},
      {"surface_E6", 2, 6, {{"a", 1.0}, {"c", 1.0}}, "product of two circular helices"},
      {"conformal_lt_surface", 2, 3, {{"f0", 1.0}, {"f0p", 0.5}, {"f0pp", 0.3}, {"t1", 0.8}},
       "revolution surface with conformal, non-homothetic Laplace transformation"},
      {"harmonic_mc_surface", 2, 3, {{"c", 0.3}, {"f0", 1.0}, {"f0p", 0.0}, {"f0pp", 0.2}, {"t1", 1.0}},
       "revolution surface with harmonic mean curvature"},
      {"laplace_in_sphere_surface", 2, 3, {{"r", 0.5}, {"f0", 1.0}, {"f0p", 0.3}, {"t1", 0.4}},
       "revolution surface whose Laplace image sits on a sphere through the origin"},
  };
  return cat;
}

const std::vector<std::pair<std::string, std::string>>& traceability() {
  static const std::vector<std::pair<std::string, std::string>> rows = {
      {"line", "curve_laplace_degenerate"},
      {"circle", "one_type"},
      {"helix", "dL_constant"},
      {"w_curve", "dL_constant"},
      {"gamma_eps", "two_type_order_1_3"},
      {"homothetic_plane_curve", "homothety_functional_c2"},
      {"harmonic_lt_curve", "harmonic_lt"},
      {"laplace_line_curve", "laplace_image_line"},
      {"line_image_helix", "laplace_image_line"},
      {"laplace_in_circle_curve", "laplace_image_circle"},
      {"lg_homothetic_curve", "lg_curve_homothetic"},
      {"cornu_spiral", "not_harmonic_lt"},
      {"sphere", "classify_homothetic"},
      {"helicoid", "laplace_degenerate"},
      {"catenoid", "laplace_degenerate"},
      {"cylinder", "laplace_image_circle"},
      {"cone", "laplace_image_cone_origin"},
      {"tangential_developable", "laplace_image_cone_origin"},
      {"torus_revolution", "classify_none"},
      {"cornu_cylinder", "harmonic_mc"},
      {"harmonic_cone", "harmonic_mc"},
      {"unduloid", "lg_homothetic"},
      {"lg_cylinder", "lg_homothetic"},
      {"clifford_torus", "classify_homothetic_c2"},
      {"torus_E4", "two_type_invariants"},
      {"surface_E5", "homothetic_constant_alpha_nonspherical"},
      {"helix_product_E6", "homothetic_pseudo_umbilical"},
      {"surface_E6", "homothetic_image_minimal_in_sphere"},
      {"conformal_lt_surface", "conformal_not_homothetic"},
      {"harmonic_mc_surface", "harmonic_mc"},
      {"laplace_in_sphere_surface", "laplace_image_sphere_origin"},
      {"revolution_laplace_in_plane", "laplace_image_plane"},
      {"revolution_laplace_in_cylinder", "laplace_image_cylinder"},
  };
  return rows;
}

SampledImmersion generate(const std::string& name, const Params& params,
                          const std::vector<int>& counts) {
  const GeneratorInfo* info = nullptr;
  for (const auto& g : catalogue())
    if (g.name == name) { info = &g; break; }
  if (!info) throw Error(ErrorCode::UnknownGenerator, name);
  const Params& d = info->defaults;
  auto P = [&](const std::string& k) { return get(params, d, k); };

  auto label_of = [&]() {
    std::string s = name;
    for (const auto& [k, v] : d) {
      char buf[64];
      std::snprintf(buf, sizeof buf, " %s=%.6g", k.c_str(), params.count(k) ? params.at(k) : v);
      s += buf;
    }
    return s;
  };

  if (name == "line") {
    double len = P("len");
    return make_curve({count_or(counts, 0, 256), 0.0, len, false}, 2, label_of(),
                      [](double s) { return vec2(s / std::numbers::sqrt2, s / std::numbers::sqrt2); });
  }
  if (name == "circle") {
    double r = P("r");
    if (r <= 0) throw Error(ErrorCode::ParamOutOfRange, "r > 0");
    return make_curve({count_or(counts, 0, 256), 0.0, 2 * pi * r, true}, 2, label_of(),
                      [r](double s) { return vec2(r * std::cos(s / r), r * std::sin(s / r)); });
  }
  if (name == "ellipse") {
    double a = P("a"), b = P("b");
    return make_curve({count_or(counts, 0, 512), 0.0, 2 * pi, true}, 2, label_of(),
                      [a, b](double u) { return vec2(a * std::cos(u), b * std::sin(u)); });
  }
  if (name == "helix") {
    double a = P("a"), b = P("b"), c = std::hypot(a, b);
    double len = P("turns") * 2 * pi * c;
    return make_curve({count_or(counts, 0, 1024), 0.0, len, false}, 3, label_of(), [a, b, c](double s) {
      return vec3(a * std::cos(s / c), a * std::sin(s / c), b * s / c);
    });
  }
  if (name == "w_curve" || name == "two_circles") {
    double a1 = P("a1"), p1 = P("p1"), a2 = P("a2"), p2 = P("p2");
    double sp = std::sqrt(a1 * a1 * p1 * p1 + a2 * a2 * p2 * p2);
    if (std::abs(sp - 1.0) > 1e-9)
      throw Error(ErrorCode::ParamOutOfRange, "need a1^2 p1^2 + a2^2 p2^2 = 1 for unit speed");
    return make_curve({count_or(counts, 0, 512), 0.0, 2 * pi, true}, 4, label_of(), [=](double s) {
      Eigen::VectorXd v(4);
      v << a1 * std::cos(p1 * s), a1 * std::sin(p1 * s), a2 * std::cos(p2 * s), a2 * std::sin(p2 * s);
      return v;
    });
  }
  if (name == "gamma_eps") {
    double eps = P("eps");
    double k = 12.0 / (eps * eps + 36.0);
    return make_curve({count_or(counts, 0, 512), 0.0, 2 * pi, true}, 3, label_of(), [eps, k](double s) {
      return vec3(k * eps * std::sin(s),
                  k * (-(eps * eps / 12) * std::cos(s) + std::cos(3 * s)),
                  k * (-(eps * eps / 12) * std::sin(s) + std::sin(3 * s)));
    });
  }
  if (name == "cornu_spiral") {
    double a = P("a"), b = P("b"), s0 = P("s0"), s1 = P("s1");
    int N = count_or(counts, 0, 1024);
    // kappa(s) = a s + b with s the arclength measured from s0
    SampledImmersion S = curve_from_curvature(
        [a, b, s0](double s) { return a * (s + s0) + b; }, 0.0, 0.0, 0.0, s1 - s0, N);
    S.grid.axes[0] = {N, s0, s1, false};
    S.label = label_of();
    return S;
  }
  if (name == "homothetic_plane_curve") {
    double a = P("a"), c = P("c"), len = P("len");
    if (c <= 0 || a < 0) throw Error(ErrorCode::ParamOutOfRange, "need c > 0, a >= 0");
    double k0 = std::pow(c * c / (1 + c * c * a), 0.25);
    double k0p = std::sqrt(std::max(c * c - std::pow(k0, 4), 0.0));
    auto R = solve_curvature_ode("harmonic_lt", k0, k0p, len, count_or(counts, 0, 256));
    R.curve.label = label_of();
    return R.curve;
  }
  if (name == "laplace_in_circle_curve") {
    double c = P("c"), s0 = P("s0"), s1 = P("s1");
    if (c <= 0) throw Error(ErrorCode::ParamOutOfRange, "c > 0");
    return make_curve({count_or(counts, 0, 1024), s0, s1, false}, 2, label_of(), [c](double s) {
      double e = c * std::exp(2 * s);
      return vec2(s - 0.5 * std::log1p(e * e), std::atan(e));
    });
  }
  if (name == "harmonic_lt_curve") {
    auto R = solve_curvature_ode("harmonic_lt", P("k0"), P("k0p"), P("len"), count_or(counts, 0, 256));
    R.curve.label = label_of();
    return R.curve;
  }
  if (name == "laplace_line_curve") {
    auto R = solve_curvature_ode("laplace_line", P("k0"), P("k0p"), P("len"), count_or(counts, 0, 256));
    R.curve.label = label_of();
    return R.curve;
  }
  if (name == "lg_homothetic_curve") {
    double c = P("c"), k0 = P("k0");
    if (c * c * k0 * k0 < std::pow(k0, 4))
      throw Error(ErrorCode::ParamOutOfRange, "need c^2 k0^2 >= k0^4");
    double k0p = std::sqrt(c * c * k0 * k0 - std::pow(k0, 4));
    auto R = solve_curvature_ode("lg_homothetic", k0, k0p, P("len"), count_or(counts, 0, 512), {{"c", c}});
    R.curve.label = label_of();
    return R.curve;
  }
  if (name == "line_image_helix") {
    double c = P("c"), len = P("len");
    double q = 1 + c * c;
    auto k1 = [q](double s) { return 1.0 / std::sqrt(1.0 - q * s * s); };
    auto k2 = [c, k1](double s) { return c * k1(s); };
    SampledImmersion S = curve_from_curvatures_3d(k1, k2, -len / 2, len, count_or(counts, 0, 256));
    S.label = label_of();
    return S;
  }
  if (name == "plane") {
    double len = P("len");
    int n0 = count_or(counts, 0, 64), n1 = count_or(counts, 1, 64);
    return make_surface({n0, -len / 2, len / 2, false}, {n1, -len / 2, len / 2, false}, 3, label_of(),
                        [](double u, double v) { return vec3(u, v, 0.0); });
  }
  if (name == "sphere") {
    double r = P("r"), cap = P("cap");
    if (r <= 0 || cap <= 0 || cap >= pi / 2) throw Error(ErrorCode::ParamOutOfRange, "bad sphere params");
    int n0 = count_or(counts, 0, 96), n1 = count_or(counts, 1, 192);
    return make_surface({n0, cap, pi - cap, false}, {n1, 0.0, 2 * pi, true}, 3, label_of(),
                        [r](double th, double ph) {
                          return vec3(r * std::sin(th) * std::cos(ph), r * std::sin(th) * std::sin(ph),
                                      r * std::cos(th));
                        });
  }
  if (name == "cylinder") {
    double a = P("a"), len = P("len");
    int n0 = count_or(counts, 0, 128), n1 = count_or(counts, 1, 48);
    return make_surface({n0, 0.0, 2 * pi * a, true}, {n1, -len / 2, len / 2, false}, 3, label_of(),
                        [a](double s, double t) { return vec3(t, a * std::cos(s / a), a * std::sin(s / a)); });
  }
  if (name == "cornu_cylinder" || name == "lg_cylinder") {
    SampledImmersion base;
    if (name == "cornu_cylinder")
      base = generate("cornu_spiral", {{"a", P("a")}, {"b", P("b")}, {"s0", P("s0")}, {"s1", P("s1")}},
                      {count_or(counts, 0, 256)});
    else
      base = generate("lg_homothetic_curve", {{"c", P("c")}, {"k0", P("k0")}, {"len", P("klen")}},
                      {count_or(counts, 0, 256)});
    double len = P("len");
    int n1 = count_or(counts, 1, 48);
    SampledImmersion S;
    S.grid = Grid({base.grid.axes[0], {n1, -len / 2, len / 2, false}});
    S.ambient_dim = 3;
    S.label = label_of();
    S.points.resize(S.grid.total(), 3);
    for (int i = 0; i < base.grid.axes[0].samples; ++i)
      for (int j = 0; j < n1; ++j)
        S.points.row(S.grid.flat(i, j)) =
            vec3(base.points(i, 0), base.points(i, 1), S.grid.axes[1].coord(j));
    return S;
  }
  if (name == "torus_E4" || name == "clifford_torus") {
    double a = name == "clifford_torus" ? 1.0 / std::numbers::sqrt2 : P("a");
    double b = name == "clifford_torus" ? 1.0 / std::numbers::sqrt2 : P("b");
    int n0 = count_or(counts, 0, 96), n1 = count_or(counts, 1, 96);
    return make_surface({n0, 0.0, 2 * pi * a, true}, {n1, 0.0, 2 * pi * b, true}, 4, label_of(),
                        [a, b](double s, double t) {
                          Eigen::VectorXd v(4);
                          v << a * std::cos(s / a), a * std::sin(s / a), b * std::cos(t / b),
                              b * std::sin(t / b);
                          return v;
                        });
  }
  if (name == "flat_torus_E6") {
    double a = P("a");
    if (a <= 0 || a >= 1) throw Error(ErrorCode::ParamOutOfRange, "need 0 < a < 1");
    double b = std::sqrt(1 - a * a);
    int n0 = count_or(counts, 0, 96), n1 = count_or(counts, 1, 96);
    return make_surface({n0, 0.0, 2 * pi, true}, {n1, 0.0, 2 * pi * b, true}, 6, label_of(),
                        [a, b](double s, double t) {
                          Eigen::VectorXd v(6);
                          v << a * std::sin(s), b * std::sin(s) * std::sin(t / b),
                              b * std::sin(s) * std::cos(t / b), a * std::cos(s),
                              b * std::cos(s) * std::sin(t / b), b * std::cos(s) * std::cos(t / b);
                          return v;
                        });
  }
  if (name == "torus_revolution") {
    double R = P("R"), r = P("r");
    if (r <= 0 || R <= r) throw Error(ErrorCode::ParamOutOfRange, "need R > r > 0");
    int n0 = count_or(counts, 0, 96), n1 = count_or(counts, 1, 96);
    return make_surface({n0, 0.0, 2 * pi, true}, {n1, 0.0, 2 * pi, true}, 3, label_of(),
                        [R, r](double v, double u) {
                          return vec3(r * std::sin(v), (R + r * std::cos(v)) * std::cos(u),
                                      (R + r * std::cos(v)) * std::sin(u));
                        });
  }
  if (name == "cone") {
    double c = P("c"), t0 = P("t0"), t1 = P("t1");
    if (c <= 0 || c >= 1) throw Error(ErrorCode::ParamOutOfRange, "need 0 < c < 1");
    if (t0 <= 0) throw Error(ErrorCode::SingularDomain, "cone domain touches the vertex");
    double z = std::sqrt(1 - c * c);
    int n0 = count_or(counts, 0, 48), n1 = count_or(counts, 1, 128);
    return make_surface({n0, t0, t1, false}, {n1, 0.0, 2 * pi * c, true}, 3, label_of(),
                        [c, z](double t, double s) {
                          return vec3(t * c * std::cos(s / c), t * c * std::sin(s / c), t * z);
                        });
  }
  if (name == "tangential_developable") {
    double a = P("a"), b = P("b"), t0 = P("t0"), t1 = P("t1");
    double cc = std::hypot(a, b);
    if (t0 <= 0) throw Error(ErrorCode::SingularDomain, "developable domain touches the edge of regression");
    double slen = P("turns") * 2 * pi * cc;
    int n0 = count_or(counts, 0, 192), n1 = count_or(counts, 1, 48);
    return make_surface({n0, 0.0, slen, false}, {n1, t0, t1, false}, 3, label_of(),
                        [a, b, cc](double s, double t) {
                          double C = std::cos(s / cc), Sn = std::sin(s / cc);
                          Eigen::Vector3d beta(a * C, a * Sn, b * s / cc);
                          Eigen::Vector3d dbeta(-a * Sn / cc, a * C / cc, b / cc);
                          return Eigen::VectorXd(beta + t * dbeta);
                        });
  }
  if (name == "helicoid") {
    double lam = P("lambda"), c3 = P("c3"), tw = P("tw");
    int n0 = count_or(counts, 0, 96), n1 = count_or(counts, 1, 48);
    return make_surface({n0, 0.0, 2 * pi, false}, {n1, -tw, tw, false}, 3, label_of(),
                        [lam, c3](double s, double t) {
                          return vec3((lam + t) * std::cos(s), (lam + t) * std::sin(s), c3 * s);
                        });
  }
  if (name == "catenoid") {
    double len = P("len");
    int n0 = count_or(counts, 0, 96), n1 = count_or(counts, 1, 96);
    return make_surface({n0, -len, len, false}, {n1, 0.0, 2 * pi, true}, 3, label_of(),
                        [](double t, double th) {
                          return vec3(t, std::cosh(t) * std::cos(th), std::cosh(t) * std::sin(th));
                        });
  }
  if (name == "revolution_generic") {
    double c0 = P("c0"), c1 = P("c1"), w = P("w"), len = P("len");
    int n0 = count_or(counts, 0, 96), n1 = count_or(counts, 1, 96);
    return make_surface({n0, -len, len, false}, {n1, 0.0, 2 * pi, true}, 3, label_of(),
                        [c0, c1, w](double t, double th) {
                          double f = c0 + c1 * std::sin(w * t);
                          return vec3(t, f * std::cos(th), f * std::sin(th));
                        });
  }
  if (name == "revolution_laplace_in_plane") {
    double a = P("a"), t0 = P("t0"), t1 = P("t1");
    if (a <= 0 || t0 <= 1.0 / a) throw Error(ErrorCode::SingularDomain, "need t0 > 1/a");
    int n0 = count_or(counts, 0, 96), n1 = count_or(counts, 1, 96);
    return make_surface({n0, t0, t1, false}, {n1, 0.0, 2 * pi, true}, 3, label_of(),
                        [a](double t, double th) {
                          double u = std::log(a * t + std::sqrt(a * a * t * t - 1)) / a;
                          return vec3(u, t * std::cos(th), t * std::sin(th));
                        });
  }
  if (name == "revolution_laplace_in_cylinder") {
    auto R = solve_profile_ode("laplace_in_cylinder", P("f0"), P("f0p"), 0.0, P("t1"),
                               count_or(counts, 0, 96), count_or(counts, 1, 96), {{"c", P("c")}});
    R.surface.label = label_of();
    return R.surface;
  }
  if (name == "harmonic_cone") {
    double c1 = P("c1"), c2 = P("c2"), t0 = P("t0"), t1 = P("t1"), slen = P("slen");
    if (t0 <= 0) throw Error(ErrorCode::SingularDomain, "cone domain touches the vertex");
    int n0 = count_or(counts, 0, 48), n1 = count_or(counts, 1, 192);
    Eigen::MatrixXd beta = spherical_curve_from_curvature(
        [c1, c2](double s) { return c1 * std::cos(s) + c2 * std::sin(s); }, slen, n1);
    SampledImmersion S;
    S.grid = Grid({{n0, t0, t1, false}, {n1, 0.0, slen, false}});
    S.ambient_dim = 3;
    S.label = label_of();
    S.points.resize(S.grid.total(), 3);
    for (int i = 0; i < n0; ++i)
      for (int j = 0; j < n1; ++j)
        S.points.row(S.grid.flat(i, j)) = S.grid.axes[0].coord(i) * beta.row(j);
    return S;
  }
  if (name == "unduloid") {
    double H = P("H"), f0 = P("f0"), len = P("len");
    int n0 = count_or(counts, 0, 128), n1 = count_or(counts, 1, 96);
    // constant-mean-curvature profile: 1 + f'^2 - f f'' = 2H f (1+f'^2)^{3/2}
    auto rhs = [H](double, const Eigen::VectorXd& y) {
      double f = y[0], fp = y[1], w = 1 + fp * fp;
      return Eigen::Vector2d(fp, (w - 2 * H * f * std::pow(w, 1.5)) / f).eval();
    };
    double h = len / (n0 - 1);
    int substeps = std::max(1, (int)std::lround(h / 1e-3));
    Eigen::VectorXd y0(2);
    y0 << f0, 0.0;
    auto path = rk4_path(rhs, 0.0, y0, h, n0, substeps,
                         [](const Eigen::VectorXd& y) { return y[0] < 1e-3; });
    if ((int)path.size() != n0) throw Error(ErrorCode::BlowUp, "unduloid profile left the admissible band");
    SampledImmersion S;
    S.grid = Grid({{n0, 0.0, len, false}, {n1, 0.0, 2 * pi, true}});
    S.ambient_dim = 3;
    S.label = label_of();
    S.points.resize(S.grid.total(), 3);
    for (int i = 0; i < n0; ++i)
      for (int j = 0; j < n1; ++j) {
        double th = S.grid.axes[1].coord(j);
        S.points.row(S.grid.flat(i, j)) =
            vec3(S.grid.axes[0].coord(i), path[i][0] * std::cos(th), path[i][0] * std::sin(th));
      }
    return S;
  }
  if (name == "surface_E5") {
    double a = P("a"), b = P("b");
    if (b == 0) throw Error(ErrorCode::ParamOutOfRange, "b != 0");
    double k = std::pow(a * a + b * b * b * b, 0.75) / b;
    int n0 = count_or(counts, 0, 96), n1 = count_or(counts, 1, 96);
    return make_surface({n0, 0.0, 2 * pi, false}, {n1, 0.0, 2 * pi, true}, 5, label_of(),
                        [a, b, k](double u, double v) {
                          Eigen::VectorXd p(5);
                          p << a * u, b * b * std::cos(u), b * b * std::sin(u), k * std::cos(v),
                              k * std::sin(v);
                          return p;
                        });
  }
  if (name == "helix_product_E6" || name == "surface_E6") {
    double a = P("a"), c = P("c");
    int n0 = count_or(counts, 0, 96), n1 = count_or(counts, 1, 96);
    return make_surface({n0, 0.0, 2 * pi, false}, {n1, 0.0, 2 * pi, false}, 6, label_of(),
                        [a, c](double u, double v) {
                          Eigen::VectorXd p(6);
                          p << a * u, a * v, c * std::cos(u), c * std::sin(u), c * std::cos(v),
                              c * std::sin(v);
                          return p;
                        });
  }
  if (name == "conformal_lt_surface") {
    auto R = solve_profile_ode("conformal_lt", P("f0"), P("f0p"), P("f0pp"), P("t1"),
                               count_or(counts, 0, 192), count_or(counts, 1, 96));
    R.surface.label = label_of();
    return R.surface;
  }
  if (name == "harmonic_mc_surface") {
    auto R = solve_profile_ode("harmonic_mc", P("f0"), P("f0p"), P("f0pp"), P("t1"),
                               count_or(counts, 0, 192), count_or(counts, 1, 96), {{"c", P("c")}});
    R.surface.label = label_of();
    return R.surface;
  }
  if (name == "laplace_in_sphere_surface") {
    auto R = solve_profile_ode("laplace_in_sphere", P("f0"), P("f0p"), 0.0, P("t1"),
                               count_or(counts, 0, 192), count_or(counts, 1, 96), {{"r", P("r")}});
    R.surface.label = label_of();
    return R.surface;
  }
  throw Error(ErrorCode::UnknownGenerator, name);
}

}  // namespace lapgeo
