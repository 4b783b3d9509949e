#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lapgeo/frenet.hpp"
#include "lapgeo/generators.hpp"
#include "lapgeo/geometry.hpp"
#include "test_support.hpp"

using namespace lapgeo;
constexpr double pi = std::numbers::pi;

TEST_CASE("reparametrize_unit_speed") {
  SUBCASE("a unit-speed circle is a fixed point") {
    auto c = generate("circle", {}, {256});
    auto r = reparametrize_unit_speed(c);
    CHECK((r.points - c.points).cwiseAbs().maxCoeff() <= 1e-10);
  }
  SUBCASE("ellipse lands at unit speed with its length preserved") {
    auto e = generate("ellipse", {}, {1024});
    auto r = reparametrize_unit_speed(e);
    CHECK(max_speed_deviation(r) <= 1e-8);
    CHECK(r.grid.axes[0].periodic);
    // reference length by dense quadrature of the analytic speed
    double L = 0;
    int M = 400000;
    for (int i = 0; i < M; ++i) {
      double u = 2 * pi * (i + 0.5) / M;
      L += 2 * pi / M * std::hypot(2 * std::sin(u), std::cos(u));
    }
    CHECK(std::abs(r.grid.axes[0].extent() - L) <= 1e-8 * L);
  }
  SUBCASE("diagonal segment rescales to unit speed") {
    SampledImmersion s;
    s.grid = Grid({Axis{64, 0.0, 1.0, false}});
    s.ambient_dim = 2;
    s.points.resize(64, 2);
    for (int i = 0; i < 64; ++i) {
      double u = s.grid.axes[0].coord(i);
      s.points.row(i) << u, u;
    }
    auto r = reparametrize_unit_speed(s);
    CHECK(max_speed_deviation(r) <= 1e-10);
    CHECK(r.grid.axes[0].extent() == doctest::Approx(std::numbers::sqrt2).epsilon(1e-10));
  }
  SUBCASE("vanishing speed raises DegenerateCurve") {
    SampledImmersion s;
    s.grid = Grid({Axis{64, -1.0, 1.0, false}});
    s.ambient_dim = 2;
    s.points.resize(64, 2);
    for (int i = 0; i < 64; ++i) {
      double u = s.grid.axes[0].coord(i);
      s.points.row(i) << u * u * u, 0.0;  // stalls at u = 0
    }
    CHECK_THROWS_AS(reparametrize_unit_speed(s), Error);
  }
}

TEST_CASE("frenet apparatus") {
  SUBCASE("straight line has rank 1") {
    auto l = generate("line");
    auto F = frenet(l, 1);
    CHECK(F.rank == 1);
    CHECK(F.rank_collapsed);
    CHECK(masked_sup(F.kappa[0], F.mask) < F.rank_floor);
  }
  SUBCASE("plane circle: kappa = 1/r, rank 1 in-plane") {
    auto c = generate("circle", {{"r", 2.0}});
    auto F = frenet(c, 3);  // clamped to m-1 = 1
    CHECK(F.rank == 1);
    CHECK_FALSE(F.rank_collapsed);
    CHECK(oracle::masked_max_rel(F.kappa[0], 0.5, F.mask) <= 1e-8);
  }
  SUBCASE("helix curvatures against a dense-grid oracle") {
    double a = 1.0, b = 0.5, c2 = a * a + b * b;
    auto h = generate("helix", {{"a", a}, {"b", b}});
    auto F = frenet(h, 2);
    CHECK(F.rank == 2);
    auto [k1o, k2o] = oracle::frenet_curvatures(
        [&](double s) {
          double c = std::sqrt(c2);
          return Eigen::Vector3d(a * std::cos(s / c), a * std::sin(s / c), b * s / c);
        },
        1.0);
    CHECK(oracle::masked_max_rel(F.kappa[0], k1o, F.mask) <= 1e-6 / k1o + 1e-6);
    CHECK(oracle::masked_max_rel(F.kappa[1], k2o, F.mask) <= 1e-6 / k2o + 1e-6);
    CHECK(std::abs(k1o - a / c2) <= 1e-6);
    CHECK(std::abs(k2o - b / c2) <= 1e-6);
    CHECK(F.residual <= 1e-6);
    // frames orthonormal
    for (int i : {20, 200, 500}) {
      for (size_t p = 0; p < F.frame.size(); ++p)
        for (size_t q = 0; q < F.frame.size(); ++q) {
          double want = p == q ? 1.0 : 0.0;
          CHECK(std::abs(F.frame[p].row(i).dot(F.frame[q].row(i)) - want) <= 1e-8);
        }
    }
  }
}

TEST_CASE("curve Laplace map") {
  SUBCASE("line is degenerate") {
    auto l = generate("line");
    CHECK(curve_laplace(l).degenerate);
  }
  SUBCASE("circle maps to the centered circle of radius 1/r") {
    double r = 2.0;
    auto c = generate("circle", {{"r", r}});
    auto cl = curve_laplace(c);
    CHECK_FALSE(cl.degenerate);
    double worst = 0;
    for (Eigen::Index i = 0; i < c.grid.total(); ++i)
      worst = std::max(worst, (cl.L.points.row(i) + c.points.row(i) / (r * r)).norm());
    CHECK(worst <= 1e-8);
  }
  SUBCASE("|dL|^2 identity against the Frenet functional, across the catalogue") {
    for (const char* name : {"circle", "helix", "gamma_eps", "cornu_spiral"}) {
      CAPTURE(name);
      auto s = generate(name);
      auto F = frenet(s, std::min(3, s.m() - 1));
      auto cl = curve_laplace(s);
      auto fun = homothety_functional(F);
      double worst = 0;
      for (Eigen::Index i = 0; i < s.grid.total(); ++i)
        if (F.mask[i])
          worst = std::max(worst, std::abs(cl.dL.row(i).squaredNorm() - fun.field[i]) /
                                      std::max(fun.field[i], 1e-300));
      CHECK(worst <= 1e-4);
    }
  }
  SUBCASE("W-curve has constant |dL|") {
    auto w = generate("w_curve");
    auto cl = curve_laplace(w);
    Eigen::VectorXd n = cl.dL.rowwise().norm();
    auto mask = Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(n.size(), true).eval();
    CHECK(relative_std(n, mask) <= 1e-6);
  }
}

TEST_CASE("homothety functional") {
  SUBCASE("circle is homothetic with c = (1/r)^4") {
    auto c = generate("circle", {{"r", 2.0}});
    auto v = homothety_functional(frenet(c, 1));
    CHECK(v.holds);
    CHECK(v.fitted == doctest::Approx(1.0 / 16).epsilon(1e-8));
  }
  SUBCASE("generated family keeps kappa^4 + kappa'^2 = c^2") {
    auto g = generate("homothetic_plane_curve", {{"a", 1.0}, {"c", 2.0}});
    auto v = homothety_functional(frenet(g, 1));
    CHECK(v.holds);
    CHECK(v.rel_std <= 1e-6);
    CHECK(v.fitted == doctest::Approx(4.0).epsilon(1e-6));
  }
  SUBCASE("reparametrized parabola arc is not homothetic") {
    SampledImmersion s;
    s.grid = Grid({Axis{512, -1.0, 1.0, false}});
    s.ambient_dim = 2;
    s.points.resize(512, 2);
    for (int i = 0; i < 512; ++i) {
      double u = s.grid.axes[0].coord(i);
      s.points.row(i) << u, u * u;
    }
    auto r = reparametrize_unit_speed(s);
    auto v = homothety_functional(frenet(r, 1));
    CHECK_FALSE(v.holds);
    CHECK(v.rel_std > 10 * 1e-4);
  }
  SUBCASE("verdict is invariant under rigid motions") {
    auto g = generate("homothetic_plane_curve");
    double th = 0.73;
    Eigen::Matrix2d R;
    R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    SampledImmersion moved = g;
    moved.points = g.points * R.transpose();
    moved.points.rowwise() += Eigen::RowVector2d(3.0, -1.5);
    auto v0 = homothety_functional(frenet(g, 1));
    auto v1 = homothety_functional(frenet(moved, 1));
    CHECK(v0.holds == v1.holds);
    CHECK(v0.fitted == doctest::Approx(v1.fitted).epsilon(1e-10));
  }
}

TEST_CASE("harmonic Laplace transformation of curves") {
  SUBCASE("circle: residual vanishes") {
    auto v = harmonic_lt_residual(frenet(generate("circle"), 1));
    CHECK(v.holds);
    CHECK(v.sup <= 1e-8);
  }
  SUBCASE("kappa'' = -2 kappa^3 family passes") {
    auto v = harmonic_lt_residual(frenet(generate("harmonic_lt_curve"), 1));
    CHECK(v.holds);
  }
  SUBCASE("clothoid fails with residual 2 s^3") {
    auto co = generate("cornu_spiral", {{"a", 1.0}, {"b", 0.0}});
    auto F = frenet(co, 1);
    auto v = harmonic_lt_residual(F);
    CHECK_FALSE(v.holds);
    // residual field is kappa'(2 kappa^3 + kappa'') = 2 s^3 on [s0, s1]
    double worst = 0;
    for (Eigen::Index i = 0; i < co.grid.total(); ++i)
      if (F.mask[i]) {
        double s = co.grid.axes[0].coord(i);
        worst = std::max(worst, std::abs(v.residual[i] - 2 * s * s * s));
      }
    CHECK(worst <= 1e-3);
  }
}

TEST_CASE("Laplace image in a line") {
  SUBCASE("circle's image is a circle, not a line") {
    auto c = generate("circle");
    auto v = laplace_in_line_check(c, frenet(c, 1));
    CHECK_FALSE(v.holds);
    CHECK(v.svd_collinearity > 0.1);
  }
  SUBCASE("plane-curve family passes with a collinear image") {
    auto g = generate("laplace_line_curve");
    auto v = laplace_in_line_check(g, frenet(g, 1));
    CHECK(v.holds);
    CHECK(v.planar_branch);
    CHECK(v.svd_collinearity <= 1e-3);
  }
  SUBCASE("generalized helix branch recovers k2 = c k1") {
    auto g = generate("line_image_helix", {{"c", 0.5}});
    auto v = laplace_in_line_check(g, frenet(g, 2));
    CHECK(v.holds);
    CHECK_FALSE(v.planar_branch);
    CHECK(v.fitted_ratio == doctest::Approx(0.5).epsilon(1e-5));
  }
}

TEST_CASE("Laplace image in a circle") {
  SUBCASE("circle maps onto a circle") {
    auto c = generate("circle");
    auto v = laplace_in_circle_check(c, frenet(c, 1));
    CHECK(v.holds);
  }
  SUBCASE("the arctan family maps onto the unit circle at (1,0)") {
    auto g = generate("laplace_in_circle_curve", {{"c", 1.0}});
    auto v = laplace_in_circle_check(g, frenet(g, 1));
    CHECK(v.holds);
    CHECK(v.center.x() == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(std::abs(v.center.y()) <= 1e-4);
    CHECK(v.radius == doctest::Approx(1.0).epsilon(1e-4));
  }
  SUBCASE("unit-speed ellipse fails") {
    auto e = reparametrize_unit_speed(generate("ellipse", {}, {1024}));
    auto v = laplace_in_circle_check(e, frenet(e, 1));
    CHECK_FALSE(v.holds);
    CHECK(v.residual > 10 * 1e-3);
  }
}

TEST_CASE("LG metrics of curves") {
  SUBCASE("circle: ratio kappa^2, homothetic") {
    auto c = generate("circle", {{"r", 2.0}});
    auto v = lg_metrics_curve(frenet(c, 1));
    CHECK(v.homothetic);
    CHECK(v.fitted_ratio == doctest::Approx(0.25).epsilon(1e-8));
  }
  SUBCASE("kappa'^2 = c^2 kappa^2 - kappa^4 family: ratio = c^2") {
    auto g = generate("lg_homothetic_curve", {{"c", 2.0}, {"k0", 1.0}});
    auto v = lg_metrics_curve(frenet(g, 1));
    CHECK(v.homothetic);
    CHECK(v.fitted_ratio == doctest::Approx(4.0).epsilon(1e-6));
  }
  SUBCASE("clothoid: ratio s^2 + 1/s^2, never constant") {
    auto co = generate("cornu_spiral", {{"a", 1.0}, {"b", 0.0}, {"s0", 1.0}, {"s1", 3.0}});
    auto F = frenet(co, 1);
    auto v = lg_metrics_curve(F);
    CHECK_FALSE(v.homothetic);
    CHECK(v.conformal);
    double worst = 0;
    for (Eigen::Index i = 0; i < co.grid.total(); ++i)
      if (F.mask[i]) {
        double s = co.grid.axes[0].coord(i);
        worst = std::max(worst, std::abs(v.ratio[i] - (s * s + 1 / (s * s))));
      }
    CHECK(worst <= 1e-3);
  }
  SUBCASE("vanishing curvature raises LaplaceMapSingular") {
    auto l = generate("line");
    auto F = frenet(l, 1);
    CHECK_THROWS_AS(lg_metrics_curve(F), Error);
  }
}

TEST_CASE("curvature round trip recovers kappa to 1e-6") {
  auto kappa = [](double s) { return 1.0 + 0.4 * std::sin(2 * s); };
  auto c = curve_from_curvature(kappa, 0.3, 0.1, -0.2, 3.0, 768);
  auto F = frenet(c, 1);
  double worst = 0;
  for (Eigen::Index i = 0; i < c.grid.total(); ++i)
    if (F.mask[i]) worst = std::max(worst, std::abs(F.kappa[0][i] - kappa(c.grid.axes[0].coord(i))));
  CHECK(worst <= 1e-6);
}
