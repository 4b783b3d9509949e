#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lapgeo/frenet.hpp"
#include "lapgeo/generators.hpp"
#include "lapgeo/spectral.hpp"

using namespace lapgeo;
constexpr double pi = std::numbers::pi;

namespace {

SampledImmersion downsample(const SampledImmersion& s, int factor) {
  SampledImmersion out = s;
  int N = s.grid.axes[0].samples / factor;
  out.grid.axes[0].samples = N;
  out.points.resize(N, s.m());
  for (int i = 0; i < N; ++i) out.points.row(i) = s.points.row(i * factor);
  return out;
}

SampledImmersion unit_speed_ellipse(int N) {
  return downsample(reparametrize_unit_speed(generate("ellipse", {}, {1024})), 1024 / N);
}

}  // namespace

TEST_CASE("decompose_closed_curve") {
  SUBCASE("circle is 1-type with order [1,1]") {
    auto D = decompose_closed_curve(generate("circle"));
    CHECK(D.k_type == 1);
    CHECK(D.order_low == 1);
    CHECK(D.order_high == 1);
    CHECK_FALSE(D.infinite);
  }
  SUBCASE("two-frequency space curve: 2-type, order [1,3]") {
    auto D = decompose_closed_curve(generate("gamma_eps", {{"eps", 6.0}}));
    CHECK(D.k_type == 2);
    CHECK(D.order_low == 1);
    CHECK(D.order_high == 3);
    // the mean is the center of mass
    CHECK(D.mean.norm() <= 1e-12);
  }
  SUBCASE("unit-speed ellipse: amplitudes persist to the Nyquist band") {
    auto D = decompose_closed_curve(unit_speed_ellipse(128));
    CHECK(D.infinite);
  }
  SUBCASE("open curves are refused") {
    CHECK_THROWS_AS(decompose_closed_curve(generate("line")), Error);
  }
  SUBCASE("non-unit-speed input is refused") {
    CHECK_THROWS_AS(decompose_closed_curve(generate("ellipse")), Error);
  }
}

TEST_CASE("spectral invariants") {
  auto D = decompose_closed_curve(generate("gamma_eps"));
  auto curve = generate("gamma_eps");
  SUBCASE("Parseval closure of the retained components") {
    Eigen::MatrixXd recon = Eigen::MatrixXd::Zero(D.samples, D.m);
    recon.rowwise() += D.mean.transpose();
    for (int t : D.type_set) recon += D.synthesize(t);
    double rel = (recon - curve.points).norm() / curve.points.norm();
    CHECK(rel <= 1e-8);
  }
  SUBCASE("eigen-consistency of each component under exact differentiation") {
    for (int t : D.type_set) {
      Eigen::MatrixXd xt = D.synthesize(t);
      Eigen::MatrixXd ddx = D.synthesize(t, 2);
      double lam = D.component(t).lambda;
      CHECK((-ddx - lam * xt).norm() <= 1e-10 * lam * xt.norm());
    }
  }
  SUBCASE("components are L2-orthogonal") {
    Eigen::MatrixXd x1 = D.synthesize(D.type_set[0]);
    Eigen::MatrixXd x2 = D.synthesize(D.type_set[1]);
    double ip = 0;
    for (int j = 0; j < D.samples; ++j) ip += x1.row(j).dot(x2.row(j)) * D.period / D.samples;
    CHECK(std::abs(ip) <= 1e-10);
  }
  SUBCASE("type set is invariant under rigid motions") {
    auto moved = curve;
    Eigen::Matrix3d R =
        Eigen::AngleAxisd(0.7, Eigen::Vector3d(1, 2, 2).normalized()).toRotationMatrix();
    moved.points = curve.points * R.transpose();
    moved.points.rowwise() += Eigen::RowVector3d(0.3, -1.0, 2.0);
    auto D2 = decompose_closed_curve(moved);
    CHECK(D2.type_set == D.type_set);
  }
}

TEST_CASE("minimal polynomial fit") {
  SUBCASE("circle of radius r: degree 1, root 1/r^2") {
    auto mp = minimal_polynomial_fit(generate("circle", {{"r", 2.0}}), 4);
    CHECK(mp.degree == 1);
    CHECK_FALSE(mp.nonterminating);
    CHECK(mp.roots[0].real() == doctest::Approx(0.25).epsilon(1e-10));
  }
  SUBCASE("two-frequency curve: degree 2, roots {1, 9}") {
    auto mp = minimal_polynomial_fit(generate("gamma_eps"), 8);
    CHECK(mp.degree == 2);
    CHECK(std::abs(mp.roots[0].real() - 1.0) <= 1e-6);
    CHECK(std::abs(mp.roots[1].real() - 9.0) <= 1e-6);
    CHECK(mp.residual <= 1e-8);
  }
  SUBCASE("unit-speed ellipse does not terminate by degree 8") {
    auto mp = minimal_polynomial_fit(unit_speed_ellipse(128), 8);
    CHECK(mp.nonterminating);
    CHECK(mp.residual > 1e3 * 1e-8);
  }
  SUBCASE("degree matches |T(x)| with eigenvalue roots across synthetic curves") {
    auto w = generate("w_curve");  // frequencies 1 and 2 over period 2 pi
    auto D = decompose_closed_curve(w);
    auto mp = minimal_polynomial_fit(w, 6);
    CHECK(mp.degree == D.k_type);
    for (int i = 0; i < mp.degree; ++i)
      CHECK(std::abs(mp.roots[i].real() - D.component(D.type_set[i]).lambda) <= 1e-6);
  }
}

TEST_CASE("linear fit Delta x = A x + b") {
  SUBCASE("unit circle at the origin: A = I, b = 0") {
    auto fit = linear_fit_Ax_b(generate("circle"));
    CHECK(fit.linearly_independent);
    CHECK((fit.A - Eigen::Matrix2d::Identity()).norm() <= 1e-8);
    CHECK(fit.b.norm() <= 1e-8);
  }
  SUBCASE("cylinder patch: A = diag(0, 1, 1), b = 0") {
    auto fit = linear_fit_Ax_b(generate("cylinder", {{"a", 1.0}}));
    CHECK(fit.linearly_independent);
    Eigen::Matrix3d want = Eigen::Vector3d(0, 1, 1).asDiagonal();
    CHECK((fit.A - want).norm() <= 1e-6);
    CHECK(fit.b.norm() <= 1e-6);
  }
  SUBCASE("unit-speed ellipse fails the fit") {
    auto fit = linear_fit_Ax_b(unit_speed_ellipse(256));
    CHECK_FALSE(fit.linearly_independent);
    CHECK(fit.residual > 10 * 1e-3);
  }
}

TEST_CASE("conjugate of a 2-type curve") {
  SUBCASE("two orthogonal circles: conjugate is unit speed") {
    auto conj = conjugate_2type(decompose_closed_curve(generate("two_circles")));
    CHECK(conj.unit_speed);
    CHECK(conj.speed_deviation <= 1e-6);
    CHECK(conj.curve.grid.axes[0].periodic);
  }
  SUBCASE("gamma family: conjugate is not unit speed") {
    auto conj = conjugate_2type(decompose_closed_curve(generate("gamma_eps")));
    CHECK_FALSE(conj.unit_speed);
    CHECK(conj.speed_deviation >= 1e-3);
  }
  SUBCASE("a circle is not 2-type") {
    CHECK_THROWS_AS(conjugate_2type(decompose_closed_curve(generate("circle"))), Error);
  }
}

TEST_CASE("orthogonality report") {
  SUBCASE("two orthogonal circles: every verdict holds") {
    auto R = orthogonality_report(
        components_from_decomposition(decompose_closed_curve(generate("two_circles"))));
    CHECK(R.linearly_independent);
    CHECK(R.orthogonal);
    CHECK(R.pointwise_orthogonal);
    CHECK(R.strongly_pointwise_orthogonal);
    CHECK(R.subspace_dims == std::vector<int>{2, 2});
  }
  SUBCASE("two-frequency curve in E^3: dim E1 + dim E3 = 4 > 3") {
    auto R = orthogonality_report(
        components_from_decomposition(decompose_closed_curve(generate("gamma_eps"))));
    CHECK_FALSE(R.linearly_independent);
    CHECK(R.subspace_dims == std::vector<int>{2, 2});
    CHECK(R.span_dim == 3);
  }
  SUBCASE("flat torus in E^6 is pointwise orthogonal") {
    // components assembled analytically: the surface spectral decomposition
    // splits by frequency pairs (1, 0) and (1, 1/b)
    double a = 0.8, b = 0.6;
    auto T = generate("flat_torus_E6", {{"a", a}});
    ComponentSet C;
    C.m = 6;
    C.n_axes = 2;
    const auto N = T.grid.total();
    Eigen::MatrixXd x1 = Eigen::MatrixXd::Zero(N, 6), x2 = Eigen::MatrixXd::Zero(N, 6);
    for (int i = 0; i < T.grid.axes[0].samples; ++i)
      for (int j = 0; j < T.grid.axes[1].samples; ++j) {
        auto idx = T.grid.flat(i, j);
        double s = T.grid.axes[0].coord(i), t = T.grid.axes[1].coord(j);
        x1.row(idx) << a * std::sin(s), 0, 0, a * std::cos(s), 0, 0;
        x2.row(idx) << 0, b * std::sin(s) * std::sin(t / b), b * std::sin(s) * std::cos(t / b), 0,
            b * std::cos(s) * std::sin(t / b), b * std::cos(s) * std::cos(t / b);
      }
    C.lambda = {1.0, 1.0 + 1.0 / (b * b)};
    C.samples = {x1, x2};
    // exact derivative fields along the two flat coordinates
    auto d_of = [&](int which, int axis) {
      Eigen::MatrixXd d = Eigen::MatrixXd::Zero(N, 6);
      for (int i = 0; i < T.grid.axes[0].samples; ++i)
        for (int j = 0; j < T.grid.axes[1].samples; ++j) {
          auto idx = T.grid.flat(i, j);
          double s = T.grid.axes[0].coord(i), t = T.grid.axes[1].coord(j);
          if (which == 0 && axis == 0) d.row(idx) << a * std::cos(s), 0, 0, -a * std::sin(s), 0, 0;
          if (which == 1 && axis == 0)
            d.row(idx) << 0, b * std::cos(s) * std::sin(t / b), b * std::cos(s) * std::cos(t / b), 0,
                -b * std::sin(s) * std::sin(t / b), -b * std::sin(s) * std::cos(t / b);
          if (which == 1 && axis == 1)
            d.row(idx) << 0, std::sin(s) * std::cos(t / b), -std::sin(s) * std::sin(t / b), 0,
                std::cos(s) * std::cos(t / b), -std::cos(s) * std::sin(t / b);
        }
      return d;
    };
    C.dsamples = {{d_of(0, 0), d_of(0, 1)}, {d_of(1, 0), d_of(1, 1)}};
    auto R = orthogonality_report(C);
    CHECK(R.pointwise_orthogonal);
    CHECK(R.orthogonal);
  }
}

TEST_CASE("dual 2-type verdicts") {
  CHECK(dual_2type_check(-2.0, 2.0).dual);
  CHECK_FALSE(dual_2type_check(1.0, 9.0).dual);
  auto v = dual_2type_check(0.0, 4.0);
  CHECK_FALSE(v.dual);
  CHECK(v.null_2type);
}

TEST_CASE("2-type invariants of spherical hypersurfaces") {
  double a = 0.8, b = 0.6;
  double lp = 1 / (a * a), lq = 1 / (b * b);
  auto inv = spherical_2type_invariants(lp, lq, 2);
  SUBCASE("alpha^2 equals the measured |H|^2 of the sampled torus") {
    auto T = generate("torus_E4", {{"a", a}, {"b", b}});
    auto G = induced_metric(T);
    add_mean_curvature(T, G);
    double h2 = masked_mean(G.alpha.array().square().matrix(), G.untrimmed);
    CHECK(std::abs(inv.alpha2 - h2) <= 1e-6);
    CHECK(inv.alpha2 == doctest::Approx(1.0 / (4 * a * a * b * b)).epsilon(1e-12));
  }
  SUBCASE("the flat torus has zero scalar curvature") { CHECK(std::abs(inv.tau) <= 1e-10); }
  SUBCASE("|h|^2 = lambda_p + lambda_q") {
    CHECK(inv.h2 == doctest::Approx(1 / (a * a) + 1 / (b * b)).epsilon(1e-12));
  }
  SUBCASE("wrong eigenvalue order is refused") {
    CHECK_THROWS_AS(spherical_2type_invariants(9.0, 1.0, 2), Error);
  }
}
