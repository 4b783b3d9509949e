#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "lapgeo/csvio.hpp"
#include "lapgeo/frenet.hpp"
#include "lapgeo/generators.hpp"
#include "lapgeo/geometry.hpp"
#include "lapgeo/laplace.hpp"
#include "lapgeo/parallel.hpp"
#include "lapgeo/report.hpp"
#include "lapgeo/spectral.hpp"

using namespace lapgeo;

namespace {

struct RunConfig {
  Tolerances tol;
  int workers = 0;
  std::string out;
};

Json config_json(const RunConfig& cfg) {
  Json j = Json::object();
  j.set("fd_order", cfg.tol.fd_order);
  j.set("const_tol", cfg.tol.const_tol);
  j.set("const_tol_exact", cfg.tol.const_tol_exact);
  j.set("fit_tol", cfg.tol.fit_tol);
  j.set("ode_tol", cfg.tol.ode_tol);
  j.set("amp_tol", cfg.tol.amp_tol);
  j.set("poly_tol", cfg.tol.poly_tol);
  j.set("trim", cfg.tol.trim());
  j.set("workers", resolve_workers(cfg.workers));
  return j;
}

Json input_json(const SampledImmersion& S) {
  Json j = Json::object();
  j.set("label", S.label);
  j.set("n", S.n());
  j.set("m", S.m());
  Json shape = Json::array(), periodic = Json::array();
  for (const auto& a : S.grid.axes) {
    shape.push(a.samples);
    periodic.push(a.periodic);
  }
  j.set("shape", std::move(shape));
  j.set("periodic", std::move(periodic));
  return j;
}

Json vec_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push(v[i]);
  return a;
}

Json verdict_json(bool holds, double residual, double tolerance) {
  Json j = Json::object();
  j.set("holds", holds);
  j.set("residual", residual);
  j.set("tolerance", tolerance);
  return j;
}

Json classify_json(const AnalysisReport& rep) {
  Json j = Json::object();
  j.set("verdict", rep.verdict);
  j.set("degenerate", rep.degenerate);
  j.set("homothetic", rep.homothetic);
  j.set("isometric", rep.isometric);
  j.set("conformal", rep.conformal);
  j.set("weakly_conformal", rep.weakly_conformal);
  j.set("c", rep.c);
  Json res = Json::object();
  res.set("rho_rel_std", rep.rho_rel_std);
  res.set("sup_anisotropy", rep.sup_anisotropy);
  res.set("inf_rho2", rep.inf_rho2);
  j.set("residuals", std::move(res));
  j.set("tolerance", rep.tol_used);
  j.set("trimmed", (long long)rep.trimmed);
  return j;
}

Json fit_json(const PrimitiveFitReport& fit) {
  Json j = Json::object();
  Json entries = Json::object();
  for (const auto& e : fit.entries) {
    Json one = Json::object();
    one.set("residual", e.residual);
    one.set("passes", e.passes);
    entries.set(e.name, std::move(one));
  }
  j.set("residuals", std::move(entries));
  j.set("best", fit.best);
  Json sphere = Json::object();
  sphere.set("center", vec_json(fit.sphere.center));
  sphere.set("radius", fit.sphere.radius);
  j.set("sphere", std::move(sphere));
  Json plane = Json::object();
  plane.set("normal", vec_json(fit.plane.normal));
  j.set("plane", std::move(plane));
  if (fit.point_center.size() == 3) {
    Json cyl = Json::object();
    cyl.set("axis_dir", vec_json(fit.cylinder.axis_dir));
    cyl.set("radius", fit.cylinder.radius);
    j.set("cylinder", std::move(cyl));
    Json cone = Json::object();
    cone.set("vertex", vec_json(fit.cone.vertex));
    cone.set("cos_half_angle", fit.cone.cos_half_angle);
    cone.set("angular_residual", fit.cone.rms_angular);
    j.set("cone", std::move(cone));
  }
  return j;
}

void emit(const RunConfig& cfg, const Json& j) {
  std::string text = j.dump(1);
  text += "\n";
  if (cfg.out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream f(cfg.out);
    if (!f) throw Error(ErrorCode::BadInput, "cannot open " + cfg.out);
    f << text;
  }
}

Params parse_params(const std::vector<std::string>& kvs) {
  Params p;
  for (const auto& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::BadInput, "--param expects key=value, got " + kv);
    p[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return p;
}

std::vector<int> parse_grid(const std::string& spec) {
  std::vector<int> counts;
  if (spec.empty()) return counts;
  size_t pos = 0;
  while (pos < spec.size()) {
    size_t comma = spec.find(',', pos);
    counts.push_back(std::stoi(spec.substr(pos, comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return counts;
}

Eigen::MatrixXd masked_rows(const Eigen::MatrixXd& pts, const Eigen::Array<bool, Eigen::Dynamic, 1>& mask) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    if (mask[i]) idx.push_back(i);
  Eigen::MatrixXd out(idx.size(), pts.cols());
  for (size_t r = 0; r < idx.size(); ++r) out.row(r) = pts.row(idx[r]);
  return out;
}

// exit code 0 = holds, 1 = fails
int run_check(const RunConfig& cfg, const std::string& property, const SampledImmersion& S) {
  Json j = Json::object();
  j.set("config", config_json(cfg));
  j.set("input", input_json(S));
  j.set("property", property);
  bool holds = false;
  const Tolerances& tol = cfg.tol;

  if (property == "harmonic-lt" || property == "laplace-in-line" || property == "laplace-in-circle" ||
      (S.n() == 1 && (property == "homothetic" || property == "lg-homothetic" || property == "conformal"))) {
    SampledImmersion curve = S;
    if (max_speed_deviation(curve, tol) > tol.speed_tol) curve = reparametrize_unit_speed(curve, tol);
    FrenetApparatus F = frenet(curve, std::min(3, S.m() - 1), tol);
    if (property == "harmonic-lt") {
      auto v = harmonic_lt_residual(F, tol);
      holds = v.holds;
      j.set("report", verdict_json(v.holds, v.sup, v.tol_used * std::max(v.scale, 1e-300)));
    } else if (property == "laplace-in-line") {
      auto v = laplace_in_line_check(curve, F, tol);
      holds = v.holds;
      Json r = Json::object();
      r.set("holds", v.holds);
      r.set("planar_branch", v.planar_branch);
      r.set("ode_residual", v.ode_residual);
      r.set("ratio_residual", v.ratio_residual);
      r.set("fitted_ratio", v.fitted_ratio);
      r.set("svd_collinearity", v.svd_collinearity);
      j.set("report", std::move(r));
    } else if (property == "laplace-in-circle") {
      auto v = laplace_in_circle_check(curve, F, tol);
      holds = v.holds;
      Json r = Json::object();
      r.set("holds", v.holds);
      r.set("center", vec_json(v.center));
      r.set("radius", v.radius);
      r.set("residual", v.residual);
      j.set("report", std::move(r));
    } else if (property == "homothetic") {
      auto v = homothety_functional(F, tol);
      holds = v.holds;
      Json r = verdict_json(v.holds, v.rel_std, v.tol_used);
      r.set("c", std::sqrt(std::max(v.fitted, 0.0)));
      j.set("report", std::move(r));
    } else {  // lg-homothetic / conformal for curves
      auto v = lg_metrics_curve(F, tol);
      holds = property == "conformal" ? v.conformal : v.homothetic;
      Json r = Json::object();
      r.set("holds", holds);
      r.set("fitted_ratio", v.fitted_ratio);
      r.set("rel_std", v.rel_std);
      j.set("report", std::move(r));
    }
  } else {
    GeometryFields G = induced_metric(S, tol);
    if (property == "homothetic" || property == "conformal") {
      LaplaceResult R = laplace_map(S, G, tol);
      auto rep = classify_transformation(S, G, R, tol);
      holds = property == "homothetic" ? rep.homothetic : rep.conformal;
      j.set("report", classify_json(rep));
    } else if (property == "biharmonic") {
      auto rep = biharmonic_residual(S, G, tol);
      holds = rep.holds;
      j.set("report", verdict_json(rep.holds, rep.sup, rep.threshold));
    } else if (property == "harmonic-mc") {
      auto rep = harmonic_mean_curvature_residual(S, G, tol);
      holds = rep.holds;
      j.set("report", verdict_json(rep.holds, rep.sup, rep.threshold));
    } else if (property == "lg-homothetic") {
      LaplaceResult R = laplace_map(S, G, tol);
      bool spherical = S.m() == 4;
      auto rep = lg_hypersurface(S, G, R, spherical, tol);
      holds = rep.homothetic;
      Json r = Json::object();
      r.set("holds", holds);
      r.set("fitted_ratio", rep.fitted_ratio);
      r.set("rel_std", rep.rel_std);
      r.set("sup_anisotropy", rep.sup_anisotropy);
      r.set("spherical_variant", rep.spherical_variant);
      j.set("report", std::move(r));
    } else if (property == "spherical-harmonic") {
      LaplaceResult R = laplace_map(S, G, tol);
      auto rep = spherical_laplace(S, G, R, tol);
      holds = rep.harmonic;
      Json r = verdict_json(rep.harmonic, rep.tension_sup, rep.tension_scale);
      r.set("radius", rep.radius);
      r.set("energy_mean", rep.energy_mean);
      r.set("energy_rel_std", rep.energy_rel_std);
      j.set("report", std::move(r));
    } else if (property == "totally-real") {
      LaplaceResult R = laplace_map(S, G, tol);
      auto rep = totally_real_check(S, G, R, tol);
      holds = rep.x_totally_real && rep.L_totally_real;
      Json r = Json::object();
      r.set("holds", holds);
      r.set("x_totally_real", rep.x_totally_real);
      r.set("L_totally_real", rep.L_totally_real);
      r.set("x_defect", rep.x_defect);
      r.set("L_defect", rep.L_defect);
      r.set("L_degenerate", rep.L_degenerate);
      j.set("report", std::move(r));
    } else {
      throw Error(ErrorCode::BadInput, "unknown property " + property);
    }
  }
  emit(cfg, j);
  return holds ? 0 : 1;
}

void run_analyze(const RunConfig& cfg, const SampledImmersion& S, const std::string& kinds) {
  auto wanted = [&](const char* k) {
    return kinds.empty() || kinds.find(k) != std::string::npos;
  };
  const Tolerances& tol = cfg.tol;
  Json j = Json::object();
  j.set("config", config_json(cfg));
  j.set("input", input_json(S));

  GeometryFields G = induced_metric(S, tol);
  if (wanted("metric")) {
    Json m = Json::object();
    double dmin = 1e300, dmax = 0;
    for (Eigen::Index i = 0; i < G.sqrt_det_g.size(); ++i)
      if (G.untrimmed[i]) {
        dmin = std::min(dmin, G.sqrt_det_g[i]);
        dmax = std::max(dmax, G.sqrt_det_g[i]);
      }
    m.set("sqrt_det_g_min", dmin);
    m.set("sqrt_det_g_max", dmax);
    m.set("trim", G.trim);
    j.set("metric", std::move(m));
  }
  LaplaceResult R = laplace_map(S, G, tol);
  if (wanted("laplace")) {
    Json l = Json::object();
    l.set("degenerate", R.degenerate);
    l.set("sup_norm", R.sup_norm);
    l.set("fd_tol", R.fd_tol);
    j.set("laplace", std::move(l));
  }
  if (wanted("rank")) {
    auto rp = rank_profile(S, R, G, tol);
    Json r = Json::object();
    r.set("constant", rp.constant);
    r.set("value", rp.constant ? Json(rp.value) : Json());
    j.set("rank", std::move(r));
  }
  if (wanted("class")) j.set("class", classify_json(classify_transformation(S, G, R, tol)));
  if (wanted("lg") && (S.m() == S.n() + 1 || (S.m() == 4 && S.n() == 2))) {
    try {
      auto rep = lg_hypersurface(S, G, R, S.m() == 4, tol);
      Json r = Json::object();
      r.set("homothetic", rep.homothetic);
      r.set("weakly_conformal", rep.weakly_conformal);
      r.set("fitted_ratio", rep.fitted_ratio);
      r.set("rel_std", rep.rel_std);
      j.set("lg", std::move(r));
    } catch (const Error& e) {
      j.set("lg", Json(std::string("unavailable: ") + e.what()));
    }
  }
  if (wanted("image_fit") && !R.degenerate) {
    auto mask = verdict_mask(S.grid, 2, G.trim);
    auto fit = fit_primitives(masked_rows(R.L.points, mask), std::max(S.scale(), 1.0), tol.fit_tol);
    j.set("image_fit", fit_json(fit));
  }
  emit(cfg, j);
}

void run_spectrum(const RunConfig& cfg, const SampledImmersion& S, const std::string& conjugate_out,
                  int minpoly_kmax) {
  const Tolerances& tol = cfg.tol;
  SampledImmersion curve = S;
  bool reparametrized = false;
  if (max_speed_deviation(curve, tol) > tol.speed_tol) {
    curve = reparametrize_unit_speed(curve, tol);
    reparametrized = true;
  }
  SpectralDecomposition D = decompose_closed_curve(curve, tol);

  Json j = Json::object();
  j.set("config", config_json(cfg));
  j.set("input", input_json(S));
  j.set("reparametrized", reparametrized);
  j.set("period", D.period);
  j.set("mean", vec_json(D.mean));
  Json comps = Json::array();
  for (int t : D.type_set) {
    const auto& c = D.component(t);
    Json one = Json::object();
    one.set("t", c.t);
    one.set("lambda", c.lambda);
    one.set("a", vec_json(c.a));
    one.set("b", vec_json(c.b));
    comps.push(std::move(one));
  }
  j.set("components", std::move(comps));
  Json ts = Json::array();
  for (int t : D.type_set) ts.push(t);
  j.set("type_set", std::move(ts));
  Json order = Json::array();
  order.push(D.order_low);
  order.push(D.order_high);
  j.set("order", std::move(order));
  j.set("k_type", D.infinite ? Json("infinite") : Json(D.k_type));

  if (minpoly_kmax > 0) {
    auto mp = minimal_polynomial_fit(curve, minpoly_kmax, tol);
    Json p = Json::object();
    p.set("degree", mp.degree);
    p.set("coefficients", vec_json(mp.coeffs));
    p.set("residual", mp.residual);
    p.set("nonterminating", mp.nonterminating);
    Json roots = Json::array();
    for (auto r : mp.roots) {
      Json one = Json::object();
      one.set("re", r.real());
      one.set("im", r.imag());
      roots.push(std::move(one));
    }
    p.set("roots", std::move(roots));
    j.set("minimal_polynomial", std::move(p));
  }
  if (!conjugate_out.empty()) {
    auto conj = conjugate_2type(D, tol);
    write_grid_csv(conj.curve, conjugate_out);
    Json c = Json::object();
    c.set("written", conjugate_out);
    c.set("unit_speed", conj.unit_speed);
    c.set("speed_deviation", conj.speed_deviation);
    j.set("conjugate", std::move(c));
  }
  emit(cfg, j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"laplace maps and transformations of sampled immersions"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--fd-order", cfg.tol.fd_order, "finite-difference order (2 or 4)")
      ->check(CLI::IsMember({2, 4}));
  app.add_option("--tol-const", cfg.tol.const_tol, "constancy tolerance");
  app.add_option("--tol-fit", cfg.tol.fit_tol, "primitive-fit tolerance");
  app.add_option("--tol-ode", cfg.tol.ode_tol, "curvature-ODE tolerance");
  app.add_option("--tol-amp", cfg.tol.amp_tol, "spectral amplitude tolerance");
  app.add_option("--tol-poly", cfg.tol.poly_tol, "minimal-polynomial tolerance");
  app.add_option("--trim", cfg.tol.trim_override, "trim-band override");
  app.add_option("--workers", cfg.workers, "worker threads (also LAPGEO_WORKERS)");
  app.add_option("--out", cfg.out, "output path (default stdout)");

  auto* gen = app.add_subcommand("generate", "evaluate a catalogue immersion to CSV");
  gen->fallthrough();
  std::string gen_name, grid_spec, infile, report_kinds, property, conjugate_out;
  std::vector<std::string> param_kvs;
  bool fit_laplace = false;
  int minpoly_kmax = 0;
  gen->add_option("name", gen_name, "catalogue entry")->required();
  gen->add_option("--param", param_kvs, "parameter key=value");
  gen->add_option("--grid", grid_spec, "sample counts N1[,N2]");

  auto* ana = app.add_subcommand("analyze", "geometry/Laplace analysis report");
  ana->fallthrough();
  ana->add_option("input", infile, "grid CSV")->required();
  ana->add_option("--report", report_kinds, "sections: metric,laplace,rank,class,lg,image_fit");

  auto* chk = app.add_subcommand("check", "verify a named property (exit 0 holds / 1 fails)");
  chk->fallthrough();
  chk->add_option("property", property, "property name")->required();
  chk->add_option("input", infile, "grid CSV")->required();

  auto* spc = app.add_subcommand("spectrum", "spectral decomposition of a closed curve");
  spc->fallthrough();
  spc->add_option("input", infile, "grid CSV")->required();
  spc->add_option("--conjugate", conjugate_out, "write the conjugate curve CSV");
  spc->add_option("--minpoly", minpoly_kmax, "minimal polynomial up to degree k");

  auto* fit = app.add_subcommand("fit-image", "fit geometric primitives to a point set");
  fit->fallthrough();
  fit->add_option("input", infile, "grid CSV")->required();
  fit->add_flag("--laplace", fit_laplace, "fit the Laplace image instead of the raw points");

  auto* cat = app.add_subcommand("catalogue", "list generator entries as JSON");
  cat->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      SampledImmersion S = generate(gen_name, parse_params(param_kvs), parse_grid(grid_spec));
      if (cfg.out.empty()) {
        write_grid_csv(S, std::cout);
      } else {
        write_grid_csv(S, cfg.out);
      }
      return 0;
    }
    if (ana->parsed()) {
      run_analyze(cfg, read_grid_csv(infile), report_kinds);
      return 0;
    }
    if (chk->parsed()) return run_check(cfg, property, read_grid_csv(infile));
    if (spc->parsed()) {
      run_spectrum(cfg, read_grid_csv(infile), conjugate_out, minpoly_kmax);
      return 0;
    }
    if (fit->parsed()) {
      SampledImmersion S = read_grid_csv(infile);
      Eigen::MatrixXd pts = S.points;
      if (fit_laplace) {
        GeometryFields G = induced_metric(S, cfg.tol);
        LaplaceResult R = laplace_map(S, G, cfg.tol);
        pts = masked_rows(R.L.points, verdict_mask(S.grid, 2, G.trim));
      }
      Json j = Json::object();
      j.set("config", config_json(cfg));
      j.set("input", input_json(S));
      j.set("fit", fit_json(fit_primitives(pts, std::max(S.scale(), 1.0), cfg.tol.fit_tol)));
      emit(cfg, j);
      return 0;
    }
    if (cat->parsed()) {
      Json arr = Json::array();
      for (const auto& g : catalogue()) {
        Json one = Json::object();
        one.set("name", g.name);
        one.set("intrinsic_dim", g.intrinsic_dim);
        one.set("ambient_dim", g.ambient_dim);
        Json params = Json::object();
        for (const auto& [k, v] : g.defaults) params.set(k, v);
        one.set("defaults", std::move(params));
        one.set("provenance", g.provenance);
        arr.push(std::move(one));
      }
      emit(cfg, arr);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
