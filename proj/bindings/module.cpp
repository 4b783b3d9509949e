#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lapgeo/csvio.hpp"
#include "lapgeo/frenet.hpp"
#include "lapgeo/generators.hpp"
#include "lapgeo/geometry.hpp"
#include "lapgeo/laplace.hpp"
#include "lapgeo/spectral.hpp"

namespace py = pybind11;
using namespace lapgeo;

namespace {

SampledImmersion from_arrays(const Eigen::MatrixXd& points, const std::vector<int>& shape,
                             const std::vector<bool>& periodic,
                             const std::vector<std::pair<double, double>>& domain,
                             const std::string& label) {
  Grid grid;
  for (size_t a = 0; a < shape.size(); ++a)
    grid.axes.push_back({shape[a], domain[a].first, domain[a].second, periodic[a]});
  SampledImmersion S;
  S.grid = grid;
  S.ambient_dim = static_cast<int>(points.cols());
  S.points = points;
  S.label = label;
  S.validate();
  return S;
}

py::dict classify_dict(const AnalysisReport& rep) {
  py::dict d;
  d["verdict"] = rep.verdict;
  d["degenerate"] = rep.degenerate;
  d["homothetic"] = rep.homothetic;
  d["isometric"] = rep.isometric;
  d["conformal"] = rep.conformal;
  d["weakly_conformal"] = rep.weakly_conformal;
  d["c"] = rep.c;
  d["rho_rel_std"] = rep.rho_rel_std;
  d["sup_anisotropy"] = rep.sup_anisotropy;
  return d;
}

}  // namespace

PYBIND11_MODULE(_lapgeo, m) {
  m.doc() = "Laplace maps and transformations of sampled immersions";

  py::register_exception<Error>(m, "LapgeoError");

  py::class_<SampledImmersion>(m, "Immersion")
      .def(py::init(&from_arrays), py::arg("points"), py::arg("shape"), py::arg("periodic"),
           py::arg("domain"), py::arg("label") = "")
      .def_property_readonly("points", [](const SampledImmersion& s) { return s.points; })
      .def_property_readonly("label", [](const SampledImmersion& s) { return s.label; })
      .def_property_readonly("shape",
                             [](const SampledImmersion& s) {
                               std::vector<int> out;
                               for (const auto& a : s.grid.axes) out.push_back(a.samples);
                               return out;
                             })
      .def_property_readonly("periodic",
                             [](const SampledImmersion& s) {
                               std::vector<bool> out;
                               for (const auto& a : s.grid.axes) out.push_back(a.periodic);
                               return out;
                             })
      .def_property_readonly("ambient_dim", [](const SampledImmersion& s) { return s.m(); })
      .def("laplace",
           [](const SampledImmersion& s) {
             GeometryFields G = induced_metric(s);
             LaplaceResult R = laplace_map(s, G);
             py::dict d;
             d["points"] = R.L.points;
             d["degenerate"] = R.degenerate;
             d["sup_norm"] = R.sup_norm;
             d["fd_tol"] = R.fd_tol;
             return d;
           })
      .def("mean_curvature",
           [](const SampledImmersion& s) {
             GeometryFields G = induced_metric(s);
             add_mean_curvature(s, G);
             py::dict d;
             d["H"] = G.H;
             d["alpha"] = G.alpha;
             return d;
           })
      .def("classify",
           [](const SampledImmersion& s) {
             GeometryFields G = induced_metric(s);
             LaplaceResult R = laplace_map(s, G);
             return classify_dict(classify_transformation(s, G, R));
           })
      .def("spectrum",
           [](const SampledImmersion& s) {
             Tolerances tol;
             SampledImmersion c = s;
             if (max_speed_deviation(c, tol) > tol.speed_tol) c = reparametrize_unit_speed(c, tol);
             SpectralDecomposition D = decompose_closed_curve(c, tol);
             py::dict d;
             d["period"] = D.period;
             d["mean"] = D.mean;
             d["type_set"] = D.type_set;
             d["order"] = std::vector<int>{D.order_low, D.order_high};
             d["k_type"] = D.infinite ? py::object(py::str("infinite")) : py::object(py::int_(D.k_type));
             return d;
           })
      .def("minimal_polynomial",
           [](const SampledImmersion& s, int k_max) {
             auto mp = minimal_polynomial_fit(s, k_max);
             py::dict d;
             d["degree"] = mp.degree;
             d["residual"] = mp.residual;
             d["nonterminating"] = mp.nonterminating;
             std::vector<double> roots;
             for (auto r : mp.roots) roots.push_back(r.real());
             d["roots"] = roots;
             return d;
           },
           py::arg("k_max") = 8)
      .def("fit_image",
           [](const SampledImmersion& s, bool laplace) {
             Eigen::MatrixXd pts = s.points;
             if (laplace) {
               GeometryFields G = induced_metric(s);
               LaplaceResult R = laplace_map(s, G);
               auto mask = verdict_mask(s.grid, 2, G.trim);
               std::vector<Eigen::Index> idx;
               for (Eigen::Index i = 0; i < R.L.points.rows(); ++i)
                 if (mask[i]) idx.push_back(i);
               pts.resize(idx.size(), s.m());
               for (size_t r = 0; r < idx.size(); ++r) pts.row(r) = R.L.points.row(idx[r]);
             }
             Tolerances tol;
             auto fit = fit_primitives(pts, std::max(s.scale(), 1.0), tol.fit_tol);
             py::dict d;
             for (const auto& e : fit.entries) d[e.name.c_str()] = e.residual;
             d["best"] = fit.best;
             d["sphere_center"] = fit.sphere.center;
             d["sphere_radius"] = fit.sphere.radius;
             return d;
           },
           py::arg("laplace") = false)
      .def("write_csv", [](const SampledImmersion& s, const std::string& path) { write_grid_csv(s, path); });

  m.def("generate",
        [](const std::string& name, const Params& params, const std::vector<int>& counts) {
          return generate(name, params, counts);
        },
        py::arg("name"), py::arg("params") = Params{}, py::arg("counts") = std::vector<int>{});
  m.def("read_csv", [](const std::string& path) { return read_grid_csv(path); });
  m.def("catalogue", [] {
    py::list out;
    for (const auto& g : catalogue()) {
      py::dict d;
      d["name"] = g.name;
      d["intrinsic_dim"] = g.intrinsic_dim;
      d["ambient_dim"] = g.ambient_dim;
      d["defaults"] = g.defaults;
      d["provenance"] = g.provenance;
      out.append(d);
    }
    return out;
  });
  m.def("spherical_2type_invariants", [](double lp, double lq, int n) {
    auto v = spherical_2type_invariants(lp, lq, n);
    py::dict d;
    d["alpha2"] = v.alpha2;
    d["tau"] = v.tau;
    d["h2"] = v.h2;
    return d;
  });
}
