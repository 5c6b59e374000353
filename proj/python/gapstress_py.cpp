#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gapstress/bounds.hpp"
#include "gapstress/kernels.hpp"
#include "gapstress/pipeline.hpp"

namespace py = pybind11;
using namespace gapstress;

namespace {

py::tuple as_tuple(const Vec2 &v) { return py::make_tuple(v.x, v.y); }

py::list as_rows(const Matrix2 &m) {
  py::list out;
  out.append(py::make_tuple(m.m11, m.m12));
  out.append(py::make_tuple(m.m21, m.m22));
  return out;
}

py::list as_rows(const SymTensor2 &s) { return as_rows(s.full()); }

Vec2 point(const std::pair<double, double> &p) { return {p.first, p.second}; }

py::dict diagnostics_dict(const BoundDiagnostics &d) {
  py::dict out;
  out["asymmetry_max"] = d.asymmetry_max;
  out["bc_residual"] = d.bc_residual;
  out["div_residual"] = d.div_residual;
  out["correction_max"] = d.correction_max;
  out["tabulation_err"] = d.tabulation_err;
  return out;
}

py::dict terms_dict(const BoundTerms &t) {
  py::dict out;
  out["neck"] = t.neck;
  out["exterior"] = t.exterior;
  out["singular"] = t.singular;
  out["correction"] = t.correction;
  out["cross"] = t.cross;
  out["area"] = t.area;
  out["flux"] = t.flux;
  return out;
}

}  // namespace

PYBIND11_MODULE(_gapstress, m) {
  m.doc() = "Bounds and asymptotics for the effective moduli of densely packed hard-inclusion composites";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<QuadratureFailure>(m, "QuadratureFailure", PyExc_RuntimeError);

  py::class_<LameMaterial>(m, "LameMaterial")
      .def(py::init<double, double>(), py::arg("lam"), py::arg("mu"))
      .def_property_readonly("lam", &LameMaterial::lambda)
      .def_property_readonly("mu", &LameMaterial::mu)
      .def_property_readonly("young", [](const LameMaterial &x) { return x.constants().E; })
      .def_property_readonly("rho", [](const LameMaterial &x) { return x.constants().rho; })
      .def_property_readonly("prefactor", [](const LameMaterial &x) { return x.constants().prefactor; })
      .def("__repr__", [](const LameMaterial &x) {
        std::ostringstream s;
        s << "LameMaterial(lam=" << x.lambda() << ", mu=" << x.mu() << ")";
        return s.str();
      });

  py::class_<InclusionShape>(m, "InclusionShape")
      .def_static("disk", &InclusionShape::disk, py::arg("r0"))
      .def_static("ellipse", &InclusionShape::ellipse, py::arg("A"), py::arg("B"))
      .def_readonly("A", &InclusionShape::A)
      .def_readonly("B", &InclusionShape::B)
      .def_property_readonly("kappa0", &InclusionShape::vertex_curvature);

  py::class_<GapGeometry>(m, "GapGeometry")
      .def(py::init<const InclusionShape &, double, double>(), py::arg("shape"), py::arg("eps"), py::arg("L2"))
      .def_property_readonly("eps", &GapGeometry::eps)
      .def_property_readonly("L1", &GapGeometry::L1)
      .def_property_readonly("L2", &GapGeometry::L2)
      .def_property_readonly("kappa0", &GapGeometry::kappa0)
      .def_property_readonly("a", &GapGeometry::a)
      .def_property_readonly("matrix_area", &GapGeometry::matrix_area)
      .def("gap_halfwidth", &GapGeometry::gap_halfwidth, py::arg("y"))
      .def(
          "classify", [](const GapGeometry &g, double x, double y) { return to_string(g.classify({x, y})); },
          py::arg("x"), py::arg("y"));

  m.def(
      "kelvin_matrix", [](std::pair<double, double> x, const LameMaterial &mat) {
        return as_rows(kelvin_matrix(point(x), mat));
      },
      py::arg("x"), py::arg("material"));
  m.def(
      "singular_displacement",
      [](const GapGeometry &g, const LameMaterial &mat, int j, std::pair<double, double> x) {
        return as_tuple(singular_displacement(KernelContext(g, mat), j, point(x)));
      },
      py::arg("geometry"), py::arg("material"), py::arg("j"), py::arg("x"));
  m.def(
      "singular_stress",
      [](const GapGeometry &g, const LameMaterial &mat, int j, std::pair<double, double> x) {
        return as_rows(singular_stress(KernelContext(g, mat), j, point(x)));
      },
      py::arg("geometry"), py::arg("material"), py::arg("j"), py::arg("x"));

  m.def("blowup_constant", &blowup_constant, py::arg("material"), py::arg("kappa0"), py::arg("j"));

  py::class_<BoundResult>(m, "BoundResult")
      .def_readonly("j", &BoundResult::j)
      .def_readonly("value", &BoundResult::value)
      .def_readonly("quadrature_err", &BoundResult::quadrature_err)
      .def_readonly("converged", &BoundResult::converged)
      .def_property_readonly("kind",
                             [](const BoundResult &r) { return r.kind == BoundKind::Upper ? "upper" : "lower"; })
      .def_property_readonly("diagnostics", [](const BoundResult &r) { return diagnostics_dict(r.diagnostics); })
      .def_property_readonly("terms", [](const BoundResult &r) { return terms_dict(r.terms); });

  m.def(
      "primal_upper",
      [](const GapGeometry &g, const LameMaterial &mat, int j, double rel_tol) {
        QuadratureSpec s = QuadratureSpec::cell_default();
        s.rel_tol = rel_tol;
        py::gil_scoped_release release;
        return primal_upper(g, mat, j, s);
      },
      py::arg("geometry"), py::arg("material"), py::arg("j"), py::arg("rel_tol") = 1e-6);
  m.def(
      "dual_lower",
      [](const GapGeometry &g, const LameMaterial &mat, int j, double rel_tol_cell, double rel_tol_path) {
        QuadratureSpec c = QuadratureSpec::cell_default();
        QuadratureSpec p = QuadratureSpec::path_default();
        c.rel_tol = rel_tol_cell;
        p.rel_tol = rel_tol_path;
        py::gil_scoped_release release;
        return dual_lower(g, mat, j, c, p);
      },
      py::arg("geometry"), py::arg("material"), py::arg("j"), py::arg("rel_tol_cell") = 1e-6,
      py::arg("rel_tol_path") = 1e-8);

  m.def(
      "flux_identity",
      [](const GapGeometry &g, const LameMaterial &mat, int i, int j, int k) {
        return flux_identity_check(g, mat, i, j, k).value;
      },
      py::arg("geometry"), py::arg("material"), py::arg("i"), py::arg("j"), py::arg("k"));
  m.def(
      "normalized_energy",
      [](const GapGeometry &g, const LameMaterial &mat, int j) {
        return normalized_energy(g, mat, j, energy_identity_check(g, mat, j).value);
      },
      py::arg("geometry"), py::arg("material"), py::arg("j"));

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_static(
          "parse",
          [](const std::string &text) {
            std::istringstream in(text);
            return parse_config(in);
          },
          py::arg("text"))
      .def_static("load", &load_config, py::arg("path"))
      .def_readwrite("lam", &RunConfig::lambda)
      .def_readwrite("mu", &RunConfig::mu)
      .def_readwrite("shape", &RunConfig::shape)
      .def_readwrite("L2", &RunConfig::L2)
      .def_readwrite("eps_list", &RunConfig::eps_list)
      .def_readwrite("out", &RunConfig::out);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("eps", &SweepRow::eps)
      .def_readonly("j", &SweepRow::j)
      .def_readonly("upper", &SweepRow::upper)
      .def_readonly("lower", &SweepRow::lower)
      .def_readonly("upper_scaled", &SweepRow::upper_scaled)
      .def_readonly("lower_scaled", &SweepRow::lower_scaled)
      .def_readonly("fk_constant", &SweepRow::fk_constant)
      .def_property_readonly("modulus", [](const SweepRow &r) { return py::make_tuple(r.modulus.lo, r.modulus.hi); })
      .def("csv", &csv_row);

  py::class_<LineFit>(m, "LineFit")
      .def_readonly("c1", &LineFit::c1)
      .def_readonly("c0", &LineFit::c0)
      .def_readonly("residual", &LineFit::residual)
      .def_readonly("rel_dev", &LineFit::rel_dev);

  py::class_<SweepFit>(m, "SweepFit")
      .def_readonly("j", &SweepFit::j)
      .def_readonly("upper", &SweepFit::upper)
      .def_readonly("lower", &SweepFit::lower);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("rows", &SweepResult::rows)
      .def_readonly("fits", &SweepResult::fits);

  m.def(
      "compute_row",
      [](const RunConfig &cfg, double eps, int j) {
        py::gil_scoped_release release;
        return compute_row(cfg, eps, j);
      },
      py::arg("config"), py::arg("eps"), py::arg("j"));
  m.def(
      "sweep",
      [](const RunConfig &cfg) {
        py::gil_scoped_release release;
        return sweep_and_fit(cfg);
      },
      py::arg("config"));
  m.def("fit_inverse_sqrt", &fit_inverse_sqrt, py::arg("eps"), py::arg("values"), py::arg("target"));
  m.attr("CSV_HEADER") = kCsvHeader;
}
