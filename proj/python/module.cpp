#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "delone/antiprism_opt.hpp"
#include "delone/equivalence.hpp"
#include "delone/errors.hpp"
#include "delone/generators.hpp"
#include "delone/io.hpp"
#include "delone/point_group.hpp"
#include "delone/regularity.hpp"

namespace py = pybind11;
using namespace delone;

namespace {

Box make_box(const Point3& lo, const Point3& hi) { return Box{lo, hi}; }

py::dict group_dict(const PointGroup& g) {
  py::dict d;
  d["label"] = g.label.str();
  d["order"] = g.order();
  d["tower_height"] = tower_height(g);
  d["center"] = g.center;
  return d;
}

py::dict verdict_dict(const CriterionVerdict& v) {
  py::dict d;
  d["regular"] = v.regular;
  d["rho0"] = v.rho0;
  d["N"] = v.N_at_rho0_plus_2R;
  d["groups_equal"] = v.groups_equal;
  d["witness"] = v.witness;
  return d;
}

py::dict report_dict(const OptimizationReport& r) {
  py::dict d;
  d["best_value"] = r.best_value;
  py::dict arg;
  for (std::size_t i = 0; i < r.names.size(); ++i) arg[py::str(r.names[i])] = r.argmax[i];
  d["argmax"] = arg;
  d["starts"] = r.starts;
  d["converged_starts"] = r.converged_starts;
  d["constraint_residual"] = r.constraint_residual;
  return d;
}

OptBudget budget(int grid, int threads, int max_iterations, double epsilon) {
  OptBudget b;
  b.grid = grid;
  b.threads = threads;
  b.max_iterations = max_iterations;
  b.epsilon = epsilon;
  return b;
}

}  // namespace

PYBIND11_MODULE(_delone, m) {
  m.doc() = "Local regularity tools for 3D Delone sets";

  static py::handle error_type = py::exception<Error>(m, "DeloneError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<PointPatch>(m, "PointPatch")
      .def(py::init([](std::vector<Point3> pts, const Point3& lo, const Point3& hi, std::optional<double> R) {
             return PointPatch(std::move(pts), make_box(lo, hi), R);
           }),
           py::arg("points"), py::arg("box_lo"), py::arg("box_hi"), py::arg("R") = py::none())
      .def("__len__", &PointPatch::size)
      .def_property_readonly("points", &PointPatch::points)
      .def_property_readonly("box_lo", [](const PointPatch& p) { return p.box().lo; })
      .def_property_readonly("box_hi", [](const PointPatch& p) { return p.box().hi; })
      .def_property_readonly("declared_R", &PointPatch::declared_R);

  m.def("read_patch", &read_patch, py::arg("path"));
  m.def("write_patch", py::overload_cast<const std::string&, const PointPatch&, std::optional<double>>(&write_patch),
        py::arg("path"), py::arg("patch"), py::arg("min_distance") = py::none());

  m.def("cubic_lattice", [](const Point3& lo, const Point3& hi) { return cubic_lattice(make_box(lo, hi)); },
        py::arg("box_lo"), py::arg("box_hi"));
  m.def("c4v_example", [](const Point3& lo, const Point3& hi) { return c4v_example(make_box(lo, hi)); },
        py::arg("box_lo"), py::arg("box_hi"));
  m.def(
      "hex_lattice",
      [](double lambda, double mu, const Point3& lo, const Point3& hi, bool rescale) {
        return hex_lattice(HexLatticeSpec{lambda, mu, rescale}, make_box(lo, hi));
      },
      py::arg("lam"), py::arg("mu"), py::arg("box_lo"), py::arg("box_hi"), py::arg("rescale") = false);
  m.def(
      "hex_bilattice",
      [](double lambda, double mu, double t_z, const Point3& lo, const Point3& hi, bool rescale) {
        return hex_bilattice(BiLatticeSpec{{lambda, mu, rescale}, Vec3(0, 0, t_z)}, make_box(lo, hi));
      },
      py::arg("lam"), py::arg("mu"), py::arg("t_z"), py::arg("box_lo"), py::arg("box_hi"),
      py::arg("rescale") = false);
  m.def("antiprism_points", &antiprism_points, py::arg("a"), py::arg("b"));

  m.def("packing_diameter", &packing_diameter, py::arg("patch"));
  m.def("covering_radius", [](const PointPatch& p) { return covering_radius(p); }, py::arg("patch"));

  m.def(
      "cluster_count",
      [](const PointPatch& p, double rho) { return cluster_classes(p, rho).N(); }, py::arg("patch"),
      py::arg("rho"));
  m.def(
      "cluster_group",
      [](const PointPatch& p, const Point3& center, double rho) { return group_dict(stabilizer(cluster(p, center, rho))); },
      py::arg("patch"), py::arg("center"), py::arg("rho"));
  m.def(
      "group_from_matrices",
      [](const std::vector<Mat3>& gens) {
        std::vector<OrthogonalMap> maps;
        for (const auto& g : gens) maps.push_back(OrthogonalMap::from_matrix(g));
        return group_dict(group_from_generators(maps));
      },
      py::arg("generators"));
  m.def(
      "local_criterion",
      [](const PointPatch& p, double rho0, double R) { return verdict_dict(local_criterion(p, rho0, R)); },
      py::arg("patch"), py::arg("rho0"), py::arg("R"));

  m.def("bound_table", [] {
    py::list rows;
    for (const auto& r : bound_table()) {
      py::dict d;
      d["group"] = r.label;
      d["order"] = r.order;
      d["bound"] = r.bound_str();
      d["reference"] = r.reference;
      rows.append(d);
    }
    return rows;
  });
  m.def("bound_lookup", [](const std::string& label) { return bound_lookup(label).bound_str(); }, py::arg("label"));
  m.def("tower_bound_radius", &tower_bound_radius, py::arg("group_order"));
  m.def("shtogrin_step_bound", &shtogrin_step_bound, py::arg("n"));

  m.def(
      "optimize_lemma1",
      [](int grid, int threads, int max_iterations, double epsilon) {
        return report_dict(optimize_lemma1(budget(grid, threads, max_iterations, epsilon)));
      },
      py::arg("grid") = 200, py::arg("threads") = 1, py::arg("max_iterations") = 600, py::arg("epsilon") = 1e-6);
  m.def(
      "optimize_lemma2",
      [](int grid, int threads, int max_iterations, double epsilon) {
        return report_dict(optimize_lemma2(budget(grid, threads, max_iterations, epsilon)));
      },
      py::arg("grid") = 200, py::arg("threads") = 1, py::arg("max_iterations") = 600, py::arg("epsilon") = 1e-6);
}
