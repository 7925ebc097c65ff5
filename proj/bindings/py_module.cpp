// Python bindings for the least gradient toolkit: admissibility checks,
// level-set solves, truncation runs, the grid oracle, and problem-file IO.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lg/admissibility.hpp"
#include "lg/approximation.hpp"
#include "lg/fixtures.hpp"
#include "lg/io.hpp"
#include "lg/oracle.hpp"
#include "lg/solver.hpp"

namespace py = pybind11;
using namespace lg;

namespace {

std::pair<double, double> tup(Point2 p) { return {p.x, p.y}; }

std::vector<std::pair<double, double>> tups(const std::vector<Point2>& ps) {
  std::vector<std::pair<double, double>> out;
  out.reserve(ps.size());
  for (Point2 p : ps) out.push_back(tup(p));
  return out;
}

InfinitePolygonGenerator make_generator(const std::string& kind) {
  if (kind == "hex") return InfinitePolygonGenerator::hex();
  if (kind == "cascade") return InfinitePolygonGenerator::cascade();
  fail(Err::OutOfRange, "unknown generator kind: " + kind);
}

InfiniteMode make_mode(const std::string& kind, const std::string& mode) {
  if (mode == "tdnsk") return InfiniteMode::TdNsk;
  if (mode == "main3") return InfiniteMode::Main3;
  if (mode.empty()) return kind == "hex" ? InfiniteMode::TdNsk : InfiniteMode::Main3;
  fail(Err::OutOfRange, "unknown mode: " + mode);
}

}  // namespace

PYBIND11_MODULE(leastgrad, mod) {
  mod.doc() = "Least gradient solver and verification toolkit for convex polygons";

  py::register_exception<Error>(mod, "LgError");

  py::class_<BoundaryDatum>(mod, "BoundaryDatum")
      .def("tv", &BoundaryDatum::tv)
      .def("value", &BoundaryDatum::value, py::arg("s"))
      .def_property_readonly("polygon_vertices",
                             [](const BoundaryDatum& f) {
                               return tups(f.polygon().vertices());
                             })
      .def_property_readonly("num_pieces",
                             [](const BoundaryDatum& f) { return f.pieces().size(); })
      .def_property_readonly("num_jumps",
                             [](const BoundaryDatum& f) { return f.jumps().size(); });

  py::class_<Witness>(mod, "Witness")
      .def_readonly("check", &Witness::check)
      .def_readonly("side_index", &Witness::side_index)
      .def_readonly("detail", &Witness::detail)
      .def_readonly("lhs", &Witness::lhs)
      .def_readonly("rhs", &Witness::rhs)
      .def_readonly("relation", &Witness::relation);

  py::class_<Hump>(mod, "Hump")
      .def_readonly("side_index", &Hump::side_index)
      .def_readonly("e", &Hump::e)
      .def_readonly("is_max", &Hump::is_max)
      .def_readonly("a_s", &Hump::a_s)
      .def_readonly("b_s", &Hump::b_s)
      .def_property_readonly("a", [](const Hump& h) { return tup(h.a); })
      .def_property_readonly("b", [](const Hump& h) { return tup(h.b); })
      .def_property_readonly("y", [](const Hump& h) { return tup(h.y); })
      .def_property_readonly("z", [](const Hump& h) { return tup(h.z); });

  py::class_<AdmissibilityReport>(mod, "AdmissibilityReport")
      .def_readonly("overall", &AdmissibilityReport::overall)
      .def_readonly("humps", &AdmissibilityReport::humps)
      .def_readonly("witnesses", &AdmissibilityReport::witnesses);

  py::class_<PlateauRegion>(mod, "PlateauRegion")
      .def_readonly("value", &PlateauRegion::value)
      .def_property_readonly("hull", [](const PlateauRegion& p) {
        return tups(p.hull.vertices());
      });

  py::class_<SolutionField>(mod, "SolutionField")
      .def_readonly("tv", &SolutionField::tv)
      .def_readonly("sup_norm", &SolutionField::sup_norm)
      .def_property_readonly("range",
                             [](const SolutionField& u) {
                               return std::pair{u.range_min, u.range_max};
                             })
      .def_property_readonly("levels",
                             [](const SolutionField& u) { return u.chords.levels; })
      .def_readonly("plateaus", &SolutionField::plateaus)
      .def("chords_at",
           [](const SolutionField& u, std::size_t k) {
             if (k >= u.chords.chords_at.size())
               fail(Err::OutOfRange, "level index out of range");
             std::vector<std::pair<std::pair<double, double>, std::pair<double, double>>>
                 out;
             for (const Chord& c : u.chords.chords_at[k])
               out.push_back({tup(c.p), tup(c.q)});
             return out;
           },
           py::arg("level_index"))
      .def("evaluate",
           [](const SolutionField& u, double x, double y) {
             return evaluate(u, {x, y});
           },
           py::arg("x"), py::arg("y"));

  py::class_<EstimateReport>(mod, "EstimateReport")
      .def_readonly("sup_u", &EstimateReport::sup_u)
      .def_readonly("sup_f", &EstimateReport::sup_f)
      .def_readonly("tv_u", &EstimateReport::tv_u)
      .def_readonly("diam_times_tvf", &EstimateReport::diam_times_tvf)
      .def_readonly("sup_ok", &EstimateReport::sup_ok)
      .def_readonly("tv_ok", &EstimateReport::tv_ok);

  py::class_<BVSolution>(mod, "BVSolution")
      .def_readonly("lower", &BVSolution::lower)
      .def_readonly("upper", &BVSolution::upper)
      .def_readonly("certificate_lower", &BVSolution::certificate_lower)
      .def_readonly("certificate_upper", &BVSolution::certificate_upper)
      .def_readonly("schedule", &BVSolution::schedule);

  py::class_<InfiniteSolution>(mod, "InfiniteSolution")
      .def_readonly("field", &InfiniteSolution::field)
      .def_readonly("tv_ledger", &InfiniteSolution::tv_ledger)
      .def_readonly("e_values", &InfiniteSolution::e_values)
      .def_readonly("estimates", &InfiniteSolution::estimates);

  py::class_<GridProblem>(mod, "GridProblem")
      .def_readonly("N", &GridProblem::N)
      .def_readonly("h", &GridProblem::h)
      .def_readonly("mask", &GridProblem::mask)
      .def_readonly("ring_values", &GridProblem::ring_values);

  py::class_<GridField>(mod, "GridField")
      .def_readonly("N", &GridField::N)
      .def_readonly("values", &GridField::values)
      .def_readonly("iterations", &GridField::iterations)
      .def_readonly("residual", &GridField::residual)
      .def_readonly("converged", &GridField::converged)
      .def_readonly("energy_trace", &GridField::energy_trace);

  py::class_<OracleComparison>(mod, "OracleComparison")
      .def_readonly("l1", &OracleComparison::l1)
      .def_readonly("sup_off_band", &OracleComparison::sup_off_band)
      .def_readonly("cells", &OracleComparison::cells)
      .def_readonly("band_cells", &OracleComparison::band_cells);

  mod.def("classify",
          [](const BoundaryDatum& f, const std::string& dcc_orientation) {
            return classify(f, dcc_orientation == "paper" ? DccOrientation::Paper
                                                          : DccOrientation::Monotone);
          },
          py::arg("datum"), py::arg("dcc_orientation") = "monotone");
  mod.def("min_feature_n", [](const BoundaryDatum& f) { return min_feature_scale(f).n_min; },
          py::arg("datum"));
  mod.def("solve_continuous", &solve_continuous, py::arg("datum"), py::arg("m") = 1024);
  mod.def("solve_bv", &solve_bv, py::arg("datum"), py::arg("schedule"),
          py::arg("m") = 1024);
  mod.def("solve_infinite",
          [](const std::string& kind, int depth, int m, double cauchy_tol,
             const std::string& mode) {
            return solve_infinite(make_generator(kind), make_mode(kind, mode), depth, m,
                                  cauchy_tol);
          },
          py::arg("kind"), py::arg("depth"), py::arg("m") = 1024,
          py::arg("cauchy_tol") = 1e-3, py::arg("mode") = "");
  mod.def("verify_estimates", &verify_estimates, py::arg("field"), py::arg("datum"));
  mod.def("rasterize",
          [](const BoundaryDatum& f, int N) { return rasterize(f.polygon(), f, N); },
          py::arg("datum"), py::arg("N"));
  mod.def("tv_minimize", &tv_minimize, py::arg("grid_problem"),
          py::arg("max_iter") = 20000, py::arg("tol") = -1.0);
  mod.def("compare", &compare, py::arg("field"), py::arg("grid_field"),
          py::arg("grid_problem"));
  mod.def("parse_problem",
          [](const std::string& text) {
            const Problem p = parse_problem(text);
            py::dict out;
            out["datum"] = p.datum ? py::cast(*p.datum) : py::none();
            if (p.generator) {
              out["generator_kind"] = p.generator->kind;
              out["generator_mode"] =
                  p.generator->mode == InfiniteMode::TdNsk ? "tdnsk" : "main3";
            } else {
              out["generator_kind"] = py::none();
              out["generator_mode"] = py::none();
            }
            return out;
          },
          py::arg("text"));
  mod.def("problem_to_json",
          [](const BoundaryDatum& f) { return problem_to_json(f); }, py::arg("datum"));

  py::module_ fx = mod.def_submodule("fixtures", "Built-in boundary data");
  fx.def("f_const", &fixtures::f_const, py::arg("c"));
  fx.def("f_x", &fixtures::f_x);
  fx.def("f_jump", &fixtures::f_jump);
  fx.def("f_hump", &fixtures::f_hump);
  fx.def("f_hump_far", &fixtures::f_hump_far);
  fx.def("f_twohump", &fixtures::f_twohump);
  fx.def("gallery_d1", &fixtures::gallery_d1);
  fx.def("gallery_d2_far", &fixtures::gallery_d2_far);
  fx.def("gallery_d2_companions", &fixtures::gallery_d2_companions);
  fx.def("gallery_d3", &fixtures::gallery_d3);
  fx.def("gallery_opc", &fixtures::gallery_opc);
  fx.def("gallery_dcc_far", &fixtures::gallery_dcc_far);
  fx.def("gallery_dcc_companion", &fixtures::gallery_dcc_companion);
}
