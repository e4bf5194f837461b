#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cubecat/cli.hpp"
#include "cubecat/corpus.hpp"
#include "cubecat/equivalence.hpp"
#include "cubecat/pipeline.hpp"
#include "cubecat/relations.hpp"

namespace py = pybind11;
using namespace cubecat;

namespace {

LinkDiagram diagram(const std::string& pd, const std::string& orient) {
  return parse_pd_file_text(pd, parse_orient_mode(orient));
}

FrobeniusSystem system_named(const std::string& theory) { return builtin_system(parse_theory(theory)); }

std::map<int, long long> as_map(const LaurentPoly& p) { return {p.begin(), p.end()}; }

}  // namespace

PYBIND11_MODULE(_cubecat, m) {
  m.doc() = "Khovanov, nested Khovanov and odd Khovanov homology of link diagrams";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<CubeError>(m, "CubeError", PyExc_RuntimeError);
  py::register_exception<HomologyError>(m, "HomologyError", PyExc_ValueError);

  py::class_<LinkDiagram>(m, "Diagram")
      .def_property_readonly("crossings", &LinkDiagram::crossing_count)
      .def_property_readonly("c_plus", &LinkDiagram::c_plus)
      .def_property_readonly("c_minus", &LinkDiagram::c_minus)
      .def_property_readonly("components", &LinkDiagram::components)
      .def_property_readonly("faces", [](const LinkDiagram& d) { return d.planar_map().face_count(); })
      .def("mirror", &LinkDiagram::mirror)
      .def("serialize", &LinkDiagram::serialize)
      .def("__repr__", [](const LinkDiagram& d) { return "Diagram('" + d.serialize() + "')"; });

  m.def("parse_pd", &diagram, py::arg("pd"), py::arg("orient") = "strict",
        "Parse a PD code (the text of a .pd file is accepted as well).");

  m.def(
      "homology_json",
      [](const std::string& pd, const std::string& theory, const std::string& coeff, std::optional<int> outer,
         const std::string& orient, int jobs) {
        py::gil_scoped_release release;
        const HomologyTable h =
            compute_homology(diagram(pd, orient), system_named(theory), Coefficients::parse(coeff), outer, jobs);
        return homology_json(h, graded_euler_characteristic(h));
      },
      py::arg("pd"), py::arg("theory") = "kh", py::arg("coeff") = "Z", py::arg("outer_face") = py::none(),
      py::arg("orient") = "strict", py::arg("jobs") = 1);

  m.def(
      "euler_characteristic",
      [](const std::string& pd, const std::string& theory, const std::string& orient) {
        return as_map(graded_euler_characteristic(build_pipeline(diagram(pd, orient), system_named(theory)).complex));
      },
      py::arg("pd"), py::arg("theory") = "kh", py::arg("orient") = "strict");

  m.def(
      "kauffman_bracket",
      [](const std::string& pd, const std::string& orient) { return as_map(kauffman_bracket_oracle(diagram(pd, orient))); },
      py::arg("pd"), py::arg("orient") = "strict");

  m.def(
      "verify_theorem1_json",
      [](const std::string& pd, const std::string& orient) {
        py::gil_scoped_release release;
        return verify_theorem1(diagram(pd, orient)).to_json().dump();
      },
      py::arg("pd"), py::arg("orient") = "strict");

  m.def(
      "compare_mod2_json",
      [](const std::string& pd, const std::string& orient) { return compare_mod2(diagram(pd, orient)).to_json().dump(); },
      py::arg("pd"), py::arg("orient") = "strict");

  m.def(
      "outer_face_json",
      [](const std::string& pd, const std::string& orient) {
        return verify_outer_face_invariance(diagram(pd, orient)).to_json().dump();
      },
      py::arg("pd"), py::arg("orient") = "strict");

  m.def(
      "random_signs_json",
      [](const std::string& pd, const std::string& theory, int trials, std::uint64_t seed, const std::string& orient) {
        return random_sign_trials(diagram(pd, orient), system_named(theory), trials, seed).to_json().dump();
      },
      py::arg("pd"), py::arg("theory") = "kh", py::arg("trials") = 100, py::arg("seed") = 1,
      py::arg("orient") = "strict");

  m.def(
      "relations_json", [](const std::string& theory) { return check_relations(system_named(theory)).to_json(); },
      py::arg("theory"));

  m.def(
      "classify_signs_json",
      [](const std::vector<std::string>& corpus, const std::string& orient) {
        std::vector<LinkDiagram> ds;
        for (const auto& pd : corpus) ds.push_back(diagram(pd, orient));
        py::gil_scoped_release release;
        return classify_sign_systems(ds, 1, true).to_json().dump();
      },
      py::arg("corpus") = std::vector<std::string>{}, py::arg("orient") = "strict");

  m.def(
      "run",
      [](const std::string& subcommand, py::kwargs kwargs) {
        RunConfig c;
        c.subcommand = subcommand;
        for (const auto& [k, v] : kwargs) {
          const std::string key = py::str(k);
          if (key == "theory") c.theory = v.cast<std::string>();
          else if (key == "coeff") c.coefficients = v.cast<std::string>();
          else if (key == "pd") c.pd = v.cast<std::string>();
          else if (key == "file") c.file = v.cast<std::string>();
          else if (key == "orient") c.orient = v.cast<std::string>();
          else if (key == "outer_face") c.outer_face = v.cast<int>();
          else if (key == "seed") c.seed = v.cast<std::uint64_t>();
          else if (key == "jobs") c.jobs = v.cast<int>();
          else if (key == "theorem") c.theorem = py::str(v);
          else if (key == "trials") c.trials = v.cast<int>();
          else if (key == "dump_cube") c.dump_cube = v.cast<bool>();
          else if (key == "dump_states") c.dump_states = v.cast<bool>();
          else throw py::type_error("unknown option '" + key + "'");
        }
        RunOutput r;
        {
          py::gil_scoped_release release;
          r = run_capture(c);
        }
        return py::make_tuple(r.status, r.json, r.error);
      },
      py::arg("subcommand"), "Run a CLI subcommand; returns (status, json, stderr text).");
}
