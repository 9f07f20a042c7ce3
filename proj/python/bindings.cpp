// Python bindings: a thin layer over catalog groups and their stacking
// structures.  Words cross the boundary as strings of letter names.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "autostack/catalog.hpp"
#include "autostack/cayley.hpp"
#include "autostack/error.hpp"
#include "autostack/stacking.hpp"
#include "autostack/textio.hpp"
#include "autostack/vankampen.hpp"

namespace py = pybind11;
using namespace autostack;

namespace {

  class Group {
   public:
    explicit Group(std::string const& name) : _entry(load_entry(name)) {
      _stacking = cprs_to_stacking(process(lift_srs(_entry.rules)).system);
    }

    static Group from_bundle(std::string const& text) {
      Group g;
      g._stacking        = parse_stacking_bundle(text);
      g._entry.name      = "bundle";
      g._entry.alphabet  = g._stacking.alphabet();
      return g;
    }

    std::string name() const {
      return _entry.name;
    }

    std::vector<std::string> letters() const {
      return alphabet().names();
    }

    std::string normal_form(std::string const& w, std::size_t max_steps) const {
      return show(stacking_normal_form(_stacking, word(w), max_steps));
    }

    bool is_identity(std::string const& w, std::size_t max_steps) const {
      return stacking_normal_form(_stacking, word(w), max_steps).empty();
    }

    std::vector<std::pair<std::string, std::string>> reduce_trace(std::string const& w,
                                                                  std::size_t max_steps) const {
      auto t = reduce(stacking_to_cprs(_stacking), word(w), max_steps);
      if (!t.complete) {
        fail(ErrorKind::budget, "reduction did not finish");
      }
      std::vector<std::pair<std::string, std::string>> steps;
      for (auto const& s : t.steps) {
        steps.emplace_back(show(concat(s.rule.lhs, s.suffix)), show(concat(s.rule.rhs, s.suffix)));
      }
      return steps;
    }

    std::string phi(std::string const& y, std::string const& a) const {
      Word x = word(a);
      if (x.size() != 1) {
        fail(ErrorKind::usage, "expected a single letter, got '" + a + "'");
      }
      return show(_stacking.phi(word(y), x.front()));
    }

    py::dict ball(std::size_t radius) const {
      auto        b = build_ball(_stacking, radius);
      std::size_t recursive = 0, inside = 0;
      for (auto const& e : b.edges()) {
        inside += e.target.has_value();
        recursive += e.target && e.kind == EdgeClass::recursive;
      }
      auto descent = check_wellfounded(flow_from_stacking(_stacking, b), b);
      py::dict d;
      d["vertices"]         = b.vertices().size();
      d["edges_inside"]     = inside;
      d["recursive"]        = recursive;
      d["tree_spans"]       = b.tree_spans();
      d["descent_acyclic"]  = descent.acyclic;
      d["descent_depth"]    = descent.max_depth;
      d["fellow_traveler"]  = fellow_traveler(b).k;
      return d;
    }

    py::dict diagram(std::string const& w) const {
      auto d      = build_diagram(_stacking, word(w));
      auto report = validate_diagram(d, stacking_presentation(_stacking));
      std::vector<std::string> faces;
      for (std::size_t f = 0; f < d.faces.size(); ++f) {
        faces.push_back(show(d.face_word(f)));
      }
      py::dict out;
      out["vertices"] = d.vertex_count;
      out["edges"]    = d.edge_count();
      out["faces"]    = faces;
      out["boundary"] = show(d.boundary);
      out["problems"] = report.problems;
      out["json"]     = diagram_json(d);
      return out;
    }

    std::vector<std::string> relators() const {
      std::vector<std::string> out;
      for (auto const& r : stacking_presentation(_stacking).relators) {
        out.push_back(show(r));
      }
      return out;
    }

    std::string bundle() const {
      return format_stacking_bundle(_stacking);
    }

   private:
    Group() = default;

    Alphabet const& alphabet() const {
      return _stacking.alphabet();
    }

    Word word(std::string const& w) const {
      return parse_word(alphabet(), w);
    }

    std::string show(Word const& w) const {
      return alphabet().format(w);
    }

    CatalogEntry      _entry;
    StackingStructure _stacking;
  };

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Autostackable group structures";

  // Kept alive by the module attribute.
  static PyObject* error = PyErr_NewException("autostack.Error", PyExc_RuntimeError, nullptr);
  m.attr("Error")        = py::handle(error);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) {
        std::rethrow_exception(p);
      }
    } catch (Error const& e) {
      PyErr_SetString(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.def("entries", &builtin_entries, "Names of the built-in catalog entries");

  py::class_<Group>(m, "Group")
      .def(py::init<std::string const&>(), py::arg("name"))
      .def_static("from_bundle", &Group::from_bundle, py::arg("text"))
      .def_property_readonly("name", &Group::name)
      .def_property_readonly("letters", &Group::letters)
      .def("normal_form", &Group::normal_form, py::arg("word"), py::arg("max_steps") = 1000000)
      .def("is_identity", &Group::is_identity, py::arg("word"), py::arg("max_steps") = 1000000)
      .def("reduce_trace", &Group::reduce_trace, py::arg("word"),
           py::arg("max_steps") = 1000000)
      .def("phi", &Group::phi, py::arg("y"), py::arg("letter"))
      .def("ball", &Group::ball, py::arg("radius"))
      .def("diagram", &Group::diagram, py::arg("word"))
      .def("relators", &Group::relators)
      .def("bundle", &Group::bundle);
}
