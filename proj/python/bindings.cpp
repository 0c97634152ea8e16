#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "treeshift/errors.hpp"
#include "treeshift/io.hpp"

namespace py = pybind11;
using namespace treeshift;

namespace {

py::object py_int(const BigInt& x) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

// Reports cross the boundary as JSON text; the Python side turns them into dicts.
std::string dump(const Json& j) { return j.dump(); }

class Tree {
 public:
  Tree(const std::string& spec, std::size_t depth) : tree_(materialize(parse_tree_argument(spec), depth)) {}

  const LevelTree& get() const { return tree_; }

 private:
  LevelTree tree_;
};

RationalFunction rational_from(const std::string& json_text) {
  auto f = function_from_json(Json::parse(json_text));
  if (auto* r = std::get_if<RationalFunction>(&f)) return *r;
  throw InvalidArgument("expected a rational function (num/den entries)");
}

}  // namespace

PYBIND11_MODULE(_treeshift, m) {
  m.doc() = "Shift operators on Hardy spaces of rooted trees";

  // Translators run newest first, so the base class is registered before its subclasses.
  auto base = py::register_exception<Error>(m, "TreeshiftError");
  py::register_exception<DepthError>(m, "DepthError", base.ptr());
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError", base.ptr());
  py::register_exception<ContradictionError>(m, "ContradictionError", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());

  py::class_<Tree>(m, "Tree")
      .def(py::init<const std::string&, std::size_t>(), py::arg("spec"), py::arg("depth") = 32)
      .def_property_readonly("depth", [](const Tree& t) { return t.get().depth(); })
      .def_property_readonly("level_sizes",
                             [](const Tree& t) {
                               py::list out;
                               for (const auto& g : t.get().level_sizes()) out.append(py_int(g));
                               return out;
                             })
      .def("gamma", [](const Tree& t, std::size_t n) { return py_int(t.get().gamma(n)); })
      .def("gamma_sub",
           [](const Tree& t, std::size_t m, std::size_t level, const std::string& index) {
             return py_int(t.get().gamma_sub(m, {level, BigInt(index)}));
           })
      .def("K", [](const Tree& t, std::size_t m, std::size_t r) { return py_int(t.get().K(m, r)); })
      .def("leafless", [](const Tree& t) { return t.get().is_leafless_up_to(); })
      .def("describe", [](const Tree& t) { return dump(describe_tree(t.get())); })
      .def("norm",
           [](const Tree& t, const std::string& op, double p, unsigned power) {
             return dump(to_json(operator_norm(t.get(), parse_shift_kind(op), Exponent(p), power)));
           },
           py::arg("op"), py::arg("p") = 1.0, py::arg("power") = 1)
      .def("function_norm",
           [](const Tree& t, const std::string& f, double p) {
             return dump(to_json(hardy_norm(t.get(), rational_from(f), Exponent(p))));
           },
           py::arg("function"), py::arg("p") = 1.0)
      .def("apply",
           [](const Tree& t, const std::string& op, const std::string& f, unsigned power) {
             const auto g = rational_from(f);
             return dump(function_to_json(parse_shift_kind(op) == ShiftKind::forward
                                              ? apply_forward(t.get(), g, power)
                                              : apply_backward(t.get(), g, power)));
           },
           py::arg("op"), py::arg("function"), py::arg("power") = 1)
      .def("radius",
           [](const Tree& t, const std::string& op, double p, unsigned max_power) {
             return dump(
                 to_json(spectral_radius(t.get(), parse_shift_kind(op), Exponent(p), max_power)));
           },
           py::arg("op"), py::arg("p") = 1.0, py::arg("max_power") = 10)
      .def("witness",
           [](const Tree& t, const std::string& kind, const std::string& lambda, double p,
              const std::string& vertex, const std::string& mode) {
             const Exponent e(p);
             if (kind == "pointS") return dump(to_json(point_spectrum_S(t.get())));
             const Lambda l = parse_lambda(lambda);
             if (kind == "membershipB") {
               return dump(to_json(
                   point_spectrum_membership_B(t.get(), l.value, e, parse_hardy_mode(mode))));
             }
             if (kind == "eigenB") {
               return dump(to_json(l.exact ? eigenfunction_B(t.get(), *l.exact, e)
                                           : eigenfunction_B(t.get(), l.value, e)));
             }
             if (kind == "resolventS") {
               const VertexId w = parse_vertex(vertex);
               return dump(to_json(l.exact ? resolvent_witness_S(t.get(), w, *l.exact, e)
                                           : resolvent_witness_S(t.get(), w, l.value, e)));
             }
             if (kind == "blowupS") {
               return dump(to_json(l.exact ? nonsurjectivity_blowup_S(t.get(), *l.exact, e)
                                           : nonsurjectivity_blowup_S(t.get(), l.value, e)));
             }
             throw InvalidArgument("unknown witness kind '" + kind + "'");
           },
           py::arg("kind"), py::arg("lam") = "0", py::arg("p") = 1.0, py::arg("vertex") = "0:0",
           py::arg("mode") = "Hp")
      .def("isometry",
           [](const Tree& t, double p) { return dump(to_json(isometry_check(t.get(), Exponent(p)))); },
           py::arg("p") = 1.0)
      .def("hypercyclic",
           [](const Tree& t, const std::string& op) {
             return dump(to_json(hypercyclicity_verdict(t.get(), parse_shift_kind(op))));
           },
           py::arg("op"))
      .def("kgs_suite",
           [](const Tree& t, std::size_t samples, unsigned n_max, double p, std::uint64_t seed) {
             return dump(to_json(kgs_suite(t.get(), samples, n_max, Exponent(p), seed)));
           },
           py::arg("samples") = 100, py::arg("n_max") = 10, py::arg("p") = 1.0,
           py::arg("seed") = 1)
      .def("verify",
           [](const Tree& t, const std::string& op, unsigned power, double p, std::size_t trials,
              std::uint64_t seed) {
             const auto k = parse_shift_kind(op);
             Json out{{"lower_bound", to_json(randomized_norm_lower_bound(t.get(), k, power,
                                                                         Exponent(p), trials, seed))},
                      {"attainment", to_json(extremal_attainment(t.get(), k, power, Exponent(p)))}};
             return dump(out);
           },
           py::arg("op"), py::arg("power") = 1, py::arg("p") = 1.0, py::arg("trials") = 500,
           py::arg("seed") = 1);

  m.def("gallery_list", [] {
    Json out = Json::array();
    for (const auto& info : gallery_list()) {
      out.push_back(Json{{"name", info.name},
                         {"description", info.description},
                         {"defaults", info.default_params}});
    }
    return dump(out);
  });
  m.def(
      "self_test",
      [](const std::string& name, const std::string& params, std::size_t depth,
         const std::vector<double>& p_list, unsigned max_power) {
        return dump(to_json(self_test(build_gallery(name, Json::parse(params)), depth, p_list,
                                      max_power)));
      },
      py::arg("name"), py::arg("params") = "{}", py::arg("depth") = 32,
      py::arg("p_list") = std::vector<double>{1.0, 2.0}, py::arg("max_power") = 6);
}
