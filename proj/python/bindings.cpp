#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include "cli.hpp"
#include "ttquant/coords.hpp"
#include "ttquant/errors.hpp"
#include "ttquant/parser.hpp"
#include "ttquant/quantize.hpp"
#include "ttquant/spectral.hpp"

namespace py = pybind11;
using namespace ttq;

namespace {

QuantizationConfig config(const std::string& map, const ContextPtr& ctx) {
  return QuantizationConfig::for_map(map_kind_from_string(map), ctx);
}

}  // namespace

PYBIND11_MODULE(_ttquant, m) {
  m.doc() = "Exact quantization maps on cotangent bundles";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<ContextMismatchError>(m, "ContextMismatchError", error.ptr());
  py::register_exception<PoleError>(m, "PoleError", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<SingularError>(m, "SingularError", error.ptr());

  py::class_<PhaseContext, std::shared_ptr<PhaseContext>>(m, "Context")
      .def(py::init([](int n) { return std::const_pointer_cast<PhaseContext>(make_context(n)); }), py::arg("n"))
      .def_property_readonly("n", &PhaseContext::n)
      .def(
          "parse",
          [](const std::shared_ptr<PhaseContext>& ctx, const std::string& text) {
            ContextPtr c = ctx;
            return parse(text, c, builtin_resolver(c));
          },
          py::arg("text"), "Parse an observable; L1..L3, H_SHO and H_FP are available as names.");

  py::class_<PhaseFunction>(m, "Function")
      .def("__str__", [](const PhaseFunction& f) { return format(f); })
      .def("__repr__", [](const PhaseFunction& f) { return "Function('" + format(f) + "')"; })
      .def(py::self == py::self)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def("is_zero", &PhaseFunction::is_zero)
      .def("diff", [](const PhaseFunction& f, const std::string& var) {
        const auto v = f.context()->lookup(var);
        if (!v) throw VariableError("unknown variable '" + var + "'");
        return differentiate(f, *v);
      });

  py::class_<DiffOperator>(m, "Operator")
      .def("__str__", [](const DiffOperator& a) { return format(a); })
      .def("__repr__", [](const DiffOperator& a) { return "Operator('" + format(a) + "')"; })
      .def(py::self == py::self)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def("__matmul__", [](const DiffOperator& a, const DiffOperator& b) { return compose(a, b); })
      .def("__rmul__", [](const DiffOperator& a, const PhaseFunction& f) { return f * a; })
      .def("__call__", [](const DiffOperator& a, const PhaseFunction& f) { return apply(a, f); })
      .def("is_zero", &DiffOperator::is_zero)
      .def_property_readonly("order", &DiffOperator::order)
      .def("restrict_to_polarized", [](const DiffOperator& a) { return restrict_to_polarized(a); })
      .def("preserves_polarization", [](const DiffOperator& a) { return preserves_polarization(a); })
      .def("to_json", [](const DiffOperator& a) { return to_json(a).dump(); });

  m.def("multiplication", &DiffOperator::from_function, py::arg("f"));
  m.def("quantize", [](const PhaseFunction& f, const std::string& map) { return quantize(f, config(map, f.context())); },
        py::arg("f"), py::arg("map") = "ks");
  m.def("commutator", &commutator, py::arg("a"), py::arg("b"));
  m.def("poisson_bracket", &poisson_bracket, py::arg("f"), py::arg("g"));
  m.def("tautological_field", [](const PhaseFunction& f) { return tautological_vf(f.context())(f); }, py::arg("f"));
  m.def("tuning_indicator", &tuning_indicator, py::arg("g"));

  py::class_<CotangentLift>(m, "CotangentLift")
      .def(py::init([](const std::shared_ptr<PhaseContext>& ctx, const std::string& name) {
             return cotangent_lift(transformation_by_name(name, ctx));
           }),
           py::arg("context"), py::arg("transform"))
      .def_property_readonly("new_momenta", [](const CotangentLift& l) {
        std::vector<std::string> out;
        for (const auto& p : l.new_momenta()) out.push_back(format(p));
        return out;
      })
      .def("pushforward", [](const CotangentLift& l, const PhaseFunction& f) { return pushforward_function(f, l); })
      .def("pullback", [](const CotangentLift& l, const PhaseFunction& f) { return pullback_function(f, l); })
      .def("pushforward_operator", [](const CotangentLift& l, const DiffOperator& a) { return pushforward_operator(a, l); });

  m.def(
      "_oscillator_spectrum",
      [](int points, double half_width, const std::map<std::string, double>& params, std::size_t levels) {
        return to_json(oscillator_spectrum(Grid1D(half_width, points), params, levels)).dump();
      },
      py::arg("points"), py::arg("half_width"), py::arg("params"), py::arg("levels"));

  m.def("_check_suite", [](std::uint64_t seed) {
    std::vector<py::dict> rows;
    for (const auto& r : cli::check_suite(seed)) {
      py::dict d;
      d["group"] = r.group;
      d["check"] = r.label;
      d["pass"] = r.passed;
      d["detail"] = r.detail;
      rows.push_back(d);
    }
    return rows;
  });

  m.def("_run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
