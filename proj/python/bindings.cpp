#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fock/carleson.hpp"
#include "fock/io.hpp"
#include "fock/lattice.hpp"
#include "fock/norms.hpp"
#include "fock/toeplitz.hpp"
#include "fock/transforms.hpp"
#include "fock/verify.hpp"

namespace py = pybind11;
using namespace fock;

namespace {

using Release = py::call_guard<py::gil_scoped_release>;

py::dict report_dict(const CarlesonReport& r) {
  py::list tests;
  for (const auto& t : r.tests) {
    py::dict d;
    d["name"] = t.name;
    d["value"] = t.value;
    d["verdict"] = to_string(t.verdict);
    d["role"] = to_string(t.role);
    d["note"] = t.note;
    d["curve"] = t.curve;
    tests.append(d);
  }
  py::dict d;
  d["headline"] = r.headline();
  d["regime"] = to_string(r.regime);
  d["p"] = r.p;
  d["q"] = r.q;
  d["classification"] = to_string(r.classification);
  d["consistent"] = r.consistent;
  d["has_divergence"] = r.has_divergence();
  d["normalization"] = r.normalization;
  d["notes"] = r.notes;
  d["tests"] = tests;
  if (r.conjugate_exponents) d["conjugate_exponents"] = *r.conjugate_exponents;
  return d;
}

Lattice lattice_for(const Measure& mu, double r, double grid_radius) {
  return make_lattice(r, grid_radius > 0.0 ? grid_radius : default_grid_radius(mu));
}

}  // namespace

PYBIND11_MODULE(_fockcarleson, m) {
  m.doc() = "Fock space toolkit: Berezin transforms, Fock-Carleson measures, Toeplitz operators";

  py::enum_<Verdict>(m, "Verdict")
      .value("holds", Verdict::holds)
      .value("fails", Verdict::fails)
      .value("inconclusive", Verdict::inconclusive);

  py::class_<FockWeight>(m, "FockWeight")
      .def(py::init<double>(), py::arg("alpha") = 1.0)
      .def_property_readonly("alpha", &FockWeight::alpha)
      .def("__repr__", [](const FockWeight& w) { return "FockWeight(" + csv_number(w.alpha()) + ")"; });

  py::class_<QuadratureSpec>(m, "QuadratureSpec")
      .def(py::init<>())
      .def_readwrite("cutoff_radius", &QuadratureSpec::cutoff_radius)
      .def_readwrite("cells_per_unit", &QuadratureSpec::cells_per_unit)
      .def_readwrite("tolerance", &QuadratureSpec::tolerance)
      .def_readwrite("auto_cutoff", &QuadratureSpec::auto_cutoff);

  py::class_<Measure>(m, "Measure")
      .def_static("empty", &Measure::empty)
      .def_static(
          "atomic",
          [](const std::vector<std::pair<Complex, double>>& atoms) {
            std::vector<Atom> out;
            for (const auto& [z, mass] : atoms) out.push_back({ComplexPoint(z), mass});
            return Measure::atomic(std::move(out));
          },
          py::arg("atoms"), "atoms as (point, mass) pairs")
      .def_static(
          "dirac", [](Complex z, double mass) { return Measure::dirac(z, mass); }, py::arg("point") = Complex(0.0),
          py::arg("mass") = 1.0)
      .def_static("density", &Measure::density, py::arg("density"), py::arg("bound"),
                  py::arg("support_radius") = kInfinity)
      .def_static("radial", &Measure::radial, py::arg("profile"), py::arg("bound"),
                  py::arg("support_radius") = kInfinity)
      .def_static("gaussian", &Measure::gaussian, py::arg("beta"), py::arg("scale") = 1.0)
      .def_static("lebesgue", &Measure::lebesgue, py::arg("scale") = 1.0)
      .def_property_readonly("is_atomic", &Measure::is_atomic)
      .def_property_readonly("is_radial", &Measure::is_radial)
      .def_property_readonly("support_radius", &Measure::support_radius)
      .def("scaled", &Measure::scaled)
      .def(
          "total_mass", [](const Measure& mu) { return total_mass(mu).value.real(); }, Release())
      .def("__repr__", &Measure::describe);

  py::class_<EntireFunction>(m, "EntireFunction")
      .def_static("polynomial", &EntireFunction::polynomial, py::arg("coefficients"))
      .def_static("constant", &EntireFunction::constant)
      .def_static("monomial", &EntireFunction::monomial, py::arg("n"))
      .def_static("orthonormal", &EntireFunction::orthonormal, py::arg("n"))
      .def_static(
          "normalized_kernel", [](Complex z) { return EntireFunction::normalized_kernel(z); }, py::arg("center"))
      .def_static(
          "kernel_combination",
          [](const std::vector<std::pair<Complex, Complex>>& terms) {
            std::vector<KernelTerm> out;
            for (const auto& [c, z] : terms) out.push_back({c, ComplexPoint(z)});
            return EntireFunction::kernel_combination(std::move(out));
          },
          py::arg("terms"), "terms as (coefficient, center) pairs")
      .def_static("quadratic_exponential", &EntireFunction::quadratic_exponential, py::arg("a"),
                  py::arg("b") = Complex(0.0), py::arg("c") = Complex(0.0))
      .def_static("parse", [](const std::string& s) { return parse_function_spec(s); })
      .def(
          "__call__", [](const EntireFunction& f, Complex z, const FockWeight& w) { return eval(f, z, w); },
          py::arg("z"), py::arg("weight") = FockWeight(1.0))
      .def(
          "weighted", [](const EntireFunction& f, Complex z, const FockWeight& w) { return eval_weighted(f, z, w); },
          py::arg("z"), py::arg("weight") = FockWeight(1.0), "f(z) e^{-alpha|z|^2/2}")
      .def("__repr__", &EntireFunction::describe);

  py::class_<NormResult>(m, "NormResult")
      .def_readonly("value", &NormResult::value)
      .def_readonly("verdict", &NormResult::verdict)
      .def_readonly("note", &NormResult::note)
      .def("__repr__", [](const NormResult& r) {
        return "NormResult(" + csv_number(r.value) + ", " + to_string(r.verdict) + ")";
      });

  py::class_<ToeplitzMatrix>(m, "ToeplitzMatrix")
      .def_readonly("entries", &ToeplitzMatrix::entries)
      .def_readonly("verdict", &ToeplitzMatrix::verdict)
      .def_readonly("source", &ToeplitzMatrix::source)
      .def("is_hermitian", &ToeplitzMatrix::is_hermitian, py::arg("tol") = 1e-10)
      .def("eigenvalues", &ToeplitzMatrix::eigenvalues)
      .def("singular_values", &ToeplitzMatrix::singular_values);

  py::class_<BoundednessEstimate>(m, "BoundednessEstimate")
      .def_readonly("upper_proxy", &BoundednessEstimate::upper_proxy)
      .def_readonly("lower_proxy", &BoundednessEstimate::lower_proxy)
      .def_readonly("verdict", &BoundednessEstimate::verdict);

  py::class_<CompactnessProbe>(m, "CompactnessProbe")
      .def_readonly("ring_maxima", &CompactnessProbe::ring_maxima)
      .def_readonly("verdict", &CompactnessProbe::verdict)
      .def_readonly("singular_values", &CompactnessProbe::singular_values)
      .def_readonly("trailing_ratio", &CompactnessProbe::trailing_ratio);

  py::class_<MeasureSpecFile>(m, "MeasureSpecFile")
      .def_readonly("type", &MeasureSpecFile::type)
      .def_readonly("alpha", &MeasureSpecFile::alpha)
      .def("to_measure", &MeasureSpecFile::to_measure)
      .def("weight", &MeasureSpecFile::weight)
      .def("to_json", &MeasureSpecFile::to_json)
      .def("__eq__", [](const MeasureSpecFile& a, const MeasureSpecFile& b) { return a == b; });

  py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);

  m.def("load_measure_spec", &load_measure_spec, py::arg("path"));
  m.def("parse_measure_spec", [](const std::string& text) { return parse_measure_spec(text); }, py::arg("text"));

  m.def(
      "berezin_measure",
      [](const Measure& mu, double t, Complex z, const FockWeight& w, const QuadratureSpec& spec) {
        return berezin_measure(mu, t, z, w, spec);
      },
      py::arg("mu"), py::arg("t"), py::arg("z"), py::arg("weight") = FockWeight(1.0),
      py::arg("spec") = QuadratureSpec{}, Release());
  m.def(
      "ball_measure",
      [](const Measure& mu, Complex z, double delta, const QuadratureSpec& spec) {
        return ball_measure(mu, z, delta, spec);
      },
      py::arg("mu"), py::arg("z"), py::arg("delta"), py::arg("spec") = QuadratureSpec{}, Release());
  m.def(
      "fock_norm",
      [](const EntireFunction& f, double p, const FockWeight& w, const QuadratureSpec& spec) {
        return fock_norm(f, NormParams{p, w, std::nullopt}, spec);
      },
      py::arg("f"), py::arg("p"), py::arg("weight") = FockWeight(1.0), py::arg("spec") = QuadratureSpec{},
      Release());
  m.def(
      "mu_norm",
      [](const EntireFunction& f, const Measure& mu, double p, const FockWeight& w, const QuadratureSpec& spec) {
        return mu_norm(f, NormParams{p, w, mu}, spec);
      },
      py::arg("f"), py::arg("mu"), py::arg("p"), py::arg("weight") = FockWeight(1.0),
      py::arg("spec") = QuadratureSpec{}, Release());
  m.def("toeplitz_matrix", &toeplitz_matrix, py::arg("mu"), py::arg("dimension"),
        py::arg("weight") = FockWeight(1.0), py::arg("spec") = QuadratureSpec{}, Release());
  m.def(
      "apply_toeplitz",
      [](const Measure& mu, const EntireFunction& f, Complex z, const FockWeight& w, const QuadratureSpec& spec) {
        return apply_toeplitz(mu, f, z, w, spec);
      },
      py::arg("mu"), py::arg("f"), py::arg("z"), py::arg("weight") = FockWeight(1.0),
      py::arg("spec") = QuadratureSpec{}, Release());
  m.def("boundedness_estimate", &boundedness_estimate, py::arg("mu"), py::arg("weight") = FockWeight(1.0),
        py::arg("grid_radius") = 8.0, py::arg("spec") = QuadratureSpec{}, py::arg("spacing") = 0.25, Release());
  m.def("compactness_probe", &compactness_probe, py::arg("mu"), py::arg("weight") = FockWeight(1.0),
        py::arg("rings") = std::vector<double>{2.0, 4.0, 6.0, 8.0}, py::arg("spec") = QuadratureSpec{},
        py::arg("angles") = 64, py::arg("matrix_dimension") = 12, Release());

  m.def(
      "classify_infty_q",
      [](const Measure& mu, double q, const FockWeight& w, double lattice_r, double grid_radius) {
        CarlesonReport r;
        {
          py::gil_scoped_release release;
          FieldOptions opts;
          opts.grid_radius = grid_radius;
          r = classify_infty_q(mu, q, w, lattice_for(mu, lattice_r, grid_radius), {}, opts);
        }
        return report_dict(r);
      },
      py::arg("mu"), py::arg("q"), py::arg("weight") = FockWeight(1.0), py::arg("lattice_r") = 1.0,
      py::arg("grid_radius") = 0.0);
  m.def(
      "classify_p_infty",
      [](const Measure& mu, double p, const FockWeight& w, double lattice_r, double grid_radius) {
        CarlesonReport r;
        {
          py::gil_scoped_release release;
          FieldOptions opts;
          opts.grid_radius = grid_radius;
          r = classify_p_infty(mu, p, w, lattice_for(mu, lattice_r, grid_radius), {}, opts);
        }
        return report_dict(r);
      },
      py::arg("mu"), py::arg("p"), py::arg("weight") = FockWeight(1.0), py::arg("lattice_r") = 1.0,
      py::arg("grid_radius") = 0.0);

  m.def("run_acceptance", [] {
    std::vector<CriterionResult> results;
    {
      py::gil_scoped_release release;
      results = run_acceptance();
    }
    py::list out;
    for (const auto& r : results) {
      py::dict d;
      d["id"] = r.id;
      d["name"] = r.name;
      d["passed"] = r.passed;
      d["detail"] = r.detail;
      out.append(d);
    }
    return out;
  });
}
