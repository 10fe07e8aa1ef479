#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divis/cyclic.hpp"
#include "divis/dual.hpp"
#include "divis/fractional.hpp"
#include "divis/measure.hpp"
#include "divis/report.hpp"
#include "divis/scan.hpp"

namespace py = pybind11;
using namespace divis;

namespace {

const char* failure_str(AdmissibilityFailure f) {
  switch (f) {
    case AdmissibilityFailure::HasZeros: return "has_zeros";
    case AdmissibilityFailure::NonzeroWinding: return "nonzero_winding";
    case AdmissibilityFailure::None: break;
  }
  return "none";
}

Measure make_measure_py(const GroupSpec& group,
                        const std::vector<std::pair<std::int64_t, double>>& atoms) {
  return make_measure(group, atoms);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "divisibility analysis for finitely supported probability measures";

  static py::exception<Error> exc(m, "DivisError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(exc,
                    (std::string(errc_name(e.code())) + ": " + e.what()).c_str());
    }
  });

  py::class_<GroupSpec>(m, "GroupSpec")
      .def_static("integers", &GroupSpec::integers)
      .def_static("cyclic", &GroupSpec::cyclic, py::arg("order"))
      .def_static("real_lattice", &GroupSpec::real_lattice, py::arg("step"))
      .def("describe", &GroupSpec::describe)
      .def("__eq__", [](const GroupSpec& a, const GroupSpec& b) { return a == b; })
      .def("__repr__", [](const GroupSpec& g) { return "GroupSpec(" + g.describe() + ")"; });

  py::class_<Measure>(m, "Measure")
      .def("group", &Measure::group)
      .def("atoms",
           [](const Measure& mu) {
             std::map<std::int64_t, double> out(mu.atoms().begin(), mu.atoms().end());
             return out;
           })
      .def("weight", &Measure::weight, py::arg("point"))
      .def("support_size", &Measure::support_size)
      .def("is_point_mass", &Measure::is_point_mass)
      .def("__repr__", [](const Measure& mu) {
        return "Measure(" + mu.group().describe() + ", " +
               std::to_string(mu.support_size()) + " atoms)";
      });

  m.def("make_measure", &make_measure_py, py::arg("group"), py::arg("atoms"));
  m.def("dirac", &dirac, py::arg("group"), py::arg("point"));
  m.def("convolve", &convolve, py::arg("a"), py::arg("b"));
  m.def("convolve_power", &convolve_power, py::arg("mu"), py::arg("n"));
  m.def("total_variation", &total_variation, py::arg("a"), py::arg("b"));

  py::class_<ZeroPoint>(m, "ZeroPoint")
      .def_readonly("location", &ZeroPoint::location)
      .def_readonly("order", &ZeroPoint::order)
      .def_readonly("leading_coefficient", &ZeroPoint::leading_coefficient)
      .def("__repr__", [](const ZeroPoint& z) {
        return "ZeroPoint(location=" + std::to_string(z.location) +
               ", order=" + std::to_string(z.order) + ")";
      });

  py::class_<SecondCharacteristic>(m, "SecondCharacteristic")
      .def_readonly("psi", &SecondCharacteristic::psi)
      .def_readonly("winding", &SecondCharacteristic::winding)
      .def_readonly("admissible", &SecondCharacteristic::admissible)
      .def_property_readonly(
          "failure", [](const SecondCharacteristic& s) { return failure_str(s.failure); })
      .def_readonly("total_phase_increment", &SecondCharacteristic::total_phase_increment)
      .def_readonly("max_exp_residual", &SecondCharacteristic::max_exp_residual)
      .def_property_readonly(
          "points", [](const SecondCharacteristic& s) { return s.grid.points; })
      .def_property_readonly(
          "values", [](const SecondCharacteristic& s) { return s.grid.values; });

  m.def("char_fn", &char_fn, py::arg("mu"), py::arg("theta"));
  m.def("char_fn_derivative", &char_fn_derivative, py::arg("mu"), py::arg("theta"),
        py::arg("order"));
  m.def("find_zeros", &find_zeros, py::arg("mu"), py::arg("zero_tol") = 1e-10,
        py::arg("order_tol") = 1e-8);
  m.def("winding_number", &winding_number, py::arg("mu"));
  m.def(
      "second_characteristic",
      [](const Measure& mu, std::size_t n_points, std::optional<double> window) {
        return second_characteristic(mu, n_points, window);
      },
      py::arg("mu"), py::arg("n_points") = 1024, py::arg("window") = std::nullopt);

  py::class_<MembershipVerdict>(m, "MembershipVerdict")
      .def_readonly("t", &MembershipVerdict::t)
      .def_property_readonly(
          "verdict", [](const MembershipVerdict& v) { return verdict_name(v.verdict); })
      .def_readonly("min_coefficient", &MembershipVerdict::min_coefficient)
      .def_readonly("mass_defect", &MembershipVerdict::mass_defect)
      .def_readonly("max_imag", &MembershipVerdict::max_imag)
      .def_readonly("grid_used", &MembershipVerdict::grid_used)
      .def_readonly("candidate", &MembershipVerdict::candidate)
      .def("__repr__", [](const MembershipVerdict& v) {
        return "MembershipVerdict(t=" + std::to_string(v.t) + ", " +
               verdict_name(v.verdict) + ")";
      });

  m.def(
      "fractional_power",
      [](const Measure& mu, double t) { return fractional_power(mu, t); }, py::arg("mu"),
      py::arg("t"));
  m.def(
      "is_member", [](const Measure& mu, double t) { return is_member(mu, t); },
      py::arg("mu"), py::arg("t"));
  m.def(
      "nth_root_admissible",
      [](const Measure& mu, int n) { return nth_root_admissible(mu, n); }, py::arg("mu"),
      py::arg("n"));

  py::class_<Rational>(m, "Rational")
      .def(py::init<long long, long long>(), py::arg("num"), py::arg("den"))
      .def_static("parse", &Rational::parse, py::arg("text"))
      .def_readonly("num", &Rational::num)
      .def_readonly("den", &Rational::den)
      .def("value", &Rational::value)
      .def("__str__", &Rational::str)
      .def("__repr__", [](const Rational& q) { return "Rational(" + q.str() + ")"; });

  py::class_<TGridPoint>(m, "TGridPoint")
      .def_readonly("t", &TGridPoint::t)
      .def_property_readonly("exact", [](const TGridPoint& p) {
        return p.exact ? std::optional<std::string>(p.exact->str()) : std::nullopt;
      });

  py::class_<StructureSummary>(m, "StructureSummary")
      .def_readonly("min_member", &StructureSummary::min_member)
      .def_readonly("all_member", &StructureSummary::all_member)
      .def_readonly("semigroup_violations", &StructureSummary::semigroup_violations)
      .def_readonly("tail_start", &StructureSummary::tail_start)
      .def_readonly("inconclusive_count", &StructureSummary::inconclusive_count);

  py::class_<LambdaReport>(m, "LambdaReport")
      .def_readonly("grid", &LambdaReport::grid)
      .def_readonly("verdicts", &LambdaReport::verdicts)
      .def_readonly("summary", &LambdaReport::summary);

  m.def(
      "lambda_scan",
      [](const Measure& mu, double t_max, int n_max, double mesh) {
        return lambda_scan(mu, t_max, n_max, mesh);
      },
      py::arg("mu"), py::arg("t_max") = 3.0, py::arg("n_max") = 8,
      py::arg("mesh") = 0.05);
  m.def("make_t_grid", &make_t_grid, py::arg("t_max"), py::arg("n_max"), py::arg("mesh"));
  m.def("t0_lower_bound", &t0_lower_bound, py::arg("mu"));

  py::class_<ConstraintSet>(m, "ConstraintSet")
      .def_readonly("winding", &ConstraintSet::winding)
      .def_readonly("obstructed", &ConstraintSet::obstructed)
      .def_readonly("divisor_union", &ConstraintSet::divisor_union)
      .def_readonly("intersection_lattice", &ConstraintSet::intersection_lattice)
      .def_readonly("lower_bound", &ConstraintSet::lower_bound);

  m.def("winding_constraints", &winding_constraints, py::arg("w"));
  m.def("rational_in_constraints", &rational_in_constraints, py::arg("q"), py::arg("c"));

  m.def("cyclic_char_fn", &cyclic_char_fn, py::arg("mu"));
  m.def("z2_nth_root", &z2_nth_root, py::arg("alpha"), py::arg("n"));

  py::class_<RootSet>(m, "RootSet")
      .def_readonly("n", &RootSet::n)
      .def_readonly("roots", &RootSet::roots)
      .def_readonly("exhaustive", &RootSet::exhaustive);

  m.def("cyclic_nth_roots", &cyclic_nth_roots, py::arg("mu"), py::arg("n"));

  py::class_<Delta1Membership>(m, "Delta1Membership")
      .def_readonly("brute", &Delta1Membership::brute)
      .def_readonly("congruence_rule", &Delta1Membership::congruence_rule)
      .def_readonly("witness", &Delta1Membership::witness);

  m.def("delta1_membership", &delta1_membership, py::arg("modulus"), py::arg("q"));

  m.def(
      "run_report",
      [](const std::string& command, const std::string& spec_text, bool as_json) {
        Options opt;
        opt.json = as_json;
        auto res = run(command, spec_text, opt);
        return py::make_tuple(res.exit_code, res.output);
      },
      py::arg("command"), py::arg("spec_text"), py::arg("as_json") = true);

  m.def("parse_spec", &parse_spec, py::arg("text"));
  m.def("emit_spec", &emit_spec, py::arg("mu"));
}
