#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nlsl2/algver.hpp"
#include "nlsl2/cli.hpp"
#include "nlsl2/dynsys.hpp"
#include "nlsl2/error.hpp"
#include "nlsl2/hwsolver.hpp"
#include "nlsl2/io.hpp"
#include "nlsl2/qmap.hpp"
#include "nlsl2/repbuilder.hpp"

namespace py = pybind11;
using namespace nlsl2;

namespace {

template <class E>
std::string str_of(E e) {
    return std::string(to_string(e));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite-dimensional representations of the non-linear sl(2) algebra";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());
    py::register_exception<NotUnitaryError>(m, "NotUnitaryError", base.ptr());
    py::register_exception<RootIsolationError>(m, "RootIsolationError", base.ptr());
    py::register_exception<SchemaError>(m, "SchemaError", base.ptr());

    py::class_<CharFunc>(m, "CharFunc")
        .def_static("linear", &CharFunc::linear, py::arg("r"), py::arg("s"))
        .def_static("quadratic", &CharFunc::quadratic, py::arg("t"), py::arg("r"), py::arg("s"))
        .def_static("polynomial", &CharFunc::polynomial, py::arg("coeffs"))
        .def_property_readonly("kind", [](const CharFunc& f) { return str_of(f.kind()); })
        .def_property_readonly("coeffs", [](const CharFunc& f) {
            return std::vector<double>(f.coeffs().begin(), f.coeffs().end());
        })
        .def_property_readonly("degree", &CharFunc::degree)
        .def("__call__", &CharFunc::operator(), py::arg("x"))
        .def("derivative", [](const CharFunc& f, double x) { return derivative(f, x); }, py::arg("x"))
        .def("iterate", [](const CharFunc& f, double x, std::size_t n) { return iterate(f, x, n); },
             py::arg("x"), py::arg("m"))
        .def("__repr__", [](const CharFunc& f) { return "CharFunc(" + io::to_json(f).dump() + ")"; });

    py::class_<CycleReport>(m, "CycleReport")
        .def_readonly("period", &CycleReport::period)
        .def_readonly("points", &CycleReport::points)
        .def_readonly("multiplier", &CycleReport::multiplier)
        .def_property_readonly("stability", [](const CycleReport& c) { return str_of(c.stability); });

    py::class_<DeltaClassification>(m, "DeltaClassification")
        .def_readonly("delta", &DeltaClassification::delta)
        .def_readonly("delta1", &DeltaClassification::delta1)
        .def_readonly("c", &DeltaClassification::c)
        .def_readonly("tangent_point", &DeltaClassification::tangent_point)
        .def_property_readonly("regime", [](const DeltaClassification& c) { return str_of(c.regime); });

    py::class_<AllowedRegion>(m, "AllowedRegion")
        .def_readonly("low", &AllowedRegion::low)
        .def_readonly("high", &AllowedRegion::high)
        .def_readonly("cycle_period", &AllowedRegion::cycle_period)
        .def_readonly("exhaustive", &AllowedRegion::exhaustive);

    py::class_<CutSolution>(m, "CutSolution")
        .def_readonly("alpha_j", &CutSolution::alpha_j)
        .def_readonly("d", &CutSolution::d)
        .def_readonly("residual", &CutSolution::residual)
        .def_readonly("unitary", &CutSolution::unitary)
        .def_readonly("within_region", &CutSolution::within_region);

    py::class_<WeightLadder>(m, "WeightLadder")
        .def_readonly("d", &WeightLadder::d)
        .def_readonly("alphas", &WeightLadder::alphas)
        .def_readonly("nsq", &WeightLadder::nsq)
        .def_readonly("unitary", &WeightLadder::unitary)
        .def_readonly("residual", &WeightLadder::residual)
        .def_property_readonly("termination", [](const WeightLadder& l) { return str_of(l.termination); })
        .def_property_readonly("alpha_j", &WeightLadder::alpha_j);

    py::class_<Representation>(m, "Representation")
        .def_readonly("d", &Representation::d)
        .def_readonly("j0", &Representation::j0)
        .def_readonly("jplus", &Representation::jplus)
        .def_readonly("jminus", &Representation::jminus)
        .def_readonly("casimir", &Representation::casimir)
        .def_readonly("hermitian_pair", &Representation::hermitian_pair)
        .def_property_readonly("mode", [](const Representation& r) { return str_of(r.mode); })
        .def_property_readonly("alpha_j", &Representation::alpha_j)
        .def("to_json", [](const Representation& r) { return io::to_json(r).dump(); });

    py::class_<Relation>(m, "Relation")
        .def_readonly("name", &Relation::name)
        .def_readonly("residual", &Relation::residual)
        .def_readonly("passed", &Relation::pass)
        .def_readonly("required", &Relation::required);

    py::class_<RelationReport>(m, "RelationReport")
        .def_readonly("relations", &RelationReport::relations)
        .def_readonly("tolerance", &RelationReport::tolerance)
        .def_property_readonly("passed", &RelationReport::passed)
        .def("__getitem__", &RelationReport::at, py::return_value_policy::reference_internal);

    py::class_<SlqRep>(m, "SlqRep")
        .def_readonly("s3", &SlqRep::s3)
        .def_readonly("splus", &SlqRep::splus)
        .def_readonly("sminus", &SlqRep::sminus);

    m.def("fixed_points", [](const CharFunc& f) { return fixed_points(f); }, py::arg("f"));
    m.def("find_cycles", [](const CharFunc& f, std::size_t d) { return find_cycles(f, d); }, py::arg("f"),
          py::arg("d"));
    m.def("classify_delta", &classify_delta, py::arg("f"));
    m.def("allowed_region", &allowed_region, py::arg("f"));
    m.def("normal_form", &normal_form, py::arg("f"));

    m.def("solve_cut_linear", &solve_cut_linear, py::arg("r"), py::arg("s"), py::arg("d"));
    m.def(
        "solve_cut",
        [](const CharFunc& f, std::size_t d, std::optional<std::pair<double, double>> iv) {
            std::optional<Interval> interval;
            if (iv) interval = Interval{iv->first, iv->second};
            return solve_cut_general(f, d, interval);
        },
        py::arg("f"), py::arg("d"), py::arg("interval") = py::none());
    m.def("ladder_from_cut", [](const CharFunc& f, double a, std::size_t d) { return ladder_from_cut(f, a, d); },
          py::arg("f"), py::arg("alpha_j"), py::arg("d"));
    m.def("ladder_from_cycle", [](const CycleReport& c, const CharFunc& f) { return ladder_from_cycle(c, f); },
          py::arg("cycle"), py::arg("f"));
    m.def("marginal_ladder", &marginal_ladder, py::arg("s"), py::arg("alpha_j"));

    m.def(
        "build",
        [](const WeightLadder& l, const std::string& mode) {
            if (mode == "unitary") return build(l, RepMode::Unitary);
            if (mode == "algebraic") return build(l, RepMode::Algebraic);
            throw SchemaError("mode must be unitary or algebraic");
        },
        py::arg("ladder"), py::arg("mode") = "unitary");
    m.def(
        "check_relations",
        [](const Representation& rep, std::optional<double> tol) {
            return check_relations(rep, rep.f, tol.value_or(default_tolerance()));
        },
        py::arg("rep"), py::arg("tol") = py::none());

    m.def("build_slq2", [](double j, double q) { return build_slq2(Spin::from_double(j), q); }, py::arg("j"),
          py::arg("q"));
    m.def(
        "verify_map",
        [](double q, double j, double s, double alpha_j) {
            const auto r = verify_map(QDeformParams::make(q, Spin::from_double(j), s, alpha_j));
            return std::make_pair(r.j0, r.jplus);
        },
        py::arg("q"), py::arg("j"), py::arg("s"), py::arg("alpha_j"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
