#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "dicke/algebra.hpp"
#include "dicke/errors.hpp"
#include "dicke/exact.hpp"
#include "dicke/hamiltonian.hpp"
#include "dicke/states.hpp"
#include "dicke/sweep.hpp"
#include "dicke/variational.hpp"

namespace py = pybind11;
using namespace dicke;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dicke model closed-form variational results and exact-diagonalization oracle";
    m.attr("__version__") = std::string(tool_version);

    static py::exception<Error> base_error(m, "DickeError", PyExc_RuntimeError);
    static py::exception<ValidationError> validation_error(m, "ValidationError", base_error.ptr());
    static py::exception<ConvergenceError> convergence_error(m, "ConvergenceError", base_error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ValidationError& e) {
            py::set_error(validation_error, e.what());
        } catch (const ConvergenceError& e) {
            py::set_error(convergence_error, e.what());
        } catch (const Error& e) {
            py::set_error(base_error, e.what());
        }
    });

    py::enum_<Variant>(m, "Variant").value("full", Variant::full).value("rwa", Variant::rwa);
    py::enum_<Pole>(m, "Pole").value("north", Pole::north).value("south", Pole::south);
    py::enum_<Branch>(m, "Branch").value("minus", Branch::minus).value("plus", Branch::plus);
    py::enum_<Phase>(m, "Phase").value("normal", Phase::normal).value("superradiant", Phase::superradiant);
    py::enum_<Degeneracy>(m, "Degeneracy")
        .value("point", Degeneracy::point)
        .value("sign_pair", Degeneracy::sign_pair)
        .value("circle", Degeneracy::circle);

    py::class_<ModelParams>(m, "ModelParams")
        .def_readonly("omega", &ModelParams::omega)
        .def_readonly("Omega", &ModelParams::Omega)
        .def_readonly("g", &ModelParams::g)
        .def_readonly("n_atoms", &ModelParams::n_atoms)
        .def_property_readonly("spin", &ModelParams::spin)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(omega=" + std::to_string(p.omega) + ", Omega=" + std::to_string(p.Omega) +
                   ", g=" + std::to_string(p.g) + ", n_atoms=" + std::to_string(p.n_atoms) + ")";
        });
    m.def("make_params", &make_params, py::arg("omega"), py::arg("Omega"), py::arg("g"), py::arg("n_atoms"));

    py::class_<FieldPoint>(m, "FieldPoint")
        .def_readonly("u", &FieldPoint::u)
        .def_readonly("v", &FieldPoint::v)
        .def_property_readonly("intensity", &FieldPoint::intensity);

    py::class_<BranchResult>(m, "BranchResult")
        .def_readonly("branch", &BranchResult::branch)
        .def_readonly("variant", &BranchResult::variant)
        .def_readonly("energy", &BranchResult::energy)
        .def_readonly("energy_per_atom", &BranchResult::energy_per_atom)
        .def_readonly("phase", &BranchResult::phase)
        .def_readonly("field", &BranchResult::field)
        .def_readonly("degeneracy", &BranchResult::degeneracy)
        .def_readonly("jz", &BranchResult::jz)
        .def_readonly("gamma", &BranchResult::gamma)
        .def_readonly("gamma_is_extension", &BranchResult::gamma_is_extension);

    py::class_<CutoffPolicy>(m, "CutoffPolicy")
        .def(py::init<>())
        .def_readwrite("initial", &CutoffPolicy::initial)
        .def_readwrite("growth", &CutoffPolicy::growth)
        .def_readwrite("energy_tol", &CutoffPolicy::energy_tol)
        .def_readwrite("max_cutoff", &CutoffPolicy::max_cutoff)
        .def_readwrite("max_dimension", &CutoffPolicy::max_dimension);

    py::class_<ExactResult>(m, "ExactResult")
        .def_readonly("energy", &ExactResult::energy)
        .def_readonly("energy_per_atom", &ExactResult::energy_per_atom)
        .def_readonly("jz", &ExactResult::jz)
        .def_readonly("photons", &ExactResult::photons)
        .def_readonly("cutoff_used", &ExactResult::cutoff_used)
        .def_readonly("eigen_residual", &ExactResult::eigen_residual)
        .def_readonly("converged", &ExactResult::converged)
        .def_readonly("gap", &ExactResult::gap)
        .def_readonly("near_degenerate", &ExactResult::near_degenerate)
        .def_readonly("trace", &ExactResult::trace);

    m.def("spin_matrices", [](int n_atoms) {
        const SpinAlgebra s = spin_matrices(n_atoms);
        py::dict out;
        out["jx"] = s.jx;
        out["jy"] = s.jy;
        out["jz"] = s.jz;
        out["jplus"] = s.jplus;
        out["jminus"] = s.jminus;
        return out;
    }, py::arg("n_atoms"));
    m.def("boson_matrices", [](int cutoff) {
        const BosonAlgebra b = boson_matrices(cutoff);
        py::dict out;
        out["a"] = b.a;
        out["adag"] = b.adag;
        out["number_op"] = b.number_op;
        return out;
    }, py::arg("cutoff"));
    m.def("build_hamiltonian", &build_hamiltonian, py::arg("params"), py::arg("variant"), py::arg("cutoff"),
          py::arg("max_dimension") = default_max_dimension);
    m.def("build_scs", &build_scs, py::arg("n_atoms"), py::arg("theta"), py::arg("phi"), py::arg("pole"));
    m.def("build_coherent", &build_coherent, py::arg("alpha"), py::arg("cutoff"));
    m.def("trial_energy", &trial_energy, py::arg("params"), py::arg("variant"), py::arg("u"), py::arg("v"),
          py::arg("theta"), py::arg("phi"), py::arg("pole"), py::arg("cutoff"));

    m.def("critical_coupling", &critical_coupling, py::arg("params"), py::arg("variant"));
    m.def("energy_functional", &energy_functional, py::arg("params"), py::arg("variant"), py::arg("u"),
          py::arg("v"), py::arg("branch"));
    m.def("stationary_field", [](const ModelParams& p, Variant v) {
        const StationaryField s = stationary_field(p, v);
        return py::make_tuple(s.field, s.degeneracy);
    }, py::arg("params"), py::arg("variant"));
    m.def("branch_energy", &branch_energy, py::arg("params"), py::arg("variant"), py::arg("branch"));
    m.def("jz_expectation", &jz_expectation, py::arg("params"), py::arg("variant"));
    m.def("geometric_phase", &geometric_phase, py::arg("params"), py::arg("variant"));
    m.def("gp_derivative", [](const ModelParams& p, Variant v, const std::string& side) {
        const Side s = side == "left" ? Side::left : side == "right" ? Side::right : Side::automatic;
        return gp_derivative(p, v, s);
    }, py::arg("params"), py::arg("variant"), py::arg("side") = "auto");
    m.def("gp_scaling_check", [](const ModelParams& p, double delta) {
        const ScalingCheck c = gp_scaling_check(p, delta);
        return py::make_tuple(c.lhs, c.rhs, c.relative_gap);
    }, py::arg("params"), py::arg("delta"));
    m.def("numeric_minimize", [](const ModelParams& p, Variant v) {
        const MinimizerResult r = numeric_minimize(p, v);
        return py::make_tuple(r.field, r.energy);
    }, py::arg("params"), py::arg("variant"));

    m.def("exact_ground", &exact_ground, py::arg("params"), py::arg("variant"),
          py::arg("policy") = CutoffPolicy{}, py::call_guard<py::gil_scoped_release>());
    m.def("low_spectrum", [](const ModelParams& p, Variant v, int k, const CutoffPolicy& policy) {
        return low_spectrum(p, v, k, policy).values;
    }, py::arg("params"), py::arg("variant"), py::arg("k"), py::arg("policy") = CutoffPolicy{},
          py::call_guard<py::gil_scoped_release>());
}
