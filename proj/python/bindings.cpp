#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "iontrotter/cli.hpp"
#include "iontrotter/compiler.hpp"
#include "iontrotter/io.hpp"
#include "iontrotter/resources.hpp"
#include "iontrotter/simulator.hpp"

namespace py = pybind11;
using namespace iontrotter;

namespace {

py::dict counts_dict(const GateCounts& c) {
    py::dict by_kind;
    for (const auto& [k, n] : c.by_kind) by_kind[py::str(std::string(gate_name(k)))] = n;
    py::dict d;
    d["by_kind"] = by_kind;
    d["entangling_by_group"] = c.entangling_by_group;
    d["entangling_per_step"] = c.entangling_per_step;
    d["entangling_total"] = c.entangling_total;
    d["mode_drives"] = c.mode_drives;
    d["census"] = c.census();
    return d;
}

}  // namespace

PYBIND11_MODULE(_iontrotter, m) {
    m.doc() = "Trotterized trapped-ion simulation compiler";

    py::class_<Hamiltonian>(m, "Hamiltonian")
        .def_property_readonly("n_fermionic", &Hamiltonian::n_fermionic)
        .def_property_readonly("n_bosonic", &Hamiltonian::n_bosonic)
        .def("__len__", [](const Hamiltonian& H) { return H.terms().size(); })
        .def("is_hermitian", [](const Hamiltonian& H) { return hermiticity_check(H); })
        .def("to_json", [](const Hamiltonian& H) { return dump(to_json(H)); })
        .def_static("from_json", [](const std::string& s) { return hamiltonian_from_json(nlohmann::json::parse(s)); })
        .def("fock_matrix", [](const Hamiltonian& H, const std::vector<int>& cutoffs) { return fock_matrix(H, cutoffs); },
             py::arg("cutoffs") = std::vector<int>{})
        .def("__eq__", [](const Hamiltonian& a, const Hamiltonian& b) { return a == b; });

    m.def("build_hubbard", &build_hubbard, py::arg("rows"), py::arg("cols"), py::arg("w") = 1.0, py::arg("U") = 1.0);
    m.def("build_holstein", &build_holstein, py::arg("sites"), py::arg("h") = 1.0, py::arg("g") = 0.5,
          py::arg("omega") = 1.0);
    m.def("build_chemistry", &build_chemistry, py::arg("h_pq"), py::arg("h_pqrs"));

    py::class_<MixedPauliSum>(m, "PauliSum")
        .def_property_readonly("n_qubits", &MixedPauliSum::n_qubits)
        .def_property_readonly("n_modes", &MixedPauliSum::n_modes)
        .def("__len__", &MixedPauliSum::size)
        .def("terms",
             [](const MixedPauliSum& s) {
                 std::vector<std::tuple<std::string, cplx, std::string>> out;
                 for (const auto& t : s.terms()) out.emplace_back(t.label(), t.pauli.coefficient, t.group);
                 return out;
             },
             "List of (label, coefficient, group).")
        .def("matrix",
             [](const MixedPauliSum& s, const std::vector<int>& cutoffs) { return matrix_of(s, spec_for(s, cutoffs)); },
             py::arg("cutoffs") = std::vector<int>{});
    m.def("jw_transform", &jw_transform);

    py::enum_<Backend>(m, "Backend").value("MS", Backend::MS).value("UMQ", Backend::UMQ).value("CNOT", Backend::CNOT);

    py::class_<GateSequence>(m, "GateSequence")
        .def_property_readonly("n_qubits", &GateSequence::n_qubits)
        .def_property_readonly("n_modes", &GateSequence::n_modes)
        .def_property_readonly("n_ancillas", &GateSequence::n_ancillas)
        .def_property_readonly("n_steps", &GateSequence::n_steps)
        .def("__len__", &GateSequence::size)
        .def("counts", [](const GateSequence& s) { return counts_dict(count_gates(s)); })
        .def("to_json", [](const GateSequence& s) { return dump(to_json(s)); })
        .def_static("from_json", [](const std::string& s) { return sequence_from_json(nlohmann::json::parse(s)); })
        .def("unitary",
             [](const GateSequence& s, const std::vector<int>& cutoffs) {
                 const HilbertSpec spec = spec_for_sequence(s, cutoffs);
                 const Operator U = sequence_unitary(s, spec);
                 return s.n_ancillas() ? restrict_to_ancilla_zero(U, spec, s.n_ancillas()) : U;
             },
             py::arg("cutoffs") = std::vector<int>{}, "System-register unitary (ancilla block for CNOT).");

    m.def(
        "compile",
        [](const MixedPauliSum& s, double t, int steps, int order, Backend backend) {
            return compile_plan(trotterize(s, t, steps, order), backend);
        },
        py::arg("sum"), py::arg("t") = 1.0, py::arg("steps") = 10, py::arg("order") = 1, py::arg("backend") = Backend::MS);

    m.def(
        "estimate_time",
        [](const GateSequence& s, int ions, bool scaling) {
            TimingModel model;
            model.ms_scaling = model.sideband_scaling = scaling;
            const TimeEstimate t = estimate_time(s, model, ions);
            py::dict d;
            d["entangling_us"] = t.entangling_us;
            d["local_us"] = t.local_us;
            d["entangling_per_step_us"] = t.entangling_per_step_us;
            return d;
        },
        py::arg("sequence"), py::arg("ions"), py::arg("scaling") = false, "Durations in microseconds.");
    m.def("umq_speedup", [](int n) { return umq_speedup(n); }, py::arg("ions"));
    m.def(
        "classical_dimension",
        [](int n_qubits, int modes, int cutoff) -> py::object {
            const ClassicalCost c = classical_cost(n_qubits, modes, cutoff);
            if (c.overflow) return py::none();
            return py::int_(c.dimension);
        },
        py::arg("n_qubits"), py::arg("modes"), py::arg("cutoff"), "None when the dimension exceeds 2^63.");
    m.def("exact_evolution", [](const MixedPauliSum& s, double t, const std::vector<int>& cutoffs) {
        return exact_evolution(s, t, spec_for(s, cutoffs));
    }, py::arg("sum"), py::arg("t"), py::arg("cutoffs") = std::vector<int>{});
    m.def("unitary_distance", &unitary_distance);

    m.def(
        "run_cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "iontrotter");
            std::vector<const char*> argv;
            for (const auto& a : args) argv.push_back(a.c_str());
            std::ostringstream out, err;
            const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line; returns (exit_code, stdout, stderr).");
}
