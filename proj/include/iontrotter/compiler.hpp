#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "iontrotter/gates.hpp"
#include "iontrotter/jordan_wigner.hpp"
#include "iontrotter/trotter.hpp"

namespace iontrotter {

/// MS: two global MS gates around one local gate per nonlocal term.
/// UMQ: each MS replaced by resonant XX gates between the designated ion and
///      every other ion of the support.
/// CNOT: parity ladder onto one ancilla, 2k CNOTs for a weight-k string.
enum class Backend { MS, UMQ, CNOT };

std::string_view backend_name(Backend b);
Backend parse_backend(std::string_view name);

class CompileError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Gates for exp(-i theta P) up to global phase, where P is the bare string
/// (its coefficient is ignored; fold it into theta). `n_qubits` sizes the
/// register (0 means the highest qubit of p); the CNOT backend adds one ancilla.
/// Throws CompileError for the identity string.
GateSequence compile_pauli_exponential(const PauliString& p, double theta, Backend backend,
                                       int n_qubits = 0);

/// Gates for exp(-i theta P (e^{-i phi} a + e^{i phi} a^+)) where the term has one
/// Position factor. The inner local gate of the MS sandwich becomes a
/// spin-dependent displacement; a weight-0 string becomes a bare displacement.
GateSequence compile_boson_coupled_exponential(const MixedTerm& term, double theta, Backend backend,
                                               int n_qubits = 0, int n_modes = 0);

/// exp(-i omega dt a^+ a) as one passive-ion drive; empty when omega*dt == 0.
GateSequence compile_free_boson(int mode, double omega, double dt, int n_modes = 0);

/// Concatenates per-term compilations, one step marker per Trotter step.
GateSequence compile_plan(const TrotterPlan& plan, Backend backend);

/// Rotation that turns <P> into a single-ion readout: after applying
/// `rotation`, <P> = sign * <Z_qubit>.
struct MeasurementMapping {
    GateSequence rotation;
    int qubit = 0;
    double sign = 1.0;
};

MeasurementMapping measurement_mapping(const PauliString& p, int n_qubits = 0);

}  // namespace iontrotter
