#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "iontrotter/pauli.hpp"

namespace iontrotter {

/// Trapped-ion gate kinds. Unitaries (hbar = 1, qubits 1-based, modes 1-based):
///   MS           exp[-i (theta/4) (sum_{j in qubits} sigma_phi^j)^2], sigma_phi = cos(phi) X + sin(phi) Y
///   Local        exp[-i (theta/2) sigma_axis]
///   ZZ           exp[-i theta Z Z]
///   ResonantXX   exp[-i theta X X]
///   CNOT         qubits = {control, target}
///   RedSideband  exp[-i theta * i(sigma_+ a e^{i phi} - sigma_- a^+ e^{-i phi})]
///   BlueSideband exp[-i theta * i(sigma_+ a^+ e^{i phi} - sigma_- a e^{-i phi})]
///   SpinDepDisp  exp[-i theta Z (e^{-i phi} a + e^{i phi} a^+)]
///   ModeDrive    exp[-i theta a^+ a]
///   Displacement exp[-i theta (e^{-i phi} a + e^{i phi} a^+)]
enum class GateKind {
    MS,
    Local,
    ZZ,
    ResonantXX,
    CNOT,
    RedSideband,
    BlueSideband,
    SpinDepDisp,
    ModeDrive,
    Displacement,
};

std::string_view gate_name(GateKind kind);
GateKind parse_gate_name(std::string_view name);

struct Gate {
    GateKind kind = GateKind::Local;
    std::vector<int> qubits;
    int mode = 0;  ///< 0 when the gate touches no motional mode
    double theta = 0.0;
    double phi = 0.0;
    Axis axis = Axis::Z;  ///< Local only
    std::string group;

    bool is_entangling() const;
    bool acts_on_mode() const;

    friend bool operator==(const Gate&, const Gate&) = default;
};

Gate ms_gate(std::vector<int> targets, double theta, double phi = 0.0);
Gate local_gate(int qubit, Axis axis, double theta);
Gate zz_gate(int q1, int q2, double theta);
Gate resonant_xx_gate(int q1, int q2, double theta);
Gate cnot_gate(int control, int target);
Gate red_sideband_gate(int qubit, int mode, double theta, double phi = 0.0);
Gate blue_sideband_gate(int qubit, int mode, double theta, double phi = 0.0);
Gate spin_dependent_displacement(int qubit, int mode, double theta, double phi = 0.0);
Gate mode_drive(int mode, double theta);
Gate displacement_gate(int mode, double theta, double phi = 0.0);

/// Gates grouped into Trotter steps. Ancilla qubits, when present, are numbered
/// n_qubits+1 .. n_qubits+n_ancillas and start and end in |0>.
class GateSequence {
public:
    GateSequence() = default;
    GateSequence(int n_qubits, int n_modes, int n_ancillas = 0);

    int n_qubits() const { return n_qubits_; }
    int n_modes() const { return n_modes_; }
    int n_ancillas() const { return n_ancillas_; }
    int total_qubits() const { return n_qubits_ + n_ancillas_; }

    const std::vector<Gate>& gates() const { return gates_; }
    bool empty() const { return gates_.empty(); }
    std::size_t size() const { return gates_.size(); }

    /// Start offsets of each step in gates().
    const std::vector<std::size_t>& step_starts() const { return step_starts_; }
    std::size_t n_steps() const { return step_starts_.size(); }
    /// [begin, end) of step `s`.
    std::pair<std::size_t, std::size_t> step_range(std::size_t s) const;

    void begin_step();
    /// Validates targets against the declared register; opens a step if none is open.
    void push(Gate gate);
    /// Appends all gates of `other` into the current step.
    void append(const GateSequence& other);

    friend bool operator==(const GateSequence&, const GateSequence&) = default;

private:
    int n_qubits_ = 0;
    int n_modes_ = 0;
    int n_ancillas_ = 0;
    std::vector<Gate> gates_;
    std::vector<std::size_t> step_starts_;
};

}  // namespace iontrotter
