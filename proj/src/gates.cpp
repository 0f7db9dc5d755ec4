#include "iontrotter/gates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

namespace iontrotter {

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 10> kNames{{
    {GateKind::MS, "MS"},
    {GateKind::Local, "LOCAL"},
    {GateKind::ZZ, "ZZ"},
    {GateKind::ResonantXX, "RXX"},
    {GateKind::CNOT, "CNOT"},
    {GateKind::RedSideband, "RSB"},
    {GateKind::BlueSideband, "BSB"},
    {GateKind::SpinDepDisp, "SDD"},
    {GateKind::ModeDrive, "DRIVE"},
    {GateKind::Displacement, "DISP"},
}};

}  // namespace

std::string_view gate_name(GateKind kind) {
    for (const auto& [k, n] : kNames) {
        if (k == kind) return n;
    }
    return "?";
}

GateKind parse_gate_name(std::string_view name) {
    for (const auto& [k, n] : kNames) {
        if (n == name) return k;
    }
    throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

bool Gate::is_entangling() const {
    switch (kind) {
        case GateKind::MS: return qubits.size() >= 2;
        case GateKind::ZZ:
        case GateKind::ResonantXX:
        case GateKind::CNOT:
        case GateKind::RedSideband:
        case GateKind::BlueSideband:
        case GateKind::SpinDepDisp: return true;
        case GateKind::Local:
        case GateKind::ModeDrive:
        case GateKind::Displacement: return false;
    }
    return false;
}

bool Gate::acts_on_mode() const {
    switch (kind) {
        case GateKind::RedSideband:
        case GateKind::BlueSideband:
        case GateKind::SpinDepDisp:
        case GateKind::ModeDrive:
        case GateKind::Displacement: return true;
        default: return false;
    }
}

Gate ms_gate(std::vector<int> targets, double theta, double phi) {
    return {GateKind::MS, std::move(targets), 0, theta, phi};
}
Gate local_gate(int qubit, Axis axis, double theta) {
    return {GateKind::Local, {qubit}, 0, theta, 0.0, axis};
}
Gate zz_gate(int q1, int q2, double theta) { return {GateKind::ZZ, {q1, q2}, 0, theta}; }
Gate resonant_xx_gate(int q1, int q2, double theta) {
    return {GateKind::ResonantXX, {q1, q2}, 0, theta};
}
Gate cnot_gate(int control, int target) { return {GateKind::CNOT, {control, target}}; }
Gate red_sideband_gate(int qubit, int mode, double theta, double phi) {
    return {GateKind::RedSideband, {qubit}, mode, theta, phi};
}
Gate blue_sideband_gate(int qubit, int mode, double theta, double phi) {
    return {GateKind::BlueSideband, {qubit}, mode, theta, phi};
}
Gate spin_dependent_displacement(int qubit, int mode, double theta, double phi) {
    return {GateKind::SpinDepDisp, {qubit}, mode, theta, phi};
}
Gate mode_drive(int mode, double theta) { return {GateKind::ModeDrive, {}, mode, theta}; }
Gate displacement_gate(int mode, double theta, double phi) {
    return {GateKind::Displacement, {}, mode, theta, phi};
}

// ---------------------------------------------------------------------------

GateSequence::GateSequence(int n_qubits, int n_modes, int n_ancillas)
    : n_qubits_(n_qubits), n_modes_(n_modes), n_ancillas_(n_ancillas) {
    if (n_qubits < 0 || n_modes < 0 || n_ancillas < 0) {
        throw std::invalid_argument("register sizes must be non-negative");
    }
}

std::pair<std::size_t, std::size_t> GateSequence::step_range(std::size_t s) const {
    const std::size_t begin = step_starts_.at(s);
    const std::size_t end = s + 1 < step_starts_.size() ? step_starts_[s + 1] : gates_.size();
    return {begin, end};
}

void GateSequence::begin_step() { step_starts_.push_back(gates_.size()); }

void GateSequence::push(Gate gate) {
    if (!std::isfinite(gate.theta) || !std::isfinite(gate.phi)) {
        throw std::invalid_argument("gate angles must be finite");
    }
    const bool needs_qubits = gate.kind != GateKind::ModeDrive && gate.kind != GateKind::Displacement;
    if (needs_qubits && gate.qubits.empty()) {
        throw std::invalid_argument(std::string(gate_name(gate.kind)) + " gate needs targets");
    }
    std::set<int> seen;
    for (int q : gate.qubits) {
        if (q < 1 || q > total_qubits()) {
            throw std::invalid_argument(std::string(gate_name(gate.kind)) + " target qubit " +
                                        std::to_string(q) + " outside register of " +
                                        std::to_string(total_qubits()));
        }
        if (!seen.insert(q).second) throw std::invalid_argument("repeated gate target");
    }
    const std::size_t arity = gate.qubits.size();
    switch (gate.kind) {
        case GateKind::ZZ:
        case GateKind::ResonantXX:
        case GateKind::CNOT:
            if (arity != 2) throw std::invalid_argument("two-qubit gate needs exactly two targets");
            break;
        case GateKind::Local:
        case GateKind::RedSideband:
        case GateKind::BlueSideband:
        case GateKind::SpinDepDisp:
            if (arity != 1) throw std::invalid_argument("single-ion gate needs exactly one target");
            break;
        case GateKind::ModeDrive:
        case GateKind::Displacement:
            if (arity != 0) throw std::invalid_argument("mode gate takes no qubit targets");
            break;
        case GateKind::MS: break;
    }
    if (gate.acts_on_mode()) {
        if (gate.mode < 1 || gate.mode > n_modes_) {
            throw std::invalid_argument("motional mode " + std::to_string(gate.mode) +
                                        " outside register of " + std::to_string(n_modes_));
        }
    } else if (gate.mode != 0) {
        throw std::invalid_argument(std::string(gate_name(gate.kind)) + " takes no mode");
    }
    if (step_starts_.empty()) begin_step();
    gates_.push_back(std::move(gate));
}

void GateSequence::append(const GateSequence& other) {
    for (const auto& g : other.gates()) push(g);
}

}  // namespace iontrotter
