#include "iontrotter/compiler.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

namespace iontrotter {

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::MS: return "ms";
        case Backend::UMQ: return "umq";
        case Backend::CNOT: return "cnot";
    }
    return "?";
}

Backend parse_backend(std::string_view name) {
    if (name == "ms" || name == "MS") return Backend::MS;
    if (name == "umq" || name == "UMQ") return Backend::UMQ;
    if (name == "cnot" || name == "CNOT") return Backend::CNOT;
    throw std::invalid_argument("unknown backend '" + std::string(name) + "' (ms, umq, cnot)");
}

namespace {

constexpr double kPi = std::numbers::pi;

// Local rotation R with R sigma_from R^+ = sigma_to.
std::optional<Gate> frame_rotation(int qubit, Axis from, Axis to) {
    if (from == to) return std::nullopt;
    if (from == Axis::Z && to == Axis::X) return local_gate(qubit, Axis::Y, kPi / 2);
    if (from == Axis::X && to == Axis::Z) return local_gate(qubit, Axis::Y, -kPi / 2);
    if (from == Axis::Y && to == Axis::X) return local_gate(qubit, Axis::Z, -kPi / 2);
    if (from == Axis::X && to == Axis::Y) return local_gate(qubit, Axis::Z, kPi / 2);
    if (from == Axis::Y && to == Axis::Z) return local_gate(qubit, Axis::X, kPi / 2);
    return local_gate(qubit, Axis::X, -kPi / 2);  // Z -> Y
}

struct Support {
    std::vector<int> qubits;
    std::vector<Axis> axes;

    explicit Support(const PauliString& p) {
        for (const auto& [q, a] : p.factors) {
            qubits.push_back(q);
            axes.push_back(a);
        }
    }
    std::size_t size() const { return qubits.size(); }
};

class Emitter {
public:
    Emitter(GateSequence& out, std::string group) : out_(out), group_(std::move(group)) {}

    void push(Gate g) {
        g.group = group_;
        out_.push(std::move(g));
    }

    // Rotates every support qubit into `target(i)`, runs `body`, rotates back.
    template <class Target, class Body>
    void in_frame(const Support& s, Target&& target, Body&& body) {
        std::vector<Gate> prefix;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (auto g = frame_rotation(s.qubits[i], s.axes[i], target(i))) prefix.push_back(*g);
        }
        for (const auto& g : prefix) push(g);
        body();
        for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
            Gate g = *it;
            g.theta = -g.theta;
            push(std::move(g));
        }
    }

    // Entangler pair of the MS sandwich around ion s.qubits[0].
    void entangler(const Support& s, Backend backend, double sign) {
        if (backend == Backend::UMQ) {
            for (std::size_t i = 1; i < s.size(); ++i) {
                push(resonant_xx_gate(s.qubits[0], s.qubits[i], sign * kPi / 4));
            }
        } else {
            push(ms_gate(s.qubits, sign * kPi / 2));
        }
    }

    void parity_ladder(const Support& s, int ancilla, bool forward) {
        if (forward) {
            for (int q : s.qubits) push(cnot_gate(q, ancilla));
        } else {
            for (auto it = s.qubits.rbegin(); it != s.qubits.rend(); ++it) push(cnot_gate(*it, ancilla));
        }
    }

private:
    GateSequence& out_;
    std::string group_;
};

int ancilla_of(const GateSequence& out) {
    if (out.n_ancillas() < 1) throw CompileError("CNOT backend needs an ancilla qubit");
    return out.n_qubits() + 1;
}

void emit_pauli(GateSequence& out, const PauliString& p, double theta, Backend backend,
                const std::string& group) {
    if (p.weight() == 0) {
        throw CompileError("identity string has no gate realization; treat it as a global phase");
    }
    if (theta == 0.0) return;
    Emitter e(out, group);
    const Support s(p);
    const std::size_t k = s.size();

    if (k == 1) {
        e.push(local_gate(s.qubits[0], s.axes[0], 2 * theta));
        return;
    }
    if (k == 2 && s.axes[0] == Axis::Z && s.axes[1] == Axis::Z) {
        e.push(zz_gate(s.qubits[0], s.qubits[1], theta));
        return;
    }
    if (backend == Backend::CNOT) {
        const int anc = ancilla_of(out);
        e.in_frame(s, [](std::size_t) { return Axis::Z; }, [&] {
            e.parity_ladder(s, anc, true);
            e.push(local_gate(anc, Axis::Z, 2 * theta));
            e.parity_ladder(s, anc, false);
        });
        return;
    }
    if (k == 2) {
        // exp(-i theta XX) = MS(2 theta) up to phase, or one resonant gate.
        e.in_frame(s, [](std::size_t) { return Axis::X; }, [&] {
            if (backend == Backend::UMQ) e.push(resonant_xx_gate(s.qubits[0], s.qubits[1], theta));
            else e.push(ms_gate(s.qubits, 2 * theta));
        });
        return;
    }

    // MS(pi/2)^+ sigma_m MS(pi/2) = sign * Z_m X_rest, with sigma = Z for odd
    // weight and Y for even weight.
    const bool odd = k % 2 == 1;
    const Axis inner = odd ? Axis::Z : Axis::Y;
    const int half = static_cast<int>(odd ? (k - 1) / 2 : k / 2);
    const double sign = half % 2 == 0 ? 1.0 : -1.0;
    e.in_frame(s, [](std::size_t i) { return i == 0 ? Axis::Z : Axis::X; }, [&] {
        e.entangler(s, backend, +1.0);
        e.push(local_gate(s.qubits[0], inner, 2 * theta * sign));
        e.entangler(s, backend, -1.0);
    });
}

void emit_boson_coupled(GateSequence& out, const MixedTerm& term, double theta, Backend backend) {
    if (term.bosons.size() != 1) {
        throw CompileError("term '" + term.label() +
                           "' must couple to exactly one boson quadrature to be compiled");
    }
    const BosonFactor& b = term.bosons[0];
    switch (b.kind) {
        case BosonKind::Position: break;
        case BosonKind::Number:
            throw CompileError("term '" + term.label() +
                               "': number operator inside a spin-coupled term is not supported");
        case BosonKind::Lower:
        case BosonKind::Raise:
            throw CompileError("term '" + term.label() +
                               "': bare ladder operator without a Hermitian partner");
    }
    if (theta == 0.0) return;
    Emitter e(out, term.group);
    const Support s(term.pauli);
    const std::size_t k = s.size();

    if (k == 0) {
        e.push(displacement_gate(b.mode, theta, b.phase));
        return;
    }
    if (k == 1) {
        e.in_frame(s, [](std::size_t) { return Axis::Z; },
                   [&] { e.push(spin_dependent_displacement(s.qubits[0], b.mode, theta, b.phase)); });
        return;
    }
    if (backend == Backend::CNOT) {
        const int anc = ancilla_of(out);
        e.in_frame(s, [](std::size_t) { return Axis::Z; }, [&] {
            e.parity_ladder(s, anc, true);
            e.push(spin_dependent_displacement(anc, b.mode, theta, b.phase));
            e.parity_ladder(s, anc, false);
        });
        return;
    }
    // The inner gate is always Z-type, so the designated ion sits in the Z frame
    // for odd weight and the Y frame for even weight.
    const bool odd = k % 2 == 1;
    const Axis designated = odd ? Axis::Z : Axis::Y;
    const int half = static_cast<int>(odd ? (k - 1) / 2 : (k - 2) / 2);
    const double sign = half % 2 == 0 ? 1.0 : -1.0;
    e.in_frame(s, [designated](std::size_t i) { return i == 0 ? designated : Axis::X; }, [&] {
        e.entangler(s, backend, +1.0);
        e.push(spin_dependent_displacement(s.qubits[0], b.mode, theta * sign, b.phase));
        e.entangler(s, backend, -1.0);
    });
}

}  // namespace

GateSequence compile_pauli_exponential(const PauliString& p, double theta, Backend backend,
                                       int n_qubits) {
    const int nq = n_qubits > 0 ? n_qubits : p.max_qubit();
    GateSequence out(nq, 0, backend == Backend::CNOT ? 1 : 0);
    out.begin_step();
    emit_pauli(out, p, theta, backend, {});
    return out;
}

GateSequence compile_boson_coupled_exponential(const MixedTerm& term, double theta, Backend backend,
                                               int n_qubits, int n_modes) {
    const int nq = n_qubits > 0 ? n_qubits : term.pauli.max_qubit();
    int nm = n_modes;
    for (const auto& b : term.bosons) nm = std::max(nm, b.mode);
    GateSequence out(nq, nm, backend == Backend::CNOT ? 1 : 0);
    out.begin_step();
    emit_boson_coupled(out, term, theta, backend);
    return out;
}

GateSequence compile_free_boson(int mode, double omega, double dt, int n_modes) {
    if (dt < 0) throw CompileError("free evolution time must be non-negative");
    GateSequence out(0, std::max(mode, n_modes));
    out.begin_step();
    const double theta = omega * dt;
    if (theta != 0.0) out.push(mode_drive(mode, theta));
    return out;
}

GateSequence compile_plan(const TrotterPlan& plan, Backend backend) {
    const MixedPauliSum& src = plan.source;
    GateSequence out(src.n_qubits(), src.n_modes(), backend == Backend::CNOT ? 1 : 0);
    for (const auto& step : plan.steps) {
        out.begin_step();
        for (const auto& entry : step) {
            const MixedTerm& term = src.terms().at(entry.term);
            if (term.bosons.empty()) {
                emit_pauli(out, term.pauli, entry.angle, backend, term.group);
            } else if (term.bosons.size() == 1 && term.bosons[0].kind == BosonKind::Number &&
                       term.pauli.weight() == 0) {
                if (entry.angle != 0.0) {
                    Gate g = mode_drive(term.bosons[0].mode, entry.angle);
                    g.group = term.group;
                    out.push(std::move(g));
                }
            } else {
                emit_boson_coupled(out, term, entry.angle, backend);
            }
        }
    }
    return out;
}

MeasurementMapping measurement_mapping(const PauliString& p, int n_qubits) {
    if (p.weight() == 0) throw CompileError("identity string needs no measurement");
    MeasurementMapping m;
    m.rotation = GateSequence(n_qubits > 0 ? n_qubits : p.max_qubit(), 0);
    m.rotation.begin_step();
    Emitter e(m.rotation, {});
    const Support s(p);
    const std::size_t k = s.size();
    m.qubit = s.qubits[0];
    if (k == 1) {
        if (auto g = frame_rotation(s.qubits[0], s.axes[0], Axis::Z)) e.push(*g);
        return m;
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (auto g = frame_rotation(s.qubits[i], s.axes[i], i == 0 ? Axis::Z : Axis::X)) e.push(*g);
    }
    e.entangler(s, Backend::MS, +1.0);
    const bool odd = k % 2 == 1;
    if (!odd) e.push(local_gate(s.qubits[0], Axis::X, kPi / 2));  // Y readout -> Z
    const int half = static_cast<int>(odd ? (k - 1) / 2 : k / 2);
    m.sign = half % 2 == 0 ? 1.0 : -1.0;
    return m;
}

}  // namespace iontrotter
