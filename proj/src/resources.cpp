#include "iontrotter/resources.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iontrotter {

void TimingModel::validate() const {
    for (double d : {t_ms_2ion, t_local, t_sideband_2ion, resonant_overhead}) {
        if (!(d >= 0.0)) throw std::invalid_argument("timing durations must be non-negative");
    }
    if (!(resonant_speedup > 0.0)) throw std::invalid_argument("resonant speedup must be positive");
    if (!(per_gate_error >= 0.0 && per_gate_error <= 1.0)) {
        throw std::invalid_argument("per-gate error must be a probability");
    }
}

std::size_t GateCounts::count(GateKind k) const {
    const auto it = by_kind.find(k);
    return it == by_kind.end() ? 0 : it->second;
}

GateCounts count_gates(const GateSequence& seq) {
    GateCounts c;
    c.entangling_per_step.assign(seq.n_steps(), 0);
    for (std::size_t s = 0; s < seq.n_steps(); ++s) {
        const auto [begin, end] = seq.step_range(s);
        for (std::size_t i = begin; i < end; ++i) {
            const Gate& g = seq.gates()[i];
            ++c.by_kind[g.kind];
            if (g.is_entangling()) {
                ++c.entangling_total;
                ++c.entangling_per_step[s];
                ++c.entangling_by_group[g.group];
            } else if (g.kind == GateKind::ModeDrive) {
                ++c.mode_drives;
            } else {
                ++c.local_total;
            }
        }
    }
    return c;
}

double gate_duration(const Gate& g, const TimingModel& m, int n_ions) {
    const double half = n_ions / 2.0;
    switch (g.kind) {
        case GateKind::MS:
            if (!g.is_entangling()) return m.t_local;
            [[fallthrough]];
        case GateKind::ZZ:
        case GateKind::CNOT:
            return m.t_ms_2ion * (m.ms_scaling ? half : 1.0);
        case GateKind::RedSideband:
        case GateKind::BlueSideband:
        case GateKind::SpinDepDisp:
            return m.t_sideband_2ion * (m.sideband_scaling ? std::sqrt(half) : 1.0);
        case GateKind::ResonantXX:
            return m.t_ms_2ion / m.resonant_speedup + m.resonant_overhead;
        case GateKind::Local:
        case GateKind::ModeDrive:
        case GateKind::Displacement:
            return m.t_local;
    }
    return 0.0;
}

TimeEstimate estimate_time(const GateSequence& seq, const TimingModel& model, int n_ions) {
    model.validate();
    if (n_ions < seq.total_qubits() || n_ions < 1) {
        throw std::invalid_argument("chain of " + std::to_string(n_ions) +
                                    " ions cannot host a register of " +
                                    std::to_string(seq.total_qubits()) + " qubits");
    }
    TimeEstimate t;
    t.entangling_per_step_us.assign(seq.n_steps(), 0.0);
    for (std::size_t s = 0; s < seq.n_steps(); ++s) {
        const auto [begin, end] = seq.step_range(s);
        for (std::size_t i = begin; i < end; ++i) {
            const Gate& g = seq.gates()[i];
            const double d = gate_duration(g, model, n_ions);
            t.by_kind_us[g.kind] += d;
            if (g.is_entangling()) {
                t.entangling_us += d;
                t.entangling_per_step_us[s] += d;
            } else {
                t.local_us += d;
            }
        }
    }
    return t;
}

double umq_speedup(int n_ions, const TimingModel& model) {
    model.validate();
    if (n_ions < 2) throw std::invalid_argument("UMQ speedup needs at least two ions");
    const double resonant = model.t_ms_2ion / model.resonant_speedup + model.resonant_overhead;
    return model.t_ms_2ion / (n_ions * resonant);
}

ClassicalCost classical_cost(int n_qubits, int boson_modes, int cutoff) {
    if (n_qubits < 0 || boson_modes < 0 || cutoff < 0) {
        throw std::invalid_argument("classical cost needs non-negative sizes");
    }
    ClassicalCost c;
    c.log2_dimension = n_qubits + boson_modes * std::log2(static_cast<double>(cutoff) + 1.0);
    if (n_qubits >= 64 || c.log2_dimension > 63.0 + 1e-9) {
        c.overflow = true;
        return c;
    }
    unsigned __int128 d = static_cast<unsigned __int128>(1) << n_qubits;
    for (int m = 0; m < boson_modes; ++m) {
        d *= static_cast<unsigned>(cutoff + 1);
        if (d > (static_cast<unsigned __int128>(1) << 63)) {
            c.overflow = true;
            return c;
        }
    }
    c.dimension = static_cast<std::uint64_t>(d);
    return c;
}

std::pair<std::size_t, std::size_t> holstein_count_formula(int n_sites) {
    if (n_sites < 1) throw std::invalid_argument("Holstein chain needs at least one site");
    const auto n = static_cast<std::size_t>(n_sites);
    return {2 * (n - 1), 2 * n};
}

ResourceReport make_report(const GateSequence& seq, const TimingModel& model, int n_ions,
                           const ClassicalCost& classical) {
    ResourceReport r;
    r.counts = count_gates(seq);
    r.time = estimate_time(seq, model, n_ions);
    r.n_steps = seq.n_steps();
    r.n_ions = n_ions;
    r.model = model;
    r.cumulative_error_budget = static_cast<double>(r.counts.entangling_total) * model.per_gate_error;
    r.classical = classical;
    r.umq_speedup = n_ions >= 2 ? umq_speedup(n_ions, model) : 0.0;
    return r;
}

}  // namespace iontrotter
