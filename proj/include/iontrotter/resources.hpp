#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "iontrotter/gates.hpp"

namespace iontrotter {

/// Durations in microseconds.
struct TimingModel {
    double t_ms_2ion = 20.0;
    bool ms_scaling = false;  ///< multiply MS-type gates by N/2
    double t_local = 1.0;     ///< excluded from the headline total
    double t_sideband_2ion = 20.0;
    bool sideband_scaling = false;  ///< multiply sideband-type gates by sqrt(N/2)
    double resonant_speedup = 1000.0;
    double resonant_overhead = 0.0;  ///< added per ResonantXX gate
    double per_gate_error = 1e-4;

    /// Throws std::invalid_argument on negative durations or a non-positive speedup.
    void validate() const;
};

struct GateCounts {
    std::map<GateKind, std::size_t> by_kind;
    std::map<std::string, std::size_t> entangling_by_group;
    std::vector<std::size_t> entangling_per_step;
    std::size_t entangling_total = 0;
    std::size_t mode_drives = 0;
    std::size_t local_total = 0;  ///< Local and Displacement gates

    std::size_t count(GateKind k) const;
    /// Entangling gates plus passive-ion mode drives.
    std::size_t census() const { return entangling_total + mode_drives; }
};

GateCounts count_gates(const GateSequence& seq);

/// Modeled duration of one gate on an N-ion chain.
double gate_duration(const Gate& g, const TimingModel& model, int n_ions);

struct TimeEstimate {
    double entangling_us = 0.0;  ///< headline: entangling gates only
    double local_us = 0.0;       ///< Local, ModeDrive and Displacement gates
    std::vector<double> entangling_per_step_us;
    std::map<GateKind, double> by_kind_us;

    double total_us() const { return entangling_us + local_us; }
};

/// Throws std::invalid_argument when n_ions is below the highest target qubit.
TimeEstimate estimate_time(const GateSequence& seq, const TimingModel& model, int n_ions);

/// Two-ion MS time over the time of N resonant gates.
double umq_speedup(int n_ions, const TimingModel& model = {});

struct ClassicalCost {
    bool overflow = false;        ///< dimension exceeds 2^63
    std::uint64_t dimension = 0;  ///< valid when !overflow
    double log2_dimension = 0.0;
};

/// 2^n_qubits * (cutoff+1)^boson_modes.
ClassicalCost classical_cost(int n_qubits, int boson_modes, int cutoff);

/// (MS gates, sideband-type gates) per Trotter step of an N-site Holstein chain.
std::pair<std::size_t, std::size_t> holstein_count_formula(int n_sites);

struct ResourceReport {
    GateCounts counts;
    TimeEstimate time;
    std::size_t n_steps = 0;
    int n_ions = 0;
    TimingModel model;
    double cumulative_error_budget = 0.0;
    ClassicalCost classical;
    double umq_speedup = 0.0;
};

ResourceReport make_report(const GateSequence& seq, const TimingModel& model, int n_ions,
                           const ClassicalCost& classical);

}  // namespace iontrotter
