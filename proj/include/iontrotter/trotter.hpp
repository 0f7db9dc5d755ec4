#pragma once

#include <cstddef>
#include <vector>

#include "iontrotter/jordan_wigner.hpp"

namespace iontrotter {

/// One scheduled exponential exp(-i angle * T) where T is the source term with
/// its coefficient stripped, i.e. angle = coefficient * t / n_steps (halved in
/// second-order sweeps).
struct ScheduledTerm {
    std::size_t term = 0;
    double angle = 0.0;

    friend bool operator==(const ScheduledTerm&, const ScheduledTerm&) = default;
};

struct TrotterPlan {
    MixedPauliSum source;
    double total_time = 0.0;
    int n_steps = 1;
    int order = 1;
    /// One schedule per Trotter step; identical across steps.
    std::vector<std::vector<ScheduledTerm>> steps;
    /// Identity terms are not compiled; they contribute exp(-i global_phase).
    std::vector<std::size_t> phase_terms;
    double global_phase = 0.0;

    double step_time() const { return total_time / n_steps; }
};

/// Product formula schedule: order 1 sweeps the non-identity terms once per
/// step in source order; order 2 sweeps forward then backward with half angles,
/// merging the two half steps of the middle term.
/// Throws std::invalid_argument for order not in {1,2}, n_steps < 1, or a term
/// that is not individually Hermitian.
TrotterPlan trotterize(const MixedPauliSum& sum, double t, int n_steps = 10, int order = 1);

}  // namespace iontrotter
