#include "iontrotter/trotter.hpp"

#include <stdexcept>
#include <string>

namespace iontrotter {

TrotterPlan trotterize(const MixedPauliSum& sum, double t, int n_steps, int order) {
    if (order != 1 && order != 2) throw std::invalid_argument("Trotter order must be 1 or 2");
    if (n_steps < 1) throw std::invalid_argument("need at least one Trotter step");

    TrotterPlan plan;
    plan.source = sum;
    plan.total_time = t;
    plan.n_steps = n_steps;
    plan.order = order;

    const double dt = t / n_steps;
    std::vector<ScheduledTerm> forward;
    for (std::size_t i = 0; i < sum.terms().size(); ++i) {
        const MixedTerm& term = sum.terms()[i];
        if (!term.is_hermitian()) {
            throw std::invalid_argument("term '" + term.label() +
                                        "' is not Hermitian on its own and cannot be exponentiated");
        }
        const double c = term.pauli.coefficient.real();
        if (term.is_identity()) {
            plan.phase_terms.push_back(i);
            plan.global_phase += c * t;
            continue;
        }
        forward.push_back({i, c * dt});
    }

    std::vector<ScheduledTerm> step;
    if (order == 1 || forward.empty()) {
        step = forward;
    } else {
        for (auto s : forward) step.push_back({s.term, 0.5 * s.angle});
        step.back().angle *= 2.0;
        for (auto it = forward.rbegin() + 1; it != forward.rend(); ++it) {
            step.push_back({it->term, 0.5 * it->angle});
        }
    }
    plan.steps.assign(static_cast<std::size_t>(n_steps), step);
    return plan;
}

}  // namespace iontrotter
