#include "doctest.h"
#include "iontrotter/simulator.hpp"
#include "iontrotter/trotter.hpp"
#include "oracles.hpp"

using namespace iontrotter;

namespace {

MixedPauliSum sum_of(int n, std::initializer_list<std::pair<const char*, double>> terms) {
    MixedPauliSum s(n, 0);
    for (const auto& [label, c] : terms) {
        PauliString p = parse_pauli(label);
        p.coefficient = c;
        s.add({p, {}, {}});
    }
    return s;
}

}  // namespace

TEST_CASE("argument checks") {
    const MixedPauliSum s = sum_of(1, {{"X1", 1.0}});
    CHECK_THROWS_AS(trotterize(s, 1.0, 4, 3), std::invalid_argument);
    CHECK_THROWS_AS(trotterize(s, 1.0, 0, 1), std::invalid_argument);
    MixedPauliSum bad(1, 0);
    bad.add({PauliString{cplx{0, 1}, {{1, Axis::X}}}, {}, {}});
    CHECK_THROWS_AS(trotterize(bad, 1.0, 1, 1), std::invalid_argument);
}

TEST_CASE("first order schedule") {
    const MixedPauliSum s = sum_of(2, {{"X1", 0.5}, {"Z1 Z2", -2.0}, {"I", 3.0}});
    const TrotterPlan plan = trotterize(s, 2.0, 4, 1);
    REQUIRE(plan.steps.size() == 4);
    for (const auto& step : plan.steps) {
        REQUIRE(step.size() == 2);
        CHECK(step[0] == ScheduledTerm{0, 0.25});
        CHECK(step[1] == ScheduledTerm{1, -1.0});
    }
    CHECK(plan.phase_terms == std::vector<std::size_t>{2});
    CHECK(plan.global_phase == doctest::Approx(6.0));
    CHECK(plan.step_time() == doctest::Approx(0.5));
}

TEST_CASE("second order schedule") {
    const MixedPauliSum s = sum_of(1, {{"X1", 1.0}, {"Y1", 1.0}, {"Z1", 1.0}});
    const TrotterPlan plan = trotterize(s, 1.0, 1, 2);
    REQUIRE(plan.steps.size() == 1);
    const auto& step = plan.steps[0];
    REQUIRE(step.size() == 5);
    CHECK(step[0] == ScheduledTerm{0, 0.5});
    CHECK(step[1] == ScheduledTerm{1, 0.5});
    CHECK(step[2] == ScheduledTerm{2, 1.0});
    CHECK(step[3] == ScheduledTerm{1, 0.5});
    CHECK(step[4] == ScheduledTerm{0, 0.5});
}

TEST_CASE("single term is exact") {
    const MixedPauliSum s = sum_of(3, {{"X1 Y2 Z3", 0.7}});
    for (int n : {1, 3, 8}) {
        const HilbertSpec spec(3);
        const auto U = trotter_product(trotterize(s, 1.3, n, 1), spec);
        CHECK(oracle::phase_distance(U, oracle::expm(oracle::mixed_dense(s, {}), 1.3)) < 1e-12);
    }
}

TEST_CASE("two noncommuting terms: error halves with the step count") {
    const MixedPauliSum s = sum_of(1, {{"X1", 1.0}, {"Z1", 1.0}});
    const HilbertSpec spec(1);
    const auto exact = oracle::expm(oracle::mixed_dense(s, {}), 1.0);
    const double e1 = oracle::aligned_norm(trotter_product(trotterize(s, 1.0, 1, 1), spec), exact);
    const double e2 = oracle::aligned_norm(trotter_product(trotterize(s, 1.0, 2, 1), spec), exact);
    CHECK(e2 / e1 == doctest::Approx(0.5).epsilon(0.25));
}

TEST_CASE("hubbard 1x2: ten steps beat five") {
    const MixedPauliSum s = jw_transform(build_hubbard(1, 2, 1.0, 2.0));
    const HilbertSpec spec(4);
    const auto exact = exact_evolution(s, 1.0, spec);
    const double d5 = unitary_distance(trotter_product(trotterize(s, 1.0, 5, 1), spec), exact);
    const double d10 = unitary_distance(trotter_product(trotterize(s, 1.0, 10, 1), spec), exact);
    CHECK(d10 < d5);
}

TEST_CASE("plans are deterministic") {
    const MixedPauliSum s = jw_transform(build_holstein(3, 1.0, 0.4, 1.0));
    const TrotterPlan a = trotterize(s, 0.8, 5, 2);
    const TrotterPlan b = trotterize(s, 0.8, 5, 2);
    CHECK(a.steps == b.steps);
    CHECK(a.phase_terms == b.phase_terms);
}
