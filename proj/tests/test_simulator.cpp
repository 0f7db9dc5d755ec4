#include <cmath>
#include <numbers>

#include "doctest.h"
#include "iontrotter/simulator.hpp"
#include "oracles.hpp"

using namespace iontrotter;
using oracle::Mat;

namespace {

constexpr double kPi = std::numbers::pi;

double max_diff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Embeds a matrix on (qubits..., optional mode) of a 3-qubit, 1-mode register
// with cutoff `cut` by building its generator from oracle Paulis.
Mat qubit_op(const std::map<int, char>& f, int nq) {
    Mat out = oracle::identity(1);
    for (int q = nq; q >= 1; --q) out = oracle::kron(out, oracle::pauli(f.count(q) ? f.at(q) : 'I'));
    return out;
}

}  // namespace

TEST_CASE("expm_hermitian") {
    Mat z = oracle::pauli('Z');
    const Mat U = expm_hermitian(z, kPi / 2);
    CHECK(std::abs(U(0, 0) - std::polar(1.0, -kPi / 2)) < 1e-14);
    CHECK(std::abs(U(1, 1) - std::polar(1.0, kPi / 2)) < 1e-14);
    CHECK(max_diff(expm_hermitian(z, 0.0), oracle::identity(2)) < 1e-15);

    oracle::Rng rng(2);
    const MixedPauliSum s = rng.hermitian_sum(3, 8);
    const HilbertSpec spec(3);
    const Mat a = exact_evolution(s, 0.4, spec) * exact_evolution(s, 0.9, spec);
    CHECK(max_diff(a, exact_evolution(s, 1.3, spec)) < 1e-10);
    CHECK(max_diff(exact_evolution(s, 1.3, spec), oracle::expm(oracle::mixed_dense(s, {}), 1.3)) < 1e-10);
    const Mat U3 = exact_evolution(s, 1.3, spec);
    CHECK(max_diff(U3.adjoint() * U3, oracle::identity(8)) < 1e-10);
}

TEST_CASE("exact evolution rejects non-Hermitian sums") {
    MixedPauliSum s(1, 0);
    s.add({PauliString{cplx{0, 1}, {{1, Axis::X}}}, {}, {}});
    CHECK_THROWS_AS(exact_evolution(s, 1.0, HilbertSpec(1)), std::invalid_argument);
}

TEST_CASE("gate unitaries match their generators") {
    const int nq = 3;
    const int cut = 4;
    const HilbertSpec spec(nq, {cut});
    const Mat I_b = oracle::identity(cut + 1);
    const Mat a = oracle::lower(cut + 1);
    const Mat ad = a.adjoint();
    const Mat Iq = oracle::identity(1 << nq);
    auto on_q = [&](const std::map<int, char>& f) { return oracle::kron(qubit_op(f, nq), I_b); };
    const cplx i{0, 1};
    const double th = 0.37;
    const double ph = 0.61;

    SUBCASE("MS") {
        const Mat S = std::cos(ph) * (on_q({{1, 'X'}}) + on_q({{3, 'X'}})) + std::sin(ph) * (on_q({{1, 'Y'}}) + on_q({{3, 'Y'}}));
        CHECK(max_diff(gate_matrix(ms_gate({1, 3}, th, ph), spec), oracle::expm(S * S, th / 4)) < 1e-12);
    }
    SUBCASE("Local") {
        for (char ax : {'X', 'Y', 'Z'}) {
            const Gate g = local_gate(2, parse_axis(ax), th);
            CHECK(max_diff(gate_matrix(g, spec), oracle::expm(on_q({{2, ax}}), th / 2)) < 1e-12);
        }
    }
    SUBCASE("ZZ and RXX") {
        CHECK(max_diff(gate_matrix(zz_gate(1, 3, th), spec), oracle::expm(on_q({{1, 'Z'}, {3, 'Z'}}), th)) < 1e-12);
        CHECK(max_diff(gate_matrix(resonant_xx_gate(3, 2, th), spec), oracle::expm(on_q({{2, 'X'}, {3, 'X'}}), th)) < 1e-12);
    }
    SUBCASE("CNOT") {
        // control 3, target 1: |1> on qubit 3 flips qubit 1
        const Mat P0 = (on_q({}) + on_q({{3, 'Z'}})) / 2.0;
        const Mat P1 = (on_q({}) - on_q({{3, 'Z'}})) / 2.0;
        CHECK(max_diff(gate_matrix(cnot_gate(3, 1), spec), P0 + P1 * on_q({{1, 'X'}})) < 1e-15);
    }
    SUBCASE("sidebands") {
        const Mat sp = (on_q({{2, 'X'}}) + i * on_q({{2, 'Y'}})) / 2.0;
        const Mat sm = sp.adjoint();
        const Mat A = oracle::kron(Iq, a);
        const Mat Ad = oracle::kron(Iq, ad);
        const Mat Hr = i * (sp * A * std::polar(1.0, ph) - sm * Ad * std::polar(1.0, -ph));
        const Mat Hb = i * (sp * Ad * std::polar(1.0, ph) - sm * A * std::polar(1.0, -ph));
        CHECK(max_diff(gate_matrix(red_sideband_gate(2, 1, th, ph), spec), oracle::expm(Hr, th)) < 1e-12);
        CHECK(max_diff(gate_matrix(blue_sideband_gate(2, 1, th, ph), spec), oracle::expm(Hb, th)) < 1e-12);
    }
    SUBCASE("displacements and drive") {
        const Mat X = oracle::kron(Iq, Mat(std::polar(1.0, -ph) * a + std::polar(1.0, ph) * ad));
        CHECK(max_diff(gate_matrix(spin_dependent_displacement(3, 1, th, ph), spec), oracle::expm(on_q({{3, 'Z'}}) * X, th)) < 1e-12);
        CHECK(max_diff(gate_matrix(displacement_gate(1, th, ph), spec), oracle::expm(X, th)) < 1e-12);
        CHECK(max_diff(gate_matrix(mode_drive(1, th), spec), oracle::expm(oracle::kron(Iq, Mat(ad * a)), th)) < 1e-12);
    }
    SUBCASE("invalid targets") {
        CHECK_THROWS_AS(gate_matrix(local_gate(4, Axis::X, 1.0), spec), std::invalid_argument);
        CHECK_THROWS_AS(gate_matrix(mode_drive(2, 1.0), spec), std::invalid_argument);
    }
}

TEST_CASE("apply_gate examples") {
    SUBCASE("x rotation by pi flips |1> to |0>") {
        const HilbertSpec spec(2);
        State s = apply_gate(State::basis(spec, 0b10), local_gate(2, Axis::X, kPi));
        CHECK(std::abs(s.amplitudes()(0b00)) == doctest::Approx(1.0));
    }
    SUBCASE("MS at pi/2 makes a maximally entangled pair") {
        const HilbertSpec spec(2);
        const State s = apply_gate(State::basis(spec, 0), ms_gate({1, 2}, kPi / 2));
        const Mat S = oracle::kron(oracle::pauli('X'), oracle::identity(2)) + oracle::kron(oracle::identity(2), oracle::pauli('X'));
        const oracle::Vec ref = oracle::expm(S * S, kPi / 8).col(0);
        CHECK((s.amplitudes() - ref).norm() < 1e-12);
        Eigen::Matrix2cd psi;
        psi << s.amplitudes()(0), s.amplitudes()(1), s.amplitudes()(2), s.amplitudes()(3);
        const auto sv = Eigen::JacobiSVD<Eigen::Matrix2cd>(psi).singularValues();
        CHECK(sv(0) == doctest::Approx(1 / std::sqrt(2.0)));
        CHECK(sv(1) == doctest::Approx(1 / std::sqrt(2.0)));
    }
    SUBCASE("spin-dependent displacement makes a coherent state") {
        const int cut = 8;
        const HilbertSpec spec(1, {cut});
        for (double th : {0.1, 0.3, 0.5}) {
            for (int spin : {0, 1}) {
                const State s = apply_gate(State::basis(spec, static_cast<std::size_t>(spin) * (cut + 1)),
                                           spin_dependent_displacement(1, 1, th));
                double mean = 0;
                for (int n = 0; n <= cut; ++n) mean += n * std::norm(s.amplitudes()(spin * (cut + 1) + n));
                CHECK(mean == doctest::Approx(th * th).epsilon(0.01));
                // coherent state with alpha = -i theta z, z = +-1
                const cplx alpha{0, spin == 0 ? -th : th};
                for (int n = 0; n <= 4; ++n) {
                    const cplx c = std::exp(-std::norm(alpha) / 2) * std::pow(alpha, n) / std::sqrt(std::tgamma(n + 1.0));
                    CHECK(std::abs(s.amplitudes()(spin * (cut + 1) + n) - c) < 1e-6);
                }
            }
        }
    }
    SUBCASE("norm is preserved") {
        const HilbertSpec spec(3, {5});
        oracle::Rng rng(8);
        State s = State::from_amplitudes(spec, rng.state(static_cast<Eigen::Index>(spec.dimension())));
        for (const Gate& g : {ms_gate({1, 2, 3}, 0.3, 0.2), red_sideband_gate(2, 1, 0.1), blue_sideband_gate(1, 1, 0.1),
                              spin_dependent_displacement(3, 1, 0.2), mode_drive(1, 0.4), cnot_gate(1, 2)}) {
            s = apply_gate(s, g);
            CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    SUBCASE("unnormalized amplitudes are rejected") {
        CHECK_THROWS_AS(State::from_amplitudes(HilbertSpec(1), Eigen::VectorXcd::Ones(2)), std::invalid_argument);
    }
}

TEST_CASE("sequence unitary") {
    const HilbertSpec spec(2);
    CHECK(max_diff(sequence_unitary(GateSequence(2, 0), spec), oracle::identity(4)) < 1e-15);
    GateSequence one(2, 0);
    one.push(zz_gate(1, 2, 0.4));
    CHECK(max_diff(sequence_unitary(one, spec), gate_matrix(one.gates()[0], spec)) < 1e-15);
    GateSequence two(2, 0);
    two.push(local_gate(1, Axis::X, 0.3));
    two.push(local_gate(1, Axis::Z, 0.5));
    CHECK(max_diff(sequence_unitary(two, spec), gate_matrix(two.gates()[1], spec) * gate_matrix(two.gates()[0], spec)) < 1e-15);
}

TEST_CASE("unitary distance") {
    oracle::Rng rng(4);
    const MixedPauliSum s = rng.hermitian_sum(2, 5);
    const Mat U = exact_evolution(s, 0.8, HilbertSpec(2));
    const Mat V = exact_evolution(rng.hermitian_sum(2, 5), 0.8, HilbertSpec(2));
    CHECK(unitary_distance(U, U) < 1e-15);
    CHECK(unitary_distance(U, std::polar(1.0, 1.1) * U) < 1e-15);
    CHECK(unitary_distance(oracle::identity(2), oracle::pauli('X')) == doctest::Approx(1.0));
    CHECK(unitary_distance(U, V) == doctest::Approx(unitary_distance(V, U)));
    CHECK(unitary_distance(U, V) > 0);
    CHECK(phase_aligned_norm_distance(U, std::polar(1.0, -0.4) * U) < 1e-14);
    CHECK_THROWS_AS(unitary_distance(U, oracle::identity(2)), std::invalid_argument);
}

TEST_CASE("ancilla block") {
    // exp(-i t X1 Z_anc) restricted to ancilla |0> is exp(-i t X1)
    const HilbertSpec full(2);
    const Mat U = oracle::expm(qubit_op({{1, 'X'}, {2, 'Z'}}, 2), 0.7);
    CHECK(max_diff(restrict_to_ancilla_zero(U, full, 1), oracle::expm(oracle::pauli('X'), 0.7)) < 1e-14);
}

TEST_CASE("trotter error scans") {
    SUBCASE("commuting sum") {
        MixedPauliSum s(3, 0);
        s.add({PauliString{0.4, {{1, Axis::Z}, {2, Axis::Z}}}, {}, {}});
        s.add({PauliString{-0.9, {{2, Axis::Z}, {3, Axis::Z}}}, {}, {}});
        s.add({PauliString{0.3, {{1, Axis::X}, {2, Axis::X}, {3, Axis::X}}}, {}, {}});
        for (const auto& p : trotter_error_scan(s, 1.0, {1, 2, 4}, Backend::MS, HilbertSpec(3))) {
            CHECK(p.distance < 1e-12);
        }
    }
    SUBCASE("hubbard 1x2 decreases monotonically") {
        const MixedPauliSum s = jw_transform(build_hubbard(1, 2, 1.0, 2.0));
        for (Backend b : {Backend::MS, Backend::UMQ, Backend::CNOT}) {
            const auto scan = trotter_error_scan(s, 1.0, {1, 2, 4, 8, 16}, b, HilbertSpec(4));
            for (std::size_t k = 1; k < scan.size(); ++k) CHECK(scan[k].distance < scan[k - 1].distance);
        }
    }
}

TEST_CASE("pauli expectations") {
    const HilbertSpec spec(3);
    CHECK(pauli_expectation(State::basis(spec, 0), parse_pauli("Z2")) == doctest::Approx(1.0));
    CHECK(pauli_expectation(State::basis(spec, 0), parse_pauli("Z2"), MeasurementRoute::NonlocalGateMapping) == doctest::Approx(1.0));
    const State plus = State::from_amplitudes(HilbertSpec(1), Eigen::Vector2cd(1, 1) / std::sqrt(2.0));
    CHECK(pauli_expectation(plus, parse_pauli("X1")) == doctest::Approx(1.0));
    CHECK(pauli_expectation(plus, parse_pauli("X1"), MeasurementRoute::NonlocalGateMapping) == doctest::Approx(1.0));
    oracle::Rng rng(17);
    for (int k = 0; k < 10; ++k) {
        const State s = State::from_amplitudes(spec, rng.state(8));
        const PauliString p = rng.pauli_string(3, 3);
        const double ref = (s.amplitudes().adjoint() * oracle::pauli_dense(p, 3) * s.amplitudes())(0).real();
        CHECK(std::abs(pauli_expectation(s, p) - ref) < 1e-12);
        CHECK(std::abs(pauli_expectation(s, p, MeasurementRoute::NonlocalGateMapping) - ref) < 1e-10);
    }
}

TEST_CASE("energy expectations") {
    SUBCASE("ground state") {
        const MixedPauliSum s = jw_transform(build_hubbard(1, 2, 1.0, 2.0));
        const Mat H = oracle::mixed_dense(s, {});
        Eigen::SelfAdjointEigenSolver<Mat> es(H);
        const State g = State::from_amplitudes(HilbertSpec(4), es.eigenvectors().col(0));
        CHECK(energy_expectation(g, s) == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-10));
    }
    SUBCASE("identity sum") {
        MixedPauliSum s(2, 0);
        s.add({PauliString{1.5, {}}, {}, {}});
        CHECK(energy_expectation(State::basis(HilbertSpec(2), 3), s) == doctest::Approx(1.5));
    }
    SUBCASE("random state against the dense oracle") {
        const MixedPauliSum s = jw_transform(build_holstein(2, 1.0, 0.5, 1.0));
        const std::vector<int> cut{3, 3};
        oracle::Rng rng(9);
        const auto psi = rng.state(64);
        const double ref = (psi.adjoint() * oracle::mixed_dense(s, cut) * psi)(0).real();
        CHECK(energy_expectation(State::from_amplitudes(HilbertSpec(2, cut), psi), s) == doctest::Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("leakage") {
    const int cut = 8;
    const HilbertSpec spec(1, {cut});
    CHECK(leakage_check(State::basis(spec, 0)).top_population[0] == 0.0);
    const State coh = apply_gate(State::basis(spec, 0), displacement_gate(1, 0.3));
    const auto r = leakage_check(coh);
    CHECK(r.top_population[0] < 1e-8);
    CHECK_FALSE(r.warning);
    CHECK(coh.peak_leakage() < 1e-8);
    const auto top = leakage_check(State::basis(spec, cut));
    CHECK(top.top_population[0] == doctest::Approx(1.0));
    CHECK(top.warning);
}
