#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "iontrotter/compiler.hpp"
#include "iontrotter/gates.hpp"
#include "iontrotter/hilbert.hpp"
#include "iontrotter/jordan_wigner.hpp"
#include "iontrotter/trotter.hpp"

namespace iontrotter {

/// exp(-i H t) for Hermitian H via eigendecomposition.
Operator expm_hermitian(const Operator& H, double t);

/// exp(-i H t) with H = matrix_of(sum). Throws std::invalid_argument when the
/// matrix is not Hermitian and std::length_error past the dimension limit.
Operator exact_evolution(const MixedPauliSum& sum, double t, const HilbertSpec& spec);

class State {
public:
    State() = default;
    /// Basis state `index` of `spec`.
    static State basis(const HilbertSpec& spec, std::size_t index = 0);
    /// Throws std::invalid_argument when the amplitudes are not normalized to 1e-10.
    static State from_amplitudes(const HilbertSpec& spec, Eigen::VectorXcd amplitudes);

    const HilbertSpec& spec() const { return spec_; }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }
    Eigen::VectorXcd& mutable_amplitudes() { return amps_; }
    double norm() const { return amps_.norm(); }
    /// Largest top-level boson population seen after any mode gate so far.
    double peak_leakage() const { return peak_leakage_; }
    void note_leakage(double p) { peak_leakage_ = std::max(peak_leakage_, p); }

private:
    HilbertSpec spec_;
    Eigen::VectorXcd amps_;
    double peak_leakage_ = 0.0;
};

/// Gate unitary on its own subsystem: local index = qubit_bits * levels + n,
/// with gate.qubits[0] the least significant qubit bit.
Operator local_unitary(const Gate& g, const HilbertSpec& spec);

/// Full-space matrix of a single gate.
Operator gate_matrix(const Gate& g, const HilbertSpec& spec);

/// Applies U_g to every column of `columns` (rows = spec.dimension()).
void apply_gate_inplace(Eigen::MatrixXcd& columns, const Gate& g, const HilbertSpec& spec);

State apply_gate(State state, const Gate& g);

/// Product U_n ... U_1 of all gates in order.
Operator sequence_unitary(const GateSequence& seq, const HilbertSpec& spec);

/// Block of U with all ancilla qubits (the top `n_ancillas` qubits of `spec`) in |0>.
Operator restrict_to_ancilla_zero(const Operator& U, const HilbertSpec& spec, int n_ancillas);

/// Register of `seq` (system + ancilla qubits) with the given mode cutoffs.
HilbertSpec spec_for_sequence(const GateSequence& seq, std::vector<int> boson_cutoffs,
                              std::size_t dimension_limit = kDefaultDimensionLimit);

/// 1 - |tr(U^+ V)| / d; zero iff U and V agree up to a global phase.
double unitary_distance(const Operator& U, const Operator& V);

/// Spectral norm of U - e^{i a} V with a = arg tr(V^+ U). Linear in small
/// generator errors, unlike unitary_distance.
double phase_aligned_norm_distance(const Operator& U, const Operator& V);

/// Product of exact term exponentials following the plan's schedule.
Operator trotter_product(const TrotterPlan& plan, const HilbertSpec& spec);

struct ScanPoint {
    int n_steps = 0;
    double distance = 0.0;    ///< unitary_distance
    double norm_error = 0.0;  ///< phase_aligned_norm_distance
};

/// Compiles the plan for each step count and compares the compiled unitary
/// (ancilla block for CNOT) with exact evolution.
std::vector<ScanPoint> trotter_error_scan(const MixedPauliSum& sum, double t,
                                          const std::vector<int>& steps, Backend backend,
                                          const HilbertSpec& spec, int order = 1);

enum class MeasurementRoute { Direct, NonlocalGateMapping };

/// <P> for the bare string P (coefficient ignored).
double pauli_expectation(const State& state, const PauliString& p,
                         MeasurementRoute route = MeasurementRoute::Direct);

/// sum_k <T_k>; throws std::invalid_argument when the sum is not Hermitian.
double energy_expectation(const State& state, const MixedPauliSum& sum);

struct LeakageReport {
    std::vector<double> top_population;  ///< per mode, population of the highest kept level
    bool warning = false;                ///< any population > threshold
};

LeakageReport leakage_check(const State& state, double threshold = 1e-6);

}  // namespace iontrotter
