#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "iontrotter/ham_ir.hpp"
#include "iontrotter/hilbert.hpp"
#include "iontrotter/pauli.hpp"

namespace iontrotter {

enum class BosonKind { Position, Number, Lower, Raise };

/// Factor acting on one bosonic mode. Position is the quadrature
/// e^{-i phase} a + e^{+i phase} a^+ (phase 0 gives a + a^+).
struct BosonFactor {
    int mode = 1;
    BosonKind kind = BosonKind::Position;
    double phase = 0.0;

    friend bool operator==(const BosonFactor&, const BosonFactor&) = default;
};

/// A Pauli string times an ordered product of boson factors. The coefficient
/// lives in `pauli.coefficient`.
struct MixedTerm {
    PauliString pauli;
    std::vector<BosonFactor> bosons;
    std::string group;

    bool is_identity() const { return pauli.factors.empty() && bosons.empty(); }
    /// Self-adjoint on its own: real coefficient and Hermitian boson part.
    bool is_hermitian(double tol = 1e-12) const;
    std::string label() const;

    friend bool operator==(const MixedTerm&, const MixedTerm&) = default;
};

/// Sum of mixed terms with like terms combined. Terms keep the order in which
/// they first appeared.
class MixedPauliSum {
public:
    MixedPauliSum() = default;
    MixedPauliSum(int n_qubits, int n_modes) : n_qubits_(n_qubits), n_modes_(n_modes) {}

    int n_qubits() const { return n_qubits_; }
    int n_modes() const { return n_modes_; }
    const std::vector<MixedTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    /// Adds into an existing like term if present.
    void add(MixedTerm term);
    /// Drops terms with |coefficient| < tol and snaps near-real coefficients to real.
    void prune(double tol = 1e-14);

    /// Closed under conjugation (term by term or via lower/raise partners).
    bool is_hermitian(double tol = 1e-12) const;

    friend bool operator==(const MixedPauliSum& a, const MixedPauliSum& b) {
        return a.n_qubits_ == b.n_qubits_ && a.n_modes_ == b.n_modes_ && a.terms_ == b.terms_;
    }

private:
    int n_qubits_ = 0;
    int n_modes_ = 0;
    std::vector<MixedTerm> terms_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Image of b_mode (dagger = false) or b_mode^+ as (X -+ iY)/2 on qubit `mode`
/// with a Z string on all lower qubits. Occupied maps to |0>, so
/// b^+ b = (1 + Z)/2.
MixedPauliSum jw_ladder(int mode, bool dagger, int n_modes);

/// Jordan-Wigner image of a Hermitian Hamiltonian. Fermionic mode j becomes
/// qubit j; bosonic factors are carried through, a^+ a collapses to Number and
/// conjugate lower/raise pairs to a Position quadrature.
/// Throws std::invalid_argument if H is not Hermitian.
MixedPauliSum jw_transform(const Hamiltonian& H);

/// Applies `term` to basis state `index`, appending (row, amplitude) pairs.
void term_action(const MixedTerm& term, const HilbertSpec& spec, std::size_t index,
                 std::vector<std::pair<std::size_t, cplx>>& out);

/// Dense matrix of the sum on qubits (x) truncated bosons.
Operator matrix_of(const MixedPauliSum& sum, const HilbertSpec& spec);
Operator matrix_of(const MixedTerm& term, const HilbertSpec& spec);

/// Spec sized for the sum: its qubits and one cutoff per mode.
HilbertSpec spec_for(const MixedPauliSum& sum, std::vector<int> boson_cutoffs,
                     std::size_t dimension_limit = kDefaultDimensionLimit);

}  // namespace iontrotter
