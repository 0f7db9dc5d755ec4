#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace iontrotter {

using cplx = std::complex<double>;

enum class ModeKind { Fermionic, Bosonic };

/// A 1-based mode label. Spin-orbital numbering for lattice models is
/// mode(site, down) = 2(site-1)+1, mode(site, up) = 2(site-1)+2.
struct ModeIndex {
    ModeKind kind = ModeKind::Fermionic;
    int index = 1;

    friend auto operator<=>(const ModeIndex&, const ModeIndex&) = default;
};

struct LadderFactor {
    ModeIndex mode;
    bool dagger = false;

    friend bool operator==(const LadderFactor&, const LadderFactor&) = default;
};

inline LadderFactor fermion(int index, bool dagger) {
    return {{ModeKind::Fermionic, index}, dagger};
}
inline LadderFactor boson(int index, bool dagger) {
    return {{ModeKind::Bosonic, index}, dagger};
}

/// coefficient * f_1 f_2 ... f_n, factors applied in written order (f_n acts first).
/// `group` tags the physical origin of the term (e.g. "hop-row") and is carried
/// through the whole pipeline so gate censuses can be split by term family.
struct ProductTerm {
    cplx coefficient{1.0, 0.0};
    std::vector<LadderFactor> factors;
    std::string group;

    friend bool operator==(const ProductTerm&, const ProductTerm&) = default;
};

class Hamiltonian {
public:
    Hamiltonian() = default;
    Hamiltonian(int n_fermionic, int n_bosonic);

    int n_fermionic() const { return n_fermionic_; }
    int n_bosonic() const { return n_bosonic_; }
    const std::vector<ProductTerm>& terms() const { return terms_; }

    /// Appends a term; throws std::invalid_argument on out-of-range modes.
    void add(ProductTerm term);
    /// Appends `term` and its conjugate transpose.
    void add_with_adjoint(const ProductTerm& term);

    friend bool operator==(const Hamiltonian&, const Hamiltonian&) = default;

private:
    int n_fermionic_ = 0;
    int n_bosonic_ = 0;
    std::vector<ProductTerm> terms_;
};

ProductTerm adjoint(const ProductTerm& term);

// ---------------------------------------------------------------------------
// Model builders

int hubbard_mode(int site, bool spin_up);

/// Hubbard model on a rows x cols lattice, sites rastered row-major
/// (site = (r-1)*cols + c). Hopping w on every nearest-neighbour link for both
/// spins with explicit adjoint partners, onsite U n_up n_down.
/// Groups: "hop-row", "hop-col", "onsite".
Hamiltonian build_hubbard(int rows, int cols, double w, double U);

/// Holstein chain: h (b_i^+ b_{i+1} + h.c.) + g n_i (a_i + a_i^+) + omega0 a_i^+ a_i.
/// Groups: "hop", "coupling", "free".
Hamiltonian build_holstein(int n_sites, double h, double g, double omega0);

/// Second-quantized electronic Hamiltonian from one- and two-body integrals.
/// `h_pqrs` is flattened row-major over (p, q, r, s) and has n^4 entries.
Hamiltonian build_chemistry(const Eigen::MatrixXcd& h_pq, const std::vector<cplx>& h_pqrs);

/// Coupling tensors for a finite-mode truncation of a Yukawa-like
/// psi^+ psi A interaction. Each tensor is flattened row-major over
/// (first fermion index, second fermion index, boson index):
///   fermion_fermion      b_p^+ b_q a_k          shape nf x nf x nb
///   pair_creation        b_p^+ d_q^+ a_k        shape nf x nd x nb
///   pair_annihilation    d_p b_q a_k            shape nd x nf x nb
///   antifermion          d_p d_q^+ a_k          shape nd x nd x nb
/// Every generated term gets its Hermitian partner (coefficient conjugated, a_k -> a_k^+).
struct FieldCouplings {
    std::vector<cplx> fermion_fermion;
    std::vector<cplx> pair_creation;
    std::vector<cplx> pair_annihilation;
    std::vector<cplx> antifermion;
};

/// Antifermion momentum q maps to fermionic mode n_fermion_momenta + q.
Hamiltonian build_discretized_field_theory(int n_fermion_momenta, int n_antifermion_momenta,
                                           int n_boson_momenta, double g,
                                           const FieldCouplings& couplings);

// ---------------------------------------------------------------------------
// Algebra

/// Normal-ordered expansion: creators first (ascending mode), annihilators after
/// (descending mode), fermionic signs and contractions applied. Keys are the
/// canonical factor sequences.
using NormalOrderedForm = std::map<std::vector<std::pair<ModeIndex, bool>>, cplx>;

NormalOrderedForm normal_order(const ProductTerm& term);
NormalOrderedForm normal_order(const Hamiltonian& H);

/// True iff H equals its adjoint as an operator (compared in normal-ordered form).
bool hermiticity_check(const Hamiltonian& H, double tol = 1e-12);

/// Dense matrix in the occupation-number basis. Fermion mode j is bit j-1 of
/// the fermionic part (1 = occupied); bosonic levels follow, mode 1 most
/// significant. Index = fermion_bits * D_b + boson_index.
/// `boson_cutoffs[k]` is the max phonon number of bosonic mode k+1.
Eigen::MatrixXcd fock_matrix(const Hamiltonian& H, const std::vector<int>& boson_cutoffs = {},
                             std::size_t dimension_limit = std::size_t{1} << 14);

}  // namespace iontrotter
