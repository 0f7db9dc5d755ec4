#include "iontrotter/simulator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace iontrotter {

Operator expm_hermitian(const Operator& H, double t) {
    Eigen::SelfAdjointEigenSolver<Operator> solver(H);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    const Eigen::VectorXcd phases =
        (solver.eigenvalues().cast<cplx>() * cplx{0.0, -t}).array().exp().matrix();
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

Operator exact_evolution(const MixedPauliSum& sum, double t, const HilbertSpec& spec) {
    const Operator H = matrix_of(sum, spec);
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw std::invalid_argument("exact evolution requires a Hermitian generator");
    }
    return expm_hermitian(H, t);
}

// ---------------------------------------------------------------------------

State State::basis(const HilbertSpec& spec, std::size_t index) {
    if (index >= spec.dimension()) throw std::invalid_argument("basis index out of range");
    State s;
    s.spec_ = spec;
    s.amps_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(spec.dimension()));
    s.amps_(static_cast<Eigen::Index>(index)) = 1.0;
    return s;
}

State State::from_amplitudes(const HilbertSpec& spec, Eigen::VectorXcd amplitudes) {
    if (amplitudes.size() != static_cast<Eigen::Index>(spec.dimension())) {
        throw std::invalid_argument("amplitude vector does not match the Hilbert space");
    }
    if (std::abs(amplitudes.norm() - 1.0) > 1e-10) throw std::invalid_argument("state is not normalized");
    State s;
    s.spec_ = spec;
    s.amps_ = std::move(amplitudes);
    return s;
}

// ---------------------------------------------------------------------------

namespace {

struct LocalLayout {
    std::vector<int> qubits;
    int mode = 0;
    int levels = 1;
};

LocalLayout layout_of(const Gate& g, const HilbertSpec& spec) {
    LocalLayout l;
    l.qubits = g.qubits;
    for (int q : l.qubits) {
        if (q < 1 || q > spec.n_qubits()) {
            throw std::invalid_argument("gate targets qubit " + std::to_string(q) +
                                        " outside the simulated register");
        }
    }
    if (g.acts_on_mode()) {
        if (g.mode < 1 || g.mode > spec.n_modes()) {
            throw std::invalid_argument("gate targets a mode outside the simulated register");
        }
        l.mode = g.mode;
        l.levels = spec.levels(g.mode);
    }
    return l;
}

// Generator on the gate's own subsystem (local qubits 1..k, local mode 1).
Operator local_generator(const std::vector<MixedTerm>& terms, int n_qubits, int levels,
                         bool has_mode) {
    MixedPauliSum sum(n_qubits, has_mode ? 1 : 0);
    for (const auto& t : terms) sum.add(t);
    const HilbertSpec local(n_qubits, has_mode ? std::vector<int>{levels - 1} : std::vector<int>{});
    return matrix_of(sum, local);
}

MixedTerm pauli_term(cplx c, std::map<int, Axis> f, std::vector<BosonFactor> b = {}) {
    return {PauliString{c, std::move(f)}, std::move(b), {}};
}

// i (sigma_+ A e^{i phi} - sigma_- A^+ e^{-i phi}) with A = a (red) or a^+ (blue).
Operator sideband_generator(bool blue, double phi, int levels) {
    const BosonKind A = blue ? BosonKind::Raise : BosonKind::Lower;
    const BosonKind Ad = blue ? BosonKind::Lower : BosonKind::Raise;
    const cplx p = cplx{0, 1} * std::polar(1.0, phi);    // i e^{i phi}
    const cplx m = cplx{0, -1} * std::polar(1.0, -phi);  // -i e^{-i phi}
    // sigma_+ = (X + iY)/2, sigma_- = (X - iY)/2
    std::vector<MixedTerm> terms{
        pauli_term(0.5 * p, {{1, Axis::X}}, {{1, A, 0.0}}),
        pauli_term(cplx{0, 0.5} * p, {{1, Axis::Y}}, {{1, A, 0.0}}),
        pauli_term(0.5 * m, {{1, Axis::X}}, {{1, Ad, 0.0}}),
        pauli_term(cplx{0, -0.5} * m, {{1, Axis::Y}}, {{1, Ad, 0.0}}),
    };
    return local_generator(terms, 1, levels, true);
}

}  // namespace

Operator local_unitary(const Gate& g, const HilbertSpec& spec) {
    const LocalLayout l = layout_of(g, spec);
    const int k = static_cast<int>(l.qubits.size());
    const bool has_mode = l.mode != 0;
    switch (g.kind) {
        case GateKind::Local: {
            const Operator s = local_generator({pauli_term(1.0, {{1, g.axis}})}, 1, 1, false);
            return std::cos(g.theta / 2) * Operator::Identity(2, 2) -
                   cplx{0, 1} * std::sin(g.theta / 2) * s;
        }
        case GateKind::MS: {
            std::vector<MixedTerm> terms;
            for (int j = 1; j <= k; ++j) {
                terms.push_back(pauli_term(std::cos(g.phi), {{j, Axis::X}}));
                terms.push_back(pauli_term(std::sin(g.phi), {{j, Axis::Y}}));
            }
            const Operator S = local_generator(terms, k, 1, false);
            return expm_hermitian(S * S, g.theta / 4);
        }
        case GateKind::ZZ:
            return expm_hermitian(
                local_generator({pauli_term(1.0, {{1, Axis::Z}, {2, Axis::Z}})}, 2, 1, false),
                g.theta);
        case GateKind::ResonantXX:
            return expm_hermitian(
                local_generator({pauli_term(1.0, {{1, Axis::X}, {2, Axis::X}})}, 2, 1, false),
                g.theta);
        case GateKind::CNOT: {
            // control = local bit 0, target = local bit 1
            Operator U = Operator::Zero(4, 4);
            for (int in = 0; in < 4; ++in) {
                const int out = (in & 1) ? (in ^ 2) : in;
                U(out, in) = 1.0;
            }
            return U;
        }
        case GateKind::RedSideband:
        case GateKind::BlueSideband:
            return expm_hermitian(
                sideband_generator(g.kind == GateKind::BlueSideband, g.phi, l.levels), g.theta);
        case GateKind::SpinDepDisp:
            return expm_hermitian(
                local_generator({pauli_term(1.0, {{1, Axis::Z}}, {{1, BosonKind::Position, g.phi}})},
                                1, l.levels, true),
                g.theta);
        case GateKind::ModeDrive: {
            Eigen::VectorXcd d(l.levels);
            for (int n = 0; n < l.levels; ++n) d(n) = std::polar(1.0, -g.theta * n);
            return d.asDiagonal();
        }
        case GateKind::Displacement:
            return expm_hermitian(
                local_generator({pauli_term(1.0, {}, {{1, BosonKind::Position, g.phi}})}, 0,
                                l.levels, true),
                g.theta);
    }
    (void)has_mode;
    throw std::logic_error("unhandled gate kind");
}

void apply_gate_inplace(Eigen::MatrixXcd& columns, const Gate& g, const HilbertSpec& spec) {
    if (columns.rows() != static_cast<Eigen::Index>(spec.dimension())) {
        throw std::invalid_argument("state dimension does not match the Hilbert space");
    }
    const LocalLayout l = layout_of(g, spec);
    const Operator M = local_unitary(g, spec);
    const int k = static_cast<int>(l.qubits.size());
    const std::size_t local_dim = (std::size_t{1} << k) * static_cast<std::size_t>(l.levels);
    const std::size_t bdim = spec.boson_dimension();

    std::vector<std::size_t> offset(local_dim);
    std::uint64_t qubit_mask = 0;
    for (int q : l.qubits) qubit_mask |= std::uint64_t{1} << (q - 1);
    const std::size_t mode_stride = l.mode ? spec.stride(l.mode) : 0;
    for (std::size_t loc = 0; loc < local_dim; ++loc) {
        const std::size_t bits = loc / static_cast<std::size_t>(l.levels);
        const std::size_t n = loc % static_cast<std::size_t>(l.levels);
        std::size_t off = n * mode_stride;
        for (int j = 0; j < k; ++j) {
            if (bits >> j & 1U) off += (std::size_t{1} << (l.qubits[j] - 1)) * bdim;
        }
        offset[loc] = off;
    }

    const auto ld = static_cast<Eigen::Index>(local_dim);
    Eigen::MatrixXcd block(ld, columns.cols());
    for (std::size_t base = 0; base < spec.dimension(); ++base) {
        if ((spec.qubit_bits(base) & qubit_mask) != 0) continue;
        if (l.mode && spec.level(base, l.mode) != 0) continue;
        for (Eigen::Index r = 0; r < ld; ++r) {
            block.row(r) = columns.row(static_cast<Eigen::Index>(base + offset[r]));
        }
        block = M * block;
        for (Eigen::Index r = 0; r < ld; ++r) {
            columns.row(static_cast<Eigen::Index>(base + offset[r])) = block.row(r);
        }
    }
}

Operator gate_matrix(const Gate& g, const HilbertSpec& spec) {
    const auto d = static_cast<Eigen::Index>(spec.dimension());
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(d, d);
    apply_gate_inplace(U, g, spec);
    return U;
}

State apply_gate(State state, const Gate& g) {
    Eigen::MatrixXcd col = state.amplitudes();
    apply_gate_inplace(col, g, state.spec());
    state.mutable_amplitudes() = col.col(0);
    if (g.acts_on_mode()) {
        for (double p : leakage_check(state).top_population) state.note_leakage(p);
    }
    return state;
}

Operator sequence_unitary(const GateSequence& seq, const HilbertSpec& spec) {
    if (spec.n_qubits() < seq.total_qubits() || spec.n_modes() < seq.n_modes()) {
        throw std::invalid_argument("Hilbert space smaller than the sequence register");
    }
    const auto d = static_cast<Eigen::Index>(spec.dimension());
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(d, d);
    for (const auto& g : seq.gates()) apply_gate_inplace(U, g, spec);
    return U;
}

Operator restrict_to_ancilla_zero(const Operator& U, const HilbertSpec& spec, int n_ancillas) {
    if (n_ancillas == 0) return U;
    if (n_ancillas > spec.n_qubits()) throw std::invalid_argument("more ancillas than qubits");
    const auto block = static_cast<Eigen::Index>(
        (std::size_t{1} << (spec.n_qubits() - n_ancillas)) * spec.boson_dimension());
    return U.topLeftCorner(block, block);
}

HilbertSpec spec_for_sequence(const GateSequence& seq, std::vector<int> boson_cutoffs,
                              std::size_t dimension_limit) {
    if (static_cast<int>(boson_cutoffs.size()) != seq.n_modes()) {
        throw std::invalid_argument("need one boson cutoff per mode");
    }
    return HilbertSpec(seq.total_qubits(), std::move(boson_cutoffs), dimension_limit);
}

double unitary_distance(const Operator& U, const Operator& V) {
    if (U.rows() != V.rows() || U.cols() != V.cols() || U.rows() != U.cols()) {
        throw std::invalid_argument("unitary_distance needs square matrices of equal size");
    }
    const double d = static_cast<double>(U.rows());
    return std::max(0.0, 1.0 - std::abs((U.adjoint() * V).trace()) / d);
}

double phase_aligned_norm_distance(const Operator& U, const Operator& V) {
    if (U.rows() != V.rows() || U.cols() != V.cols()) {
        throw std::invalid_argument("phase_aligned_norm_distance needs equal sizes");
    }
    const cplx overlap = (V.adjoint() * U).trace();
    const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx{1.0, 0.0};
    const Operator diff = U - phase * V;
    Eigen::JacobiSVD<Operator> svd(diff);
    return svd.singularValues()(0);
}

Operator trotter_product(const TrotterPlan& plan, const HilbertSpec& spec) {
    const auto d = static_cast<Eigen::Index>(spec.dimension());
    std::vector<Operator> cache(plan.source.terms().size());
    Operator U = Operator::Identity(d, d);
    for (const auto& step : plan.steps) {
        for (const auto& entry : step) {
            Operator& gen = cache[entry.term];
            if (gen.size() == 0) {
                MixedTerm bare = plan.source.terms()[entry.term];
                bare.pauli.coefficient = 1.0;
                gen = matrix_of(bare, spec);
            }
            U = expm_hermitian(gen, entry.angle) * U;
        }
    }
    return U;
}

std::vector<ScanPoint> trotter_error_scan(const MixedPauliSum& sum, double t,
                                          const std::vector<int>& steps, Backend backend,
                                          const HilbertSpec& spec, int order) {
    const Operator exact = exact_evolution(sum, t, spec);
    std::vector<ScanPoint> out;
    for (int n : steps) {
        const GateSequence seq = compile_plan(trotterize(sum, t, n, order), backend);
        const HilbertSpec full(spec.n_qubits() + seq.n_ancillas(), spec.cutoffs());
        const Operator U =
            restrict_to_ancilla_zero(sequence_unitary(seq, full), full, seq.n_ancillas());
        out.push_back({n, unitary_distance(U, exact), phase_aligned_norm_distance(U, exact)});
    }
    return out;
}

// ---------------------------------------------------------------------------

double pauli_expectation(const State& state, const PauliString& p, MeasurementRoute route) {
    const HilbertSpec& spec = state.spec();
    const Eigen::VectorXcd& psi = state.amplitudes();
    if (route == MeasurementRoute::Direct) {
        const MixedTerm bare{PauliString{1.0, p.factors}, {}, {}};
        std::vector<std::pair<std::size_t, cplx>> out;
        cplx acc = 0;
        for (std::size_t col = 0; col < spec.dimension(); ++col) {
            out.clear();
            term_action(bare, spec, col, out);
            for (const auto& [row, a] : out) {
                acc += std::conj(psi(static_cast<Eigen::Index>(row))) * a *
                       psi(static_cast<Eigen::Index>(col));
            }
        }
        return acc.real();
    }
    const MeasurementMapping m = measurement_mapping(p, spec.n_qubits());
    State rotated = state;
    for (const auto& g : m.rotation.gates()) rotated = apply_gate(std::move(rotated), g);
    const std::uint64_t mask = std::uint64_t{1} << (m.qubit - 1);
    double z = 0;
    for (std::size_t i = 0; i < spec.dimension(); ++i) {
        const double prob = std::norm(rotated.amplitudes()(static_cast<Eigen::Index>(i)));
        z += (spec.qubit_bits(i) & mask) ? -prob : prob;
    }
    return m.sign * z;
}

double energy_expectation(const State& state, const MixedPauliSum& sum) {
    if (!sum.is_hermitian()) throw std::invalid_argument("energy requires a Hermitian sum");
    const HilbertSpec& spec = state.spec();
    const Eigen::VectorXcd& psi = state.amplitudes();
    std::vector<std::pair<std::size_t, cplx>> out;
    cplx acc = 0;
    for (std::size_t col = 0; col < spec.dimension(); ++col) {
        out.clear();
        for (const auto& term : sum.terms()) term_action(term, spec, col, out);
        for (const auto& [row, a] : out) {
            acc += std::conj(psi(static_cast<Eigen::Index>(row))) * a *
                   psi(static_cast<Eigen::Index>(col));
        }
    }
    return acc.real();
}

LeakageReport leakage_check(const State& state, double threshold) {
    const HilbertSpec& spec = state.spec();
    LeakageReport r;
    r.top_population.assign(static_cast<std::size_t>(spec.n_modes()), 0.0);
    for (std::size_t i = 0; i < spec.dimension(); ++i) {
        const double prob = std::norm(state.amplitudes()(static_cast<Eigen::Index>(i)));
        if (prob == 0) continue;
        for (int m = 1; m <= spec.n_modes(); ++m) {
            if (spec.level(i, m) == spec.cutoffs()[m - 1]) r.top_population[m - 1] += prob;
        }
    }
    for (double p : r.top_population) r.warning = r.warning || p > threshold;
    return r;
}

}  // namespace iontrotter
