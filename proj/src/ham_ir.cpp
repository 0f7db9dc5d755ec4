#include "iontrotter/ham_ir.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace iontrotter {

Hamiltonian::Hamiltonian(int n_fermionic, int n_bosonic)
    : n_fermionic_(n_fermionic), n_bosonic_(n_bosonic) {
    if (n_fermionic < 0 || n_bosonic < 0) {
        throw std::invalid_argument("mode counts must be non-negative");
    }
}

void Hamiltonian::add(ProductTerm term) {
    for (const auto& f : term.factors) {
        const int limit = f.mode.kind == ModeKind::Fermionic ? n_fermionic_ : n_bosonic_;
        if (f.mode.index < 1 || f.mode.index > limit) {
            throw std::invalid_argument("mode index " + std::to_string(f.mode.index) +
                                        " outside declared range 1.." + std::to_string(limit));
        }
    }
    terms_.push_back(std::move(term));
}

void Hamiltonian::add_with_adjoint(const ProductTerm& term) {
    add(term);
    add(adjoint(term));
}

ProductTerm adjoint(const ProductTerm& term) {
    ProductTerm out;
    out.coefficient = std::conj(term.coefficient);
    out.group = term.group;
    out.factors.reserve(term.factors.size());
    for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) {
        out.factors.push_back({it->mode, !it->dagger});
    }
    // Bosons commute with fermions; keep fermionic factors leading.
    std::stable_partition(out.factors.begin(), out.factors.end(), [](const LadderFactor& f) {
        return f.mode.kind == ModeKind::Fermionic;
    });
    return out;
}

// ---------------------------------------------------------------------------

int hubbard_mode(int site, bool spin_up) { return 2 * (site - 1) + (spin_up ? 2 : 1); }

Hamiltonian build_hubbard(int rows, int cols, double w, double U) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("Hubbard lattice must have at least one row and one column");
    }
    const int n_sites = rows * cols;
    Hamiltonian H(2 * n_sites, 0);
    auto site_of = [cols](int r, int c) { return (r - 1) * cols + c; };

    auto add_link = [&](int i, int j, const char* group) {
        for (bool up : {false, true}) {
            H.add_with_adjoint({w,
                                {fermion(hubbard_mode(i, up), true),
                                 fermion(hubbard_mode(j, up), false)},
                                group});
        }
    };
    for (int r = 1; r <= rows; ++r) {
        for (int c = 1; c < cols; ++c) add_link(site_of(r, c), site_of(r, c + 1), "hop-row");
    }
    for (int r = 1; r < rows; ++r) {
        for (int c = 1; c <= cols; ++c) add_link(site_of(r, c), site_of(r + 1, c), "hop-col");
    }
    for (int i = 1; i <= n_sites; ++i) {
        const int up = hubbard_mode(i, true);
        const int down = hubbard_mode(i, false);
        H.add({U,
               {fermion(up, true), fermion(up, false), fermion(down, true), fermion(down, false)},
               "onsite"});
    }
    return H;
}

Hamiltonian build_holstein(int n_sites, double h, double g, double omega0) {
    if (n_sites < 1) throw std::invalid_argument("Holstein chain needs at least one site");
    Hamiltonian H(n_sites, n_sites);
    for (int i = 1; i < n_sites; ++i) {
        H.add_with_adjoint({h, {fermion(i, true), fermion(i + 1, false)}, "hop"});
    }
    for (int i = 1; i <= n_sites; ++i) {
        H.add_with_adjoint({g, {fermion(i, true), fermion(i, false), boson(i, false)}, "coupling"});
    }
    for (int i = 1; i <= n_sites; ++i) {
        H.add({omega0, {boson(i, true), boson(i, false)}, "free"});
    }
    return H;
}

Hamiltonian build_chemistry(const Eigen::MatrixXcd& h_pq, const std::vector<cplx>& h_pqrs) {
    const auto n = static_cast<int>(h_pq.rows());
    if (n < 1 || h_pq.cols() != n) {
        throw std::invalid_argument("one-body table must be a non-empty square matrix");
    }
    const double scale = std::max(1.0, h_pq.cwiseAbs().maxCoeff());
    if ((h_pq - h_pq.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("one-body table is not Hermitian");
    }
    const std::size_t n4 = static_cast<std::size_t>(n) * n * n * n;
    if (!h_pqrs.empty() && h_pqrs.size() != n4) {
        throw std::invalid_argument("two-body table must have n^4 = " + std::to_string(n4) +
                                    " entries, got " + std::to_string(h_pqrs.size()));
    }

    Hamiltonian H(n, 0);
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (h_pq(p, q) == cplx{}) continue;
            H.add({h_pq(p, q), {fermion(p + 1, true), fermion(q + 1, false)}, "one-body"});
        }
    }
    std::size_t idx = 0;
    for (int p = 0; p < n && !h_pqrs.empty(); ++p) {
        for (int q = 0; q < n; ++q) {
            for (int r = 0; r < n; ++r) {
                for (int s = 0; s < n; ++s, ++idx) {
                    if (h_pqrs[idx] == cplx{}) continue;
                    H.add({0.5 * h_pqrs[idx],
                           {fermion(p + 1, true), fermion(q + 1, true), fermion(r + 1, false),
                            fermion(s + 1, false)},
                           "two-body"});
                }
            }
        }
    }
    if (!hermiticity_check(H)) {
        throw std::invalid_argument("two-body table does not define a Hermitian operator");
    }
    return H;
}

Hamiltonian build_discretized_field_theory(int n_fermion_momenta, int n_antifermion_momenta,
                                           int n_boson_momenta, double g,
                                           const FieldCouplings& couplings) {
    const int nf = n_fermion_momenta;
    const int nd = n_antifermion_momenta;
    const int nb = n_boson_momenta;
    if (nf < 0 || nd < 0 || nf + nd < 1 || nb < 1) {
        throw std::invalid_argument(
            "field theory needs at least one fermionic and one bosonic momentum mode");
    }
    auto check = [](const std::vector<cplx>& t, std::size_t expected, const char* name) {
        if (t.size() != expected) {
            throw std::invalid_argument(std::string("coupling table '") + name + "' has " +
                                        std::to_string(t.size()) + " entries, expected " +
                                        std::to_string(expected));
        }
    };
    const auto unb = static_cast<std::size_t>(nb);
    check(couplings.fermion_fermion, static_cast<std::size_t>(nf * nf) * unb, "fermion_fermion");
    check(couplings.pair_creation, static_cast<std::size_t>(nf * nd) * unb, "pair_creation");
    check(couplings.pair_annihilation, static_cast<std::size_t>(nd * nf) * unb,
          "pair_annihilation");
    check(couplings.antifermion, static_cast<std::size_t>(nd * nd) * unb, "antifermion");

    Hamiltonian H(nf + nd, nb);
    auto b = [](int p, bool dag) { return fermion(p, dag); };
    auto d = [nf](int q, bool dag) { return fermion(nf + q, dag); };

    auto emit = [&](const std::vector<cplx>& table, int n1, int n2, auto&& first, auto&& second,
                    const char* group) {
        std::size_t idx = 0;
        for (int i = 1; i <= n1; ++i) {
            for (int j = 1; j <= n2; ++j) {
                for (int k = 1; k <= nb; ++k, ++idx) {
                    if (table[idx] == cplx{}) continue;
                    H.add_with_adjoint({g * table[idx], {first(i), second(j), boson(k, false)}, group});
                }
            }
        }
    };
    emit(couplings.fermion_fermion, nf, nf, [&](int p) { return b(p, true); },
         [&](int q) { return b(q, false); }, "fermion");
    emit(couplings.pair_creation, nf, nd, [&](int p) { return b(p, true); },
         [&](int q) { return d(q, true); }, "pair");
    emit(couplings.pair_annihilation, nd, nf, [&](int p) { return d(p, false); },
         [&](int q) { return b(q, false); }, "pair");
    emit(couplings.antifermion, nd, nd, [&](int p) { return d(p, false); },
         [&](int q) { return d(q, true); }, "antifermion");
    return H;
}

// ---------------------------------------------------------------------------
// Normal ordering

namespace {

using Factor = std::pair<ModeIndex, bool>;

// Creators ascending by mode, then annihilators descending.
std::tuple<int, int, int> rank(const Factor& f) {
    const int kind = f.first.kind == ModeKind::Fermionic ? 0 : 1;
    if (f.second) return {0, kind, f.first.index};
    return {1, -kind, -f.first.index};
}

bool is_fermion(const Factor& f) { return f.first.kind == ModeKind::Fermionic; }

void expand(cplx coefficient, std::vector<Factor> factors, NormalOrderedForm& out) {
    for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
        const Factor& x = factors[i];
        const Factor& y = factors[i + 1];
        if (rank(x) <= rank(y)) continue;

        const bool both_fermions = is_fermion(x) && is_fermion(y);
        if (x.first == y.first) {
            // x is an annihilator, y the matching creator: x y = +-y x + 1.
            std::vector<Factor> contracted;
            contracted.reserve(factors.size() - 2);
            contracted.insert(contracted.end(), factors.begin(), factors.begin() + i);
            contracted.insert(contracted.end(), factors.begin() + i + 2, factors.end());
            expand(coefficient, std::move(contracted), out);
        }
        std::swap(factors[i], factors[i + 1]);
        expand(both_fermions ? -coefficient : coefficient, std::move(factors), out);
        return;
    }
    for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
        if (is_fermion(factors[i]) && factors[i] == factors[i + 1]) return;  // c c = 0
    }
    out[factors] += coefficient;
}

}  // namespace

NormalOrderedForm normal_order(const ProductTerm& term) {
    NormalOrderedForm out;
    std::vector<Factor> factors;
    factors.reserve(term.factors.size());
    for (const auto& f : term.factors) factors.emplace_back(f.mode, f.dagger);
    expand(term.coefficient, std::move(factors), out);
    return out;
}

NormalOrderedForm normal_order(const Hamiltonian& H) {
    NormalOrderedForm out;
    for (const auto& term : H.terms()) {
        for (const auto& [key, c] : normal_order(term)) out[key] += c;
    }
    return out;
}

bool hermiticity_check(const Hamiltonian& H, double tol) {
    const NormalOrderedForm forward = normal_order(H);
    NormalOrderedForm backward;
    double scale = 1.0;
    for (const auto& term : H.terms()) {
        scale = std::max(scale, std::abs(term.coefficient));
        for (const auto& [key, c] : normal_order(adjoint(term))) backward[key] += c;
    }
    auto agrees = [&](const NormalOrderedForm& a, const NormalOrderedForm& b) {
        for (const auto& [key, c] : a) {
            const auto it = b.find(key);
            const cplx other = it == b.end() ? cplx{} : it->second;
            if (std::abs(c - other) > tol * scale) return false;
        }
        return true;
    };
    return agrees(forward, backward) && agrees(backward, forward);
}

// ---------------------------------------------------------------------------
// Occupation-number matrix

Eigen::MatrixXcd fock_matrix(const Hamiltonian& H, const std::vector<int>& boson_cutoffs,
                             std::size_t dimension_limit) {
    const int nf = H.n_fermionic();
    const int nb = H.n_bosonic();
    if (static_cast<int>(boson_cutoffs.size()) != nb) {
        throw std::invalid_argument("need one cutoff per bosonic mode");
    }
    if (nf > 30) throw std::length_error("too many fermionic modes for a dense matrix");
    std::size_t boson_dim = 1;
    std::vector<std::size_t> stride(nb, 1);
    for (int k = nb - 1; k >= 0; --k) {
        if (boson_cutoffs[k] < 0) throw std::invalid_argument("boson cutoff must be >= 0");
        stride[k] = boson_dim;
        boson_dim *= static_cast<std::size_t>(boson_cutoffs[k] + 1);
        if (boson_dim > dimension_limit) break;
    }
    const std::size_t dim = (std::size_t{1} << nf) * boson_dim;
    if (boson_dim > dimension_limit || dim > dimension_limit) {
        throw std::length_error("Fock dimension exceeds limit " + std::to_string(dimension_limit));
    }

    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    std::vector<int> levels(nb);
    for (std::size_t col = 0; col < dim; ++col) {
        for (const auto& term : H.terms()) {
            std::uint64_t bits = col / boson_dim;
            std::size_t rest = col % boson_dim;
            for (int k = 0; k < nb; ++k) {
                levels[k] = static_cast<int>(rest / stride[k]);
                rest %= stride[k];
            }
            cplx amp = term.coefficient;
            for (auto it = term.factors.rbegin(); it != term.factors.rend() && amp != cplx{}; ++it) {
                const int j = it->mode.index - 1;
                if (it->mode.kind == ModeKind::Fermionic) {
                    const std::uint64_t mask = std::uint64_t{1} << j;
                    const bool occupied = (bits & mask) != 0;
                    if (occupied == it->dagger) {
                        amp = 0;
                        break;
                    }
                    if (std::popcount(bits & (mask - 1)) % 2 == 1) amp = -amp;
                    bits ^= mask;
                } else {
                    int& n = levels[j];
                    if (it->dagger) {
                        if (n == boson_cutoffs[j]) {
                            amp = 0;
                            break;
                        }
                        amp *= std::sqrt(static_cast<double>(n + 1));
                        ++n;
                    } else {
                        if (n == 0) {
                            amp = 0;
                            break;
                        }
                        amp *= std::sqrt(static_cast<double>(n));
                        --n;
                    }
                }
            }
            if (amp == cplx{}) continue;
            std::size_t row = bits * boson_dim;
            for (int k = 0; k < nb; ++k) row += static_cast<std::size_t>(levels[k]) * stride[k];
            M(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += amp;
        }
    }
    return M;
}

}  // namespace iontrotter
