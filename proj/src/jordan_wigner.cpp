#include "iontrotter/jordan_wigner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace iontrotter {

HilbertSpec::HilbertSpec(int n_qubits, std::vector<int> boson_cutoffs,
                         std::size_t dimension_limit)
    : n_qubits_(n_qubits), cutoffs_(std::move(boson_cutoffs)) {
    if (n_qubits < 0 || n_qubits > 62) throw std::invalid_argument("qubit count out of range");
    strides_.assign(cutoffs_.size(), 1);
    boson_dimension_ = 1;
    for (int k = static_cast<int>(cutoffs_.size()) - 1; k >= 0; --k) {
        if (cutoffs_[k] < 0) throw std::invalid_argument("boson cutoff must be >= 0");
        strides_[k] = boson_dimension_;
        boson_dimension_ *= static_cast<std::size_t>(cutoffs_[k] + 1);
        if (boson_dimension_ > dimension_limit) {
            throw std::length_error("Hilbert space dimension exceeds limit");
        }
    }
    if (n_qubits >= 63 || (std::size_t{1} << n_qubits) > dimension_limit / boson_dimension_) {
        throw std::length_error("Hilbert space dimension exceeds limit " +
                                std::to_string(dimension_limit));
    }
    dimension_ = (std::size_t{1} << n_qubits) * boson_dimension_;
}

// ---------------------------------------------------------------------------

namespace {

std::string boson_label(const BosonFactor& b) {
    const std::string m = std::to_string(b.mode);
    switch (b.kind) {
        case BosonKind::Position: {
            if (b.phase == 0.0) return "(a" + m + "+a" + m + "^)";
            char buf[64];
            std::snprintf(buf, sizeof buf, "(a%d+a%d^)[%.17g]", b.mode, b.mode, b.phase);
            return buf;
        }
        case BosonKind::Number: return "n" + m;
        case BosonKind::Lower: return "a" + m;
        case BosonKind::Raise: return "a" + m + "^";
    }
    return "?";
}

std::string key_of(const PauliString& p, const std::vector<BosonFactor>& bosons) {
    std::string key = p.label();
    key += '|';
    for (const auto& b : bosons) key += boson_label(b);
    return key;
}

std::vector<BosonFactor> boson_adjoint(const std::vector<BosonFactor>& bosons) {
    std::vector<BosonFactor> out(bosons.rbegin(), bosons.rend());
    for (auto& b : out) {
        if (b.kind == BosonKind::Lower) b.kind = BosonKind::Raise;
        else if (b.kind == BosonKind::Raise) b.kind = BosonKind::Lower;
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const BosonFactor& x, const BosonFactor& y) { return x.mode < y.mode; });
    return out;
}

bool is_real(cplx c, double tol) { return std::abs(c.imag()) <= tol * std::max(1.0, std::abs(c)); }

}  // namespace

bool MixedTerm::is_hermitian(double tol) const {
    return is_real(pauli.coefficient, tol) && boson_adjoint(bosons) == bosons;
}

std::string MixedTerm::label() const {
    std::string out = pauli.label();
    for (const auto& b : bosons) {
        if (!out.empty()) out += ' ';
        out += boson_label(b);
    }
    return out.empty() ? "I" : out;
}

void MixedPauliSum::add(MixedTerm term) {
    for (const auto& [q, a] : term.pauli.factors) {
        if (q < 1 || q > n_qubits_) throw std::invalid_argument("qubit index out of range");
    }
    for (const auto& b : term.bosons) {
        if (b.mode < 1 || b.mode > n_modes_) throw std::invalid_argument("boson mode out of range");
    }
    std::string key = key_of(term.pauli, term.bosons);
    if (auto it = index_.find(key); it != index_.end()) {
        terms_[it->second].pauli.coefficient += term.pauli.coefficient;
        return;
    }
    index_.emplace(std::move(key), terms_.size());
    terms_.push_back(std::move(term));
}

void MixedPauliSum::prune(double tol) {
    std::erase_if(terms_, [tol](const MixedTerm& t) { return std::abs(t.pauli.coefficient) < tol; });
    for (auto& t : terms_) {
        cplx& c = t.pauli.coefficient;
        if (std::abs(c.imag()) < tol) c = {c.real(), 0.0};
        if (std::abs(c.real()) < tol) c = {0.0, c.imag()};
    }
    index_.clear();
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        index_.emplace(key_of(terms_[i].pauli, terms_[i].bosons), i);
    }
}

bool MixedPauliSum::is_hermitian(double tol) const {
    for (const auto& t : terms_) {
        if (t.is_hermitian(tol)) continue;
        const auto adj = boson_adjoint(t.bosons);
        const cplx want = std::conj(t.pauli.coefficient);
        const bool paired = std::any_of(terms_.begin(), terms_.end(), [&](const MixedTerm& u) {
            return u.pauli.factors == t.pauli.factors && u.bosons == adj &&
                   std::abs(u.pauli.coefficient - want) <= tol * std::max(1.0, std::abs(want));
        });
        if (!paired) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

MixedPauliSum jw_ladder(int mode, bool dagger, int n_modes) {
    if (mode < 1 || mode > n_modes) throw std::invalid_argument("fermionic mode out of range");
    std::map<int, Axis> string;
    for (int k = 1; k < mode; ++k) string[k] = Axis::Z;
    auto x = string;
    auto y = string;
    x[mode] = Axis::X;
    y[mode] = Axis::Y;
    MixedPauliSum out(n_modes, 0);
    out.add({PauliString{0.5, x}, {}, {}});
    out.add({PauliString{dagger ? cplx{0, 0.5} : cplx{0, -0.5}, y}, {}, {}});
    return out;
}

namespace {

std::vector<BosonFactor> canonical_bosons(std::vector<std::pair<int, bool>> word) {
    std::stable_sort(word.begin(), word.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<BosonFactor> out;
    for (std::size_t i = 0; i < word.size();) {
        std::size_t j = i;
        while (j < word.size() && word[j].first == word[i].first) ++j;
        const int mode = word[i].first;
        if (j - i == 2 && word[i].second && !word[i + 1].second) {
            out.push_back({mode, BosonKind::Number, 0.0});
        } else {
            for (std::size_t k = i; k < j; ++k) {
                out.push_back({mode, word[k].second ? BosonKind::Raise : BosonKind::Lower, 0.0});
            }
        }
        i = j;
    }
    return out;
}

// c a + conj(c) a^+ on the same Pauli string collapses to one quadrature term.
MixedPauliSum merge_quadratures(const MixedPauliSum& sum) {
    const auto& terms = sum.terms();
    std::vector<bool> consumed(terms.size(), false);
    MixedPauliSum out(sum.n_qubits(), sum.n_modes());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (consumed[i]) continue;
        const MixedTerm& t = terms[i];
        const bool single_ladder =
            t.bosons.size() == 1 &&
            (t.bosons[0].kind == BosonKind::Lower || t.bosons[0].kind == BosonKind::Raise);
        if (!single_ladder) {
            out.add(t);
            continue;
        }
        const BosonKind partner_kind =
            t.bosons[0].kind == BosonKind::Lower ? BosonKind::Raise : BosonKind::Lower;
        const cplx want = std::conj(t.pauli.coefficient);
        std::size_t partner = terms.size();
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            const MixedTerm& u = terms[j];
            if (!consumed[j] && u.bosons.size() == 1 && u.bosons[0].mode == t.bosons[0].mode &&
                u.bosons[0].kind == partner_kind && u.pauli.factors == t.pauli.factors &&
                std::abs(u.pauli.coefficient - want) <= 1e-12 * std::max(1.0, std::abs(want))) {
                partner = j;
                break;
            }
        }
        if (partner == terms.size()) {
            out.add(t);
            continue;
        }
        consumed[partner] = true;
        // Coefficient of the lowering operator.
        const cplx c = t.bosons[0].kind == BosonKind::Lower ? t.pauli.coefficient
                                                            : terms[partner].pauli.coefficient;
        MixedTerm merged{t.pauli, {{t.bosons[0].mode, BosonKind::Position, 0.0}}, t.group};
        if (is_real(c, 1e-14)) {
            merged.pauli.coefficient = c.real();
        } else {
            merged.pauli.coefficient = std::abs(c);
            merged.bosons[0].phase = -std::arg(c);
        }
        out.add(std::move(merged));
    }
    return out;
}

}  // namespace

MixedPauliSum jw_transform(const Hamiltonian& H) {
    if (!hermiticity_check(H)) {
        throw std::invalid_argument("Jordan-Wigner transform requires a Hermitian Hamiltonian");
    }
    const int n = H.n_fermionic();
    // Cache ladder images per (mode, dagger).
    std::map<std::pair<int, bool>, std::vector<PauliString>> ladders;
    auto ladder = [&](int mode, bool dagger) -> const std::vector<PauliString>& {
        auto [it, inserted] = ladders.try_emplace({mode, dagger});
        if (inserted) {
            const MixedPauliSum image = jw_ladder(mode, dagger, n);
            for (const auto& t : image.terms()) it->second.push_back(t.pauli);
        }
        return it->second;
    };

    MixedPauliSum sum(n, H.n_bosonic());
    for (const auto& term : H.terms()) {
        std::vector<PauliString> strings{PauliString{term.coefficient, {}}};
        std::vector<std::pair<int, bool>> word;
        for (const auto& f : term.factors) {
            if (f.mode.kind == ModeKind::Bosonic) {
                word.emplace_back(f.mode.index, f.dagger);
                continue;
            }
            std::vector<PauliString> next;
            for (const auto& s : strings) {
                for (const auto& l : ladder(f.mode.index, f.dagger)) {
                    PauliString prod = s * l;
                    auto it = std::find_if(next.begin(), next.end(), [&](const PauliString& p) {
                        return p.factors == prod.factors;
                    });
                    if (it == next.end()) next.push_back(std::move(prod));
                    else it->coefficient += prod.coefficient;
                }
            }
            strings = std::move(next);
        }
        const auto bosons = canonical_bosons(std::move(word));
        for (auto& s : strings) sum.add({std::move(s), bosons, term.group});
    }
    sum.prune();
    MixedPauliSum merged = merge_quadratures(sum);
    merged.prune();
    return merged;
}

// ---------------------------------------------------------------------------

void term_action(const MixedTerm& term, const HilbertSpec& spec, std::size_t index,
                 std::vector<std::pair<std::size_t, cplx>>& out) {
    const std::size_t bdim = spec.boson_dimension();
    std::uint64_t bits = index / bdim;
    cplx amp = term.pauli.coefficient;
    for (const auto& [q, axis] : term.pauli.factors) {
        if (q > spec.n_qubits()) throw std::invalid_argument("term acts outside the qubit register");
        const std::uint64_t mask = std::uint64_t{1} << (q - 1);
        const bool one = (bits & mask) != 0;
        switch (axis) {
            case Axis::X: bits ^= mask; break;
            case Axis::Y:
                amp *= one ? cplx{0, -1} : cplx{0, 1};
                bits ^= mask;
                break;
            case Axis::Z:
                if (one) amp = -amp;
                break;
        }
    }

    // Boson factors act right to left; Position branches in two.
    std::vector<std::pair<std::size_t, cplx>> branches{{index % bdim, amp}};
    std::vector<std::pair<std::size_t, cplx>> next;
    for (auto it = term.bosons.rbegin(); it != term.bosons.rend(); ++it) {
        if (it->mode > spec.n_modes()) throw std::invalid_argument("term acts outside boson modes");
        const std::size_t stride = spec.stride(it->mode);
        const int top = spec.cutoffs()[it->mode - 1];
        next.clear();
        for (const auto& [b, a] : branches) {
            const int n = static_cast<int>((b / stride) % static_cast<std::size_t>(top + 1));
            auto lower = [&](cplx scale) {
                if (n > 0) next.emplace_back(b - stride, a * scale * std::sqrt(double(n)));
            };
            auto raise = [&](cplx scale) {
                if (n < top) next.emplace_back(b + stride, a * scale * std::sqrt(double(n + 1)));
            };
            switch (it->kind) {
                case BosonKind::Lower: lower(1.0); break;
                case BosonKind::Raise: raise(1.0); break;
                case BosonKind::Number:
                    if (n > 0) next.emplace_back(b, a * double(n));
                    break;
                case BosonKind::Position:
                    lower(std::polar(1.0, -it->phase));
                    raise(std::polar(1.0, it->phase));
                    break;
            }
        }
        std::swap(branches, next);
    }
    for (const auto& [b, a] : branches) out.emplace_back(bits * bdim + b, a);
}

Operator matrix_of(const MixedPauliSum& sum, const HilbertSpec& spec) {
    if (spec.n_qubits() < sum.n_qubits() || spec.n_modes() < sum.n_modes()) {
        throw std::invalid_argument("Hilbert space smaller than the operator's support");
    }
    const auto dim = static_cast<Eigen::Index>(spec.dimension());
    Operator M = Operator::Zero(dim, dim);
    std::vector<std::pair<std::size_t, cplx>> out;
    for (Eigen::Index col = 0; col < dim; ++col) {
        out.clear();
        for (const auto& term : sum.terms()) term_action(term, spec, static_cast<std::size_t>(col), out);
        for (const auto& [row, a] : out) M(static_cast<Eigen::Index>(row), col) += a;
    }
    return M;
}

Operator matrix_of(const MixedTerm& term, const HilbertSpec& spec) {
    const auto dim = static_cast<Eigen::Index>(spec.dimension());
    Operator M = Operator::Zero(dim, dim);
    std::vector<std::pair<std::size_t, cplx>> out;
    for (Eigen::Index col = 0; col < dim; ++col) {
        out.clear();
        term_action(term, spec, static_cast<std::size_t>(col), out);
        for (const auto& [row, a] : out) M(static_cast<Eigen::Index>(row), col) += a;
    }
    return M;
}

HilbertSpec spec_for(const MixedPauliSum& sum, std::vector<int> boson_cutoffs,
                     std::size_t dimension_limit) {
    if (static_cast<int>(boson_cutoffs.size()) != sum.n_modes()) {
        throw std::invalid_argument("need one boson cutoff per mode");
    }
    return HilbertSpec(sum.n_qubits(), std::move(boson_cutoffs), dimension_limit);
}

}  // namespace iontrotter
