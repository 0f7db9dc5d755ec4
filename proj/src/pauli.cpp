#include "iontrotter/pauli.hpp"

#include <sstream>
#include <stdexcept>

namespace iontrotter {

char axis_name(Axis a) {
    switch (a) {
        case Axis::X: return 'X';
        case Axis::Y: return 'Y';
        case Axis::Z: return 'Z';
    }
    return '?';
}

Axis parse_axis(char c) {
    switch (c) {
        case 'X': case 'x': return Axis::X;
        case 'Y': case 'y': return Axis::Y;
        case 'Z': case 'z': return Axis::Z;
        default: throw std::invalid_argument(std::string("unknown Pauli axis '") + c + "'");
    }
}

std::string PauliString::label() const {
    std::string out;
    for (const auto& [q, a] : factors) {
        if (!out.empty()) out += ' ';
        out += axis_name(a);
        out += std::to_string(q);
    }
    return out;
}

PauliString parse_pauli(const std::string& label) {
    PauliString p;
    std::istringstream in(label);
    std::string tok;
    while (in >> tok) {
        if (tok == "I") continue;
        if (tok.size() < 2) throw std::invalid_argument("bad Pauli token '" + tok + "'");
        const Axis a = parse_axis(tok[0]);
        const int q = std::stoi(tok.substr(1));
        if (q < 1) throw std::invalid_argument("qubit indices are 1-based");
        if (p.factors.count(q)) throw std::invalid_argument("qubit repeated in '" + label + "'");
        p.factors[q] = a;
    }
    return p;
}

namespace {

// sigma_a sigma_b = delta_ab + i eps_abc sigma_c
int index(Axis a) { return static_cast<int>(a); }

}  // namespace

PauliString operator*(const PauliString& a, const PauliString& b) {
    PauliString out{a.coefficient * b.coefficient, a.factors};
    cplx phase{1.0, 0.0};
    for (const auto& [q, axis_b] : b.factors) {
        auto it = out.factors.find(q);
        if (it == out.factors.end()) {
            out.factors.emplace(q, axis_b);
            continue;
        }
        const int i = index(it->second);
        const int j = index(axis_b);
        if (i == j) {
            out.factors.erase(it);
            continue;
        }
        const int k = 3 - i - j;
        phase *= ((j - i + 3) % 3 == 1) ? cplx{0, 1} : cplx{0, -1};
        it->second = static_cast<Axis>(k);
    }
    out.coefficient *= phase;
    return out;
}

bool commutes(const PauliString& a, const PauliString& b) {
    int anti = 0;
    for (const auto& [q, axis] : a.factors) {
        auto it = b.factors.find(q);
        if (it != b.factors.end() && it->second != axis) ++anti;
    }
    return anti % 2 == 0;
}

}  // namespace iontrotter
