#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace iontrotter {

using cplx = std::complex<double>;

enum class Axis { X, Y, Z };

char axis_name(Axis a);
Axis parse_axis(char c);

/// Sparse Pauli string: coefficient times a tensor product over 1-based qubits.
/// Identity factors are never stored.
struct PauliString {
    cplx coefficient{1.0, 0.0};
    std::map<int, Axis> factors;

    PauliString() = default;
    PauliString(cplx c, std::map<int, Axis> f) : coefficient(c), factors(std::move(f)) {}

    std::size_t weight() const { return factors.size(); }
    int max_qubit() const { return factors.empty() ? 0 : factors.rbegin()->first; }

    /// "X14 Z15 X16"; empty string for the identity.
    std::string label() const;

    friend bool operator==(const PauliString&, const PauliString&) = default;
};

/// Parses a label such as "X1 Z2 Y5" (coefficient 1). "I" or "" is the identity.
PauliString parse_pauli(const std::string& label);

/// Ordered product a * b with phases tracked site by site.
PauliString operator*(const PauliString& a, const PauliString& b);

bool commutes(const PauliString& a, const PauliString& b);

}  // namespace iontrotter
