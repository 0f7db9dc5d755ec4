#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace iontrotter {

using Operator = Eigen::MatrixXcd;

inline constexpr std::size_t kDefaultDimensionLimit = std::size_t{1} << 14;

/// Tensor basis qubits (x) truncated boson modes. Qubit q is bit q-1 of the
/// qubit index (qubit 1 least significant); boson modes are the minor factor,
/// mode 1 most significant among them:
///   index = qubit_bits * boson_dimension() + sum_k n_k * stride(k).
class HilbertSpec {
public:
    HilbertSpec() = default;
    /// `boson_cutoffs[k]` is the highest retained phonon number of mode k+1.
    HilbertSpec(int n_qubits, std::vector<int> boson_cutoffs = {},
                std::size_t dimension_limit = kDefaultDimensionLimit);

    int n_qubits() const { return n_qubits_; }
    int n_modes() const { return static_cast<int>(cutoffs_.size()); }
    const std::vector<int>& cutoffs() const { return cutoffs_; }
    int levels(int mode) const { return cutoffs_.at(mode - 1) + 1; }

    std::size_t dimension() const { return dimension_; }
    std::size_t boson_dimension() const { return boson_dimension_; }
    std::size_t stride(int mode) const { return strides_.at(mode - 1); }

    std::uint64_t qubit_bits(std::size_t index) const { return index / boson_dimension_; }
    int level(std::size_t index, int mode) const {
        return static_cast<int>((index / strides_[mode - 1]) % (cutoffs_[mode - 1] + 1));
    }

    friend bool operator==(const HilbertSpec&, const HilbertSpec&) = default;

private:
    int n_qubits_ = 0;
    std::vector<int> cutoffs_;
    std::vector<std::size_t> strides_;
    std::size_t boson_dimension_ = 1;
    std::size_t dimension_ = 1;
};

}  // namespace iontrotter
