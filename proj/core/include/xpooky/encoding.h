// Copyright 2026 The XpookyNet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XPOOKY_ENCODING_H
#define XPOOKY_ENCODING_H

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "xpooky/qcore.h"

namespace xpooky {

/// Real rows x cols x 2 tensor: channel 0 holds real parts, channel 1
/// imaginary parts. Stored row-major with the channel as the fastest axis,
/// i.e. data[(i * cols + j) * 2 + c].
struct ExtendedTensor {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<double> data;

    static constexpr size_t kChannels = 2;

    double at(size_t i, size_t j, size_t c) const {
        return data[(i * cols + j) * kChannels + c];
    }
    bool operator==(const ExtendedTensor &) const = default;
};

ExtendedTensor to_extended_tensor(const ComplexMatrix &m);
ExtendedTensor to_extended_tensor(const DensityMatrix &rho);
ComplexMatrix from_extended_tensor(const ExtendedTensor &t);

/// Tensor product of Pauli factors, one entry in 0..3 per qubit, qubit A first.
class PauliIndex {
   public:
    PauliIndex() = default;
    explicit PauliIndex(std::vector<uint8_t> factors);
    /// Inverse of code(): base-4 digits with qubit A most significant.
    static PauliIndex from_code(uint32_t code, size_t n_qubits);
    /// Parses labels such as "XY" or "IZZ".
    static PauliIndex from_label(const std::string &label);

    size_t n_qubits() const {
        return factors_.size();
    }
    std::span<const uint8_t> factors() const {
        return factors_;
    }
    uint32_t code() const;
    std::string label() const;
    bool is_identity() const;
    ComplexMatrix matrix() const;

    auto operator<=>(const PauliIndex &) const = default;

   private:
    std::vector<uint8_t> factors_;
};

/// All 4^N indices ordered by code().
std::vector<PauliIndex> all_pauli_indices(size_t n_qubits);

/// c(v) = Tr(sigma_v rho) for every index, position = code(). Throws
/// InvalidState if a coefficient has an imaginary part above 1e-10.
std::vector<double> pauli_coefficients(const DensityMatrix &rho);

/// (1 / 2^N) sum_v c(v) sigma_v.
ComplexMatrix reconstruct_from_pauli(std::span<const double> coefficients, size_t n_qubits);

/// rho - (1 / 2^N) sum_{v in ignored} c(v) sigma_v. The all-identity term is
/// rejected unless `allow_identity` is set.
ComplexMatrix incomplete_density(
    const DensityMatrix &rho, const std::set<PauliIndex> &ignored, bool allow_identity = false);

}  // namespace xpooky

#endif
