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

#include "xpooky/encoding.h"

#include <cmath>
#include <stdexcept>

#include "xpooky/errors.h"

namespace xpooky {

ExtendedTensor to_extended_tensor(const ComplexMatrix &m) {
    ExtendedTensor t;
    t.rows = m.dim();
    t.cols = m.dim();
    t.data.resize(t.rows * t.cols * ExtendedTensor::kChannels);
    for (size_t i = 0; i < t.rows; i++) {
        for (size_t j = 0; j < t.cols; j++) {
            size_t base = (i * t.cols + j) * ExtendedTensor::kChannels;
            t.data[base] = m(i, j).real();
            t.data[base + 1] = m(i, j).imag();
        }
    }
    return t;
}

ExtendedTensor to_extended_tensor(const DensityMatrix &rho) {
    return to_extended_tensor(rho.matrix());
}

ComplexMatrix from_extended_tensor(const ExtendedTensor &t) {
    if (t.rows != t.cols || t.data.size() != t.rows * t.cols * ExtendedTensor::kChannels) {
        throw DimensionMismatch("from_extended_tensor: tensor is not square with two channels");
    }
    ComplexMatrix m(t.rows);
    for (size_t i = 0; i < t.rows; i++) {
        for (size_t j = 0; j < t.cols; j++) {
            m(i, j) = Complex(t.at(i, j, 0), t.at(i, j, 1));
        }
    }
    return m;
}

PauliIndex::PauliIndex(std::vector<uint8_t> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) {
        throw std::invalid_argument("PauliIndex: need at least one factor");
    }
    for (auto f : factors_) {
        if (f > 3) {
            throw std::invalid_argument("PauliIndex: factors must be in 0..3");
        }
    }
}

PauliIndex PauliIndex::from_code(uint32_t code, size_t n_qubits) {
    if (n_qubits == 0 || code >= (uint32_t{1} << (2 * n_qubits))) {
        throw std::invalid_argument("PauliIndex::from_code: code out of range");
    }
    std::vector<uint8_t> factors(n_qubits);
    for (size_t k = n_qubits; k-- > 0;) {
        factors[k] = static_cast<uint8_t>(code & 3);
        code >>= 2;
    }
    return PauliIndex(std::move(factors));
}

PauliIndex PauliIndex::from_label(const std::string &label) {
    std::vector<uint8_t> factors;
    for (char ch : label) {
        switch (ch) {
            case 'I':
                factors.push_back(0);
                break;
            case 'X':
                factors.push_back(1);
                break;
            case 'Y':
                factors.push_back(2);
                break;
            case 'Z':
                factors.push_back(3);
                break;
            default:
                throw std::invalid_argument("PauliIndex::from_label: bad character in '" + label + "'");
        }
    }
    return PauliIndex(std::move(factors));
}

uint32_t PauliIndex::code() const {
    uint32_t code = 0;
    for (auto f : factors_) {
        code = code * 4 + f;
    }
    return code;
}

std::string PauliIndex::label() const {
    std::string out;
    for (auto f : factors_) {
        out += "IXYZ"[f];
    }
    return out;
}

bool PauliIndex::is_identity() const {
    for (auto f : factors_) {
        if (f != 0) {
            return false;
        }
    }
    return true;
}

ComplexMatrix PauliIndex::matrix() const {
    ComplexMatrix m = pauli(factors_[0]);
    for (size_t k = 1; k < factors_.size(); k++) {
        m = tensor_product(m, pauli(factors_[k]));
    }
    return m;
}

std::vector<PauliIndex> all_pauli_indices(size_t n_qubits) {
    std::vector<PauliIndex> out;
    uint32_t count = uint32_t{1} << (2 * n_qubits);
    for (uint32_t code = 0; code < count; code++) {
        out.push_back(PauliIndex::from_code(code, n_qubits));
    }
    return out;
}

namespace {

// Pauli strings are monomial matrices: each row has one nonzero entry. For
// sigma_v, row i has its entry in column i ^ flip_mask with a phase.
Complex pauli_string_entry(std::span<const uint8_t> factors, size_t row, size_t &col) {
    size_t n = factors.size();
    col = row;
    Complex phase = 1.0;
    for (size_t q = 0; q < n; q++) {
        size_t bit = n - 1 - q;
        bool r = (row >> bit) & 1;
        switch (factors[q]) {
            case 0:
                break;
            case 1:
                col ^= size_t{1} << bit;
                break;
            case 2:
                col ^= size_t{1} << bit;
                // Y = [[0, -i], [i, 0]]: row 0 -> -i, row 1 -> +i
                phase *= r ? Complex(0, 1) : Complex(0, -1);
                break;
            case 3:
                if (r) {
                    phase = -phase;
                }
                break;
        }
    }
    return phase;
}

Complex pauli_expectation(const ComplexMatrix &m, const PauliIndex &index) {
    // Tr(sigma m) = sum_i sigma(i, c_i) m(c_i, i)
    Complex total = 0;
    for (size_t row = 0; row < m.dim(); row++) {
        size_t col;
        Complex s = pauli_string_entry(index.factors(), row, col);
        total += s * m(col, row);
    }
    return total;
}

void add_scaled_pauli(ComplexMatrix &m, const PauliIndex &index, double scale) {
    for (size_t row = 0; row < m.dim(); row++) {
        size_t col;
        Complex s = pauli_string_entry(index.factors(), row, col);
        m(row, col) += scale * s;
    }
}

}  // namespace

std::vector<double> pauli_coefficients(const DensityMatrix &rho) {
    size_t n = rho.n_qubits();
    std::vector<double> coefficients;
    coefficients.reserve(size_t{1} << (2 * n));
    for (const auto &index : all_pauli_indices(n)) {
        Complex c = pauli_expectation(rho.matrix(), index);
        if (std::abs(c.imag()) > 1e-10) {
            throw InvalidState("pauli_coefficients: complex coefficient for " + index.label());
        }
        coefficients.push_back(c.real());
    }
    return coefficients;
}

ComplexMatrix reconstruct_from_pauli(std::span<const double> coefficients, size_t n_qubits) {
    size_t expected = size_t{1} << (2 * n_qubits);
    if (coefficients.size() != expected) {
        throw DimensionMismatch("reconstruct_from_pauli: expected 4^N coefficients");
    }
    size_t dim = size_t{1} << n_qubits;
    ComplexMatrix m(dim);
    double norm = 1.0 / static_cast<double>(dim);
    for (uint32_t code = 0; code < expected; code++) {
        if (coefficients[code] != 0) {
            add_scaled_pauli(m, PauliIndex::from_code(code, n_qubits), norm * coefficients[code]);
        }
    }
    return m;
}

ComplexMatrix incomplete_density(const DensityMatrix &rho, const std::set<PauliIndex> &ignored, bool allow_identity) {
    size_t n = rho.n_qubits();
    ComplexMatrix out = rho.matrix();
    double norm = 1.0 / static_cast<double>(rho.dim());
    for (const auto &index : ignored) {
        if (index.n_qubits() != n) {
            throw DimensionMismatch("incomplete_density: Pauli index has the wrong qubit count");
        }
        if (index.is_identity() && !allow_identity) {
            throw std::invalid_argument("incomplete_density: the identity term carries the trace and is never dropped");
        }
        double c = pauli_expectation(rho.matrix(), index).real();
        add_scaled_pauli(out, index, -norm * c);
    }
    return out;
}

}  // namespace xpooky
