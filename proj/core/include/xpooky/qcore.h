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

#ifndef XPOOKY_QCORE_H
#define XPOOKY_QCORE_H

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace xpooky {

using Complex = std::complex<double>;

/// Tolerances shared by every module that validates density matrices.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

/// Dense square complex matrix, row-major.
///
/// Qubit ordering convention used everywhere in this library: for an N-qubit
/// operator the basis index is |q_A q_B ... > with qubit A as the most
/// significant bit, which is the layout produced by `tensor_product(a, b)`.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(size_t dim);
    ComplexMatrix(size_t dim, std::vector<Complex> entries);

    static ComplexMatrix identity(size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);

    size_t dim() const {
        return dim_;
    }
    Complex &operator()(size_t row, size_t col) {
        return entries_[row * dim_ + col];
    }
    const Complex &operator()(size_t row, size_t col) const {
        return entries_[row * dim_ + col];
    }
    std::span<const Complex> entries() const {
        return entries_;
    }
    std::span<Complex> entries() {
        return entries_;
    }

    ComplexMatrix adjoint() const;
    ComplexMatrix conjugate() const;
    ComplexMatrix transpose() const;
    Complex trace() const;

    /// max |m_ij - conj(m_ji)|
    double hermiticity_error() const;
    bool is_hermitian(double tol = kHermitianTol) const {
        return hermiticity_error() < tol;
    }

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale);

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    size_t dim_ = 0;
    std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// Normalized pure state amplitudes.
class StateVector {
   public:
    StateVector() = default;
    /// Normalizes `amplitudes`; throws InvalidState on a zero vector.
    explicit StateVector(std::vector<Complex> amplitudes);

    size_t dim() const {
        return amplitudes_.size();
    }
    std::span<const Complex> amplitudes() const {
        return amplitudes_;
    }
    const Complex &operator[](size_t k) const {
        return amplitudes_[k];
    }
    double norm() const;
    ComplexMatrix projector() const;
    /// |this> (x) |other>, with this as the most significant factor.
    StateVector tensor(const StateVector &other) const;

   private:
    std::vector<Complex> amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix over `n_qubits` qubits.
class DensityMatrix {
   public:
    /// Validates all invariants and throws InvalidState when one fails.
    explicit DensityMatrix(ComplexMatrix matrix);
    static DensityMatrix from_pure(const StateVector &psi);

    size_t n_qubits() const {
        return n_qubits_;
    }
    size_t dim() const {
        return matrix_.dim();
    }
    const ComplexMatrix &matrix() const {
        return matrix_;
    }
    const Complex &operator()(size_t row, size_t col) const {
        return matrix_(row, col);
    }

   private:
    struct Unchecked {};
    DensityMatrix(ComplexMatrix matrix, Unchecked);

    ComplexMatrix matrix_;
    size_t n_qubits_ = 0;
};

/// Number of qubits for a power-of-two dimension; throws DimensionMismatch otherwise.
size_t qubits_for_dim(size_t dim);

/// Pauli matrices sigma_0..sigma_3 (I, X, Y, Z).
const ComplexMatrix &pauli(int k);

ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b);
DensityMatrix tensor_product(const DensityMatrix &a, const DensityMatrix &b);

/// Reduced state on the subsystems listed in `keep` (in their original order).
/// `dims` gives each subsystem's dimension, most significant first.
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const size_t> keep, std::span<const size_t> dims);

/// Transposes subsystem `subsystem` only. Involutive and exact.
ComplexMatrix partial_transpose(const ComplexMatrix &m, size_t subsystem, std::span<const size_t> dims);
ComplexMatrix partial_transpose(const DensityMatrix &rho, size_t subsystem, std::span<const size_t> dims);

struct EigenSystem {
    /// Descending.
    std::vector<double> values;
    /// `vectors[k]` pairs with `values[k]`; orthonormal.
    std::vector<std::vector<Complex>> vectors;
};

/// Eigenvalues of a Hermitian matrix in descending order.
/// Throws InvalidState if `h` is not Hermitian within 1e-10.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix &h);
EigenSystem hermitian_eigensystem(const ComplexMatrix &h);

/// Tr(rho^2).
double purity(const DensityMatrix &rho);
double purity(const ComplexMatrix &m);

/// -sum lambda log2 lambda, in bits.
double von_neumann_entropy(const DensityMatrix &rho);

/// Fraction of entries whose modulus exceeds `threshold`.
double nonzero_fraction(const ComplexMatrix &m, double threshold = 1e-8);

}  // namespace xpooky

#endif
