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

#include "xpooky/qcore.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "xpooky/errors.h"

namespace xpooky {

ComplexMatrix::ComplexMatrix(size_t dim) : dim_(dim), entries_(dim * dim) {
}

ComplexMatrix::ComplexMatrix(size_t dim, std::vector<Complex> entries) : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != dim * dim) {
        throw DimensionMismatch(
            "ComplexMatrix: expected " + std::to_string(dim * dim) + " entries, got " +
            std::to_string(entries_.size()));
    }
}

ComplexMatrix ComplexMatrix::identity(size_t dim) {
    ComplexMatrix m(dim);
    for (size_t k = 0; k < dim; k++) {
        m(k, k) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (size_t k = 0; k < values.size(); k++) {
        m(k, k) = values[k];
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(dim_);
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = 0; j < dim_; j++) {
            r(j, i) = std::conj((*this)(i, j));
        }
    }
    return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix r(*this);
    for (auto &z : r.entries_) {
        z = std::conj(z);
    }
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(dim_);
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = 0; j < dim_; j++) {
            r(j, i) = (*this)(i, j);
        }
    }
    return r;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0;
    for (size_t k = 0; k < dim_; k++) {
        t += (*this)(k, k);
    }
    return t;
}

double ComplexMatrix::hermiticity_error() const {
    double worst = 0;
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = i; j < dim_; j++) {
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return worst;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    if (other.dim_ != dim_) {
        throw DimensionMismatch("ComplexMatrix +=: dimension mismatch");
    }
    for (size_t k = 0; k < entries_.size(); k++) {
        entries_[k] += other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    if (other.dim_ != dim_) {
        throw DimensionMismatch("ComplexMatrix -=: dimension mismatch");
    }
    for (size_t k = 0; k < entries_.size(); k++) {
        entries_[k] -= other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
    for (auto &z : entries_) {
        z *= scale;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix m) {
    m *= scale;
    return m;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("ComplexMatrix *: dimension mismatch");
    }
    size_t n = a.dim();
    ComplexMatrix r(n);
    for (size_t i = 0; i < n; i++) {
        for (size_t k = 0; k < n; k++) {
            Complex aik = a(i, k);
            for (size_t j = 0; j < n; j++) {
                r(i, j) += aik * b(k, j);
            }
        }
    }
    return r;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("max_abs_diff: dimension mismatch");
    }
    double worst = 0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (size_t k = 0; k < ea.size(); k++) {
        worst = std::max(worst, std::abs(ea[k] - eb[k]));
    }
    return worst;
}

StateVector::StateVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    double n2 = 0;
    for (const auto &a : amplitudes_) {
        n2 += std::norm(a);
    }
    if (!(n2 > 0) || !std::isfinite(n2)) {
        throw InvalidState("StateVector: cannot normalize a zero or non-finite vector");
    }
    double inv = 1.0 / std::sqrt(n2);
    for (auto &a : amplitudes_) {
        a *= inv;
    }
}

double StateVector::norm() const {
    double n2 = 0;
    for (const auto &a : amplitudes_) {
        n2 += std::norm(a);
    }
    return std::sqrt(n2);
}

ComplexMatrix StateVector::projector() const {
    size_t n = dim();
    ComplexMatrix p(n);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            p(i, j) = amplitudes_[i] * std::conj(amplitudes_[j]);
        }
    }
    return p;
}

StateVector StateVector::tensor(const StateVector &other) const {
    std::vector<Complex> out;
    out.reserve(dim() * other.dim());
    for (const auto &a : amplitudes_) {
        for (const auto &b : other.amplitudes_) {
            out.push_back(a * b);
        }
    }
    return StateVector(std::move(out));
}

size_t qubits_for_dim(size_t dim) {
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw DimensionMismatch("dimension " + std::to_string(dim) + " is not a power of two >= 2");
    }
    size_t n = 0;
    while ((size_t{1} << n) < dim) {
        n++;
    }
    return n;
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, Unchecked) : matrix_(std::move(matrix)) {
    n_qubits_ = qubits_for_dim(matrix_.dim());
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : DensityMatrix(std::move(matrix), Unchecked{}) {
    double herm = matrix_.hermiticity_error();
    if (!(herm < kHermitianTol)) {
        throw InvalidState("DensityMatrix: not Hermitian (error " + std::to_string(herm) + ")");
    }
    Complex tr = matrix_.trace();
    if (!(std::abs(tr - 1.0) < kTraceTol)) {
        throw InvalidState("DensityMatrix: trace is not 1");
    }
    auto eig = hermitian_eigenvalues(matrix_);
    if (eig.back() < -kPsdTol) {
        throw InvalidState("DensityMatrix: negative eigenvalue " + std::to_string(eig.back()));
    }
}

DensityMatrix DensityMatrix::from_pure(const StateVector &psi) {
    return DensityMatrix(psi.projector(), Unchecked{});
}

const ComplexMatrix &pauli(int k) {
    static const ComplexMatrix table[4] = {
        ComplexMatrix(2, {1, 0, 0, 1}),
        ComplexMatrix(2, {0, 1, 1, 0}),
        ComplexMatrix(2, {0, Complex(0, -1), Complex(0, 1), 0}),
        ComplexMatrix(2, {1, 0, 0, -1}),
    };
    if (k < 0 || k > 3) {
        throw std::out_of_range("pauli index must be in 0..3");
    }
    return table[k];
}

ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    size_t na = a.dim();
    size_t nb = b.dim();
    ComplexMatrix r(na * nb);
    for (size_t i = 0; i < na; i++) {
        for (size_t j = 0; j < na; j++) {
            Complex aij = a(i, j);
            for (size_t k = 0; k < nb; k++) {
                for (size_t l = 0; l < nb; l++) {
                    r(i * nb + k, j * nb + l) = aij * b(k, l);
                }
            }
        }
    }
    return r;
}

DensityMatrix tensor_product(const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix(tensor_product(a.matrix(), b.matrix()));
}

namespace {

size_t checked_total(std::span<const size_t> dims, size_t expected, const char *op) {
    size_t total = 1;
    for (size_t d : dims) {
        if (d == 0) {
            throw DimensionMismatch(std::string(op) + ": zero subsystem dimension");
        }
        total *= d;
    }
    if (total != expected) {
        throw DimensionMismatch(
            std::string(op) + ": subsystem dimensions multiply to " + std::to_string(total) + " but matrix has dim " +
            std::to_string(expected));
    }
    return total;
}

// Mixed-radix digits of `index`, most significant subsystem first.
void split_index(size_t index, std::span<const size_t> dims, std::span<size_t> digits) {
    for (size_t k = dims.size(); k-- > 0;) {
        digits[k] = index % dims[k];
        index /= dims[k];
    }
}

size_t join_index(std::span<const size_t> digits, std::span<const size_t> dims) {
    size_t index = 0;
    for (size_t k = 0; k < dims.size(); k++) {
        index = index * dims[k] + digits[k];
    }
    return index;
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const size_t> keep, std::span<const size_t> dims) {
    checked_total(dims, rho.dim(), "partial_trace");
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: keep must be nonempty");
    }
    std::vector<bool> kept(dims.size(), false);
    for (size_t k : keep) {
        if (k >= dims.size() || kept[k]) {
            throw std::invalid_argument("partial_trace: invalid or repeated subsystem index");
        }
        kept[k] = true;
    }
    std::vector<size_t> kept_order;
    std::vector<size_t> kept_dims;
    for (size_t k = 0; k < dims.size(); k++) {
        if (kept[k]) {
            kept_order.push_back(k);
            kept_dims.push_back(dims[k]);
        }
    }
    size_t out_dim = 1;
    for (size_t d : kept_dims) {
        out_dim *= d;
    }

    ComplexMatrix out(out_dim);
    std::vector<size_t> di(dims.size()), dj(dims.size()), ri(kept_dims.size()), rj(kept_dims.size());
    for (size_t i = 0; i < rho.dim(); i++) {
        split_index(i, dims, di);
        for (size_t j = 0; j < rho.dim(); j++) {
            split_index(j, dims, dj);
            bool diagonal_on_traced = true;
            for (size_t k = 0; k < dims.size(); k++) {
                if (!kept[k] && di[k] != dj[k]) {
                    diagonal_on_traced = false;
                    break;
                }
            }
            if (!diagonal_on_traced) {
                continue;
            }
            for (size_t k = 0; k < kept_order.size(); k++) {
                ri[k] = di[kept_order[k]];
                rj[k] = dj[kept_order[k]];
            }
            out(join_index(ri, kept_dims), join_index(rj, kept_dims)) += rho(i, j);
        }
    }
    return DensityMatrix(std::move(out));
}

ComplexMatrix partial_transpose(const ComplexMatrix &m, size_t subsystem, std::span<const size_t> dims) {
    checked_total(dims, m.dim(), "partial_transpose");
    if (subsystem >= dims.size()) {
        throw std::invalid_argument("partial_transpose: subsystem index out of range");
    }
    ComplexMatrix out(m.dim());
    std::vector<size_t> di(dims.size()), dj(dims.size());
    for (size_t i = 0; i < m.dim(); i++) {
        split_index(i, dims, di);
        for (size_t j = 0; j < m.dim(); j++) {
            split_index(j, dims, dj);
            std::swap(di[subsystem], dj[subsystem]);
            out(join_index(di, dims), join_index(dj, dims)) = m(i, j);
            std::swap(di[subsystem], dj[subsystem]);
        }
    }
    return out;
}

ComplexMatrix partial_transpose(const DensityMatrix &rho, size_t subsystem, std::span<const size_t> dims) {
    return partial_transpose(rho.matrix(), subsystem, dims);
}

namespace {

constexpr double kEigenHermitianTol = 1e-10;
constexpr int kMaxSweeps = 100;

// Cyclic Jacobi on a real symmetric matrix stored row-major in `a` (n x n).
// On return the diagonal of `a` holds eigenvalues and the columns of `v` the eigenvectors.
void jacobi_symmetric(std::vector<double> &a, std::vector<double> &v, size_t n) {
    v.assign(n * n, 0.0);
    for (size_t k = 0; k < n; k++) {
        v[k * n + k] = 1.0;
    }
    double scale = 0;
    for (double x : a) {
        scale += x * x;
    }
    double threshold = 1e-12 * std::max(1.0, std::sqrt(scale));

    for (int sweep = 0; sweep < kMaxSweeps; sweep++) {
        double off = 0;
        for (size_t p = 0; p < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                off += 2 * a[p * n + q] * a[p * n + q];
            }
        }
        if (std::sqrt(off) < threshold) {
            return;
        }
        for (size_t p = 0; p + 1 < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                double apq = a[p * n + q];
                if (apq == 0.0) {
                    continue;
                }
                double app = a[p * n + p];
                double aqq = a[q * n + q];
                double theta = (aqq - app) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1);
                double s = t * c;
                for (size_t k = 0; k < n; k++) {
                    double akp = a[k * n + p];
                    double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (size_t k = 0; k < n; k++) {
                    double apk = a[p * n + k];
                    double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for (size_t k = 0; k < n; k++) {
                    double vkp = v[k * n + p];
                    double vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
}

struct EmbeddedSpectrum {
    std::vector<double> values;  // 2n values, descending
    std::vector<size_t> order;   // column index into `vectors` for each value
    std::vector<double> vectors;
};

EmbeddedSpectrum embedded_spectrum(const ComplexMatrix &h) {
    double herm = h.hermiticity_error();
    if (!(herm < kEigenHermitianTol)) {
        throw InvalidState("hermitian_eigenvalues: input is not Hermitian (error " + std::to_string(herm) + ")");
    }
    size_t n = h.dim();
    size_t m = 2 * n;
    // [[Re, -Im], [Im, Re]] has every eigenvalue of h twice.
    std::vector<double> a(m * m);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            // Symmetrize so the real embedding is exactly symmetric.
            Complex z = 0.5 * (h(i, j) + std::conj(h(j, i)));
            a[i * m + j] = z.real();
            a[(i + n) * m + (j + n)] = z.real();
            a[i * m + (j + n)] = -z.imag();
            a[(i + n) * m + j] = z.imag();
        }
    }
    EmbeddedSpectrum out;
    jacobi_symmetric(a, out.vectors, m);
    out.order.resize(m);
    std::iota(out.order.begin(), out.order.end(), 0);
    std::stable_sort(out.order.begin(), out.order.end(), [&](size_t x, size_t y) {
        return a[x * m + x] > a[y * m + y];
    });
    for (size_t k : out.order) {
        out.values.push_back(a[k * m + k]);
    }
    return out;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix &h) {
    auto spec = embedded_spectrum(h);
    std::vector<double> values(h.dim());
    for (size_t k = 0; k < h.dim(); k++) {
        values[k] = 0.5 * (spec.values[2 * k] + spec.values[2 * k + 1]);
    }
    return values;
}

EigenSystem hermitian_eigensystem(const ComplexMatrix &h) {
    auto spec = embedded_spectrum(h);
    size_t n = h.dim();
    size_t m = 2 * n;
    EigenSystem out;
    out.values.resize(n);
    for (size_t k = 0; k < n; k++) {
        out.values[k] = 0.5 * (spec.values[2 * k] + spec.values[2 * k + 1]);
    }

    auto complex_column = [&](size_t col) {
        std::vector<Complex> z(n);
        for (size_t i = 0; i < n; i++) {
            z[i] = Complex(spec.vectors[i * m + col], spec.vectors[(i + n) * m + col]);
        }
        return z;
    };
    auto project_out = [&](std::vector<Complex> &z) {
        for (const auto &u : out.vectors) {
            Complex overlap = 0;
            for (size_t i = 0; i < n; i++) {
                overlap += std::conj(u[i]) * z[i];
            }
            for (size_t i = 0; i < n; i++) {
                z[i] -= overlap * u[i];
            }
        }
    };
    auto norm_of = [&](const std::vector<Complex> &z) {
        double s = 0;
        for (const auto &x : z) {
            s += std::norm(x);
        }
        return std::sqrt(s);
    };

    // Each complex eigenvector appears twice in the embedding (as z and i*z).
    // Walk clusters of equal eigenvalues and pick an orthonormal complex basis
    // for each by pivoted Gram-Schmidt over the cluster's embedded columns.
    double scale = std::max(1.0, std::abs(spec.values.front()) + std::abs(spec.values.back()));
    size_t start = 0;
    while (start < m) {
        size_t end = start + 1;
        while (end < m && std::abs(spec.values[end - 1] - spec.values[end]) < 1e-8 * scale) {
            end++;
        }
        size_t wanted = (end - start) / 2;
        std::vector<std::vector<Complex>> candidates;
        for (size_t k = start; k < end; k++) {
            candidates.push_back(complex_column(spec.order[k]));
        }
        for (size_t picked = 0; picked < wanted; picked++) {
            size_t best = 0;
            double best_norm = -1;
            for (size_t c = 0; c < candidates.size(); c++) {
                project_out(candidates[c]);
                double nz = norm_of(candidates[c]);
                if (nz > best_norm) {
                    best_norm = nz;
                    best = c;
                }
            }
            auto z = candidates[best];
            for (auto &x : z) {
                x /= best_norm;
            }
            out.vectors.push_back(std::move(z));
            candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best));
        }
        start = end;
    }
    return out;
}

double purity(const ComplexMatrix &m) {
    // Tr(m^2) = sum_ij m_ij m_ji
    double total = 0;
    for (size_t i = 0; i < m.dim(); i++) {
        for (size_t j = 0; j < m.dim(); j++) {
            total += (m(i, j) * m(j, i)).real();
        }
    }
    return total;
}

double purity(const DensityMatrix &rho) {
    return purity(rho.matrix());
}

double von_neumann_entropy(const DensityMatrix &rho) {
    double s = 0;
    for (double lambda : hermitian_eigenvalues(rho.matrix())) {
        if (lambda > 0) {
            s -= lambda * std::log2(lambda);
        }
    }
    return s;
}

double nonzero_fraction(const ComplexMatrix &m, double threshold) {
    auto e = m.entries();
    if (e.empty()) {
        return 0;
    }
    size_t nonzero = 0;
    for (const auto &z : e) {
        if (std::abs(z) > threshold) {
            nonzero++;
        }
    }
    return static_cast<double>(nonzero) / static_cast<double>(e.size());
}

}  // namespace xpooky
