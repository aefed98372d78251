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

#include "xpooky/labeling.h"

#include <algorithm>
#include <cmath>

#include "xpooky/errors.h"

namespace xpooky {

std::string Cut::name(size_t n_qubits) const {
    std::string left, right;
    for (size_t q = 0; q < n_qubits; q++) {
        bool on_side = std::find(side.begin(), side.end(), q) != side.end();
        (on_side ? left : right) += static_cast<char>('A' + q);
    }
    return left + "|" + right;
}

std::vector<Cut> single_qubit_cuts(size_t n_qubits) {
    if (n_qubits == 2) {
        return {Cut{{0}}};
    }
    std::vector<Cut> cuts;
    for (size_t q = 0; q < n_qubits; q++) {
        cuts.push_back(Cut{{q}});
    }
    return cuts;
}

namespace {

void require_two_qubits(const DensityMatrix &rho, const char *op) {
    if (rho.n_qubits() != 2) {
        throw DimensionMismatch(std::string(op) + ": expected a two-qubit density matrix");
    }
}

// Spectral weight below this is indistinguishable from round-off in a unit-trace matrix.
constexpr double kRankTol = 1e-14;

double binary_entropy(double x) {
    double h = 0;
    if (x > 0 && x < 1) {
        h = -x * std::log2(x) - (1 - x) * std::log2(1 - x);
    }
    return h;
}

}  // namespace

double concurrence_two_qubit(const DensityMatrix &rho) {
    require_two_qubits(rho, "concurrence_two_qubit");
    // With rho = sum_i |v_i><v_i| over its subnormalized eigenvectors, the
    // sqrt-eigenvalues of rho * rho_tilde are the singular values of
    // tau_ij = v_i^T (Y (x) Y) v_j. They are read off the Hermitian dilation
    // [[0, tau], [tau^+, 0]] so no square root of a near-zero eigenvalue is taken.
    static const ComplexMatrix yy = tensor_product(pauli(2), pauli(2));
    auto es = hermitian_eigensystem(rho.matrix());
    std::vector<std::vector<Complex>> v;
    for (size_t k = 0; k < 4; k++) {
        if (es.values[k] > kRankTol) {
            double s = std::sqrt(es.values[k]);
            std::vector<Complex> col(4);
            for (size_t i = 0; i < 4; i++) {
                col[i] = s * es.vectors[k][i];
            }
            v.push_back(std::move(col));
        }
    }
    size_t r = v.size();
    if (r == 0) {
        return 0.0;
    }
    ComplexMatrix dilation(2 * r);
    for (size_t i = 0; i < r; i++) {
        for (size_t j = 0; j < r; j++) {
            Complex t = 0;
            for (size_t a = 0; a < 4; a++) {
                for (size_t b = 0; b < 4; b++) {
                    t += v[i][a] * yy(a, b) * v[j][b];
                }
            }
            dilation(i, r + j) = t;
            dilation(r + j, i) = std::conj(t);
        }
    }
    auto ev = hermitian_eigenvalues(dilation);
    std::vector<double> lambda(ev.begin(), ev.begin() + static_cast<std::ptrdiff_t>(r));
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    double c = lambda[0];
    for (size_t k = 1; k < r; k++) {
        c -= std::max(0.0, lambda[k]);
    }
    return std::clamp(c, 0.0, 1.0);
}

double eof_from_concurrence(double c) {
    c = std::clamp(c, 0.0, 1.0);
    double x = (1 + std::sqrt(std::max(0.0, 1 - c * c))) / 2;
    return std::clamp(binary_entropy(x), 0.0, 1.0);
}

double eof_two_qubit(const DensityMatrix &rho) {
    return eof_from_concurrence(concurrence_two_qubit(rho));
}

TwoQubitLabel label_from_eof(double eof) {
    return {eof > kEofThreshold, eof};
}

TwoQubitLabel label_two_qubit(const DensityMatrix &rho) {
    return label_from_eof(eof_two_qubit(rho));
}

double min_pt_eigenvalue(const DensityMatrix &rho, const Cut &cut) {
    size_t n = rho.n_qubits();
    if (cut.side.empty() || cut.side.size() >= n) {
        throw std::invalid_argument("cut must leave qubits on both sides");
    }
    std::vector<size_t> dims(n, 2);
    ComplexMatrix pt = rho.matrix();
    std::vector<bool> seen(n, false);
    for (size_t q : cut.side) {
        if (q >= n || seen[q]) {
            throw std::invalid_argument("cut names an invalid or repeated qubit");
        }
        seen[q] = true;
        pt = partial_transpose(pt, q, dims);
    }
    return hermitian_eigenvalues(pt).back();
}

double negativity(const DensityMatrix &rho, const Cut &cut) {
    size_t n = rho.n_qubits();
    if (cut.side.empty() || cut.side.size() >= n) {
        throw std::invalid_argument("cut must leave qubits on both sides");
    }
    std::vector<size_t> dims(n, 2);
    ComplexMatrix pt = rho.matrix();
    std::vector<bool> seen(n, false);
    for (size_t q : cut.side) {
        if (q >= n || seen[q]) {
            throw std::invalid_argument("cut names an invalid or repeated qubit");
        }
        seen[q] = true;
        pt = partial_transpose(pt, q, dims);
    }
    double total = 0;
    for (double x : hermitian_eigenvalues(pt)) {
        if (x < 0) {
            total -= x;
        }
    }
    return total;
}

EntanglementReport analyze(const DensityMatrix &rho) {
    EntanglementReport report;
    size_t n = rho.n_qubits();
    for (const auto &cut : single_qubit_cuts(n)) {
        auto name = cut.name(n);
        report.negativity_by_cut[name] = negativity(rho, cut);
        report.min_pt_eigenvalue_by_cut[name] = min_pt_eigenvalue(rho, cut);
    }
    if (n == 2) {
        report.concurrence = concurrence_two_qubit(rho);
        report.eof = eof_from_concurrence(report.concurrence);
        report.is_entangled = label_from_eof(report.eof).entangled;
    } else {
        for (const auto &[name, value] : report.min_pt_eigenvalue_by_cut) {
            report.is_entangled |= value < kPtNegativeThreshold;
        }
    }
    return report;
}

}  // namespace xpooky
