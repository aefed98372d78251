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

#ifndef XPOOKY_TESTS_TEST_UTIL_H
#define XPOOKY_TESTS_TEST_UTIL_H

#include <Eigen/Dense>
#include <random>

#include "xpooky/qcore.h"
#include "xpooky/rng.h"

namespace xpooky::testing {

using EigenC = Eigen::MatrixXcd;

inline EigenC to_eigen(const ComplexMatrix &m) {
    EigenC out(static_cast<long>(m.dim()), static_cast<long>(m.dim()));
    for (size_t i = 0; i < m.dim(); i++) {
        for (size_t j = 0; j < m.dim(); j++) {
            out(static_cast<long>(i), static_cast<long>(j)) = m(i, j);
        }
    }
    return out;
}

inline ComplexMatrix from_eigen(const EigenC &m) {
    ComplexMatrix out(static_cast<size_t>(m.rows()));
    for (size_t i = 0; i < out.dim(); i++) {
        for (size_t j = 0; j < out.dim(); j++) {
            out(i, j) = m(static_cast<long>(i), static_cast<long>(j));
        }
    }
    return out;
}

/// Independent Wishart sampler used as an oracle source of valid states.
inline ComplexMatrix wishart_state(size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    EigenC g(static_cast<long>(dim), static_cast<long>(dim));
    for (long i = 0; i < g.rows(); i++) {
        for (long j = 0; j < g.cols(); j++) {
            g(i, j) = {n(rng), n(rng)};
        }
    }
    EigenC rho = g * g.adjoint();
    rho /= rho.trace().real();
    // Exact Hermitian symmetrization so the state passes the 1e-12 checks.
    rho = (rho + rho.adjoint()).eval() * 0.5;
    return from_eigen(rho);
}

inline ComplexMatrix random_hermitian(size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    EigenC g(static_cast<long>(dim), static_cast<long>(dim));
    for (long i = 0; i < g.rows(); i++) {
        for (long j = 0; j < g.cols(); j++) {
            g(i, j) = {n(rng), n(rng)};
        }
    }
    EigenC h = (g + g.adjoint()).eval() * 0.5;
    return from_eigen(h);
}

inline StateVector bell_phi_plus() {
    double s = 1 / std::sqrt(2.0);
    return StateVector({s, 0, 0, s});
}

inline StateVector basis_state(size_t dim, size_t k) {
    std::vector<Complex> a(dim, 0.0);
    a[k] = 1.0;
    return StateVector(std::move(a));
}

}  // namespace xpooky::testing

#endif
