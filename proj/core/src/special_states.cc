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

#include <cmath>
#include <numbers>

#include "xpooky/datagen.h"
#include "xpooky/errors.h"

namespace xpooky {

namespace {

constexpr double kPi = std::numbers::pi;

// Uniform on (0, hi].
double uniform_open_closed(double hi, Rng &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return hi * (1.0 - u(rng));
}

Complex complex_gaussian(Rng &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    double re = g(rng);
    double im = g(rng);
    return {re, im};
}

}  // namespace

StateVector ghz_state(const GhzParams &p) {
    // |Phi_ABC> = (x)_k (cos theta_k |0> + e^{i phi_k} sin theta_k |1>)
    std::vector<Complex> product(8, 1.0);
    for (size_t index = 0; index < 8; index++) {
        for (size_t q = 0; q < 3; q++) {
            bool one = (index >> (2 - q)) & 1;
            product[index] *= one ? std::polar(std::sin(p.theta[q]), p.local_phase[q]) : Complex(std::cos(p.theta[q]));
        }
    }
    std::vector<Complex> amps(8);
    Complex weight = std::polar(std::sin(p.epsilon), p.phi);
    for (size_t index = 0; index < 8; index++) {
        amps[index] = weight * product[index];
    }
    amps[0] += std::cos(p.epsilon);
    return StateVector(std::move(amps));
}

StateVector w_state(const WParams &p) {
    static constexpr size_t kRemainderIndices[5] = {0b000, 0b011, 0b101, 0b110, 0b111};
    std::vector<Complex> amps(8);
    amps[0b001] = p.a;
    amps[0b010] = p.b;
    amps[0b100] = p.c;
    double rem_norm2 = 0;
    for (const auto &r : p.remainder) {
        rem_norm2 += std::norm(r);
    }
    if (rem_norm2 > 0) {
        double inv = 1.0 / std::sqrt(rem_norm2);
        for (size_t k = 0; k < 5; k++) {
            amps[kRemainderIndices[k]] -= p.d * p.remainder[k] * inv;
        }
    }
    return StateVector(std::move(amps));
}

StateVector graph_state(const std::array<double, 8> &alpha) {
    static constexpr double kSigns[8] = {+1, +1, +1, -1, +1, +1, -1, +1};
    std::vector<Complex> amps(8);
    for (size_t k = 0; k < 8; k++) {
        amps[k] = kSigns[k] * alpha[k];
    }
    return StateVector(std::move(amps));
}

GhzParams random_ghz_params(Rng &rng) {
    std::uniform_real_distribution<double> phase(0.0, 2 * kPi);
    GhzParams p{};
    p.epsilon = uniform_open_closed(kPi / 4, rng);
    for (auto &t : p.theta) {
        t = uniform_open_closed(kPi / 2, rng);
    }
    p.phi = phase(rng);
    for (auto &f : p.local_phase) {
        f = phase(rng);
    }
    return p;
}

WParams random_w_params(Rng &rng) {
    WParams p{};
    p.a = complex_gaussian(rng);
    p.b = complex_gaussian(rng);
    p.c = complex_gaussian(rng);
    p.d = complex_gaussian(rng);
    for (auto &r : p.remainder) {
        r = complex_gaussian(rng);
    }
    return p;
}

std::array<double, 8> random_graph_alphas(Rng &rng) {
    std::array<double, 8> alpha{};
    for (auto &a : alpha) {
        a = uniform_open_closed(1.0, rng);
    }
    return alpha;
}

StateVector special_state(SpecialKind kind, Rng &rng) {
    switch (kind) {
        case SpecialKind::GHZ:
            return ghz_state(random_ghz_params(rng));
        case SpecialKind::W:
            return w_state(random_w_params(rng));
        case SpecialKind::Graph:
            return graph_state(random_graph_alphas(rng));
    }
    throw std::invalid_argument("special_state: unknown kind");
}

ComplexMatrix random_unitary_2x2(Rng &rng) {
    // First column uniform on the unit sphere of C^2, second column the unique
    // orthogonal direction with a uniform phase.
    StateVector col(std::vector<Complex>{complex_gaussian(rng), complex_gaussian(rng)});
    std::uniform_real_distribution<double> phase(0.0, 2 * kPi);
    Complex chi = std::polar(1.0, phase(rng));
    ComplexMatrix u(2);
    u(0, 0) = col[0];
    u(1, 0) = col[1];
    u(0, 1) = -chi * std::conj(col[1]);
    u(1, 1) = chi * std::conj(col[0]);
    return u;
}

StateVector apply_random_local_unitaries(const StateVector &psi, Rng &rng) {
    if (psi.dim() != 8) {
        throw DimensionMismatch("apply_random_local_unitaries: expected a three-qubit state");
    }
    auto ua = random_unitary_2x2(rng);
    auto ub = random_unitary_2x2(rng);
    auto uc = random_unitary_2x2(rng);
    ComplexMatrix u = tensor_product(tensor_product(ua, ub), uc);
    std::vector<Complex> out(8);
    for (size_t i = 0; i < 8; i++) {
        for (size_t j = 0; j < 8; j++) {
            out[i] += u(i, j) * psi[j];
        }
    }
    return StateVector(std::move(out));
}

StateVector interleave_ac_b(const StateVector &psi_ac, const StateVector &psi_b) {
    if (psi_ac.dim() != 4 || psi_b.dim() != 2) {
        throw DimensionMismatch("interleave_ac_b: expected a two-qubit and a one-qubit state");
    }
    const auto &a = psi_ac;
    const auto &b = psi_b;
    return StateVector(std::vector<Complex>{
        a[0] * b[0],
        a[1] * b[0],
        a[0] * b[1],
        a[1] * b[1],
        a[2] * b[0],
        a[3] * b[0],
        a[2] * b[1],
        a[3] * b[1],
    });
}

}  // namespace xpooky
