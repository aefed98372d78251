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

#include <gtest/gtest.h>

#include "test_util.h"
#include "xpooky/datagen.h"
#include "xpooky/errors.h"

using namespace xpooky;
using namespace xpooky::testing;

namespace {

DensityMatrix werner(double p) {
    auto bell = DensityMatrix::from_pure(bell_phi_plus()).matrix();
    return DensityMatrix(p * bell + (1 - p) * (0.25 * ComplexMatrix::identity(4)));
}

double binary_entropy(double x) {
    if (x <= 0 || x >= 1) {
        return 0;
    }
    return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

// Entropy of the A marginal of an unnormalized pure two-qubit vector.
double pure_marginal_entropy(const Eigen::Vector4cd &w) {
    Eigen::Matrix2cd m;
    m << w(0), w(1), w(2), w(3);
    Eigen::Matrix2cd r = m * m.adjoint();
    r /= r.trace().real();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(r);
    double s = 0;
    for (int k = 0; k < 2; k++) {
        double l = es.eigenvalues()(k);
        if (l > 1e-15) {
            s -= l * std::log2(l);
        }
    }
    return s;
}

// Average marginal entropy of the decomposition of rho induced by unitary u.
double decomposition_eof(const Eigen::Matrix4cd &rho, const Eigen::Matrix4cd &u) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
    double total = 0;
    for (int j = 0; j < 4; j++) {
        Eigen::Vector4cd w = Eigen::Vector4cd::Zero();
        for (int i = 0; i < 4; i++) {
            double l = std::max(0.0, es.eigenvalues()(i));
            w += u(j, i) * std::sqrt(l) * es.eigenvectors().col(i);
        }
        double p = w.squaredNorm();
        if (p > 1e-15) {
            total += p * pure_marginal_entropy(w);
        }
    }
    return total;
}

Eigen::Matrix4cd random_unitary4(std::mt19937_64 &rng) {
    std::normal_distribution<double> n;
    Eigen::Matrix4cd g;
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            g(i, j) = {n(rng), n(rng)};
        }
    }
    Eigen::HouseholderQR<Eigen::Matrix4cd> qr(g);
    return qr.householderQ();
}

}  // namespace

TEST(concurrence_two_qubit, bell_state) {
    EXPECT_NEAR(concurrence_two_qubit(DensityMatrix::from_pure(bell_phi_plus())), 1.0, 1e-12);
}

TEST(concurrence_two_qubit, product_pure_state) {
    Rng rng(3);
    for (int t = 0; t < 20; t++) {
        auto a = random_pure_state(1, rng);
        auto b = random_pure_state(1, rng);
        EXPECT_NEAR(concurrence_two_qubit(DensityMatrix::from_pure(a.tensor(b))), 0.0, 1e-7);
    }
}

TEST(concurrence_two_qubit, werner_family) {
    EXPECT_NEAR(concurrence_two_qubit(werner(1.0 / 3)), 0.0, 1e-7);
    EXPECT_NEAR(concurrence_two_qubit(werner(0.6)), 0.4, 1e-12);
    // PT sign agrees on both sides of the boundary.
    EXPECT_GE(min_pt_eigenvalue(werner(0.3), Cut{{1}}), -1e-12);
    EXPECT_LT(min_pt_eigenvalue(werner(0.4), Cut{{1}}), kPtNegativeThreshold);
}

TEST(concurrence_two_qubit, werner_eof_is_lower_bound_of_sampled_decompositions) {
    auto rho = werner(0.6);
    double eof = eof_two_qubit(rho);
    EXPECT_NEAR(eof, binary_entropy((1 + std::sqrt(1 - 0.16)) / 2), 1e-12);
    auto e = to_eigen(rho.matrix());
    Eigen::Matrix4cd r = e;
    std::mt19937_64 rng(41);
    double best = 1e9;
    for (int t = 0; t < 20000; t++) {
        double v = decomposition_eof(r, random_unitary4(rng));
        EXPECT_GE(v, eof - 1e-9);
        best = std::min(best, v);
    }
    // Random search lands close to the convex roof.
    EXPECT_LT(best - eof, 0.1);
}

TEST(concurrence_two_qubit, rejects_non_two_qubit) {
    EXPECT_THROW(concurrence_two_qubit(DensityMatrix(0.5 * ComplexMatrix::identity(2))), DimensionMismatch);
    EXPECT_THROW(eof_two_qubit(DensityMatrix(0.125 * ComplexMatrix::identity(8))), DimensionMismatch);
}

TEST(eof_two_qubit, bell_is_one) {
    EXPECT_NEAR(eof_two_qubit(DensityMatrix::from_pure(bell_phi_plus())), 1.0, 1e-12);
}

TEST(eof_two_qubit, separable_recipe_is_zero) {
    GenSpec spec;
    spec.n_qubits = 2;
    Rng rng(5);
    for (int t = 0; t < 50; t++) {
        auto rec = generate_class(class_id(TwoQubitClass::Sep), spec, rng);
        EXPECT_LE(eof_two_qubit(rec.rho), kEofThreshold);
    }
}

TEST(eof_two_qubit, pure_state_identity) {
    Rng rng(7);
    std::vector<size_t> dims{2, 2}, keep{0};
    for (int t = 0; t < 200; t++) {
        auto rho = DensityMatrix::from_pure(random_pure_state(2, rng));
        EXPECT_NEAR(eof_two_qubit(rho), von_neumann_entropy(partial_trace(rho, keep, dims)), 1e-9);
    }
}

TEST(eof_two_qubit, monotone_in_concurrence) {
    double prev = 0;
    for (int k = 0; k <= 1000; k++) {
        double e = eof_from_concurrence(k / 1000.0);
        EXPECT_GE(e, prev);
        prev = e;
    }
    EXPECT_DOUBLE_EQ(eof_from_concurrence(0), 0);
    EXPECT_NEAR(eof_from_concurrence(1), 1, 1e-15);
}

TEST(eof_two_qubit, local_unitary_invariance) {
    Rng rng(9);
    std::mt19937_64 orng(9);
    for (int t = 0; t < 50; t++) {
        DensityMatrix rho(wishart_state(4, orng));
        auto u = tensor_product(random_unitary_2x2(rng), random_unitary_2x2(rng));
        auto rotated = u * rho.matrix() * u.adjoint();
        auto sym = 0.5 * (rotated + rotated.adjoint());
        DensityMatrix r2(sym);
        EXPECT_NEAR(concurrence_two_qubit(rho), concurrence_two_qubit(r2), 1e-9);
        EXPECT_NEAR(eof_two_qubit(rho), eof_two_qubit(r2), 1e-9);
    }
}

TEST(label_two_qubit, threshold_rule) {
    EXPECT_TRUE(label_from_eof(0.3).entangled);
    EXPECT_FALSE(label_from_eof(0.0).entangled);
    EXPECT_FALSE(label_from_eof(5e-10).entangled);
    auto l = label_two_qubit(DensityMatrix::from_pure(bell_phi_plus()));
    EXPECT_TRUE(l.entangled);
    EXPECT_NEAR(l.eof, 1.0, 1e-12);
}

TEST(negativity, examples) {
    Rng rng(11);
    auto prod = DensityMatrix::from_pure(random_pure_state(1, rng).tensor(random_pure_state(1, rng)));
    EXPECT_NEAR(negativity(prod, Cut{{1}}), 0.0, 1e-9);
    EXPECT_NEAR(negativity(DensityMatrix::from_pure(bell_phi_plus()), Cut{{1}}), 0.5, 1e-12);

    // theta = pi/2 on every qubit gives (|000> + |111>)/sqrt(2).
    GhzParams g{M_PI / 4, 0, {M_PI / 2, M_PI / 2, M_PI / 2}, {0, 0, 0}};
    auto ghz = DensityMatrix::from_pure(ghz_state(g));
    for (const auto &cut : single_qubit_cuts(3)) {
        EXPECT_GT(negativity(ghz, cut), 1e-3) << cut.name(3);
    }
}

TEST(negativity, invalid_cut) {
    auto rho = DensityMatrix::from_pure(bell_phi_plus());
    EXPECT_THROW(negativity(rho, Cut{{2}}), std::invalid_argument);
    EXPECT_THROW(negativity(rho, Cut{{}}), std::invalid_argument);
}

TEST(cut, names) {
    auto cuts = single_qubit_cuts(3);
    ASSERT_EQ(cuts.size(), 3u);
    EXPECT_EQ(cuts[0].name(3), "A|BC");
    EXPECT_EQ(cuts[1].name(3), "B|AC");
    EXPECT_EQ(cuts[2].name(3), "C|AB");
    EXPECT_EQ(single_qubit_cuts(2).at(0).name(2), "A|B");
}

TEST(analyze, eof_and_ppt_agree_on_generated_states) {
    GenSpec spec;
    spec.n_qubits = 2;
    spec.count_per_class = 500;
    spec.seed = 77;
    auto data = build_dataset(spec);
    for (const auto &rec : data.records) {
        auto rep = analyze(rec.rho);
        bool ppt_entangled = rep.min_pt_eigenvalue_by_cut.begin()->second < kPtNegativeThreshold;
        EXPECT_EQ(rep.is_entangled, ppt_entangled);
        EXPECT_EQ(rep.eof > kEofThreshold, rep.concurrence > 0);
    }
}
