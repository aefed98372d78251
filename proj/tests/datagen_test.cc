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

#include "xpooky/datagen.h"

#include <gtest/gtest.h>

#include <set>

#include "test_util.h"
#include "xpooky/dataset_io.h"
#include "xpooky/errors.h"
#include "xpooky/labeling.h"

using namespace xpooky;
using namespace xpooky::testing;

TEST(partition_count, examples) {
    EXPECT_EQ(partition_count(3), 4u);
    EXPECT_EQ(partition_count(2), 1u);
    EXPECT_EQ(partition_count(4), 11u);
    EXPECT_EQ(class_count(3), 5u);
    EXPECT_EQ(class_count(2), 2u);
}

TEST(random_pure_state, normalized_and_deterministic) {
    for (uint64_t seed = 0; seed < 20; seed++) {
        Rng a(seed), b(seed);
        auto x = random_pure_state(3, a);
        auto y = random_pure_state(3, b);
        EXPECT_NEAR(x.norm(), 1.0, 1e-12);
        for (size_t k = 0; k < 8; k++) {
            EXPECT_EQ(x[k], y[k]);
        }
    }
}

TEST(random_pure_state, uniform_on_sphere) {
    Rng rng(1);
    const size_t n = 10000, dim = 4;
    double sum = 0;
    for (size_t t = 0; t < n; t++) {
        sum += std::norm(random_pure_state(2, rng)[0]);
    }
    double mean = sum / n;
    // |a_0|^2 ~ Beta(1, dim - 1).
    double var = (dim - 1.0) / (dim * dim * (dim + 1.0));
    EXPECT_LT(std::abs(mean - 1.0 / dim), 3 * std::sqrt(var / n));
}

TEST(random_density_matrix, psd_guaranteed_is_valid) {
    Rng rng(2);
    for (int t = 0; t < 200; t++) {
        auto rho = random_density_matrix(3, GeneratorMode::PsdGuaranteed, rng);
        EXPECT_GE(hermitian_eigenvalues(rho.matrix()).back(), -kPsdTol);
        EXPECT_LT(std::abs(rho.matrix().trace() - 1.0), kTraceTol);
    }
}

TEST(random_density_matrix, paper_literal_accepts_only_psd) {
    Rng rng(3);
    for (int t = 0; t < 50; t++) {
        auto rho = random_density_matrix(1, GeneratorMode::PaperLiteral, rng);
        EXPECT_GE(hermitian_eigenvalues(rho.matrix()).back(), 0.0);
    }
}

TEST(random_density_matrix, mean_purity_matches_independent_sampler) {
    Rng rng(4);
    std::mt19937_64 oracle_rng(4004);
    const int n = 1000;
    double ours = 0, oracle = 0;
    for (int t = 0; t < n; t++) {
        ours += purity(random_density_matrix(2, GeneratorMode::PsdGuaranteed, rng));
    }
    for (int t = 0; t < 10000; t++) {
        auto e = to_eigen(wishart_state(4, oracle_rng));
        oracle += (e * e).trace().real();
    }
    ours /= n;
    oracle /= 10000;
    EXPECT_LT(std::abs(ours - oracle) / oracle, 0.02);
    // Hilbert-Schmidt ensemble: E Tr(rho^2) = 2d / (d^2 + 1).
    EXPECT_NEAR(oracle, 8.0 / 17.0, 0.01);
}

TEST(dirichlet_weights, on_simplex) {
    Rng rng(5);
    for (size_t m = 1; m <= 10; m++) {
        auto w = dirichlet_weights(m, rng);
        double total = 0;
        for (double x : w) {
            EXPECT_GE(x, 0);
            total += x;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(mix_to_purity, single_term_is_pure) {
    Rng rng(6);
    TermFactory f = [](Rng &r) { return random_pure_state(2, r).projector(); };
    std::vector<double> w{1.0};
    EXPECT_NEAR(purity(mix_to_purity(f, 1, w, rng)), 1.0, 1e-12);
}

TEST(mix_to_purity, orthogonal_pair_is_half) {
    Rng rng(7);
    size_t calls = 0;
    TermFactory f = [&](Rng &) { return basis_state(2, calls++ % 2).projector(); };
    std::vector<double> w{0.5, 0.5};
    EXPECT_NEAR(purity(mix_to_purity(f, 2, w, rng)), 0.5, 1e-15);
}

TEST(mix_to_purity, eight_haar_terms_mean_purity) {
    Rng rng(8);
    TermFactory f = [](Rng &r) { return random_pure_state(3, r).projector(); };
    std::vector<double> w(8, 1.0 / 8);
    const int n = 2000;
    double mean = 0;
    for (int t = 0; t < n; t++) {
        mean += purity(mix_to_purity(f, 8, w, rng));
    }
    mean /= n;
    // Independent Monte-Carlo oracle: overlaps of Haar vectors drawn with Eigen.
    std::mt19937_64 orng(808);
    std::normal_distribution<double> g;
    double oracle = 0;
    for (int t = 0; t < 10000; t++) {
        Eigen::MatrixXcd v(8, 8);
        for (int j = 0; j < 8; j++) {
            for (int i = 0; i < 8; i++) {
                v(i, j) = {g(orng), g(orng)};
            }
            v.col(j).normalize();
        }
        Eigen::MatrixXcd rho = v * v.adjoint() / 8.0;
        oracle += (rho * rho).trace().real();
    }
    oracle /= 10000;
    EXPECT_LT(std::abs(mean - oracle) / oracle, 0.02);
}

TEST(mix_to_purity, unreachable_bin) {
    Rng rng(9);
    TermFactory f = [](Rng &r) { return random_pure_state(2, r).projector(); };
    EXPECT_THROW(mix_to_purity(f, 2, 2, PurityBin{1.0, 0.0}, rng, 200), RetryBudgetExceeded);
}

TEST(mix_to_purity, lands_in_bin) {
    Rng rng(10);
    TermFactory f = [](Rng &r) { return random_pure_state(3, r).projector(); };
    size_t m = 0;
    auto rho = mix_to_purity(f, 1, 10, PurityBin{0.56, 0.02}, rng, 100000, &m);
    EXPECT_TRUE((PurityBin{0.56, 0.02}.contains(purity(rho))));
    EXPECT_GE(m, 2u);
}

TEST(special_state, ghz_with_zero_epsilon_is_product) {
    GhzParams p{0.0, 1.2, {0.3, 0.7, 1.1}, {0.5, 1.5, 2.5}};
    auto rho = DensityMatrix::from_pure(ghz_state(p));
    EXPECT_NEAR(std::abs(rho(0, 0)), 1.0, 1e-15);
    for (const auto &cut : single_qubit_cuts(3)) {
        EXPECT_NEAR(negativity(rho, cut), 0.0, 1e-12);
    }
}

TEST(special_state, w_marginal_purity) {
    WParams p{1, 1, 1, 0, {1, 1, 1, 1, 1}};
    auto psi = w_state(p);
    double s = 1 / std::sqrt(3.0);
    for (size_t k = 0; k < 8; k++) {
        bool w = k == 1 || k == 2 || k == 4;
        EXPECT_NEAR(std::abs(psi[k] - Complex(w ? s : 0.0)), 0.0, 1e-15);
    }
    std::vector<size_t> dims{2, 2, 2}, keep{0};
    EXPECT_NEAR(purity(partial_trace(DensityMatrix::from_pure(psi), keep, dims)), 5.0 / 9.0, 1e-12);
}

TEST(special_state, graph_signs) {
    std::array<double, 8> alpha{1, 1, 1, 1, 1, 1, 1, 1};
    auto psi = graph_state(alpha);
    double signs[8] = {1, 1, 1, -1, 1, 1, -1, 1};
    for (size_t k = 0; k < 8; k++) {
        EXPECT_NEAR(psi[k].real(), signs[k] / std::sqrt(8.0), 1e-15);
    }
}

TEST(special_state, normalized_for_every_kind) {
    Rng rng(11);
    for (int t = 0; t < 100; t++) {
        for (auto kind : {SpecialKind::GHZ, SpecialKind::W, SpecialKind::Graph}) {
            EXPECT_NEAR(special_state(kind, rng).norm(), 1.0, 1e-12);
        }
    }
}

TEST(special_state, random_ghz_params_in_range) {
    Rng rng(12);
    for (int t = 0; t < 1000; t++) {
        auto p = random_ghz_params(rng);
        EXPECT_GT(p.epsilon, 0);
        EXPECT_LE(p.epsilon, M_PI / 4);
        for (double th : p.theta) {
            EXPECT_GT(th, 0);
            EXPECT_LE(th, M_PI / 2);
        }
        EXPECT_GE(p.phi, 0);
        EXPECT_LT(p.phi, 2 * M_PI);
    }
}

TEST(interleave_ac_b, layout) {
    auto ac = StateVector({1.0, 2.0, 3.0, 4.0});
    auto b = StateVector({5.0, 6.0});
    auto psi = interleave_ac_b(ac, b);
    double raw[8] = {1 * 5, 2 * 5, 1 * 6, 2 * 6, 3 * 5, 4 * 5, 3 * 6, 4 * 6};
    double norm = 0;
    for (double r : raw) {
        norm += r * r;
    }
    for (size_t k = 0; k < 8; k++) {
        EXPECT_NEAR(psi[k].real(), raw[k] / std::sqrt(norm), 1e-15);
    }
    // Product across B: tracing B leaves a pure A,C state.
    std::vector<size_t> dims{2, 2, 2}, keep{1};
    EXPECT_NEAR(purity(partial_trace(DensityMatrix::from_pure(psi), keep, dims)), 1.0, 1e-12);
}

TEST(generate_class, ab_c_single_term_cuts) {
    GenSpec spec;
    spec.n_qubits = 3;
    spec.m_min = spec.m_max = 1;
    Rng rng(13);
    for (int t = 0; t < 20; t++) {
        auto rec = generate_class(class_id(ThreeQubitClass::AB_C), spec, rng);
        EXPECT_GE(min_pt_eigenvalue(rec.rho, Cut{{2}}), -1e-10);
        EXPECT_LT(min_pt_eigenvalue(rec.rho, Cut{{0}}), kPtNegativeThreshold);
        EXPECT_NEAR(rec.purity, 1.0, 1e-12);
    }
}

TEST(generate_class, every_three_qubit_class_respects_its_cut_plan) {
    GenSpec spec;
    spec.n_qubits = 3;
    Rng rng(14);
    // Qubits whose single-qubit cut is separable, per class.
    std::vector<std::set<size_t>> separable{{0, 1, 2}, {2}, {0}, {1}, {}};
    for (ClassId c = 0; c < 5; c++) {
        for (int t = 0; t < 20; t++) {
            auto rec = generate_class(c, spec, rng);
            EXPECT_EQ(rec.label, c);
            EXPECT_FALSE(rec.eof.has_value());
            for (size_t q = 0; q < 3; q++) {
                double ev = min_pt_eigenvalue(rec.rho, Cut{{q}});
                if (separable[c].count(q)) {
                    EXPECT_GE(ev, -1e-10);
                } else {
                    EXPECT_LT(ev, kPtNegativeThreshold);
                }
            }
        }
    }
}

TEST(generate_class, two_qubit_labels_match_eof) {
    GenSpec spec;
    Rng rng(15);
    for (ClassId c = 0; c < 2; c++) {
        for (int t = 0; t < 50; t++) {
            auto rec = generate_class(c, spec, rng);
            ASSERT_TRUE(rec.eof.has_value());
            EXPECT_EQ(*rec.eof > kEofThreshold, c == 1);
            EXPECT_NEAR(*rec.eof, eof_two_qubit(rec.rho), 1e-15);
            EXPECT_NEAR(rec.purity, purity(rec.rho), 1e-10);
            EXPECT_GE(nonzero_fraction(rec.rho.matrix()), 0.75);
            EXPECT_GE(rec.m_used, 1u);
            EXPECT_LE(rec.m_used, 10u);
        }
    }
}

TEST(generate_class, rejects_bad_class) {
    GenSpec spec;
    Rng rng(16);
    EXPECT_THROW(generate_class(2, spec, rng), std::invalid_argument);
}

TEST(gen_spec, validation_and_json) {
    GenSpec spec;
    spec.n_qubits = 4;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec.n_qubits = 2;
    spec.target_purity = PurityBin{0.2, 0.02};
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec.target_purity = PurityBin{0.83, 0.02};
    spec.seed = 99;
    spec.validate();
    nlohmann::json j = spec;
    GenSpec back = j.get<GenSpec>();
    EXPECT_EQ(nlohmann::json(back), j);
    EXPECT_DOUBLE_EQ(back.effective_nonzero_fraction(), 0.75);
}

TEST(build_dataset, balanced_and_audited) {
    GenSpec spec;
    spec.count_per_class = 100;
    spec.seed = 21;
    auto d = build_dataset(spec);
    ASSERT_EQ(d.records.size(), 200u);
    size_t ent = 0;
    for (const auto &r : d.records) {
        ent += r.label;
    }
    EXPECT_EQ(ent, 100u);
    EXPECT_EQ(d.audit.checked, 100u);
    EXPECT_EQ(d.audit.violations, 0u);
}

TEST(build_dataset, deterministic_bytes_and_thread_invariant) {
    GenSpec spec;
    spec.n_qubits = 3;
    spec.count_per_class = 20;
    spec.seed = 22;
    auto a = serialize_dataset(build_dataset(spec, 1).records, 3, nlohmann::json(spec));
    auto b = serialize_dataset(build_dataset(spec, 1).records, 3, nlohmann::json(spec));
    auto c = serialize_dataset(build_dataset(spec, 4).records, 3, nlohmann::json(spec));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
}

TEST(build_dataset, three_qubit_purity_bin) {
    GenSpec spec;
    spec.n_qubits = 3;
    spec.count_per_class = 50;
    spec.seed = 23;
    spec.target_purity = PurityBin{0.375, 0.025};
    auto d = build_dataset(spec);
    ASSERT_EQ(d.records.size(), 250u);
    for (const auto &r : d.records) {
        double p = purity(r.rho);
        EXPECT_GE(p, 0.35);
        EXPECT_LE(p, 0.40);
    }
}

TEST(build_dataset, per_record_seed_reproduces_record) {
    GenSpec spec;
    spec.count_per_class = 10;
    spec.seed = 24;
    auto d = build_dataset(spec);
    for (const auto &r : d.records) {
        Rng rng(r.seed_used);
        auto again = generate_class(r.label, spec, rng);
        EXPECT_EQ(again.rho.matrix(), r.rho.matrix());
    }
}

TEST(audit_records, flags_mislabeled_record) {
    GenSpec spec;
    spec.count_per_class = 50;
    spec.seed = 25;
    auto d = build_dataset(spec);
    auto records = d.records;
    for (auto &r : records) {
        r.label = 1 - r.label;
    }
    auto report = audit_records(records, 2);
    EXPECT_EQ(report.checked, 100u);
    EXPECT_GT(report.violations, 0u);
}
