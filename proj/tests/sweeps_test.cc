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

#include "xpooky/sweeps.h"

#include <gtest/gtest.h>

#include "xpooky/errors.h"
#include "xpooky/labeling.h"

using namespace xpooky;
using namespace xpooky::nn;

namespace {

struct Fixture {
    std::vector<LabeledState> records;
    Model model;
};

const Fixture &trained_two_qubit() {
    static const Fixture f = [] {
        GenSpec spec;
        spec.count_per_class = 200;
        spec.seed = 21;
        auto train_records = build_dataset(spec).records;
        spec.count_per_class = 60;
        spec.seed = 22;
        auto test_records = build_dataset(spec).records;
        Model m(build_model(Variant::NN, 2, Task::Classify));
        m.init(21);
        TrainConfig c;
        c.epochs = 3;
        auto data = make_training_data(train_records, 2, Task::Classify);
        train(m, data, data, c);
        return Fixture{test_records, std::move(m)};
    }();
    return f;
}

}  // namespace

TEST(sweeps, training_data_layout) {
    const auto &f = trained_two_qubit();
    auto data = make_training_data(f.records, 2, Task::Classify);
    EXPECT_EQ(data.x.shape(), (Shape{4, 4, 2}));
    EXPECT_EQ(data.targets.size(), 2 * f.records.size());
    auto labels = record_labels(f.records);
    for (size_t k = 0; k < labels.size(); k++) {
        EXPECT_EQ(data.targets[2 * k + labels[k]], 1.0);
    }
    auto reg = make_training_data(f.records, 2, Task::Regress);
    EXPECT_EQ(reg.targets[0], *f.records[0].eof);
}

TEST(sweeps, full_budget_equals_full_accuracy) {
    const auto &f = trained_two_qubit();
    auto full = evaluate_model(f.model, f.records, 2).metrics.acc;
    IncompleteSweepConfig c;
    c.budgets = {15};
    c.seed = 1;
    auto curve = incomplete_sweep(f.model, f.records, c);
    ASSERT_EQ(curve.points.size(), 1u);
    EXPECT_EQ(curve.points[0].metric, full);
    EXPECT_EQ(curve.points[0].trials, 1u);
}

TEST(sweeps, zero_budget_sees_only_maximally_mixed_inputs) {
    const auto &f = trained_two_qubit();
    IncompleteSweepConfig c;
    c.budgets = {0};
    auto curve = incomplete_sweep(f.model, f.records, c);
    // Every input becomes I/4, so the model predicts one class for all.
    LabeledState mixed = f.records[0];
    mixed.rho = DensityMatrix(0.25 * ComplexMatrix::identity(4));
    auto x = records_to_tensor(std::span<const LabeledState>(&mixed, 1), 2);
    size_t guess = predict_classes(f.model, x)[0];
    size_t hits = 0;
    for (const auto &r : f.records) {
        hits += r.label == guess;
    }
    EXPECT_DOUBLE_EQ(curve.points[0].metric, static_cast<double>(hits) / static_cast<double>(f.records.size()));
}

TEST(sweeps, deterministic_and_thread_invariant) {
    const auto &f = trained_two_qubit();
    IncompleteSweepConfig c;
    c.budgets = {3, 7};
    c.trials = 4;
    c.seed = 5;
    auto a = incomplete_sweep(f.model, f.records, c);
    c.threads = 3;
    auto b = incomplete_sweep(f.model, f.records, c);
    EXPECT_EQ(a.to_csv(), b.to_csv());
    EXPECT_EQ(a.points[0].trials, 4u);
    EXPECT_NO_THROW(a.validate());
}

TEST(sweeps, bell_space_set) {
    const auto &f = trained_two_qubit();
    auto set = bell_space_set(f.records, 3);
    size_t sep = 0;
    for (const auto &r : f.records) {
        sep += r.label == 0;
    }
    ASSERT_EQ(set.size(), 2 * sep);
    for (const auto &r : set) {
        if (r.label == 1) {
            EXPECT_NEAR(eof_two_qubit(r.rho), 1.0, 1e-9);
            EXPECT_NEAR(r.purity, 1.0, 1e-12);
        }
    }
    auto again = bell_space_set(f.records, 3);
    EXPECT_EQ(again.back().rho.matrix(), set.back().rho.matrix());
}

TEST(sweeps, rejects_wrong_qubit_count) {
    const auto &f = trained_two_qubit();
    GenSpec spec;
    spec.n_qubits = 3;
    spec.count_per_class = 2;
    auto three = build_dataset(spec).records;
    EXPECT_THROW(evaluate_model(f.model, three, 3), DimensionMismatch);
    EXPECT_THROW(incomplete_sweep(f.model, three, IncompleteSweepConfig{}), DimensionMismatch);
}

TEST(sweeps, regression_evaluation_sets_mae) {
    GenSpec spec;
    spec.count_per_class = 10;
    auto records = build_dataset(spec).records;
    Model m(build_model(Variant::NN, 2, Task::Regress));
    m.init(1);
    auto ev = evaluate_model(m, records, 2);
    ASSERT_TRUE(ev.metrics.mae.has_value());
    EXPECT_GE(*ev.metrics.mae, 0.0);
    EXPECT_EQ(ev.cm.total(), records.size());
}

TEST(sweep_curve, validation_and_formats) {
    SweepCurve c;
    c.kind = "incomplete";
    c.space = "entire";
    c.points = {{1, 0.5, 2}, {2, 0.6, 2}};
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.to_csv().substr(0, c.to_csv().find('\n')), "kind,space,seed,x,metric,trials");
    EXPECT_EQ(c.to_json()["points"].size(), 2u);
    c.points.push_back({2, 0.7, 2});
    EXPECT_THROW(c.validate(), std::logic_error);
    EXPECT_EQ(report_stem("purity", 7, 0xabc), "purity-seed7-model0000000000000abc");
    EXPECT_EQ(sweep_space_from_string("bell"), SweepSpace::Bell);
}
