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

#ifndef XPOOKY_SWEEPS_H
#define XPOOKY_SWEEPS_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "xpooky/datagen.h"
#include "xpooky/eval.h"
#include "xpooky/nn/architectures.h"
#include "xpooky/nn/network.h"
#include "xpooky/nn/train.h"

namespace xpooky {

/// Extended tensors of every record, batched.
nn::Tensor records_to_tensor(std::span<const LabeledState> records, size_t n_qubits);

/// One-hot class targets (classification) or EoF targets (regression).
/// Regression throws if a record carries no EoF.
nn::TrainingData make_training_data(std::span<const LabeledState> records, size_t n_qubits, nn::Task task);

std::vector<size_t> record_labels(std::span<const LabeledState> records);
std::vector<size_t> predict_classes(const nn::Model &model, const nn::Tensor &x);

/// Confusion matrix and metrics of a classifier on `records`; for a linear
/// head the MAE against the records' EoF values instead (metrics.mae set,
/// classes derived from EoF > 1e-9 on both sides).
struct Evaluation {
    ConfusionMatrix cm;
    MetricSet metrics;
};
Evaluation evaluate_model(const nn::Model &model, std::span<const LabeledState> records, size_t n_qubits);

struct SweepPoint {
    double x = 0;
    double metric = 0;
    size_t trials = 0;
};

struct SweepCurve {
    std::string kind;
    std::string space;
    uint64_t seed = 0;
    std::vector<SweepPoint> points;
    nlohmann::json metadata = nlohmann::json::object();

    /// Throws std::logic_error unless x values are strictly monotone.
    void validate() const;
    std::string to_csv() const;
    nlohmann::json to_json() const;
};

enum class SweepSpace { Entire, Bell };
std::string to_string(SweepSpace s);
SweepSpace sweep_space_from_string(const std::string &text);

/// (U_A (x) U_B)|Phi+> with Haar-random local unitaries; EoF 1, purity 1.
LabeledState rotated_bell_record(Rng &rng);

/// The separable records of `records` plus the same number of rotated Bell
/// states, generated from `seed`.
std::vector<LabeledState> bell_space_set(std::span<const LabeledState> records, uint64_t seed);

struct IncompleteSweepConfig {
    /// Retained non-identity Pauli bases per point, each in 0..15.
    std::vector<size_t> budgets = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
    size_t trials = 20;
    SweepSpace space = SweepSpace::Entire;
    uint64_t seed = 0;
    size_t threads = 1;
};

/// Mean accuracy of a two-qubit classifier over `trials` random retained
/// subsets per budget. Subset draws depend only on (seed, budget, trial).
/// Budgets 0 and 15 have a single possible subset and are evaluated once.
SweepCurve incomplete_sweep(const nn::Model &model, std::span<const LabeledState> test_set,
                            const IncompleteSweepConfig &config);

struct PurityPoint {
    double purity = 0;
    ConfusionMatrix cm;
    MetricSet metrics;
};

struct PuritySweep {
    SweepCurve curve;
    std::vector<PurityPoint> points;
};

/// Fresh balanced test sets from `base` with the purity bin centered on each
/// target in turn (seed derived per target), evaluated with a three-qubit
/// classifier. Curve metric is overall accuracy.
PuritySweep purity_sweep(const nn::Model &model, const GenSpec &base, std::span<const double> purities,
                         uint64_t seed, size_t threads = 1);

/// "<kind>-seed<seed>-model<checksum hex>", used for report file names.
std::string report_stem(const std::string &kind, uint64_t seed, uint64_t model_checksum);

}  // namespace xpooky

#endif
