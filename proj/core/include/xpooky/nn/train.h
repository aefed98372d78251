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

#ifndef XPOOKY_NN_TRAIN_H
#define XPOOKY_NN_TRAIN_H

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "xpooky/nn/loss.h"
#include "xpooky/nn/network.h"
#include "xpooky/nn/optim.h"

namespace xpooky::nn {

/// Inputs and row-major targets (batch x head width).
struct TrainingData {
    Tensor x;
    std::vector<double> targets;

    size_t size() const {
        return x.batch();
    }
};

struct TrainConfig {
    double lr = 0.01;
    double momentum = 0.9;
    size_t batch_size = 64;
    size_t epochs = 20;
    bool plateau = false;
    PlateauConfig plateau_config;
    /// Defaults to the head's natural loss.
    std::optional<LossKind> loss;
    uint64_t seed = 0;

    void validate() const;
};

void to_json(nlohmann::json &j, const TrainConfig &c);
void from_json(const nlohmann::json &j, TrainConfig &c);

struct EpochRecord {
    size_t epoch = 0;
    double train_loss = 0;
    double val_loss = 0;
    /// Accuracy for classification heads, MAE for the linear head.
    double train_metric = 0;
    double val_metric = 0;
    double lr = 0;
};

struct TrainHistory {
    std::vector<EpochRecord> epochs;
    size_t best_epoch = 0;
    double best_val_loss = 0;
    /// "accuracy" or "mae".
    std::string metric_name;

    std::string to_csv() const;
};

/// Accuracy (argmax, or 0.5 threshold for a single sigmoid unit) or MAE,
/// depending on the head.
double head_metric(HeadKind head, std::span<const double> outputs, std::span<const double> targets, size_t width);

using EpochCallback = std::function<void(const EpochRecord &)>;

/// Mini-batch SGD with a per-epoch shuffle seeded from config.seed. Leaves
/// `model` holding the parameters of the epoch with the lowest validation
/// loss. Parameters are not re-initialized here.
TrainHistory train(Model &model, const TrainingData &train_set, const TrainingData &val_set,
                   const TrainConfig &config, const EpochCallback &on_epoch = {});

}  // namespace xpooky::nn

#endif
