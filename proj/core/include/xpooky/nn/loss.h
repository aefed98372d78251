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

#ifndef XPOOKY_NN_LOSS_H
#define XPOOKY_NN_LOSS_H

#include <span>
#include <string>
#include <vector>

#include "xpooky/nn/model_spec.h"

namespace xpooky::nn {

enum class LossKind { CCE, BCE, MSE };

/// Predictions are clamped to [kProbClamp, 1 - kProbClamp] inside log terms.
inline constexpr double kProbClamp = 1e-12;

struct LossResult {
    double value = 0;
    /// dL/d(prediction), same layout as the predictions.
    std::vector<double> gradient;
};

/// Predictions and targets are `batch` rows of `width` values each.
/// CCE sums over classes and averages over rows; BCE and MSE average over
/// every element. Natural logarithm.
LossResult compute_loss(LossKind kind, std::span<const double> predictions, std::span<const double> targets,
                        size_t width);

/// The loss that pairs with a head: softmax/CCE, sigmoid/BCE, linear/MSE.
LossKind default_loss(HeadKind head);

std::string to_string(LossKind kind);
LossKind loss_kind_from_string(const std::string &text);

}  // namespace xpooky::nn

#endif
