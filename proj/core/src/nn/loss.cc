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

#include "xpooky/nn/loss.h"

#include <algorithm>
#include <cmath>

#include "xpooky/errors.h"

namespace xpooky::nn {

LossResult compute_loss(LossKind kind, std::span<const double> predictions, std::span<const double> targets,
                        size_t width) {
    if (predictions.size() != targets.size()) {
        throw DimensionMismatch("loss: " + std::to_string(predictions.size()) + " predictions vs " +
                                std::to_string(targets.size()) + " targets");
    }
    if (width == 0 || predictions.size() % width != 0 || predictions.empty()) {
        throw DimensionMismatch("loss: prediction count is not a positive multiple of the row width");
    }
    size_t rows = predictions.size() / width;
    double elements = static_cast<double>(predictions.size());
    LossResult r;
    r.gradient.resize(predictions.size());
    switch (kind) {
        case LossKind::CCE:
            for (size_t k = 0; k < predictions.size(); k++) {
                double p = std::max(predictions[k], kProbClamp);
                r.value -= targets[k] * std::log(p);
                r.gradient[k] = predictions[k] >= kProbClamp ? -targets[k] / (p * static_cast<double>(rows)) : 0.0;
            }
            r.value /= static_cast<double>(rows);
            break;
        case LossKind::BCE:
            for (size_t k = 0; k < predictions.size(); k++) {
                double p = std::clamp(predictions[k], kProbClamp, 1 - kProbClamp);
                double y = targets[k];
                r.value -= y * std::log(p) + (1 - y) * std::log(1 - p);
                bool clamped = p != predictions[k];
                r.gradient[k] = clamped ? 0.0 : (p - y) / (p * (1 - p) * elements);
            }
            r.value /= elements;
            break;
        case LossKind::MSE:
            for (size_t k = 0; k < predictions.size(); k++) {
                double d = predictions[k] - targets[k];
                r.value += d * d;
                r.gradient[k] = 2 * d / elements;
            }
            r.value /= elements;
            break;
    }
    return r;
}

LossKind default_loss(HeadKind head) {
    switch (head) {
        case HeadKind::Softmax:
            return LossKind::CCE;
        case HeadKind::Sigmoid:
            return LossKind::BCE;
        case HeadKind::Linear:
            return LossKind::MSE;
    }
    throw std::invalid_argument("unknown head");
}

std::string to_string(LossKind kind) {
    switch (kind) {
        case LossKind::CCE:
            return "cce";
        case LossKind::BCE:
            return "bce";
        case LossKind::MSE:
            return "mse";
    }
    return "?";
}

LossKind loss_kind_from_string(const std::string &text) {
    if (text == "cce") {
        return LossKind::CCE;
    }
    if (text == "bce") {
        return LossKind::BCE;
    }
    if (text == "mse") {
        return LossKind::MSE;
    }
    throw std::invalid_argument("unknown loss '" + text + "' (expected cce, bce or mse)");
}

}  // namespace xpooky::nn
