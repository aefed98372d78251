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

#ifndef XPOOKY_NN_NETWORK_H
#define XPOOKY_NN_NETWORK_H

#include <cstdint>
#include <span>
#include <vector>

#include "xpooky/nn/layers.h"
#include "xpooky/nn/loss.h"
#include "xpooky/nn/model_spec.h"

namespace xpooky::nn {

/// Applies the head nonlinearity row by row.
std::vector<double> apply_head(HeadKind kind, std::span<const double> logits, size_t width);

/// Chains dL/d(output) back through the head.
std::vector<double> head_backward(HeadKind kind, std::span<const double> outputs, std::span<const double> grad_out,
                                  size_t width);

/// A ModelSpec with its flat parameter vector.
class Model {
   public:
    explicit Model(ModelSpec spec);

    const ModelSpec &spec() const {
        return spec_;
    }
    const Sequence &body() const {
        return body_;
    }
    size_t param_count() const {
        return params_.size();
    }
    std::span<double> params() {
        return params_;
    }
    std::span<const double> params() const {
        return params_;
    }
    /// 1 for state that the optimizer must not touch (batch-norm running stats).
    std::span<const uint8_t> frozen_mask() const {
        return frozen_;
    }
    size_t output_width() const {
        return spec_.head.units;
    }

    /// Fan-in uniform weights, zero biases, unit batch-norm scale.
    void init(uint64_t seed);

    /// Pre-head outputs, batch x units.
    Tensor logits(const Tensor &x, Mode mode, Trace &trace) const;

    /// Forward in train mode, loss against `targets` (batch x units), and
    /// gradients accumulated into `grads` (param_count long). Softmax/CCE and
    /// sigmoid/BCE use the fused logit gradient. Head outputs are copied to
    /// `outputs` when it is non-null.
    double loss_and_gradient(const Tensor &x, std::span<const double> targets, LossKind loss,
                             std::span<double> grads, Trace &trace, std::vector<double> *outputs = nullptr) const;

    /// Loss in inference mode, no gradient.
    double evaluate_loss(const Tensor &x, std::span<const double> targets, LossKind loss) const;

    /// Folds batch statistics from a train-mode trace into running state.
    void commit(const Trace &trace);

    /// Head outputs in inference mode, batch x units. Linear outputs are
    /// clamped to [0, 1].
    std::vector<double> predict(const Tensor &x) const;

   private:
    ModelSpec spec_;
    Sequence body_;
    std::vector<double> params_;
    std::vector<uint8_t> frozen_;
};

/// Index of the largest entry in each row.
std::vector<size_t> argmax_rows(std::span<const double> values, size_t width);

}  // namespace xpooky::nn

#endif
