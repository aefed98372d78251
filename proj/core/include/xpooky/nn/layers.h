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

#ifndef XPOOKY_NN_LAYERS_H
#define XPOOKY_NN_LAYERS_H

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "xpooky/nn/model_spec.h"
#include "xpooky/nn/tensor.h"
#include "xpooky/rng.h"

namespace xpooky::nn {

enum class Mode { Train, Infer };

struct Trace;

/// Per-layer state saved by forward() for backward().
struct LayerCache {
    Mode mode = Mode::Infer;
    /// Batch statistics (batch norm): mean, variance, inverse std per channel.
    std::vector<double> stats;
    /// One trace per parallel stack (branch layers).
    std::vector<Trace> children;
};

/// Outputs of every layer in a stack plus their caches.
struct Trace {
    std::vector<Tensor> outputs;
    std::vector<LayerCache> caches;
};

/// A layer bound to a fixed input shape. Layers own no parameters: they
/// read and write spans of the model's flat parameter vector, so the same
/// layer object is safe to use from several threads at inference time.
class Layer {
   public:
    Layer(Shape in, Shape out) : in_(in), out_(out) {
    }
    virtual ~Layer() = default;

    const Shape &input_shape() const {
        return in_;
    }
    const Shape &output_shape() const {
        return out_;
    }

    virtual size_t param_count() const {
        return 0;
    }
    /// Marks parameters that are state rather than trainable weights.
    virtual void frozen_mask(std::span<uint8_t>) const {
    }
    virtual void init_params(std::span<double>, Rng &) const {
    }

    virtual void forward(
        const Tensor &in, Tensor &out, std::span<const double> params, Mode mode, LayerCache &cache) const = 0;

    /// Adds parameter gradients into `grads` and, if `grad_in` is non-null,
    /// writes dL/d(in) into it.
    virtual void backward(
        const Tensor &in, const Tensor &out, const Tensor &grad_out, Tensor *grad_in, std::span<const double> params,
        std::span<double> grads, const LayerCache &cache) const = 0;

    /// Folds train-mode batch statistics into running state.
    virtual void commit(std::span<double>, const LayerCache &) const {
    }

   private:
    Shape in_;
    Shape out_;
};

std::unique_ptr<Layer> make_layer(const LayerSpec &spec, const Shape &in);

/// An ordered stack of layers with their parameter offsets.
class Sequence {
   public:
    Sequence(const std::vector<LayerSpec> &specs, const Shape &in);

    const Shape &input_shape() const {
        return in_;
    }
    const Shape &output_shape() const {
        return out_;
    }
    size_t param_count() const {
        return param_count_;
    }
    size_t size() const {
        return layers_.size();
    }
    const Layer &layer(size_t i) const {
        return *layers_[i];
    }

    void frozen_mask(std::span<uint8_t> mask) const;
    void init_params(std::span<double> params, Rng &rng) const;

    /// An empty sequence is the identity.
    void forward(const Tensor &in, Tensor &out, std::span<const double> params, Mode mode, Trace &trace) const;
    void backward(
        const Tensor &in, const Tensor &grad_out, Tensor *grad_in, std::span<const double> params,
        std::span<double> grads, const Trace &trace) const;
    void commit(std::span<double> params, const Trace &trace) const;

   private:
    Shape in_;
    Shape out_;
    std::vector<std::unique_ptr<Layer>> layers_;
    std::vector<size_t> offsets_;
    size_t param_count_ = 0;
};

}  // namespace xpooky::nn

#endif
