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

#ifndef XPOOKY_NN_MODEL_SPEC_H
#define XPOOKY_NN_MODEL_SPEC_H

#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "xpooky/nn/tensor.h"

namespace xpooky::nn {

inline constexpr double kDefaultLeakySlope = 0.01;

enum class Activation { None, LeakyRelu };
enum class Padding { Valid, Same };

/// Cross-correlation summed over all input channels.
struct ConvSpec {
    size_t filters = 1;
    size_t kh = 1;
    size_t kw = 1;
    size_t stride = 1;
    Padding padding = Padding::Valid;
    Activation activation = Activation::None;
    double slope = kDefaultLeakySlope;
};

/// Depthwise kh x kw per channel, then a 1x1 pointwise mix to `filters`.
struct SepConvSpec {
    size_t filters = 1;
    size_t kh = 1;
    size_t kw = 1;
    size_t stride = 1;
    Padding padding = Padding::Valid;
    Activation activation = Activation::None;
    double slope = kDefaultLeakySlope;
};

struct BatchNormSpec {
    double epsilon = 1e-5;
    /// Running statistics: running = momentum * running + (1 - momentum) * batch.
    double momentum = 0.9;
};

struct LeakyReluSpec {
    double slope = kDefaultLeakySlope;
};

struct FlattenSpec {};

struct DenseSpec {
    size_t units = 1;
    Activation activation = Activation::None;
    double slope = kDefaultLeakySlope;
};

struct LayerSpec;

/// Parallel stacks fed the same input, merged by channel concatenation.
/// An empty stack is an identity shortcut.
struct BranchSpec {
    std::vector<std::vector<LayerSpec>> stacks;
};

struct LayerSpec {
    std::variant<ConvSpec, SepConvSpec, BatchNormSpec, LeakyReluSpec, FlattenSpec, DenseSpec, BranchSpec> kind;
};

enum class HeadKind { Softmax, Sigmoid, Linear };

struct HeadSpec {
    HeadKind kind = HeadKind::Softmax;
    size_t units = 2;
};

struct ModelSpec {
    std::string name;
    Shape input;
    std::vector<LayerSpec> layers;
    HeadSpec head;
};

/// Output shape of a single layer; throws DimensionMismatch when the layer
/// cannot accept `in`.
Shape layer_output_shape(const LayerSpec &layer, const Shape &in);

/// Walks the whole spec and checks that shapes chain and that the last
/// layer yields 1 x 1 x head.units. Returns the final layer shape.
Shape check_shapes(const ModelSpec &spec);

/// Conv and SepConv layers, counted through branches.
size_t count_conv_layers(const ModelSpec &spec);

std::string to_string(HeadKind kind);

void to_json(nlohmann::json &j, const LayerSpec &layer);
void from_json(const nlohmann::json &j, LayerSpec &layer);
void to_json(nlohmann::json &j, const ModelSpec &spec);
void from_json(const nlohmann::json &j, ModelSpec &spec);

}  // namespace xpooky::nn

#endif
