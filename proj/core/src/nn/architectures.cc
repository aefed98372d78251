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

#include "xpooky/nn/architectures.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xpooky/datagen.h"

namespace xpooky::nn {

namespace {

constexpr size_t kArteryConvs = 10;
// Artery layers before the branch point and where the branches rejoin.
constexpr size_t kBranchStart = 2;
constexpr size_t kBranchEnd = 8;

LayerSpec conv(size_t filters, size_t k, const ArchOptions &o) {
    return {ConvSpec{filters, k, k, 1, o.padding, Activation::LeakyRelu, o.slope}};
}

void append_conv(std::vector<LayerSpec> &out, size_t filters, size_t k, bool separable, const ArchOptions &o) {
    if (!separable) {
        out.push_back(conv(filters, k, o));
        return;
    }
    out.push_back({SepConvSpec{filters, k, k, 1, o.padding, Activation::None, o.slope}});
    out.push_back({BatchNormSpec{}});
    out.push_back({LeakyReluSpec{o.slope}});
}

void append_head(std::vector<LayerSpec> &out, size_t units, const ArchOptions &o) {
    out.push_back({FlattenSpec{}});
    out.push_back({DenseSpec{o.dense_units, Activation::LeakyRelu, o.slope}});
    out.push_back({DenseSpec{units, Activation::None, o.slope}});
}

// The first convolution stays standard in separable variants so the two
// input channels are mixed before any depthwise step.
void append_artery(std::vector<LayerSpec> &out, size_t begin, size_t end, bool separable, const ArchOptions &o) {
    for (size_t i = begin; i < end; i++) {
        append_conv(out, o.filters[i], o.kernels[i], separable && i > 0, o);
    }
}

}  // namespace

std::string to_string(Variant v) {
    switch (v) {
        case Variant::NN:
            return "nn";
        case Variant::SimpleConv:
            return "simple";
        case Variant::Brch:
            return "brch";
        case Variant::BNSep:
            return "bnsep";
        case Variant::BrchBNSep:
            return "brch-bnsep";
    }
    return "?";
}

Variant variant_from_string(const std::string &text) {
    for (auto v : {Variant::NN, Variant::SimpleConv, Variant::Brch, Variant::BNSep, Variant::BrchBNSep}) {
        if (to_string(v) == text) {
            return v;
        }
    }
    throw std::invalid_argument("unknown variant '" + text + "' (expected nn, simple, brch, bnsep or brch-bnsep)");
}

std::string to_string(Task t) {
    return t == Task::Classify ? "classify" : "regress";
}

Task task_from_string(const std::string &text) {
    if (text == "classify") {
        return Task::Classify;
    }
    if (text == "regress") {
        return Task::Regress;
    }
    throw std::invalid_argument("unknown task '" + text + "' (expected classify or regress)");
}

ArchOptions ArchOptions::scaled(double factor) const {
    ArchOptions o = *this;
    auto scale = [&](size_t v) {
        return std::max<size_t>(1, static_cast<size_t>(std::lround(static_cast<double>(v) * factor)));
    };
    for (auto &f : o.filters) {
        f = scale(f);
    }
    o.branch_filters = scale(branch_filters);
    o.dense_units = scale(dense_units);
    return o;
}

ModelSpec build_model(Variant variant, size_t n_qubits, Task task, const ArchOptions &o) {
    if (n_qubits != 2 && n_qubits != 3) {
        throw std::invalid_argument("build_model: n_qubits must be 2 or 3");
    }
    if (o.filters.size() != kArteryConvs || o.kernels.size() != kArteryConvs) {
        throw std::invalid_argument("build_model: filters and kernels need one entry per artery convolution (10)");
    }
    if (task == Task::Regress && n_qubits != 2) {
        throw std::invalid_argument("build_model: EoF regression is defined for two qubits only");
    }
    size_t dim = size_t{1} << n_qubits;
    ModelSpec spec;
    spec.name = to_string(variant) + "-" + std::to_string(n_qubits) + "q-" + to_string(task);
    spec.input = Shape{dim, dim, 2};
    spec.head = task == Task::Classify ? HeadSpec{HeadKind::Softmax, class_count(n_qubits)}
                                       : HeadSpec{HeadKind::Linear, 1};

    bool separable = variant == Variant::BNSep || variant == Variant::BrchBNSep;
    switch (variant) {
        case Variant::NN:
            break;
        case Variant::SimpleConv:
        case Variant::BNSep:
            append_artery(spec.layers, 0, kArteryConvs, separable, o);
            break;
        case Variant::Brch:
        case Variant::BrchBNSep: {
            append_artery(spec.layers, 0, kBranchStart, separable, o);
            BranchSpec branch;
            std::vector<LayerSpec> artery;
            append_artery(artery, kBranchStart, kBranchEnd, separable, o);
            branch.stacks.push_back(std::move(artery));
            std::vector<LayerSpec> b1, b2, b3;
            append_conv(b1, o.branch_filters, 1, false, o);
            append_conv(b2, o.branch_filters, 2, separable, o);
            append_conv(b3, o.branch_filters, 4, separable, o);
            append_conv(b3, o.branch_filters, 2, separable, o);
            branch.stacks.push_back(std::move(b1));
            branch.stacks.push_back(std::move(b2));
            branch.stacks.push_back(std::move(b3));
            spec.layers.push_back({std::move(branch)});
            append_artery(spec.layers, kBranchEnd, kArteryConvs, separable, o);
            break;
        }
    }
    append_head(spec.layers, spec.head.units, o);
    check_shapes(spec);
    return spec;
}

}  // namespace xpooky::nn
