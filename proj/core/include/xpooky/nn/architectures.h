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

#ifndef XPOOKY_NN_ARCHITECTURES_H
#define XPOOKY_NN_ARCHITECTURES_H

#include <string>
#include <vector>

#include "xpooky/nn/model_spec.h"

namespace xpooky::nn {

enum class Variant { NN, SimpleConv, Brch, BNSep, BrchBNSep };
enum class Task { Classify, Regress };

std::string to_string(Variant v);
/// Accepts nn, simple, brch, bnsep, brch-bnsep.
Variant variant_from_string(const std::string &text);
std::string to_string(Task t);
Task task_from_string(const std::string &text);

struct ArchOptions {
    /// Filters of the ten artery convolutions.
    std::vector<size_t> filters = {16, 16, 32, 32, 32, 32, 64, 64, 64, 64};
    /// Kernel edge per artery convolution; alternates 2 and 4 by default.
    std::vector<size_t> kernels = {2, 4, 2, 4, 2, 4, 2, 4, 2, 4};
    /// Filters of each side branch.
    size_t branch_filters = 16;
    size_t dense_units = 64;
    Padding padding = Padding::Same;
    double slope = kDefaultLeakySlope;

    /// Every filter count scaled by `factor`, floored at 1.
    ArchOptions scaled(double factor) const;
};

/// Input 2^n x 2^n x 2. Classification heads are softmax over
/// class_count(n_qubits); regression is a single linear unit.
ModelSpec build_model(Variant variant, size_t n_qubits, Task task, const ArchOptions &options = {});

}  // namespace xpooky::nn

#endif
