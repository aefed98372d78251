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

#include "xpooky/nn/tensor.h"

#include <algorithm>
#include <stdexcept>

#include "xpooky/errors.h"

namespace xpooky::nn {

std::string Shape::str() const {
    return std::to_string(h) + "x" + std::to_string(w) + "x" + std::to_string(c);
}

Tensor::Tensor(size_t n, Shape shape) : n_(n), shape_(shape), data_(n * shape.size()) {
}

Tensor::Tensor(size_t n, Shape shape, std::vector<double> data) : n_(n), shape_(shape), data_(std::move(data)) {
    if (data_.size() != n * shape.size()) {
        throw DimensionMismatch("Tensor: data length does not match " + std::to_string(n) + " x " + shape.str());
    }
}

void Tensor::resize(size_t n, Shape shape) {
    n_ = n;
    shape_ = shape;
    data_.assign(n * shape.size(), 0.0);
}

void Tensor::fill(double value) {
    std::fill(data_.begin(), data_.end(), value);
}

void Tensor::reshape(Shape shape) {
    if (shape.size() != shape_.size()) {
        throw DimensionMismatch("Tensor::reshape: " + shape_.str() + " -> " + shape.str() + " changes size");
    }
    shape_ = shape;
}

Tensor Tensor::gather(std::span<const size_t> indices) const {
    Tensor out(indices.size(), shape_);
    size_t stride = shape_.size();
    for (size_t k = 0; k < indices.size(); k++) {
        if (indices[k] >= n_) {
            throw std::out_of_range("Tensor::gather: index out of range");
        }
        std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(indices[k] * stride), stride,
                    out.data_.begin() + static_cast<std::ptrdiff_t>(k * stride));
    }
    return out;
}

}  // namespace xpooky::nn
