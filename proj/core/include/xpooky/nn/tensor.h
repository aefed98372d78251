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

#ifndef XPOOKY_NN_TENSOR_H
#define XPOOKY_NN_TENSOR_H

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace xpooky::nn {

/// Height x width x channels of a single sample.
struct Shape {
    size_t h = 0;
    size_t w = 0;
    size_t c = 0;

    size_t size() const {
        return h * w * c;
    }
    std::string str() const;
    bool operator==(const Shape &) const = default;
};

/// A batch of `n` samples laid out NHWC (channel fastest).
class Tensor {
   public:
    Tensor() = default;
    Tensor(size_t n, Shape shape);
    Tensor(size_t n, Shape shape, std::vector<double> data);

    size_t batch() const {
        return n_;
    }
    const Shape &shape() const {
        return shape_;
    }
    size_t size() const {
        return data_.size();
    }
    std::span<double> data() {
        return data_;
    }
    std::span<const double> data() const {
        return data_;
    }
    std::span<double> sample(size_t i) {
        return std::span<double>(data_).subspan(i * shape_.size(), shape_.size());
    }
    std::span<const double> sample(size_t i) const {
        return std::span<const double>(data_).subspan(i * shape_.size(), shape_.size());
    }
    double &at(size_t n, size_t i, size_t j, size_t c) {
        return data_[((n * shape_.h + i) * shape_.w + j) * shape_.c + c];
    }
    double at(size_t n, size_t i, size_t j, size_t c) const {
        return data_[((n * shape_.h + i) * shape_.w + j) * shape_.c + c];
    }

    /// Resizes and zero-fills.
    void resize(size_t n, Shape shape);
    void fill(double value);
    /// Same data, new per-sample shape of equal size.
    void reshape(Shape shape);

    /// Copies samples `indices` of this tensor into a new batch.
    Tensor gather(std::span<const size_t> indices) const;

   private:
    size_t n_ = 0;
    Shape shape_;
    std::vector<double> data_;
};

}  // namespace xpooky::nn

#endif
