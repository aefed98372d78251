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

#include "xpooky/nn/network.h"

#include <algorithm>
#include <cmath>

#include "xpooky/errors.h"

namespace xpooky::nn {

namespace {

constexpr size_t kPredictChunk = 512;

bool fused(HeadKind head, LossKind loss) {
    return (head == HeadKind::Softmax && loss == LossKind::CCE) ||
           (head == HeadKind::Sigmoid && loss == LossKind::BCE);
}

}  // namespace

std::vector<double> apply_head(HeadKind kind, std::span<const double> logits, size_t width) {
    std::vector<double> out(logits.begin(), logits.end());
    switch (kind) {
        case HeadKind::Softmax:
            for (size_t r = 0; r < out.size() / width; r++) {
                auto row = std::span<double>(out).subspan(r * width, width);
                double top = *std::max_element(row.begin(), row.end());
                double total = 0;
                for (auto &v : row) {
                    v = std::exp(v - top);
                    total += v;
                }
                for (auto &v : row) {
                    v /= total;
                }
            }
            break;
        case HeadKind::Sigmoid:
            for (auto &v : out) {
                v = v >= 0 ? 1 / (1 + std::exp(-v)) : std::exp(v) / (1 + std::exp(v));
            }
            break;
        case HeadKind::Linear:
            break;
    }
    return out;
}

std::vector<double> head_backward(HeadKind kind, std::span<const double> outputs, std::span<const double> grad_out,
                                  size_t width) {
    std::vector<double> g(grad_out.begin(), grad_out.end());
    switch (kind) {
        case HeadKind::Softmax:
            for (size_t r = 0; r < g.size() / width; r++) {
                double dot = 0;
                for (size_t k = 0; k < width; k++) {
                    dot += outputs[r * width + k] * grad_out[r * width + k];
                }
                for (size_t k = 0; k < width; k++) {
                    g[r * width + k] = outputs[r * width + k] * (grad_out[r * width + k] - dot);
                }
            }
            break;
        case HeadKind::Sigmoid:
            for (size_t k = 0; k < g.size(); k++) {
                g[k] *= outputs[k] * (1 - outputs[k]);
            }
            break;
        case HeadKind::Linear:
            break;
    }
    return g;
}

Model::Model(ModelSpec spec) : spec_(std::move(spec)), body_(spec_.layers, spec_.input) {
    check_shapes(spec_);
    params_.assign(body_.param_count(), 0.0);
    frozen_.assign(body_.param_count(), 0);
    body_.frozen_mask(frozen_);
}

void Model::init(uint64_t seed) {
    Rng rng(seed);
    body_.init_params(params_, rng);
}

Tensor Model::logits(const Tensor &x, Mode mode, Trace &trace) const {
    if (x.shape() != spec_.input) {
        throw DimensionMismatch("model '" + spec_.name + "' expects input " + spec_.input.str() + ", got " +
                                x.shape().str());
    }
    Tensor out;
    body_.forward(x, out, params_, mode, trace);
    return out;
}

double Model::loss_and_gradient(const Tensor &x, std::span<const double> targets, LossKind loss,
                                std::span<double> grads, Trace &trace, std::vector<double> *outputs) const {
    if (grads.size() != params_.size()) {
        throw DimensionMismatch("gradient buffer does not match parameter count");
    }
    Tensor z = logits(x, Mode::Train, trace);
    size_t width = output_width();
    auto y = apply_head(spec_.head.kind, z.data(), width);
    LossResult lr = compute_loss(loss, y, targets, width);
    std::vector<double> dz;
    if (fused(spec_.head.kind, loss)) {
        double scale = loss == LossKind::CCE ? static_cast<double>(x.batch()) : static_cast<double>(y.size());
        dz.resize(y.size());
        for (size_t k = 0; k < y.size(); k++) {
            dz[k] = (y[k] - targets[k]) / scale;
        }
    } else {
        dz = head_backward(spec_.head.kind, y, lr.gradient, width);
    }
    Tensor grad_z(x.batch(), z.shape(), std::move(dz));
    body_.backward(x, grad_z, nullptr, params_, grads, trace);
    if (outputs) {
        *outputs = std::move(y);
    }
    return lr.value;
}

double Model::evaluate_loss(const Tensor &x, std::span<const double> targets, LossKind loss) const {
    Trace trace;
    Tensor z = logits(x, Mode::Infer, trace);
    auto y = apply_head(spec_.head.kind, z.data(), output_width());
    return compute_loss(loss, y, targets, output_width()).value;
}

void Model::commit(const Trace &trace) {
    body_.commit(params_, trace);
}

std::vector<double> Model::predict(const Tensor &x) const {
    if (x.shape() != spec_.input) {
        throw DimensionMismatch("model '" + spec_.name + "' expects input " + spec_.input.str() + ", got " +
                                x.shape().str());
    }
    std::vector<double> out;
    out.reserve(x.batch() * output_width());
    std::vector<size_t> idx;
    for (size_t start = 0; start < x.batch(); start += kPredictChunk) {
        size_t end = std::min(x.batch(), start + kPredictChunk);
        idx.resize(end - start);
        for (size_t k = start; k < end; k++) {
            idx[k - start] = k;
        }
        Tensor chunk = x.gather(idx);
        Trace trace;
        Tensor z = logits(chunk, Mode::Infer, trace);
        auto y = apply_head(spec_.head.kind, z.data(), output_width());
        out.insert(out.end(), y.begin(), y.end());
    }
    if (spec_.head.kind == HeadKind::Linear) {
        for (auto &v : out) {
            v = std::clamp(v, 0.0, 1.0);
        }
    }
    return out;
}

std::vector<size_t> argmax_rows(std::span<const double> values, size_t width) {
    std::vector<size_t> out(values.size() / width);
    for (size_t r = 0; r < out.size(); r++) {
        auto row = values.subspan(r * width, width);
        out[r] = static_cast<size_t>(std::max_element(row.begin(), row.end()) - row.begin());
    }
    return out;
}

}  // namespace xpooky::nn
