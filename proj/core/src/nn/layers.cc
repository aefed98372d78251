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

#include "xpooky/nn/layers.h"

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>

#include "xpooky/errors.h"

namespace xpooky::nn {

namespace {

using MatR = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapR = Eigen::Map<MatR>;
using CMapR = Eigen::Map<const MatR>;
using CVec = Eigen::Map<const Eigen::VectorXd>;
using Vec = Eigen::Map<Eigen::VectorXd>;

// Plain loop so the summation order never depends on buffer alignment.
void add_column_sums(const double *m, size_t rows, size_t cols, double *out) {
    for (size_t r = 0; r < rows; r++) {
        for (size_t c = 0; c < cols; c++) {
            out[c] += m[r * cols + c];
        }
    }
}

void require_shape(const Tensor &t, const Shape &expected, const char *layer) {
    if (t.shape() != expected) {
        throw DimensionMismatch(
            std::string(layer) + ": expected input " + expected.str() + ", got " + t.shape().str());
    }
}

void he_uniform(std::span<double> weights, size_t fan_in, Rng &rng) {
    double limit = std::sqrt(6.0 / static_cast<double>(fan_in));
    std::uniform_real_distribution<double> u(-limit, limit);
    for (auto &w : weights) {
        w = u(rng);
    }
}

// Output values determine the leaky-ReLU derivative: for slope > 0 the
// output is negative exactly when the pre-activation is.
void apply_activation(std::span<double> values, Activation act, double slope) {
    if (act == Activation::LeakyRelu) {
        for (auto &v : values) {
            if (v < 0) {
                v *= slope;
            }
        }
    }
}

void activation_backward(std::span<const double> out, std::span<double> grad, Activation act, double slope) {
    if (act == Activation::LeakyRelu) {
        for (size_t k = 0; k < grad.size(); k++) {
            if (out[k] < 0) {
                grad[k] *= slope;
            }
        }
    }
}

struct Window {
    size_t kh, kw, stride, pad_top, pad_left;
};

Window make_window(size_t kh, size_t kw, size_t stride, Padding padding, const Shape &in, const Shape &out) {
    Window w{kh, kw, stride, 0, 0};
    if (padding == Padding::Same) {
        size_t total_h = (out.h - 1) * stride + kh > in.h ? (out.h - 1) * stride + kh - in.h : 0;
        size_t total_w = (out.w - 1) * stride + kw > in.w ? (out.w - 1) * stride + kw - in.w : 0;
        w.pad_top = total_h / 2;
        w.pad_left = total_w / 2;
    }
    return w;
}

// Rows: one per (n, oi, oj). Columns: (p, q, ci) with ci fastest.
void im2col(const Tensor &in, const Shape &out_shape, const Window &win, std::vector<double> &cols) {
    const Shape &s = in.shape();
    size_t k = win.kh * win.kw * s.c;
    size_t rows = in.batch() * out_shape.h * out_shape.w;
    cols.assign(rows * k, 0.0);
    auto src = in.data();
    for (size_t n = 0; n < in.batch(); n++) {
        for (size_t oi = 0; oi < out_shape.h; oi++) {
            for (size_t oj = 0; oj < out_shape.w; oj++) {
                double *dst = cols.data() + ((n * out_shape.h + oi) * out_shape.w + oj) * k;
                for (size_t p = 0; p < win.kh; p++) {
                    long ii = static_cast<long>(oi * win.stride + p) - static_cast<long>(win.pad_top);
                    if (ii < 0 || ii >= static_cast<long>(s.h)) {
                        continue;
                    }
                    for (size_t q = 0; q < win.kw; q++) {
                        long jj = static_cast<long>(oj * win.stride + q) - static_cast<long>(win.pad_left);
                        if (jj < 0 || jj >= static_cast<long>(s.w)) {
                            continue;
                        }
                        const double *from = src.data() + ((n * s.h + static_cast<size_t>(ii)) * s.w +
                                                           static_cast<size_t>(jj)) * s.c;
                        std::copy_n(from, s.c, dst + (p * win.kw + q) * s.c);
                    }
                }
            }
        }
    }
}

void col2im(std::span<const double> cols, const Shape &out_shape, const Window &win, Tensor &grad_in) {
    const Shape s = grad_in.shape();
    size_t k = win.kh * win.kw * s.c;
    auto dst = grad_in.data();
    for (size_t n = 0; n < grad_in.batch(); n++) {
        for (size_t oi = 0; oi < out_shape.h; oi++) {
            for (size_t oj = 0; oj < out_shape.w; oj++) {
                const double *src = cols.data() + ((n * out_shape.h + oi) * out_shape.w + oj) * k;
                for (size_t p = 0; p < win.kh; p++) {
                    long ii = static_cast<long>(oi * win.stride + p) - static_cast<long>(win.pad_top);
                    if (ii < 0 || ii >= static_cast<long>(s.h)) {
                        continue;
                    }
                    for (size_t q = 0; q < win.kw; q++) {
                        long jj = static_cast<long>(oj * win.stride + q) - static_cast<long>(win.pad_left);
                        if (jj < 0 || jj >= static_cast<long>(s.w)) {
                            continue;
                        }
                        double *to = dst.data() + ((n * s.h + static_cast<size_t>(ii)) * s.w +
                                                   static_cast<size_t>(jj)) * s.c;
                        const double *from = src + (p * win.kw + q) * s.c;
                        for (size_t c = 0; c < s.c; c++) {
                            to[c] += from[c];
                        }
                    }
                }
            }
        }
    }
}

class ConvLayer final : public Layer {
   public:
    ConvLayer(const ConvSpec &spec, const Shape &in)
        : Layer(in, layer_output_shape(LayerSpec{spec}, in)),
          spec_(spec),
          window_(make_window(spec.kh, spec.kw, spec.stride, spec.padding, in, output_shape())),
          k_(spec.kh * spec.kw * in.c) {
    }

    size_t param_count() const override {
        return k_ * spec_.filters + spec_.filters;
    }

    void init_params(std::span<double> params, Rng &rng) const override {
        he_uniform(params.first(k_ * spec_.filters), k_, rng);
        std::fill(params.begin() + static_cast<std::ptrdiff_t>(k_ * spec_.filters), params.end(), 0.0);
    }

    void forward(const Tensor &in, Tensor &out, std::span<const double> params, Mode mode,
                 LayerCache &cache) const override {
        require_shape(in, input_shape(), "Conv");
        cache.mode = mode;
        std::vector<double> cols;
        im2col(in, output_shape(), window_, cols);
        size_t rows = in.batch() * output_shape().h * output_shape().w;
        out.resize(in.batch(), output_shape());
        CMapR c(cols.data(), static_cast<long>(rows), static_cast<long>(k_));
        CMapR w(params.data(), static_cast<long>(k_), static_cast<long>(spec_.filters));
        CVec b(params.data() + k_ * spec_.filters, static_cast<long>(spec_.filters));
        MapR y(out.data().data(), static_cast<long>(rows), static_cast<long>(spec_.filters));
        y.noalias() = c * w;
        y.rowwise() += b.transpose();
        apply_activation(out.data(), spec_.activation, spec_.slope);
    }

    void backward(const Tensor &in, const Tensor &out, const Tensor &grad_out, Tensor *grad_in,
                  std::span<const double> params, std::span<double> grads, const LayerCache &) const override {
        size_t rows = in.batch() * output_shape().h * output_shape().w;
        std::vector<double> dz(grad_out.data().begin(), grad_out.data().end());
        activation_backward(out.data(), dz, spec_.activation, spec_.slope);
        std::vector<double> cols;
        im2col(in, output_shape(), window_, cols);

        CMapR c(cols.data(), static_cast<long>(rows), static_cast<long>(k_));
        CMapR dzm(dz.data(), static_cast<long>(rows), static_cast<long>(spec_.filters));
        MapR dw(grads.data(), static_cast<long>(k_), static_cast<long>(spec_.filters));
        Vec db(grads.data() + k_ * spec_.filters, static_cast<long>(spec_.filters));
        dw.noalias() += c.transpose() * dzm;
        add_column_sums(dz.data(), static_cast<size_t>(dzm.rows()), static_cast<size_t>(dzm.cols()), db.data());

        if (grad_in) {
            CMapR w(params.data(), static_cast<long>(k_), static_cast<long>(spec_.filters));
            std::vector<double> dcols(rows * k_);
            MapR dc(dcols.data(), static_cast<long>(rows), static_cast<long>(k_));
            dc.noalias() = dzm * w.transpose();
            grad_in->resize(in.batch(), input_shape());
            col2im(dcols, output_shape(), window_, *grad_in);
        }
    }

   private:
    ConvSpec spec_;
    Window window_;
    size_t k_;
};

class SepConvLayer final : public Layer {
   public:
    SepConvLayer(const SepConvSpec &spec, const Shape &in)
        : Layer(in, layer_output_shape(LayerSpec{spec}, in)),
          spec_(spec),
          window_(make_window(spec.kh, spec.kw, spec.stride, spec.padding, in, output_shape())),
          depth_(spec.kh * spec.kw * in.c) {
    }

    size_t param_count() const override {
        return depth_ + input_shape().c * spec_.filters + spec_.filters;
    }

    void init_params(std::span<double> params, Rng &rng) const override {
        he_uniform(params.first(depth_), spec_.kh * spec_.kw, rng);
        he_uniform(params.subspan(depth_, input_shape().c * spec_.filters), input_shape().c, rng);
        auto bias = params.subspan(depth_ + input_shape().c * spec_.filters);
        std::fill(bias.begin(), bias.end(), 0.0);
    }

    void forward(const Tensor &in, Tensor &out, std::span<const double> params, Mode mode,
                 LayerCache &cache) const override {
        require_shape(in, input_shape(), "SepConv");
        cache.mode = mode;
        std::vector<double> depthwise;
        depthwise_forward(in, params.first(depth_), depthwise);
        size_t rows = in.batch() * output_shape().h * output_shape().w;
        size_t cin = input_shape().c;
        out.resize(in.batch(), output_shape());
        CMapR d(depthwise.data(), static_cast<long>(rows), static_cast<long>(cin));
        CMapR w(params.data() + depth_, static_cast<long>(cin), static_cast<long>(spec_.filters));
        CVec b(params.data() + depth_ + cin * spec_.filters, static_cast<long>(spec_.filters));
        MapR y(out.data().data(), static_cast<long>(rows), static_cast<long>(spec_.filters));
        y.noalias() = d * w;
        y.rowwise() += b.transpose();
        apply_activation(out.data(), spec_.activation, spec_.slope);
    }

    void backward(const Tensor &in, const Tensor &out, const Tensor &grad_out, Tensor *grad_in,
                  std::span<const double> params, std::span<double> grads, const LayerCache &) const override {
        size_t rows = in.batch() * output_shape().h * output_shape().w;
        size_t cin = input_shape().c;
        std::vector<double> dz(grad_out.data().begin(), grad_out.data().end());
        activation_backward(out.data(), dz, spec_.activation, spec_.slope);
        std::vector<double> depthwise;
        depthwise_forward(in, params.first(depth_), depthwise);

        CMapR d(depthwise.data(), static_cast<long>(rows), static_cast<long>(cin));
        CMapR dzm(dz.data(), static_cast<long>(rows), static_cast<long>(spec_.filters));
        CMapR w(params.data() + depth_, static_cast<long>(cin), static_cast<long>(spec_.filters));
        MapR dw(grads.data() + depth_, static_cast<long>(cin), static_cast<long>(spec_.filters));
        Vec db(grads.data() + depth_ + cin * spec_.filters, static_cast<long>(spec_.filters));
        dw.noalias() += d.transpose() * dzm;
        add_column_sums(dz.data(), static_cast<size_t>(dzm.rows()), static_cast<size_t>(dzm.cols()), db.data());

        std::vector<double> dd(rows * cin);
        MapR ddm(dd.data(), static_cast<long>(rows), static_cast<long>(cin));
        ddm.noalias() = dzm * w.transpose();

        // Depthwise kernel and input gradients.
        const Shape &s = input_shape();
        const Shape &o = output_shape();
        auto kernel = params.first(depth_);
        auto dkernel = grads.first(depth_);
        if (grad_in) {
            grad_in->resize(in.batch(), s);
        }
        for (size_t n = 0; n < in.batch(); n++) {
            for (size_t oi = 0; oi < o.h; oi++) {
                for (size_t oj = 0; oj < o.w; oj++) {
                    const double *g = dd.data() + ((n * o.h + oi) * o.w + oj) * cin;
                    for (size_t p = 0; p < window_.kh; p++) {
                        long ii = static_cast<long>(oi * window_.stride + p) - static_cast<long>(window_.pad_top);
                        if (ii < 0 || ii >= static_cast<long>(s.h)) {
                            continue;
                        }
                        for (size_t q = 0; q < window_.kw; q++) {
                            long jj = static_cast<long>(oj * window_.stride + q) - static_cast<long>(window_.pad_left);
                            if (jj < 0 || jj >= static_cast<long>(s.w)) {
                                continue;
                            }
                            size_t base = ((n * s.h + static_cast<size_t>(ii)) * s.w + static_cast<size_t>(jj)) * cin;
                            size_t kbase = (p * window_.kw + q) * cin;
                            for (size_t c = 0; c < cin; c++) {
                                dkernel[kbase + c] += g[c] * in.data()[base + c];
                                if (grad_in) {
                                    grad_in->data()[base + c] += g[c] * kernel[kbase + c];
                                }
                            }
                        }
                    }
                }
            }
        }
    }

   private:
    void depthwise_forward(const Tensor &in, std::span<const double> kernel, std::vector<double> &out) const {
        const Shape &s = input_shape();
        const Shape &o = output_shape();
        size_t cin = s.c;
        out.assign(in.batch() * o.h * o.w * cin, 0.0);
        for (size_t n = 0; n < in.batch(); n++) {
            for (size_t oi = 0; oi < o.h; oi++) {
                for (size_t oj = 0; oj < o.w; oj++) {
                    double *dst = out.data() + ((n * o.h + oi) * o.w + oj) * cin;
                    for (size_t p = 0; p < window_.kh; p++) {
                        long ii = static_cast<long>(oi * window_.stride + p) - static_cast<long>(window_.pad_top);
                        if (ii < 0 || ii >= static_cast<long>(s.h)) {
                            continue;
                        }
                        for (size_t q = 0; q < window_.kw; q++) {
                            long jj = static_cast<long>(oj * window_.stride + q) - static_cast<long>(window_.pad_left);
                            if (jj < 0 || jj >= static_cast<long>(s.w)) {
                                continue;
                            }
                            const double *x = in.data().data() +
                                              ((n * s.h + static_cast<size_t>(ii)) * s.w + static_cast<size_t>(jj)) * cin;
                            const double *k = kernel.data() + (p * window_.kw + q) * cin;
                            for (size_t c = 0; c < cin; c++) {
                                dst[c] += x[c] * k[c];
                            }
                        }
                    }
                }
            }
        }
    }

    SepConvSpec spec_;
    Window window_;
    size_t depth_;
};

// Parameters: gamma[c], beta[c], running_mean[c], running_var[c].
class BatchNormLayer final : public Layer {
   public:
    BatchNormLayer(const BatchNormSpec &spec, const Shape &in) : Layer(in, in), spec_(spec) {
    }

    size_t param_count() const override {
        return 4 * input_shape().c;
    }

    void frozen_mask(std::span<uint8_t> mask) const override {
        size_t c = input_shape().c;
        std::fill(mask.begin() + static_cast<std::ptrdiff_t>(2 * c), mask.end(), uint8_t{1});
    }

    void init_params(std::span<double> params, Rng &) const override {
        size_t c = input_shape().c;
        for (size_t k = 0; k < c; k++) {
            params[k] = 1.0;
            params[c + k] = 0.0;
            params[2 * c + k] = 0.0;
            params[3 * c + k] = 1.0;
        }
    }

    void forward(const Tensor &in, Tensor &out, std::span<const double> params, Mode mode,
                 LayerCache &cache) const override {
        require_shape(in, input_shape(), "BatchNorm");
        cache.mode = mode;
        size_t c = input_shape().c;
        size_t m = in.size() / c;
        std::vector<double> mean(c, 0.0), var(c, 0.0), inv_std(c);
        if (mode == Mode::Train) {
            if (m == 0) {
                throw DimensionMismatch("BatchNorm: empty batch");
            }
            for (size_t r = 0; r < m; r++) {
                for (size_t k = 0; k < c; k++) {
                    mean[k] += in.data()[r * c + k];
                }
            }
            for (auto &x : mean) {
                x /= static_cast<double>(m);
            }
            for (size_t r = 0; r < m; r++) {
                for (size_t k = 0; k < c; k++) {
                    double d = in.data()[r * c + k] - mean[k];
                    var[k] += d * d;
                }
            }
            for (auto &x : var) {
                x /= static_cast<double>(m);
            }
        } else {
            for (size_t k = 0; k < c; k++) {
                mean[k] = params[2 * c + k];
                var[k] = params[3 * c + k];
            }
        }
        for (size_t k = 0; k < c; k++) {
            inv_std[k] = 1.0 / std::sqrt(var[k] + spec_.epsilon);
        }
        out.resize(in.batch(), output_shape());
        for (size_t r = 0; r < m; r++) {
            for (size_t k = 0; k < c; k++) {
                double xhat = (in.data()[r * c + k] - mean[k]) * inv_std[k];
                out.data()[r * c + k] = params[k] * xhat + params[c + k];
            }
        }
        cache.stats.clear();
        cache.stats.insert(cache.stats.end(), mean.begin(), mean.end());
        cache.stats.insert(cache.stats.end(), var.begin(), var.end());
        cache.stats.insert(cache.stats.end(), inv_std.begin(), inv_std.end());
    }

    void backward(const Tensor &in, const Tensor &, const Tensor &grad_out, Tensor *grad_in,
                  std::span<const double> params, std::span<double> grads, const LayerCache &cache) const override {
        size_t c = input_shape().c;
        size_t m = in.size() / c;
        if (cache.stats.size() != 3 * c) {
            throw std::logic_error("BatchNorm::backward called without a cached forward pass");
        }
        const double *mean = cache.stats.data();
        const double *inv_std = cache.stats.data() + 2 * c;
        std::vector<double> sum_dxhat(c, 0.0), sum_dxhat_xhat(c, 0.0);
        for (size_t r = 0; r < m; r++) {
            for (size_t k = 0; k < c; k++) {
                double xhat = (in.data()[r * c + k] - mean[k]) * inv_std[k];
                double dy = grad_out.data()[r * c + k];
                grads[k] += dy * xhat;
                grads[c + k] += dy;
                double dxhat = dy * params[k];
                sum_dxhat[k] += dxhat;
                sum_dxhat_xhat[k] += dxhat * xhat;
            }
        }
        if (!grad_in) {
            return;
        }
        grad_in->resize(in.batch(), input_shape());
        double md = static_cast<double>(m);
        for (size_t r = 0; r < m; r++) {
            for (size_t k = 0; k < c; k++) {
                double dy = grad_out.data()[r * c + k];
                double dxhat = dy * params[k];
                if (cache.mode == Mode::Train) {
                    double xhat = (in.data()[r * c + k] - mean[k]) * inv_std[k];
                    grad_in->data()[r * c + k] =
                        inv_std[k] / md * (md * dxhat - sum_dxhat[k] - xhat * sum_dxhat_xhat[k]);
                } else {
                    grad_in->data()[r * c + k] = dxhat * inv_std[k];
                }
            }
        }
    }

    void commit(std::span<double> params, const LayerCache &cache) const override {
        if (cache.mode != Mode::Train) {
            return;
        }
        size_t c = input_shape().c;
        const double *mean = cache.stats.data();
        const double *var = cache.stats.data() + c;
        for (size_t k = 0; k < c; k++) {
            params[2 * c + k] = spec_.momentum * params[2 * c + k] + (1 - spec_.momentum) * mean[k];
            params[3 * c + k] = spec_.momentum * params[3 * c + k] + (1 - spec_.momentum) * var[k];
        }
    }

   private:
    BatchNormSpec spec_;
};

class LeakyReluLayer final : public Layer {
   public:
    LeakyReluLayer(const LeakyReluSpec &spec, const Shape &in) : Layer(in, in), spec_(spec) {
    }

    void forward(const Tensor &in, Tensor &out, std::span<const double>, Mode mode,
                 LayerCache &cache) const override {
        require_shape(in, input_shape(), "LeakyReLU");
        cache.mode = mode;
        out = in;
        for (auto &v : out.data()) {
            if (v < 0) {
                v *= spec_.slope;
            }
        }
    }

    void backward(const Tensor &in, const Tensor &, const Tensor &grad_out, Tensor *grad_in, std::span<const double>,
                  std::span<double>, const LayerCache &) const override {
        if (!grad_in) {
            return;
        }
        *grad_in = grad_out;
        for (size_t k = 0; k < in.size(); k++) {
            if (in.data()[k] < 0) {
                grad_in->data()[k] *= spec_.slope;
            }
        }
    }

   private:
    LeakyReluSpec spec_;
};

class FlattenLayer final : public Layer {
   public:
    explicit FlattenLayer(const Shape &in) : Layer(in, Shape{1, 1, in.size()}) {
    }

    void forward(const Tensor &in, Tensor &out, std::span<const double>, Mode mode,
                 LayerCache &cache) const override {
        require_shape(in, input_shape(), "Flatten");
        cache.mode = mode;
        out = in;
        out.reshape(output_shape());
    }

    void backward(const Tensor &, const Tensor &, const Tensor &grad_out, Tensor *grad_in, std::span<const double>,
                  std::span<double>, const LayerCache &) const override {
        if (grad_in) {
            *grad_in = grad_out;
            grad_in->reshape(input_shape());
        }
    }
};

class DenseLayer final : public Layer {
   public:
    DenseLayer(const DenseSpec &spec, const Shape &in)
        : Layer(in, layer_output_shape(LayerSpec{spec}, in)), spec_(spec), fan_in_(in.c) {
    }

    size_t param_count() const override {
        return fan_in_ * spec_.units + spec_.units;
    }

    void init_params(std::span<double> params, Rng &rng) const override {
        he_uniform(params.first(fan_in_ * spec_.units), fan_in_, rng);
        std::fill(params.begin() + static_cast<std::ptrdiff_t>(fan_in_ * spec_.units), params.end(), 0.0);
    }

    void forward(const Tensor &in, Tensor &out, std::span<const double> params, Mode mode,
                 LayerCache &cache) const override {
        require_shape(in, input_shape(), "Dense");
        cache.mode = mode;
        long n = static_cast<long>(in.batch());
        out.resize(in.batch(), output_shape());
        CMapR x(in.data().data(), n, static_cast<long>(fan_in_));
        CMapR w(params.data(), static_cast<long>(fan_in_), static_cast<long>(spec_.units));
        CVec b(params.data() + fan_in_ * spec_.units, static_cast<long>(spec_.units));
        MapR y(out.data().data(), n, static_cast<long>(spec_.units));
        y.noalias() = x * w;
        y.rowwise() += b.transpose();
        apply_activation(out.data(), spec_.activation, spec_.slope);
    }

    void backward(const Tensor &in, const Tensor &out, const Tensor &grad_out, Tensor *grad_in,
                  std::span<const double> params, std::span<double> grads, const LayerCache &) const override {
        long n = static_cast<long>(in.batch());
        std::vector<double> dz(grad_out.data().begin(), grad_out.data().end());
        activation_backward(out.data(), dz, spec_.activation, spec_.slope);
        CMapR x(in.data().data(), n, static_cast<long>(fan_in_));
        CMapR dzm(dz.data(), n, static_cast<long>(spec_.units));
        MapR dw(grads.data(), static_cast<long>(fan_in_), static_cast<long>(spec_.units));
        Vec db(grads.data() + fan_in_ * spec_.units, static_cast<long>(spec_.units));
        dw.noalias() += x.transpose() * dzm;
        add_column_sums(dz.data(), static_cast<size_t>(dzm.rows()), static_cast<size_t>(dzm.cols()), db.data());
        if (grad_in) {
            CMapR w(params.data(), static_cast<long>(fan_in_), static_cast<long>(spec_.units));
            grad_in->resize(in.batch(), input_shape());
            MapR dx(grad_in->data().data(), n, static_cast<long>(fan_in_));
            dx.noalias() = dzm * w.transpose();
        }
    }

   private:
    DenseSpec spec_;
    size_t fan_in_;
};

class BranchLayer final : public Layer {
   public:
    BranchLayer(const BranchSpec &spec, const Shape &in) : Layer(in, layer_output_shape(LayerSpec{spec}, in)) {
        size_t offset = 0;
        for (const auto &stack : spec.stacks) {
            stacks_.emplace_back(stack, in);
            offsets_.push_back(offset);
            offset += stacks_.back().param_count();
        }
        param_count_ = offset;
    }

    size_t param_count() const override {
        return param_count_;
    }

    void frozen_mask(std::span<uint8_t> mask) const override {
        for (size_t s = 0; s < stacks_.size(); s++) {
            stacks_[s].frozen_mask(mask.subspan(offsets_[s], stacks_[s].param_count()));
        }
    }

    void init_params(std::span<double> params, Rng &rng) const override {
        for (size_t s = 0; s < stacks_.size(); s++) {
            stacks_[s].init_params(params.subspan(offsets_[s], stacks_[s].param_count()), rng);
        }
    }

    void forward(const Tensor &in, Tensor &out, std::span<const double> params, Mode mode,
                 LayerCache &cache) const override {
        require_shape(in, input_shape(), "Branch");
        cache.mode = mode;
        cache.children.resize(stacks_.size());
        out.resize(in.batch(), output_shape());
        size_t positions = in.batch() * output_shape().h * output_shape().w;
        size_t channel = 0;
        Tensor part;
        for (size_t s = 0; s < stacks_.size(); s++) {
            stacks_[s].forward(in, part, params.subspan(offsets_[s], stacks_[s].param_count()), mode,
                               cache.children[s]);
            size_t cs = part.shape().c;
            for (size_t r = 0; r < positions; r++) {
                std::copy_n(part.data().data() + r * cs, cs, out.data().data() + r * output_shape().c + channel);
            }
            channel += cs;
        }
    }

    void backward(const Tensor &in, const Tensor &, const Tensor &grad_out, Tensor *grad_in,
                  std::span<const double> params, std::span<double> grads, const LayerCache &cache) const override {
        if (cache.children.size() != stacks_.size()) {
            throw std::logic_error("Branch::backward called without a cached forward pass");
        }
        size_t positions = in.batch() * output_shape().h * output_shape().w;
        if (grad_in) {
            grad_in->resize(in.batch(), input_shape());
        }
        size_t channel = 0;
        Tensor part_grad, part_in_grad;
        for (size_t s = 0; s < stacks_.size(); s++) {
            const Shape &ps = stacks_[s].output_shape();
            part_grad.resize(in.batch(), ps);
            for (size_t r = 0; r < positions; r++) {
                std::copy_n(grad_out.data().data() + r * output_shape().c + channel, ps.c,
                            part_grad.data().data() + r * ps.c);
            }
            channel += ps.c;
            stacks_[s].backward(in, part_grad, grad_in ? &part_in_grad : nullptr,
                                params.subspan(offsets_[s], stacks_[s].param_count()),
                                grads.subspan(offsets_[s], stacks_[s].param_count()), cache.children[s]);
            if (grad_in) {
                auto dst = grad_in->data();
                auto src = part_in_grad.data();
                for (size_t k = 0; k < dst.size(); k++) {
                    dst[k] += src[k];
                }
            }
        }
    }

    void commit(std::span<double> params, const LayerCache &cache) const override {
        for (size_t s = 0; s < stacks_.size() && s < cache.children.size(); s++) {
            stacks_[s].commit(params.subspan(offsets_[s], stacks_[s].param_count()), cache.children[s]);
        }
    }

   private:
    std::vector<Sequence> stacks_;
    std::vector<size_t> offsets_;
    size_t param_count_ = 0;
};

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

std::unique_ptr<Layer> make_layer(const LayerSpec &spec, const Shape &in) {
    return std::visit(
        Overloaded{
            [&](const ConvSpec &s) -> std::unique_ptr<Layer> {
                return std::make_unique<ConvLayer>(s, in);
            },
            [&](const SepConvSpec &s) -> std::unique_ptr<Layer> {
                return std::make_unique<SepConvLayer>(s, in);
            },
            [&](const BatchNormSpec &s) -> std::unique_ptr<Layer> {
                return std::make_unique<BatchNormLayer>(s, in);
            },
            [&](const LeakyReluSpec &s) -> std::unique_ptr<Layer> {
                return std::make_unique<LeakyReluLayer>(s, in);
            },
            [&](const FlattenSpec &) -> std::unique_ptr<Layer> {
                return std::make_unique<FlattenLayer>(in);
            },
            [&](const DenseSpec &s) -> std::unique_ptr<Layer> {
                return std::make_unique<DenseLayer>(s, in);
            },
            [&](const BranchSpec &s) -> std::unique_ptr<Layer> {
                return std::make_unique<BranchLayer>(s, in);
            },
        },
        spec.kind);
}

Sequence::Sequence(const std::vector<LayerSpec> &specs, const Shape &in) : in_(in), out_(in) {
    for (const auto &spec : specs) {
        layers_.push_back(make_layer(spec, out_));
        offsets_.push_back(param_count_);
        param_count_ += layers_.back()->param_count();
        out_ = layers_.back()->output_shape();
    }
}

void Sequence::frozen_mask(std::span<uint8_t> mask) const {
    for (size_t i = 0; i < layers_.size(); i++) {
        layers_[i]->frozen_mask(mask.subspan(offsets_[i], layers_[i]->param_count()));
    }
}

void Sequence::init_params(std::span<double> params, Rng &rng) const {
    for (size_t i = 0; i < layers_.size(); i++) {
        layers_[i]->init_params(params.subspan(offsets_[i], layers_[i]->param_count()), rng);
    }
}

void Sequence::forward(const Tensor &in, Tensor &out, std::span<const double> params, Mode mode,
                       Trace &trace) const {
    if (in.shape() != in_) {
        throw DimensionMismatch("expected input " + in_.str() + ", got " + in.shape().str());
    }
    trace.outputs.resize(layers_.size());
    trace.caches.resize(layers_.size());
    const Tensor *cur = &in;
    for (size_t i = 0; i < layers_.size(); i++) {
        layers_[i]->forward(*cur, trace.outputs[i], params.subspan(offsets_[i], layers_[i]->param_count()), mode,
                            trace.caches[i]);
        cur = &trace.outputs[i];
    }
    out = *cur;
}

void Sequence::backward(const Tensor &in, const Tensor &grad_out, Tensor *grad_in, std::span<const double> params,
                        std::span<double> grads, const Trace &trace) const {
    if (trace.outputs.size() != layers_.size()) {
        throw std::logic_error("backward called without a cached forward pass");
    }
    if (layers_.empty()) {
        if (grad_in) {
            *grad_in = grad_out;
        }
        return;
    }
    Tensor grad = grad_out;
    Tensor next;
    for (size_t i = layers_.size(); i-- > 0;) {
        const Tensor &layer_in = i == 0 ? in : trace.outputs[i - 1];
        bool want_input_grad = i > 0 || grad_in != nullptr;
        layers_[i]->backward(layer_in, trace.outputs[i], grad, want_input_grad ? &next : nullptr,
                             params.subspan(offsets_[i], layers_[i]->param_count()),
                             grads.subspan(offsets_[i], layers_[i]->param_count()), trace.caches[i]);
        if (want_input_grad) {
            std::swap(grad, next);
        }
    }
    if (grad_in) {
        *grad_in = std::move(grad);
    }
}

void Sequence::commit(std::span<double> params, const Trace &trace) const {
    for (size_t i = 0; i < layers_.size() && i < trace.caches.size(); i++) {
        layers_[i]->commit(params.subspan(offsets_[i], layers_[i]->param_count()), trace.caches[i]);
    }
}

}  // namespace xpooky::nn
