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

#include "xpooky/nn/train.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "xpooky/errors.h"
#include "xpooky/rng.h"

namespace xpooky::nn {

namespace {

void check_data(const Model &model, const TrainingData &data, const char *what) {
    if (data.size() == 0) {
        throw std::invalid_argument(std::string(what) + " set is empty");
    }
    if (data.x.shape() != model.spec().input) {
        throw DimensionMismatch(std::string(what) + " inputs are " + data.x.shape().str() + " but the model expects " +
                                model.spec().input.str());
    }
    if (data.targets.size() != data.size() * model.output_width()) {
        throw DimensionMismatch(std::string(what) + " targets do not match the head width");
    }
}

}  // namespace

void TrainConfig::validate() const {
    if (!(lr > 0)) {
        throw std::invalid_argument("lr must be positive");
    }
    if (!(momentum >= 0 && momentum < 1)) {
        throw std::invalid_argument("momentum must lie in [0, 1)");
    }
    if (batch_size == 0) {
        throw std::invalid_argument("batch size must be positive");
    }
    plateau_config.validate();
}

void to_json(nlohmann::json &j, const TrainConfig &c) {
    j = nlohmann::json{
        {"lr", c.lr},
        {"momentum", c.momentum},
        {"batch_size", c.batch_size},
        {"epochs", c.epochs},
        {"plateau", c.plateau},
        {"patience", c.plateau_config.patience},
        {"factor", c.plateau_config.factor},
        {"min_lr", c.plateau_config.min_lr},
        {"min_delta", c.plateau_config.min_delta},
        {"seed", c.seed},
    };
    if (c.loss) {
        j["loss"] = to_string(*c.loss);
    }
}

void from_json(const nlohmann::json &j, TrainConfig &c) {
    c = TrainConfig{};
    c.lr = j.value("lr", c.lr);
    c.momentum = j.value("momentum", c.momentum);
    c.batch_size = j.value("batch_size", c.batch_size);
    c.epochs = j.value("epochs", c.epochs);
    c.plateau = j.value("plateau", c.plateau);
    c.plateau_config.patience = j.value("patience", c.plateau_config.patience);
    c.plateau_config.factor = j.value("factor", c.plateau_config.factor);
    c.plateau_config.min_lr = j.value("min_lr", c.plateau_config.min_lr);
    c.plateau_config.min_delta = j.value("min_delta", c.plateau_config.min_delta);
    c.seed = j.value("seed", c.seed);
    if (j.contains("loss")) {
        c.loss = loss_kind_from_string(j.at("loss").get<std::string>());
    }
}

std::string TrainHistory::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "epoch,train_loss,val_loss,train_" << metric_name << ",val_" << metric_name << ",lr\n";
    for (const auto &e : epochs) {
        out << e.epoch << ',' << e.train_loss << ',' << e.val_loss << ',' << e.train_metric << ',' << e.val_metric
            << ',' << e.lr << '\n';
    }
    return out.str();
}

double head_metric(HeadKind head, std::span<const double> outputs, std::span<const double> targets, size_t width) {
    size_t rows = outputs.size() / width;
    if (rows == 0) {
        return 0;
    }
    if (head == HeadKind::Linear) {
        double total = 0;
        for (size_t k = 0; k < outputs.size(); k++) {
            total += std::abs(std::clamp(outputs[k], 0.0, 1.0) - targets[k]);
        }
        return total / static_cast<double>(outputs.size());
    }
    size_t correct = 0;
    if (width == 1) {
        for (size_t r = 0; r < rows; r++) {
            correct += (outputs[r] >= 0.5) == (targets[r] >= 0.5);
        }
    } else {
        auto p = argmax_rows(outputs, width);
        auto t = argmax_rows(targets, width);
        for (size_t r = 0; r < rows; r++) {
            correct += p[r] == t[r];
        }
    }
    return static_cast<double>(correct) / static_cast<double>(rows);
}

TrainHistory train(Model &model, const TrainingData &train_set, const TrainingData &val_set,
                   const TrainConfig &config, const EpochCallback &on_epoch) {
    config.validate();
    check_data(model, train_set, "training");
    check_data(model, val_set, "validation");

    const HeadKind head = model.spec().head.kind;
    const LossKind loss = config.loss.value_or(default_loss(head));
    const size_t width = model.output_width();
    const size_t n = train_set.size();

    SgdMomentum sgd(config.lr, config.momentum);
    std::optional<PlateauScheduler> scheduler;
    if (config.plateau) {
        scheduler.emplace(config.plateau_config, config.lr);
    }

    TrainHistory history;
    history.metric_name = head == HeadKind::Linear ? "mae" : "accuracy";
    history.best_val_loss = std::numeric_limits<double>::infinity();
    std::vector<double> best_params(model.params().begin(), model.params().end());

    std::vector<size_t> order(n);
    std::vector<double> grads(model.param_count());
    std::vector<double> batch_targets;
    std::vector<double> outputs;
    std::vector<double> epoch_outputs(n * width);
    std::vector<double> epoch_targets(n * width);
    Trace trace;

    for (size_t epoch = 1; epoch <= config.epochs; epoch++) {
        std::iota(order.begin(), order.end(), size_t{0});
        Rng rng(derive_seed(config.seed, epoch));
        std::shuffle(order.begin(), order.end(), rng);

        double loss_total = 0;
        for (size_t start = 0; start < n; start += config.batch_size) {
            size_t end = std::min(n, start + config.batch_size);
            std::span<const size_t> idx(order.data() + start, end - start);
            Tensor xb = train_set.x.gather(idx);
            batch_targets.resize(idx.size() * width);
            for (size_t r = 0; r < idx.size(); r++) {
                std::copy_n(train_set.targets.begin() + static_cast<std::ptrdiff_t>(idx[r] * width), width,
                            batch_targets.begin() + static_cast<std::ptrdiff_t>(r * width));
            }
            std::fill(grads.begin(), grads.end(), 0.0);
            double batch_loss = model.loss_and_gradient(xb, batch_targets, loss, grads, trace, &outputs);
            sgd.step(model.params(), grads, model.frozen_mask());
            model.commit(trace);
            loss_total += batch_loss * static_cast<double>(idx.size());
            std::copy(outputs.begin(), outputs.end(), epoch_outputs.begin() + static_cast<std::ptrdiff_t>(start * width));
            std::copy(batch_targets.begin(), batch_targets.end(),
                      epoch_targets.begin() + static_cast<std::ptrdiff_t>(start * width));
        }

        EpochRecord rec;
        rec.epoch = epoch;
        rec.lr = sgd.lr();
        rec.train_loss = loss_total / static_cast<double>(n);
        rec.train_metric = head_metric(head, epoch_outputs, epoch_targets, width);
        auto val_out = model.predict(val_set.x);
        rec.val_loss = compute_loss(loss, val_out, val_set.targets, width).value;
        rec.val_metric = head_metric(head, val_out, val_set.targets, width);
        history.epochs.push_back(rec);

        if (rec.val_loss < history.best_val_loss) {
            history.best_val_loss = rec.val_loss;
            history.best_epoch = epoch;
            std::copy(model.params().begin(), model.params().end(), best_params.begin());
        }
        if (scheduler) {
            sgd.set_lr(scheduler->update(rec.val_loss));
        }
        if (on_epoch) {
            on_epoch(rec);
        }
    }
    if (history.best_epoch > 0) {
        std::copy(best_params.begin(), best_params.end(), model.params().begin());
    }
    return history;
}

}  // namespace xpooky::nn
