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

#include "xpooky/nn/optim.h"

#include <algorithm>
#include <stdexcept>

#include "xpooky/errors.h"

namespace xpooky::nn {

SgdMomentum::SgdMomentum(double lr, double momentum) : lr_(lr), momentum_(momentum) {
    if (!(lr > 0)) {
        throw std::invalid_argument("learning rate must be positive");
    }
    if (!(momentum >= 0 && momentum < 1)) {
        throw std::invalid_argument("momentum must lie in [0, 1)");
    }
}

void SgdMomentum::step(std::span<double> params, std::span<const double> grads, std::span<const uint8_t> frozen) {
    if (params.size() != grads.size() || (!frozen.empty() && frozen.size() != params.size())) {
        throw DimensionMismatch("sgd: parameter, gradient and mask sizes differ");
    }
    if (velocity_.size() != params.size()) {
        velocity_.assign(params.size(), 0.0);
    }
    for (size_t k = 0; k < params.size(); k++) {
        if (!frozen.empty() && frozen[k]) {
            continue;
        }
        velocity_[k] = momentum_ * velocity_[k] + grads[k];
        params[k] -= lr_ * velocity_[k];
    }
}

void PlateauConfig::validate() const {
    if (patience < 1) {
        throw std::invalid_argument("plateau patience must be at least 1");
    }
    if (!(factor > 0 && factor < 1)) {
        throw std::invalid_argument("plateau factor must lie in (0, 1)");
    }
    if (min_lr < 0 || min_delta < 0) {
        throw std::invalid_argument("plateau min_lr and min_delta must be non-negative");
    }
}

PlateauScheduler::PlateauScheduler(PlateauConfig config, double lr) : config_(config), lr_(lr) {
    config_.validate();
}

double PlateauScheduler::update(double loss) {
    if (loss < best_ - config_.min_delta) {
        best_ = loss;
        stagnant_ = 0;
        return lr_;
    }
    stagnant_++;
    if (stagnant_ >= config_.patience) {
        lr_ = std::max(lr_ * config_.factor, config_.min_lr);
        stagnant_ = 0;
    }
    return lr_;
}

}  // namespace xpooky::nn
