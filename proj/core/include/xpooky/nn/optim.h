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

#ifndef XPOOKY_NN_OPTIM_H
#define XPOOKY_NN_OPTIM_H

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace xpooky::nn {

/// Classical momentum: v <- mu v + g; theta <- theta - lr v.
class SgdMomentum {
   public:
    SgdMomentum(double lr, double momentum);

    double lr() const {
        return lr_;
    }
    void set_lr(double lr) {
        lr_ = lr;
    }
    double momentum() const {
        return momentum_;
    }
    std::span<const double> velocity() const {
        return velocity_;
    }

    /// Entries flagged in `frozen` are left untouched.
    void step(std::span<double> params, std::span<const double> grads, std::span<const uint8_t> frozen = {});

   private:
    double lr_;
    double momentum_;
    std::vector<double> velocity_;
};

struct PlateauConfig {
    size_t patience = 2;
    double factor = 0.5;
    double min_lr = 1e-5;
    /// Absolute improvement required to reset the stagnation counter.
    double min_delta = 1e-4;

    void validate() const;
};

/// Reduce-on-plateau state machine over validation losses.
class PlateauScheduler {
   public:
    PlateauScheduler(PlateauConfig config, double lr);

    /// Feeds one epoch's loss; returns the learning rate for the next epoch.
    double update(double loss);

    double lr() const {
        return lr_;
    }
    double best() const {
        return best_;
    }
    size_t stagnant_epochs() const {
        return stagnant_;
    }

   private:
    PlateauConfig config_;
    double lr_;
    double best_ = std::numeric_limits<double>::infinity();
    size_t stagnant_ = 0;
};

}  // namespace xpooky::nn

#endif
