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

#ifndef XPOOKY_EVAL_H
#define XPOOKY_EVAL_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace xpooky {

/// Rows are actual classes, columns predicted classes.
class ConfusionMatrix {
   public:
    explicit ConfusionMatrix(size_t k = 2);

    size_t classes() const {
        return k_;
    }
    uint64_t at(size_t actual, size_t predicted) const {
        return counts_[actual * k_ + predicted];
    }
    uint64_t &at(size_t actual, size_t predicted) {
        return counts_[actual * k_ + predicted];
    }
    uint64_t total() const;
    uint64_t trace() const;

    /// One row per cell: actual,predicted,count.
    std::string to_csv(const std::vector<std::string> &names = {}) const;

   private:
    size_t k_;
    std::vector<uint64_t> counts_;
};

ConfusionMatrix confusion_matrix(std::span<const size_t> actual, std::span<const size_t> predicted, size_t k);

struct ClassMetrics {
    double acc = 0;
    double fnr = 0;
    double mcc = 0;
};

struct MetricSet {
    double acc = 0;
    double fnr = 0;
    double mcc = 0;
    std::optional<double> mae;
    /// One-vs-rest metrics per class.
    std::vector<ClassMetrics> per_class;
};

/// Binary (k = 2, class 1 positive) or one-vs-rest counts.
ClassMetrics binary_metrics(uint64_t tp, uint64_t tn, uint64_t fp, uint64_t fn);

/// k-class Matthews correlation (covariance form). 0 when undefined.
double multiclass_mcc(const ConfusionMatrix &cm);

/// k = 2: the binary formulas with class 1 as positive. k > 2: acc is
/// trace/total, mcc the k-class generalization and fnr the mean of the
/// one-vs-rest rates. per_class is filled in both cases.
MetricSet classification_metrics(const ConfusionMatrix &cm);

double mae(std::span<const double> predicted, std::span<const double> actual);

nlohmann::json to_json_value(const MetricSet &m, const std::vector<std::string> &class_names = {});

}  // namespace xpooky

#endif
