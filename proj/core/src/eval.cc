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

#include "xpooky/eval.h"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "xpooky/errors.h"

namespace xpooky {

namespace {

double ratio(double num, double den) {
    return den == 0 ? 0.0 : num / den;
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(size_t k) : k_(k), counts_(k * k, 0) {
    if (k == 0) {
        throw std::invalid_argument("confusion matrix needs at least one class");
    }
}

uint64_t ConfusionMatrix::total() const {
    return std::accumulate(counts_.begin(), counts_.end(), uint64_t{0});
}

uint64_t ConfusionMatrix::trace() const {
    uint64_t t = 0;
    for (size_t i = 0; i < k_; i++) {
        t += at(i, i);
    }
    return t;
}

std::string ConfusionMatrix::to_csv(const std::vector<std::string> &names) const {
    auto name = [&](size_t i) { return i < names.size() ? names[i] : std::to_string(i); };
    std::ostringstream out;
    out << "actual,predicted,count\n";
    for (size_t i = 0; i < k_; i++) {
        for (size_t j = 0; j < k_; j++) {
            out << name(i) << ',' << name(j) << ',' << at(i, j) << '\n';
        }
    }
    return out.str();
}

ConfusionMatrix confusion_matrix(std::span<const size_t> actual, std::span<const size_t> predicted, size_t k) {
    if (actual.size() != predicted.size()) {
        throw DimensionMismatch("confusion_matrix: " + std::to_string(actual.size()) + " labels vs " +
                                std::to_string(predicted.size()) + " predictions");
    }
    ConfusionMatrix cm(k);
    for (size_t n = 0; n < actual.size(); n++) {
        if (actual[n] >= k || predicted[n] >= k) {
            throw std::out_of_range("confusion_matrix: label out of range");
        }
        cm.at(actual[n], predicted[n])++;
    }
    return cm;
}

ClassMetrics binary_metrics(uint64_t tp, uint64_t tn, uint64_t fp, uint64_t fn) {
    double TP = static_cast<double>(tp), TN = static_cast<double>(tn);
    double FP = static_cast<double>(fp), FN = static_cast<double>(fn);
    ClassMetrics m;
    m.acc = ratio(TP + TN, TP + TN + FP + FN);
    m.fnr = ratio(FN, FN + TP);
    double den = (TP + FP) * (TP + FN) * (TN + FP) * (TN + FN);
    m.mcc = den == 0 ? 0.0 : (TP * TN - FP * FN) / std::sqrt(den);
    return m;
}

double multiclass_mcc(const ConfusionMatrix &cm) {
    size_t k = cm.classes();
    double s = static_cast<double>(cm.total());
    double c = static_cast<double>(cm.trace());
    std::vector<double> pred(k, 0.0), act(k, 0.0);
    for (size_t i = 0; i < k; i++) {
        for (size_t j = 0; j < k; j++) {
            act[i] += static_cast<double>(cm.at(i, j));
            pred[j] += static_cast<double>(cm.at(i, j));
        }
    }
    double pt = 0, pp = 0, tt = 0;
    for (size_t i = 0; i < k; i++) {
        pt += pred[i] * act[i];
        pp += pred[i] * pred[i];
        tt += act[i] * act[i];
    }
    double den = std::sqrt(s * s - pp) * std::sqrt(s * s - tt);
    return den == 0 ? 0.0 : (c * s - pt) / den;
}

MetricSet classification_metrics(const ConfusionMatrix &cm) {
    uint64_t total = cm.total();
    if (total == 0) {
        throw std::invalid_argument("classification_metrics: empty confusion matrix");
    }
    size_t k = cm.classes();
    MetricSet out;
    for (size_t c = 0; c < k; c++) {
        uint64_t tp = cm.at(c, c), fp = 0, fn = 0;
        for (size_t j = 0; j < k; j++) {
            if (j != c) {
                fn += cm.at(c, j);
                fp += cm.at(j, c);
            }
        }
        out.per_class.push_back(binary_metrics(tp, total - tp - fp - fn, fp, fn));
    }
    if (k == 2) {
        const ClassMetrics &pos = out.per_class[1];
        out.acc = pos.acc;
        out.fnr = pos.fnr;
        out.mcc = pos.mcc;
    } else {
        out.acc = static_cast<double>(cm.trace()) / static_cast<double>(total);
        out.mcc = multiclass_mcc(cm);
        double fnr = 0;
        for (const auto &m : out.per_class) {
            fnr += m.fnr;
        }
        out.fnr = fnr / static_cast<double>(k);
    }
    return out;
}

double mae(std::span<const double> predicted, std::span<const double> actual) {
    if (predicted.size() != actual.size()) {
        throw DimensionMismatch("mae: " + std::to_string(predicted.size()) + " predictions vs " +
                                std::to_string(actual.size()) + " targets");
    }
    if (predicted.empty()) {
        throw std::invalid_argument("mae: empty input");
    }
    double total = 0;
    for (size_t k = 0; k < predicted.size(); k++) {
        total += std::abs(actual[k] - predicted[k]);
    }
    return total / static_cast<double>(predicted.size());
}

nlohmann::json to_json_value(const MetricSet &m, const std::vector<std::string> &class_names) {
    nlohmann::json j{{"acc", m.acc}, {"fnr", m.fnr}, {"mcc", m.mcc}};
    if (m.mae) {
        j["mae"] = *m.mae;
    }
    nlohmann::json per = nlohmann::json::array();
    for (size_t c = 0; c < m.per_class.size(); c++) {
        per.push_back({
            {"class", c < class_names.size() ? class_names[c] : std::to_string(c)},
            {"acc", m.per_class[c].acc},
            {"fnr", m.per_class[c].fnr},
            {"mcc", m.per_class[c].mcc},
        });
    }
    j["per_class"] = std::move(per);
    return j;
}

}  // namespace xpooky
