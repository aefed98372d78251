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

#include "xpooky/sweeps.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "parallel.h"
#include "xpooky/checksum.h"
#include "xpooky/encoding.h"
#include "xpooky/errors.h"
#include "xpooky/labeling.h"

namespace xpooky {

namespace {

constexpr size_t kNonIdentityBases = 15;

void require_qubits(const nn::Model &model, size_t n_qubits, const char *what) {
    size_t dim = size_t{1} << n_qubits;
    if (model.spec().input != nn::Shape{dim, dim, 2}) {
        throw DimensionMismatch(std::string(what) + ": model input " + model.spec().input.str() +
                                " is not a " + std::to_string(n_qubits) + "-qubit model");
    }
}

void copy_tensor(const ExtendedTensor &t, std::span<double> dst) {
    std::copy(t.data.begin(), t.data.end(), dst.begin());
}

double accuracy(std::span<const size_t> a, std::span<const size_t> b) {
    size_t hit = 0;
    for (size_t k = 0; k < a.size(); k++) {
        hit += a[k] == b[k];
    }
    return a.empty() ? 0.0 : static_cast<double>(hit) / static_cast<double>(a.size());
}

}  // namespace

nn::Tensor records_to_tensor(std::span<const LabeledState> records, size_t n_qubits) {
    size_t dim = size_t{1} << n_qubits;
    nn::Tensor x(records.size(), nn::Shape{dim, dim, 2});
    for (size_t n = 0; n < records.size(); n++) {
        if (records[n].rho.dim() != dim) {
            throw DimensionMismatch("records_to_tensor: record " + std::to_string(n) + " is not " +
                                    std::to_string(n_qubits) + "-qubit");
        }
        copy_tensor(to_extended_tensor(records[n].rho), x.sample(n));
    }
    return x;
}

nn::TrainingData make_training_data(std::span<const LabeledState> records, size_t n_qubits, nn::Task task) {
    nn::TrainingData out{records_to_tensor(records, n_qubits), {}};
    if (task == nn::Task::Classify) {
        size_t k = class_count(n_qubits);
        out.targets.assign(records.size() * k, 0.0);
        for (size_t n = 0; n < records.size(); n++) {
            if (records[n].label >= k) {
                throw std::out_of_range("make_training_data: label out of range");
            }
            out.targets[n * k + records[n].label] = 1.0;
        }
    } else {
        out.targets.resize(records.size());
        for (size_t n = 0; n < records.size(); n++) {
            if (!records[n].eof) {
                throw std::invalid_argument("make_training_data: regression needs EoF values on every record");
            }
            out.targets[n] = *records[n].eof;
        }
    }
    return out;
}

std::vector<size_t> record_labels(std::span<const LabeledState> records) {
    std::vector<size_t> out(records.size());
    for (size_t n = 0; n < records.size(); n++) {
        out[n] = records[n].label;
    }
    return out;
}

std::vector<size_t> predict_classes(const nn::Model &model, const nn::Tensor &x) {
    auto y = model.predict(x);
    if (model.spec().head.kind == nn::HeadKind::Linear) {
        std::vector<size_t> out(y.size());
        for (size_t n = 0; n < y.size(); n++) {
            out[n] = y[n] > kEofThreshold ? 1 : 0;
        }
        return out;
    }
    if (model.output_width() == 1) {
        std::vector<size_t> out(y.size());
        for (size_t n = 0; n < y.size(); n++) {
            out[n] = y[n] >= 0.5 ? 1 : 0;
        }
        return out;
    }
    return nn::argmax_rows(y, model.output_width());
}

Evaluation evaluate_model(const nn::Model &model, std::span<const LabeledState> records, size_t n_qubits) {
    require_qubits(model, n_qubits, "evaluate");
    if (records.empty()) {
        throw std::invalid_argument("evaluate: no records");
    }
    auto x = records_to_tensor(records, n_qubits);
    if (model.spec().head.kind == nn::HeadKind::Linear) {
        auto y = model.predict(x);
        std::vector<double> truth(records.size());
        std::vector<size_t> actual(records.size()), predicted(records.size());
        for (size_t n = 0; n < records.size(); n++) {
            if (!records[n].eof) {
                throw std::invalid_argument("evaluate: regression model needs EoF values on every record");
            }
            truth[n] = *records[n].eof;
            actual[n] = truth[n] > kEofThreshold;
            predicted[n] = y[n] > kEofThreshold;
        }
        auto cm = confusion_matrix(actual, predicted, 2);
        auto metrics = classification_metrics(cm);
        metrics.mae = mae(y, truth);
        return {std::move(cm), std::move(metrics)};
    }
    auto cm = confusion_matrix(record_labels(records), predict_classes(model, x), model.output_width());
    auto metrics = classification_metrics(cm);
    return {std::move(cm), std::move(metrics)};
}

void SweepCurve::validate() const {
    if (points.size() < 2) {
        return;
    }
    bool up = points[1].x > points[0].x;
    for (size_t k = 1; k < points.size(); k++) {
        bool ok = up ? points[k].x > points[k - 1].x : points[k].x < points[k - 1].x;
        if (!ok) {
            throw std::logic_error("sweep x values must be strictly monotone");
        }
    }
}

std::string SweepCurve::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "kind,space,seed,x,metric,trials\n";
    for (const auto &p : points) {
        out << kind << ',' << space << ',' << seed << ',' << p.x << ',' << p.metric << ',' << p.trials << '\n';
    }
    return out.str();
}

nlohmann::json SweepCurve::to_json() const {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto &p : points) {
        pts.push_back({{"x", p.x}, {"metric", p.metric}, {"trials", p.trials}});
    }
    return {{"kind", kind}, {"space", space}, {"seed", seed}, {"points", pts}, {"metadata", metadata}};
}

std::string to_string(SweepSpace s) {
    return s == SweepSpace::Entire ? "entire" : "bell";
}

SweepSpace sweep_space_from_string(const std::string &text) {
    if (text == "entire") {
        return SweepSpace::Entire;
    }
    if (text == "bell") {
        return SweepSpace::Bell;
    }
    throw std::invalid_argument("unknown sweep space '" + text + "' (expected entire or bell)");
}

LabeledState rotated_bell_record(Rng &rng) {
    const double s = 1 / std::sqrt(2.0);
    auto u = tensor_product(random_unitary_2x2(rng), random_unitary_2x2(rng));
    std::vector<Complex> phi{s, 0, 0, s};
    std::vector<Complex> out(4);
    for (size_t i = 0; i < 4; i++) {
        for (size_t j = 0; j < 4; j++) {
            out[i] += u(i, j) * phi[j];
        }
    }
    auto rho = DensityMatrix::from_pure(StateVector(std::move(out)));
    return LabeledState{std::move(rho), class_id(TwoQubitClass::Ent), 1.0, 1.0, 1, 0};
}

std::vector<LabeledState> bell_space_set(std::span<const LabeledState> records, uint64_t seed) {
    std::vector<LabeledState> out;
    for (const auto &r : records) {
        if (r.label == class_id(TwoQubitClass::Sep)) {
            out.push_back(r);
        }
    }
    size_t negatives = out.size();
    for (size_t k = 0; k < negatives; k++) {
        uint64_t s = derive_seed(seed, 0x42454c4cULL, k);
        Rng rng(s);
        auto rec = rotated_bell_record(rng);
        rec.seed_used = s;
        out.push_back(std::move(rec));
    }
    return out;
}

SweepCurve incomplete_sweep(const nn::Model &model, std::span<const LabeledState> test_set,
                            const IncompleteSweepConfig &config) {
    require_qubits(model, 2, "incomplete_sweep");
    if (model.output_width() < 2 || model.spec().head.kind == nn::HeadKind::Linear) {
        throw std::invalid_argument("incomplete_sweep: needs a two-class classifier");
    }
    if (config.trials == 0) {
        throw std::invalid_argument("incomplete_sweep: trials must be positive");
    }
    for (size_t b : config.budgets) {
        if (b > kNonIdentityBases) {
            throw std::invalid_argument("incomplete_sweep: budgets must lie in 0..15");
        }
    }
    std::vector<LabeledState> bell;
    std::span<const LabeledState> records = test_set;
    if (config.space == SweepSpace::Bell) {
        bell = bell_space_set(test_set, config.seed);
        records = bell;
    }
    if (records.empty()) {
        throw std::invalid_argument("incomplete_sweep: empty test set");
    }
    auto labels = record_labels(records);

    SweepCurve curve;
    curve.kind = "incomplete";
    curve.space = to_string(config.space);
    curve.seed = config.seed;
    curve.metadata = {{"records", records.size()}, {"trials_per_budget", config.trials}};

    for (size_t budget : config.budgets) {
        size_t trials = budget == 0 || budget == kNonIdentityBases ? 1 : config.trials;
        std::vector<double> acc(trials);
        detail::parallel_for(trials, config.threads, [&](size_t t) {
            std::vector<uint32_t> codes(kNonIdentityBases);
            std::iota(codes.begin(), codes.end(), 1u);
            Rng rng(derive_seed(config.seed, budget, t));
            std::shuffle(codes.begin(), codes.end(), rng);
            std::set<PauliIndex> ignored;
            for (size_t k = budget; k < kNonIdentityBases; k++) {
                ignored.insert(PauliIndex::from_code(codes[k], 2));
            }
            nn::Tensor x(records.size(), model.spec().input);
            for (size_t n = 0; n < records.size(); n++) {
                copy_tensor(to_extended_tensor(incomplete_density(records[n].rho, ignored)), x.sample(n));
            }
            acc[t] = accuracy(labels, predict_classes(model, x));
        });
        double mean = std::accumulate(acc.begin(), acc.end(), 0.0) / static_cast<double>(trials);
        curve.points.push_back(SweepPoint{static_cast<double>(budget), mean, trials});
    }
    curve.validate();
    return curve;
}

PuritySweep purity_sweep(const nn::Model &model, const GenSpec &base, std::span<const double> purities,
                         uint64_t seed, size_t threads) {
    if (base.n_qubits != 3) {
        throw std::invalid_argument("purity_sweep: generator spec must be three-qubit");
    }
    require_qubits(model, 3, "purity_sweep");
    PuritySweep out;
    out.curve.kind = "purity";
    out.curve.space = "three-qubit";
    out.curve.seed = seed;
    out.curve.metadata = {{"count_per_class", base.count_per_class}};
    for (size_t k = 0; k < purities.size(); k++) {
        GenSpec spec = base;
        double half = base.target_purity ? base.target_purity->half_width : PurityBin{}.half_width;
        spec.target_purity = PurityBin{purities[k], half};
        spec.seed = derive_seed(seed, 0x505552ULL, k);
        auto data = build_dataset(spec, threads);
        auto eval = evaluate_model(model, data.records, 3);
        out.curve.points.push_back(SweepPoint{purities[k], eval.metrics.acc, 1});
        out.points.push_back(PurityPoint{purities[k], std::move(eval.cm), std::move(eval.metrics)});
    }
    out.curve.validate();
    return out;
}

std::string report_stem(const std::string &kind, uint64_t seed, uint64_t model_checksum) {
    return kind + "-seed" + std::to_string(seed) + "-model" + hex64(model_checksum);
}

}  // namespace xpooky
