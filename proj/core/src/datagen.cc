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

#include "xpooky/datagen.h"

#include <algorithm>
#include <cmath>

#include "parallel.h"
#include "xpooky/errors.h"
#include "xpooky/labeling.h"

namespace xpooky {

size_t partition_count(size_t n_qubits) {
    if (n_qubits < 2) {
        throw std::invalid_argument("partition_count: need at least two qubits");
    }
    // sum_{i=2}^{N} C(N, i) = 2^N - N - 1
    size_t total = 0;
    size_t binom = 1;  // C(N, 0)
    for (size_t i = 1; i <= n_qubits; i++) {
        binom = binom * (n_qubits - i + 1) / i;
        if (i >= 2) {
            total += binom;
        }
    }
    return total;
}

size_t class_count(size_t n_qubits) {
    switch (n_qubits) {
        case 2:
            return 2;
        case 3:
            return 1 + partition_count(3);
        default:
            throw std::invalid_argument("class_count: only two- and three-qubit datasets are supported");
    }
}

std::string class_name(size_t n_qubits, ClassId id) {
    static const char *const kTwo[] = {"Sep", "Ent"};
    static const char *const kThree[] = {"Sep", "AB|C", "A|BC", "AC|B", "ABC"};
    if (id >= class_count(n_qubits)) {
        throw std::out_of_range("class id out of range");
    }
    return n_qubits == 2 ? kTwo[id] : kThree[id];
}

std::string to_string(GeneratorMode mode) {
    return mode == GeneratorMode::PsdGuaranteed ? "psd-guaranteed" : "paper-literal";
}

GeneratorMode generator_mode_from_string(const std::string &text) {
    if (text == "psd-guaranteed") {
        return GeneratorMode::PsdGuaranteed;
    }
    if (text == "paper-literal") {
        return GeneratorMode::PaperLiteral;
    }
    throw std::invalid_argument("unknown generator mode '" + text + "'");
}

double GenSpec::effective_nonzero_fraction() const {
    if (nonzero_fraction) {
        return *nonzero_fraction;
    }
    return n_qubits == 2 ? 0.75 : 0.0;
}

void GenSpec::validate() const {
    if (n_qubits != 2 && n_qubits != 3) {
        throw std::invalid_argument("GenSpec: n_qubits must be 2 or 3");
    }
    if (count_per_class == 0) {
        throw std::invalid_argument("GenSpec: count_per_class must be positive");
    }
    if (m_min == 0 || m_max < m_min) {
        throw std::invalid_argument("GenSpec: need 1 <= m_min <= m_max");
    }
    if (nonzero_fraction && (*nonzero_fraction < 0 || *nonzero_fraction > 1)) {
        throw std::invalid_argument("GenSpec: nonzero_fraction must lie in [0, 1]");
    }
    if (target_purity) {
        double lo = 1.0 / static_cast<double>(size_t{1} << n_qubits);
        if (!(target_purity->center > lo && target_purity->center <= 1.0) || target_purity->half_width < 0) {
            throw std::invalid_argument("GenSpec: target purity must lie in (1/2^N, 1]");
        }
    }
    if (retry_budget == 0) {
        throw std::invalid_argument("GenSpec: retry_budget must be positive");
    }
}

void to_json(nlohmann::json &j, const GenSpec &spec) {
    j = nlohmann::json{
        {"n_qubits", spec.n_qubits},
        {"count_per_class", spec.count_per_class},
        {"m_min", spec.m_min},
        {"m_max", spec.m_max},
        {"nonzero_fraction", spec.effective_nonzero_fraction()},
        {"seed", spec.seed},
        {"generator_mode", to_string(spec.mode)},
        {"retry_budget", spec.retry_budget},
    };
    if (spec.target_purity) {
        j["target_purity"] = {{"center", spec.target_purity->center}, {"half_width", spec.target_purity->half_width}};
    } else {
        j["target_purity"] = nullptr;
    }
}

void from_json(const nlohmann::json &j, GenSpec &spec) {
    spec.n_qubits = j.at("n_qubits").get<size_t>();
    spec.count_per_class = j.at("count_per_class").get<size_t>();
    spec.m_min = j.at("m_min").get<size_t>();
    spec.m_max = j.at("m_max").get<size_t>();
    spec.nonzero_fraction = j.at("nonzero_fraction").get<double>();
    spec.seed = j.at("seed").get<uint64_t>();
    spec.mode = generator_mode_from_string(j.at("generator_mode").get<std::string>());
    spec.retry_budget = j.at("retry_budget").get<size_t>();
    const auto &tp = j.at("target_purity");
    if (tp.is_null()) {
        spec.target_purity.reset();
    } else {
        spec.target_purity = PurityBin{tp.at("center").get<double>(), tp.at("half_width").get<double>()};
    }
}

namespace {

constexpr size_t kPaperLiteralBudget = 100000;

ComplexMatrix gaussian_matrix(size_t dim, Rng &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(dim);
    for (auto &z : m.entries()) {
        double re = g(rng);
        double im = g(rng);
        z = Complex(re, im);
    }
    return m;
}

ComplexMatrix hermitian_part(const ComplexMatrix &m) {
    ComplexMatrix h = m + m.adjoint();
    h *= 0.5;
    return h;
}

}  // namespace

StateVector random_pure_state(size_t n_qubits, Rng &rng) {
    if (n_qubits < 1 || n_qubits > 3) {
        throw std::invalid_argument("random_pure_state: n_qubits must be 1, 2 or 3");
    }
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Complex> amps(size_t{1} << n_qubits);
    for (auto &a : amps) {
        double re = g(rng);
        double im = g(rng);
        a = Complex(re, im);
    }
    return StateVector(std::move(amps));
}

DensityMatrix random_density_matrix(size_t n_qubits, GeneratorMode mode, Rng &rng) {
    if (n_qubits < 1 || n_qubits > 3) {
        throw std::invalid_argument("random_density_matrix: n_qubits must be 1, 2 or 3");
    }
    size_t dim = size_t{1} << n_qubits;
    if (mode == GeneratorMode::PsdGuaranteed) {
        ComplexMatrix m = gaussian_matrix(dim, rng);
        ComplexMatrix w = hermitian_part(m * m.adjoint());
        w *= 1.0 / w.trace().real();
        return DensityMatrix(std::move(w));
    }
    for (size_t attempt = 0; attempt < kPaperLiteralBudget; attempt++) {
        ComplexMatrix m = gaussian_matrix(dim, rng);
        ComplexMatrix h = m + m.adjoint();
        double tr = h.trace().real();
        if (!(tr > 0)) {
            continue;
        }
        if (hermitian_eigenvalues(h).back() < 0) {
            continue;
        }
        h = hermitian_part(h);
        h *= 1.0 / tr;
        return DensityMatrix(std::move(h));
    }
    throw RetryBudgetExceeded("random_density_matrix: paper-literal rejection budget exhausted");
}

std::vector<double> dirichlet_weights(size_t m, Rng &rng) {
    if (m == 0) {
        throw std::invalid_argument("dirichlet_weights: m must be positive");
    }
    std::exponential_distribution<double> e(1.0);
    std::vector<double> w(m);
    double total = 0;
    for (auto &x : w) {
        x = e(rng);
        total += x;
    }
    for (auto &x : w) {
        x /= total;
    }
    return w;
}

namespace {

ComplexMatrix weighted_sum(std::span<const ComplexMatrix> terms, std::span<const double> weights) {
    if (terms.empty() || terms.size() != weights.size()) {
        throw std::invalid_argument("mixture: need equally many (nonzero) terms and weights");
    }
    ComplexMatrix acc(terms[0].dim());
    for (size_t i = 0; i < terms.size(); i++) {
        if (weights[i] < 0) {
            throw std::invalid_argument("mixture: negative weight");
        }
        if (terms[i].dim() != acc.dim()) {
            throw DimensionMismatch("mixture: terms differ in dimension");
        }
        auto src = terms[i].entries();
        auto dst = acc.entries();
        for (size_t k = 0; k < dst.size(); k++) {
            dst[k] += weights[i] * src[k];
        }
    }
    acc = hermitian_part(acc);
    double tr = acc.trace().real();
    if (!(tr > 0)) {
        throw InvalidState("mixture: zero trace");
    }
    acc *= 1.0 / tr;
    return acc;
}

struct Draw {
    ComplexMatrix matrix;
    size_t m;
};

Draw draw_mixture(const TermFactory &factory, size_t m_min, size_t m_max, Rng &rng) {
    std::uniform_int_distribution<size_t> pick_m(m_min, m_max);
    size_t m = pick_m(rng);
    auto weights = dirichlet_weights(m, rng);
    std::vector<ComplexMatrix> terms;
    terms.reserve(m);
    for (size_t i = 0; i < m; i++) {
        terms.push_back(factory(rng));
    }
    return {weighted_sum(terms, weights), m};
}

}  // namespace

DensityMatrix mix_terms(std::span<const ComplexMatrix> terms, std::span<const double> weights) {
    return DensityMatrix(weighted_sum(terms, weights));
}

DensityMatrix mix_to_purity(const TermFactory &factory, size_t m, std::span<const double> weights, Rng &rng) {
    if (weights.size() != m) {
        throw std::invalid_argument("mix_to_purity: weights must have m entries");
    }
    double total = 0;
    for (double w : weights) {
        total += w;
    }
    if (std::abs(total - 1) > 1e-9) {
        throw std::invalid_argument("mix_to_purity: weights must sum to 1");
    }
    std::vector<ComplexMatrix> terms;
    for (size_t i = 0; i < m; i++) {
        terms.push_back(factory(rng));
    }
    return mix_terms(terms, weights);
}

DensityMatrix mix_to_purity(
    const TermFactory &factory, size_t m_min, size_t m_max, const PurityBin &target, Rng &rng, size_t budget,
    size_t *m_used) {
    for (size_t attempt = 0; attempt < budget; attempt++) {
        auto draw = draw_mixture(factory, m_min, m_max, rng);
        if (target.contains(purity(draw.matrix))) {
            if (m_used) {
                *m_used = draw.m;
            }
            return DensityMatrix(std::move(draw.matrix));
        }
    }
    throw RetryBudgetExceeded("mix_to_purity: purity bin unreachable within retry budget");
}

namespace {

struct CutPlan {
    std::vector<size_t> separable;  // qubits whose single-qubit cut must stay PPT
    std::vector<size_t> entangled;  // qubits whose single-qubit cut must be NPT
};

CutPlan cut_plan(size_t n_qubits, ClassId label) {
    if (n_qubits == 2) {
        if (label == class_id(TwoQubitClass::Sep)) {
            return {{0}, {}};
        }
        return {{}, {0}};
    }
    switch (static_cast<ThreeQubitClass>(label)) {
        case ThreeQubitClass::Sep:
            return {{0, 1, 2}, {}};
        case ThreeQubitClass::AB_C:
            return {{2}, {0, 1}};
        case ThreeQubitClass::A_BC:
            return {{0}, {1, 2}};
        case ThreeQubitClass::AC_B:
            return {{1}, {0, 2}};
        case ThreeQubitClass::ABC:
            return {{}, {0, 1, 2}};
    }
    throw std::out_of_range("unknown three-qubit class");
}

TermFactory term_factory(size_t n_qubits, ClassId label, GeneratorMode mode) {
    auto pure1 = [](Rng &rng) {
        return random_pure_state(1, rng);
    };
    auto pure2 = [](Rng &rng) {
        return random_pure_state(2, rng);
    };
    if (n_qubits == 2) {
        if (label == class_id(TwoQubitClass::Sep)) {
            return [mode](Rng &rng) {
                auto a = random_density_matrix(1, mode, rng);
                auto b = random_density_matrix(1, mode, rng);
                return tensor_product(a.matrix(), b.matrix());
            };
        }
        return [=](Rng &rng) {
            return pure2(rng).projector();
        };
    }
    switch (static_cast<ThreeQubitClass>(label)) {
        case ThreeQubitClass::Sep:
            return [=](Rng &rng) {
                auto a = pure1(rng);
                auto b = pure1(rng);
                auto c = pure1(rng);
                return a.tensor(b).tensor(c).projector();
            };
        case ThreeQubitClass::AB_C:
            return [=](Rng &rng) {
                auto ab = pure2(rng);
                auto c = pure1(rng);
                return ab.tensor(c).projector();
            };
        case ThreeQubitClass::A_BC:
            return [=](Rng &rng) {
                auto a = pure1(rng);
                auto bc = pure2(rng);
                return a.tensor(bc).projector();
            };
        case ThreeQubitClass::AC_B:
            return [=](Rng &rng) {
                auto ac = pure2(rng);
                auto b = pure1(rng);
                return interleave_ac_b(ac, b).projector();
            };
        case ThreeQubitClass::ABC:
            return [](Rng &rng) {
                std::uniform_int_distribution<int> pick(0, 2);
                auto kind = static_cast<SpecialKind>(pick(rng));
                return apply_random_local_unitaries(special_state(kind, rng), rng).projector();
            };
    }
    throw std::out_of_range("unknown three-qubit class");
}

bool single_cut_ppt(const DensityMatrix &rho, size_t qubit) {
    return min_pt_eigenvalue(rho, Cut{{qubit}}) >= -kPsdTol;
}

bool single_cut_npt(const DensityMatrix &rho, size_t qubit) {
    return min_pt_eigenvalue(rho, Cut{{qubit}}) < kPtNegativeThreshold;
}

}  // namespace

LabeledState generate_class(ClassId label, const GenSpec &spec, Rng &rng) {
    spec.validate();
    if (label >= class_count(spec.n_qubits)) {
        throw std::invalid_argument("generate_class: class id out of range for qubit count");
    }
    auto factory = term_factory(spec.n_qubits, label, spec.mode);
    auto plan = cut_plan(spec.n_qubits, label);
    double min_nonzero = spec.effective_nonzero_fraction();

    for (size_t attempt = 0; attempt < spec.retry_budget; attempt++) {
        auto draw = draw_mixture(factory, spec.m_min, spec.m_max, rng);
        double p = purity(draw.matrix);
        if (spec.target_purity && !spec.target_purity->contains(p)) {
            continue;
        }
        if (min_nonzero > 0 && nonzero_fraction(draw.matrix) < min_nonzero) {
            continue;
        }
        DensityMatrix rho(std::move(draw.matrix));

        std::optional<double> eof;
        if (spec.n_qubits == 2) {
            eof = eof_two_qubit(rho);
            bool want_entangled = label == class_id(TwoQubitClass::Ent);
            if (label_from_eof(*eof).entangled != want_entangled) {
                continue;
            }
        } else {
            // Separable cuts hold by construction; only entanglement can wash out.
            bool ok = std::all_of(plan.entangled.begin(), plan.entangled.end(), [&](size_t q) {
                return single_cut_npt(rho, q);
            });
            if (!ok) {
                continue;
            }
        }
        return LabeledState{
            std::move(rho),
            label,
            eof,
            p,
            static_cast<uint32_t>(draw.m),
            0,
        };
    }
    throw RetryBudgetExceeded(
        "generate_class: could not produce a " + class_name(spec.n_qubits, label) + " state within " +
        std::to_string(spec.retry_budget) + " attempts");
}

AuditReport audit_records(std::span<const LabeledState> records, size_t n_qubits, size_t sample) {
    AuditReport report;
    if (records.empty() || sample == 0) {
        return report;
    }
    size_t stride = std::max<size_t>(1, records.size() / sample);
    auto fail = [&](size_t index, const std::string &what) {
        report.violations++;
        report.messages.push_back("record " + std::to_string(index) + ": " + what);
    };
    for (size_t index = 0; index < records.size() && report.checked < sample; index += stride) {
        const auto &rec = records[index];
        report.checked++;
        try {
            DensityMatrix recheck(rec.rho.matrix());
            (void)recheck;
        } catch (const InvalidState &e) {
            fail(index, e.what());
            continue;
        }
        if (rec.rho.n_qubits() != n_qubits) {
            fail(index, "qubit count mismatch");
            continue;
        }
        if (std::abs(purity(rec.rho) - rec.purity) > 1e-10) {
            fail(index, "stored purity disagrees with recomputed purity");
        }
        auto plan = cut_plan(n_qubits, rec.label);
        for (size_t q : plan.separable) {
            if (!single_cut_ppt(rec.rho, q)) {
                fail(index, class_name(n_qubits, rec.label) + " state is NPT across a separable cut");
            }
        }
        for (size_t q : plan.entangled) {
            if (!single_cut_npt(rec.rho, q)) {
                fail(index, class_name(n_qubits, rec.label) + " state is PPT across an entangled cut");
            }
        }
        if (n_qubits == 2) {
            double eof = eof_two_qubit(rec.rho);
            bool entangled = label_from_eof(eof).entangled;
            if (entangled != (rec.label == class_id(TwoQubitClass::Ent))) {
                fail(index, "EoF label disagrees with class");
            }
        }
    }
    return report;
}

Dataset build_dataset(const GenSpec &spec, size_t threads) {
    spec.validate();
    size_t k = class_count(spec.n_qubits);
    size_t total = k * spec.count_per_class;
    std::vector<std::optional<LabeledState>> slots(total);

    detail::parallel_for(total, threads, [&](size_t job) {
        auto label = static_cast<ClassId>(job / spec.count_per_class);
        size_t index = job % spec.count_per_class;
        uint64_t seed = derive_seed(spec.seed, label, index);
        Rng rng(seed);
        auto rec = generate_class(label, spec, rng);
        rec.seed_used = seed;
        slots[job].emplace(std::move(rec));
    });

    std::vector<size_t> order(total);
    for (size_t i = 0; i < total; i++) {
        order[i] = i;
    }
    Rng shuffle_rng(derive_seed(spec.seed, 0x5348554646ULL));
    std::shuffle(order.begin(), order.end(), shuffle_rng);

    Dataset out;
    out.n_qubits = spec.n_qubits;
    out.records.reserve(total);
    for (size_t i : order) {
        out.records.push_back(std::move(*slots[i]));
    }
    out.audit = audit_records(out.records, spec.n_qubits);
    if (out.audit.violations > 0) {
        throw InvalidState("build_dataset: construction audit failed: " + out.audit.messages.front());
    }
    return out;
}

}  // namespace xpooky
