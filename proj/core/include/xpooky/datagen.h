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

#ifndef XPOOKY_DATAGEN_H
#define XPOOKY_DATAGEN_H

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "xpooky/qcore.h"
#include "xpooky/rng.h"

namespace xpooky {

using ClassId = std::uint8_t;

enum class TwoQubitClass : ClassId { Sep = 0, Ent = 1 };
enum class ThreeQubitClass : ClassId { Sep = 0, AB_C = 1, A_BC = 2, AC_B = 3, ABC = 4 };

constexpr ClassId class_id(TwoQubitClass c) {
    return static_cast<ClassId>(c);
}
constexpr ClassId class_id(ThreeQubitClass c) {
    return static_cast<ClassId>(c);
}

/// sum_{i=2}^{N} C(N, i): the number of entangled partition types.
size_t partition_count(size_t n_qubits);
/// 2 for two qubits, 1 + partition_count(3) = 5 for three.
size_t class_count(size_t n_qubits);
std::string class_name(size_t n_qubits, ClassId id);

enum class GeneratorMode { PsdGuaranteed, PaperLiteral };

std::string to_string(GeneratorMode mode);
GeneratorMode generator_mode_from_string(const std::string &text);

struct PurityBin {
    double center = 1.0;
    double half_width = 0.02;

    bool contains(double p) const {
        return p >= center - half_width && p <= center + half_width;
    }
};

struct GenSpec {
    size_t n_qubits = 2;
    size_t count_per_class = 100;
    /// Number of mixture terms is drawn uniformly from [m_min, m_max].
    size_t m_min = 1;
    size_t m_max = 10;
    std::optional<PurityBin> target_purity;
    /// Minimum fraction of entries with modulus > 1e-8. Unset means 0.75 for
    /// two qubits and no regulation for three.
    std::optional<double> nonzero_fraction;
    uint64_t seed = 0;
    GeneratorMode mode = GeneratorMode::PsdGuaranteed;
    /// Rejection attempts allowed per record.
    size_t retry_budget = 100000;

    double effective_nonzero_fraction() const;
    /// Throws std::invalid_argument on inconsistent fields.
    void validate() const;
};

void to_json(nlohmann::json &j, const GenSpec &spec);
void from_json(const nlohmann::json &j, GenSpec &spec);

struct LabeledState {
    DensityMatrix rho;
    ClassId label;
    /// EoF in bits; two-qubit records only.
    std::optional<double> eof;
    double purity;
    uint32_t m_used;
    uint64_t seed_used;
};

StateVector random_pure_state(size_t n_qubits, Rng &rng);

/// PsdGuaranteed: M M^dag / Tr for a complex Gaussian M.
/// PaperLiteral: H = M + M^dag, redrawn until PSD with positive trace, then
/// H / Tr(H). Throws RetryBudgetExceeded after 1e5 draws.
DensityMatrix random_density_matrix(size_t n_qubits, GeneratorMode mode, Rng &rng);

/// 2x2 Haar-random unitary.
ComplexMatrix random_unitary_2x2(Rng &rng);

/// Flat Dirichlet draw on the (m-1)-simplex.
std::vector<double> dirichlet_weights(size_t m, Rng &rng);

using TermFactory = std::function<ComplexMatrix(Rng &)>;

/// sum_i weights[i] * terms[i], renormalized to unit trace.
DensityMatrix mix_terms(std::span<const ComplexMatrix> terms, std::span<const double> weights);

/// rho = sum_i lambda_i * factory(rng) for the given m and weights.
DensityMatrix mix_to_purity(const TermFactory &factory, size_t m, std::span<const double> weights, Rng &rng);

/// Redraws (m, weights, terms) with m uniform in [m_min, m_max] and flat
/// Dirichlet weights until the purity falls in `target`.
DensityMatrix mix_to_purity(
    const TermFactory &factory, size_t m_min, size_t m_max, const PurityBin &target, Rng &rng, size_t budget,
    size_t *m_used = nullptr);

enum class SpecialKind { GHZ, W, Graph };

/// GHZ-family parameters. `epsilon` is the mixing angle written as both
/// epsilon and delta; theta/phi_x parametrize the product state |Phi_ABC>.
struct GhzParams {
    double epsilon;
    double phi;
    std::array<double, 3> theta;
    std::array<double, 3> local_phase;
};

/// W-family: a|001> + b|010> + c|100> - d|phi>, with |phi> a superposition of
/// |000>, |011>, |101>, |110>, |111> given by `remainder` (normalized internally).
struct WParams {
    Complex a, b, c, d;
    std::array<Complex, 5> remainder;
};

StateVector ghz_state(const GhzParams &params);
StateVector w_state(const WParams &params);
/// Amplitudes alpha_0..alpha_7 with the sign pattern (+,+,+,-,+,+,-,+).
StateVector graph_state(const std::array<double, 8> &alpha);

GhzParams random_ghz_params(Rng &rng);
WParams random_w_params(Rng &rng);
std::array<double, 8> random_graph_alphas(Rng &rng);
StateVector special_state(SpecialKind kind, Rng &rng);

/// (U_A (x) U_B (x) U_C) |psi> with independent Haar-random single-qubit unitaries.
StateVector apply_random_local_unitaries(const StateVector &psi, Rng &rng);

/// |psi_AC> = [a0 a1 a2 a3] (A major) and |psi_B> = [b0 b1] interleaved so
/// that the result lives on A,B,C: [a0b0 a1b0 a0b1 a1b1 a2b0 a3b0 a2b1 a3b1].
StateVector interleave_ac_b(const StateVector &psi_ac, const StateVector &psi_b);

/// One record of the given class. Throws RetryBudgetExceeded when the class
/// acceptance test, purity bin or nonzero regulation cannot be met.
LabeledState generate_class(ClassId label, const GenSpec &spec, Rng &rng);

struct AuditReport {
    size_t checked = 0;
    size_t violations = 0;
    std::vector<std::string> messages;
};

/// Class-soundness audit via partial-transpose spectra on up to `sample`
/// records spread across the list.
AuditReport audit_records(std::span<const LabeledState> records, size_t n_qubits, size_t sample = 100);

struct Dataset {
    size_t n_qubits = 2;
    std::vector<LabeledState> records;
    AuditReport audit;
};

/// Balanced dataset with exactly `count_per_class` records per class, each
/// generated from seed derive_seed(spec.seed, class, index), then shuffled
/// with spec.seed. `threads` only affects wall time, never the output.
/// Throws if the construction audit finds a violation.
Dataset build_dataset(const GenSpec &spec, size_t threads = 1);

}  // namespace xpooky

#endif
