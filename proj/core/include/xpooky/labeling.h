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

#ifndef XPOOKY_LABELING_H
#define XPOOKY_LABELING_H

#include <map>
#include <string>
#include <vector>

#include "xpooky/qcore.h"

namespace xpooky {

/// EoF values above this count as entangled.
inline constexpr double kEofThreshold = 1e-9;
/// Partial-transpose eigenvalues below this count as negative.
inline constexpr double kPtNegativeThreshold = -1e-9;

/// A bipartition, named by the qubits on the side that gets transposed.
/// Qubit 0 is A (most significant).
struct Cut {
    std::vector<size_t> side;

    std::string name(size_t n_qubits) const;
    bool operator==(const Cut &) const = default;
};

/// A|B for two qubits; A|BC, B|AC, C|AB for three.
std::vector<Cut> single_qubit_cuts(size_t n_qubits);

double concurrence_two_qubit(const DensityMatrix &rho);
/// h((1 + sqrt(1 - C^2)) / 2) with h the binary entropy in bits.
double eof_from_concurrence(double c);
double eof_two_qubit(const DensityMatrix &rho);

struct TwoQubitLabel {
    bool entangled;
    double eof;
};
TwoQubitLabel label_from_eof(double eof);
TwoQubitLabel label_two_qubit(const DensityMatrix &rho);

/// Smallest eigenvalue of the partial transpose across `cut`.
double min_pt_eigenvalue(const DensityMatrix &rho, const Cut &cut);
/// Sum of |negative eigenvalues| of the partial transpose across `cut`.
double negativity(const DensityMatrix &rho, const Cut &cut);

struct EntanglementReport {
    double eof = 0;          // two-qubit only
    double concurrence = 0;  // two-qubit only
    std::map<std::string, double> negativity_by_cut;
    std::map<std::string, double> min_pt_eigenvalue_by_cut;
    bool is_entangled = false;
};

/// For two qubits `is_entangled` follows the EoF rule; for three qubits it is
/// true when any single-qubit cut has a negative partial transpose.
EntanglementReport analyze(const DensityMatrix &rho);

}  // namespace xpooky

#endif
