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

#include "xpooky/encoding.h"

#include <gtest/gtest.h>

#include <filesystem>

#include "test_util.h"
#include "xpooky/dataset_io.h"
#include "xpooky/errors.h"

using namespace xpooky;
using namespace xpooky::testing;

TEST(extended_tensor, maximally_mixed_qubit) {
    auto t = to_extended_tensor(DensityMatrix(0.5 * ComplexMatrix::identity(2)));
    std::vector<double> expected{0.5, 0, 0, 0, 0, 0, 0.5, 0};
    EXPECT_EQ(t.data, expected);
}

TEST(extended_tensor, definitional_mapping) {
    ComplexMatrix m(2);
    m(0, 0) = 0.5;
    m(1, 1) = 0.5;
    m(0, 1) = Complex(0.1, 0.2);
    m(1, 0) = Complex(0.1, -0.2);
    auto t = to_extended_tensor(DensityMatrix(m));
    EXPECT_EQ(t.at(0, 1, 0), 0.1);
    EXPECT_EQ(t.at(0, 1, 1), 0.2);
}

TEST(extended_tensor, lossless_round_trip_and_symmetry) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 100; t++) {
        DensityMatrix rho(wishart_state(t % 2 ? 4 : 8, rng));
        auto x = to_extended_tensor(rho);
        EXPECT_EQ(from_extended_tensor(x), rho.matrix());
        for (size_t i = 0; i < x.rows; i++) {
            for (size_t j = 0; j < x.cols; j++) {
                EXPECT_NEAR(x.at(i, j, 0), x.at(j, i, 0), 1e-12);
                EXPECT_NEAR(x.at(i, j, 1), -x.at(j, i, 1), 1e-12);
            }
        }
    }
}

TEST(pauli_index, codes_and_labels) {
    auto v = PauliIndex::from_label("XY");
    EXPECT_EQ(v.code(), 1u * 4 + 2);
    EXPECT_EQ(PauliIndex::from_code(6, 2), v);
    EXPECT_EQ(PauliIndex::from_code(27, 3).label(), "XYZ");
    EXPECT_TRUE(PauliIndex::from_label("II").is_identity());
    EXPECT_EQ(all_pauli_indices(3).size(), 64u);
    EXPECT_EQ(v.matrix(), tensor_product(pauli(1), pauli(2)));
}

TEST(pauli_coefficients, maximally_mixed) {
    auto c = pauli_coefficients(DensityMatrix(0.25 * ComplexMatrix::identity(4)));
    ASSERT_EQ(c.size(), 16u);
    EXPECT_NEAR(c[0], 1.0, 1e-15);
    for (size_t k = 1; k < 16; k++) {
        EXPECT_NEAR(c[k], 0.0, 1e-15);
    }
}

TEST(pauli_coefficients, single_qubit_zero) {
    auto c = pauli_coefficients(DensityMatrix::from_pure(basis_state(2, 0)));
    std::vector<double> expected{1, 0, 0, 1};
    for (size_t k = 0; k < 4; k++) {
        EXPECT_NEAR(c[k], expected[k], 1e-15);
    }
}

TEST(pauli_coefficients, bell_against_direct_trace) {
    auto rho = DensityMatrix::from_pure(bell_phi_plus());
    auto c = pauli_coefficients(rho);
    auto e = to_eigen(rho.matrix());
    for (const auto &v : all_pauli_indices(2)) {
        double direct = (to_eigen(v.matrix()) * e).trace().real();
        EXPECT_NEAR(c[v.code()], direct, 1e-15) << v.label();
    }
    EXPECT_NEAR(c[PauliIndex::from_label("XX").code()], 1, 1e-15);
    EXPECT_NEAR(c[PauliIndex::from_label("YY").code()], -1, 1e-15);
    EXPECT_NEAR(c[PauliIndex::from_label("ZZ").code()], 1, 1e-15);
    EXPECT_NEAR(c[PauliIndex::from_label("XY").code()], 0, 1e-15);
}

TEST(pauli_coefficients, bounded_and_complete) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 200; t++) {
        size_t n = t % 2 ? 2 : 3;
        DensityMatrix rho(wishart_state(size_t{1} << n, rng));
        auto c = pauli_coefficients(rho);
        for (double x : c) {
            EXPECT_LE(std::abs(x), 1.0 + 1e-12);
        }
        EXPECT_LT(max_abs_diff(reconstruct_from_pauli(c, n), rho.matrix()), 1e-12);
    }
}

TEST(incomplete_density, empty_set_is_identity) {
    std::mt19937_64 rng(3);
    DensityMatrix rho(wishart_state(4, rng));
    EXPECT_LT(max_abs_diff(incomplete_density(rho, {}), rho.matrix()), 1e-15);
}

TEST(incomplete_density, dropping_everything_but_identity) {
    std::mt19937_64 rng(4);
    DensityMatrix rho(wishart_state(4, rng));
    std::set<PauliIndex> ignored;
    for (const auto &v : all_pauli_indices(2)) {
        if (!v.is_identity()) {
            ignored.insert(v);
        }
    }
    EXPECT_LT(max_abs_diff(incomplete_density(rho, ignored), 0.25 * ComplexMatrix::identity(4)), 1e-15);
}

TEST(incomplete_density, bell_without_yy) {
    auto rho = DensityMatrix::from_pure(bell_phi_plus());
    auto yy = PauliIndex::from_label("YY");
    auto out = incomplete_density(rho, {yy});
    auto expected = rho.matrix() + 0.25 * yy.matrix();
    EXPECT_LT(max_abs_diff(out, expected), 1e-15);
    EXPECT_TRUE(out.is_hermitian());
}

TEST(incomplete_density, identity_term_guard) {
    auto rho = DensityMatrix::from_pure(bell_phi_plus());
    EXPECT_THROW(incomplete_density(rho, {PauliIndex::from_label("II")}), std::invalid_argument);
    auto out = incomplete_density(rho, {PauliIndex::from_label("II")}, true);
    EXPECT_NEAR(std::abs(out.trace()), 0.0, 1e-15);
}

TEST(incomplete_density, unit_trace_when_identity_kept) {
    std::mt19937_64 rng(5);
    Rng pick(5);
    for (int t = 0; t < 50; t++) {
        DensityMatrix rho(wishart_state(8, rng));
        std::set<PauliIndex> ignored;
        for (uint32_t code = 1; code < 64; code++) {
            if (pick() % 2) {
                ignored.insert(PauliIndex::from_code(code, 3));
            }
        }
        EXPECT_NEAR(std::abs(incomplete_density(rho, ignored).trace() - 1.0), 0.0, 1e-12);
    }
}

namespace {

std::vector<LabeledState> sample_records(size_t n, size_t n_qubits) {
    GenSpec spec;
    spec.n_qubits = n_qubits;
    spec.count_per_class = n / class_count(n_qubits);
    spec.seed = 31;
    return build_dataset(spec).records;
}

void expect_same(const LabeledState &a, const LabeledState &b) {
    EXPECT_EQ(a.rho.matrix(), b.rho.matrix());
    EXPECT_EQ(a.label, b.label);
    EXPECT_EQ(a.eof.has_value(), b.eof.has_value());
    if (a.eof && b.eof) {
        EXPECT_EQ(*a.eof, *b.eof);
    }
    EXPECT_EQ(a.purity, b.purity);
    EXPECT_EQ(a.m_used, b.m_used);
    EXPECT_EQ(a.seed_used, b.seed_used);
}

}  // namespace

TEST(dataset_io, round_trip_two_hundred_records) {
    auto records = sample_records(200, 2);
    auto path = std::filesystem::temp_directory_path() / "xpooky_io_test.xpky";
    write_dataset(path, records, 2, {{"note", "test"}});
    auto file = read_dataset(path);
    std::filesystem::remove(path);
    ASSERT_EQ(file.records.size(), 200u);
    EXPECT_EQ(file.n_qubits, 2u);
    for (size_t k = 0; k < 200; k++) {
        expect_same(records[k], file.records[k]);
    }
    EXPECT_EQ(file.manifest["note"], "test");
}

TEST(dataset_io, three_qubit_round_trip_is_byte_stable) {
    auto records = sample_records(25, 3);
    auto bytes = serialize_dataset(records, 3, nlohmann::json::object());
    auto file = parse_dataset(bytes);
    EXPECT_EQ(serialize_dataset(file.records, 3, nlohmann::json::object()), bytes);
    EXPECT_FALSE(file.records[0].eof.has_value());
}

TEST(dataset_io, header_layout) {
    auto records = sample_records(2, 2);
    auto bytes = serialize_dataset(records, 2, nlohmann::json::object());
    EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "XPKY");
    EXPECT_EQ(bytes[4] | (bytes[5] << 8), 1);
    EXPECT_EQ(bytes[6], 2);
    EXPECT_EQ(bytes[7], 2);
    // First entry of the first record: real part of rho_00 as a little-endian f64.
    uint64_t bits = 0;
    for (int k = 0; k < 8; k++) {
        bits |= static_cast<uint64_t>(bytes[15 + k]) << (8 * k);
    }
    EXPECT_EQ(std::bit_cast<double>(bits), records[0].rho(0, 0).real());
}

TEST(dataset_io, flipped_payload_byte_fails_checksum) {
    auto records = sample_records(10, 2);
    auto bytes = serialize_dataset(records, 2, nlohmann::json::object());
    bytes[40] ^= 0x01;
    EXPECT_THROW(parse_dataset(bytes), FormatError);
}

TEST(dataset_io, rejects_bad_magic_version_and_truncation) {
    auto records = sample_records(10, 2);
    auto bytes = serialize_dataset(records, 2, nlohmann::json::object());
    auto bad_magic = bytes;
    bad_magic[0] = 'Q';
    EXPECT_THROW(parse_dataset(bad_magic), FormatError);
    auto bad_version = bytes;
    bad_version[4] = 9;
    EXPECT_THROW(parse_dataset(bad_version), FormatError);
    std::vector<uint8_t> truncated(bytes.begin(), bytes.begin() + 100);
    EXPECT_THROW(parse_dataset(truncated), FormatError);
}

TEST(dataset_io, empty_record_list) {
    auto bytes = serialize_dataset({}, 2, nlohmann::json::object());
    auto file = parse_dataset(bytes);
    EXPECT_TRUE(file.records.empty());
    EXPECT_EQ(file.manifest["record_count"], 0);
}

TEST(dataset_io, records_stay_valid_after_reload) {
    auto records = sample_records(100, 3);
    auto file = parse_dataset(serialize_dataset(records, 3, nlohmann::json::object()));
    for (const auto &r : file.records) {
        EXPECT_NO_THROW(DensityMatrix{r.rho.matrix()});
        EXPECT_NEAR(purity(r.rho), r.purity, 1e-10);
    }
}
