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

#include "xpooky/dataset_io.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "byte_io.h"
#include "xpooky/checksum.h"
#include "xpooky/errors.h"

namespace xpooky {

namespace {

constexpr char kMagic[4] = {'X', 'P', 'K', 'Y'};

using detail::ByteReader;
using detail::ByteWriter;

}  // namespace

std::vector<uint8_t> serialize_dataset(
    std::span<const LabeledState> records, size_t n_qubits, const nlohmann::json &provenance) {
    if (n_qubits < 1 || n_qubits > 3) {
        throw std::invalid_argument("serialize_dataset: n_qubits must be 1..3");
    }
    size_t dim = size_t{1} << n_qubits;
    ByteWriter w;
    w.bytes(kMagic, 4);
    w.le<uint16_t>(kDatasetVersion);
    w.le<uint8_t>(static_cast<uint8_t>(n_qubits));
    w.le<uint64_t>(records.size());
    nlohmann::json m_used = nlohmann::json::array();
    for (const auto &rec : records) {
        if (rec.rho.dim() != dim) {
            throw DimensionMismatch("serialize_dataset: record has the wrong dimension");
        }
        for (const auto &z : rec.rho.matrix().entries()) {
            w.le<double>(z.real());
            w.le<double>(z.imag());
        }
        w.le<uint8_t>(rec.label);
        w.le<double>(rec.eof ? *rec.eof : std::numeric_limits<double>::quiet_NaN());
        w.le<double>(rec.purity);
        w.le<uint64_t>(rec.seed_used);
        m_used.push_back(rec.m_used);
    }
    uint64_t checksum = fnv1a64(w.buffer());

    nlohmann::json manifest = provenance.is_object() ? provenance : nlohmann::json::object();
    manifest["format"] = "XPKY";
    manifest["version"] = kDatasetVersion;
    manifest["n_qubits"] = n_qubits;
    manifest["record_count"] = records.size();
    manifest["basis_order"] = "qubit A is the most significant index (|q_A q_B q_C>)";
    manifest["layout"] = "row-major complex f64 pairs, little-endian";
    manifest["checksum"] = "fnv1a64:" + hex64(checksum);
    manifest["m_used"] = std::move(m_used);
    auto text = manifest.dump(2);
    w.bytes(text.data(), text.size());
    return std::move(w.buffer());
}

DatasetFile parse_dataset(std::span<const uint8_t> bytes) {
    ByteReader r(bytes, "dataset file");
    char magic[4];
    r.bytes(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0) {
        throw FormatError("not an XPKY dataset (bad magic)");
    }
    auto version = r.le<uint16_t>();
    if (version != kDatasetVersion) {
        throw FormatError("unsupported dataset version " + std::to_string(version));
    }
    DatasetFile out;
    out.n_qubits = r.le<uint8_t>();
    if (out.n_qubits < 1 || out.n_qubits > 3) {
        throw FormatError("dataset declares an unsupported qubit count");
    }
    auto count = r.le<uint64_t>();
    size_t dim = size_t{1} << out.n_qubits;
    size_t record_bytes = dim * dim * 16 + 1 + 8 + 8 + 8;
    if (count > r.remaining() / record_bytes) {
        throw FormatError("dataset file is truncated");
    }

    struct Raw {
        ComplexMatrix m;
        ClassId label;
        double eof;
        double purity;
        uint64_t seed;
    };
    std::vector<Raw> raw;
    raw.reserve(count);
    for (uint64_t k = 0; k < count; k++) {
        ComplexMatrix m(dim);
        for (auto &z : m.entries()) {
            double re = r.le<double>();
            double im = r.le<double>();
            z = Complex(re, im);
        }
        Raw rec{std::move(m), r.le<uint8_t>(), 0, 0, 0};
        rec.eof = r.le<double>();
        rec.purity = r.le<double>();
        rec.seed = r.le<uint64_t>();
        raw.push_back(std::move(rec));
    }
    size_t payload_end = r.position();
    std::string text(reinterpret_cast<const char *>(bytes.data() + payload_end), bytes.size() - payload_end);
    try {
        out.manifest = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(std::string("dataset manifest is not valid JSON: ") + e.what());
    }
    auto expected = "fnv1a64:" + hex64(fnv1a64(bytes.first(payload_end)));
    if (!out.manifest.contains("checksum") || out.manifest["checksum"] != expected) {
        throw FormatError("dataset checksum mismatch");
    }
    const auto &m_used = out.manifest.value("m_used", nlohmann::json::array());
    if (m_used.size() != count) {
        throw FormatError("dataset manifest m_used does not match record count");
    }

    out.records.reserve(count);
    for (size_t k = 0; k < raw.size(); k++) {
        auto &rec = raw[k];
        std::optional<double> eof;
        if (!std::isnan(rec.eof)) {
            eof = rec.eof;
        }
        out.records.push_back(LabeledState{
            DensityMatrix(std::move(rec.m)),
            rec.label,
            eof,
            rec.purity,
            m_used[k].get<uint32_t>(),
            rec.seed,
        });
    }
    return out;
}

std::vector<uint8_t> read_file_bytes(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    }
    return std::vector<uint8_t>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file_bytes(const std::filesystem::path &path, std::span<const uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

uint64_t write_dataset(
    const std::filesystem::path &path, std::span<const LabeledState> records, size_t n_qubits,
    const nlohmann::json &provenance) {
    auto bytes = serialize_dataset(records, n_qubits, provenance);
    write_file_bytes(path, bytes);
    // The checksum covers everything before the manifest.
    size_t dim = size_t{1} << n_qubits;
    size_t payload = 4 + 2 + 1 + 8 + records.size() * (dim * dim * 16 + 25);
    return fnv1a64(std::span<const uint8_t>(bytes).first(payload));
}

DatasetFile read_dataset(const std::filesystem::path &path) {
    return parse_dataset(read_file_bytes(path));
}

}  // namespace xpooky
