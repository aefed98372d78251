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

#ifndef XPOOKY_DATASET_IO_H
#define XPOOKY_DATASET_IO_H

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "xpooky/datagen.h"

namespace xpooky {

/// Binary dataset layout (all integers and floats little-endian):
///
///   "XPKY" | u16 version | u8 n_qubits | u64 record_count
///   record_count x { 2^N x 2^N x (f64 re, f64 im) row-major | u8 class |
///                    f64 eof (NaN if absent) | f64 purity | u64 seed }
///   manifest: UTF-8 JSON text running to end of file
///
/// The manifest carries "checksum" (FNV-1a 64 over every byte before the
/// manifest, as hex), "basis_order", "m_used" per record, and whatever
/// provenance the writer passes in (GenSpec echo under "genspec").
inline constexpr uint16_t kDatasetVersion = 1;

struct DatasetFile {
    size_t n_qubits = 2;
    std::vector<LabeledState> records;
    nlohmann::json manifest;
};

std::vector<uint8_t> serialize_dataset(
    std::span<const LabeledState> records, size_t n_qubits, const nlohmann::json &provenance);
DatasetFile parse_dataset(std::span<const uint8_t> bytes);

/// Returns the payload checksum.
uint64_t write_dataset(
    const std::filesystem::path &path, std::span<const LabeledState> records, size_t n_qubits,
    const nlohmann::json &provenance = nlohmann::json::object());
DatasetFile read_dataset(const std::filesystem::path &path);

std::vector<uint8_t> read_file_bytes(const std::filesystem::path &path);
void write_file_bytes(const std::filesystem::path &path, std::span<const uint8_t> bytes);

}  // namespace xpooky

#endif
