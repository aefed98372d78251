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

#ifndef XPOOKY_NN_CHECKPOINT_H
#define XPOOKY_NN_CHECKPOINT_H

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "xpooky/nn/network.h"

namespace xpooky::nn {

/// Model file layout (little-endian):
///
///   "XPKM" | u16 version | u32 n | spec JSON (n bytes) | u64 param_count |
///   param_count x f64 | u32 m | manifest JSON (m bytes) |
///   u64 FNV-1a of every preceding byte
inline constexpr uint16_t kCheckpointVersion = 1;

struct Checkpoint {
    Model model;
    nlohmann::json manifest;
};

std::vector<uint8_t> serialize_checkpoint(const Model &model, const nlohmann::json &manifest);
/// Rejects corrupt files and parameter counts that disagree with the spec.
Checkpoint parse_checkpoint(std::span<const uint8_t> bytes);

void save_checkpoint(const std::filesystem::path &path, const Model &model,
                     const nlohmann::json &manifest = nlohmann::json::object());
Checkpoint load_checkpoint(const std::filesystem::path &path);

/// FNV-1a over the serialized spec and parameters; stable identity for a
/// trained model independent of its manifest.
uint64_t model_checksum(const Model &model);

}  // namespace xpooky::nn

#endif
