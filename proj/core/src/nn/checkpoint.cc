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

#include "xpooky/nn/checkpoint.h"

#include <cstring>

#include "../byte_io.h"
#include "xpooky/checksum.h"
#include "xpooky/dataset_io.h"
#include "xpooky/errors.h"

namespace xpooky::nn {

namespace {

constexpr char kMagic[4] = {'X', 'P', 'K', 'M'};

void write_spec_and_params(detail::ByteWriter &w, const Model &model) {
    auto spec = nlohmann::json(model.spec()).dump();
    w.le<uint32_t>(static_cast<uint32_t>(spec.size()));
    w.bytes(spec.data(), spec.size());
    w.le<uint64_t>(model.param_count());
    for (double p : model.params()) {
        w.le<double>(p);
    }
}

}  // namespace

std::vector<uint8_t> serialize_checkpoint(const Model &model, const nlohmann::json &manifest) {
    detail::ByteWriter w;
    w.bytes(kMagic, 4);
    w.le<uint16_t>(kCheckpointVersion);
    write_spec_and_params(w, model);
    auto text = (manifest.is_null() ? nlohmann::json::object() : manifest).dump();
    w.le<uint32_t>(static_cast<uint32_t>(text.size()));
    w.bytes(text.data(), text.size());
    w.le<uint64_t>(fnv1a64(w.buffer()));
    return std::move(w.buffer());
}

Checkpoint parse_checkpoint(std::span<const uint8_t> bytes) {
    if (bytes.size() < 8) {
        throw FormatError("model file is truncated");
    }
    detail::ByteReader tail(bytes.last(8), "model file");
    if (tail.le<uint64_t>() != fnv1a64(bytes.first(bytes.size() - 8))) {
        throw FormatError("model file checksum mismatch");
    }
    detail::ByteReader r(bytes.first(bytes.size() - 8), "model file");
    char magic[4];
    r.bytes(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0) {
        throw FormatError("not an XPKM model file (bad magic)");
    }
    auto version = r.le<uint16_t>();
    if (version != kCheckpointVersion) {
        throw FormatError("unsupported model file version " + std::to_string(version));
    }
    ModelSpec spec;
    try {
        spec = nlohmann::json::parse(r.string(r.le<uint32_t>())).get<ModelSpec>();
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(std::string("model spec is not valid: ") + e.what());
    }
    Model model(std::move(spec));
    auto count = r.le<uint64_t>();
    if (count != model.param_count()) {
        throw FormatError("model file holds " + std::to_string(count) + " parameters but its spec needs " +
                          std::to_string(model.param_count()));
    }
    for (auto &p : model.params()) {
        p = r.le<double>();
    }
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(r.string(r.le<uint32_t>()));
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(std::string("model manifest is not valid JSON: ") + e.what());
    }
    if (r.remaining() != 0) {
        throw FormatError("model file has trailing bytes");
    }
    return Checkpoint{std::move(model), std::move(manifest)};
}

void save_checkpoint(const std::filesystem::path &path, const Model &model, const nlohmann::json &manifest) {
    write_file_bytes(path, serialize_checkpoint(model, manifest));
}

Checkpoint load_checkpoint(const std::filesystem::path &path) {
    return parse_checkpoint(read_file_bytes(path));
}

uint64_t model_checksum(const Model &model) {
    detail::ByteWriter w;
    write_spec_and_params(w, model);
    return fnv1a64(w.buffer());
}

}  // namespace xpooky::nn
