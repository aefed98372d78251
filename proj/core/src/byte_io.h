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

#ifndef XPOOKY_SRC_BYTE_IO_H
#define XPOOKY_SRC_BYTE_IO_H

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "xpooky/errors.h"

namespace xpooky::detail {

template <typename T>
using UintFor = std::conditional_t<
    sizeof(T) == 8, uint64_t,
    std::conditional_t<sizeof(T) == 4, uint32_t, std::conditional_t<sizeof(T) == 2, uint16_t, uint8_t>>>;

/// Little-endian byte sink.
class ByteWriter {
   public:
    void bytes(const void *data, size_t n) {
        auto p = static_cast<const uint8_t *>(data);
        out_.insert(out_.end(), p, p + n);
    }
    template <typename T>
    void le(T value) {
        using U = UintFor<T>;
        U bits = std::bit_cast<U>(value);
        for (size_t k = 0; k < sizeof(U); k++) {
            out_.push_back(static_cast<uint8_t>(bits >> (8 * k)));
        }
    }
    std::vector<uint8_t> &buffer() {
        return out_;
    }

   private:
    std::vector<uint8_t> out_;
};

/// Little-endian byte source; throws FormatError on truncation.
class ByteReader {
   public:
    ByteReader(std::span<const uint8_t> in, std::string what) : in_(in), what_(std::move(what)) {
    }
    void bytes(void *dst, size_t n) {
        need(n);
        std::memcpy(dst, in_.data() + pos_, n);
        pos_ += n;
    }
    template <typename T>
    T le() {
        using U = UintFor<T>;
        need(sizeof(U));
        U bits = 0;
        for (size_t k = 0; k < sizeof(U); k++) {
            bits |= static_cast<U>(static_cast<U>(in_[pos_ + k]) << (8 * k));
        }
        pos_ += sizeof(U);
        return std::bit_cast<T>(bits);
    }
    std::string string(size_t n) {
        need(n);
        std::string s(reinterpret_cast<const char *>(in_.data() + pos_), n);
        pos_ += n;
        return s;
    }
    size_t position() const {
        return pos_;
    }
    size_t remaining() const {
        return in_.size() - pos_;
    }

   private:
    void need(size_t n) const {
        if (in_.size() - pos_ < n) {
            throw FormatError(what_ + " is truncated");
        }
    }
    std::span<const uint8_t> in_;
    std::string what_;
    size_t pos_ = 0;
};

}  // namespace xpooky::detail

#endif
