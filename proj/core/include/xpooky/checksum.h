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

#ifndef XPOOKY_CHECKSUM_H
#define XPOOKY_CHECKSUM_H

#include <cstdint>
#include <span>
#include <string>

namespace xpooky {

/// 64-bit FNV-1a.
uint64_t fnv1a64(std::span<const uint8_t> bytes, uint64_t state = 0xcbf29ce484222325ULL);

/// Sixteen lowercase hex digits.
std::string hex64(uint64_t value);

}  // namespace xpooky

#endif
