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

#ifndef XPOOKY_ERRORS_H
#define XPOOKY_ERRORS_H

#include <stdexcept>
#include <string>

namespace xpooky {

/// Operand dimensions disagree (matrix sizes, subsystem dims, tensor shapes).
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A matrix failed Hermiticity, trace or positivity checks.
struct InvalidState : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A rejection sampler ran out of attempts.
struct RetryBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed, truncated, corrupted or unsupported file.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace xpooky

#endif
