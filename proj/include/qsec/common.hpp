// Copyright 2026 The qsec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsec {

//=========================================================================
// Error taxonomy
//=========================================================================

/// Base class of every error thrown by the toolkit.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A caller violated a precondition: mismatched dimensions, malformed
/// input, values outside their documented range.
class UsageError : public Error {
  public:
    using Error::Error;
};

/// A numerical routine could not meet its contract: an iteration failed
/// to converge, or a computed quantity drifted past its tolerance.
class NumericError : public Error {
  public:
    using Error::Error;
};

/// A request would exceed the configured size limits.
class CapacityError : public Error {
  public:
    using Error::Error;
};

//=========================================================================
// Size limits
//=========================================================================

/// Desk-scale guardrails. Dense matrices above max_dim and key ensembles
/// above max_keys are rejected with CapacityError.
struct Caps {
    std::size_t max_dim = 1024;  // 10 qubits
    std::size_t max_keys = 4096;
};

/// Process-wide limits. Configure once at startup (the CLI honors the
/// QSEC_MAX_DIM and QSEC_MAX_KEYS environment variables); not synchronized.
inline Caps& caps() {
    static Caps instance;
    return instance;
}

}  // namespace qsec
