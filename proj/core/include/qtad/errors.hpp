// Copyright 2026 The qtad Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qtad {

/// Base class for all qtad errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A vector with (near-)zero norm was asked to act as a state.
struct ZeroVectorError : Error {
    using Error::Error;
};

/// An operator expected to be Hermitian is not.
struct NotHermitianError : Error {
    using Error::Error;
};

/// A POVM / projective / Kraus family fails its defining algebraic checks.
struct InvalidFamilyError : Error {
    using Error::Error;
};

/// A state transition was applied to a state it cannot accept.
struct InvalidStateError : Error {
    using Error::Error;
};

/// A documented operation precondition was violated by the caller.
struct PreconditionError : Error {
    using Error::Error;
};

/// A measurement family element is not of the channel-local lifted form.
struct NotLocalError : Error {
    using Error::Error;
};

/// A statistic was requested from an empty sample.
struct InsufficientDataError : Error {
    using Error::Error;
};

/// run_round was called after the whole message had been delivered.
struct ProtocolCompleteError : Error {
    using Error::Error;
};

/// Invalid session or experiment configuration.
struct ConfigError : Error {
    using Error::Error;
};

/// I/O failure while emitting results; message carries the path.
struct IoError : Error {
    using Error::Error;
};

namespace detail {

// Always-on invariant check; these guard cheap O(dim) conditions that the
// simulation relies on (norms, probability sums, channel occupancy).
inline void check(bool ok, const std::string& what) {
    if (!ok) throw Error("invariant violated: " + what);
}

}  // namespace detail
}  // namespace qtad
