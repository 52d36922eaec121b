// Copyright 2026 The sedyn Authors
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

namespace sedyn {

/// Argument outside the mathematical domain of an operation (negative coupling,
/// momentum outside [0, pi], odd chain length, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Request exceeds a configured size cap (block length, oracle chain length,
/// replica transfer dimension).
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Quadrature too coarse for the requested time.
struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input violates a structural precondition (non-antisymmetric matrix, moment
/// sums below the identity floor, wrong dimensions).
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace sedyn
