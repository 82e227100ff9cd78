// Copyright 2026 The qperf authors
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

#include <stdexcept>
#include <string>

namespace qperf {

/// Invalid argument or inconsistent configuration supplied by the caller.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Input violates a structural contract (non-native op, non-unitary matrix...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Resource limit exceeded (simulator width cap, backend size).
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Routing is impossible on the given coupling map.
struct RoutingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Network-level failure talking to a remote backend.
struct TransportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qperf
