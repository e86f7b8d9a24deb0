// Copyright 2026 The dynsteiner Authors
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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dynsteiner {

// Base for everything thrown by the library. Input problems (malformed
// metrics, traces, bad arguments) derive from InputError; violations of the
// library's own guarantees derive from InvariantFailure.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : Error {
  using Error::Error;
};

struct InvariantFailure : Error {
  using Error::Error;
};

struct TriangleViolation : InputError {
  std::int64_t u, v, w;
  TriangleViolation(std::int64_t u_, std::int64_t v_, std::int64_t w_)
      : InputError("triangle inequality violated on (" + std::to_string(u_) +
                   "," + std::to_string(v_) + "," + std::to_string(w_) + ")"),
        u(u_), v(v_), w(w_) {}
};

struct NonPositiveDistance : InputError {
  explicit NonPositiveDistance(const std::string& what) : InputError(what) {}
};

struct AsymmetricDistance : InputError {
  explicit AsymmetricDistance(const std::string& what) : InputError(what) {}
};

struct UnknownVertex : InputError {
  explicit UnknownVertex(std::int64_t id)
      : InputError("unknown vertex id " + std::to_string(id)) {}
};

struct UnknownAliveVertex : InputError {
  explicit UnknownAliveVertex(const std::string& what) : InputError(what) {}
};

struct EmptySubset : InputError {
  EmptySubset() : InputError("subset must be nonempty") {}
};

struct DuplicateId : InputError {
  explicit DuplicateId(std::int64_t id)
      : InputError("vertex id " + std::to_string(id) + " already present") {}
};

struct AlreadyDeleted : InputError {
  explicit AlreadyDeleted(std::int64_t id)
      : InputError("vertex " + std::to_string(id) + " is already deleted") {}
};

struct UnknownOrDeleted : InputError {
  explicit UnknownOrDeleted(std::int64_t id)
      : InputError("vertex " + std::to_string(id) + " is unknown or deleted") {}
};

struct TooManyTerminals : InputError {
  explicit TooManyTerminals(std::size_t n, std::size_t limit)
      : InputError("terminal set of size " + std::to_string(n) +
                   " exceeds limit " + std::to_string(limit)) {}
};

struct LevelOutOfRange : InputError {
  explicit LevelOutOfRange(int level)
      : InputError("level " + std::to_string(level) + " out of range") {}
};

struct PreconditionViolated : InputError {
  explicit PreconditionViolated(const std::string& what) : InputError(what) {}
};

struct TraceError : InputError {
  explicit TraceError(const std::string& what) : InputError(what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace dynsteiner
