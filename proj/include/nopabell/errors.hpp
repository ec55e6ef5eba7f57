// Copyright 2026 The nopa-bell Authors
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

namespace nopabell {

/// Base class for all library errors. `code()` is a stable, machine-parseable
/// identifier; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

class InvalidParameter : public Error {
public:
  explicit InvalidParameter(const std::string& message)
      : Error("invalid-parameter", message) {}
};

class DimensionMismatch : public Error {
public:
  explicit DimensionMismatch(const std::string& message)
      : Error("dimension-mismatch", message) {}
};

/// Requested grouping d does not tile the truncated space (2d does not
/// divide M); building the operator would cut a block in half.
class TruncationIncompatible : public Error {
public:
  explicit TruncationIncompatible(const std::string& message)
      : Error("truncation-incompatible", message) {}
};

/// Bit index k (or bit count d) reaches past the truncated space.
class DepthExceeded : public Error {
public:
  explicit DepthExceeded(const std::string& message)
      : Error("depth-exceeded", message) {}
};

class InternalConsistency : public Error {
public:
  explicit InternalConsistency(const std::string& message)
      : Error("internal-consistency", message) {}
};

}  // namespace nopabell
