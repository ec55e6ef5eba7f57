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

#ifndef NOPABELL_TOOLS_CLI_HPP_
#define NOPABELL_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>

namespace nopabell::cli {

inline constexpr const char* kVersion = "0.1.0";

// Full command-line entry point, separated from main() so tests can drive
// it in-process.  Writes results to `out` (unless --out redirects them to a
// file) and a single machine-parseable JSON line to `err` on failure.
// Returns 0 on success, 1 when a computation/verification fails, 2 on
// unusable arguments.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

// Parses an angle given as decimal radians ("0.7853981") or a rational
// multiple of pi ("pi/4", "-3pi/4", "2*pi/3", "pi").  Throws
// InvalidParameter when the text matches neither form.
double parse_angle(const std::string& text);

}  // namespace nopabell::cli

#endif  // NOPABELL_TOOLS_CLI_HPP_
