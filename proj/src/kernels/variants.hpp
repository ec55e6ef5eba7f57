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

// Internal: hooks the SIMD translation units into the dispatcher.

#pragma once

#include "nopabell/kernels.hpp"

namespace nopabell::kernels {

// The AVX2 kernel table, or null when the build target is not x86-64 or
// the running CPU lacks AVX2 support.
const Ops* avx2_ops();

}  // namespace nopabell::kernels
