// Copyright 2026 The qpsq-lab Authors
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
#include <string_view>

namespace qpsq {

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

/// Entry point of the qpsq tool. Returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace qpsq
