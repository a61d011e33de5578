// Copyright 2026 The m2o Authors
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

#include <iosfwd>
#include <string>
#include <vector>

namespace m2o::cli {

inline constexpr int kExitOk = 0;
/// Input that cannot be processed: bad market file, wrong dimension,
/// point outside the required set, size cap exceeded.
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`. Output is deterministic for identical inputs.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace m2o::cli
