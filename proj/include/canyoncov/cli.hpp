// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The canyoncov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CANYONCOV_CLI_HPP
#define CANYONCOV_CLI_HPP

#include <iosfwd>

namespace canyoncov::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kConfig = 2,
    kInput = 3,
    kDomain = 4,
    kFit = 5,
    kOutput = 6,
    kInternal = 7,
};

// Entry point of the canyoncov tool; stdout/stderr are injected for tests.
// Errors are reported as one line on `err`:
//   error: code=<name> exit=<n> message="<text>"
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace canyoncov::cli

#endif
