// Copyright 2026 The activeshadow Authors
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

namespace asd {

/// Full command-line entry point (argument parsing, scenario runs, file
/// output). Factored out of main() so tests can drive the binary in-process.
/// Returns the process exit status: 0 success, 1 usage/validation error,
/// 2 constraint violations or infeasible samples without --allow-violations.
int run_cli(int argc, const char* const* argv);

}  // namespace asd
