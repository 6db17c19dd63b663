#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2025-2026 The sealsim Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

// Command-line front end: `run` (simulate + settle a mission), `sweep`
// (parameter sweeps across schemes, long-format CSV), `verify` (randomized
// property suites). Exit codes: 0 success, 1 property/test failure, 2 usage
// or configuration error.

#include <string>
#include <vector>

namespace seal::cli {

int run_main(int argc, const char *const *argv);

// Same entry point for in-process callers; `args` excludes the program name.
int run_main(const std::vector<std::string> &args);

}  // namespace seal::cli
