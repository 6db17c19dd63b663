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

// Randomized property suites over the auction and the exchange protocol:
// each suite replays a claimed invariant on freshly sampled instances and
// reports the first counterexample it finds. Brute-force or bisection
// re-derivations stand in as oracles wherever a closed form is under test.

#include <cstdint>
#include <string>
#include <vector>

namespace seal::verify {

struct SuiteResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  std::string counterexample;  // JSON text of the first failure, empty if none
  double elapsed_s = 0.0;

  bool passed() const { return failures == 0; }
};

// truthfulness, rationality, monotonicity, critical, fairness, privacy,
// complexity.
const std::vector<std::string> &suite_names();

// Runs one suite for `trials` independently seeded rounds. Throws
// std::invalid_argument on an unknown suite name.
SuiteResult run_suite(const std::string &name, int trials, std::uint64_t seed);

}  // namespace seal::verify
