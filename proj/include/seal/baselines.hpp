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

// Comparison schemes sharing one scenario: the auction-based allocator plus
// greedy single-criterion assignment (energy-only, delay-only, price-only)
// and the three structural alternatives (all-cloud, all-fog, onboard).
// Greedy schemes pay winners their asking price.

#include <cstdint>
#include <string>

#include "seal/auction.hpp"
#include "seal/scenario.hpp"

namespace seal::baselines {

enum class Scheme { kSeal, kEaa, kDaa, kPaa, kCloud, kFog, kLocal };

Scheme scheme_from_string(const std::string &name);
std::string to_string(Scheme s);
const std::vector<Scheme> &all_schemes();

struct SchemeReport {
  Scheme scheme = Scheme::kSeal;
  int tasks = 0;
  int assigned = 0;     // tasks placed on vehicles
  int cloud = 0;        // tasks falling back to the remote cloud
  double flight_speed_mps = 0.0;
  double uav_cost = 0.0;
  double energy_j = 0.0;
  double offload_energy_j = 0.0;
  double flight_energy_j = 0.0;
  double payment_sum = 0.0;
  double mean_completion_s = 0.0;
  int deadline_misses = 0;
  auction::AuctionOutcome outcome;  // empty for cloud/fog/local
};

SchemeReport run_scheme(Scheme scheme, const scenario::Scenario &s, std::uint64_t seed);

}  // namespace seal::baselines
