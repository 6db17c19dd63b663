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

// One hover location, fully instantiated: the tasks to place, the vehicles in
// coverage (spawned to steady state or replayed from a trace), their truthful
// take-it-or-leave-it quotes, and the physical/market parameters every scheme
// shares. Deterministic in (config, seed, location index).

#include <cstdint>
#include <map>
#include <vector>

#include "seal/auction.hpp"
#include "seal/config.hpp"
#include "seal/cost.hpp"
#include "seal/mobility.hpp"
#include "seal/rng.hpp"

namespace seal::scenario {

struct Scenario {
  std::vector<cost::TaskSpec> tasks;
  std::vector<mobility::VehicleState> vehicles;
  std::map<int, auction::CombinatorialBid> bids;  // truthful quotes
  std::map<int, auction::BidderEnv> env;
  std::map<int, double> unit_cost;   // vehicle id -> currency per cycle/s
  std::map<int, double> fixed_cost;  // vehicle id -> currency

  auction::AuctionParams params;
  cost::CloudParams cloud;
  double cloud_link_bps = 0.0;
  double fog_unit_cost_si = 0.0;
  double fog_rate_cps = 0.0;
  double local_rate_cps = 0.0;
  double leg_length_m = 0.0;
  double flight_speed_mps = 0.0;
  double uav_speed_min_mps = 0.0;
  double uav_speed_max_mps = 0.0;
};

// Per-vehicle truthful quote construction: for each task, the minimum rate
// that meets min(deadline, dwell) after transmission, padded by a uniform
// headroom factor and capped at the vehicle's idle capacity; price is the
// provisioning cost (unit_cost * rate + fixed_cost). The bundle keeps the
// highest-priority tasks that fit the capacity budget.
auction::CombinatorialBid truthful_bid(const std::vector<cost::TaskSpec> &tasks,
                                       const mobility::VehicleState &vehicle,
                                       double dwell_s, double headroom_max, Rng &rng);

Scenario build_scenario(const config::Config &cfg, std::uint64_t seed,
                        int location_index = 0);

// Test hook: rebuild quotes/env from an explicit vehicle list, keeping the
// scenario's task list and parameters.
void force_bidders(Scenario &s, const std::vector<mobility::VehicleState> &vehicles,
                   const config::Config &cfg, std::uint64_t seed);

}  // namespace seal::scenario
