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

#include "seal/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "seal/units.hpp"

namespace seal::scenario {

namespace {

// Spawn long enough for arrivals and departures to balance: a few full
// coverage crossings at the density-coupled speed.
int warmup_slots(const mobility::TrafficParams &traffic) {
  const double v = mobility::avg_vehicle_speed(traffic);
  const double crossing = 2.0 * traffic.coverage_radius / v;
  return std::max(8, static_cast<int>(std::ceil(3.0 * crossing / traffic.slot_interval)));
}

}  // namespace

auction::CombinatorialBid truthful_bid(const std::vector<cost::TaskSpec> &tasks,
                                       const mobility::VehicleState &vehicle,
                                       double dwell_s, double headroom_max, Rng &rng) {
  auction::CombinatorialBid bid;
  bid.vehicle_id = vehicle.id;

  std::map<int, double> offers;
  for (const auto &task : tasks) {
    const double window = std::min(task.deadline_s, dwell_s);
    const double compute_budget = window - task.size_bits / vehicle.link_rate;
    if (compute_budget <= 0) continue;
    const double min_rate = task.cycles / compute_budget;
    if (min_rate > vehicle.idle_compute) continue;
    const double rate = std::min(vehicle.idle_compute,
                                 min_rate * uniform(rng, 1.0, headroom_max));
    offers[task.id] = rate;
  }

  auction::BidderEnv env;
  env.dwell_s = dwell_s;
  env.capacity_cps = vehicle.idle_compute;
  env.link_rate_bps = vehicle.link_rate;
  bid.bundle = auction::build_feasible_task_set(tasks, offers, env, vehicle.idle_compute);

  for (int task_id : bid.bundle) {
    const double rate = offers.at(task_id);
    bid.resources[task_id] = rate;
    bid.prices[task_id] = vehicle.unit_cost * rate + vehicle.fixed_cost;
  }
  return bid;
}

void force_bidders(Scenario &s, const std::vector<mobility::VehicleState> &vehicles,
                   const config::Config &cfg, std::uint64_t seed) {
  s.vehicles = vehicles;
  s.bids.clear();
  s.env.clear();
  s.unit_cost.clear();
  s.fixed_cost.clear();

  const auto traffic = cfg.traffic_params();
  const double v_avg = mobility::avg_vehicle_speed(traffic);
  Rng rng(derive_seed(seed, "scenario.offers"));

  for (const auto &v : s.vehicles) {
    const double dwell = mobility::residual_dwell_time(v, traffic.coverage_radius, v_avg);
    auto bid = truthful_bid(s.tasks, v, dwell, cfg.offer_headroom_max, rng);
    auction::BidderEnv env;
    env.dwell_s = dwell;
    env.capacity_cps = v.idle_compute;
    env.link_rate_bps = v.link_rate;
    s.env[v.id] = env;
    s.unit_cost[v.id] = v.unit_cost;
    s.fixed_cost[v.id] = v.fixed_cost;
    if (!bid.bundle.empty()) s.bids[v.id] = std::move(bid);
  }
}

Scenario build_scenario(const config::Config &cfg, std::uint64_t seed, int location_index) {
  Scenario s;
  const std::uint64_t loc_seed =
      derive_seed(seed, "scenario.location", static_cast<std::uint64_t>(location_index));

  // Tasks.
  Rng task_rng(derive_seed(loc_seed, "scenario.tasks"));
  const int count = cfg.tasks_min == cfg.tasks_max
                        ? cfg.tasks_min
                        : uniform_int(task_rng, cfg.tasks_min, cfg.tasks_max);
  s.tasks.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    cost::TaskSpec t;
    t.id = j + 1;
    t.size_bits = units::mb_to_bits(
        uniform(task_rng, cfg.task_size_mb_min, cfg.task_size_mb_max));
    t.cycles = cfg.cycles_for(t.size_bits);
    t.deadline_s = uniform(task_rng, cfg.task_deadline_s_min, cfg.task_deadline_s_max);
    t.urgency = uniform(task_rng, cfg.task_urgency_min, cfg.task_urgency_max);
    s.tasks.push_back(t);
  }

  // Vehicles in coverage at this location.
  std::vector<mobility::VehicleState> vehicles;
  const auto traffic = cfg.traffic_params();
  if (!cfg.trace_file.empty()) {
    const auto trace = mobility::load_trace(cfg.trace_file, traffic.coverage_radius,
                                            cfg.link_rate_bps(), cfg.vehicle_fixed_cost);
    if (trace.slots.empty())
      throw std::runtime_error("trace has no vehicle rows: " + cfg.trace_file);
    vehicles = trace.slots[static_cast<std::size_t>(location_index) % trace.slots.size()];
  } else {
    const auto slots = mobility::spawn_population(
        derive_seed(loc_seed, "scenario.traffic"), traffic, warmup_slots(traffic),
        cfg.vehicle_ranges());
    if (!slots.empty()) vehicles = slots.back();
  }

  // Shared parameters.
  s.params.energy = cfg.energy_params();
  s.params.weights = cfg.cost_weights();
  s.params.reserve_price = cfg.reserve_price_value();
  s.cloud = cfg.cloud_params();
  s.cloud_link_bps = cfg.link_rate_bps();
  s.fog_unit_cost_si = units::per_gcps_to_per_cps(cfg.fog_unit_cost);
  s.fog_rate_cps = units::gcps_to_cps(cfg.fog_rate_gcps);
  s.local_rate_cps = units::gcps_to_cps(cfg.local_rate_gcps);
  s.leg_length_m = cfg.segment_length_m;
  s.flight_speed_mps = cfg.flight_speed_mps();
  s.uav_speed_min_mps = cfg.uav_speed_min_mps;
  s.uav_speed_max_mps = cfg.uav_speed_max_mps;

  force_bidders(s, vehicles, cfg, loc_seed);
  return s;
}

}  // namespace seal::scenario
