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

// Vehicular traffic around a hovering collection point: density-speed
// coupling, per-slot in/out flow counts, residual dwell time inside the
// coverage disk, a Poisson arrival generator, and a CSV trace loader.

#include <cstdint>
#include <string>
#include <vector>

namespace seal::mobility {

struct TrafficParams {
  double density = 0.05;        // vehicles per meter
  double max_density = 0.10;    // vehicles per meter (jam density)
  double v_min = 30.0 / 3.6;    // m/s, congested floor
  double v_max = 80.0 / 3.6;    // m/s, free flow
  double coverage_radius = 250.0;  // m
  double slot_interval = 1.0;      // s
  int slot_count = 1000;

  bool valid() const {
    return density >= 0 && max_density > 0 && density <= max_density && v_min > 0 &&
           v_min <= v_max && coverage_radius > 0 && slot_interval > 0;
  }
};

struct VehicleState {
  int id = 0;
  double distance_to_uav = 0.0;  // m, >= 0
  int heading = +1;              // +1 approaching the hover point, -1 receding
  double speed = 0.0;            // m/s
  double idle_compute = 0.0;     // cycles/s
  double unit_cost = 0.0;        // currency per (cycle/s)
  double fixed_cost = 0.0;       // currency
  double link_rate = 0.0;        // bits/s
};

// Density-coupled average speed: max(v_min, (1 - density/max_density) * v_max).
double avg_vehicle_speed(const TrafficParams &params);

// One step of the in-coverage count recurrence:
//   slot 1:   inflow * (1 - leave_ratio)
//   slot k>1: (inflow + prev_count) * (1 - leave_ratio)
// Counts are reals; this is a flow model, not a census.
double vehicle_count_step(double prev_count, double inflow, double leave_ratio,
                          int slot_index);

// Remaining seconds inside the coverage disk: (R + heading * d) / avg_speed.
double residual_dwell_time(const VehicleState &v, double coverage_radius,
                           double avg_speed);

// Attribute ranges used when synthesizing vehicles.
struct VehicleAttributeRanges {
  double idle_compute_min = 0.5e9;  // cycles/s
  double idle_compute_max = 2.0e9;
  double unit_cost_min = 1e-9;  // currency per (cycle/s), i.e. 1..9 per GC/s
  double unit_cost_max = 9e-9;
  double fixed_cost = 0.0;
  double link_rate = 6e6;  // bits/s
};

// Poisson arrivals at rate density * avg_speed; spawn position uniform in
// [0, R], heading +/-1 equiprobable, attributes from the configured ranges.
// Existing vehicles advance by speed*dt along their heading each slot and are
// removed once outside the disk. Deterministic for a fixed seed.
std::vector<std::vector<VehicleState>> spawn_population(
    std::uint64_t seed, const TrafficParams &params, int horizon,
    const VehicleAttributeRanges &attrs = {});

// Advance one vehicle by dt; returns false once it has left the disk.
bool step_vehicle(VehicleState &v, double dt, double coverage_radius);

struct TraceLoad {
  std::vector<std::vector<VehicleState>> slots;
  int dropped_out_of_range = 0;
  std::vector<std::string> warnings;  // malformed-row reports with line numbers
};

// CSV schema: slot,id,distance_m,heading,speed_mps,idle_compute_cps,unit_cost
// (header row required). Rows with distance > coverage_radius are dropped and
// counted; malformed rows abort the load with a line-numbered error.
TraceLoad load_trace(const std::string &path, double coverage_radius,
                     double default_link_rate = 6e6, double default_fixed_cost = 0.0);

}  // namespace seal::mobility
