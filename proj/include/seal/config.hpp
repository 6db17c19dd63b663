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

// Flat `key = value` configuration with typed fields, range validation,
// unknown-key rejection, and SEAL_<KEY> environment overrides. Values are
// quoted in field units (megabits, GC/s, km/h); accessors convert to SI.

#include <cstdint>
#include <string>

#include "seal/cost.hpp"
#include "seal/mobility.hpp"

namespace seal::config {

struct Config {
  // Mission shape
  int locations = 30;
  int slots = 1000;
  double slot_dt_s = 1.0;

  // Task generation (per location)
  int tasks_min = 100;
  int tasks_max = 300;
  double task_size_mb_min = 3.0;
  double task_size_mb_max = 9.0;
  double task_deadline_s_min = 1.0;
  double task_deadline_s_max = 2.5;
  double task_urgency_min = 0.1;
  double task_urgency_max = 1.0;
  double cycles_per_bit = 50.0;
  std::string cycles_unit = "per_bit";  // per_bit | per_mb

  // Traffic
  double density_per_km = 50.0;
  double density_max_per_km = 100.0;
  double veh_speed_min_kmh = 30.0;
  double veh_speed_max_kmh = 80.0;
  double leave_ratio = 0.2;
  double coverage_radius_m = 250.0;

  // Vehicle resources
  double vehicle_idle_gcps_min = 0.5;
  double vehicle_idle_gcps_max = 2.0;
  double vehicle_unit_cost_min = 1.0;  // currency per GC/s
  double vehicle_unit_cost_max = 9.0;
  double vehicle_fixed_cost = 0.0;
  double link_rate_mbps = 6.0;
  double offer_headroom_max = 2.0;  // rate quote = needed * U[1, headroom]

  // Drone
  double segment_length_m = 500.0;
  double uav_altitude_m = 50.0;
  double uav_speed_min_mps = 2.0;
  double uav_speed_max_mps = 20.0;
  std::string uav_speed_mps = "auto";     // auto | number
  std::string fly_power_model = "constant";  // constant | curve
  double power_fly_w = 150.0;
  double fly_power_c1 = 1.0;
  double fly_power_c2 = 4000.0;
  double power_hover_w = 500.0;
  double power_a2g_w = 0.2;

  // Objective & market
  double weight_energy = 0.5;
  double price_weight = 40.0;
  std::string reserve_price = "auto";  // auto (cloud-equivalent) | number
  double cloud_unit_cost = 8.0;        // currency per GC/s
  double cloud_rate_gcps = 10.0;
  double cloud_rtt_s = 2.0;
  double fog_unit_cost = 9.0;
  double fog_rate_gcps = 3.0;
  double local_rate_gcps = 1.0;

  // Settlement
  double deposit_multiplier = 1.5;
  double slash_fraction = 1.0;
  double initial_balance = 10000.0;
  double consensus_delay_min_s = 0.30;
  double consensus_delay_max_s = 0.81;
  double phase_init_s = 10.0;
  double phase_deposit_s = 10.0;
  double phase_auction_s = 10.0;
  double phase_commit_s = 10.0;
  double claim_window_s = 120.0;

  // Scenario plumbing
  std::string adversary = "honest";  // honest | bidder_aborts | uav_refuses | wrong_key | replay
  std::string trace_file;

  // ---- derived views (SI units) ----
  double link_rate_bps() const;
  double cycles_for(double size_bits) const;
  double reserve_price_value() const;  // auto -> cloud fee
  double flight_speed_mps() const;     // auto -> energy-optimal under the model
  cost::EnergyParams energy_params() const;
  cost::CostWeights cost_weights() const;
  cost::CloudParams cloud_params() const;
  mobility::TrafficParams traffic_params() const;
  mobility::VehicleAttributeRanges vehicle_ranges() const;
};

// Parse a config file (empty path -> defaults), then apply SEAL_<UPPERKEY>
// environment overrides, then validate. Throws std::runtime_error whose
// message names the offending key/line.
Config load_config(const std::string &path);

// One `key = value` assignment; `where` names the source for error messages.
void apply_assignment(Config &cfg, const std::string &key, const std::string &value,
                      const std::string &where);

void apply_env_overrides(Config &cfg);
void validate(const Config &cfg);

}  // namespace seal::config
