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

#include "seal/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "seal/units.hpp"

namespace seal::config {

namespace {

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string &value, const std::string &key,
                    const std::string &where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("junk");
    return v;
  } catch (const std::exception &) {
    throw std::runtime_error(where + ": key '" + key + "': expected a number, got '" +
                             value + "'");
  }
}

int parse_int(const std::string &value, const std::string &key, const std::string &where) {
  const double v = parse_double(value, key, where);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw std::runtime_error(where + ": key '" + key + "': expected an integer, got '" +
                             value + "'");
  return i;
}

struct Field {
  std::function<void(Config &, const std::string &, const std::string &)> set;
};

const std::map<std::string, Field> &field_table() {
  static const std::map<std::string, Field> table = [] {
    std::map<std::string, Field> t;
    auto d = [&t](const char *key, double Config::*member) {
      t[key] = {[key, member](Config &c, const std::string &v, const std::string &w) {
        c.*member = parse_double(v, key, w);
      }};
    };
    auto i = [&t](const char *key, int Config::*member) {
      t[key] = {[key, member](Config &c, const std::string &v, const std::string &w) {
        c.*member = parse_int(v, key, w);
      }};
    };
    auto s = [&t](const char *key, std::string Config::*member) {
      t[key] = {[member](Config &c, const std::string &v, const std::string &) {
        c.*member = v;
      }};
    };

    i("locations", &Config::locations);
    i("slots", &Config::slots);
    d("slot_dt_s", &Config::slot_dt_s);
    i("tasks_min", &Config::tasks_min);
    i("tasks_max", &Config::tasks_max);
    d("task_size_mb_min", &Config::task_size_mb_min);
    d("task_size_mb_max", &Config::task_size_mb_max);
    d("task_deadline_s_min", &Config::task_deadline_s_min);
    d("task_deadline_s_max", &Config::task_deadline_s_max);
    d("task_urgency_min", &Config::task_urgency_min);
    d("task_urgency_max", &Config::task_urgency_max);
    d("cycles_per_bit", &Config::cycles_per_bit);
    s("cycles_unit", &Config::cycles_unit);
    d("density_per_km", &Config::density_per_km);
    d("density_max_per_km", &Config::density_max_per_km);
    d("veh_speed_min_kmh", &Config::veh_speed_min_kmh);
    d("veh_speed_max_kmh", &Config::veh_speed_max_kmh);
    d("leave_ratio", &Config::leave_ratio);
    d("coverage_radius_m", &Config::coverage_radius_m);
    d("vehicle_idle_gcps_min", &Config::vehicle_idle_gcps_min);
    d("vehicle_idle_gcps_max", &Config::vehicle_idle_gcps_max);
    d("vehicle_unit_cost_min", &Config::vehicle_unit_cost_min);
    d("vehicle_unit_cost_max", &Config::vehicle_unit_cost_max);
    d("vehicle_fixed_cost", &Config::vehicle_fixed_cost);
    d("link_rate_mbps", &Config::link_rate_mbps);
    d("offer_headroom_max", &Config::offer_headroom_max);
    d("segment_length_m", &Config::segment_length_m);
    d("uav_altitude_m", &Config::uav_altitude_m);
    d("uav_speed_min_mps", &Config::uav_speed_min_mps);
    d("uav_speed_max_mps", &Config::uav_speed_max_mps);
    s("uav_speed_mps", &Config::uav_speed_mps);
    s("fly_power_model", &Config::fly_power_model);
    d("power_fly_w", &Config::power_fly_w);
    d("fly_power_c1", &Config::fly_power_c1);
    d("fly_power_c2", &Config::fly_power_c2);
    d("power_hover_w", &Config::power_hover_w);
    d("power_a2g_w", &Config::power_a2g_w);
    d("weight_energy", &Config::weight_energy);
    d("price_weight", &Config::price_weight);
    s("reserve_price", &Config::reserve_price);
    d("cloud_unit_cost", &Config::cloud_unit_cost);
    d("cloud_rate_gcps", &Config::cloud_rate_gcps);
    d("cloud_rtt_s", &Config::cloud_rtt_s);
    d("fog_unit_cost", &Config::fog_unit_cost);
    d("fog_rate_gcps", &Config::fog_rate_gcps);
    d("local_rate_gcps", &Config::local_rate_gcps);
    d("deposit_multiplier", &Config::deposit_multiplier);
    d("slash_fraction", &Config::slash_fraction);
    d("initial_balance", &Config::initial_balance);
    d("consensus_delay_min_s", &Config::consensus_delay_min_s);
    d("consensus_delay_max_s", &Config::consensus_delay_max_s);
    d("phase_init_s", &Config::phase_init_s);
    d("phase_deposit_s", &Config::phase_deposit_s);
    d("phase_auction_s", &Config::phase_auction_s);
    d("phase_commit_s", &Config::phase_commit_s);
    d("claim_window_s", &Config::claim_window_s);
    s("adversary", &Config::adversary);
    s("trace_file", &Config::trace_file);
    return t;
  }();
  return table;
}

void check(bool ok, const std::string &what) {
  if (!ok) throw std::runtime_error("config: " + what);
}

}  // namespace

void apply_assignment(Config &cfg, const std::string &key, const std::string &value,
                      const std::string &where) {
  auto it = field_table().find(key);
  if (it == field_table().end())
    throw std::runtime_error(where + ": unknown key '" + key + "'");
  it->second.set(cfg, value, where);
}

void apply_env_overrides(Config &cfg) {
  for (const auto &[key, field] : field_table()) {
    std::string env_name = "SEAL_";
    for (char c : key) env_name.push_back(static_cast<char>(std::toupper(c)));
    if (const char *value = std::getenv(env_name.c_str()))
      field.set(cfg, value, "environment " + env_name);
  }
}

void validate(const Config &cfg) {
  check(cfg.locations >= 0, "locations must be >= 0");
  check(cfg.slots > 0, "slots must be > 0");
  check(cfg.slot_dt_s > 0, "slot_dt_s must be > 0");
  check(cfg.tasks_min >= 0 && cfg.tasks_max >= cfg.tasks_min,
        "task count range is inverted");
  check(cfg.task_size_mb_min > 0 && cfg.task_size_mb_max >= cfg.task_size_mb_min,
        "task size range is inverted");
  check(cfg.task_deadline_s_min > 0 && cfg.task_deadline_s_max >= cfg.task_deadline_s_min,
        "task deadline range is inverted");
  check(cfg.task_urgency_max >= cfg.task_urgency_min, "task urgency range is inverted");
  check(cfg.cycles_per_bit > 0, "cycles_per_bit must be > 0");
  check(cfg.cycles_unit == "per_bit" || cfg.cycles_unit == "per_mb",
        "cycles_unit must be per_bit or per_mb");
  check(cfg.density_per_km >= 0 && cfg.density_max_per_km > 0 &&
            cfg.density_per_km <= cfg.density_max_per_km,
        "density must lie in [0, density_max_per_km]");
  check(cfg.veh_speed_min_kmh > 0 && cfg.veh_speed_max_kmh >= cfg.veh_speed_min_kmh,
        "vehicle speed range is inverted");
  check(cfg.leave_ratio >= 0 && cfg.leave_ratio <= 1, "leave_ratio must be in [0,1]");
  check(cfg.coverage_radius_m > 0, "coverage_radius_m must be > 0");
  check(cfg.vehicle_idle_gcps_min > 0 &&
            cfg.vehicle_idle_gcps_max >= cfg.vehicle_idle_gcps_min,
        "vehicle idle compute range is inverted");
  check(cfg.vehicle_unit_cost_min >= 0 &&
            cfg.vehicle_unit_cost_max >= cfg.vehicle_unit_cost_min,
        "vehicle unit cost range is inverted");
  check(cfg.link_rate_mbps > 0, "link_rate_mbps must be > 0");
  check(cfg.offer_headroom_max >= 1.0, "offer_headroom_max must be >= 1");
  check(cfg.segment_length_m >= 0, "segment_length_m must be >= 0");
  check(cfg.uav_speed_min_mps > 0 && cfg.uav_speed_max_mps >= cfg.uav_speed_min_mps,
        "drone speed range is inverted");
  if (cfg.uav_speed_mps != "auto") {
    const double v = parse_double(cfg.uav_speed_mps, "uav_speed_mps", "config");
    check(v >= cfg.uav_speed_min_mps && v <= cfg.uav_speed_max_mps,
          "uav_speed_mps outside [uav_speed_min_mps, uav_speed_max_mps]");
  }
  check(cfg.fly_power_model == "constant" || cfg.fly_power_model == "curve",
        "fly_power_model must be constant or curve");
  check(cfg.power_fly_w > 0 && cfg.power_hover_w > 0 && cfg.power_a2g_w >= 0,
        "power draws must be positive");
  check(cfg.fly_power_c1 > 0 && cfg.fly_power_c2 > 0, "flight curve constants must be > 0");
  check(cfg.weight_energy >= 0 && cfg.weight_energy <= 1,
        "weight_energy must be in [0,1]");
  check(cfg.price_weight > 0, "price_weight must be > 0");
  if (cfg.reserve_price != "auto")
    check(parse_double(cfg.reserve_price, "reserve_price", "config") >= 0,
          "reserve_price must be >= 0");
  check(cfg.cloud_unit_cost >= 0 && cfg.cloud_rate_gcps > 0 && cfg.cloud_rtt_s >= 0,
        "cloud parameters out of range");
  check(cfg.fog_unit_cost >= 0 && cfg.fog_rate_gcps > 0, "fog parameters out of range");
  check(cfg.local_rate_gcps > 0, "local_rate_gcps must be > 0");
  check(cfg.deposit_multiplier >= 1.0, "deposit_multiplier must be >= 1");
  check(cfg.slash_fraction >= 0 && cfg.slash_fraction <= 1,
        "slash_fraction must be in [0,1]");
  check(cfg.initial_balance >= 0, "initial_balance must be >= 0");
  check(cfg.consensus_delay_min_s >= 0 &&
            cfg.consensus_delay_max_s >= cfg.consensus_delay_min_s,
        "consensus delay range is inverted");
  check(cfg.phase_init_s > 0 && cfg.phase_deposit_s > 0 && cfg.phase_auction_s > 0 &&
            cfg.phase_commit_s > 0 && cfg.claim_window_s > 0,
        "phase durations must be > 0");
  static const std::vector<std::string> kAdversaries = {
      "honest", "bidder_aborts", "uav_refuses", "wrong_key", "replay"};
  check(std::find(kAdversaries.begin(), kAdversaries.end(), cfg.adversary) !=
            kAdversaries.end(),
        "adversary must be one of honest|bidder_aborts|uav_refuses|wrong_key|replay");
}

Config load_config(const std::string &path) {
  Config cfg;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config file not readable: " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": expected 'key = value'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      apply_assignment(cfg, key, value, path + ":" + std::to_string(line_no));
    }
  }
  apply_env_overrides(cfg);
  validate(cfg);
  return cfg;
}

double Config::link_rate_bps() const { return units::mbps_to_bps(link_rate_mbps); }

double Config::cycles_for(double size_bits) const {
  if (cycles_unit == "per_mb") return cycles_per_bit * (size_bits / units::kBitsPerMegabit);
  return cycles_per_bit * size_bits;
}

double Config::reserve_price_value() const {
  if (reserve_price == "auto") return cloud_unit_cost * cloud_rate_gcps;
  return parse_double(reserve_price, "reserve_price", "config");
}

double Config::flight_speed_mps() const {
  if (uav_speed_mps == "auto")
    return energy_params().energy_optimal_speed(uav_speed_min_mps, uav_speed_max_mps);
  return parse_double(uav_speed_mps, "uav_speed_mps", "config");
}

cost::EnergyParams Config::energy_params() const {
  cost::EnergyParams e;
  e.fly_model = fly_power_model == "curve" ? cost::EnergyParams::FlyModel::kCurve
                                           : cost::EnergyParams::FlyModel::kConstant;
  e.power_fly_w = power_fly_w;
  e.fly_c1 = fly_power_c1;
  e.fly_c2 = fly_power_c2;
  e.power_hover_w = power_hover_w;
  e.power_a2g_w = power_a2g_w;
  return e;
}

cost::CostWeights Config::cost_weights() const {
  cost::CostWeights w;
  w.energy_weight = weight_energy;
  w.price_weight = price_weight;
  return w;
}

cost::CloudParams Config::cloud_params() const {
  cost::CloudParams c;
  c.unit_cost_si = units::per_gcps_to_per_cps(cloud_unit_cost);
  c.rate_cps = units::gcps_to_cps(cloud_rate_gcps);
  c.rtt_s = cloud_rtt_s;
  return c;
}

mobility::TrafficParams Config::traffic_params() const {
  mobility::TrafficParams t;
  t.density = units::per_km_to_per_m(density_per_km);
  t.max_density = units::per_km_to_per_m(density_max_per_km);
  t.v_min = units::kmh_to_mps(veh_speed_min_kmh);
  t.v_max = units::kmh_to_mps(veh_speed_max_kmh);
  t.coverage_radius = coverage_radius_m;
  t.slot_interval = slot_dt_s;
  t.slot_count = slots;
  return t;
}

mobility::VehicleAttributeRanges Config::vehicle_ranges() const {
  mobility::VehicleAttributeRanges r;
  r.idle_compute_min = units::gcps_to_cps(vehicle_idle_gcps_min);
  r.idle_compute_max = units::gcps_to_cps(vehicle_idle_gcps_max);
  r.unit_cost_min = units::per_gcps_to_per_cps(vehicle_unit_cost_min);
  r.unit_cost_max = units::per_gcps_to_per_cps(vehicle_unit_cost_max);
  r.fixed_cost = vehicle_fixed_cost;
  r.link_rate = link_rate_bps();
  return r;
}

}  // namespace seal::config
