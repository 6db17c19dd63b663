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

#include "seal/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "seal/rng.hpp"

namespace seal::mobility {

double avg_vehicle_speed(const TrafficParams &params) {
  if (!params.valid()) throw std::invalid_argument("avg_vehicle_speed: invalid traffic params");
  const double free_flow = (1.0 - params.density / params.max_density) * params.v_max;
  return std::max(params.v_min, free_flow);
}

double vehicle_count_step(double prev_count, double inflow, double leave_ratio,
                          int slot_index) {
  if (slot_index < 1) throw std::invalid_argument("vehicle_count_step: slot_index must be >= 1");
  if (leave_ratio < 0.0 || leave_ratio > 1.0)
    throw std::invalid_argument("vehicle_count_step: leave_ratio must be in [0,1]");
  const double carried = slot_index == 1 ? 0.0 : prev_count;
  return (inflow + carried) * (1.0 - leave_ratio);
}

double residual_dwell_time(const VehicleState &v, double coverage_radius,
                           double avg_speed) {
  if (coverage_radius <= 0) throw std::invalid_argument("residual_dwell_time: radius must be > 0");
  if (avg_speed <= 0) throw std::invalid_argument("residual_dwell_time: speed must be > 0");
  if (v.heading != 1 && v.heading != -1)
    throw std::invalid_argument("residual_dwell_time: heading must be +1 or -1");
  // Approaching (+1): crosses the hover point then traverses the far half;
  // receding (-1): only the remaining chord ahead of it.
  const double remaining = coverage_radius + static_cast<double>(v.heading) * v.distance_to_uav;
  return std::max(0.0, remaining) / avg_speed;
}

bool step_vehicle(VehicleState &v, double dt, double coverage_radius) {
  const double travel = v.speed * dt;
  if (v.heading == 1) {
    if (travel <= v.distance_to_uav) {
      v.distance_to_uav -= travel;
    } else {
      // Passed the hover point within this slot; continue outbound.
      v.distance_to_uav = travel - v.distance_to_uav;
      v.heading = -1;
    }
  } else {
    v.distance_to_uav += travel;
  }
  return v.distance_to_uav <= coverage_radius;
}

std::vector<std::vector<VehicleState>> spawn_population(
    std::uint64_t seed, const TrafficParams &params, int horizon,
    const VehicleAttributeRanges &attrs) {
  if (!params.valid()) throw std::invalid_argument("spawn_population: invalid traffic params");
  if (horizon < 0) throw std::invalid_argument("spawn_population: horizon must be >= 0");

  Rng rng(derive_seed(seed, "mobility.spawn"));
  const double v_avg = avg_vehicle_speed(params);
  const double arrival_rate = params.density * v_avg * params.slot_interval;

  std::vector<std::vector<VehicleState>> slots;
  slots.reserve(static_cast<std::size_t>(horizon));
  std::vector<VehicleState> live;
  int next_id = 1;

  for (int slot = 0; slot < horizon; ++slot) {
    // Advance the survivors of the previous slot.
    std::vector<VehicleState> kept;
    kept.reserve(live.size());
    for (VehicleState v : live) {
      if (step_vehicle(v, params.slot_interval, params.coverage_radius)) kept.push_back(v);
    }
    live = std::move(kept);

    const unsigned arrivals = poisson(rng, arrival_rate);
    for (unsigned a = 0; a < arrivals; ++a) {
      VehicleState v;
      v.id = next_id++;
      v.distance_to_uav = uniform(rng, 0.0, params.coverage_radius);
      v.heading = uniform_int(rng, 0, 1) == 0 ? +1 : -1;
      v.speed = v_avg;
      v.idle_compute = uniform(rng, attrs.idle_compute_min, attrs.idle_compute_max);
      v.unit_cost = uniform(rng, attrs.unit_cost_min, attrs.unit_cost_max);
      v.fixed_cost = attrs.fixed_cost;
      v.link_rate = attrs.link_rate;
      live.push_back(v);
    }
    slots.push_back(live);
  }
  return slots;
}

namespace {

std::vector<std::string> split_csv_row(const std::string &line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  for (auto &f : fields) {
    const auto b = f.find_first_not_of(" \t");
    const auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? "" : f.substr(b, e - b + 1);
  }
  return fields;
}

double parse_num(const std::string &field, int line_no, const char *name) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception &) {
    throw std::runtime_error("trace line " + std::to_string(line_no) + ": bad " +
                             std::string(name) + " value '" + field + "'");
  }
}

}  // namespace

TraceLoad load_trace(const std::string &path, double coverage_radius,
                     double default_link_rate, double default_fixed_cost) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("trace file not readable: " + path);

  static const char *kHeader = "slot,id,distance_m,heading,speed_mps,idle_compute_cps,unit_cost";
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("trace file empty: " + path);
  {
    auto fields = split_csv_row(line);
    std::ostringstream joined;
    for (std::size_t i = 0; i < fields.size(); ++i) joined << (i ? "," : "") << fields[i];
    if (joined.str() != kHeader)
      throw std::runtime_error("trace header mismatch, expected '" + std::string(kHeader) +
                               "', got '" + joined.str() + "'");
  }

  TraceLoad out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_row(line);
    if (fields.size() != 7)
      throw std::runtime_error("trace line " + std::to_string(line_no) + ": expected 7 fields, got " +
                               std::to_string(fields.size()));

    const double slot_f = parse_num(fields[0], line_no, "slot");
    const int slot = static_cast<int>(slot_f);
    if (slot_f != slot || slot < 0)
      throw std::runtime_error("trace line " + std::to_string(line_no) +
                               ": slot must be a non-negative integer");

    VehicleState v;
    v.id = static_cast<int>(parse_num(fields[1], line_no, "id"));
    v.distance_to_uav = parse_num(fields[2], line_no, "distance_m");
    const double heading = parse_num(fields[3], line_no, "heading");
    if (heading != 1.0 && heading != -1.0)
      throw std::runtime_error("trace line " + std::to_string(line_no) + ": heading must be 1 or -1");
    v.heading = static_cast<int>(heading);
    v.speed = parse_num(fields[4], line_no, "speed_mps");
    v.idle_compute = parse_num(fields[5], line_no, "idle_compute_cps");
    v.unit_cost = parse_num(fields[6], line_no, "unit_cost");
    v.link_rate = default_link_rate;
    v.fixed_cost = default_fixed_cost;

    if (v.distance_to_uav < 0)
      throw std::runtime_error("trace line " + std::to_string(line_no) + ": negative distance");
    if (v.speed <= 0)
      throw std::runtime_error("trace line " + std::to_string(line_no) + ": speed must be > 0");

    if (v.distance_to_uav > coverage_radius) {
      ++out.dropped_out_of_range;
      out.warnings.push_back("trace line " + std::to_string(line_no) + ": vehicle " +
                             std::to_string(v.id) + " outside coverage radius, dropped");
      continue;
    }
    if (static_cast<std::size_t>(slot) >= out.slots.size()) out.slots.resize(slot + 1);
    out.slots[static_cast<std::size_t>(slot)].push_back(v);
  }
  return out;
}

}  // namespace seal::mobility
