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

// Task timing, drone energy, operator cost, and provider payoff models.
// All quantities are SI internally: bits, cycles, cycles/s, seconds, meters,
// watts, joules. Monetary unit costs are per cycle/s.

#include <cstdint>
#include <optional>
#include <vector>

namespace seal::cost {

struct TaskSpec {
  int id = 0;
  double size_bits = 0.0;        // input payload
  double cycles = 0.0;           // total compute demand
  double deadline_s = 0.0;       // hard completion deadline
  double urgency = 0.0;          // scheduling priority weight, higher first
};

// Drone power profile. Flight power is either a constant or the classic
// parasitic + induced rotor curve c1*V^3 + c2/V, which has an interior
// optimum at V* = (c2 / (3*c1))^(1/4)... not quite: d/dV (c1 V^3 + c2/V) = 0
// gives V* = (c2/(3 c1))^(1/4) for power, but energy-per-meter
// (c1 V^2 + c2/V^2) minimizes at V* = (c2/c1)^(1/4).
struct EnergyParams {
  enum class FlyModel { kConstant, kCurve };
  FlyModel fly_model = FlyModel::kConstant;
  double power_fly_w = 150.0;    // constant-model flight power
  double fly_c1 = 1.0;           // W s^3 / m^3 (curve model)
  double fly_c2 = 4000.0;        // W m / s     (curve model)
  double power_hover_w = 500.0;
  double power_a2g_w = 0.2;      // air-to-ground radio power

  double fly_power(double speed_mps) const;
  // Speed minimizing flight energy per meter under the active model
  // (constant model: any speed works, caller supplies the cap).
  double energy_optimal_speed(double v_min, double v_max) const;
};

struct CostWeights {
  double energy_weight = 0.5;    // trade-off knob in [0,1]
  double price_weight = 40.0;    // currency-to-cost scaling
};

struct CloudParams {
  double unit_cost_si = 8e-9;    // currency per cycle/s
  double rate_cps = 10e9;        // cycles/s
  double rtt_s = 2.0;            // backhaul round trip, hovered through
};

// Transmission plus execution: size/link_rate + cycles/compute_rate.
double task_completion_time(const TaskSpec &task, double link_rate_bps,
                            double compute_rate_cps, double extra_rtt_s = 0.0);

// Completion must beat both the task deadline and the provider's dwell.
bool feasible(const TaskSpec &task, double link_rate_bps, double compute_rate_cps,
              double dwell_s, double extra_rtt_s = 0.0);

// One assignment of tasks at a hover location within a patrol leg:
//   flight to the location + hover while tasks run + radio during uploads.
struct SegmentAssignment {
  double completion_s = 0.0;     // hover time consumed by this task
  double transmit_s = 0.0;       // radio-active part of it
};

double segment_energy(const EnergyParams &energy, double leg_length_m,
                      double flight_speed_mps,
                      const std::vector<SegmentAssignment> &assignments);

// Operator objective over one location: energy_weight * E +
// (1 - energy_weight) * price_weight * total_payment.
double uav_total_cost(const CostWeights &weights, double energy_j,
                      double total_payment);

// Provider payoff when paid `payment` for renting `rate_cps` of capacity:
// won * (payment - (unit_cost * rate + fixed_cost)).
double vehicle_payoff(bool won, double payment, double unit_cost_si,
                      double rate_cps, double fixed_cost);

}  // namespace seal::cost
