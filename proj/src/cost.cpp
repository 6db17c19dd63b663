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

#include "seal/cost.hpp"

#include <cmath>
#include <stdexcept>

namespace seal::cost {

double EnergyParams::fly_power(double speed_mps) const {
  if (fly_model == FlyModel::kConstant) return power_fly_w;
  if (speed_mps <= 0) throw std::invalid_argument("fly_power: speed must be > 0");
  return fly_c1 * speed_mps * speed_mps * speed_mps + fly_c2 / speed_mps;
}

double EnergyParams::energy_optimal_speed(double v_min, double v_max) const {
  if (v_min <= 0 || v_max < v_min)
    throw std::invalid_argument("energy_optimal_speed: need 0 < v_min <= v_max");
  if (fly_model == FlyModel::kConstant) return v_max;  // constant power: faster = less energy
  // Energy per meter is c1 V^2 + c2 / V^2, minimized at (c2/c1)^(1/4);
  // convex, so clamp to the admissible interval.
  const double v_star = std::pow(fly_c2 / fly_c1, 0.25);
  if (v_star < v_min) return v_min;
  if (v_star > v_max) return v_max;
  return v_star;
}

double task_completion_time(const TaskSpec &task, double link_rate_bps,
                            double compute_rate_cps, double extra_rtt_s) {
  if (link_rate_bps <= 0) throw std::invalid_argument("task_completion_time: link rate must be > 0");
  if (compute_rate_cps <= 0)
    throw std::invalid_argument("task_completion_time: compute rate must be > 0");
  if (task.size_bits < 0 || task.cycles < 0)
    throw std::invalid_argument("task_completion_time: negative task demand");
  return task.size_bits / link_rate_bps + task.cycles / compute_rate_cps + extra_rtt_s;
}

bool feasible(const TaskSpec &task, double link_rate_bps, double compute_rate_cps,
              double dwell_s, double extra_rtt_s) {
  const double t = task_completion_time(task, link_rate_bps, compute_rate_cps, extra_rtt_s);
  return t <= std::min(task.deadline_s, dwell_s);
}

double segment_energy(const EnergyParams &energy, double leg_length_m,
                      double flight_speed_mps,
                      const std::vector<SegmentAssignment> &assignments) {
  if (leg_length_m < 0) throw std::invalid_argument("segment_energy: negative leg length");
  if (flight_speed_mps <= 0) throw std::invalid_argument("segment_energy: speed must be > 0");
  const double flight = energy.fly_power(flight_speed_mps) * leg_length_m / flight_speed_mps;
  double hover = 0.0, radio = 0.0;
  for (const auto &a : assignments) {
    if (a.completion_s < 0 || a.transmit_s < 0 || a.transmit_s > a.completion_s)
      throw std::invalid_argument("segment_energy: bad assignment times");
    hover += energy.power_hover_w * a.completion_s;
    radio += energy.power_a2g_w * a.transmit_s;
  }
  return flight + hover + radio;
}

double uav_total_cost(const CostWeights &weights, double energy_j,
                      double total_payment) {
  if (weights.energy_weight < 0 || weights.energy_weight > 1)
    throw std::invalid_argument("uav_total_cost: energy_weight must be in [0,1]");
  return weights.energy_weight * energy_j +
         (1.0 - weights.energy_weight) * weights.price_weight * total_payment;
}

double vehicle_payoff(bool won, double payment, double unit_cost_si,
                      double rate_cps, double fixed_cost) {
  if (!won) return 0.0;
  return payment - (unit_cost_si * rate_cps + fixed_cost);
}

}  // namespace seal::cost
