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

#include <gtest/gtest.h>

#include <cmath>

namespace seal::cost {
namespace {

// The worked example threaded through the suite: a 6 Mb payload at 6 Mbps
// uploads in 1.0 s; 3e8 cycles at 1.5 GC/s execute in 0.2 s; total 1.2 s.
TaskSpec example_task() {
  TaskSpec t;
  t.id = 1;
  t.size_bits = 6e6;
  t.cycles = 3e8;
  t.deadline_s = 1.5;
  t.urgency = 0.7;
  return t;
}

TEST(CompletionTime, ByHand) {
  EXPECT_NEAR(task_completion_time(example_task(), 6e6, 1.5e9), 1.2, 1e-12);
  // Backhaul round trip is hovered through on top.
  EXPECT_NEAR(task_completion_time(example_task(), 6e6, 1.5e9, 2.0), 3.2, 1e-12);
}

TEST(CompletionTime, SplitsLinearly) {
  auto t = example_task();
  const double base = task_completion_time(t, 6e6, 1.5e9);
  t.size_bits *= 2;
  EXPECT_NEAR(task_completion_time(t, 6e6, 1.5e9), base + 1.0, 1e-12);
  t.size_bits /= 2;
  t.cycles *= 2;
  EXPECT_NEAR(task_completion_time(t, 6e6, 1.5e9), base + 0.2, 1e-12);
}

TEST(CompletionTime, RejectsBadRates) {
  EXPECT_THROW(task_completion_time(example_task(), 0.0, 1.5e9), std::invalid_argument);
  EXPECT_THROW(task_completion_time(example_task(), 6e6, 0.0), std::invalid_argument);
}

TEST(Feasible, DeadlineAndDwellBothBind) {
  const auto t = example_task();  // completes in 1.2 s, deadline 1.5 s
  EXPECT_TRUE(feasible(t, 6e6, 1.5e9, 10.0));
  EXPECT_FALSE(feasible(t, 6e6, 1.5e9, 1.0));   // leaves coverage first
  auto tight = t;
  tight.deadline_s = 1.1;
  EXPECT_FALSE(feasible(tight, 6e6, 1.5e9, 10.0));
  // Faster compute rescues the deadline: 1.0 + 3e8/3e9 = 1.1 exactly.
  EXPECT_TRUE(feasible(tight, 6e6, 3e9, 10.0));
}

TEST(FlyPower, ConstantModelIgnoresSpeed) {
  EnergyParams e;
  e.fly_model = EnergyParams::FlyModel::kConstant;
  e.power_fly_w = 150.0;
  EXPECT_NEAR(e.fly_power(2.0), 150.0, 1e-12);
  EXPECT_NEAR(e.fly_power(20.0), 150.0, 1e-12);
  EXPECT_NEAR(e.energy_optimal_speed(2.0, 20.0), 20.0, 1e-12);
}

TEST(FlyPower, CurveModelByHand) {
  EnergyParams e;
  e.fly_model = EnergyParams::FlyModel::kCurve;
  e.fly_c1 = 1.0;
  e.fly_c2 = 4000.0;
  EXPECT_NEAR(e.fly_power(10.0), 1000.0 + 400.0, 1e-9);  // V^3 + 4000/V
  EXPECT_NEAR(e.fly_power(2.0), 8.0 + 2000.0, 1e-9);
}

// Energy per meter c1 V^2 + c2 / V^2 has its interior optimum at
// (c2/c1)^(1/4); both lower and higher speeds burn more per meter.
TEST(FlyPower, EnergyOptimalSpeedInterior) {
  EnergyParams e;
  e.fly_model = EnergyParams::FlyModel::kCurve;
  e.fly_c1 = 1.0;
  e.fly_c2 = 4000.0;
  const double v_star = e.energy_optimal_speed(2.0, 20.0);
  EXPECT_NEAR(v_star, std::pow(4000.0, 0.25), 1e-12);

  auto per_meter = [&](double v) { return e.fly_power(v) / v; };
  EXPECT_LT(per_meter(v_star), per_meter(2.0));
  EXPECT_LT(per_meter(v_star), per_meter(20.0));
  EXPECT_LT(per_meter(v_star), per_meter(v_star + 0.5));
  EXPECT_LT(per_meter(v_star), per_meter(v_star - 0.5));

  // Clamped when the admissible window excludes the optimum.
  EXPECT_NEAR(e.energy_optimal_speed(10.0, 20.0), 10.0, 1e-12);
  EXPECT_NEAR(e.energy_optimal_speed(2.0, 5.0), 5.0, 1e-12);
  EXPECT_THROW(e.energy_optimal_speed(0.0, 5.0), std::invalid_argument);
}

TEST(SegmentEnergy, ByHand) {
  EnergyParams e;  // constant 150 W flight, 500 W hover, 0.2 W radio
  // 500 m at 10 m/s = 50 s of flight; one example task: 1.2 s hover, 1 s radio.
  const double got = segment_energy(e, 500.0, 10.0, {{1.2, 1.0}});
  EXPECT_NEAR(got, 150.0 * 50.0 + 500.0 * 1.2 + 0.2 * 1.0, 1e-9);
}

TEST(SegmentEnergy, AdditiveOverTasks) {
  EnergyParams e;
  const double one = segment_energy(e, 0.0, 10.0, {{1.2, 1.0}});
  const double two = segment_energy(e, 0.0, 10.0, {{1.2, 1.0}, {1.2, 1.0}});
  EXPECT_NEAR(two, 2.0 * one, 1e-9);
}

TEST(SegmentEnergy, RejectsTransmitLongerThanCompletion) {
  EnergyParams e;
  EXPECT_THROW(segment_energy(e, 500.0, 10.0, {{1.0, 1.2}}), std::invalid_argument);
  EXPECT_THROW(segment_energy(e, 500.0, 0.0, {}), std::invalid_argument);
  EXPECT_THROW(segment_energy(e, -1.0, 10.0, {}), std::invalid_argument);
}

TEST(UavCost, ByHand) {
  CostWeights w;  // 0.5 / 40
  EXPECT_NEAR(uav_total_cost(w, 100.0, 2.0), 0.5 * 100.0 + 0.5 * 40.0 * 2.0, 1e-12);
  w.energy_weight = 1.0;  // payment term vanishes
  EXPECT_NEAR(uav_total_cost(w, 100.0, 2.0), 100.0, 1e-12);
  w.energy_weight = 0.0;  // energy term vanishes
  EXPECT_NEAR(uav_total_cost(w, 100.0, 2.0), 80.0, 1e-12);
  w.energy_weight = 1.5;
  EXPECT_THROW(uav_total_cost(w, 1.0, 1.0), std::invalid_argument);
}

TEST(UavCost, MonotoneInBothArguments) {
  CostWeights w;
  EXPECT_LT(uav_total_cost(w, 100.0, 2.0), uav_total_cost(w, 101.0, 2.0));
  EXPECT_LT(uav_total_cost(w, 100.0, 2.0), uav_total_cost(w, 100.0, 2.1));
}

TEST(VehiclePayoff, ByHand) {
  // Paid 10 for renting 2 GC/s at 1 currency per GC/s: net 8.
  EXPECT_NEAR(vehicle_payoff(true, 10.0, 1e-9, 2e9, 0.0), 8.0, 1e-12);
  EXPECT_NEAR(vehicle_payoff(true, 10.0, 1e-9, 2e9, 0.5), 7.5, 1e-12);
  EXPECT_NEAR(vehicle_payoff(false, 10.0, 1e-9, 2e9, 0.0), 0.0, 1e-12);
}

}  // namespace
}  // namespace seal::cost
