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

#include "seal/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "seal/rng.hpp"

namespace seal::baselines {

namespace {

// Greedy per-task argmin over the feasible candidates under a scheme key.
enum class GreedyKey { kEnergy, kDelay, kPrice };

double candidate_key(GreedyKey key, const cost::TaskSpec &task,
                     const auction::Candidate &c, const cost::EnergyParams &energy) {
  const double t_tx = task.size_bits / c.link_rate_bps;
  const double t_cpu = task.cycles / c.rate_cps;
  switch (key) {
    case GreedyKey::kEnergy:
      return energy.power_hover_w * (t_tx + t_cpu) + energy.power_a2g_w * t_tx;
    case GreedyKey::kDelay:
      return t_tx + t_cpu;
    case GreedyKey::kPrice:
      return c.price;
  }
  return 0.0;
}

auction::AuctionOutcome greedy_assign(GreedyKey key, const scenario::Scenario &s) {
  auction::AuctionOutcome out;
  std::map<int, double> residual;
  for (const auto &[vid, env] : s.env) residual[vid] = env.capacity_cps;

  for (const auto &task : auction::sort_by_priority(s.tasks)) {
    out.order.push_back(task.id);
    auto candidates = auction::build_candidate_set(task, s.bids, s.env, residual, s.params);
    if (candidates.empty()) {
      out.winner_of[task.id] = auction::kCloud;
      out.cloud_tasks.push_back(task.id);
      continue;
    }
    const auction::Candidate *best = nullptr;
    double best_key = 0.0;
    for (const auto &c : candidates) {
      const double k = candidate_key(key, task, c, s.params.energy);
      if (!best || k < best_key || (k == best_key && c.vehicle_id < best->vehicle_id)) {
        best = &c;
        best_key = k;
      }
    }
    out.winner_of[task.id] = best->vehicle_id;
    out.payment_of[task.id] = best->price;  // greedy schemes pay the ask
    out.tasks_of[best->vehicle_id].push_back(task.id);
    out.mcf_trace[task.id] = candidates;
    residual[best->vehicle_id] -= best->rate_cps;
  }

  std::set<int> winner_ids;
  for (const auto &[vid, won] : out.tasks_of)
    if (!won.empty()) winner_ids.insert(vid);
  out.winners.assign(winner_ids.begin(), winner_ids.end());
  return out;
}

SchemeReport from_breakdown(Scheme scheme, const scenario::Scenario &s,
                            const auction::ObjectiveBreakdown &b,
                            const auction::AuctionOutcome &outcome, double speed) {
  SchemeReport r;
  r.scheme = scheme;
  r.tasks = static_cast<int>(s.tasks.size());
  r.cloud = static_cast<int>(outcome.cloud_tasks.size());
  r.assigned = r.tasks - r.cloud;
  r.flight_speed_mps = speed;
  r.uav_cost = b.value;
  r.energy_j = b.energy_j;
  r.offload_energy_j = b.offload_energy_j;
  r.flight_energy_j = b.flight_energy_j;
  r.payment_sum = b.payment_total;
  r.mean_completion_s = b.mean_completion_s;
  r.deadline_misses = b.deadline_misses;
  r.outcome = outcome;
  return r;
}

// All tasks on one fixed remote tier (cloud or fog) at a flat per-task fee.
SchemeReport remote_tier(Scheme scheme, const scenario::Scenario &s,
                         const cost::CloudParams &tier, double speed) {
  auction::AuctionOutcome out;
  for (const auto &task : auction::sort_by_priority(s.tasks)) {
    out.order.push_back(task.id);
    out.winner_of[task.id] = auction::kCloud;
    out.cloud_tasks.push_back(task.id);
  }
  const auto b = auction::objective_value(s.tasks, {}, {}, out, s.params, tier,
                                          s.cloud_link_bps, s.leg_length_m, speed);
  return from_breakdown(scheme, s, b, out, speed);
}

SchemeReport local_only(const scenario::Scenario &s, double speed) {
  SchemeReport r;
  r.scheme = Scheme::kLocal;
  r.tasks = static_cast<int>(s.tasks.size());
  r.assigned = 0;
  r.cloud = 0;
  r.flight_speed_mps = speed;

  // Onboard processor: priority order, one task at a time, no radio.
  double queue_s = 0.0, completion_sum = 0.0;
  for (const auto &task : auction::sort_by_priority(s.tasks)) {
    queue_s += task.cycles / s.local_rate_cps;
    completion_sum += queue_s;
    if (queue_s > task.deadline_s) ++r.deadline_misses;
  }
  const auto &e = s.params.energy;
  r.flight_energy_j = e.fly_power(speed) * s.leg_length_m / speed;
  // Hover is billed per task over its completion time, the same additive
  // convention the offload schemes use, so the serial queue compounds.
  r.offload_energy_j = e.power_hover_w * completion_sum;
  r.energy_j = r.flight_energy_j + r.offload_energy_j;
  r.payment_sum = 0.0;
  r.uav_cost = cost::uav_total_cost(s.params.weights, r.energy_j, 0.0);
  r.mean_completion_s = s.tasks.empty() ? 0.0 : completion_sum / s.tasks.size();
  return r;
}

}  // namespace

Scheme scheme_from_string(const std::string &name) {
  if (name == "SEAL" || name == "seal") return Scheme::kSeal;
  if (name == "EAA" || name == "eaa") return Scheme::kEaa;
  if (name == "DAA" || name == "daa") return Scheme::kDaa;
  if (name == "PAA" || name == "paa") return Scheme::kPaa;
  if (name == "CLOUD" || name == "cloud") return Scheme::kCloud;
  if (name == "FOG" || name == "fog") return Scheme::kFog;
  if (name == "LOCAL" || name == "local") return Scheme::kLocal;
  throw std::invalid_argument("unknown scheme: " + name);
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::kSeal: return "SEAL";
    case Scheme::kEaa: return "EAA";
    case Scheme::kDaa: return "DAA";
    case Scheme::kPaa: return "PAA";
    case Scheme::kCloud: return "CLOUD";
    case Scheme::kFog: return "FOG";
    case Scheme::kLocal: return "LOCAL";
  }
  return "SEAL";
}

const std::vector<Scheme> &all_schemes() {
  static const std::vector<Scheme> all = {Scheme::kSeal, Scheme::kEaa,  Scheme::kDaa,
                                          Scheme::kPaa,  Scheme::kCloud, Scheme::kFog,
                                          Scheme::kLocal};
  return all;
}

SchemeReport run_scheme(Scheme scheme, const scenario::Scenario &s, std::uint64_t seed) {
  switch (scheme) {
    case Scheme::kSeal: {
      const auto outcome = auction::run_src_auction(s.tasks, s.bids, s.env, s.params);
      const auto b = auction::objective_value(s.tasks, s.bids, s.env, outcome, s.params,
                                              s.cloud, s.cloud_link_bps, s.leg_length_m,
                                              s.flight_speed_mps);
      return from_breakdown(scheme, s, b, outcome, s.flight_speed_mps);
    }
    case Scheme::kEaa:
    case Scheme::kDaa:
    case Scheme::kPaa: {
      double speed = s.flight_speed_mps;
      GreedyKey key = GreedyKey::kEnergy;
      if (scheme == Scheme::kEaa) {
        key = GreedyKey::kEnergy;
        speed = s.uav_speed_min_mps;
      } else if (scheme == Scheme::kDaa) {
        key = GreedyKey::kDelay;
        speed = s.uav_speed_max_mps;
      } else {
        key = GreedyKey::kPrice;
        Rng rng(derive_seed(seed, "baseline.paa"));
        speed = uniform(rng, s.uav_speed_min_mps, s.uav_speed_max_mps);
      }
      const auto outcome = greedy_assign(key, s);
      const auto b = auction::objective_value(s.tasks, s.bids, s.env, outcome, s.params,
                                              s.cloud, s.cloud_link_bps, s.leg_length_m,
                                              speed);
      return from_breakdown(scheme, s, b, outcome, speed);
    }
    case Scheme::kCloud:
      return remote_tier(scheme, s, s.cloud, s.flight_speed_mps);
    case Scheme::kFog: {
      cost::CloudParams fog;
      fog.unit_cost_si = s.fog_unit_cost_si;
      fog.rate_cps = s.fog_rate_cps;
      fog.rtt_s = 0.0;  // roadside tier, no backhaul round trip
      return remote_tier(scheme, s, fog, s.flight_speed_mps);
    }
    case Scheme::kLocal:
      return local_only(s, s.flight_speed_mps);
  }
  throw std::logic_error("unreachable scheme");
}

}  // namespace seal::baselines
