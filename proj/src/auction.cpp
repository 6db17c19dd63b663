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

#include "seal/auction.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace seal::auction {

namespace {

// Slack for capacity bookkeeping: residuals are sums of the same doubles the
// quotes came from, so anything beyond rounding noise is a real overdraft.
constexpr double kRateEps = 1e-3;  // cycles/s

}  // namespace

std::vector<cost::TaskSpec> sort_by_priority(std::vector<cost::TaskSpec> tasks) {
  std::stable_sort(tasks.begin(), tasks.end(),
                   [](const cost::TaskSpec &a, const cost::TaskSpec &b) {
                     if (a.urgency != b.urgency) return a.urgency > b.urgency;
                     return a.id < b.id;
                   });
  return tasks;
}

std::vector<int> build_feasible_task_set(const std::vector<cost::TaskSpec> &tasks,
                                         const std::map<int, double> &offered_rate_cps,
                                         const BidderEnv &env, double capacity_cps) {
  std::vector<int> bundle;
  double budget = capacity_cps;
  for (const auto &task : sort_by_priority(tasks)) {
    auto it = offered_rate_cps.find(task.id);
    if (it == offered_rate_cps.end() || it->second <= 0) continue;
    const double rate = it->second;
    if (rate > budget + kRateEps) continue;
    if (!cost::feasible(task, env.link_rate_bps, rate, env.dwell_s)) continue;
    bundle.push_back(task.id);
    budget -= rate;
  }
  return bundle;
}

double marginal_cost_factor(const cost::TaskSpec &task, double rate_cps,
                            double link_rate_bps, double price,
                            const cost::EnergyParams &energy,
                            const cost::CostWeights &weights) {
  if (rate_cps <= 0 || link_rate_bps <= 0)
    throw std::invalid_argument("marginal_cost_factor: rates must be > 0");
  const double t_tx = task.size_bits / link_rate_bps;
  const double t_cpu = task.cycles / rate_cps;
  const double energy_j =
      energy.power_hover_w * (t_tx + t_cpu) + energy.power_a2g_w * t_tx;
  return weights.energy_weight * energy_j +
         (1.0 - weights.energy_weight) * weights.price_weight * price;
}

std::vector<Candidate> build_candidate_set(const cost::TaskSpec &task,
                                           const std::map<int, CombinatorialBid> &bids,
                                           const std::map<int, BidderEnv> &env,
                                           const std::map<int, double> &residual_cps,
                                           const AuctionParams &params) {
  std::vector<Candidate> out;
  for (const auto &[vid, bid] : bids) {
    auto rate_it = bid.resources.find(task.id);
    if (rate_it == bid.resources.end()) continue;
    if (std::find(bid.bundle.begin(), bid.bundle.end(), task.id) == bid.bundle.end()) continue;
    auto env_it = env.find(vid);
    if (env_it == env.end()) continue;
    auto price_it = bid.prices.find(task.id);
    if (price_it == bid.prices.end())
      throw std::invalid_argument("build_candidate_set: offer without a price");

    const double rate = rate_it->second;
    if (rate <= 0) continue;
    auto res_it = residual_cps.find(vid);
    const double residual = res_it == residual_cps.end() ? env_it->second.capacity_cps
                                                         : res_it->second;
    if (residual + kRateEps < rate) continue;
    if (!cost::feasible(task, env_it->second.link_rate_bps, rate, env_it->second.dwell_s))
      continue;

    Candidate c;
    c.vehicle_id = vid;
    c.rate_cps = rate;
    c.price = price_it->second;
    c.link_rate_bps = env_it->second.link_rate_bps;
    c.mcf = marginal_cost_factor(task, rate, c.link_rate_bps, c.price, params.energy,
                                 params.weights);
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const Candidate &a, const Candidate &b) {
    if (a.mcf != b.mcf) return a.mcf < b.mcf;
    return a.vehicle_id < b.vehicle_id;
  });
  return out;
}

std::optional<Candidate> select_winner(const std::vector<Candidate> &candidates) {
  if (candidates.empty()) return std::nullopt;
  const Candidate *best = &candidates.front();
  for (const auto &c : candidates) {
    if (c.mcf < best->mcf || (c.mcf == best->mcf && c.vehicle_id < best->vehicle_id))
      best = &c;
  }
  return *best;
}

double critical_payment(const cost::TaskSpec &task,
                        const std::vector<Candidate> &candidates_sorted,
                        const AuctionParams &params) {
  if (candidates_sorted.empty())
    throw std::invalid_argument("critical_payment: empty candidate set");
  const Candidate &win = candidates_sorted.front();
  const double price_scale =
      (1.0 - params.weights.energy_weight) * params.weights.price_weight;
  if (candidates_sorted.size() == 1 || price_scale <= 0.0)
    return std::max(params.reserve_price, win.price);

  // Highest quote that keeps the winner's score at or below the runner-up's:
  // move the energy gap into the price term and add the runner-up's quote.
  const Candidate &next = candidates_sorted[1];
  const double w = params.weights.energy_weight;
  const double hover = params.energy.power_hover_w;
  const double radio = params.energy.power_a2g_w;
  const double cpu_gap = task.cycles * (1.0 / next.rate_cps - 1.0 / win.rate_cps);
  const double tx_gap =
      task.size_bits * (1.0 / next.link_rate_bps - 1.0 / win.link_rate_bps);
  const double energy_gap = hover * cpu_gap + (hover + radio) * tx_gap;
  return (w / price_scale) * energy_gap + next.price;
}

AuctionOutcome run_src_auction(const std::vector<cost::TaskSpec> &tasks,
                               const std::map<int, CombinatorialBid> &bids,
                               const std::map<int, BidderEnv> &env,
                               const AuctionParams &params) {
  AuctionOutcome out;
  std::map<int, double> residual;
  for (const auto &[vid, e] : env) residual[vid] = e.capacity_cps;

  const auto ordered = sort_by_priority(tasks);

  // Invert the bids once: per task, the offers that would pass
  // build_candidate_set's static filters (existence, feasibility), with the
  // residual-independent score precomputed. Keeps each round's work
  // proportional to that task's offerers instead of the whole bidder pool.
  std::map<int, std::vector<Candidate>> offers_by_task;
  {
    std::map<int, const cost::TaskSpec *> task_of;
    for (const auto &task : ordered) task_of[task.id] = &task;
    for (const auto &[vid, bid] : bids) {
      const auto env_it = env.find(vid);
      if (env_it == env.end()) continue;
      for (const auto &[task_id, rate] : bid.resources) {
        if (std::find(bid.bundle.begin(), bid.bundle.end(), task_id) ==
            bid.bundle.end())
          continue;
        const auto task_it = task_of.find(task_id);
        if (task_it == task_of.end()) continue;
        const auto price_it = bid.prices.find(task_id);
        if (price_it == bid.prices.end())
          throw std::invalid_argument("run_src_auction: offer without a price");
        if (rate <= 0) continue;
        if (!cost::feasible(*task_it->second, env_it->second.link_rate_bps, rate,
                            env_it->second.dwell_s))
          continue;
        Candidate c;
        c.vehicle_id = vid;
        c.rate_cps = rate;
        c.price = price_it->second;
        c.link_rate_bps = env_it->second.link_rate_bps;
        c.mcf = marginal_cost_factor(*task_it->second, rate, c.link_rate_bps, c.price,
                                     params.energy, params.weights);
        offers_by_task[task_id].push_back(c);
      }
    }
  }

  for (const auto &task : ordered) {
    out.order.push_back(task.id);
    std::vector<Candidate> candidates;
    if (const auto it = offers_by_task.find(task.id); it != offers_by_task.end()) {
      for (const auto &c : it->second)
        if (residual.at(c.vehicle_id) + kRateEps >= c.rate_cps) candidates.push_back(c);
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate &a, const Candidate &b) {
                if (a.mcf != b.mcf) return a.mcf < b.mcf;
                return a.vehicle_id < b.vehicle_id;
              });
    if (candidates.empty()) {
      out.winner_of[task.id] = kCloud;
      out.cloud_tasks.push_back(task.id);
      continue;
    }
    const Candidate win = *select_winner(candidates);
    out.winner_of[task.id] = win.vehicle_id;
    out.tasks_of[win.vehicle_id].push_back(task.id);
    out.mcf_trace[task.id] = std::move(candidates);
    residual[win.vehicle_id] -= win.rate_cps;
  }

  // Pricing pass against the candidate sets recorded at assignment time.
  for (const auto &task : ordered) {
    auto trace_it = out.mcf_trace.find(task.id);
    if (trace_it == out.mcf_trace.end()) continue;
    out.payment_of[task.id] = critical_payment(task, trace_it->second, params);
  }

  std::set<int> winner_ids;
  for (const auto &[vid, won] : out.tasks_of)
    if (!won.empty()) winner_ids.insert(vid);
  out.winners.assign(winner_ids.begin(), winner_ids.end());
  return out;
}

ObjectiveBreakdown objective_value(const std::vector<cost::TaskSpec> &tasks,
                                   const std::map<int, CombinatorialBid> &bids,
                                   const std::map<int, BidderEnv> &env,
                                   const AuctionOutcome &outcome,
                                   const AuctionParams &params,
                                   const cost::CloudParams &cloud,
                                   double cloud_link_bps, double leg_length_m,
                                   double flight_speed_mps) {
  ObjectiveBreakdown r;
  std::vector<cost::SegmentAssignment> service;
  std::map<int, double> used_cps;
  double completion_sum = 0.0;

  auto flag = [&r](const std::string &what) {
    if (!r.violation) r.violation = what;
  };

  for (const auto &task : tasks) {
    auto win_it = outcome.winner_of.find(task.id);
    if (win_it == outcome.winner_of.end()) {
      flag("task " + std::to_string(task.id) + " unassigned");
      continue;
    }
    double t_tx = 0.0, t_done = 0.0, payment = 0.0;
    if (win_it->second == kCloud) {
      t_tx = task.size_bits / cloud_link_bps;
      t_done = cost::task_completion_time(task, cloud_link_bps, cloud.rate_cps, cloud.rtt_s);
      payment = cloud.unit_cost_si * cloud.rate_cps;
      if (t_done > task.deadline_s) ++r.deadline_misses;
    } else {
      const int vid = win_it->second;
      auto bid_it = bids.find(vid);
      auto env_it = env.find(vid);
      if (bid_it == bids.end() || env_it == env.end()) {
        flag("task " + std::to_string(task.id) + " assigned to unknown vehicle");
        continue;
      }
      auto rate_it = bid_it->second.resources.find(task.id);
      if (rate_it == bid_it->second.resources.end()) {
        flag("task " + std::to_string(task.id) + " not offered by its winner");
        continue;
      }
      const double rate = rate_it->second;
      t_tx = task.size_bits / env_it->second.link_rate_bps;
      t_done = cost::task_completion_time(task, env_it->second.link_rate_bps, rate);
      auto pay_it = outcome.payment_of.find(task.id);
      if (pay_it == outcome.payment_of.end()) {
        flag("task " + std::to_string(task.id) + " has no payment");
        continue;
      }
      payment = pay_it->second;
      used_cps[vid] += rate;
      if (t_done > task.deadline_s) {
        ++r.deadline_misses;
        flag("task " + std::to_string(task.id) + " misses its deadline on vehicle " +
             std::to_string(vid));
      }
      if (t_done > env_it->second.dwell_s)
        flag("task " + std::to_string(task.id) + " outlives vehicle " +
             std::to_string(vid) + "'s dwell");
    }
    service.push_back({t_done, t_tx});
    completion_sum += t_done;
    r.payment_total += payment;
  }

  for (const auto &[vid, used] : used_cps) {
    auto env_it = env.find(vid);
    if (env_it != env.end() && used > env_it->second.capacity_cps + kRateEps)
      flag("vehicle " + std::to_string(vid) + " over capacity");
  }

  r.energy_j = cost::segment_energy(params.energy, leg_length_m, flight_speed_mps, service);
  r.flight_energy_j =
      params.energy.fly_power(flight_speed_mps) * leg_length_m / flight_speed_mps;
  r.offload_energy_j = r.energy_j - r.flight_energy_j;
  r.value = cost::uav_total_cost(params.weights, r.energy_j, r.payment_total);
  r.mean_completion_s = tasks.empty() ? 0.0 : completion_sum / tasks.size();
  return r;
}

double payoff_under_deviation(const std::vector<cost::TaskSpec> &tasks,
                              const std::map<int, CombinatorialBid> &truthful_bids,
                              const std::map<int, BidderEnv> &env,
                              const AuctionParams &params,
                              const DeviationProbe &probe, double unit_cost_si,
                              double fixed_cost, double overreport_penalty) {
  auto truthful_it = truthful_bids.find(probe.vehicle_id);
  if (truthful_it == truthful_bids.end())
    throw std::invalid_argument("payoff_under_deviation: unknown vehicle");
  auto true_rate_it = truthful_it->second.resources.find(probe.task_id);
  if (true_rate_it == truthful_it->second.resources.end())
    throw std::invalid_argument("payoff_under_deviation: task not in the probed bundle");
  const double true_rate = true_rate_it->second;

  std::map<int, CombinatorialBid> bids = truthful_bids;
  auto &mine = bids[probe.vehicle_id];
  mine.resources[probe.task_id] = probe.reported_rate_cps;
  mine.prices[probe.task_id] = probe.reported_price;

  const auto outcome = run_src_auction(tasks, bids, env, params);
  auto win_it = outcome.winner_of.find(probe.task_id);
  if (win_it == outcome.winner_of.end() || win_it->second != probe.vehicle_id) return 0.0;

  // Won with a rate it cannot actually dedicate: delivery falls short and the
  // escrowed stake for this task is forfeited instead of earning anything.
  if (probe.reported_rate_cps > true_rate + kRateEps) return -overreport_penalty;

  const double payment = outcome.payment_of.at(probe.task_id);
  return cost::vehicle_payoff(true, payment, unit_cost_si, true_rate, fixed_cost);
}

}  // namespace seal::auction
