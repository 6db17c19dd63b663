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

// Reverse combinatorial auction with single-minded, take-it-or-leave-it
// per-task offers (each provider quotes one rate and one price per task in
// its bundle; the buyer takes the quoted rate or skips the provider).
// Winners minimize a marginal cost factor blending the drone's energy spend
// with the quoted price; payments are critical-value based, which makes
// truthful quoting a dominant strategy.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seal/cost.hpp"

namespace seal::auction {

// Sentinel provider id: task falls back to the remote cloud.
inline constexpr int kCloud = -1;

struct CombinatorialBid {
  int vehicle_id = 0;
  std::vector<int> bundle;               // task ids, priority order
  std::map<int, double> resources;       // task id -> dedicated rate (cycles/s)
  std::map<int, double> prices;          // task id -> asking price (currency)
};

// Auctioneer-visible per-provider environment.
struct BidderEnv {
  double dwell_s = 0.0;       // residual time in coverage
  double capacity_cps = 0.0;  // total idle compute available
  double link_rate_bps = 0.0; // provider uplink
};

struct AuctionParams {
  cost::EnergyParams energy;
  cost::CostWeights weights;
  double reserve_price = 80.0;  // cloud-equivalent asking price
};

struct Candidate {
  int vehicle_id = 0;
  double rate_cps = 0.0;
  double price = 0.0;
  double link_rate_bps = 0.0;
  double mcf = 0.0;
};

struct AuctionOutcome {
  std::vector<int> order;                       // task ids, processing order
  std::map<int, int> winner_of;                 // task -> vehicle id or kCloud
  std::map<int, double> payment_of;             // task -> payment (vehicle-assigned only)
  std::vector<int> winners;                     // distinct winning vehicles, ascending
  std::map<int, std::vector<int>> tasks_of;     // vehicle -> tasks won, assignment order
  std::map<int, std::vector<Candidate>> mcf_trace;  // per-task candidates, ascending (mcf, id)
  std::vector<int> cloud_tasks;                 // processing order
};

// Priority order shared by bidders and auctioneer: urgency descending,
// task id ascending on ties.
std::vector<cost::TaskSpec> sort_by_priority(std::vector<cost::TaskSpec> tasks);

// Bidder-side bundle selection: walk tasks in priority order, include each
// task whose offer exists, meets the deadline/dwell bound, and still fits the
// remaining capacity budget (sum of dedicated rates <= capacity).
std::vector<int> build_feasible_task_set(const std::vector<cost::TaskSpec> &tasks,
                                         const std::map<int, double> &offered_rate_cps,
                                         const BidderEnv &env, double capacity_cps);

// Energy-plus-price score for serving one task with a quoted (rate, price):
//   w * [hover power * (compute + transmit time) + radio power * transmit time]
//   + (1 - w) * price_weight * price.
double marginal_cost_factor(const cost::TaskSpec &task, double rate_cps,
                            double link_rate_bps, double price,
                            const cost::EnergyParams &energy,
                            const cost::CostWeights &weights);

// Providers still bidding on the task whose quote is feasible (deadline and
// dwell) and whose unclaimed capacity covers the quoted rate. Sorted
// ascending by (mcf, vehicle_id).
std::vector<Candidate> build_candidate_set(const cost::TaskSpec &task,
                                           const std::map<int, CombinatorialBid> &bids,
                                           const std::map<int, BidderEnv> &env,
                                           const std::map<int, double> &residual_cps,
                                           const AuctionParams &params);

// Lowest (mcf, vehicle_id); nullopt on an empty set.
std::optional<Candidate> select_winner(const std::vector<Candidate> &candidates);

// Critical payment for the task's winner against the recorded candidate set:
// the highest price the winner could have quoted and still won. Closed form
// from equating the winner's score with the runner-up's. A lone candidate is
// paid the reserve (never less than its own quote). Degenerate weights that
// erase the price term also fall back to the reserve.
double critical_payment(const cost::TaskSpec &task,
                        const std::vector<Candidate> &candidates_sorted,
                        const AuctionParams &params);

// Multi-round allocation: tasks in priority order, per-task winner by lowest
// marginal cost factor (ties to the lower vehicle id), winner's capacity
// debited by its quote, payments computed per task against the candidate set
// recorded when the task was assigned. Taskless candidate sets go to kCloud.
AuctionOutcome run_src_auction(const std::vector<cost::TaskSpec> &tasks,
                               const std::map<int, CombinatorialBid> &bids,
                               const std::map<int, BidderEnv> &env,
                               const AuctionParams &params);

struct ObjectiveBreakdown {
  double value = 0.0;            // weighted energy + payment objective
  double energy_j = 0.0;         // flight + offload
  double flight_energy_j = 0.0;
  double offload_energy_j = 0.0; // hover + radio while tasks run
  double payment_total = 0.0;    // provider payments + cloud fees
  double mean_completion_s = 0.0;
  int deadline_misses = 0;       // cloud-routed tasks may miss; counted, not fatal
  std::optional<std::string> violation;  // broken allocation invariant, if any
};

// Evaluate an allocation end to end: per-task completion times, the segment
// energy bill (flight leg + hover/radio during service), payments (cloud
// tasks pay the cloud fee), and invariant checks (vehicle-assigned tasks must
// meet deadline, dwell, and aggregate capacity).
ObjectiveBreakdown objective_value(const std::vector<cost::TaskSpec> &tasks,
                                   const std::map<int, CombinatorialBid> &bids,
                                   const std::map<int, BidderEnv> &env,
                                   const AuctionOutcome &outcome,
                                   const AuctionParams &params,
                                   const cost::CloudParams &cloud,
                                   double cloud_link_bps, double leg_length_m,
                                   double flight_speed_mps);

// What-if probe for one provider's quote on one task.
struct DeviationProbe {
  int vehicle_id = 0;
  int task_id = 0;
  double reported_rate_cps = 0.0;
  double reported_price = 0.0;
};

// Payoff the probed provider realizes on the probed task when the auction
// runs against its altered quote (everyone else truthful):
//   - loses the task: 0;
//   - wins with a rate quote at most its true offer: payment minus the true
//     provisioning cost (the capacity was reserved in full either way);
//   - wins with an inflated rate quote: the shortfall surfaces at delivery,
//     the task fails, and the provider forfeits `overreport_penalty`.
double payoff_under_deviation(const std::vector<cost::TaskSpec> &tasks,
                              const std::map<int, CombinatorialBid> &truthful_bids,
                              const std::map<int, BidderEnv> &env,
                              const AuctionParams &params,
                              const DeviationProbe &probe, double unit_cost_si,
                              double fixed_cost, double overreport_penalty);

}  // namespace seal::auction
