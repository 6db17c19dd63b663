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

#include "seal/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "seal/auction.hpp"
#include "seal/config.hpp"
#include "seal/cost.hpp"
#include "seal/exchange.hpp"
#include "seal/mobility.hpp"
#include "seal/rng.hpp"
#include "seal/scenario.hpp"
#include "seal/units.hpp"

namespace seal::verify {

namespace {

using Json = nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kPayoffTol = 1e-9;
constexpr double kCriticalRelTol = 1e-6;
constexpr double kDepositMultiplier = 1.5;

// Small randomized market: tasks and truthful single-minded quotes drawn from
// the simulation's stock parameter ranges, but with wide dwell so feasibility
// varies per draw.
struct Instance {
  std::vector<cost::TaskSpec> tasks;
  std::map<int, auction::CombinatorialBid> bids;
  std::map<int, auction::BidderEnv> env;
  std::map<int, double> unit_cost;   // per cycle/s
  std::map<int, double> fixed_cost;
  auction::AuctionParams params;
};

Instance random_instance(Rng &rng, int task_count, int vehicle_count) {
  Instance inst;
  inst.tasks.reserve(static_cast<std::size_t>(task_count));
  for (int j = 0; j < task_count; ++j) {
    cost::TaskSpec t;
    t.id = j + 1;
    t.size_bits = units::mb_to_bits(uniform(rng, 3.0, 9.0));
    t.cycles = 50.0 * t.size_bits;
    t.deadline_s = uniform(rng, 1.0, 2.5);
    t.urgency = uniform(rng, 0.1, 1.0);
    inst.tasks.push_back(t);
  }
  for (int i = 0; i < vehicle_count; ++i) {
    mobility::VehicleState v;
    v.id = i + 1;
    v.idle_compute = units::gcps_to_cps(uniform(rng, 0.5, 2.0));
    v.unit_cost = units::per_gcps_to_per_cps(uniform(rng, 1.0, 9.0));
    v.fixed_cost = 0.0;
    v.link_rate = units::mbps_to_bps(6.0);
    const double dwell = uniform(rng, 5.0, 50.0);

    auto bid = scenario::truthful_bid(inst.tasks, v, dwell, 2.0, rng);
    auction::BidderEnv env;
    env.dwell_s = dwell;
    env.capacity_cps = v.idle_compute;
    env.link_rate_bps = v.link_rate;
    inst.env[v.id] = env;
    inst.unit_cost[v.id] = v.unit_cost;
    inst.fixed_cost[v.id] = v.fixed_cost;
    if (!bid.bundle.empty()) inst.bids[v.id] = std::move(bid);
  }
  return inst;
}

Instance small_instance(Rng &rng) {
  const int tasks = uniform_int(rng, 2, 5);
  const int vehicles = uniform_int(rng, 3, 8);
  return random_instance(rng, tasks, vehicles);
}

// Forfeit for winning on a rate the vehicle cannot dedicate: its escrowed
// stake spread over the bundle (the per-slot slash the ledger would apply).
double overreport_penalty(const auction::CombinatorialBid &bid) {
  double max_price = 0.0;
  for (const auto &[task, price] : bid.prices) max_price = std::max(max_price, price);
  return kDepositMultiplier * max_price / static_cast<double>(bid.bundle.size());
}

using TrialFn = std::function<bool(std::uint64_t trial_seed, Json &counterexample)>;

SuiteResult run_trials(const std::string &name, int trials, std::uint64_t seed,
                       const TrialFn &trial_fn) {
  SuiteResult result;
  result.name = name;
  result.trials = trials;
  const auto t0 = Clock::now();
  for (int trial = 0; trial < trials; ++trial) {
    Json cx;
    const std::uint64_t trial_seed =
        derive_seed(seed, "verify." + name, static_cast<std::uint64_t>(trial));
    if (!trial_fn(trial_seed, cx)) {
      ++result.failures;
      if (result.counterexample.empty()) {
        cx["suite"] = name;
        cx["trial"] = trial;
        result.counterexample = cx.dump();
      }
    }
  }
  result.elapsed_s = std::chrono::duration<double>(Clock::now() - t0).count();
  return result;
}

// --- truthfulness: no single-task misreport beats the truthful quote. ------

bool truthfulness_trial(std::uint64_t trial_seed, Json &cx) {
  Rng rng(trial_seed);
  const Instance inst = small_instance(rng);
  for (const auto &[vid, bid] : inst.bids) {
    const double penalty = overreport_penalty(bid);
    for (int task_id : bid.bundle) {
      auction::DeviationProbe probe;
      probe.vehicle_id = vid;
      probe.task_id = task_id;
      probe.reported_rate_cps = bid.resources.at(task_id);
      probe.reported_price = bid.prices.at(task_id);
      const double truthful = auction::payoff_under_deviation(
          inst.tasks, inst.bids, inst.env, inst.params, probe,
          inst.unit_cost.at(vid), inst.fixed_cost.at(vid), penalty);

      for (int probe_ix = 0; probe_ix < 6; ++probe_ix) {
        auto dev = probe;
        if (probe_ix < 2) {
          dev.reported_price = probe.reported_price * uniform(rng, 0.5, 1.5);
        } else if (probe_ix < 4) {
          dev.reported_rate_cps = probe.reported_rate_cps * uniform(rng, 0.5, 1.5);
        } else {
          dev.reported_price = probe.reported_price * uniform(rng, 0.5, 1.5);
          dev.reported_rate_cps = probe.reported_rate_cps * uniform(rng, 0.5, 1.5);
        }
        const double deviated = auction::payoff_under_deviation(
            inst.tasks, inst.bids, inst.env, inst.params, dev,
            inst.unit_cost.at(vid), inst.fixed_cost.at(vid), penalty);
        if (deviated > truthful + kPayoffTol) {
          cx = {{"vehicle", vid},
                {"task", task_id},
                {"true_rate_cps", probe.reported_rate_cps},
                {"true_price", probe.reported_price},
                {"reported_rate_cps", dev.reported_rate_cps},
                {"reported_price", dev.reported_price},
                {"truthful_payoff", truthful},
                {"deviated_payoff", deviated}};
          return false;
        }
      }
    }
  }
  return true;
}

// --- rationality: every winner is paid at least its quoted cost. -----------

bool rationality_trial(std::uint64_t trial_seed, Json &cx) {
  Rng rng(trial_seed);
  const Instance inst = small_instance(rng);
  const auto outcome =
      auction::run_src_auction(inst.tasks, inst.bids, inst.env, inst.params);
  for (const auto &[task_id, winner] : outcome.winner_of) {
    if (winner == auction::kCloud) continue;
    const double rate = inst.bids.at(winner).resources.at(task_id);
    const double provisioning =
        inst.unit_cost.at(winner) * rate + inst.fixed_cost.at(winner);
    const double profit = outcome.payment_of.at(task_id) - provisioning;
    if (profit < -kPayoffTol) {
      cx = {{"vehicle", winner},
            {"task", task_id},
            {"payment", outcome.payment_of.at(task_id)},
            {"provisioning_cost", provisioning},
            {"profit", profit}};
      return false;
    }
  }
  return true;
}

// --- monotonicity: a cheaper or faster winning quote keeps winning. --------

bool monotonicity_trial(std::uint64_t trial_seed, Json &cx) {
  Rng rng(trial_seed);
  const Instance inst = small_instance(rng);
  const auto outcome =
      auction::run_src_auction(inst.tasks, inst.bids, inst.env, inst.params);
  for (const auto &[task_id, winner] : outcome.winner_of) {
    if (winner == auction::kCloud) continue;

    auto cheaper = inst.bids;
    cheaper[winner].prices[task_id] *= 0.9;
    const auto out_cheaper =
        auction::run_src_auction(inst.tasks, cheaper, inst.env, inst.params);
    if (out_cheaper.winner_of.at(task_id) != winner) {
      cx = {{"vehicle", winner},
            {"task", task_id},
            {"change", "price x0.9"},
            {"new_winner", out_cheaper.winner_of.at(task_id)}};
      return false;
    }

    // A faster quote only stays comparable while the whole bundle still fits
    // the vehicle's capacity; otherwise the raised rate can price itself out
    // of the residual budget, which is not a monotonicity defect.
    const auto &bid = inst.bids.at(winner);
    double bundle_sum = 0.0;
    for (const auto &[tid, r] : bid.resources) bundle_sum += r;
    const double rate = bid.resources.at(task_id);
    if (bundle_sum + 0.1 * rate <= inst.env.at(winner).capacity_cps) {
      auto faster = inst.bids;
      faster[winner].resources[task_id] = rate * 1.1;
      const auto out_faster =
          auction::run_src_auction(inst.tasks, faster, inst.env, inst.params);
      if (out_faster.winner_of.at(task_id) != winner) {
        cx = {{"vehicle", winner},
              {"task", task_id},
              {"change", "rate x1.1"},
              {"new_winner", out_faster.winner_of.at(task_id)}};
        return false;
      }
    }
  }
  return true;
}

// --- critical: closed-form payment equals the bisected win/lose frontier. --

bool critical_trial(std::uint64_t trial_seed, Json &cx) {
  Rng rng(trial_seed);
  const Instance inst = small_instance(rng);
  const auto outcome =
      auction::run_src_auction(inst.tasks, inst.bids, inst.env, inst.params);

  const auto wins_at = [&](int task_id, int vehicle, double price) {
    auto bids = inst.bids;
    bids[vehicle].prices[task_id] = price;
    const auto out = auction::run_src_auction(inst.tasks, bids, inst.env, inst.params);
    return out.winner_of.at(task_id) == vehicle;
  };

  for (const auto &[task_id, winner] : outcome.winner_of) {
    if (winner == auction::kCloud) continue;
    const auto &trace = outcome.mcf_trace.at(task_id);
    if (trace.size() < 2) continue;  // lone quote is paid the reserve, no frontier

    double lo = inst.bids.at(winner).prices.at(task_id);
    double hi = std::max(2.0 * lo, lo + 1.0);
    bool never_loses = false;
    while (wins_at(task_id, winner, hi)) {
      hi *= 2.0;
      if (hi > 1e12) {
        never_loses = true;
        break;
      }
    }
    if (never_loses) continue;
    for (int iter = 0; iter < 60; ++iter) {
      const double mid = 0.5 * (lo + hi);
      (wins_at(task_id, winner, mid) ? lo : hi) = mid;
    }

    const double predicted = outcome.payment_of.at(task_id);
    const double rel =
        std::fabs(lo - predicted) / std::max(1.0, std::fabs(predicted));
    if (rel > kCriticalRelTol) {
      cx = {{"vehicle", winner},
            {"task", task_id},
            {"closed_form", predicted},
            {"bisected", lo},
            {"relative_error", rel}};
      return false;
    }
  }
  return true;
}

// --- fairness: scripted misbehavior never yields theft, and never pays. ----

config::Config fairness_config() {
  config::Config cfg;
  cfg.locations = 1;
  cfg.tasks_min = 4;
  cfg.tasks_max = 8;
  return cfg;
}

bool check_report(const exchange::ProtocolReport &rep, const char *label, Json &cx) {
  if (rep.violations != 0) {
    cx = {{"run", label}, {"violations", rep.violations}};
    return false;
  }
  if (!rep.conservation_ok) {
    cx = {{"run", label},
          {"supply_before_micro", rep.supply_before},
          {"supply_after_micro", rep.supply_after},
          {"defect", "conservation"}};
    return false;
  }
  return true;
}

bool fairness_trial(std::uint64_t trial_seed, Json &cx) {
  const auto cfg = fairness_config();
  const auto scen = scenario::build_scenario(cfg, trial_seed, 0);
  auto params = exchange::ProtocolParams::from_config(cfg);

  params.adversary = exchange::Adversary::kHonest;
  const auto honest = exchange::run_protocol(scen, params, trial_seed);
  if (!check_report(honest, "honest", cx)) return false;

  const exchange::Adversary scripts[] = {
      exchange::Adversary::kBidderAborts, exchange::Adversary::kUavRefuses,
      exchange::Adversary::kWrongKey, exchange::Adversary::kReplay};
  for (const auto adv : scripts) {
    params.adversary = adv;
    const auto rep = exchange::run_protocol(scen, params, trial_seed);
    if (!check_report(rep, exchange::to_string(adv).c_str(), cx)) return false;
    if (!rep.script_applied) continue;

    if (adv == exchange::Adversary::kUavRefuses) {
      if (!(rep.uav_payoff < honest.uav_payoff)) {
        cx = {{"run", exchange::to_string(adv)},
              {"honest_uav_payoff", honest.uav_payoff},
              {"scripted_uav_payoff", rep.uav_payoff},
              {"defect", "misbehavior not strictly worse"}};
        return false;
      }
    } else {
      const int v = rep.misbehaving_vehicle;
      const auto honest_it = honest.vehicle_payoff.find(v);
      const auto scripted_it = rep.vehicle_payoff.find(v);
      if (honest_it == honest.vehicle_payoff.end() ||
          scripted_it == rep.vehicle_payoff.end()) {
        cx = {{"run", exchange::to_string(adv)},
              {"vehicle", v},
              {"defect", "victim payoff missing"}};
        return false;
      }
      if (!(scripted_it->second < honest_it->second)) {
        cx = {{"run", exchange::to_string(adv)},
              {"vehicle", v},
              {"honest_payoff", honest_it->second},
              {"scripted_payoff", scripted_it->second},
              {"defect", "misbehavior not strictly worse"}};
        return false;
      }
    }
  }
  return true;
}

// --- privacy: sealed quote values never surface on the public record. ------

void collect_numeric_leaves(const Json &node, std::vector<double> &out) {
  if (node.is_number()) {
    out.push_back(node.get<double>());
  } else if (node.is_object() || node.is_array()) {
    for (const auto &child : node) collect_numeric_leaves(child, out);
  }
}

bool privacy_trial(std::uint64_t trial_seed, Json &cx) {
  const auto cfg = fairness_config();
  const auto scen = scenario::build_scenario(cfg, trial_seed, 0);
  auto params = exchange::ProtocolParams::from_config(cfg);
  const auto rep = exchange::run_protocol(scen, params, trial_seed);

  // Every representation a quote value could plausibly leak through: raw
  // currency, raw rate, rate in giga-units, and the micro-currency integers.
  struct Secret {
    int vehicle;
    int task;
    const char *what;
    double value;
  };
  std::vector<Secret> secrets;
  for (const auto &[vid, bid] : scen.bids) {
    for (int task_id : bid.bundle) {
      const double price = bid.prices.at(task_id);
      const double rate = bid.resources.at(task_id);
      secrets.push_back({vid, task_id, "price", price});
      secrets.push_back({vid, task_id, "price_micro",
                         static_cast<double>(std::llround(price * 1e6))});
      secrets.push_back({vid, task_id, "rate_cps", rate});
      secrets.push_back({vid, task_id, "rate_gcps", units::cps_to_gcps(rate)});
      secrets.push_back(
          {vid, task_id, "rate_gcps_micro",
           static_cast<double>(std::llround(units::cps_to_gcps(rate) * 1e6))});
    }
  }

  std::istringstream lines(rep.ledger_jsonl);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.empty()) continue;
    const Json record = Json::parse(line);
    std::vector<double> leaves;
    collect_numeric_leaves(record, leaves);
    for (const double leaf : leaves) {
      for (const auto &secret : secrets) {
        if (leaf == secret.value) {
          cx = {{"ledger_line", line_no},
                {"vehicle", secret.vehicle},
                {"task", secret.task},
                {"leaked_as", secret.what},
                {"value", secret.value}};
          return false;
        }
      }
    }
  }
  return true;
}

// --- complexity: doubling the bidder pool roughly doubles the runtime. -----

double time_auction(const Instance &inst, int reps) {
  double best = std::numeric_limits<double>::infinity();
  for (int batch = 0; batch < 5; ++batch) {
    const auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) {
      const auto out =
          auction::run_src_auction(inst.tasks, inst.bids, inst.env, inst.params);
      if (out.order.size() != inst.tasks.size())
        throw std::logic_error("auction dropped tasks");
    }
    best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
  }
  return best;
}

bool complexity_trial(std::uint64_t trial_seed, Json &cx) {
  Rng rng(trial_seed);
  const Instance small = random_instance(rng, 100, 50);
  const Instance large = random_instance(rng, 100, 100);
  const double t_small = time_auction(small, 20);
  const double t_large = time_auction(large, 20);
  const double ratio = t_large / std::max(t_small, 1e-9);
  if (ratio > 2.6) {
    cx = {{"bidders_small", 50},
          {"bidders_large", 100},
          {"seconds_small", t_small},
          {"seconds_large", t_large},
          {"ratio", ratio}};
    return false;
  }
  return true;
}

}  // namespace

const std::vector<std::string> &suite_names() {
  static const std::vector<std::string> names = {
      "truthfulness", "rationality", "monotonicity", "critical",
      "fairness",     "privacy",     "complexity"};
  return names;
}

SuiteResult run_suite(const std::string &name, int trials, std::uint64_t seed) {
  static const std::map<std::string, TrialFn> suites = {
      {"truthfulness", truthfulness_trial}, {"rationality", rationality_trial},
      {"monotonicity", monotonicity_trial}, {"critical", critical_trial},
      {"fairness", fairness_trial},         {"privacy", privacy_trial},
      {"complexity", complexity_trial}};
  const auto it = suites.find(name);
  if (it == suites.end()) throw std::invalid_argument("unknown suite: " + name);
  return run_trials(name, trials, seed, it->second);
}

}  // namespace seal::verify
