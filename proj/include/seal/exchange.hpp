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

// End-to-end commit-then-claim protocol run over one hover location:
// attestation and sealed quotes, escrow deposits, the allocation posting,
// per-winner payword-chain commits, result/key delivery against deadlines,
// the failure sweep, chain claims, and expiry refunds — with optional
// scripted misbehavior on either side of the trade.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "seal/auction.hpp"
#include "seal/config.hpp"
#include "seal/ledger.hpp"
#include "seal/scenario.hpp"

namespace seal::exchange {

enum class Adversary { kHonest, kBidderAborts, kUavRefuses, kWrongKey, kReplay };

Adversary adversary_from_string(const std::string &name);
std::string to_string(Adversary a);

// Per-task settlement outcome. A fair exchange only ever produces the first
// two; kViolation means one side kept both the goods and the money.
enum class TaskVerdict { kDeliveredAndPaid, kNeitherWithPenalty, kViolation };

struct ProtocolParams {
  double phase_init_s = 10.0;
  double phase_deposit_s = 10.0;
  double phase_auction_s = 10.0;
  double phase_commit_s = 10.0;
  double claim_window_s = 120.0;
  double deposit_multiplier = 1.5;
  double slash_fraction = 1.0;
  double consensus_delay_min_s = 0.30;
  double consensus_delay_max_s = 0.81;
  double initial_balance = 10000.0;
  Adversary adversary = Adversary::kHonest;

  static ProtocolParams from_config(const config::Config &cfg);
};

struct ProtocolReport {
  std::map<int, TaskVerdict> verdict_of;  // vehicle-assigned task id -> verdict
  int violations = 0;
  std::map<int, std::vector<int>> fmap;   // vehicle id -> failed chain indexes
  std::map<int, double> vehicle_payoff;   // net of compute cost, currency
  double uav_payoff = 0.0;                // negative weighted energy + spend
  double uav_energy_j = 0.0;
  double uav_payment_total = 0.0;         // claims honored + cloud fees
  int cloud_refills = 0;                  // failed tasks re-bought from the cloud
  bool conservation_ok = false;
  ledger::Micro supply_before = 0;
  ledger::Micro supply_after = 0;
  int rejected_txs = 0;
  std::map<std::string, int> accepted_tx_counts;
  bool script_applied = true;             // false when no eligible victim existed
  int misbehaving_vehicle = -1;           // victim id for vehicle-side scripts
  int delivered_tasks = 0;
  auction::AuctionOutcome outcome;
  std::string ledger_jsonl;
  std::vector<std::string> events;
};

ProtocolReport run_protocol(const scenario::Scenario &s, const ProtocolParams &p,
                            std::uint64_t seed);

}  // namespace seal::exchange
