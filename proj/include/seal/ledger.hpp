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

// Single-node simulation of the settlement contract: funded accounts, escrow
// deposits, phase-windowed transaction types, Ed25519-signed submissions, a
// deadline sweep that marks undelivered work and burns the matching escrow
// share, payword-chain claims, and expiry refunds. Amounts are integer micro
// currency units throughout, so conservation checks are exact.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "seal/crypto.hpp"

namespace seal::ledger {

using Micro = std::int64_t;
using Json = nlohmann::ordered_json;

inline constexpr double kMicroPerUnit = 1e6;

Micro to_micro(double amount);
double from_micro(Micro amount);

// Submission-time gates per transaction type. Half-open: [begin, end).
struct PhaseWindows {
  double init_end = 10.0;      // identity/bid registration (off-ledger)
  double deposit_end = 20.0;   // escrow funding
  double auction_end = 30.0;   // allocation posting
  double commit_end = 40.0;    // chain roots; service starts at commit_end
  double expiry = 160.0;       // delivery + claims close, refunds open
};

struct TxResult {
  bool accepted = false;
  std::string reason;          // empty when accepted
  std::int64_t seq = -1;
};

class Ledger {
 public:
  Ledger(std::uint64_t seed, const PhaseWindows &windows, double slash_fraction = 1.0);

  // Confirmation latency drawn per accepted transaction; acceptance gates
  // use submission time, so this is reporting-only.
  void set_consensus_delay(double min_s, double max_s);

  // Genesis funding, outside any window.
  void credit(const std::string &pk_hex, Micro amount);

  Micro wallet(const std::string &pk_hex) const;
  Micro escrow(const std::string &pk_hex) const;
  Micro burned() const { return burned_; }
  Micro total_supply() const;

  // Sign `body` with `key` (which becomes the sender) and submit at t_submit.
  // Every submission is logged, accepted or not. Body must carry "type".
  TxResult submit(Json body, const crypto::SigningKey &key, double t_submit);

  // Contract-side deadline sweep: any committed chain index whose delivery
  // deadline has passed without an accepted key is marked failed and the
  // vehicle's per-task escrow share is burned. Appends fmap records.
  void sweep_deadlines(double t_now);

  // The authority whose signature the allocation posting must carry.
  void set_allocator(const std::string &pk_hex) { allocator_pk_ = pk_hex; }

  struct CommitState {
    std::string vehicle_pk;
    std::string payer_pk;  // whose escrow the claim draws on
    crypto::Digest root{};
    std::vector<Micro> payments;     // assignment order
    std::vector<int> task_ids;
    std::vector<double> deadlines_s; // per index, relative to service start
    std::uint64_t nonce0 = 0;
    Micro deposit_at_commit = 0;     // escrow snapshot for slash sizing
    std::set<int> keyed;             // indexes with accepted keys (1-based)
    std::set<int> failed;            // fmap indexes (1-based)
    std::map<int, crypto::Digest> key_commit;  // index -> H(key || le64(nonce))
    std::map<int, std::string> keys_hex;       // accepted keys
    bool claimed = false;
    int claimed_count = 0;
    Micro claim_paid = 0;
  };

  const CommitState *commit_of(const std::string &vehicle_pk) const;
  const std::map<std::string, CommitState> &commits() const { return commits_; }

  const std::vector<Json> &log() const { return log_; }
  int accepted_count(const std::string &type) const;
  int rejected_count() const;

  std::string serialize_jsonl() const;
  static std::vector<Json> parse_jsonl(const std::string &text);
  // Re-check every signed record in a serialized log; returns the first
  // offending seq, or nullopt when all signatures hold.
  static std::optional<std::int64_t> audit_signatures(const std::vector<Json> &log);

  const PhaseWindows &windows() const { return windows_; }

 private:
  TxResult reject(Json record, const std::string &reason);
  TxResult accept(Json record, double t_submit);

  TxResult apply_deposit(const Json &tx);
  TxResult apply_outcome(const Json &tx);
  TxResult apply_commit(const Json &tx);
  TxResult apply_result(const Json &tx);
  TxResult apply_key(const Json &tx);
  TxResult apply_claim(const Json &tx);
  TxResult apply_refund(const Json &tx);

  PhaseWindows windows_;
  double slash_fraction_;
  double delay_min_s_ = 0.30;
  double delay_max_s_ = 0.81;
  std::uint64_t delay_state_;

  std::map<std::string, Micro> wallets_;
  std::map<std::string, Micro> escrow_;
  Micro burned_ = 0;

  std::string allocator_pk_;
  bool outcome_posted_ = false;
  // Per winning vehicle, from the allocation posting.
  struct Award {
    std::vector<int> task_ids;
    std::vector<Micro> payments;
    std::vector<double> deadlines_s;
    std::uint64_t nonce0 = 0;
  };
  std::map<std::string, Award> awards_;
  std::map<std::string, CommitState> commits_;
  std::set<std::string> seen_key_commits_;  // per-ledger replay guard
  std::set<std::string> refunded_;

  std::vector<Json> log_;
};

}  // namespace seal::ledger
