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

// Trusted-execution stand-in for the off-chain allocator. Bidders verify a
// measurement quote, then seal their quotes to the enclave's box key; the
// enclave unseals in private, drops under-escrowed bidders, runs the
// allocation, and emits a signed posting. Raw quotes never leave this class.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "seal/auction.hpp"
#include "seal/crypto.hpp"
#include "seal/ledger.hpp"

namespace seal::enclave {

using Json = nlohmann::ordered_json;

// Bid payload a vehicle seals to the enclave:
//   { "vehicle_id": int, "nonce0": uint64,
//     "bundle": [task ids], "resources": {"task": cps}, "prices": {"task": b} }
Json bid_payload(const auction::CombinatorialBid &bid, std::uint64_t nonce0);

struct SealedBid {
  std::string sender_sign_pk_hex;             // ledger identity of the bidder
  std::array<std::uint8_t, 32> sender_box_pk{};
  crypto::BoxNonce nonce{};
  crypto::Bytes ciphertext;
};

class EnclaveSim {
 public:
  EnclaveSim(std::uint64_t seed, std::string program_source);

  const crypto::Digest &program_hash() const { return program_hash_; }
  std::string sign_pk_hex() const { return sign_key_.pk_hex(); }
  const std::array<std::uint8_t, 32> &box_pk() const { return box_key_.pk; }
  const crypto::SigningKey &signing_key() const { return sign_key_; }

  // Measurement quote binding the program hash to the enclave's keys.
  Json attestation_quote() const;
  // Client-side gate: quote integrity plus the expected program measurement.
  static bool verify_quote(const Json &quote, const crypto::Digest &expected_program);

  // Accepts the blob for later unsealing; malformed senders surface at
  // execution as exclusions. Returns false only on structurally empty input.
  bool submit_sealed_bid(const SealedBid &bid);
  int sealed_bid_count() const { return static_cast<int>(sealed_.size()); }

  struct Exclusion {
    std::string pk_hex;
    std::string reason;
  };

  struct ExecutionResult {
    auction::AuctionOutcome outcome;
    std::map<int, std::string> pk_of_vehicle;       // id -> ledger identity
    std::map<int, std::uint64_t> nonce0_of;         // id -> key-commitment base
    std::map<std::string, ledger::Micro> escrow_need;  // bidder pk -> required escrow
    std::vector<Exclusion> excluded;
    Json outcome_tx;  // ready to submit under the enclave signing key
  };

  // Deterministic and side-effect free: unseal, drop bidders whose escrow is
  // below multiplier * (their highest quote), allocate, price. `deposits`
  // maps bidder pk to escrowed micro units.
  ExecutionResult execute(const std::vector<cost::TaskSpec> &tasks,
                          const std::map<int, auction::BidderEnv> &env,
                          const auction::AuctionParams &params,
                          double deposit_multiplier,
                          const std::map<std::string, ledger::Micro> &deposits) const;

 private:
  std::string program_source_;
  crypto::Digest program_hash_{};
  crypto::SigningKey sign_key_;
  crypto::BoxKey box_key_;
  std::vector<SealedBid> sealed_;
};

}  // namespace seal::enclave
