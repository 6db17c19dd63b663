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

#include "seal/enclave.hpp"

#include <cmath>
#include <stdexcept>

#include "seal/rng.hpp"

namespace seal::enclave {

namespace {

constexpr const char *kQuoteTag = "seal.enclave.quote.v1";

crypto::Digest quote_measurement(const std::string &program_hash_hex,
                                 const std::string &sign_pk_hex,
                                 const std::string &box_pk_hex) {
  return crypto::keccak256(program_hash_hex + "|" + sign_pk_hex + "|" + box_pk_hex +
                           "|" + kQuoteTag);
}

}  // namespace

Json bid_payload(const auction::CombinatorialBid &bid, std::uint64_t nonce0) {
  Json j;
  j["vehicle_id"] = bid.vehicle_id;
  j["nonce0"] = nonce0;
  j["bundle"] = bid.bundle;
  Json resources = Json::object();
  Json prices = Json::object();
  for (const auto &[task, rate] : bid.resources) resources[std::to_string(task)] = rate;
  for (const auto &[task, price] : bid.prices) prices[std::to_string(task)] = price;
  j["resources"] = std::move(resources);
  j["prices"] = std::move(prices);
  return j;
}

EnclaveSim::EnclaveSim(std::uint64_t seed, std::string program_source)
    : program_source_(std::move(program_source)) {
  program_hash_ = crypto::keccak256(program_source_);
  Rng rng(derive_seed(seed, "enclave.keys"));
  sign_key_ = crypto::SigningKey::from_seed(random_bytes<32>(rng));
  box_key_ = crypto::BoxKey::from_seed(random_bytes<32>(rng));
}

Json EnclaveSim::attestation_quote() const {
  Json q;
  q["program_hash"] = crypto::to_hex(program_hash_);
  q["sign_pk"] = sign_key_.pk_hex();
  q["box_pk"] = crypto::to_hex(box_key_.pk.data(), box_key_.pk.size());
  q["measurement"] = crypto::to_hex(quote_measurement(
      q["program_hash"].get<std::string>(), q["sign_pk"].get<std::string>(),
      q["box_pk"].get<std::string>()));
  return q;
}

bool EnclaveSim::verify_quote(const Json &quote, const crypto::Digest &expected_program) {
  if (!quote.contains("program_hash") || !quote.contains("sign_pk") ||
      !quote.contains("box_pk") || !quote.contains("measurement"))
    return false;
  const auto measured = quote_measurement(quote["program_hash"].get<std::string>(),
                                          quote["sign_pk"].get<std::string>(),
                                          quote["box_pk"].get<std::string>());
  if (crypto::to_hex(measured) != quote["measurement"].get<std::string>()) return false;
  return quote["program_hash"].get<std::string>() == crypto::to_hex(expected_program);
}

bool EnclaveSim::submit_sealed_bid(const SealedBid &bid) {
  if (bid.ciphertext.empty() || bid.sender_sign_pk_hex.empty()) return false;
  sealed_.push_back(bid);
  return true;
}

EnclaveSim::ExecutionResult EnclaveSim::execute(
    const std::vector<cost::TaskSpec> &tasks, const std::map<int, auction::BidderEnv> &env,
    const auction::AuctionParams &params, double deposit_multiplier,
    const std::map<std::string, ledger::Micro> &deposits) const {
  ExecutionResult result;
  std::map<int, auction::CombinatorialBid> bids;

  for (const auto &sealed : sealed_) {
    const auto plain = crypto::box_decrypt(box_key_, sealed.sender_box_pk, sealed.nonce,
                                           sealed.ciphertext);
    if (!plain) {
      result.excluded.push_back({sealed.sender_sign_pk_hex, "unsealing failed"});
      continue;
    }
    Json j = Json::parse(plain->begin(), plain->end(), nullptr, false);
    if (j.is_discarded() || !j.contains("vehicle_id") || !j.contains("nonce0") ||
        !j.contains("bundle") || !j.contains("resources") || !j.contains("prices")) {
      result.excluded.push_back({sealed.sender_sign_pk_hex, "malformed bid payload"});
      continue;
    }

    auction::CombinatorialBid bid;
    bid.vehicle_id = j["vehicle_id"].get<int>();
    for (const auto &t : j["bundle"]) bid.bundle.push_back(t.get<int>());
    for (const auto &[k, v] : j["resources"].items())
      bid.resources[std::stoi(k)] = v.get<double>();
    for (const auto &[k, v] : j["prices"].items())
      bid.prices[std::stoi(k)] = v.get<double>();

    double max_price = 0.0;
    for (int task : bid.bundle) {
      auto it = bid.prices.find(task);
      if (it != bid.prices.end()) max_price = std::max(max_price, it->second);
    }
    const auto need = static_cast<ledger::Micro>(
        std::ceil(deposit_multiplier * max_price * ledger::kMicroPerUnit));
    result.escrow_need[sealed.sender_sign_pk_hex] = need;

    auto depo_it = deposits.find(sealed.sender_sign_pk_hex);
    const ledger::Micro held = depo_it == deposits.end() ? 0 : depo_it->second;
    if (held < need) {
      result.excluded.push_back({sealed.sender_sign_pk_hex, "under-escrowed"});
      continue;
    }
    if (!env.count(bid.vehicle_id)) {
      result.excluded.push_back({sealed.sender_sign_pk_hex, "unknown vehicle"});
      continue;
    }

    result.pk_of_vehicle[bid.vehicle_id] = sealed.sender_sign_pk_hex;
    result.nonce0_of[bid.vehicle_id] = j["nonce0"].get<std::uint64_t>();
    bids[bid.vehicle_id] = std::move(bid);
  }

  result.outcome = auction::run_src_auction(tasks, bids, env, params);

  std::map<int, const cost::TaskSpec *> task_by_id;
  for (const auto &t : tasks) task_by_id[t.id] = &t;

  Json assignments = Json::array();
  for (int task_id : result.outcome.order) {
    const int winner = result.outcome.winner_of.at(task_id);
    Json a;
    a["task"] = task_id;
    if (winner == auction::kCloud) {
      a["winner"] = "cloud";
      a["payment_micro"] = ledger::to_micro(params.reserve_price);
    } else {
      a["winner"] = result.pk_of_vehicle.at(winner);
      a["payment_micro"] = ledger::to_micro(result.outcome.payment_of.at(task_id));
    }
    a["deadline_s"] = task_by_id.at(task_id)->deadline_s;
    assignments.push_back(std::move(a));
  }

  Json nonce0 = Json::object();
  for (int vid : result.outcome.winners)
    nonce0[result.pk_of_vehicle.at(vid)] = result.nonce0_of.at(vid);

  Json excluded = Json::array();
  for (const auto &e : result.excluded) {
    Json x;
    x["pk"] = e.pk_hex;
    x["reason"] = e.reason;
    excluded.push_back(std::move(x));
  }

  result.outcome_tx["type"] = "outcome";
  result.outcome_tx["assignments"] = std::move(assignments);
  result.outcome_tx["nonce0"] = std::move(nonce0);
  result.outcome_tx["excluded"] = std::move(excluded);
  return result;
}

}  // namespace seal::enclave
