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

#include "seal/ledger.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "seal/hashchain.hpp"
#include "seal/rng.hpp"

namespace seal::ledger {

namespace {

// Fields appended after signing; strip them to rebuild the signed payload.
const char *kUnsignedFields[] = {"sig",       "seq",        "accepted",
                                 "reason",    "t_confirm",  "paid_micro",
                                 "refunded_micro"};

std::string signed_payload(Json record) {
  for (const char *f : kUnsignedFields) record.erase(f);
  return record.dump();
}

std::optional<crypto::Digest> digest_from_hex(const std::string &hex) {
  auto bytes = crypto::from_hex(hex);
  if (!bytes || bytes->size() != 32) return std::nullopt;
  crypto::Digest d{};
  std::copy(bytes->begin(), bytes->end(), d.begin());
  return d;
}

std::optional<std::array<std::uint8_t, 32>> pk_from_hex(const std::string &hex) {
  return digest_from_hex(hex);  // same shape
}

}  // namespace

Micro to_micro(double amount) {
  return static_cast<Micro>(std::llround(amount * kMicroPerUnit));
}

double from_micro(Micro amount) { return static_cast<double>(amount) / kMicroPerUnit; }

Ledger::Ledger(std::uint64_t seed, const PhaseWindows &windows, double slash_fraction)
    : windows_(windows),
      slash_fraction_(slash_fraction),
      delay_state_(derive_seed(seed, "ledger.delay")) {
  if (slash_fraction < 0.0 || slash_fraction > 1.0)
    throw std::invalid_argument("ledger: slash fraction must be in [0,1]");
}

void Ledger::set_consensus_delay(double min_s, double max_s) {
  if (min_s < 0 || max_s < min_s)
    throw std::invalid_argument("ledger: bad consensus delay range");
  delay_min_s_ = min_s;
  delay_max_s_ = max_s;
}

void Ledger::credit(const std::string &pk_hex, Micro amount) {
  if (amount < 0) throw std::invalid_argument("ledger: negative credit");
  wallets_[pk_hex] += amount;
}

Micro Ledger::wallet(const std::string &pk_hex) const {
  auto it = wallets_.find(pk_hex);
  return it == wallets_.end() ? 0 : it->second;
}

Micro Ledger::escrow(const std::string &pk_hex) const {
  auto it = escrow_.find(pk_hex);
  return it == escrow_.end() ? 0 : it->second;
}

Micro Ledger::total_supply() const {
  Micro total = burned_;
  for (const auto &[pk, amt] : wallets_) total += amt;
  for (const auto &[pk, amt] : escrow_) total += amt;
  return total;
}

const Ledger::CommitState *Ledger::commit_of(const std::string &vehicle_pk) const {
  auto it = commits_.find(vehicle_pk);
  return it == commits_.end() ? nullptr : &it->second;
}

int Ledger::accepted_count(const std::string &type) const {
  int n = 0;
  for (const auto &rec : log_)
    if (rec.value("accepted", false) && rec.value("type", "") == type) ++n;
  return n;
}

int Ledger::rejected_count() const {
  int n = 0;
  for (const auto &rec : log_)
    if (!rec.value("accepted", false)) ++n;
  return n;
}

TxResult Ledger::reject(Json record, const std::string &reason) {
  TxResult r;
  r.accepted = false;
  r.reason = reason;
  r.seq = static_cast<std::int64_t>(log_.size());
  record["seq"] = r.seq;
  record["accepted"] = false;
  record["reason"] = reason;
  log_.push_back(std::move(record));
  return r;
}

TxResult Ledger::accept(Json record, double t_submit) {
  TxResult r;
  r.accepted = true;
  r.seq = static_cast<std::int64_t>(log_.size());
  record["seq"] = r.seq;
  record["accepted"] = true;
  delay_state_ = splitmix64(delay_state_);
  const double u = static_cast<double>(delay_state_ >> 11) * 0x1.0p-53;
  record["t_confirm"] = t_submit + delay_min_s_ + (delay_max_s_ - delay_min_s_) * u;
  log_.push_back(std::move(record));
  return r;
}

TxResult Ledger::submit(Json body, const crypto::SigningKey &key, double t_submit) {
  if (!body.contains("type") || !body["type"].is_string())
    throw std::invalid_argument("ledger: transaction body missing type");
  body["from"] = key.pk_hex();
  body["t_submit"] = t_submit;
  const std::string payload = body.dump();
  body["sig"] = crypto::to_hex(crypto::sign_detached(key, payload));

  const std::string type = body["type"].get<std::string>();
  const double t = t_submit;
  const auto &w = windows_;

  auto in = [t](double lo, double hi) { return t >= lo && t < hi; };
  if (type == "deposit" && !in(w.init_end, w.deposit_end))
    return reject(std::move(body), "deposit outside its window");
  if (type == "outcome" && !in(w.deposit_end, w.auction_end))
    return reject(std::move(body), "outcome outside its window");
  if (type == "commit" && !in(w.auction_end, w.commit_end))
    return reject(std::move(body), "commit outside its window");
  if ((type == "result" || type == "key" || type == "claim") && !in(w.commit_end, w.expiry))
    return reject(std::move(body), type + " outside the exchange window");
  if (type == "refund" && t < w.expiry)
    return reject(std::move(body), "refund before expiry");

  if (type == "deposit") return apply_deposit(body);
  if (type == "outcome") return apply_outcome(body);
  if (type == "commit") return apply_commit(body);
  if (type == "result") return apply_result(body);
  if (type == "key") return apply_key(body);
  if (type == "claim") return apply_claim(body);
  if (type == "refund") return apply_refund(body);
  return reject(std::move(body), "unknown transaction type");
}

TxResult Ledger::apply_deposit(const Json &tx) {
  if (!tx.contains("amount_micro") || !tx["amount_micro"].is_number_integer())
    return reject(tx, "deposit needs integer amount_micro");
  const Micro amount = tx["amount_micro"].get<Micro>();
  if (amount <= 0) return reject(tx, "deposit must be positive");
  const std::string from = tx["from"].get<std::string>();
  if (wallet(from) < amount) return reject(tx, "insufficient balance");
  wallets_[from] -= amount;
  escrow_[from] += amount;
  return accept(tx, tx["t_submit"].get<double>());
}

TxResult Ledger::apply_outcome(const Json &tx) {
  const std::string from = tx["from"].get<std::string>();
  if (allocator_pk_.empty() || from != allocator_pk_)
    return reject(tx, "outcome must come from the registered allocator");
  if (outcome_posted_) return reject(tx, "outcome already posted");
  if (!tx.contains("assignments") || !tx["assignments"].is_array())
    return reject(tx, "outcome needs an assignments array");

  std::map<std::string, Award> awards;
  for (const auto &a : tx["assignments"]) {
    if (!a.contains("task") || !a.contains("winner") || !a.contains("payment_micro") ||
        !a.contains("deadline_s"))
      return reject(tx, "malformed assignment entry");
    const std::string winner = a["winner"].get<std::string>();
    if (winner == "cloud") continue;
    auto &award = awards[winner];
    award.task_ids.push_back(a["task"].get<int>());
    award.payments.push_back(a["payment_micro"].get<Micro>());
    award.deadlines_s.push_back(a["deadline_s"].get<double>());
  }
  if (tx.contains("nonce0")) {
    for (const auto &[pk, n0] : tx["nonce0"].items()) {
      auto it = awards.find(pk);
      if (it == awards.end()) return reject(tx, "nonce for a non-winner");
      it->second.nonce0 = n0.get<std::uint64_t>();
    }
  }
  for (const auto &[pk, award] : awards)
    if (award.nonce0 == 0) return reject(tx, "winner missing its nonce");

  awards_ = std::move(awards);
  outcome_posted_ = true;
  return accept(tx, tx["t_submit"].get<double>());
}

TxResult Ledger::apply_commit(const Json &tx) {
  if (!outcome_posted_) return reject(tx, "commit before outcome");
  if (!tx.contains("vehicle") || !tx.contains("root") || !tx.contains("payments_micro"))
    return reject(tx, "commit needs vehicle, root, payments_micro");
  const std::string vehicle = tx["vehicle"].get<std::string>();
  auto award_it = awards_.find(vehicle);
  if (award_it == awards_.end()) return reject(tx, "commit for a non-winner");
  if (commits_.count(vehicle)) return reject(tx, "duplicate commit");

  const auto root = digest_from_hex(tx["root"].get<std::string>());
  if (!root) return reject(tx, "commit root is not a 32-byte hex digest");
  if (!tx["payments_micro"].is_array() ||
      tx["payments_micro"].size() != award_it->second.payments.size())
    return reject(tx, "commit payment count mismatch");
  std::vector<Micro> payments;
  for (const auto &p : tx["payments_micro"]) {
    if (!p.is_number_integer()) return reject(tx, "commit payments must be integers");
    payments.push_back(p.get<Micro>());
  }
  if (payments != award_it->second.payments)
    return reject(tx, "commit payments differ from the posted allocation");

  CommitState c;
  c.vehicle_pk = vehicle;
  c.payer_pk = tx["from"].get<std::string>();
  c.root = *root;
  c.payments = payments;
  c.task_ids = award_it->second.task_ids;
  c.deadlines_s = award_it->second.deadlines_s;
  c.nonce0 = award_it->second.nonce0;
  c.deposit_at_commit = escrow(vehicle);
  commits_[vehicle] = std::move(c);
  return accept(tx, tx["t_submit"].get<double>());
}

TxResult Ledger::apply_result(const Json &tx) {
  const std::string from = tx["from"].get<std::string>();
  auto it = commits_.find(from);
  if (it == commits_.end()) return reject(tx, "result without a commit");
  CommitState &c = it->second;
  if (!tx.contains("index") || !tx["index"].is_number_integer())
    return reject(tx, "result needs an index");
  const int idx = tx["index"].get<int>();
  const int n = static_cast<int>(c.payments.size());
  if (idx < 1 || idx > n) return reject(tx, "result index out of range");
  if (!tx.contains("task") || tx["task"].get<int>() != c.task_ids[idx - 1])
    return reject(tx, "result task does not match the committed slot");
  if (c.key_commit.count(idx)) return reject(tx, "duplicate result for this slot");
  if (!tx.contains("key_commit") || !tx.contains("result_hash"))
    return reject(tx, "result needs key_commit and result_hash");
  const auto commit = digest_from_hex(tx["key_commit"].get<std::string>());
  if (!commit) return reject(tx, "key_commit is not a 32-byte hex digest");
  const std::string dedup = from + ":" + tx["key_commit"].get<std::string>();
  if (seen_key_commits_.count(dedup)) return reject(tx, "replayed result commitment");
  const double t = tx["t_submit"].get<double>();
  if (t > windows_.commit_end + c.deadlines_s[idx - 1])
    return reject(tx, "result after the task deadline");

  seen_key_commits_.insert(dedup);
  c.key_commit[idx] = *commit;
  return accept(tx, t);
}

TxResult Ledger::apply_key(const Json &tx) {
  const std::string from = tx["from"].get<std::string>();
  auto it = commits_.find(from);
  if (it == commits_.end()) return reject(tx, "key without a commit");
  CommitState &c = it->second;
  if (!tx.contains("index") || !tx["index"].is_number_integer())
    return reject(tx, "key needs an index");
  const int idx = tx["index"].get<int>();
  const int n = static_cast<int>(c.payments.size());
  if (idx < 1 || idx > n) return reject(tx, "key index out of range");
  auto commit_it = c.key_commit.find(idx);
  if (commit_it == c.key_commit.end()) return reject(tx, "key before its result");
  if (c.keyed.count(idx)) return reject(tx, "duplicate key");
  if (c.failed.count(idx)) return reject(tx, "slot already marked failed");
  if (!tx.contains("key")) return reject(tx, "key transaction without key material");
  const auto key_bytes = crypto::from_hex(tx["key"].get<std::string>());
  if (!key_bytes) return reject(tx, "key is not valid hex");
  const double t = tx["t_submit"].get<double>();
  if (t > windows_.commit_end + c.deadlines_s[idx - 1])
    return reject(tx, "key after the task deadline");

  crypto::Bytes material = *key_bytes;
  const auto nonce = crypto::le64(c.nonce0 + static_cast<std::uint64_t>(idx));
  material.insert(material.end(), nonce.begin(), nonce.end());
  if (crypto::keccak256(material) != commit_it->second)
    return reject(tx, "key does not match its commitment");

  c.keyed.insert(idx);
  c.keys_hex[idx] = tx["key"].get<std::string>();
  return accept(tx, t);
}

void Ledger::sweep_deadlines(double t_now) {
  for (auto &[vehicle, c] : commits_) {
    const int n = static_cast<int>(c.payments.size());
    for (int idx = 1; idx <= n; ++idx) {
      if (c.keyed.count(idx) || c.failed.count(idx)) continue;
      if (t_now <= windows_.commit_end + c.deadlines_s[idx - 1]) continue;
      c.failed.insert(idx);
      const Micro share = static_cast<Micro>(
          std::llround(slash_fraction_ * static_cast<double>(c.deposit_at_commit) /
                       static_cast<double>(n)));
      const Micro slashed = std::min(escrow(vehicle), std::max<Micro>(share, 0));
      escrow_[vehicle] -= slashed;
      burned_ += slashed;

      Json rec;
      rec["type"] = "fmap";
      rec["from"] = "contract";
      rec["t_submit"] = t_now;
      rec["vehicle"] = vehicle;
      rec["index"] = idx;
      rec["task"] = c.task_ids[idx - 1];
      rec["slashed_micro"] = slashed;
      rec["seq"] = static_cast<std::int64_t>(log_.size());
      rec["accepted"] = true;
      log_.push_back(std::move(rec));
    }
  }
}

TxResult Ledger::apply_claim(const Json &tx) {
  const std::string from = tx["from"].get<std::string>();
  auto it = commits_.find(from);
  if (it == commits_.end()) return reject(tx, "claim without a commit");
  CommitState &c = it->second;
  if (c.claimed) return reject(tx, "duplicate claim");
  if (!tx.contains("count") || !tx["count"].is_number_integer())
    return reject(tx, "claim needs a count");
  const int count = tx["count"].get<int>();
  const int n = static_cast<int>(c.payments.size());
  if (count < 1 || count > n) return reject(tx, "claim count out of range");
  if (!tx.contains("payword")) return reject(tx, "claim needs a payword");
  const auto payword = digest_from_hex(tx["payword"].get<std::string>());
  if (!payword) return reject(tx, "payword is not a 32-byte hex digest");
  if (!hashchain::verify_claim(c.root, *payword, count, c.payments))
    return reject(tx, "payword does not fold to the committed root");

  Micro payout = 0;
  for (int idx = 1; idx <= count; ++idx)
    if (!c.failed.count(idx)) payout += c.payments[idx - 1];
  payout = std::max<Micro>(payout, 0);
  payout = std::min(payout, escrow(c.payer_pk));

  escrow_[c.payer_pk] -= payout;
  wallets_[from] += payout;
  c.claimed = true;
  c.claimed_count = count;
  c.claim_paid = payout;

  Json rec = tx;
  rec["paid_micro"] = payout;
  return accept(std::move(rec), tx["t_submit"].get<double>());
}

TxResult Ledger::apply_refund(const Json &tx) {
  const std::string from = tx["from"].get<std::string>();
  if (refunded_.count(from)) return reject(tx, "already refunded");
  const Micro held = escrow(from);
  if (held <= 0) return reject(tx, "nothing to refund");
  escrow_[from] -= held;
  wallets_[from] += held;
  refunded_.insert(from);

  Json rec = tx;
  rec["refunded_micro"] = held;
  return accept(std::move(rec), tx["t_submit"].get<double>());
}

std::string Ledger::serialize_jsonl() const {
  std::ostringstream out;
  for (const auto &rec : log_) out << rec.dump() << "\n";
  return out.str();
}

std::vector<Json> Ledger::parse_jsonl(const std::string &text) {
  std::vector<Json> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Json rec = Json::parse(line, nullptr, false);
    if (rec.is_discarded())
      throw std::runtime_error("ledger log line " + std::to_string(line_no) +
                               ": invalid JSON");
    out.push_back(std::move(rec));
  }
  return out;
}

std::optional<std::int64_t> Ledger::audit_signatures(const std::vector<Json> &log) {
  for (const auto &rec : log) {
    const std::string from = rec.value("from", "");
    if (from == "contract") continue;  // contract records are unsigned
    const auto pk = pk_from_hex(from);
    const auto sig = crypto::from_hex(rec.value("sig", ""));
    if (!pk || !sig) return rec.value("seq", std::int64_t{-1});
    if (!crypto::verify_detached(*pk, signed_payload(rec), *sig))
      return rec.value("seq", std::int64_t{-1});
  }
  return std::nullopt;
}

}  // namespace seal::ledger
