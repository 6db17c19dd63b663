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

#include "seal/exchange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "seal/enclave.hpp"
#include "seal/hashchain.hpp"
#include "seal/rng.hpp"

namespace seal::exchange {

namespace {

using Json = nlohmann::ordered_json;

// Published allocator program; bidders attest its measurement before sealing.
constexpr const char *kAllocatorProgram =
    "allocator v1: unseal quotes; drop bidders escrowed below "
    "multiplier*max_quote; order tasks by urgency; per task pick the feasible "
    "quote with the lowest energy+price score; price winners at their "
    "critical value; unmatched tasks go to the cloud at the reserve fee.";

constexpr const char *kResultBindingTag = "seal.result.binding.v1";

crypto::Digest result_proof(const crypto::Bytes &ciphertext, const crypto::Digest &key_commit) {
  crypto::Bytes buf = ciphertext;
  buf.insert(buf.end(), key_commit.begin(), key_commit.end());
  const std::string tag = kResultBindingTag;
  buf.insert(buf.end(), tag.begin(), tag.end());
  return crypto::keccak256(buf);
}

crypto::Digest key_commitment(const crypto::SecretKey &key, std::uint64_t nonce) {
  crypto::Bytes buf(key.begin(), key.end());
  const auto n = crypto::le64(nonce);
  buf.insert(buf.end(), n.begin(), n.end());
  return crypto::keccak256(buf);
}

std::string fmt_time(double t) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << t;
  return os.str();
}

struct VehicleActor {
  int id = 0;
  crypto::SigningKey sign;
  crypto::BoxKey box;
  std::uint64_t nonce0 = 0;
};

struct ResultMsg {
  int task_id = 0;
  int index = 0;
  crypto::Bytes ciphertext;
  crypto::Digest key_commit{};
  crypto::Digest proof{};
};

}  // namespace

Adversary adversary_from_string(const std::string &name) {
  if (name == "honest") return Adversary::kHonest;
  if (name == "bidder_aborts") return Adversary::kBidderAborts;
  if (name == "uav_refuses") return Adversary::kUavRefuses;
  if (name == "wrong_key") return Adversary::kWrongKey;
  if (name == "replay") return Adversary::kReplay;
  throw std::invalid_argument("unknown adversary script: " + name);
}

std::string to_string(Adversary a) {
  switch (a) {
    case Adversary::kHonest: return "honest";
    case Adversary::kBidderAborts: return "bidder_aborts";
    case Adversary::kUavRefuses: return "uav_refuses";
    case Adversary::kWrongKey: return "wrong_key";
    case Adversary::kReplay: return "replay";
  }
  return "honest";
}

ProtocolParams ProtocolParams::from_config(const config::Config &cfg) {
  ProtocolParams p;
  p.phase_init_s = cfg.phase_init_s;
  p.phase_deposit_s = cfg.phase_deposit_s;
  p.phase_auction_s = cfg.phase_auction_s;
  p.phase_commit_s = cfg.phase_commit_s;
  p.claim_window_s = cfg.claim_window_s;
  p.deposit_multiplier = cfg.deposit_multiplier;
  p.slash_fraction = cfg.slash_fraction;
  p.consensus_delay_min_s = cfg.consensus_delay_min_s;
  p.consensus_delay_max_s = cfg.consensus_delay_max_s;
  p.initial_balance = cfg.initial_balance;
  p.adversary = adversary_from_string(cfg.adversary);
  return p;
}

ProtocolReport run_protocol(const scenario::Scenario &s, const ProtocolParams &p,
                            std::uint64_t seed) {
  ProtocolReport report;
  Rng rng(derive_seed(seed, "protocol"));

  ledger::PhaseWindows windows;
  windows.init_end = p.phase_init_s;
  windows.deposit_end = windows.init_end + p.phase_deposit_s;
  windows.auction_end = windows.deposit_end + p.phase_auction_s;
  windows.commit_end = windows.auction_end + p.phase_commit_s;
  windows.expiry = windows.commit_end + p.claim_window_s;

  enclave::EnclaveSim enclave(derive_seed(seed, "enclave"), kAllocatorProgram);
  const crypto::Digest expected_program = crypto::keccak256(std::string(kAllocatorProgram));

  crypto::SigningKey uav = crypto::SigningKey::from_seed(random_bytes<32>(rng));

  // ---- Init: attestation, then sealed quotes straight to the enclave. ----
  std::map<int, VehicleActor> actors;
  for (const auto &[vid, bid] : s.bids) {
    VehicleActor a;
    a.id = vid;
    Rng vrng(derive_seed(seed, "vehicle", static_cast<std::uint64_t>(vid)));
    a.sign = crypto::SigningKey::from_seed(random_bytes<32>(vrng));
    a.box = crypto::BoxKey::from_seed(random_bytes<32>(vrng));
    // Keep the commitment nonce base far above every other numeric field.
    a.nonce0 = (splitmix64(derive_seed(seed, "vehicle.nonce", vid)) >> 2) + (1ULL << 32);
    actors[vid] = a;
  }

  const auto quote = enclave.attestation_quote();
  for (const auto &[vid, actor] : actors) {
    if (!enclave::EnclaveSim::verify_quote(quote, expected_program)) {
      report.events.push_back("vehicle " + std::to_string(vid) +
                              " refused to bid: attestation failed");
      continue;
    }
    const Json payload = enclave::bid_payload(s.bids.at(vid), actor.nonce0);
    const std::string text = payload.dump();
    enclave::SealedBid sealed;
    sealed.sender_sign_pk_hex = actor.sign.pk_hex();
    sealed.sender_box_pk = actor.box.pk;
    sealed.nonce = crypto::box_nonce(static_cast<std::uint64_t>(vid));
    sealed.ciphertext = crypto::box_encrypt(
        actor.box, enclave.box_pk(), sealed.nonce,
        crypto::Bytes(text.begin(), text.end()));
    enclave.submit_sealed_bid(sealed);
  }

  // ---- Escrow sizing via a dry run (enclave execution is deterministic). ----
  std::map<std::string, ledger::Micro> assumed_deposits;
  {
    std::map<std::string, ledger::Micro> everyone_flush;
    for (const auto &[vid, actor] : actors)
      everyone_flush[actor.sign.pk_hex()] = std::numeric_limits<ledger::Micro>::max() / 4;
    const auto probe = enclave.execute(s.tasks, s.env, s.params, p.deposit_multiplier,
                                       everyone_flush);
    assumed_deposits = probe.escrow_need;
  }

  ledger::Micro uav_escrow_need = 0;
  {
    const auto dry = enclave.execute(s.tasks, s.env, s.params, p.deposit_multiplier,
                                     assumed_deposits);
    for (const auto &a : dry.outcome_tx["assignments"])
      if (a["winner"].get<std::string>() != "cloud")
        uav_escrow_need += a["payment_micro"].get<ledger::Micro>();
  }

  // ---- Fund accounts, then freeze the money supply for conservation. ----
  ledger::Ledger chain(derive_seed(seed, "ledger"), windows, p.slash_fraction);
  chain.set_consensus_delay(p.consensus_delay_min_s, p.consensus_delay_max_s);
  chain.set_allocator(enclave.sign_pk_hex());
  const ledger::Micro balance_micro = ledger::to_micro(p.initial_balance);
  for (const auto &[vid, actor] : actors) chain.credit(actor.sign.pk_hex(), balance_micro);
  chain.credit(uav.pk_hex(), balance_micro + uav_escrow_need);
  report.supply_before = chain.total_supply();

  // ---- Deposit phase. ----
  const double t_vehicle_deposit = windows.init_end + 1.0;
  for (const auto &[vid, actor] : actors) {
    const auto need_it = assumed_deposits.find(actor.sign.pk_hex());
    const ledger::Micro need = need_it == assumed_deposits.end() ? 0 : need_it->second;
    if (need <= 0) continue;
    // Round up to a coarse grid so the public amount doesn't encode the
    // quote-derived requirement.
    const ledger::Micro grid = 10 * ledger::kMicroPerUnit;
    const ledger::Micro amount = (need + grid - 1) / grid * grid;
    Json tx;
    tx["type"] = "deposit";
    tx["amount_micro"] = amount;
    chain.submit(std::move(tx), actor.sign, t_vehicle_deposit);
  }
  if (uav_escrow_need > 0) {
    Json tx;
    tx["type"] = "deposit";
    tx["amount_micro"] = uav_escrow_need;
    chain.submit(std::move(tx), uav, windows.init_end + 2.0);
  }

  // ---- Auction phase: the enclave posts the allocation. ----
  std::map<std::string, ledger::Micro> actual_deposits;
  for (const auto &[vid, actor] : actors)
    actual_deposits[actor.sign.pk_hex()] = chain.escrow(actor.sign.pk_hex());
  const auto exec = enclave.execute(s.tasks, s.env, s.params, p.deposit_multiplier,
                                    actual_deposits);
  report.outcome = exec.outcome;
  chain.submit(exec.outcome_tx, enclave.signing_key(), windows.deposit_end + 1.0);

  // ---- Script victim selection. ----
  const bool vehicle_script = p.adversary == Adversary::kBidderAborts ||
                              p.adversary == Adversary::kWrongKey ||
                              p.adversary == Adversary::kReplay;
  int victim = -1;
  {
    int best_count = 0;
    for (int vid : exec.outcome.winners) {
      const int n = static_cast<int>(exec.outcome.tasks_of.at(vid).size());
      if (n > best_count) {
        best_count = n;
        victim = vid;
      }
    }
    if (p.adversary == Adversary::kReplay && best_count < 2) victim = -1;
    if (p.adversary != Adversary::kHonest && victim < 0) report.script_applied = false;
    if (p.adversary == Adversary::kHonest) victim = -1;
  }
  if (vehicle_script && victim >= 0) report.misbehaving_vehicle = victim;

  std::set<int> scripted_indexes;  // per-victim chain indexes the script touches
  int refuse_after = -1;           // paywords stop beyond this index (uav_refuses)
  if (victim >= 0) {
    const int n = static_cast<int>(exec.outcome.tasks_of.at(victim).size());
    Rng srng(derive_seed(seed, "script"));
    switch (p.adversary) {
      case Adversary::kBidderAborts:
      case Adversary::kWrongKey:
        for (int l = 1; l <= n; ++l)
          if (uniform_int(srng, 0, 1) == 1) scripted_indexes.insert(l);
        if (scripted_indexes.empty()) scripted_indexes.insert(1 + uniform_int(srng, 0, n - 1));
        break;
      case Adversary::kReplay:
        scripted_indexes.insert(2);  // reuse slot 1's delivery for slot 2
        break;
      case Adversary::kUavRefuses:
        refuse_after = n / 2;
        break;
      case Adversary::kHonest:
        break;
    }
  }

  // ---- Commit phase: the drone commits one payword chain per winner. ----
  std::map<int, hashchain::Chain> chains;
  std::map<int, const cost::TaskSpec *> task_by_id;
  for (const auto &t : s.tasks) task_by_id[t.id] = &t;

  for (int vid : exec.outcome.winners) {
    std::vector<ledger::Micro> payments;
    for (int task_id : exec.outcome.tasks_of.at(vid))
      payments.push_back(ledger::to_micro(exec.outcome.payment_of.at(task_id)));
    Rng crng(derive_seed(seed, "chain.tail", static_cast<std::uint64_t>(vid)));
    chains[vid] = hashchain::build(payments, random_bytes<32>(crng));

    Json tx;
    tx["type"] = "commit";
    tx["vehicle"] = actors.at(vid).sign.pk_hex();
    tx["root"] = crypto::to_hex(chains.at(vid).root());
    tx["payments_micro"] = payments;
    chain.submit(std::move(tx), uav, windows.auction_end + 1.0);
  }

  // ---- Exchange phase: deliver, verify, pay, reveal — task by task. ----
  const double t_start = windows.commit_end;
  double hover_s = 0.0, radio_s = 0.0;
  std::map<int, double> compute_cost;          // vehicle id -> sum of theta
  std::map<int, int> max_payword;              // vehicle id -> highest payword held
  std::map<int, std::map<int, ResultMsg>> inbox;  // vehicle -> index -> delivery
  std::set<std::string> uav_seen_commitments;
  double max_deadline = 0.0;

  for (int vid : exec.outcome.winners) {
    const auto &actor = actors.at(vid);
    const auto &tasks = exec.outcome.tasks_of.at(vid);
    const auto &bid = s.bids.at(vid);
    const auto &env = s.env.at(vid);
    Rng krng(derive_seed(seed, "vehicle.keys", static_cast<std::uint64_t>(vid)));
    bool stopped_serving = false;

    for (int l = 1; l <= static_cast<int>(tasks.size()); ++l) {
      const int task_id = tasks[static_cast<std::size_t>(l - 1)];
      const cost::TaskSpec &task = *task_by_id.at(task_id);
      const bool is_victim = vid == victim;
      max_deadline = std::max(max_deadline, task.deadline_s);

      const double t_tx = task.size_bits / env.link_rate_bps;
      const double t_done = cost::task_completion_time(task, env.link_rate_bps,
                                                       bid.resources.at(task_id));
      radio_s += t_tx;  // the input upload happens before the provider can balk

      if (stopped_serving ||
          (is_victim && p.adversary == Adversary::kBidderAborts &&
           scripted_indexes.count(l))) {
        hover_s += task.deadline_s;  // the drone waits out the deadline
        report.events.push_back("[t=" + fmt_time(t_start + task.deadline_s) + "] vehicle " +
                                std::to_string(vid) + " went silent on task " +
                                std::to_string(task_id));
        continue;
      }

      const double t_deliver = t_start + t_done;
      ResultMsg msg;
      const bool replaying = is_victim && p.adversary == Adversary::kReplay &&
                             scripted_indexes.count(l);
      crypto::SecretKey task_key{};
      if (replaying && inbox[vid].count(l - 1)) {
        msg = inbox[vid].at(l - 1);  // verbatim reuse of the previous delivery
        msg.task_id = task_id;
        msg.index = l;
      } else {
        task_key = random_bytes<32>(krng);
        compute_cost[vid] += s.unit_cost.at(vid) * bid.resources.at(task_id) +
                             s.fixed_cost.at(vid);
        Json payload;
        payload["task"] = task_id;
        payload["vehicle"] = vid;
        payload["digest"] = crypto::to_hex(crypto::keccak256(
            "result|" + std::to_string(task_id) + "|" + std::to_string(vid)));
        const std::string text = payload.dump();
        msg.task_id = task_id;
        msg.index = l;
        msg.key_commit = key_commitment(task_key, actor.nonce0 + static_cast<std::uint64_t>(l));
        msg.ciphertext = crypto::secretbox_encrypt(
            task_key, crypto::box_nonce(actor.nonce0 + static_cast<std::uint64_t>(l)),
            crypto::Bytes(text.begin(), text.end()));
        msg.proof = result_proof(msg.ciphertext, msg.key_commit);
      }
      inbox[vid][l] = msg;

      Json rtx;
      rtx["type"] = "result";
      rtx["task"] = task_id;
      rtx["index"] = l;
      rtx["result_hash"] = crypto::to_hex(crypto::keccak256(msg.ciphertext));
      rtx["key_commit"] = crypto::to_hex(msg.key_commit);
      const auto rres = chain.submit(std::move(rtx), actor.sign, t_deliver);

      // Drone-side verification: binding proof plus replay rejection.
      const std::string commit_hex = crypto::to_hex(msg.key_commit);
      bool payword_due = rres.accepted &&
                         result_proof(msg.ciphertext, msg.key_commit) == msg.proof &&
                         !uav_seen_commitments.count(commit_hex);
      uav_seen_commitments.insert(commit_hex);
      if (vid == victim && p.adversary == Adversary::kUavRefuses && l > refuse_after)
        payword_due = false;  // the drone simply stops paying

      if (payword_due) {
        max_payword[vid] = std::max(max_payword[vid], l);
        hover_s += t_done;
        report.events.push_back("[t=" + fmt_time(t_deliver) + "] payword " +
                                std::to_string(l) + " released to vehicle " +
                                std::to_string(vid));
        const bool wrong = is_victim && p.adversary == Adversary::kWrongKey &&
                           scripted_indexes.count(l);
        Json ktx;
        ktx["type"] = "key";
        ktx["index"] = l;
        if (wrong) {
          ktx["key"] = crypto::to_hex(random_bytes<32>(krng).data(), 32);
        } else {
          ktx["key"] = crypto::to_hex(task_key.data(), task_key.size());
        }
        chain.submit(std::move(ktx), actor.sign, t_deliver);
      } else {
        hover_s += replaying || !rres.accepted ? task.deadline_s : t_done;
        if (vid == victim && p.adversary == Adversary::kUavRefuses) {
          // Starved of payment: keep the key, stop serving further slots.
          stopped_serving = true;
          report.events.push_back("[t=" + fmt_time(t_deliver) + "] vehicle " +
                                  std::to_string(vid) +
                                  " withheld key " + std::to_string(l) +
                                  ": no payword received");
        }
      }
    }
  }

  // ---- Failure sweep once every delivery deadline has passed. ----
  const double t_sweep = t_start + max_deadline + 1.0;
  chain.sweep_deadlines(t_sweep);

  // ---- Claims. ----
  for (int vid : exec.outcome.winners) {
    const auto it = max_payword.find(vid);
    if (it == max_payword.end() || it->second < 1) continue;
    const int n_claim = it->second;
    Json tx;
    tx["type"] = "claim";
    tx["payword"] = crypto::to_hex(chains.at(vid).payword(n_claim));
    tx["count"] = n_claim;
    chain.submit(std::move(tx), actors.at(vid).sign, t_sweep + 1.0);
  }

  // ---- Refunds after expiry. ----
  const double t_refund = windows.expiry + 1.0;
  for (const auto &[vid, actor] : actors)
    if (chain.escrow(actor.sign.pk_hex()) > 0) {
      Json tx;
      tx["type"] = "refund";
      chain.submit(std::move(tx), actor.sign, t_refund);
    }
  if (chain.escrow(uav.pk_hex()) > 0) {
    Json tx;
    tx["type"] = "refund";
    chain.submit(std::move(tx), uav, t_refund);
  }

  // ---- Settle the books. ----
  report.supply_after = chain.total_supply();
  report.conservation_ok = report.supply_before == report.supply_after;

  double claims_paid = 0.0;
  for (int vid : exec.outcome.winners) {
    const auto *c = chain.commit_of(actors.at(vid).sign.pk_hex());
    if (!c) continue;
    claims_paid += ledger::from_micro(c->claim_paid);
    std::vector<int> failed(c->failed.begin(), c->failed.end());
    if (!failed.empty()) report.fmap[vid] = failed;

    const auto &tasks = exec.outcome.tasks_of.at(vid);
    for (int l = 1; l <= static_cast<int>(tasks.size()); ++l) {
      const int task_id = tasks[static_cast<std::size_t>(l - 1)];
      bool delivered = c->keyed.count(l) > 0;
      if (delivered) {
        // The drone actually opens the box; a key the contract accepted
        // must decrypt the stored ciphertext.
        const auto key_bytes = crypto::from_hex(c->keys_hex.at(l));
        if (key_bytes && key_bytes->size() == 32) {
          crypto::SecretKey key{};
          std::copy(key_bytes->begin(), key_bytes->end(), key.begin());
          const auto plain = crypto::secretbox_decrypt(
              key, crypto::box_nonce(actors.at(vid).nonce0 + static_cast<std::uint64_t>(l)),
              inbox.at(vid).at(l).ciphertext);
          delivered = plain.has_value();
        } else {
          delivered = false;
        }
        if (delivered) ++report.delivered_tasks;
      }
      const bool paid = c->claimed && l <= c->claimed_count && !c->failed.count(l);
      TaskVerdict v = TaskVerdict::kViolation;
      if (delivered && paid) v = TaskVerdict::kDeliveredAndPaid;
      if (!delivered && !paid) v = TaskVerdict::kNeitherWithPenalty;
      report.verdict_of[task_id] = v;
      if (v == TaskVerdict::kViolation) ++report.violations;
    }
  }

  // Vehicle utilities: ledger delta net of compute spend.
  for (const auto &[vid, actor] : actors) {
    const double delta =
        ledger::from_micro(chain.wallet(actor.sign.pk_hex()) - balance_micro);
    const auto cost_it = compute_cost.find(vid);
    report.vehicle_payoff[vid] = delta - (cost_it == compute_cost.end() ? 0.0 : cost_it->second);
  }

  // Drone energy and spend: flight leg, hover/radio during service, cloud
  // fees for unmatched tasks and for failed slots bought back at the reserve.
  const double cloud_t_tx = [&] {
    double total = 0.0;
    int cloud_jobs = static_cast<int>(exec.outcome.cloud_tasks.size());
    for (int task_id : exec.outcome.cloud_tasks) {
      const auto &task = *task_by_id.at(task_id);
      total += task.size_bits / s.cloud_link_bps;
      hover_s += cost::task_completion_time(task, s.cloud_link_bps, s.cloud.rate_cps,
                                            s.cloud.rtt_s);
    }
    for (const auto &[vid, failed] : report.fmap) {
      for (int l : failed) {
        const int task_id = exec.outcome.tasks_of.at(vid)[static_cast<std::size_t>(l - 1)];
        const auto &task = *task_by_id.at(task_id);
        total += task.size_bits / s.cloud_link_bps;
        hover_s += cost::task_completion_time(task, s.cloud_link_bps, s.cloud.rate_cps,
                                              s.cloud.rtt_s);
        ++report.cloud_refills;
      }
    }
    report.uav_payment_total = claims_paid + s.params.reserve_price *
                                                 (cloud_jobs + report.cloud_refills);
    return total;
  }();
  radio_s += cloud_t_tx;

  const double flight_j = s.params.energy.fly_power(s.flight_speed_mps) *
                          s.leg_length_m / s.flight_speed_mps;
  report.uav_energy_j = flight_j + s.params.energy.power_hover_w * hover_s +
                        s.params.energy.power_a2g_w * radio_s;
  report.uav_payoff = -cost::uav_total_cost(s.params.weights, report.uav_energy_j,
                                            report.uav_payment_total);

  for (const char *type : {"deposit", "outcome", "commit", "result", "key", "claim",
                           "refund", "fmap"})
    report.accepted_tx_counts[type] = chain.accepted_count(type);
  report.rejected_txs = chain.rejected_count();
  report.ledger_jsonl = chain.serialize_jsonl();
  return report;
}

}  // namespace seal::exchange
