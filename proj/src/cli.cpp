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

#include "seal/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "seal/baselines.hpp"
#include "seal/config.hpp"
#include "seal/exchange.hpp"
#include "seal/mobility.hpp"
#include "seal/rng.hpp"
#include "seal/scenario.hpp"
#include "seal/verify.hpp"

namespace seal::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::vector<std::string> split_csv_list(const std::string &text) {
  std::vector<std::string> parts;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

// ---- run ------------------------------------------------------------------

struct RunArgs {
  std::string config_path;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

int cmd_run(const RunArgs &args) {
  const auto cfg = config::load_config(args.config_path);
  const auto params = exchange::ProtocolParams::from_config(cfg);

  std::filesystem::create_directories(args.out_dir);
  const auto csv_path = std::filesystem::path(args.out_dir) / "run.csv";
  const auto jsonl_path = std::filesystem::path(args.out_dir) / "run.jsonl";
  std::ofstream csv(csv_path);
  std::ofstream jsonl(jsonl_path);
  if (!csv || !jsonl)
    throw std::runtime_error("cannot write outputs under " + args.out_dir);

  csv << "location,tasks,vehicles,assigned,cloud,uav_cost,energy_j,"
         "offload_energy_j,flight_energy_j,payment_sum,mean_completion_s,"
         "deadline_violations,protocol_verdict_ok\n";

  double total_cost = 0.0, total_energy = 0.0, total_paid = 0.0;
  int total_tasks = 0, total_assigned = 0, total_cloud = 0, bad_protocols = 0;

  for (int loc = 0; loc < cfg.locations; ++loc) {
    const auto scen = scenario::build_scenario(cfg, args.seed, loc);
    const auto rep = baselines::run_scheme(baselines::Scheme::kSeal, scen, args.seed);
    const auto proto = exchange::run_protocol(
        scen, params,
        derive_seed(args.seed, "run.location", static_cast<std::uint64_t>(loc)));
    const bool ok = proto.violations == 0 && proto.conservation_ok;

    csv << loc << ',' << rep.tasks << ',' << scen.vehicles.size() << ','
        << rep.assigned << ',' << rep.cloud << ',' << fmt(rep.uav_cost) << ','
        << fmt(rep.energy_j) << ',' << fmt(rep.offload_energy_j) << ','
        << fmt(rep.flight_energy_j) << ',' << fmt(rep.payment_sum) << ','
        << fmt(rep.mean_completion_s) << ',' << rep.deadline_misses << ','
        << (ok ? 1 : 0) << '\n';

    Json record;
    record["location"] = loc;
    record["seed"] = args.seed;
    record["tasks"] = rep.tasks;
    record["vehicles"] = scen.vehicles.size();
    record["assigned"] = rep.assigned;
    record["cloud"] = rep.cloud;
    record["uav_cost"] = rep.uav_cost;
    record["energy_j"] = rep.energy_j;
    record["offload_energy_j"] = rep.offload_energy_j;
    record["flight_energy_j"] = rep.flight_energy_j;
    record["payment_sum"] = rep.payment_sum;
    record["mean_completion_s"] = rep.mean_completion_s;
    record["deadline_violations"] = rep.deadline_misses;
    Json protocol;
    protocol["adversary"] = exchange::to_string(params.adversary);
    protocol["violations"] = proto.violations;
    protocol["conservation_ok"] = proto.conservation_ok;
    protocol["delivered_tasks"] = proto.delivered_tasks;
    protocol["cloud_refills"] = proto.cloud_refills;
    protocol["rejected_txs"] = proto.rejected_txs;
    protocol["accepted_tx_counts"] = proto.accepted_tx_counts;
    protocol["uav_payoff"] = proto.uav_payoff;
    protocol["uav_energy_j"] = proto.uav_energy_j;
    protocol["uav_payment_total"] = proto.uav_payment_total;
    record["protocol"] = std::move(protocol);
    record["ledger"] = proto.ledger_jsonl;
    jsonl << record.dump() << '\n';

    total_cost += rep.uav_cost;
    total_energy += rep.energy_j;
    total_paid += rep.payment_sum;
    total_tasks += rep.tasks;
    total_assigned += rep.assigned;
    total_cloud += rep.cloud;
    if (!ok) ++bad_protocols;

    std::cout << "location " << loc << ": " << rep.tasks << " tasks, "
              << scen.vehicles.size() << " vehicles, " << rep.assigned
              << " offloaded, " << rep.cloud << " cloud, cost "
              << fmt(rep.uav_cost) << (ok ? "" : "  [settlement FAILED]") << '\n';
  }

  std::cout << "total: " << total_tasks << " tasks over " << cfg.locations
            << " locations, " << total_assigned << " offloaded, " << total_cloud
            << " cloud, cost " << fmt(total_cost) << ", energy " << fmt(total_energy)
            << " J, paid " << fmt(total_paid) << '\n'
            << "wrote " << csv_path.string() << " and " << jsonl_path.string() << '\n';
  if (bad_protocols > 0) {
    std::cerr << "error: " << bad_protocols << " location(s) failed settlement\n";
    return 1;
  }
  return 0;
}

// ---- sweep -----------------------------------------------------------------

struct SweepArgs {
  std::string axis;
  double from = 0.0;
  double to = 0.0;
  double step = 1.0;
  std::string schemes = "SEAL,EAA,DAA,PAA,CLOUD,FOG,LOCAL";
  int seeds = 3;
  std::string config_path;
  std::string out_path;
};

struct SweepMetrics {
  double uav_cost = 0.0;
  double energy_j = 0.0;
  double offload_energy_j = 0.0;
  double flight_energy_j = 0.0;
  double payment_sum = 0.0;
  double completion_weighted = 0.0;  // sum of mean * tasks
  int tasks = 0;
  int assigned = 0;
  int cloud = 0;
  int deadline_misses = 0;

  void add(const baselines::SchemeReport &r) {
    uav_cost += r.uav_cost;
    energy_j += r.energy_j;
    offload_energy_j += r.offload_energy_j;
    flight_energy_j += r.flight_energy_j;
    payment_sum += r.payment_sum;
    completion_weighted += r.mean_completion_s * r.tasks;
    tasks += r.tasks;
    assigned += r.assigned;
    cloud += r.cloud;
    deadline_misses += r.deadline_misses;
  }
};

std::vector<mobility::VehicleState> make_bidders(const config::Config &cfg, int count,
                                                 std::uint64_t seed) {
  const auto traffic = cfg.traffic_params();
  const auto ranges = cfg.vehicle_ranges();
  const double v_avg = mobility::avg_vehicle_speed(traffic);
  Rng rng(derive_seed(seed, "sweep.bidders"));
  std::vector<mobility::VehicleState> vehicles;
  vehicles.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    mobility::VehicleState v;
    v.id = i + 1;
    v.distance_to_uav = uniform(rng, 0.0, traffic.coverage_radius);
    v.heading = uniform(rng, 0.0, 1.0) < 0.5 ? 1 : -1;
    v.speed = v_avg;
    v.idle_compute = uniform(rng, ranges.idle_compute_min, ranges.idle_compute_max);
    v.unit_cost = uniform(rng, ranges.unit_cost_min, ranges.unit_cost_max);
    v.fixed_cost = ranges.fixed_cost;
    v.link_rate = ranges.link_rate;
    vehicles.push_back(v);
  }
  return vehicles;
}

int cmd_sweep(const SweepArgs &args) {
  if (args.step <= 0.0) throw std::invalid_argument("--step must be positive");
  if (args.to < args.from) throw std::invalid_argument("--to must be >= --from");
  if (args.seeds < 1) throw std::invalid_argument("--seeds must be >= 1");

  std::vector<baselines::Scheme> schemes;
  for (const auto &name : split_csv_list(args.schemes))
    schemes.push_back(baselines::scheme_from_string(name));
  if (schemes.empty()) throw std::invalid_argument("--schemes selected nothing");

  const auto cfg_base = config::load_config(args.config_path);

  std::ofstream file;
  if (!args.out_path.empty()) {
    file.open(args.out_path);
    if (!file) throw std::runtime_error("cannot write " + args.out_path);
  }
  std::ostream &out = args.out_path.empty() ? std::cout : file;
  out << "axis,axis_value,scheme,seed,metric,value\n";

  const auto emit = [&](double value, baselines::Scheme scheme, int seed,
                        const SweepMetrics &m) {
    const std::string prefix = args.axis + ',' + fmt(value) + ',' +
                               baselines::to_string(scheme) + ',' +
                               std::to_string(seed) + ',';
    const double mean_completion =
        m.tasks > 0 ? m.completion_weighted / m.tasks : 0.0;
    out << prefix << "uav_cost," << fmt(m.uav_cost) << '\n'
        << prefix << "energy_j," << fmt(m.energy_j) << '\n'
        << prefix << "offload_energy_j," << fmt(m.offload_energy_j) << '\n'
        << prefix << "flight_energy_j," << fmt(m.flight_energy_j) << '\n'
        << prefix << "payment_sum," << fmt(m.payment_sum) << '\n'
        << prefix << "tasks," << m.tasks << '\n'
        << prefix << "assigned," << m.assigned << '\n'
        << prefix << "cloud," << m.cloud << '\n'
        << prefix << "mean_completion_s," << fmt(mean_completion) << '\n'
        << prefix << "deadline_misses," << m.deadline_misses << '\n';
  };

  for (double value = args.from; value <= args.to + args.step * 1e-9;
       value += args.step) {
    for (int seed = 1; seed <= args.seeds; ++seed) {
      auto cfg = cfg_base;
      if (args.axis == "density") {
        cfg.density_per_km = value;
        if (cfg.density_max_per_km < value) cfg.density_max_per_km = value;
      } else if (args.axis == "tasks") {
        cfg.tasks_min = cfg.tasks_max = static_cast<int>(std::llround(value));
      } else if (args.axis == "locations") {
        cfg.locations = static_cast<int>(std::llround(value));
      }
      config::validate(cfg);

      if (args.axis == "locations") {
        std::map<baselines::Scheme, SweepMetrics> sums;
        for (int loc = 0; loc < cfg.locations; ++loc) {
          const auto scen = scenario::build_scenario(
              cfg, static_cast<std::uint64_t>(seed), loc);
          for (const auto scheme : schemes)
            sums[scheme].add(baselines::run_scheme(
                scheme, scen, static_cast<std::uint64_t>(seed)));
        }
        for (const auto scheme : schemes) emit(value, scheme, seed, sums[scheme]);
        continue;
      }

      auto scen =
          scenario::build_scenario(cfg, static_cast<std::uint64_t>(seed), 0);
      if (args.axis == "bidders") {
        const int count = static_cast<int>(std::llround(value));
        scenario::force_bidders(scen, make_bidders(cfg, count, seed), cfg,
                                static_cast<std::uint64_t>(seed));
      }
      for (const auto scheme : schemes) {
        SweepMetrics m;
        m.add(baselines::run_scheme(scheme, scen, static_cast<std::uint64_t>(seed)));
        emit(value, scheme, seed, m);
      }
    }
  }
  if (!args.out_path.empty())
    std::cout << "wrote " << args.out_path << '\n';
  return 0;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::vector<std::string> suites;
  int trials = 20;
  std::uint64_t seed = 1;
};

int cmd_verify(const VerifyArgs &args) {
  if (args.trials < 1) throw std::invalid_argument("--trials must be >= 1");
  std::vector<std::string> selected = args.suites;
  if (selected.empty() ||
      (selected.size() == 1 && selected.front() == "all"))
    selected = verify::suite_names();

  bool all_passed = true;
  for (const auto &name : selected) {
    const auto result = verify::run_suite(name, args.trials, args.seed);
    std::printf("[%s] %s: %d/%d trials passed (%.2fs)\n",
                result.passed() ? "PASS" : "FAIL", result.name.c_str(),
                result.trials - result.failures, result.trials, result.elapsed_s);
    if (!result.passed()) {
      std::printf("  counterexample: %s\n", result.counterexample.c_str());
      all_passed = false;
    }
  }
  return all_passed ? 0 : 1;
}

}  // namespace

int run_main(int argc, const char *const *argv) {
  CLI::App app{"drone-to-vehicle computation offload market simulator"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto *run = app.add_subcommand(
      "run", "simulate a mission and settle every location on the ledger");
  run->add_option("--config", run_args.config_path, "config file (key = value lines)");
  run->add_option("--seed", run_args.seed, "master seed (default 1)");
  run->add_option("--out", run_args.out_dir,
                  "output directory for run.csv / run.jsonl (default .)");

  SweepArgs sweep_args;
  auto *sweep = app.add_subcommand(
      "sweep", "sweep one parameter across allocation schemes, long-format CSV");
  sweep->add_option("--axis", sweep_args.axis, "swept parameter")
      ->required()
      ->check(CLI::IsMember({"density", "tasks", "locations", "bidders"}));
  sweep->add_option("--from", sweep_args.from, "first value")->required();
  sweep->add_option("--to", sweep_args.to, "last value (inclusive)")->required();
  sweep->add_option("--step", sweep_args.step, "increment (default 1)");
  sweep->add_option("--schemes", sweep_args.schemes,
                    "comma list: SEAL,EAA,DAA,PAA,CLOUD,FOG,LOCAL (default all)");
  sweep->add_option("--seeds", sweep_args.seeds, "seeds 1..N per point (default 3)");
  sweep->add_option("--config", sweep_args.config_path, "base config file");
  sweep->add_option("--out", sweep_args.out_path, "CSV path (default stdout)");

  VerifyArgs verify_args;
  auto *verify_cmd = app.add_subcommand(
      "verify", "randomized property suites for the market and the settlement");
  verify_cmd->add_option("--suite", verify_args.suites,
                         "suite name or 'all' (repeatable; default all)");
  verify_cmd->add_option("--trials", verify_args.trials,
                         "rounds per suite (default 20)");
  verify_cmd->add_option("--seed", verify_args.seed, "master seed (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*sweep) return cmd_sweep(sweep_args);
    if (*verify_cmd) return cmd_verify(verify_args);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

int run_main(const std::vector<std::string> &args) {
  std::vector<const char *> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("seal");
  for (const auto &arg : args) argv.push_back(arg.c_str());
  return run_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace seal::cli
