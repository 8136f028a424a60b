/*
 * Copyright 2026 The mpmc-sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// mpmc-sim: command-line front end for the experiment harness.
//
// Exit codes: 0 success, 1 configuration error, 2 protocol violation,
// 3 property failure under --assert, 4 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mpmc/config_file.hpp"
#include "mpmc/csv.hpp"
#include "mpmc/experiments.hpp"
#include "mpmc/timing.hpp"

namespace {

using namespace mpmc;
using namespace mpmc::harness;

constexpr int kExitConfig = 1;
constexpr int kExitProtocol = 2;
constexpr int kExitAssert = 3;
constexpr int kExitInternal = 4;

struct RunArgs {
  std::string experiment;
  std::string config;
  std::vector<std::uint32_t> ports;
  std::vector<std::uint32_t> burst_counts{4, 8, 16, 32, 64};
  std::uint64_t cycles = 1'000'000;
  std::uint64_t warmup = 10'000;
  std::uint64_t seed = 1;
  std::string timing{dram::kDefaultPreset};
  std::string arbiter;
  std::string bank_order = "bank-row-col";
  std::string dump_commands;
  std::string dump_arbitration;
  std::string out;
  bool assert_props = false;
  bool no_refresh = false;
  std::optional<std::uint32_t> write_fetch_latency;
  std::optional<std::uint32_t> start_jitter;
  unsigned jobs = 0;
};

std::vector<std::uint32_t> default_ports(ExperimentKind kind) {
  if (kind == ExperimentKind::Peak) return {2, 4, 8, 16, 32};
  if (kind == ExperimentKind::Rw) return {2, 4, 8};
  return {4};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw ConfigError("cannot write '" + path + "'");
}

std::vector<std::string> check_properties(ExperimentKind kind, const std::vector<PointResult>& res) {
  std::vector<std::string> failures;
  for (const auto& r : res) {
    const auto& rep = r.result.report;
    const std::string where = rep.experiment + " " + rep.name + " N=" +
                              std::to_string(rep.n) + " BC=" + std::to_string(rep.bc);
    if (rep.aggregate.eff_percent < 0 || rep.aggregate.eff_percent > 100)
      failures.push_back(where + ": EFF outside [0, 100]");
    std::uint64_t sum = 0;
    for (const auto& p : rep.ports) sum += p.words;
    if (sum != rep.aggregate.words) failures.push_back(where + ": per-port words do not add up");
    if (r.result.mods.mismatches) failures.push_back(where + ": read-back mismatch");
  }
  auto eff = [&](std::uint32_t n, std::uint32_t bc, const std::string& name) -> std::optional<double> {
    for (const auto& r : res) {
      const auto& rep = r.result.report;
      if (rep.n == n && rep.bc == bc && rep.name == name) return rep.aggregate.eff_percent;
    }
    return std::nullopt;
  };
  for (const auto& r : res) {
    const auto& rep = r.result.report;
    if (kind == ExperimentKind::Rw && rep.name == "read") {
      const auto w = eff(rep.n, rep.bc, "write");
      if (w && !(rep.aggregate.eff_percent > *w))
        failures.push_back("rw N=" + std::to_string(rep.n) + " BC=" + std::to_string(rep.bc) +
                           ": read EFF not above write EFF");
    }
    if (kind == ExperimentKind::Peak) {
      for (const auto& o : res) {
        const auto& q = o.result.report;
        const bool next_bc = q.n == rep.n && q.bc > rep.bc;
        const bool next_n = q.bc == rep.bc && q.n > rep.n;
        if ((next_bc || next_n) && q.aggregate.eff_percent < rep.aggregate.eff_percent)
          failures.push_back("peak: EFF decreases from N=" + std::to_string(rep.n) + " BC=" +
                             std::to_string(rep.bc) + " to N=" + std::to_string(q.n) +
                             " BC=" + std::to_string(q.bc));
      }
    }
  }
  return failures;
}

int run(const RunArgs& a) {
  std::vector<PointResult> results;
  ExperimentKind kind = ExperimentKind::Peak;
  if (!a.config.empty()) {
    auto spec = spec_from_config(config::load_config_file(a.config));
    std::ostringstream cmd_log, arb_log;
    if (!a.dump_commands.empty()) spec.command_log = &cmd_log;
    if (!a.dump_arbitration.empty()) spec.arbitration_log = &arb_log;
    PointResult pr;
    pr.result = run_simulation(spec);
    pr.point.n = pr.result.report.n;
    pr.point.bc = pr.result.report.bc;
    pr.point.name = spec.name;
    pr.command_log = cmd_log.str();
    pr.arbitration_log = arb_log.str();
    results.push_back(std::move(pr));
  } else {
    kind = parse_experiment(a.experiment);
    ExperimentSpec spec;
    spec.kind = kind;
    spec.ports = a.ports.empty() ? default_ports(kind) : a.ports;
    spec.burst_counts = a.burst_counts;
    spec.cycles = a.cycles;
    spec.warmup = a.warmup;
    spec.seed = a.seed;
    spec.timing = dram::load_timing(a.timing);
    spec.order = config::parse_order(a.bank_order);
    if (!a.arbiter.empty()) spec.policy = arb::parse_policy(a.arbiter);
    spec.arbiter.refresh = !a.no_refresh;
    if (a.write_fetch_latency) spec.arbiter.write_fetch_latency = *a.write_fetch_latency;
    if (a.start_jitter) spec.start_jitter = *a.start_jitter;
    for (auto n : spec.ports)
      if (n == 0 || n > kMaxPorts) throw ConfigError("--ports values must be in [1, 32]");
    for (auto bc : spec.burst_counts)
      if (bc == 0 || bc > kMaxBurstCount) throw ConfigError("--burst-count values must be in [1, 64]");
    const unsigned jobs = a.jobs ? a.jobs : std::max(1U, std::thread::hardware_concurrency());
    const bool logs = !a.dump_commands.empty() || !a.dump_arbitration.empty();
    results = run_experiment(spec, jobs, logs);
  }

  auto dump = [&](const std::string& path, auto member) {
    if (path.empty()) return;
    std::string text;
    for (const auto& r : results) {
      const auto& rep = r.result.report;
      text += "# " + rep.experiment + " " + rep.name + " N=" + std::to_string(rep.n) +
              " BC=" + std::to_string(rep.bc) + "\n";
      text += r.*member;
    }
    write_text(path, text);
  };
  dump(a.dump_commands, &PointResult::command_log);
  dump(a.dump_arbitration, &PointResult::arbitration_log);

  std::vector<EffReport> reports;
  for (const auto& r : results) reports.push_back(r.result.report);
  const auto rows = to_rows(reports);
  if (a.out.empty() || a.out == "-") write_csv(std::cout, rows);
  else write_csv_file(a.out, rows);

  if (a.assert_props) {
    const auto failures = check_properties(kind, results);
    for (const auto& f : failures) std::cerr << "assert: " << f << '\n';
    if (!failures.empty()) return kExitAssert;
  }
  return 0;
}

int validate(const std::string& path) {
  const auto file = config::load_config_file(path);
  config::validate(file);
  const auto timing = dram::load_timing(file.memory.timing);
  std::cout << "ok: " << file.ports.size() << " port(s), policy " << file.experiment.policy
            << ", pattern " << file.experiment.pattern << ", timing " << timing.name << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cycle-accurate multi-port memory controller simulator"};
  app.require_subcommand(1);

  RunArgs args;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment sweep or a configured single run");
  auto* exp_opt = run_cmd->add_option("--experiment", args.experiment, "expa|expb|expc|expd|peak|rw")
                      ->check(CLI::IsMember({"expa", "expb", "expc", "expd", "peak", "rw"}));
  auto* cfg_opt = run_cmd->add_option("--config", args.config, "INI configuration for a single run")
                      ->check(CLI::ExistingFile);
  exp_opt->excludes(cfg_opt);
  run_cmd->add_option("--ports", args.ports, "Port counts to sweep")->delimiter(',');
  run_cmd->add_option("--burst-count", args.burst_counts, "Burst counts to sweep")->delimiter(',');
  run_cmd->add_option("--cycles", args.cycles, "Measured controller cycles per point");
  run_cmd->add_option("--warmup", args.warmup, "Warmup controller cycles excluded from metrics");
  run_cmd->add_option("--seed", args.seed, "Data generator seed");
  run_cmd->add_option("--timing", args.timing, "Timing preset name or preset file");
  run_cmd->add_option("--arbiter", args.arbiter, "Override the arbitration policy")
      ->check(CLI::IsMember({"wfcfs", "fcfs"}));
  run_cmd->add_option("--bank-order", args.bank_order, "Address map order")
      ->check(CLI::IsMember({"bank-row-col", "row-bank-col"}));
  run_cmd->add_option("--dump-commands", args.dump_commands, "Write the DRAM command log here");
  run_cmd->add_option("--dump-arbitration", args.dump_arbitration,
                      "Write the serviced-request log here");
  run_cmd->add_option("--out", args.out, "CSV output path (default stdout)");
  run_cmd->add_flag("--assert", args.assert_props, "Exit 3 when a result property fails");
  run_cmd->add_flag("--no-refresh", args.no_refresh, "Disable DRAM refresh");
  run_cmd->add_option("--write-fetch-latency", args.write_fetch_latency,
                      "WCTRL setup cycles per write transaction");
  run_cmd->add_option("--start-jitter", args.start_jitter,
                      "Spread of seeded per-stream start cycles");
  run_cmd->add_option("--jobs", args.jobs, "Parallel sweep points (default: hardware threads)");

  std::string config_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a configuration file without running");
  validate_cmd->add_option("config", config_path, "INI configuration")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run_cmd) {
      if (args.experiment.empty() && args.config.empty())
        throw ConfigError("run needs --experiment or --config");
      return run(args);
    }
    return validate(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ProtocolViolation& e) {
    std::cerr << "protocol violation: " << e.what() << '\n';
    return kExitProtocol;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
