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

#include "mpmc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <random>
#include <sstream>
#include <thread>

namespace mpmc::harness {

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::ExpA: return "expa";
    case ExperimentKind::ExpB: return "expb";
    case ExperimentKind::ExpC: return "expc";
    case ExperimentKind::ExpD: return "expd";
    case ExperimentKind::Peak: return "peak";
    case ExperimentKind::Rw: return "rw";
  }
  return "?";
}

ExperimentKind parse_experiment(std::string_view text) {
  for (auto k : {ExperimentKind::ExpA, ExperimentKind::ExpB, ExperimentKind::ExpC,
                 ExperimentKind::ExpD, ExperimentKind::Peak, ExperimentKind::Rw}) {
    if (to_string(k) == text) return k;
  }
  throw ConfigError("unknown experiment '" + std::string(text) + "'");
}

std::uint32_t bank_for(ExperimentKind kind, std::uint32_t port, std::uint32_t banks) {
  switch (kind) {
    case ExperimentKind::ExpA: return 0;
    case ExperimentKind::ExpB: return port % 2 % banks;  // MOD0, MOD2 -> BANK0; MOD1, MOD3 -> BANK1
    default: return port % banks;
  }
}

arb::Policy ExperimentSpec::effective_policy() const {
  if (policy) return *policy;
  return kind == ExperimentKind::ExpD ? arb::Policy::FCFS : arb::Policy::WFCFS;
}

std::vector<PointSpec> points(const ExperimentSpec& spec) {
  std::vector<PointSpec> out;
  for (auto n : spec.ports) {
    for (auto bc : spec.burst_counts) {
      if (spec.kind == ExperimentKind::Rw) {
        out.push_back({n, bc, Pattern::StreamRead, "read"});
        out.push_back({n, bc, Pattern::StreamWrite, "write"});
      } else {
        out.push_back({n, bc, Pattern::StreamDuplex, "duplex"});
      }
    }
  }
  return out;
}

TransferPlan streaming_plan(const config::Geometry& geometry, std::array<config::Field, 3> order,
                            const std::vector<std::uint32_t>& banks, std::uint32_t bc,
                            Pattern pattern) {
  const auto map = config::AddressMap::for_geometry(geometry, order);
  const auto n = static_cast<std::uint32_t>(banks.size());
  TransferPlan plan;
  plan.ports.resize(n);

  std::map<std::uint32_t, std::uint32_t> slots;  // bank -> ports placed so far
  std::map<std::uint32_t, std::uint32_t> per_bank;
  for (auto b : banks) ++per_bank[b];

  for (std::uint32_t p = 0; p < n; ++p) {
    WordAddress read_sa = 0, write_sa = 0, length = 0;
    if (order == config::kBankRowCol) {
      const std::uint32_t b = banks[p];
      if (b >= geometry.banks) throw ConfigError("bank assignment beyond the device");
      const std::uint32_t slot = slots[b]++;
      const std::uint32_t rows = geometry.rows / (2 * per_bank[b]);
      if (rows == 0) throw ConfigError("too many ports on one bank");
      length = WordAddress{rows} * geometry.words_per_row();
      read_sa = map.encode(b, 2 * slot * rows, 0);
      write_sa = map.encode(b, (2 * slot + 1) * rows, 0);
    } else {
      length = map.capacity_words() / (2ULL * n);
      read_sa = 2ULL * p * length;
      write_sa = (2ULL * p + 1) * length;
    }
    length = length / bc * bc;
    if (length == 0) throw ConfigError("region smaller than one burst");
    auto& pp = plan.ports[p];
    pp.read = DirectionPlan{pattern != Pattern::StreamWrite, {read_sa, read_sa}, length, bc};
    pp.write = DirectionPlan{pattern != Pattern::StreamRead, {write_sa, write_sa}, length, bc};
  }
  return plan;
}

SimSpec build_point(const ExperimentSpec& spec, const PointSpec& point) {
  std::vector<std::uint32_t> banks;
  for (std::uint32_t p = 0; p < point.n; ++p)
    banks.push_back(bank_for(spec.kind, p, spec.geometry.banks));
  SimSpec s;
  s.experiment = std::string(to_string(spec.kind));
  s.name = point.name;
  s.report_bc = point.bc;
  s.geometry = spec.geometry;
  s.order = spec.order;
  s.timing = spec.timing;
  s.arbiter = spec.arbiter;
  s.arbiter.policy = spec.effective_policy();
  s.plan = streaming_plan(spec.geometry, spec.order, banks, point.bc, point.pattern);
  if (spec.start_jitter > 0) {
    std::mt19937_64 rng(spec.seed);  // engine output is fixed by the standard, distributions are not
    for (auto& pp : s.plan.ports) {
      pp.read.start_cycle = rng() % spec.start_jitter;
      pp.write.start_cycle = rng() % spec.start_jitter;
    }
  }
  s.seed = spec.seed;
  s.warmup_cycles = spec.warmup;
  s.cycles = spec.cycles;
  return s;
}

std::vector<PointResult> run_experiment(const ExperimentSpec& spec, unsigned jobs,
                                        bool capture_logs) {
  const auto pts = points(spec);
  std::vector<PointResult> results(pts.size());
  std::vector<std::exception_ptr> errors(pts.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < pts.size(); i = next++) {
      try {
        SimSpec s = build_point(spec, pts[i]);
        std::ostringstream cmd_log, arb_log;
        if (capture_logs) {
          s.command_log = &cmd_log;
          s.arbitration_log = &arb_log;
        }
        results[i].point = pts[i];
        results[i].result = run_simulation(s);
        results[i].command_log = cmd_log.str();
        results[i].arbitration_log = arb_log.str();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::max<std::size_t>(1, pts.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

SimSpec spec_from_config(const config::ConfigFile& file) {
  config::validate(file);
  SimSpec s;
  s.experiment = file.experiment.name;
  s.name = file.experiment.pattern == "stream_duplex" ? "duplex"
           : file.experiment.pattern == "stream_read" ? "read"
                                                      : "write";
  s.geometry = file.memory.geometry;
  s.order = file.memory.order;
  s.timing = dram::load_timing(file.memory.timing);
  s.arbiter.policy = arb::parse_policy(file.experiment.policy);
  s.arbiter.refresh = file.memory.refresh;
  s.seed = file.experiment.seed;
  s.warmup_cycles = file.experiment.warmup;
  s.cycles = file.experiment.cycles;
  const Pattern pattern = parse_pattern(file.experiment.pattern);
  std::uint32_t bc = 0;
  for (const auto& port : file.ports) {
    PortPlan pp;
    pp.clock_mhz = port.clock_mhz;
    pp.data_width_bits = port.data_width_bits;
    pp.read = DirectionPlan{pattern != Pattern::StreamWrite,
                            {port.sa_read, port.sa_read},
                            port.ea_read - port.sa_read,
                            port.bc_read};
    pp.write = DirectionPlan{pattern != Pattern::StreamRead,
                             {port.sa_write, port.sa_write},
                             port.ea_write - port.sa_write,
                             port.bc_write};
    bc = std::max({bc, port.bc_read, port.bc_write});
    s.plan.ports.push_back(pp);
  }
  s.report_bc = bc;
  return s;
}

SimSpec soak_spec(std::uint64_t seed, std::uint64_t min_words, std::uint32_t bc) {
  constexpr std::array<double, 4> kClocks{75.0, 100.0, 150.0, 200.0};
  constexpr std::array<std::uint32_t, 4> kWidths{16, 32, 64, 128};
  constexpr std::uint32_t kPorts = 8;

  SimSpec s;
  s.experiment = "soak";
  s.name = "duplex";
  s.report_bc = bc;
  s.seed = seed;
  s.verify = true;
  s.warmup_cycles = 0;
  s.run_to_completion = true;

  std::vector<std::uint32_t> banks;
  for (std::uint32_t p = 0; p < kPorts; ++p) banks.push_back(p % s.geometry.banks);
  s.plan = streaming_plan(s.geometry, s.order, banks, bc, Pattern::StreamDuplex);
  s.plan.read_after_write = true;

  // small ping-pong regions so every address is rewritten many times; pass
  // counts follow each MOD's bandwidth so all ports finish close together
  const WordAddress region = 64ULL * bc;
  const auto map = config::AddressMap::for_geometry(s.geometry, s.order);
  double total_rate = 0;
  for (std::uint32_t p = 0; p < kPorts; ++p) total_rate += kClocks[p % 4] * kWidths[(p / 2 + p) % 4];
  for (std::uint32_t p = 0; p < kPorts; ++p) {
    auto& pp = s.plan.ports[p];
    pp.clock_mhz = kClocks[p % 4];
    pp.data_width_bits = kWidths[(p / 2 + p) % 4];
    const double share = pp.clock_mhz * pp.data_width_bits / total_rate;
    const auto passes = static_cast<std::uint64_t>(
        std::ceil(static_cast<double>(min_words) * share / static_cast<double>(region)));
    const WordAddress a = pp.read.start[0];
    const WordAddress b = a + region + 3 * map.encode(0, 1, 0);  // a few rows further
    for (DirectionPlan* dp : {&pp.read, &pp.write}) {
      dp->start = {a, b};
      dp->length = region;
      dp->alternate = true;
      dp->max_passes = std::max<std::uint64_t>(passes, 2);
    }
  }
  // generous cap; the run stops as soon as every pass has completed
  s.cycles = 40 * min_words;
  return s;
}

}  // namespace mpmc::harness
