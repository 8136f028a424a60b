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

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mpmc/address_map.hpp"
#include "mpmc/arbiter.hpp"
#include "mpmc/metrics.hpp"
#include "mpmc/mod.hpp"
#include "mpmc/timing.hpp"
#include "mpmc/transfer.hpp"

namespace mpmc::harness {

/// Everything needed to build and run one engine instance.
struct SimSpec {
  std::string experiment = "custom";
  std::string name = "run";
  std::uint32_t report_bc = 0;  // label only
  config::Geometry geometry;
  std::array<config::Field, 3> order = config::kBankRowCol;
  dram::TimingParams timing = dram::load_timing(std::string(dram::kDefaultPreset));
  arb::ArbiterConfig arbiter;
  TransferPlan plan;
  std::uint64_t seed = 1;
  bool verify = false;  // needs plan.read_after_write
  std::uint64_t warmup_cycles = 10'000;  // controller cycles
  std::uint64_t cycles = 1'000'000;      // measured controller cycles
  // stop early once every bounded pass has completed; `cycles` then only caps the run
  bool run_to_completion = false;
  std::uint32_t fifo_words = 2 * kMaxBurstCount;  // per direction, in controller words
  std::uint32_t sync_stages = 2;

  std::ostream* command_log = nullptr;
  std::ostream* arbitration_log = nullptr;
  std::ostream* dispatch_log = nullptr;
};

struct SimResult {
  EffReport report;
  std::uint64_t dispatches = 0;
  std::uint64_t dispatch_digest = 0;
  Tick end_tick = 0;
  bool completed = false;  // run_to_completion reached its goal

  ModCounters mods;  // summed over ports
  std::vector<ModCounters> per_port;
  arb::ArbiterCounters arbiter;
  dram::DeviceCounters device;
  std::uint64_t direction_switches = 0;
  std::uint64_t rejected_pushes = 0;
  std::uint64_t bus_beats = 0;  // whole run
};

Tick controller_period(const dram::TimingParams& timing);

SimResult run_simulation(const SimSpec& spec);

}  // namespace mpmc::harness
