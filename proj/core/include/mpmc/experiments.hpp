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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mpmc/config_file.hpp"
#include "mpmc/simulation.hpp"

namespace mpmc::harness {

enum class ExperimentKind : std::uint8_t { ExpA, ExpB, ExpC, ExpD, Peak, Rw };

std::string_view to_string(ExperimentKind k);
ExperimentKind parse_experiment(std::string_view text);

/// Bank of `port` under the experiment's fixed port-to-bank assignment.
std::uint32_t bank_for(ExperimentKind kind, std::uint32_t port, std::uint32_t banks);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::Peak;
  std::vector<std::uint32_t> ports{4};
  std::vector<std::uint32_t> burst_counts{4, 8, 16, 32, 64};
  std::optional<arb::Policy> policy;  // default: FCFS for EXPD, WFCFS otherwise
  std::uint64_t cycles = 1'000'000;
  std::uint64_t warmup = 10'000;
  std::uint64_t seed = 1;
  config::Geometry geometry;
  std::array<config::Field, 3> order = config::kBankRowCol;
  dram::TimingParams timing = dram::load_timing(std::string(dram::kDefaultPreset));
  arb::ArbiterConfig arbiter;  // policy field overridden per experiment
  // each port direction starts at a seeded cycle in [0, start_jitter)
  std::uint32_t start_jitter = 0;

  arb::Policy effective_policy() const;
};

struct PointSpec {
  std::uint32_t n = 0;
  std::uint32_t bc = 0;
  Pattern pattern = Pattern::StreamDuplex;
  std::string name;  // duplex, read or write
};

/// Sweep points in a fixed order: N outer, BC inner, pattern innermost.
std::vector<PointSpec> points(const ExperimentSpec& spec);

/// Streaming plan: every port gets private read and write regions inside
/// its assigned bank (bank-row-col) or a private slice of the address space.
TransferPlan streaming_plan(const config::Geometry& geometry, std::array<config::Field, 3> order,
                            const std::vector<std::uint32_t>& banks, std::uint32_t bc,
                            Pattern pattern);

SimSpec build_point(const ExperimentSpec& spec, const PointSpec& point);

struct PointResult {
  PointSpec point;
  SimResult result;
  std::string command_log;
  std::string arbitration_log;
};

/// Runs every point on up to `jobs` threads; results come back in point order.
std::vector<PointResult> run_experiment(const ExperimentSpec& spec, unsigned jobs = 1,
                                        bool capture_logs = false);

/// Single run described by an INI configuration file.
SimSpec spec_from_config(const config::ConfigFile& file);

/// Duplex soak across mixed MOD clocks and widths with read-back checking.
SimSpec soak_spec(std::uint64_t seed, std::uint64_t min_words, std::uint32_t bc = 16);

}  // namespace mpmc::harness
