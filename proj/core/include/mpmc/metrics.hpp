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
#include <string>
#include <vector>

#include "mpmc/arbiter.hpp"
#include "mpmc/service_queue.hpp"

namespace mpmc::harness {

struct LatencyStats {
  std::uint64_t count = 0;
  double mean_ns = 0;
  double p50_ns = 0;
  double p95_ns = 0;
  double max_ns = 0;

  static LatencyStats from_samples(std::vector<Tick> samples_ps);
};

struct PortReport {
  std::string port;  // index or "all"
  std::uint64_t words = 0;        // moved on the data bus inside the window
  std::uint64_t read_words = 0;
  std::uint64_t write_words = 0;
  std::uint64_t completed_words = 0;  // of requests whose FLAG cleared inside the window
  std::array<std::uint64_t, 2> completed_by_direction{};
  double achieved_gbps = 0;
  double eff_percent = 0;
  LatencyStats latency_first;
  LatencyStats latency_last;
};

struct EffReport {
  std::string experiment;
  std::string name;
  std::uint32_t n = 0;
  std::uint32_t bc = 0;
  arb::Policy policy = arb::Policy::WFCFS;
  double theoretical_gbps = 0;
  std::uint64_t window_edges = 0;  // memory clock edges inside the window
  std::vector<PortReport> ports;
  PortReport aggregate;

  double read_eff() const;
  double write_eff() const;
};

/// Arbiter observer that accumulates per-port counts inside [start, end).
class MetricsCollector : public arb::ArbiterObserver {
 public:
  MetricsCollector(std::uint32_t ports, Tick window_start, Tick window_end);

  void on_burst(std::uint32_t port, Direction d, std::uint32_t beats, Tick issue) override;
  void on_transaction_done(const arb::TransactionRecord& record) override;

  /// Builds the report; theoretical bandwidth from the memory clock and bus width.
  EffReport report(std::uint64_t window_edges, Tick tck_ps, std::uint32_t bus_width_bits,
                   std::uint32_t beats_per_word) const;

  std::uint64_t total_beats() const { return total_beats_; }

 private:
  Tick start_;
  Tick end_;
  std::vector<std::uint64_t> read_beats_;
  std::vector<std::uint64_t> write_beats_;
  std::vector<std::array<std::uint64_t, 2>> completed_words_;
  std::vector<std::vector<Tick>> first_;
  std::vector<std::vector<Tick>> last_;
  std::uint64_t total_beats_ = 0;
};

}  // namespace mpmc::harness
