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
#include <deque>
#include <optional>
#include <string_view>

#include "mpmc/common.hpp"

namespace mpmc::arb {

enum class Policy : std::uint8_t { WFCFS, FCFS };

std::string_view to_string(Policy p);
Policy parse_policy(std::string_view text);

struct MemRequest {
  std::uint64_t id = 0;
  std::uint32_t port = 0;
  Direction direction = Direction::Read;
  WordAddress start_address = 0;
  std::uint32_t word_count = 0;
  Tick enqueue_tick = 0;

  friend bool operator==(const MemRequest&, const MemRequest&) = default;
};

struct Served {
  MemRequest request;
  std::uint64_t window = 0;
};

/// RFF/WFF plus the POS selection rule. Policy only; no timing.
class ServiceQueue {
 public:
  ServiceQueue(Policy policy, std::uint32_t capacity_per_direction);

  /// Arrival from the PRE stage. Throws SimulationError beyond capacity.
  void push(const MemRequest& request);
  std::optional<Served> pop();

  bool empty() const { return size(Direction::Read) + size(Direction::Write) == 0; }
  std::size_t size(Direction d) const;
  Policy policy() const { return policy_; }
  std::uint64_t direction_switches() const { return switches_; }
  std::uint64_t windows_opened() const { return window_; }

 private:
  std::optional<Served> pop_wfcfs();
  std::optional<Served> pop_fcfs();
  Served finish(const MemRequest& r);

  Policy policy_;
  std::uint32_t capacity_;
  std::array<std::deque<MemRequest>, 2> fifo_;  // WFCFS: RFF, WFF
  std::deque<MemRequest> arrivals_;             // FCFS: one queue
  std::array<std::size_t, 2> counts_{};
  std::optional<Direction> phase_;
  std::size_t phase_left_ = 0;
  std::optional<Direction> last_served_;
  std::uint64_t window_ = 0;
  std::uint64_t switches_ = 0;
};

}  // namespace mpmc::arb
