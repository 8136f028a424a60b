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
#include <vector>

#include "mpmc/arbiter.hpp"
#include "mpmc/config_regs.hpp"
#include "mpmc/engine.hpp"

namespace mpmc::harness {

/// One direction of one port: a region transferred pass after pass.
struct DirectionPlan {
  bool enabled = false;
  std::array<WordAddress, 2> start{};  // pass k uses start[k % 2] when alternating
  WordAddress length = 0;              // EA - SA
  std::uint32_t bc = 8;
  bool alternate = false;
  std::uint64_t max_passes = 0;  // 0 = unbounded
  std::uint64_t start_cycle = 0;  // controller cycle at which pass 0 may load

  WordAddress start_of(std::uint64_t pass) const { return start[alternate ? pass % 2 : 0]; }
  /// Words moved per pass, including the CA overshoot past EA.
  std::uint64_t words_per_pass() const;
  /// (pass, address) of the i-th word of the direction's stream.
  std::pair<std::uint64_t, WordAddress> locate(std::uint64_t word_index) const;
};

struct PortPlan {
  double clock_mhz = 150.0;
  std::uint32_t data_width_bits = kControllerWordBits;
  DirectionPlan read;
  DirectionPlan write;

  const DirectionPlan& operator[](Direction d) const { return d == Direction::Read ? read : write; }
};

struct TransferPlan {
  std::vector<PortPlan> ports;
  // read pass k waits for write pass k; write pass k+2 waits for read pass k
  bool read_after_write = false;
};

/// Controller-domain sequencer that reloads the register file between passes.
class TransferManager : public sim::Component {
 public:
  TransferManager(sim::Engine& engine, sim::DomainId controller, config::RegisterFile& regs,
                  const TransferPlan& plan);

  /// Must be set before the first controller edge.
  void set_arbiter(const arb::Arbiter* arbiter) { arbiter_ = arbiter; }
  void on_edge(Tick now, sim::DomainId domain) override;

  std::uint64_t passes_done(std::uint32_t port, Direction d) const {
    return state_[port][index(d)].done;
  }
  /// Every bounded direction has finished all its passes.
  bool all_done() const;

 private:
  struct DirState {
    std::uint64_t loaded = 0;  // passes loaded so far
    std::uint64_t done = 0;
    bool active = false;
  };

  bool may_start(std::uint32_t port, Direction d, std::uint64_t pass) const;
  void load(std::uint32_t port, Direction d);

  config::RegisterFile& regs_;
  const TransferPlan& plan_;
  const arb::Arbiter* arbiter_ = nullptr;
  std::vector<std::array<DirState, 2>> state_;
  std::uint64_t cycle_ = 0;
};

}  // namespace mpmc::harness
