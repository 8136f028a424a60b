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
#include <iosfwd>
#include <memory>
#include <unordered_map>
#include <vector>

#include "mpmc/address_map.hpp"
#include "mpmc/config_regs.hpp"
#include "mpmc/dcdwff.hpp"
#include "mpmc/dram_device.hpp"
#include "mpmc/engine.hpp"
#include "mpmc/service_queue.hpp"

namespace mpmc::arb {

struct ArbiterConfig {
  Policy policy = Policy::WFCFS;
  std::uint32_t pre_latency = 2;  // controller cycles, readiness -> RFF/WFF
  std::uint32_t phy_queue_depth = 4;
  // WCTRL setup per write transaction before its first word leaves the port FIFO
  std::uint32_t write_fetch_latency = 4;
  bool refresh = true;
};

/// The two DCDWFFs of one port, seen from the controller.
struct PortLink {
  fifo::Dcdwff* write_fifo = nullptr;  // MOD writes, controller reads
  fifo::Dcdwff* read_fifo = nullptr;   // controller writes, MOD reads
};

struct TransactionRecord {
  MemRequest request;
  std::uint64_t window = 0;
  Tick dispatch_tick = 0;
  Tick first_word_tick = 0;
  Tick last_word_tick = 0;
};

class ArbiterObserver {
 public:
  virtual ~ArbiterObserver() = default;
  /// A column command moved `beats` beats for `port`.
  virtual void on_burst(std::uint32_t /*port*/, Direction /*d*/, std::uint32_t /*beats*/,
                        Tick /*issue*/) {}
  /// FLAG cleared: the request is fully serviced.
  virtual void on_transaction_done(const TransactionRecord& /*record*/) {}
};

struct ArbiterCounters {
  std::array<std::uint64_t, 2> granted{};  // by Direction
  std::uint64_t dispatched = 0;
  std::uint64_t words_returned = 0;  // pushed into read-return FIFOs
  std::uint64_t words_fetched = 0;   // popped from write FIFOs
  std::uint64_t refreshes = 0;
};

class Arbiter : public sim::Component {
 public:
  Arbiter(sim::Engine& engine, sim::DomainId controller, sim::DomainId memory,
          config::RegisterFile& regs, const config::AddressMap& map, dram::DramDevice& device,
          std::vector<PortLink> ports, ArbiterConfig config);
  ~Arbiter() override;

  void on_edge(Tick now, sim::DomainId domain) override;

  void set_observer(ArbiterObserver* observer) { observer_ = observer; }
  /// One line per serviced request: tick port direction address BC window.
  void set_arbitration_log(std::ostream* log) { arb_log_ = log; }

  bool flag(std::uint32_t port, Direction d) const { return (flags_[index(d)] >> port) & 1U; }
  std::uint32_t flag_bits(Direction d) const { return flags_[index(d)]; }
  /// Nothing queued, staged, in flight or waiting to return.
  bool idle() const;

  const ServiceQueue& queue() const { return queue_; }
  const ArbiterCounters& counters() const { return counters_; }
  const ArbiterConfig& config() const { return config_; }

 private:
  struct Txn;

  void controller_edge(Tick now);
  void memory_edge(Tick now);

  void retire(Tick now);
  void poll(Tick now);
  void mature(Tick now);
  void fetch_writes(Tick now);
  void dispatch(Tick now);

  bool try_refresh(Tick now);
  bool try_column(Tick now);
  bool try_row_command(Tick now);
  void finish_column(Txn& txn, Tick now);

  bool read_ready(std::uint32_t port, Tick now);
  bool write_ready(std::uint32_t port, Tick now);
  void grant(std::uint32_t port, Direction d, Tick now);

  sim::Engine& engine_;
  sim::DomainId controller_;
  sim::DomainId memory_;
  Tick controller_period_;
  config::RegisterFile& regs_;
  const config::AddressMap& map_;
  dram::DramDevice& device_;
  std::vector<PortLink> ports_;
  std::vector<std::uint32_t> ratio_;
  ArbiterConfig config_;

  std::array<std::uint32_t, 2> flags_{};
  ServiceQueue queue_;
  std::uint64_t next_id_ = 0;

  std::unordered_map<std::uint64_t, std::unique_ptr<Txn>> live_;
  std::deque<std::pair<Tick, MemRequest>> pre_pipe_;  // (enqueue tick, request)
  std::deque<Txn*> fetch_list_;                       // writes awaiting WCTRL, arrival order
  std::uint32_t fetch_setup_left_ = 0;
  bool fetch_started_ = false;
  std::deque<Txn*> phy_queue_;
  std::deque<Txn*> returning_;  // reads with all RDs issued, in completion order
  std::deque<Txn*> writes_done_;
  bool refresh_pending_ = false;
  std::vector<std::int64_t> claims_;  // per-bank row claimed during lookahead

  ArbiterObserver* observer_ = nullptr;
  std::ostream* arb_log_ = nullptr;
  ArbiterCounters counters_;
};

}  // namespace mpmc::arb
