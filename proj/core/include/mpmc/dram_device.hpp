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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mpmc/address_map.hpp"
#include "mpmc/backing_store.hpp"
#include "mpmc/common.hpp"
#include "mpmc/timing.hpp"

namespace mpmc::dram {

enum class CommandKind : std::uint8_t { ACT, PRE, RD, WR, REF };

std::string_view to_string(CommandKind kind);
std::optional<CommandKind> parse_kind(std::string_view text);

inline constexpr std::uint32_t kAllBanks = 0xFFFFFFFFU;

struct Command {
  CommandKind kind = CommandKind::ACT;
  std::uint32_t bank = 0;  // kAllBanks for PRE-all and REF
  std::uint32_t row = 0;
  std::uint32_t col = 0;    // beat column, RD/WR only
  std::uint32_t beats = 0;  // 4 (chop) or 8, RD/WR only
  Tick tick = 0;

  friend bool operator==(const Command&, const Command&) = default;
};

/// "tick KIND bank row col beats", bank printed as "all" for kAllBanks.
std::string format_command(const Command& cmd);
Command parse_command(std::string_view line);

struct BankState {
  std::optional<std::uint32_t> open_row;
  Tick next_act = 0;
  Tick next_pre = 0;
  Tick next_rd = 0;
  Tick next_wr = 0;
  Tick next_ref = 0;
  Tick last_act = 0;
};

/// Contiguous run of reserved data-bus beat slots. Slot s spans half a memory
/// cycle starting at phase + s * tCK / 2.
struct DataBurst {
  Direction direction = Direction::Read;
  std::uint64_t first_slot = 0;
  std::uint32_t slot_count = 0;
  Tick end_tick = 0;  // tick at which the last beat has been transferred

  struct Slot {
    std::uint64_t slot;
    Direction direction;
    friend bool operator==(const Slot&, const Slot&) = default;
  };
  std::vector<Slot> slots() const;
};

/// Pure timing/protocol state: copyable so callers can look ahead.
class TimingState {
 public:
  TimingState(std::uint32_t banks, const TimingParams& timing, Tick phase);

  /// Earliest edge >= now satisfying every timing constraint, assuming the
  /// bank-state preconditions hold. Throws SimulationError when they do not.
  Tick earliest(const Command& cmd, Tick now) const;
  /// Violated rule for issuing cmd at cmd.tick, or nullopt when legal.
  std::optional<std::string> violation(const Command& cmd) const;
  /// Preconditions on open rows (ACT needs a closed bank, RD/WR the right row).
  std::optional<std::string> precondition(const Command& cmd) const;
  /// Applies a legal command; returns the data burst for RD/WR.
  std::optional<DataBurst> apply(const Command& cmd);

  const BankState& bank(std::uint32_t b) const { return banks_.at(b); }
  std::uint32_t bank_count() const { return static_cast<std::uint32_t>(banks_.size()); }
  bool all_closed() const;
  Tick last_ref() const { return last_ref_; }
  std::uint64_t refresh_count() const { return refreshes_; }
  Tick refresh_busy_until() const { return ref_busy_until_; }
  const TimingParams& timing() const { return timing_; }
  Tick phase() const { return phase_; }
  Tick cycles(std::uint64_t n) const { return n * timing_.tCK_ps; }
  Tick align_up(Tick t) const;

 private:
  std::uint32_t data_latency(CommandKind kind) const {
    return kind == CommandKind::RD ? timing_.CL : timing_.CWL;
  }
  template <typename F>
  void for_each_bound(const Command& cmd, F&& f) const;
  std::uint64_t slot_of(Tick edge) const { return 2 * ((edge - phase_) / timing_.tCK_ps); }

  TimingParams timing_;
  Tick phase_;
  std::vector<BankState> banks_;
  Tick next_act_any_ = 0;
  std::array<Tick, 4> faw_{};  // last four ACT ticks, oldest first
  std::uint32_t faw_count_ = 0;
  Tick next_rd_any_ = 0;
  Tick next_wr_any_ = 0;
  Tick ref_busy_until_ = 0;
  Tick last_ref_ = 0;
  std::uint64_t refreshes_ = 0;
  std::optional<Tick> last_cmd_;
  std::optional<Direction> last_data_dir_;
  std::uint64_t data_end_slot_ = 0;  // one past the last reserved slot
};

struct DeviceCounters {
  std::array<std::uint64_t, 5> commands{};  // by CommandKind
  std::uint64_t beats_read = 0;
  std::uint64_t beats_written = 0;
};

class DramDevice {
 public:
  DramDevice(const config::Geometry& geometry, const TimingParams& timing, Tick phase = 0);

  /// Earliest legal edge for cmd, chaining PRE/ACT when the row state
  /// requires them first.
  Tick legal_issue_tick(const Command& cmd, Tick now) const;
  /// True when cmd is legal exactly at `now` without any preparatory command.
  bool can_issue(const Command& cmd, Tick now) const;

  /// Self-checking issue. Throws ProtocolViolation on any illegal command.
  /// WR copies `beats` values from data, RD copies them into data.
  std::optional<DataBurst> issue(const Command& cmd, std::uint32_t* data = nullptr);

  /// REF k (1-based) falls due at k * tREFI, so a late REF does not
  /// stretch the average interval.
  bool refresh_due(Tick now) const;

  std::uint32_t read_backing(std::uint64_t beat) const { return store_.read(beat); }
  void write_backing(std::uint64_t beat, std::uint32_t v) { store_.write(beat, v); }
  std::uint64_t beat_address(std::uint32_t bank, std::uint32_t row, std::uint32_t col) const;

  const TimingState& state() const { return state_; }
  const TimingParams& timing() const { return state_.timing(); }
  const config::Geometry& geometry() const { return geometry_; }
  const DeviceCounters& counters() const { return counters_; }
  const BackingStore& store() const { return store_; }

  void set_command_log(std::ostream* log) { log_ = log; }

 private:
  void check_shape(const Command& cmd) const;

  config::Geometry geometry_;
  TimingState state_;
  BackingStore store_;
  DeviceCounters counters_;
  std::uint32_t bus_mask_;
  std::ostream* log_ = nullptr;
};

}  // namespace mpmc::dram
