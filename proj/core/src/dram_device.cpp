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

#include "mpmc/dram_device.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <sstream>

namespace mpmc::dram {

std::string_view to_string(CommandKind kind) {
  switch (kind) {
    case CommandKind::ACT: return "ACT";
    case CommandKind::PRE: return "PRE";
    case CommandKind::RD: return "RD";
    case CommandKind::WR: return "WR";
    case CommandKind::REF: return "REF";
  }
  return "?";
}

std::optional<CommandKind> parse_kind(std::string_view text) {
  for (auto k : {CommandKind::ACT, CommandKind::PRE, CommandKind::RD, CommandKind::WR,
                 CommandKind::REF}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::string format_command(const Command& cmd) {
  std::string out = std::to_string(cmd.tick);
  out += ' ';
  out += to_string(cmd.kind);
  out += ' ';
  out += cmd.bank == kAllBanks ? std::string("all") : std::to_string(cmd.bank);
  out += ' ' + std::to_string(cmd.row) + ' ' + std::to_string(cmd.col) + ' ' +
         std::to_string(cmd.beats);
  return out;
}

Command parse_command(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string tick, kind, bank, row, col, beats;
  if (!(in >> tick >> kind >> bank >> row >> col >> beats))
    throw ConfigError("malformed command line: " + std::string(line));
  auto number = [&](const std::string& s) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
      throw ConfigError("malformed number '" + s + "' in: " + std::string(line));
    return v;
  };
  Command c;
  c.tick = number(tick);
  const auto k = parse_kind(kind);
  if (!k) throw ConfigError("unknown command kind '" + kind + "'");
  c.kind = *k;
  c.bank = bank == "all" ? kAllBanks : static_cast<std::uint32_t>(number(bank));
  c.row = static_cast<std::uint32_t>(number(row));
  c.col = static_cast<std::uint32_t>(number(col));
  c.beats = static_cast<std::uint32_t>(number(beats));
  return c;
}

std::vector<DataBurst::Slot> DataBurst::slots() const {
  std::vector<Slot> out;
  out.reserve(slot_count);
  for (std::uint32_t i = 0; i < slot_count; ++i) out.push_back({first_slot + i, direction});
  return out;
}

TimingState::TimingState(std::uint32_t banks, const TimingParams& timing, Tick phase)
    : timing_(timing), phase_(phase), banks_(banks) {
  timing_.validate();
}

Tick TimingState::align_up(Tick t) const {
  if (t <= phase_) return phase_;
  const Tick c = timing_.tCK_ps;
  return phase_ + (t - phase_ + c - 1) / c * c;
}

bool TimingState::all_closed() const {
  return std::all_of(banks_.begin(), banks_.end(),
                     [](const BankState& b) { return !b.open_row; });
}

std::optional<std::string> TimingState::precondition(const Command& cmd) const {
  switch (cmd.kind) {
    case CommandKind::ACT:
      if (banks_.at(cmd.bank).open_row) return "ACT to a bank with an open row";
      return std::nullopt;
    case CommandKind::PRE:
      return std::nullopt;
    case CommandKind::RD:
    case CommandKind::WR: {
      const auto& b = banks_.at(cmd.bank);
      if (!b.open_row) return std::string(to_string(cmd.kind)) + " to a closed bank";
      if (*b.open_row != cmd.row) return std::string(to_string(cmd.kind)) + " to a row that is not open";
      return std::nullopt;
    }
    case CommandKind::REF:
      if (!all_closed()) return "REF with an open bank";
      return std::nullopt;
  }
  return std::nullopt;
}

template <typename F>
void TimingState::for_each_bound(const Command& cmd, F&& f) const {
  const TimingParams& t = timing_;
  f(ref_busy_until_, "tRFC");
  if (last_cmd_) f(*last_cmd_ + t.tCK_ps, "one command per clock");
  switch (cmd.kind) {
    case CommandKind::ACT: {
      const auto& bank = banks_[cmd.bank];
      f(bank.next_act, "tRP/tRC");
      f(next_act_any_, "tRRD");
      if (faw_count_ == 4) f(faw_[0] + cycles(t.tFAW), "tFAW");
      break;
    }
    case CommandKind::PRE: {
      Tick m = 0;
      for (std::uint32_t i = 0; i < bank_count(); ++i) {
        if (cmd.bank != kAllBanks && cmd.bank != i) continue;
        if (banks_[i].open_row) m = std::max(m, banks_[i].next_pre);
      }
      f(m, "tRAS/tRTP/tWR");
      break;
    }
    case CommandKind::RD:
    case CommandKind::WR: {
      const bool rd = cmd.kind == CommandKind::RD;
      const auto& bank = banks_[cmd.bank];
      f(rd ? bank.next_rd : bank.next_wr, "tRCD");
      f(rd ? next_rd_any_ : next_wr_any_, rd ? "tCCD/tWTR" : "tCCD/read-to-write");
      if (last_data_dir_) {
        const Direction dir = rd ? Direction::Read : Direction::Write;
        std::uint64_t need = data_end_slot_;
        if (dir != *last_data_dir_) need += 2ULL * (rd ? t.wr_rd_bus_gap() : t.rd_wr_bus_gap());
        const std::uint64_t lat_slots = 2ULL * data_latency(cmd.kind);
        if (need > lat_slots) {
          const std::uint64_t edge = (need - lat_slots + 1) / 2;
          f(phase_ + edge * t.tCK_ps, dir != *last_data_dir_ ? "bus turnaround" : "bus overlap");
        }
      }
      break;
    }
    case CommandKind::REF: {
      Tick m = 0;
      for (const auto& b : banks_) m = std::max(m, b.next_ref);
      f(m, "tRP before REF");
      break;
    }
  }
}

Tick TimingState::earliest(const Command& cmd, Tick now) const {
  if (auto p = precondition(cmd)) throw SimulationError("earliest(): " + *p);
  Tick m = now;
  for_each_bound(cmd, [&](Tick at, const char*) { m = std::max(m, at); });
  return align_up(m);
}

std::optional<std::string> TimingState::violation(const Command& cmd) const {
  if (cmd.tick < phase_ || (cmd.tick - phase_) % timing_.tCK_ps != 0)
    return "command not on a memory clock edge";
  if (auto p = precondition(cmd)) return p;
  std::optional<std::string> out;
  for_each_bound(cmd, [&](Tick at, const char* rule) {
    if (!out && at > cmd.tick) out = std::string(rule) + " (legal at " + std::to_string(at) + ")";
  });
  return out;
}

std::optional<DataBurst> TimingState::apply(const Command& cmd) {
  const Tick t = cmd.tick;
  const TimingParams& p = timing_;
  last_cmd_ = t;
  switch (cmd.kind) {
    case CommandKind::ACT: {
      auto& b = banks_[cmd.bank];
      b.open_row = cmd.row;
      b.last_act = t;
      b.next_rd = std::max(b.next_rd, t + cycles(p.tRCD));
      b.next_wr = std::max(b.next_wr, t + cycles(p.tRCD));
      b.next_pre = std::max(b.next_pre, t + cycles(p.tRAS));
      b.next_act = std::max(b.next_act, t + cycles(p.tRC));
      next_act_any_ = t + cycles(p.tRRD);
      if (faw_count_ == 4) {
        std::rotate(faw_.begin(), faw_.begin() + 1, faw_.end());
        faw_[3] = t;
      } else {
        faw_[faw_count_++] = t;
      }
      return std::nullopt;
    }
    case CommandKind::PRE: {
      for (std::uint32_t i = 0; i < bank_count(); ++i) {
        if (cmd.bank != kAllBanks && cmd.bank != i) continue;
        auto& b = banks_[i];
        if (!b.open_row) continue;
        b.open_row.reset();
        b.next_act = std::max(b.next_act, t + cycles(p.tRP));
        b.next_ref = std::max(b.next_ref, t + cycles(p.tRP));
      }
      return std::nullopt;
    }
    case CommandKind::RD:
    case CommandKind::WR: {
      const bool rd = cmd.kind == CommandKind::RD;
      auto& b = banks_[cmd.bank];
      if (rd) {
        b.next_pre = std::max(b.next_pre, t + cycles(p.tRTP));
        next_rd_any_ = std::max(next_rd_any_, t + cycles(p.tCCD));
        next_wr_any_ = std::max(next_wr_any_, t + cycles(p.rd_to_wr()));
      } else {
        b.next_pre = std::max(b.next_pre, t + cycles(p.wr_to_pre()));
        next_wr_any_ = std::max(next_wr_any_, t + cycles(p.tCCD));
        next_rd_any_ = std::max(next_rd_any_, t + cycles(p.wr_to_rd()));
      }
      DataBurst burst;
      burst.direction = rd ? Direction::Read : Direction::Write;
      burst.first_slot = slot_of(t) + 2ULL * data_latency(cmd.kind);
      burst.slot_count = cmd.beats;
      const Tick start = t + cycles(data_latency(cmd.kind));
      burst.end_tick = start + cmd.beats * p.tCK_ps / 2;
      last_data_dir_ = burst.direction;
      data_end_slot_ = burst.first_slot + burst.slot_count;
      return burst;
    }
    case CommandKind::REF: {
      ref_busy_until_ = t + cycles(p.tRFC);
      last_ref_ = t;
      ++refreshes_;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

DramDevice::DramDevice(const config::Geometry& geometry, const TimingParams& timing, Tick phase)
    : geometry_(geometry),
      state_(geometry.banks, timing, phase),
      store_(geometry.capacity_beats()),
      bus_mask_(geometry.bus_width_bits >= 32 ? 0xFFFFFFFFU
                                              : (1U << geometry.bus_width_bits) - 1) {
  geometry_.validate();
}

std::uint64_t DramDevice::beat_address(std::uint32_t bank, std::uint32_t row,
                                       std::uint32_t col) const {
  return (std::uint64_t{bank} * geometry_.rows + row) * geometry_.columns + col;
}

void DramDevice::check_shape(const Command& cmd) const {
  const bool all_ok = cmd.kind == CommandKind::PRE || cmd.kind == CommandKind::REF;
  if (cmd.bank == kAllBanks ? !all_ok : cmd.bank >= geometry_.banks)
    throw ProtocolViolation("bad bank in " + format_command(cmd));
  if (cmd.kind == CommandKind::REF && cmd.bank != kAllBanks)
    throw ProtocolViolation("REF must address all banks: " + format_command(cmd));
  if (cmd.row >= geometry_.rows) throw ProtocolViolation("bad row in " + format_command(cmd));
  if (cmd.kind == CommandKind::RD || cmd.kind == CommandKind::WR) {
    if (cmd.beats != geometry_.burst_length && cmd.beats != geometry_.burst_length / 2)
      throw ProtocolViolation("burst must be BL8 or a chop of 4: " + format_command(cmd));
    if (cmd.col >= geometry_.columns || cmd.col % cmd.beats != 0)
      throw ProtocolViolation("misaligned column in " + format_command(cmd));
  }
}

Tick DramDevice::legal_issue_tick(const Command& cmd, Tick now) const {
  check_shape(cmd);
  if (!state_.precondition(cmd)) return state_.earliest(cmd, now);
  TimingState s = state_;
  auto step = [&](Command c) {
    c.tick = s.earliest(c, now);
    s.apply(c);
    now = c.tick;
  };
  switch (cmd.kind) {
    case CommandKind::ACT:
      step(Command{CommandKind::PRE, cmd.bank});
      break;
    case CommandKind::REF:
      step(Command{CommandKind::PRE, kAllBanks});
      break;
    case CommandKind::RD:
    case CommandKind::WR:
      if (s.bank(cmd.bank).open_row) step(Command{CommandKind::PRE, cmd.bank});
      step(Command{CommandKind::ACT, cmd.bank, cmd.row});
      break;
    case CommandKind::PRE:
      break;
  }
  return s.earliest(cmd, now);
}

bool DramDevice::can_issue(const Command& cmd, Tick now) const {
  if (state_.precondition(cmd)) return false;
  return state_.earliest(cmd, now) == now;
}

std::optional<DataBurst> DramDevice::issue(const Command& cmd, std::uint32_t* data) {
  check_shape(cmd);
  if (auto v = state_.violation(cmd))
    throw ProtocolViolation("illegal " + format_command(cmd) + ": " + *v);
  auto burst = state_.apply(cmd);
  ++counters_.commands[static_cast<std::size_t>(cmd.kind)];
  if (burst) {
    const std::uint64_t base = beat_address(cmd.bank, cmd.row, cmd.col);
    if (cmd.kind == CommandKind::WR) {
      counters_.beats_written += cmd.beats;
      if (data)
        for (std::uint32_t i = 0; i < cmd.beats; ++i) store_.write(base + i, data[i] & bus_mask_);
    } else {
      counters_.beats_read += cmd.beats;
      if (data)
        for (std::uint32_t i = 0; i < cmd.beats; ++i) data[i] = store_.read(base + i);
    }
  }
  if (log_) *log_ << format_command(cmd) << '\n';
  return burst;
}

bool DramDevice::refresh_due(Tick now) const {
  const Tick due = state_.phase() + state_.cycles((state_.refresh_count() + 1) * timing().tREFI);
  return now >= due;
}

}  // namespace mpmc::dram
