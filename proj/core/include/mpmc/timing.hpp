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

#include <cstdint>
#include <string>
#include <string_view>

#include "mpmc/common.hpp"

namespace mpmc::dram {

/// DDR3 timing set. All constraints are in memory-clock cycles.
struct TimingParams {
  std::string name = "custom";
  Tick tCK_ps = 3333;
  std::uint32_t CL = 5;
  std::uint32_t CWL = 5;
  std::uint32_t tRCD = 5;
  std::uint32_t tRP = 5;
  std::uint32_t tRAS = 12;
  std::uint32_t tRC = 17;
  std::uint32_t tCCD = 4;
  std::uint32_t tRTP = 4;
  std::uint32_t tWR = 5;
  std::uint32_t tWTR = 4;
  std::uint32_t tRRD = 4;
  std::uint32_t tFAW = 16;
  std::uint32_t tREFI = 2340;
  std::uint32_t tRFC = 79;
  std::uint32_t BL = 8;

  /// Throws ConfigError when a relation between parameters is broken.
  void validate() const;

  std::uint32_t burst_cycles() const { return BL / 2; }
  // command-to-command minimums between column commands of opposite direction
  std::uint32_t rd_to_wr() const { return CL + tCCD + 2 - CWL; }
  std::uint32_t wr_to_rd() const { return CWL + burst_cycles() + tWTR; }
  std::uint32_t wr_to_pre() const { return CWL + burst_cycles() + tWR; }
  // idle data-bus cycles at a direction switch when commands are issued back to back
  std::uint32_t rd_wr_bus_gap() const { return rd_to_wr() + CWL - CL - burst_cycles(); }
  std::uint32_t wr_rd_bus_gap() const { return wr_to_rd() + CL - CWL - burst_cycles(); }

  friend bool operator==(const TimingParams&, const TimingParams&) = default;
};

inline constexpr std::string_view kDefaultPreset = "ddr3-sockit-300";

/// Text of the built-in preset (same format as preset files).
std::string_view preset_text(std::string_view name);

/// Parses "key = value unit" lines on top of `base`. Units: ck, ps, ns, us.
TimingParams parse_timing_text(std::string_view text, const TimingParams& base = {});

/// Resolves a preset name or a path to a preset file.
TimingParams load_timing(const std::string& preset_or_path);

/// One "key = value" line per parameter plus the derived turnaround gaps.
std::string describe(const TimingParams& t);

}  // namespace mpmc::dram
