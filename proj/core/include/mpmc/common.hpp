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
#include <stdexcept>
#include <string>
#include <string_view>

namespace mpmc {

using Tick = std::uint64_t;         // picoseconds since simulation start
using WordAddress = std::uint64_t;  // controller-word granularity

inline constexpr std::uint32_t kControllerWordBits = 128;
inline constexpr std::uint32_t kMaxPorts = 32;
inline constexpr std::uint32_t kMaxBurstCount = 64;

enum class Direction : std::uint8_t { Read = 0, Write = 1 };

inline constexpr std::string_view to_string(Direction d) {
  return d == Direction::Read ? "read" : "write";
}

inline constexpr std::size_t index(Direction d) { return static_cast<std::size_t>(d); }

/// One 128-bit controller word.
struct Word {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  friend bool operator==(const Word&, const Word&) = default;

  /// Extracts bits [offset, offset + width) as an unsigned value (width <= 64).
  std::uint64_t bits(std::uint32_t offset, std::uint32_t width) const;
  void set_bits(std::uint32_t offset, std::uint32_t width, std::uint64_t value);
};

inline std::uint64_t Word::bits(std::uint32_t offset, std::uint32_t width) const {
  const std::uint64_t mask = width >= 64 ? ~0ULL : ((1ULL << width) - 1);
  if (offset >= 64) return (hi >> (offset - 64)) & mask;
  if (offset + width <= 64) return (lo >> offset) & mask;
  // straddles the two halves
  const std::uint64_t low_part = lo >> offset;
  const std::uint64_t high_part = hi << (64 - offset);
  return (low_part | high_part) & mask;
}

inline void Word::set_bits(std::uint32_t offset, std::uint32_t width, std::uint64_t value) {
  if (width == 0) return;
  const std::uint64_t mask = width >= 64 ? ~0ULL : ((1ULL << width) - 1);
  value &= mask;
  if (offset >= 64) {
    hi = (hi & ~(mask << (offset - 64))) | (value << (offset - 64));
    return;
  }
  lo = (lo & ~(mask << offset)) | (value << offset);
  if (offset + width > 64) {
    const std::uint32_t spill = offset + width - 64;
    const std::uint64_t hmask = (1ULL << spill) - 1;
    hi = (hi & ~hmask) | (value >> (64 - offset));
  }
}

/// Invalid user configuration; surfaces as exit code 1 in the CLI.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A component broke one of its own invariants. Always a bug.
class SimulationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A DRAM command was issued in violation of a timing or state constraint.
class ProtocolViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mpmc
