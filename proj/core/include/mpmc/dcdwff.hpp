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
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "mpmc/common.hpp"
#include "mpmc/engine.hpp"

namespace mpmc::fifo {

using Entry = Word;

struct FifoConfig {
  std::uint32_t depth = 128;  // entries, power of two
  std::uint32_t entry_width_bits = kControllerWordBits;
  std::uint32_t almost_full_threshold = 1;
  std::uint32_t almost_empty_threshold = 1;
  sim::ClockDomain write_domain;
  sim::ClockDomain read_domain;
  std::uint32_t sync_stages = 2;

  /// Throws ConfigError on a malformed configuration.
  void validate() const;
};

enum class Side : std::uint8_t { Reader, Writer };

struct FifoStatus {
  bool full = false;
  bool almost_full = false;
  bool empty = true;
  bool almost_empty = true;
  std::uint32_t observed_occupancy = 0;

  friend bool operator==(const FifoStatus&, const FifoStatus&) = default;
};

/// A pointer as seen from the opposite clock domain: every update is
/// timestamped and becomes visible once it precedes the observer's sample
/// point (now minus the synchronizer delay).
class DelayedPointer {
 public:
  void record(Tick at, std::uint32_t value) { pending_.emplace_back(at, value); }
  /// Latest value recorded strictly before `sample`. Samples must not decrease.
  std::uint32_t seen(Tick sample);

 private:
  std::uint32_t settled_ = 0;
  Tick last_sample_ = 0;
  std::deque<std::pair<Tick, std::uint32_t>> pending_;
};

/// Dual-clock dual-port FIFO with gray-counter style pointer crossing.
///
/// Pointers count modulo 2*depth. The writer sees its own pointer exactly and
/// the read pointer `sync_stages` writer cycles late; the reader sees the write
/// pointer `sync_stages` reader cycles late. Status is therefore conservative:
/// the writer may see "full" early and the reader "empty" late, never the
/// reverse.
class Dcdwff {
 public:
  explicit Dcdwff(FifoConfig config);

  /// Write-side edge. Rejected (no state change) when the writer sees no space.
  bool push(const Entry& entry, Tick now);
  /// Read-side edge. Absent when the reader sees nothing to read.
  std::optional<Entry> pop(Tick now);

  FifoStatus status(Side observer, Tick now);
  std::uint32_t observed_occupancy(Side observer, Tick now);
  std::uint32_t observed_free(Side observer, Tick now) {
    return config_.depth - observed_occupancy(observer, now);
  }

  std::uint32_t true_occupancy() const;
  std::uint32_t wr_ptr() const { return wr_ptr_; }
  std::uint32_t rd_ptr() const { return rd_ptr_; }
  const FifoConfig& config() const { return config_; }

  std::uint64_t accepted_pushes() const { return pushes_; }
  std::uint64_t rejected_pushes() const { return rejected_; }
  std::uint64_t pops() const { return pops_; }

 private:
  Tick sample_point(Side observer, Tick now) const;
  std::uint32_t distance(std::uint32_t wr, std::uint32_t rd) const {
    return (wr + 2 * config_.depth - rd) % (2 * config_.depth);
  }

  FifoConfig config_;
  std::vector<Entry> storage_;
  std::uint32_t wr_ptr_ = 0;
  std::uint32_t rd_ptr_ = 0;
  DelayedPointer wr_seen_by_reader_;
  DelayedPointer rd_seen_by_writer_;
  std::uint64_t pushes_ = 0;
  std::uint64_t rejected_ = 0;
  std::uint64_t pops_ = 0;
};

/// Entries per controller word for a port of the given width.
inline std::uint32_t width_ratio(std::uint32_t entry_width_bits) {
  return kControllerWordBits / entry_width_bits;
}

/// Piece `index` of a controller word, lowest bits first.
inline Entry slice(const Word& w, std::uint32_t index, std::uint32_t width) {
  if (width == kControllerWordBits) return w;
  Entry e;
  e.set_bits(0, width, w.bits(index * width, width));
  return e;
}

inline void place(Word& w, std::uint32_t index, std::uint32_t width, const Entry& e) {
  if (width == kControllerWordBits) {
    w = e;
    return;
  }
  w.set_bits(index * width, width, e.bits(0, width));
}

}  // namespace mpmc::fifo
