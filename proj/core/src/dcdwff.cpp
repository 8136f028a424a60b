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

#include "mpmc/dcdwff.hpp"

#include <bit>
#include <string>

namespace mpmc::fifo {

void FifoConfig::validate() const {
  if (depth == 0 || !std::has_single_bit(depth))
    throw ConfigError("fifo depth must be a non-zero power of two, got " + std::to_string(depth));
  if (entry_width_bits == 0 || entry_width_bits > kControllerWordBits)
    throw ConfigError("fifo entry width must be in [1, 128] bits");
  if (almost_full_threshold == 0 || almost_full_threshold > depth)
    throw ConfigError("almost_full threshold must be in [1, depth]");
  if (almost_empty_threshold == 0 || almost_empty_threshold > depth)
    throw ConfigError("almost_empty threshold must be in [1, depth]");
  if (write_domain.id != read_domain.id && sync_stages < 2)
    throw ConfigError("a clock-crossing fifo needs at least two synchronizer stages");
}

std::uint32_t DelayedPointer::seen(Tick sample) {
  if (sample < last_sample_) throw SimulationError("fifo pointer sampled backwards in time");
  last_sample_ = sample;
  while (!pending_.empty() && pending_.front().first < sample) {
    settled_ = pending_.front().second;
    pending_.pop_front();
  }
  return settled_;
}

Dcdwff::Dcdwff(FifoConfig config) : config_(config) {
  config_.validate();
  storage_.resize(config_.depth);
}

Tick Dcdwff::sample_point(Side observer, Tick now) const {
  const sim::ClockDomain& clock =
      observer == Side::Reader ? config_.read_domain : config_.write_domain;
  const Tick delay = static_cast<Tick>(config_.sync_stages) * clock.period_ps;
  return now >= delay ? now - delay : 0;
}

std::uint32_t Dcdwff::observed_occupancy(Side observer, Tick now) {
  const Tick sample = sample_point(observer, now);
  if (observer == Side::Reader) return distance(wr_seen_by_reader_.seen(sample), rd_ptr_);
  return distance(wr_ptr_, rd_seen_by_writer_.seen(sample));
}

std::uint32_t Dcdwff::true_occupancy() const { return distance(wr_ptr_, rd_ptr_); }

FifoStatus Dcdwff::status(Side observer, Tick now) {
  FifoStatus s;
  s.observed_occupancy = observed_occupancy(observer, now);
  s.full = s.observed_occupancy >= config_.depth;
  s.almost_full = s.observed_occupancy >= config_.almost_full_threshold;
  s.empty = s.observed_occupancy == 0;
  s.almost_empty = s.observed_occupancy <= config_.almost_empty_threshold;
  return s;
}

bool Dcdwff::push(const Entry& entry, Tick now) {
  if (observed_occupancy(Side::Writer, now) >= config_.depth) {
    ++rejected_;
    return false;
  }
  if (true_occupancy() >= config_.depth) throw SimulationError("fifo overflow");
  storage_[wr_ptr_ % config_.depth] = entry;
  wr_ptr_ = (wr_ptr_ + 1) % (2 * config_.depth);
  wr_seen_by_reader_.record(now, wr_ptr_);
  ++pushes_;
  return true;
}

std::optional<Entry> Dcdwff::pop(Tick now) {
  if (observed_occupancy(Side::Reader, now) == 0) return std::nullopt;
  if (true_occupancy() == 0) throw SimulationError("fifo underflow");
  Entry out = storage_[rd_ptr_ % config_.depth];
  rd_ptr_ = (rd_ptr_ + 1) % (2 * config_.depth);
  rd_seen_by_writer_.record(now, rd_ptr_);
  ++pops_;
  return out;
}

}  // namespace mpmc::fifo
