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
#include <string_view>

#include "mpmc/dcdwff.hpp"
#include "mpmc/engine.hpp"
#include "mpmc/transfer.hpp"

namespace mpmc::harness {

enum class Pattern : std::uint8_t { StreamWrite, StreamRead, StreamDuplex };

std::string_view to_string(Pattern p);
Pattern parse_pattern(std::string_view text);

/// Reproducible content of the word written to `address` by `port` in `pass`.
Word word_value(std::uint64_t seed, std::uint32_t port, std::uint64_t pass, WordAddress address);

struct ModCounters {
  std::uint64_t words_pushed = 0;
  std::uint64_t words_received = 0;
  std::uint64_t words_verified = 0;
  std::uint64_t mismatches = 0;
};

/// Application-side traffic source/sink attached to one port.
class Mod : public sim::Component {
 public:
  Mod(sim::Engine& engine, sim::DomainId domain, std::uint32_t port, const PortPlan& plan,
      fifo::Dcdwff& write_fifo, fifo::Dcdwff& read_fifo, std::uint64_t seed, bool verify);

  void on_edge(Tick now, sim::DomainId domain) override;
  const ModCounters& counters() const { return counters_; }

 private:
  std::uint32_t port_;
  const PortPlan& plan_;
  fifo::Dcdwff& write_fifo_;
  fifo::Dcdwff& read_fifo_;
  std::uint64_t seed_;
  bool verify_;
  std::uint32_t ratio_;
  std::uint32_t width_;
  std::uint64_t write_limit_;  // words; 0 = unbounded

  Word out_word_;
  std::uint32_t out_piece_ = 0;
  Word in_word_;
  std::uint32_t in_piece_ = 0;
  ModCounters counters_;
};

}  // namespace mpmc::harness
