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

#include "mpmc/mod.hpp"

#include <string>

namespace mpmc::harness {

std::string_view to_string(Pattern p) {
  switch (p) {
    case Pattern::StreamWrite: return "stream_write";
    case Pattern::StreamRead: return "stream_read";
    case Pattern::StreamDuplex: return "stream_duplex";
  }
  return "?";
}

Pattern parse_pattern(std::string_view text) {
  if (text == "stream_write") return Pattern::StreamWrite;
  if (text == "stream_read") return Pattern::StreamRead;
  if (text == "stream_duplex") return Pattern::StreamDuplex;
  throw ConfigError("unknown traffic pattern '" + std::string(text) + "'");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

Word word_value(std::uint64_t seed, std::uint32_t port, std::uint64_t pass, WordAddress address) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ port);
  h = splitmix64(h ^ pass);
  h = splitmix64(h ^ address);
  return Word{h, splitmix64(h)};
}

Mod::Mod(sim::Engine& engine, sim::DomainId domain, std::uint32_t port, const PortPlan& plan,
         fifo::Dcdwff& write_fifo, fifo::Dcdwff& read_fifo, std::uint64_t seed, bool verify)
    : port_(port),
      plan_(plan),
      write_fifo_(write_fifo),
      read_fifo_(read_fifo),
      seed_(seed),
      verify_(verify),
      ratio_(fifo::width_ratio(plan.data_width_bits)),
      width_(plan.data_width_bits),
      write_limit_(plan.write.max_passes * (plan.write.enabled ? plan.write.words_per_pass() : 0)) {
  const auto id = engine.attach(*this);
  engine.subscribe(id, domain);
}

void Mod::on_edge(Tick now, sim::DomainId) {
  if (plan_.write.enabled && (write_limit_ == 0 || counters_.words_pushed < write_limit_) &&
      write_fifo_.observed_free(fifo::Side::Writer, now) > 0) {
    if (out_piece_ == 0) {
      const auto [pass, addr] = plan_.write.locate(counters_.words_pushed);
      out_word_ = word_value(seed_, port_, pass, addr);
    }
    if (!write_fifo_.push(fifo::slice(out_word_, out_piece_, width_), now))
      throw SimulationError("write FIFO rejected a push after reporting space");
    if (++out_piece_ == ratio_) {
      out_piece_ = 0;
      ++counters_.words_pushed;
    }
  }

  if (plan_.read.enabled) {
    if (auto e = read_fifo_.pop(now)) {
      fifo::place(in_word_, in_piece_, width_, *e);
      if (++in_piece_ == ratio_) {
        in_piece_ = 0;
        if (verify_) {
          const auto [pass, addr] = plan_.read.locate(counters_.words_received);
          if (in_word_ == word_value(seed_, port_, pass, addr)) ++counters_.words_verified;
          else ++counters_.mismatches;
        }
        ++counters_.words_received;
        in_word_ = Word{};
      }
    }
  }
}

}  // namespace mpmc::harness
