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

#include "mpmc/config_regs.hpp"

#include <string>

namespace mpmc::config {

std::uint64_t grants_for(WordAddress sa, WordAddress ea, std::uint32_t bc) {
  if (ea <= sa) return 1;
  return (ea - sa + bc - 1) / bc;
}

RegisterFile::RegisterFile(std::uint32_t ports, std::uint64_t capacity_words)
    : ports_(ports), capacity_words_(capacity_words) {
  if (ports == 0 || ports > kMaxPorts)
    throw ConfigError("port count must be in [1, 32], got " + std::to_string(ports));
}

PortConfig& RegisterFile::port(std::uint32_t id) {
  if (id >= ports_.size()) throw SimulationError("port " + std::to_string(id) + " out of range");
  return ports_[id];
}

const PortConfig& RegisterFile::port(std::uint32_t id) const {
  if (id >= ports_.size()) throw SimulationError("port " + std::to_string(id) + " out of range");
  return ports_[id];
}

void RegisterFile::load_config(std::uint32_t port_id, Direction dir, WordAddress sa,
                               WordAddress ea, std::uint32_t bc) {
  const std::string where = "port " + std::to_string(port_id) + " " + std::string(to_string(dir));
  if (port_id >= ports_.size()) throw ConfigError(where + ": port not in use");
  if (bc < 1 || bc > kMaxBurstCount)
    throw ConfigError(where + ": burst count " + std::to_string(bc) + " outside [1, 64]");
  if (sa > ea) throw ConfigError(where + ": start address beyond end address");
  const std::uint64_t last_word = sa + grants_for(sa, ea, bc) * bc - 1;
  if (last_word >= capacity_words_)
    throw ConfigError(where + ": transfer ends at word " + std::to_string(last_word) +
                      ", device holds " + std::to_string(capacity_words_));

  TransferRegs& r = port(port_id)[dir];
  r.sa = sa;
  r.ea = ea;
  r.ca = sa;
  r.bc = bc;
  r.configured = true;
  r.finished = false;
}

AdvanceResult RegisterFile::advance_ca(std::uint32_t port_id, Direction dir) {
  TransferRegs& r = port(port_id)[dir];
  if (!r.configured)
    throw SimulationError("advance_ca on unconfigured port " + std::to_string(port_id));
  if (r.ca < r.ea) {
    r.ca += r.bc;
    r.finished = r.ca >= r.ea;
  } else {
    r.finished = true;
  }
  return AdvanceResult{r.ca, r.finished};
}

bool RegisterFile::has_pending(std::uint32_t port_id, Direction dir) const {
  const TransferRegs& r = port(port_id)[dir];
  return r.configured && !r.finished;
}

const TransferRegs& RegisterFile::regs(std::uint32_t port_id, Direction dir) const {
  return port(port_id)[dir];
}

}  // namespace mpmc::config
