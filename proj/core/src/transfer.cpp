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

#include "mpmc/transfer.hpp"

namespace mpmc::harness {

std::uint64_t DirectionPlan::words_per_pass() const {
  return config::grants_for(0, length, bc) * bc;
}

std::pair<std::uint64_t, WordAddress> DirectionPlan::locate(std::uint64_t word_index) const {
  const std::uint64_t wpp = words_per_pass();
  const std::uint64_t pass = word_index / wpp;
  return {pass, start_of(pass) + word_index % wpp};
}

TransferManager::TransferManager(sim::Engine& engine, sim::DomainId controller,
                                 config::RegisterFile& regs, const TransferPlan& plan)
    : regs_(regs), plan_(plan), state_(plan.ports.size()) {
  if (plan.ports.size() != regs.port_count())
    throw ConfigError("transfer plan and register file disagree on the port count");
  for (std::uint32_t p = 0; p < plan.ports.size(); ++p) {
    for (Direction d : {Direction::Read, Direction::Write}) {
      if (plan.ports[p][d].enabled && may_start(p, d, 0)) load(p, d);
    }
  }
  const auto id = engine.attach(*this);
  engine.subscribe(id, controller);
}

void TransferManager::load(std::uint32_t port, Direction d) {
  auto& s = state_[port][index(d)];
  const DirectionPlan& dp = plan_.ports[port][d];
  const WordAddress sa = dp.start_of(s.loaded);
  regs_.load_config(port, d, sa, sa + dp.length, dp.bc);
  ++s.loaded;
  s.active = true;
}

bool TransferManager::may_start(std::uint32_t port, Direction d, std::uint64_t pass) const {
  const DirectionPlan& dp = plan_.ports[port][d];
  if (dp.max_passes && pass >= dp.max_passes) return false;
  if (pass == 0 && cycle_ < dp.start_cycle) return false;
  if (!plan_.read_after_write) return true;
  const auto& s = state_[port];
  if (d == Direction::Read) return s[index(Direction::Write)].done >= pass + 1;
  return pass < 2 || s[index(Direction::Read)].done + 2 >= pass + 1;
}

void TransferManager::on_edge(Tick, sim::DomainId) {
  for (std::uint32_t p = 0; p < state_.size(); ++p) {
    for (Direction d : {Direction::Read, Direction::Write}) {
      if (!plan_.ports[p][d].enabled) continue;
      auto& s = state_[p][index(d)];
      if (s.active && !regs_.has_pending(p, d) && !arbiter_->flag(p, d)) {
        s.active = false;
        ++s.done;
      }
      if (!s.active && may_start(p, d, s.loaded)) load(p, d);
    }
  }
  ++cycle_;
}

bool TransferManager::all_done() const {
  for (std::uint32_t p = 0; p < state_.size(); ++p) {
    for (Direction d : {Direction::Read, Direction::Write}) {
      const auto& dp = plan_.ports[p][d];
      if (!dp.enabled) continue;
      if (dp.max_passes == 0 || state_[p][index(d)].done < dp.max_passes) return false;
    }
  }
  return true;
}

}  // namespace mpmc::harness
