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

#include "mpmc/service_queue.hpp"

#include <string>

namespace mpmc::arb {

std::string_view to_string(Policy p) { return p == Policy::WFCFS ? "wfcfs" : "fcfs"; }

Policy parse_policy(std::string_view text) {
  if (text == "wfcfs") return Policy::WFCFS;
  if (text == "fcfs") return Policy::FCFS;
  throw ConfigError("unknown arbitration policy '" + std::string(text) + "'");
}

ServiceQueue::ServiceQueue(Policy policy, std::uint32_t capacity_per_direction)
    : policy_(policy), capacity_(capacity_per_direction) {}

std::size_t ServiceQueue::size(Direction d) const { return counts_[index(d)]; }

void ServiceQueue::push(const MemRequest& request) {
  auto& n = counts_[index(request.direction)];
  if (n >= capacity_)
    throw SimulationError(std::string(to_string(request.direction)) + " request FIFO overflow");
  ++n;
  if (policy_ == Policy::WFCFS) fifo_[index(request.direction)].push_back(request);
  else arrivals_.push_back(request);
}

std::optional<Served> ServiceQueue::pop() {
  return policy_ == Policy::WFCFS ? pop_wfcfs() : pop_fcfs();
}

Served ServiceQueue::finish(const MemRequest& r) {
  --counts_[index(r.direction)];
  if (last_served_ && *last_served_ != r.direction) ++switches_;
  last_served_ = r.direction;
  return Served{r, window_};
}

std::optional<Served> ServiceQueue::pop_wfcfs() {
  if (phase_left_ == 0) {
    const bool reads = !fifo_[0].empty();
    const bool writes = !fifo_[1].empty();
    if (!reads && !writes) return std::nullopt;
    Direction next;
    if (reads && writes) {
      // alternate; reads win when nothing has been served yet
      next = phase_ ? (*phase_ == Direction::Read ? Direction::Write : Direction::Read)
                    : Direction::Read;
    } else {
      next = reads ? Direction::Read : Direction::Write;
    }
    phase_ = next;
    phase_left_ = fifo_[index(next)].size();  // window snapshot
    ++window_;
  }
  auto& q = fifo_[index(*phase_)];
  const MemRequest r = q.front();
  q.pop_front();
  --phase_left_;
  return finish(r);
}

std::optional<Served> ServiceQueue::pop_fcfs() {
  if (arrivals_.empty()) return std::nullopt;
  const MemRequest r = arrivals_.front();
  arrivals_.pop_front();
  if (!last_served_ || *last_served_ != r.direction) ++window_;
  return finish(r);
}

}  // namespace mpmc::arb
