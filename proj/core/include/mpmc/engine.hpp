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
#include <iosfwd>
#include <queue>
#include <vector>

#include "mpmc/common.hpp"

namespace mpmc::sim {

using DomainId = std::uint32_t;
using ComponentId = std::uint32_t;

/// Target id used for periodic clock-edge events. Components get ids >= 1, so
/// at equal (tick, domain) the clock edge dispatches before one-shot events.
inline constexpr ComponentId kClockTarget = 0;

struct ClockDomain {
  DomainId id = 0;
  Tick period_ps = 1;
  Tick phase_ps = 0;

  Tick edge(std::uint64_t k) const { return phase_ps + k * period_ps; }
  /// Index of the first rising edge at or after t.
  std::uint64_t first_edge_at_or_after(Tick t) const;
};

/// Number of rising edges of `domain` in [start, end).
std::uint64_t edge_count(const ClockDomain& domain, Tick start, Tick end);

/// Period in ps for a clock given in MHz, rounded to the nearest picosecond.
Tick period_from_mhz(double mhz);

struct Event {
  Tick at = 0;
  DomainId domain = 0;
  ComponentId target = 0;
  std::uint64_t sequence = 0;

  friend bool operator==(const Event&, const Event&) = default;
};

/// Total dispatch order: (at, domain, target, sequence).
bool dispatches_before(const Event& a, const Event& b);

class Component {
 public:
  virtual ~Component() = default;
  /// Called on every rising edge of each subscribed domain.
  virtual void on_edge(Tick /*now*/, DomainId /*domain*/) {}
  /// Called for one-shot events scheduled with this component as target.
  virtual void on_event(const Event& /*event*/) {}
};

/// Single-threaded multi-clock engine on an integer picosecond axis.
///
/// Components mutate state on an edge at tick T; anything another component
/// may observe carries a timestamp and is only honoured at ticks > T. The
/// engine itself does not enforce this, it only guarantees a total,
/// reproducible dispatch order.
class Engine {
 public:
  Engine() = default;
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  DomainId add_domain(Tick period_ps, Tick phase_ps = 0);
  const ClockDomain& domain(DomainId id) const;
  std::size_t domain_count() const { return domains_.size(); }

  ComponentId attach(Component& component);
  void subscribe(ComponentId component, DomainId domain);

  /// Queues a one-shot event with the next insertion sequence number.
  Event schedule(Tick at, DomainId domain, ComponentId target);
  /// Queues a fully specified event. Throws SimulationError when at < now().
  void schedule(const Event& event);

  /// Dispatches every event with at <= limit, then parks time at limit.
  Tick run_until(Tick limit);

  Tick now() const { return now_; }
  std::uint64_t dispatch_count() const { return dispatched_; }
  /// FNV-1a digest over every dispatched (at, domain, target, sequence).
  std::uint64_t dispatch_digest() const { return digest_; }
  /// Optional text log, one dispatched event per line.
  void set_dispatch_log(std::ostream* log) { log_ = log; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const { return dispatches_before(b, a); }
  };
  struct DomainState {
    ClockDomain clock;
    std::vector<ComponentId> subscribers;  // ascending
    std::uint64_t next_edge = 0;
    bool armed = false;
  };

  void dispatch(const Event& event);
  void arm(DomainState& state);
  void record(const Event& event);

  std::vector<DomainState> domains_;
  std::vector<Component*> components_{nullptr};  // index 0 reserved for kClockTarget
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  Tick now_ = 0;
  std::uint64_t next_sequence_ = 0;
  std::uint64_t dispatched_ = 0;
  std::uint64_t digest_ = 1469598103934665603ULL;
  std::ostream* log_ = nullptr;
};

}  // namespace mpmc::sim
