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

#include "mpmc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <tuple>

namespace mpmc::sim {

std::uint64_t ClockDomain::first_edge_at_or_after(Tick t) const {
  if (t <= phase_ps) return 0;
  return (t - phase_ps + period_ps - 1) / period_ps;
}

std::uint64_t edge_count(const ClockDomain& domain, Tick start, Tick end) {
  if (end <= start) return 0;
  return domain.first_edge_at_or_after(end) - domain.first_edge_at_or_after(start);
}

Tick period_from_mhz(double mhz) {
  if (!(mhz > 0.0)) throw ConfigError("clock frequency must be positive");
  return static_cast<Tick>(std::llround(1.0e6 / mhz));
}

bool dispatches_before(const Event& a, const Event& b) {
  return std::tie(a.at, a.domain, a.target, a.sequence) <
         std::tie(b.at, b.domain, b.target, b.sequence);
}

DomainId Engine::add_domain(Tick period_ps, Tick phase_ps) {
  if (period_ps == 0) throw ConfigError("clock period must be positive");
  if (phase_ps >= period_ps) throw ConfigError("clock phase must be smaller than the period");
  DomainState state;
  state.clock = ClockDomain{static_cast<DomainId>(domains_.size()), period_ps, phase_ps};
  domains_.push_back(std::move(state));
  return domains_.back().clock.id;
}

const ClockDomain& Engine::domain(DomainId id) const {
  if (id >= domains_.size()) throw SimulationError("unknown clock domain " + std::to_string(id));
  return domains_[id].clock;
}

ComponentId Engine::attach(Component& component) {
  components_.push_back(&component);
  return static_cast<ComponentId>(components_.size() - 1);
}

void Engine::subscribe(ComponentId component, DomainId domain) {
  if (component == kClockTarget || component >= components_.size())
    throw SimulationError("subscribe: unknown component " + std::to_string(component));
  if (domain >= domains_.size())
    throw SimulationError("subscribe: unknown clock domain " + std::to_string(domain));
  auto& state = domains_[domain];
  auto it = std::lower_bound(state.subscribers.begin(), state.subscribers.end(), component);
  if (it != state.subscribers.end() && *it == component) return;
  state.subscribers.insert(it, component);
  if (!state.armed) {
    state.next_edge = state.clock.first_edge_at_or_after(now_);
    arm(state);
  }
}

void Engine::arm(DomainState& state) {
  queue_.push(Event{state.clock.edge(state.next_edge), state.clock.id, kClockTarget,
                    next_sequence_++});
  state.armed = true;
}

Event Engine::schedule(Tick at, DomainId domain, ComponentId target) {
  Event event{at, domain, target, next_sequence_};
  schedule(event);
  return event;
}

void Engine::schedule(const Event& event) {
  if (event.at < now_)
    throw SimulationError("event scheduled in the past (at " + std::to_string(event.at) +
                          " ps, now " + std::to_string(now_) + " ps)");
  if (event.target == kClockTarget || event.target >= components_.size())
    throw SimulationError("event targets unknown component " + std::to_string(event.target));
  if (event.domain >= domains_.size())
    throw SimulationError("event names unknown clock domain " + std::to_string(event.domain));
  next_sequence_ = std::max(next_sequence_, event.sequence + 1);
  queue_.push(event);
}

Tick Engine::run_until(Tick limit) {
  if (limit < now_) throw SimulationError("run_until: limit precedes current tick");
  while (!queue_.empty() && queue_.top().at <= limit) {
    const Event event = queue_.top();
    queue_.pop();
    now_ = event.at;
    dispatch(event);
  }
  now_ = limit;
  return now_;
}

void Engine::dispatch(const Event& event) {
  record(event);
  if (event.target != kClockTarget) {
    components_[event.target]->on_event(event);
    return;
  }
  auto& state = domains_[event.domain];
  // Subscribers may be added during dispatch; index-based loop stays valid.
  for (std::size_t i = 0; i < state.subscribers.size(); ++i)
    components_[state.subscribers[i]]->on_edge(event.at, event.domain);
  ++state.next_edge;
  arm(state);
}

void Engine::record(const Event& event) {
  ++dispatched_;
  constexpr std::uint64_t kPrime = 1099511628211ULL;
  for (std::uint64_t v : {event.at, std::uint64_t{event.domain}, std::uint64_t{event.target},
                          event.sequence}) {
    for (int byte = 0; byte < 8; ++byte) {
      digest_ ^= (v >> (8 * byte)) & 0xFF;
      digest_ *= kPrime;
    }
  }
  if (log_ != nullptr)
    *log_ << event.at << ' ' << event.domain << ' ' << event.target << ' ' << event.sequence
          << '\n';
}

}  // namespace mpmc::sim
