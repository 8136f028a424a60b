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

#include "mpmc/simulation.hpp"

#include <map>
#include <memory>

#include "mpmc/config_file.hpp"

#include "mpmc/dcdwff.hpp"
#include "mpmc/dram_device.hpp"
#include "mpmc/engine.hpp"

namespace mpmc::harness {

Tick controller_period(const dram::TimingParams& timing) { return 2 * timing.tCK_ps; }

SimResult run_simulation(const SimSpec& spec) {
  const auto n = static_cast<std::uint32_t>(spec.plan.ports.size());
  if (n == 0 || n > kMaxPorts) throw ConfigError("port count must be in [1, 32]");
  if (spec.verify && !spec.plan.read_after_write)
    throw ConfigError("read-back checking needs a plan where reads follow writes");

  sim::Engine engine;
  engine.set_dispatch_log(spec.dispatch_log);
  const Tick ctrl_period = controller_period(spec.timing);
  const auto ctrl = engine.add_domain(ctrl_period);
  const auto mem = engine.add_domain(spec.timing.tCK_ps);

  std::map<Tick, sim::DomainId> mod_domains;
  std::vector<sim::DomainId> port_domain;
  for (const auto& p : spec.plan.ports) {
    const Tick period = sim::period_from_mhz(p.clock_mhz);
    auto it = mod_domains.find(period);
    if (it == mod_domains.end()) it = mod_domains.emplace(period, engine.add_domain(period)).first;
    port_domain.push_back(it->second);
  }

  const auto map = config::AddressMap::for_geometry(spec.geometry, spec.order);
  config::RegisterFile regs(n, map.capacity_words());
  dram::DramDevice device(spec.geometry, spec.timing);
  device.set_command_log(spec.command_log);

  std::vector<std::unique_ptr<fifo::Dcdwff>> write_fifos, read_fifos;
  std::vector<arb::PortLink> links;
  for (std::uint32_t p = 0; p < n; ++p) {
    const auto& pp = spec.plan.ports[p];
    if (!config::is_valid_port_width(pp.data_width_bits))
      throw ConfigError("port " + std::to_string(p) + ": data width must divide 128");
    const std::uint32_t r = fifo::width_ratio(pp.data_width_bits);
    for (const auto* dp : {&pp.read, &pp.write}) {
      if (dp->enabled && dp->bc > spec.fifo_words)
        throw ConfigError("port " + std::to_string(p) + ": BC larger than the port FIFO");
    }
    fifo::FifoConfig wc;
    wc.depth = spec.fifo_words * r;
    wc.entry_width_bits = pp.data_width_bits;
    wc.almost_full_threshold = (pp.write.enabled ? pp.write.bc : 1) * r;
    wc.almost_empty_threshold = r;
    wc.write_domain = engine.domain(port_domain[p]);
    wc.read_domain = engine.domain(ctrl);
    wc.sync_stages = spec.sync_stages;
    fifo::FifoConfig rc = wc;
    rc.almost_full_threshold = wc.depth;
    rc.almost_empty_threshold = (pp.read.enabled ? pp.read.bc : 1) * r;
    rc.write_domain = engine.domain(ctrl);
    rc.read_domain = engine.domain(port_domain[p]);
    write_fifos.push_back(std::make_unique<fifo::Dcdwff>(wc));
    read_fifos.push_back(std::make_unique<fifo::Dcdwff>(rc));
    links.push_back({write_fifos.back().get(), read_fifos.back().get()});
  }

  TransferManager manager(engine, ctrl, regs, spec.plan);
  arb::Arbiter arbiter(engine, ctrl, mem, regs, map, device, links, spec.arbiter);
  manager.set_arbiter(&arbiter);
  arbiter.set_arbitration_log(spec.arbitration_log);

  const Tick window_start = spec.warmup_cycles * ctrl_period;
  const Tick end = (spec.warmup_cycles + spec.cycles) * ctrl_period;
  MetricsCollector metrics(n, window_start, end);
  arbiter.set_observer(&metrics);

  std::vector<std::unique_ptr<Mod>> mods;
  for (std::uint32_t p = 0; p < n; ++p) {
    mods.push_back(std::make_unique<Mod>(engine, port_domain[p], p, spec.plan.ports[p],
                                         *write_fifos[p], *read_fifos[p], spec.seed, spec.verify));
  }

  SimResult result;
  if (spec.run_to_completion) {
    const Tick step = 10'000 * ctrl_period;
    Tick t = 0;
    while (t < end) {
      t = std::min(end, t + step);
      engine.run_until(t);
      if (manager.all_done() && arbiter.idle()) {
        result.completed = true;
        break;
      }
    }
  } else {
    engine.run_until(end);
  }

  const Tick measured_end = std::min(end, engine.now() + 1);
  const auto edges = sim::edge_count(engine.domain(mem), window_start,
                                     std::max(window_start, measured_end));
  result.report = metrics.report(edges, spec.timing.tCK_ps, spec.geometry.bus_width_bits,
                                 spec.geometry.beats_per_word());
  result.report.experiment = spec.experiment;
  result.report.name = spec.name;
  result.report.bc = spec.report_bc;
  result.report.policy = spec.arbiter.policy;
  result.dispatches = engine.dispatch_count();
  result.dispatch_digest = engine.dispatch_digest();
  result.end_tick = engine.now();
  for (std::uint32_t p = 0; p < n; ++p) {
    const auto& c = mods[p]->counters();
    result.per_port.push_back(c);
    result.mods.words_pushed += c.words_pushed;
    result.mods.words_received += c.words_received;
    result.mods.words_verified += c.words_verified;
    result.mods.mismatches += c.mismatches;
    result.rejected_pushes += write_fifos[p]->rejected_pushes() + read_fifos[p]->rejected_pushes();
  }
  result.arbiter = arbiter.counters();
  result.device = device.counters();
  result.direction_switches = arbiter.queue().direction_switches();
  result.bus_beats = metrics.total_beats();
  return result;
}

}  // namespace mpmc::harness
