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

#include "mpmc/arbiter.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <string>

namespace mpmc::arb {

namespace {
constexpr Tick kNever = std::numeric_limits<Tick>::max();
}

struct Arbiter::Txn {
  MemRequest req;
  std::uint64_t window = 0;
  Tick dispatch_tick = 0;
  std::vector<config::ColumnSpan> spans;
  std::size_t next_span = 0;
  std::vector<Word> data;
  // writes: tick the word left the port FIFO; reads: tick its last beat left the bus
  std::vector<Tick> word_tick;
  std::uint32_t words_fetched = 0;
  std::uint32_t words_returned = 0;
  Tick first_word = 0;
  Tick last_word = 0;
  Tick done_tick = 0;
};

Arbiter::Arbiter(sim::Engine& engine, sim::DomainId controller, sim::DomainId memory,
                 config::RegisterFile& regs, const config::AddressMap& map,
                 dram::DramDevice& device, std::vector<PortLink> ports, ArbiterConfig config)
    : engine_(engine),
      controller_(controller),
      memory_(memory),
      controller_period_(engine.domain(controller).period_ps),
      regs_(regs),
      map_(map),
      device_(device),
      ports_(std::move(ports)),
      config_(config),
      queue_(config.policy, regs.port_count()),
      claims_(device.geometry().banks, -1) {
  if (ports_.size() != regs_.port_count())
    throw ConfigError("arbiter needs one FIFO pair per configured port");
  if (config_.phy_queue_depth == 0) throw ConfigError("PHY queue depth must be positive");
  for (const auto& p : ports_) {
    if (!p.write_fifo || !p.read_fifo) throw ConfigError("port FIFO missing");
    const auto w = p.write_fifo->config().entry_width_bits;
    if (p.read_fifo->config().entry_width_bits != w)
      throw ConfigError("read and write FIFOs of a port must share a width");
    ratio_.push_back(fifo::width_ratio(w));
  }
  const auto id = engine_.attach(*this);
  engine_.subscribe(id, controller_);
  engine_.subscribe(id, memory_);
}

Arbiter::~Arbiter() = default;

void Arbiter::on_edge(Tick now, sim::DomainId domain) {
  if (domain == controller_) controller_edge(now);
  if (domain == memory_) memory_edge(now);
}

bool Arbiter::idle() const { return live_.empty() && pre_pipe_.empty(); }

void Arbiter::controller_edge(Tick now) {
  retire(now);
  poll(now);
  mature(now);
  fetch_writes(now);
  dispatch(now);
}

// ---- PRE stage -------------------------------------------------------------

bool Arbiter::read_ready(std::uint32_t port, Tick now) {
  if (flag(port, Direction::Read) || !regs_.has_pending(port, Direction::Read)) return false;
  const std::uint32_t need = regs_.regs(port, Direction::Read).bc * ratio_[port];
  return ports_[port].read_fifo->observed_free(fifo::Side::Writer, now) >= need;
}

bool Arbiter::write_ready(std::uint32_t port, Tick now) {
  if (flag(port, Direction::Write) || !regs_.has_pending(port, Direction::Write)) return false;
  const std::uint32_t need = regs_.regs(port, Direction::Write).bc * ratio_[port];
  return ports_[port].write_fifo->observed_occupancy(fifo::Side::Reader, now) >= need;
}

void Arbiter::grant(std::uint32_t port, Direction d, Tick now) {
  flags_[index(d)] |= 1U << port;
  const auto& r = regs_.regs(port, d);
  MemRequest req{next_id_++, port, d, r.ca, r.bc, now};
  regs_.advance_ca(port, d);
  pre_pipe_.emplace_back(now + config_.pre_latency * controller_period_, req);
  ++counters_.granted[index(d)];
}

void Arbiter::poll(Tick now) {
  const auto n = static_cast<std::uint32_t>(ports_.size());
  if (config_.policy == Policy::FCFS) {
    // no windows: each port's request lines are taken as they come, port by port
    for (std::uint32_t p = 0; p < n; ++p) {
      if (read_ready(p, now)) grant(p, Direction::Read, now);
      if (write_ready(p, now)) grant(p, Direction::Write, now);
    }
    return;
  }
  for (std::uint32_t p = 0; p < n; ++p)
    if (read_ready(p, now)) grant(p, Direction::Read, now);
  for (std::uint32_t p = 0; p < n; ++p)
    if (write_ready(p, now)) grant(p, Direction::Write, now);
}

void Arbiter::mature(Tick now) {
  while (!pre_pipe_.empty() && pre_pipe_.front().first <= now) {
    const MemRequest req = pre_pipe_.front().second;
    pre_pipe_.pop_front();
    queue_.push(req);
    auto txn = std::make_unique<Txn>();
    txn->req = req;
    txn->data.resize(req.word_count);
    txn->word_tick.assign(req.word_count, kNever);
    if (req.direction == Direction::Write) fetch_list_.push_back(txn.get());
    live_.emplace(req.id, std::move(txn));
  }
}

// ---- POS stage, controller side --------------------------------------------

void Arbiter::fetch_writes(Tick now) {
  if (fetch_list_.empty()) return;
  Txn& txn = *fetch_list_.front();
  if (!fetch_started_) {
    fetch_started_ = true;
    fetch_setup_left_ = config_.write_fetch_latency;
  }
  if (fetch_setup_left_ > 0) {
    --fetch_setup_left_;
    return;
  }
  const std::uint32_t port = txn.req.port;
  const std::uint32_t r = ratio_[port];
  const std::uint32_t width = ports_[port].write_fifo->config().entry_width_bits;
  Word w;
  for (std::uint32_t i = 0; i < r; ++i) {
    auto e = ports_[port].write_fifo->pop(now);
    if (!e) throw SimulationError("write FIFO of port " + std::to_string(port) + " ran dry");
    fifo::place(w, i, width, *e);
  }
  txn.data[txn.words_fetched] = w;
  txn.word_tick[txn.words_fetched] = now;
  ++txn.words_fetched;
  ++counters_.words_fetched;
  if (txn.words_fetched == txn.req.word_count) {
    fetch_list_.pop_front();
    fetch_started_ = false;
  }
}

void Arbiter::dispatch(Tick now) {
  if (phy_queue_.size() >= config_.phy_queue_depth) return;
  auto served = queue_.pop();
  if (!served) return;
  Txn& txn = *live_.at(served->request.id);
  txn.window = served->window;
  txn.dispatch_tick = now;
  txn.spans = config::expand_transaction(map_, device_.geometry(), txn.req.start_address,
                                         txn.req.word_count);
  phy_queue_.push_back(&txn);
  ++counters_.dispatched;
  if (arb_log_) {
    *arb_log_ << now << ' ' << txn.req.port << ' ' << to_string(txn.req.direction) << ' '
              << txn.req.start_address << ' ' << txn.req.word_count << ' ' << txn.window << '\n';
  }
}

void Arbiter::retire(Tick now) {
  while (!writes_done_.empty() && writes_done_.front()->done_tick < now) {
    Txn* txn = writes_done_.front();
    writes_done_.pop_front();
    flags_[index(Direction::Write)] &= ~(1U << txn->req.port);
    if (observer_)
      observer_->on_transaction_done(
          {txn->req, txn->window, txn->dispatch_tick, txn->first_word, txn->last_word});
    live_.erase(txn->req.id);
  }

  while (!returning_.empty()) {
    Txn* txn = returning_.front();
    const std::uint32_t port = txn->req.port;
    auto& rf = *ports_[port].read_fifo;
    const std::uint32_t width = rf.config().entry_width_bits;
    while (txn->words_returned < txn->req.word_count &&
           txn->word_tick[txn->words_returned] < now) {
      const Word& w = txn->data[txn->words_returned];
      for (std::uint32_t i = 0; i < ratio_[port]; ++i) {
        if (!rf.push(fifo::slice(w, i, width), now))
          throw SimulationError("read-return FIFO of port " + std::to_string(port) +
                                " rejected a word");
      }
      if (txn->words_returned == 0) txn->first_word = now;
      ++txn->words_returned;
      ++counters_.words_returned;
    }
    if (txn->words_returned < txn->req.word_count) break;
    txn->last_word = now;
    returning_.pop_front();
    flags_[index(Direction::Read)] &= ~(1U << port);
    if (observer_)
      observer_->on_transaction_done(
          {txn->req, txn->window, txn->dispatch_tick, txn->first_word, txn->last_word});
    live_.erase(txn->req.id);
  }
}

// ---- POS stage, memory side ------------------------------------------------

void Arbiter::memory_edge(Tick now) {
  if (config_.refresh) {
    if (!refresh_pending_ && device_.refresh_due(now)) refresh_pending_ = true;
    if (refresh_pending_) {
      try_refresh(now);
      return;
    }
  }
  if (try_column(now)) return;
  try_row_command(now);
}

bool Arbiter::try_refresh(Tick now) {
  dram::Command cmd;
  cmd.tick = now;
  cmd.bank = dram::kAllBanks;
  cmd.kind = device_.state().all_closed() ? dram::CommandKind::REF : dram::CommandKind::PRE;
  if (!device_.can_issue(cmd, now)) return false;
  device_.issue(cmd);
  if (cmd.kind == dram::CommandKind::REF) {
    refresh_pending_ = false;
    ++counters_.refreshes;
  }
  return true;
}

bool Arbiter::try_column(Tick now) {
  if (phy_queue_.empty()) return false;
  Txn& txn = *phy_queue_.front();
  if (txn.dispatch_tick >= now) return false;
  const auto& span = txn.spans[txn.next_span];
  const auto& bank = device_.state().bank(span.bank);
  if (!bank.open_row || *bank.open_row != span.row) return false;

  const bool write = txn.req.direction == Direction::Write;
  const std::uint32_t bpw = device_.geometry().beats_per_word();
  const std::uint32_t words = span.beat_count / bpw;
  if (write) {
    for (std::uint32_t k = span.first_word; k < span.first_word + words; ++k)
      if (txn.word_tick[k] >= now) return false;
  }
  const dram::Command cmd{write ? dram::CommandKind::WR : dram::CommandKind::RD, span.bank,
                          span.row, span.col_start, span.beat_count, now};
  if (!device_.can_issue(cmd, now)) return false;

  const std::uint32_t lane = device_.geometry().bus_width_bits;
  std::array<std::uint32_t, 8> beats{};
  if (write) {
    for (std::uint32_t j = 0; j < span.beat_count; ++j)
      beats[j] = static_cast<std::uint32_t>(
          txn.data[span.first_word + j / bpw].bits((j % bpw) * lane, lane));
  }
  const auto burst = device_.issue(cmd, beats.data());
  if (!write) {
    for (std::uint32_t j = 0; j < span.beat_count; ++j)
      txn.data[span.first_word + j / bpw].set_bits((j % bpw) * lane, lane, beats[j]);
    for (std::uint32_t k = span.first_word; k < span.first_word + words; ++k)
      txn.word_tick[k] = burst->end_tick;
    if (txn.next_span == 0) returning_.push_back(&txn);
  } else {
    if (txn.next_span == 0) txn.first_word = burst->end_tick;
    txn.last_word = burst->end_tick;
  }
  if (observer_) observer_->on_burst(txn.req.port, txn.req.direction, span.beat_count, now);
  finish_column(txn, now);
  return true;
}

void Arbiter::finish_column(Txn& txn, Tick now) {
  if (++txn.next_span < txn.spans.size()) return;
  phy_queue_.pop_front();
  if (txn.req.direction == Direction::Write) {
    txn.done_tick = now;
    writes_done_.push_back(&txn);
  }
}

bool Arbiter::try_row_command(Tick now) {
  std::fill(claims_.begin(), claims_.end(), -1);
  for (Txn* txn : phy_queue_) {
    if (txn->dispatch_tick >= now) break;
    for (std::size_t s = txn->next_span; s < txn->spans.size(); ++s) {
      const auto& span = txn->spans[s];
      auto& claim = claims_[span.bank];
      if (claim >= 0) continue;
      claim = span.row;
      const auto& open = device_.state().bank(span.bank).open_row;
      if (open && *open == span.row) continue;
      dram::Command cmd;
      cmd.tick = now;
      cmd.bank = span.bank;
      if (open) {
        cmd.kind = dram::CommandKind::PRE;
      } else {
        cmd.kind = dram::CommandKind::ACT;
        cmd.row = span.row;
      }
      if (device_.can_issue(cmd, now)) {
        device_.issue(cmd);
        return true;
      }
    }
  }
  return false;
}

}  // namespace mpmc::arb
