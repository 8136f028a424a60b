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

#include "mpmc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mpmc::harness {

LatencyStats LatencyStats::from_samples(std::vector<Tick> samples) {
  LatencyStats s;
  if (samples.empty()) return s;
  std::sort(samples.begin(), samples.end());
  const auto n = samples.size();
  const auto rank = [&](double q) {
    const auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    return static_cast<double>(samples[std::clamp<std::size_t>(k, 1, n) - 1]) / 1e3;
  };
  s.count = n;
  long double sum = 0;
  for (Tick t : samples) sum += t;
  s.mean_ns = static_cast<double>(sum / n) / 1e3;
  s.p50_ns = rank(0.50);
  s.p95_ns = rank(0.95);
  s.max_ns = static_cast<double>(samples.back()) / 1e3;
  return s;
}

double EffReport::read_eff() const {
  if (aggregate.words == 0) return 0;
  return aggregate.eff_percent * static_cast<double>(aggregate.read_words) /
         static_cast<double>(aggregate.words);
}

double EffReport::write_eff() const {
  if (aggregate.words == 0) return 0;
  return aggregate.eff_percent * static_cast<double>(aggregate.write_words) /
         static_cast<double>(aggregate.words);
}

MetricsCollector::MetricsCollector(std::uint32_t ports, Tick window_start, Tick window_end)
    : start_(window_start),
      end_(window_end),
      read_beats_(ports),
      write_beats_(ports),
      completed_words_(ports),
      first_(ports),
      last_(ports) {}

void MetricsCollector::on_burst(std::uint32_t port, Direction d, std::uint32_t beats, Tick issue) {
  total_beats_ += beats;
  if (issue < start_ || issue >= end_) return;
  (d == Direction::Read ? read_beats_ : write_beats_)[port] += beats;
}

void MetricsCollector::on_transaction_done(const arb::TransactionRecord& r) {
  const auto port = r.request.port;
  if (r.last_word_tick >= start_ && r.last_word_tick < end_)
    completed_words_[port][index(r.request.direction)] += r.request.word_count;
  if (r.request.enqueue_tick < start_ || r.request.enqueue_tick >= end_) return;
  first_[port].push_back(r.first_word_tick - r.request.enqueue_tick);
  last_[port].push_back(r.last_word_tick - r.request.enqueue_tick);
}

EffReport MetricsCollector::report(std::uint64_t window_edges, Tick tck_ps,
                                   std::uint32_t bus_width_bits,
                                   std::uint32_t beats_per_word) const {
  EffReport rep;
  const auto n = static_cast<std::uint32_t>(read_beats_.size());
  rep.n = n;
  rep.window_edges = window_edges;
  rep.theoretical_gbps = 2.0 * bus_width_bits / static_cast<double>(tck_ps) * 1e3;
  const double window_ns = static_cast<double>(window_edges) * static_cast<double>(tck_ps) / 1e3;
  const double slots = 2.0 * static_cast<double>(window_edges);

  auto fill = [&](PortReport& pr, std::uint64_t rb, std::uint64_t wb, double share) {
    pr.read_words = rb / beats_per_word;
    pr.write_words = wb / beats_per_word;
    pr.words = pr.read_words + pr.write_words;
    const double beats = static_cast<double>(rb + wb);
    pr.achieved_gbps = window_ns > 0 ? beats * bus_width_bits / window_ns : 0;
    pr.eff_percent = slots > 0 ? 100.0 * beats / (slots * share) : 0;
  };

  std::vector<Tick> all_first, all_last;
  std::uint64_t rb_total = 0, wb_total = 0;
  for (std::uint32_t p = 0; p < n; ++p) {
    PortReport pr;
    pr.port = std::to_string(p);
    fill(pr, read_beats_[p], write_beats_[p], 1.0 / n);
    pr.completed_by_direction = completed_words_[p];
    pr.completed_words = completed_words_[p][0] + completed_words_[p][1];
    pr.latency_first = LatencyStats::from_samples(first_[p]);
    pr.latency_last = LatencyStats::from_samples(last_[p]);
    rep.ports.push_back(pr);
    rb_total += read_beats_[p];
    wb_total += write_beats_[p];
    for (std::size_t d = 0; d < 2; ++d)
      rep.aggregate.completed_by_direction[d] += completed_words_[p][d];
    all_first.insert(all_first.end(), first_[p].begin(), first_[p].end());
    all_last.insert(all_last.end(), last_[p].begin(), last_[p].end());
  }
  rep.aggregate.port = "all";
  fill(rep.aggregate, rb_total, wb_total, 1.0);
  rep.aggregate.completed_words =
      rep.aggregate.completed_by_direction[0] + rep.aggregate.completed_by_direction[1];
  rep.aggregate.latency_first = LatencyStats::from_samples(std::move(all_first));
  rep.aggregate.latency_last = LatencyStats::from_samples(std::move(all_last));
  return rep;
}

}  // namespace mpmc::harness
