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

#include "mpmc/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "mpmc/service_queue.hpp"

namespace mpmc::harness {

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw SimulationError("cannot format number");
  return std::string(buf.data(), ptr);
}

std::vector<CsvRow> to_rows(const std::vector<EffReport>& reports) {
  std::vector<CsvRow> rows;
  for (const auto& r : reports) {
    auto row_of = [&](const PortReport& p) {
      return CsvRow{r.experiment,
                    r.name,
                    r.n,
                    r.bc,
                    std::string(arb::to_string(r.policy)),
                    p.port,
                    p.achieved_gbps,
                    p.eff_percent,
                    p.words,
                    p.latency_first.mean_ns,
                    p.latency_first.p95_ns,
                    p.latency_last.mean_ns,
                    p.latency_last.p95_ns};
    };
    for (const auto& p : r.ports) rows.push_back(row_of(p));
    rows.push_back(row_of(r.aggregate));
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.experiment << ',' << r.name << ',' << r.n << ',' << r.bc << ',' << r.policy << ','
        << r.port << ',' << format_double(r.achieved_gbps) << ',' << format_double(r.eff_percent)
        << ',' << r.words << ',' << format_double(r.lat_first_mean_ns) << ','
        << format_double(r.lat_first_p95_ns) << ',' << format_double(r.lat_last_mean_ns) << ','
        << format_double(r.lat_last_p95_ns) << '\n';
  }
}

void write_csv_file(const std::string& path, const std::vector<CsvRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  write_csv(out, rows);
  out.flush();
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

namespace {

template <typename T>
T parse_field(std::string_view s, std::size_t line) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigError("csv line " + std::to_string(line) + ": bad value '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::vector<CsvRow> parse_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  if (!std::getline(in, line) || line != kCsvHeader) throw ConfigError("csv header mismatch");
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      f.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (f.size() != 13) throw ConfigError("csv line " + std::to_string(number) + ": expected 13 fields");
    CsvRow r;
    r.experiment = f[0];
    r.name = f[1];
    r.n = parse_field<std::uint32_t>(f[2], number);
    r.bc = parse_field<std::uint32_t>(f[3], number);
    r.policy = f[4];
    r.port = f[5];
    r.achieved_gbps = parse_field<double>(f[6], number);
    r.eff_percent = parse_field<double>(f[7], number);
    r.words = parse_field<std::uint64_t>(f[8], number);
    r.lat_first_mean_ns = parse_field<double>(f[9], number);
    r.lat_first_p95_ns = parse_field<double>(f[10], number);
    r.lat_last_mean_ns = parse_field<double>(f[11], number);
    r.lat_last_p95_ns = parse_field<double>(f[12], number);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace mpmc::harness
