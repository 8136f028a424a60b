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
#include <string>
#include <string_view>
#include <vector>

#include "mpmc/metrics.hpp"

namespace mpmc::harness {

inline constexpr std::string_view kCsvHeader =
    "experiment,name,N,BC,policy,port,achieved_gbps,eff_percent,words,lat_first_mean_ns,"
    "lat_first_p95_ns,lat_last_mean_ns,lat_last_p95_ns";

struct CsvRow {
  std::string experiment;
  std::string name;
  std::uint32_t n = 0;
  std::uint32_t bc = 0;
  std::string policy;
  std::string port;
  double achieved_gbps = 0;
  double eff_percent = 0;
  std::uint64_t words = 0;
  double lat_first_mean_ns = 0;
  double lat_first_p95_ns = 0;
  double lat_last_mean_ns = 0;
  double lat_last_p95_ns = 0;

  friend bool operator==(const CsvRow&, const CsvRow&) = default;
};

/// Per-port rows followed by the aggregate ("all") row of each report.
std::vector<CsvRow> to_rows(const std::vector<EffReport>& reports);

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows);
/// Throws ConfigError when the file cannot be written.
void write_csv_file(const std::string& path, const std::vector<CsvRow>& rows);
/// Throws ConfigError on a malformed document.
std::vector<CsvRow> parse_csv(std::string_view text);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace mpmc::harness
