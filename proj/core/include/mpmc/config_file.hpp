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
#include <string>
#include <string_view>
#include <vector>

#include "mpmc/address_map.hpp"

namespace mpmc::config {

struct PortSection {
  std::uint32_t id = 0;
  WordAddress sa_read = 0;
  WordAddress ea_read = 0;
  std::uint32_t bc_read = 8;
  WordAddress sa_write = 0;
  WordAddress ea_write = 0;
  std::uint32_t bc_write = 8;
  double clock_mhz = 150.0;
  std::uint32_t data_width_bits = kControllerWordBits;
};

struct MemorySection {
  Geometry geometry;
  std::array<Field, 3> order = kBankRowCol;
  std::string timing = "ddr3-sockit-300";  // preset name or key=value file
  bool refresh = true;
};

struct ExperimentSection {
  std::string name = "custom";
  std::string policy = "wfcfs";
  std::string pattern = "stream_duplex";
  std::uint64_t cycles = 1'000'000;
  std::uint64_t warmup = 10'000;
  std::uint64_t seed = 1;
};

/// INI-style configuration: [memory], [experiment] and one [port.N] per port.
struct ConfigFile {
  MemorySection memory;
  ExperimentSection experiment;
  std::vector<PortSection> ports;  // sorted by id, ids 0..N-1
};

ConfigFile parse_config_text(std::string_view text);
ConfigFile load_config_file(const std::string& path);

/// Semantic checks (register ranges, widths, names). Throws ConfigError.
void validate(const ConfigFile& file);

bool is_valid_port_width(std::uint32_t bits);

}  // namespace mpmc::config
