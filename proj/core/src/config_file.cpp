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

#include "mpmc/config_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "mpmc/config_regs.hpp"

namespace mpmc::config {

namespace pt = boost::property_tree;

namespace {

template <typename T>
T get_or(const pt::ptree& section, const std::string& section_name, const std::string& key,
         T fallback) {
  // keys are looked up literally; ptree paths would split on '.'
  auto it = section.find(key);
  if (it == section.not_found()) return fallback;
  try {
    return it->second.get_value<T>();
  } catch (const pt::ptree_bad_data&) {
    throw ConfigError("[" + section_name + "] " + key + ": cannot parse '" +
                      it->second.data() + "'");
  }
}

bool parse_bool(const std::string& v, const std::string& what) {
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(what + ": expected on/off, got '" + v + "'");
}

void check_known_keys(const pt::ptree& section, const std::string& name,
                      std::initializer_list<std::string_view> known) {
  for (const auto& [key, _] : section) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("[" + name + "] unknown key '" + key + "'");
  }
}

}  // namespace

bool is_valid_port_width(std::uint32_t bits) {
  return bits == 8 || bits == 16 || bits == 32 || bits == 64 || bits == 128;
}

ConfigFile parse_config_text(std::string_view text) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  ConfigFile file;
  for (const auto& [name, section] : tree) {
    if (section.empty() && !section.data().empty())
      throw ConfigError("key '" + name + "' outside of any section");
    if (name == "memory") {
      check_known_keys(section, name,
                       {"banks", "rows", "columns", "bus_width_bits", "address_order", "timing",
                        "refresh"});
      auto& m = file.memory;
      m.geometry.banks = get_or(section, name, "banks", m.geometry.banks);
      m.geometry.rows = get_or(section, name, "rows", m.geometry.rows);
      m.geometry.columns = get_or(section, name, "columns", m.geometry.columns);
      m.geometry.bus_width_bits = get_or(section, name, "bus_width_bits", m.geometry.bus_width_bits);
      m.order = parse_order(get_or<std::string>(section, name, "address_order", "bank-row-col"));
      m.timing = get_or<std::string>(section, name, "timing", m.timing);
      m.refresh = parse_bool(get_or<std::string>(section, name, "refresh", "on"), "[memory] refresh");
    } else if (name == "experiment") {
      check_known_keys(section, name, {"name", "policy", "pattern", "cycles", "warmup", "seed"});
      auto& e = file.experiment;
      e.name = get_or(section, name, "name", e.name);
      e.policy = get_or(section, name, "policy", e.policy);
      e.pattern = get_or(section, name, "pattern", e.pattern);
      e.cycles = get_or(section, name, "cycles", e.cycles);
      e.warmup = get_or(section, name, "warmup", e.warmup);
      e.seed = get_or(section, name, "seed", e.seed);
    } else if (name.rfind("port.", 0) == 0) {
      check_known_keys(section, name,
                       {"sa_read", "ea_read", "bc_read", "sa_write", "ea_write", "bc_write",
                        "clock_mhz", "data_width_bits"});
      PortSection p;
      try {
        std::size_t used = 0;
        const std::string id_text = name.substr(5);
        p.id = static_cast<std::uint32_t>(std::stoul(id_text, &used));
        if (used != id_text.size()) throw std::invalid_argument(id_text);
      } catch (const std::exception&) {
        throw ConfigError("bad port section name [" + name + "]");
      }
      p.sa_read = get_or(section, name, "sa_read", p.sa_read);
      p.ea_read = get_or(section, name, "ea_read", p.ea_read);
      p.bc_read = get_or(section, name, "bc_read", p.bc_read);
      p.sa_write = get_or(section, name, "sa_write", p.sa_write);
      p.ea_write = get_or(section, name, "ea_write", p.ea_write);
      p.bc_write = get_or(section, name, "bc_write", p.bc_write);
      p.clock_mhz = get_or(section, name, "clock_mhz", p.clock_mhz);
      p.data_width_bits = get_or(section, name, "data_width_bits", p.data_width_bits);
      file.ports.push_back(p);
    } else {
      throw ConfigError("unknown section [" + name + "]");
    }
  }
  std::sort(file.ports.begin(), file.ports.end(),
            [](const PortSection& a, const PortSection& b) { return a.id < b.id; });
  return file;
}

ConfigFile load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

void validate(const ConfigFile& file) {
  file.memory.geometry.validate();
  if (file.ports.empty()) throw ConfigError("config defines no [port.N] sections");
  if (file.ports.size() > kMaxPorts) throw ConfigError("more than 32 ports configured");
  for (std::size_t i = 0; i < file.ports.size(); ++i) {
    if (file.ports[i].id != i)
      throw ConfigError("port sections must be numbered 0..N-1 without gaps");
  }
  const auto& e = file.experiment;
  if (e.policy != "wfcfs" && e.policy != "fcfs")
    throw ConfigError("[experiment] policy must be wfcfs or fcfs");
  if (e.pattern != "stream_read" && e.pattern != "stream_write" && e.pattern != "stream_duplex")
    throw ConfigError("[experiment] pattern must be stream_read, stream_write or stream_duplex");
  if (e.cycles == 0) throw ConfigError("[experiment] cycles must be positive");

  const auto map = AddressMap::for_geometry(file.memory.geometry, file.memory.order);
  RegisterFile regs(static_cast<std::uint32_t>(file.ports.size()), map.capacity_words());
  for (const auto& p : file.ports) {
    if (!(p.clock_mhz > 0.0 && p.clock_mhz <= 1000.0))
      throw ConfigError("[port." + std::to_string(p.id) + "] clock_mhz must be in (0, 1000]");
    if (!is_valid_port_width(p.data_width_bits))
      throw ConfigError("[port." + std::to_string(p.id) +
                        "] data_width_bits must divide 128 (8, 16, 32, 64 or 128)");
    regs.load_config(p.id, Direction::Read, p.sa_read, p.ea_read, p.bc_read);
    regs.load_config(p.id, Direction::Write, p.sa_write, p.ea_write, p.bc_write);
  }
}

}  // namespace mpmc::config
