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

#include "mpmc/timing.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace mpmc::dram {

namespace {

// Transcribed from the IS43/46TR16256A datasheet, derated to tCK = 3.333 ns.
constexpr std::string_view kSockitPreset = R"(# DDR3 at 300 MHz (tCK 3.333 ns), x32 interface
name  = ddr3-sockit-300
tCK   = 3333 ps
CL    = 5 ck
CWL   = 5 ck
tRCD  = 15 ns
tRP   = 15 ns
tRAS  = 37.5 ns
tRC   = 17 ck
tCCD  = 4 ck
tRTP  = 4 ck
tWR   = 15 ns
tWTR  = 4 ck
tRRD  = 4 ck
tFAW  = 50 ns
tREFI = 7.8 us
tRFC  = 260 ns
BL    = 8 ck
)";

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct Line {
  std::size_t number;
  std::string key;
  std::string value;
};

double parse_number(const std::string& text, const Line& line) {
  double v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !(v >= 0))
    throw ConfigError("timing line " + std::to_string(line.number) + ": bad number '" + text + "'");
  return v;
}

std::uint32_t* field(TimingParams& t, const std::string& key) {
  if (key == "CL") return &t.CL;
  if (key == "CWL") return &t.CWL;
  if (key == "tRCD") return &t.tRCD;
  if (key == "tRP") return &t.tRP;
  if (key == "tRAS") return &t.tRAS;
  if (key == "tRC") return &t.tRC;
  if (key == "tCCD") return &t.tCCD;
  if (key == "tRTP") return &t.tRTP;
  if (key == "tWR") return &t.tWR;
  if (key == "tWTR") return &t.tWTR;
  if (key == "tRRD") return &t.tRRD;
  if (key == "tFAW") return &t.tFAW;
  if (key == "tREFI") return &t.tREFI;
  if (key == "tRFC") return &t.tRFC;
  if (key == "BL") return &t.BL;
  return nullptr;
}

double unit_ps(const std::string& unit, const Line& line) {
  if (unit == "ps") return 1.0;
  if (unit == "ns") return 1e3;
  if (unit == "us") return 1e6;
  throw ConfigError("timing line " + std::to_string(line.number) + ": unknown unit '" + unit + "'");
}

}  // namespace

void TimingParams::validate() const {
  if (tCK_ps == 0) throw ConfigError("tCK must be positive");
  for (auto [v, n] : {std::pair{CL, "CL"}, {CWL, "CWL"}, {tRCD, "tRCD"}, {tRP, "tRP"},
                      {tRAS, "tRAS"}, {tRC, "tRC"}, {tCCD, "tCCD"}, {tRTP, "tRTP"}, {tWR, "tWR"},
                      {tWTR, "tWTR"}, {tRRD, "tRRD"}, {tFAW, "tFAW"}, {tREFI, "tREFI"},
                      {tRFC, "tRFC"}, {BL, "BL"}}) {
    if (v == 0) throw ConfigError(std::string(n) + " must be positive");
  }
  if (BL != 8) throw ConfigError("only BL = 8 is supported");
  if (tRC < tRAS + tRP) throw ConfigError("tRC must be at least tRAS + tRP");
  if (tRAS < tRCD) throw ConfigError("tRAS must be at least tRCD");
  if (tCCD < BL / 2) throw ConfigError("tCCD shorter than a burst");
  if (CL + tCCD + 2 <= CWL) throw ConfigError("CWL too large relative to CL");
  if (tREFI <= tRFC) throw ConfigError("tREFI must exceed tRFC");
}

std::string_view preset_text(std::string_view name) {
  if (name == kDefaultPreset) return kSockitPreset;
  throw ConfigError("unknown timing preset '" + std::string(name) + "'");
}

TimingParams parse_timing_text(std::string_view text, const TimingParams& base) {
  std::vector<Line> lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("timing line " + std::to_string(number) + ": expected key = value");
    lines.push_back(Line{number, trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
  }

  TimingParams t = base;
  // tCK first: other values in ns/us convert against it
  for (const auto& l : lines) {
    if (l.key != "tCK") continue;
    std::istringstream v(l.value);
    std::string num, unit;
    v >> num >> unit;
    if (unit.empty()) unit = "ps";
    if (unit == "ck") throw ConfigError("tCK cannot be given in clock cycles");
    t.tCK_ps = static_cast<Tick>(std::llround(parse_number(num, l) * unit_ps(unit, l)));
  }
  for (const auto& l : lines) {
    if (l.key == "tCK") continue;
    if (l.key == "name") {
      t.name = l.value;
      continue;
    }
    std::uint32_t* dst = field(t, l.key);
    if (!dst)
      throw ConfigError("timing line " + std::to_string(l.number) + ": unknown key '" + l.key + "'");
    std::istringstream v(l.value);
    std::string num, unit, extra;
    v >> num >> unit >> extra;
    if (!extra.empty())
      throw ConfigError("timing line " + std::to_string(l.number) + ": trailing text");
    const double value = parse_number(num, l);
    if (unit.empty() || unit == "ck") {
      if (value != std::floor(value))
        throw ConfigError("timing line " + std::to_string(l.number) + ": fractional cycle count");
      *dst = static_cast<std::uint32_t>(value);
      continue;
    }
    const double cycles = value * unit_ps(unit, l) / static_cast<double>(t.tCK_ps);
    // a refresh interval is a maximum, every other constraint a minimum
    const double rounded = l.key == "tREFI" ? std::floor(cycles + 1e-9) : std::ceil(cycles - 1e-9);
    *dst = static_cast<std::uint32_t>(rounded);
  }
  t.validate();
  return t;
}

TimingParams load_timing(const std::string& preset_or_path) {
  if (preset_or_path == kDefaultPreset) return parse_timing_text(kSockitPreset);
  if (!std::filesystem::exists(preset_or_path))
    throw ConfigError("timing '" + preset_or_path + "' is neither a preset nor a readable file");
  std::ifstream in(preset_or_path);
  if (!in) throw ConfigError("cannot open timing file '" + preset_or_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  // files override the default preset key by key
  return parse_timing_text(buf.str(), parse_timing_text(kSockitPreset));
}

std::string describe(const TimingParams& t) {
  std::ostringstream out;
  out << "name = " << t.name << "\n"
      << "tCK = " << t.tCK_ps << " ps\n"
      << "CL = " << t.CL << " ck\nCWL = " << t.CWL << " ck\ntRCD = " << t.tRCD
      << " ck\ntRP = " << t.tRP << " ck\ntRAS = " << t.tRAS << " ck\ntRC = " << t.tRC
      << " ck\ntCCD = " << t.tCCD << " ck\ntRTP = " << t.tRTP << " ck\ntWR = " << t.tWR
      << " ck\ntWTR = " << t.tWTR << " ck\ntRRD = " << t.tRRD << " ck\ntFAW = " << t.tFAW
      << " ck\ntREFI = " << t.tREFI << " ck\ntRFC = " << t.tRFC << " ck\nBL = " << t.BL << " ck\n"
      << "# derived\n"
      << "rd_to_wr = " << t.rd_to_wr() << " ck\nwr_to_rd = " << t.wr_to_rd() << " ck\n"
      << "rd_wr_bus_gap = " << t.rd_wr_bus_gap() << " ck\nwr_rd_bus_gap = " << t.wr_rd_bus_gap()
      << " ck\n";
  return out.str();
}

}  // namespace mpmc::dram
