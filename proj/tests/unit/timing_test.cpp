#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "mpmc/timing.hpp"

using namespace mpmc;
using namespace mpmc::dram;

TEST_CASE("default preset converts nanoseconds to whole cycles") {
  const auto t = load_timing("ddr3-sockit-300");
  CHECK(t.name == "ddr3-sockit-300");
  CHECK(t.tCK_ps == 3333);
  // hand conversion at 3.333 ns: ceil for minimums, floor for the refresh interval
  CHECK(t.tRCD == 5);   // 15 / 3.333 = 4.50
  CHECK(t.tRP == 5);
  CHECK(t.tRAS == 12);  // 37.5 / 3.333 = 11.25
  CHECK(t.tWR == 5);
  CHECK(t.tFAW == 16);  // 50 / 3.333 = 15.0015
  CHECK(t.tRFC == 79);  // 260 / 3.333 = 78.008
  CHECK(t.tREFI == 2340);  // 7800 / 3.333 = 2340.23
  CHECK(t.tRC == t.tRAS + t.tRP);
  CHECK(t == TimingParams{"ddr3-sockit-300"});
}

TEST_CASE("derived turnaround spacing") {
  const TimingParams t;
  CHECK(t.rd_to_wr() == 6);    // CL + tCCD + 2 - CWL
  CHECK(t.wr_to_rd() == 13);   // CWL + BL/2 + tWTR
  CHECK(t.wr_to_pre() == 14);  // CWL + BL/2 + tWR
  CHECK(t.rd_wr_bus_gap() == 2);
  CHECK(t.wr_rd_bus_gap() == 9);
  CHECK(t.burst_cycles() == 4);
}

TEST_CASE("parsing overrides and units") {
  const auto t = parse_timing_text("tCK = 2.5 ns\ntRCD = 13.75 ns\nCL = 6 ck\ntREFI = 7.8 us\n");
  CHECK(t.tCK_ps == 2500);
  CHECK(t.tRCD == 6);  // 5.5 cycles rounds up
  CHECK(t.CL == 6);
  CHECK(t.tREFI == 3120);
  CHECK(t.tRP == TimingParams{}.tRP);  // untouched keys keep the base
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_timing_text("tXYZ = 4 ck\n"), ConfigError);
  CHECK_THROWS_AS(parse_timing_text("CL = 4.5 ck\n"), ConfigError);
  CHECK_THROWS_AS(parse_timing_text("CL = 4 furlongs\n"), ConfigError);
  CHECK_THROWS_AS(parse_timing_text("CL\n"), ConfigError);
  CHECK_THROWS_AS(parse_timing_text("tCK = 3 ck\n"), ConfigError);
  CHECK_THROWS_AS(load_timing("no-such-preset"), ConfigError);
}

TEST_CASE("validation relations") {
  TimingParams t;
  CHECK_NOTHROW(t.validate());
  t.tRC = t.tRAS + t.tRP - 1;
  CHECK_THROWS_AS(t.validate(), ConfigError);
  t = TimingParams{};
  t.BL = 4;
  CHECK_THROWS_AS(t.validate(), ConfigError);
  t = TimingParams{};
  t.tREFI = t.tRFC;
  CHECK_THROWS_AS(t.validate(), ConfigError);
}

TEST_CASE("preset files round trip through the parser") {
  const std::string path = "timing_test_preset.txt";
  {
    std::ofstream out(path);
    out << preset_text("ddr3-sockit-300") << "CL = 6 ck\n";
  }
  const auto t = load_timing(path);
  std::remove(path.c_str());
  CHECK(t.CL == 6);
  CHECK(t.tRFC == 79);
  const auto text = describe(TimingParams{});
  CHECK(text.find("tRFC") != std::string::npos);
}
