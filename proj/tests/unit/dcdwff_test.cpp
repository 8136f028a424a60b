#include "doctest.h"

#include "fifo_reference.hpp"
#include "mpmc/dcdwff.hpp"

using namespace mpmc;
using namespace mpmc::fifo;

namespace {

FifoConfig make(std::uint32_t depth, Tick wp, Tick rp) {
  FifoConfig c;
  c.depth = depth;
  c.write_domain = sim::ClockDomain{1, wp, 0};
  c.read_domain = sim::ClockDomain{2, rp, 0};
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  auto c = make(4, 10, 10);
  CHECK_NOTHROW(c.validate());
  c.depth = 6;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = make(4, 10, 10);
  c.sync_stages = 1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = make(4, 10, 10);
  c.almost_full_threshold = 5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("a push becomes visible to the reader two reader cycles later") {
  Dcdwff f(make(4, 10, 10));
  REQUIRE(f.push(Word{7, 0}, 0));
  CHECK(f.true_occupancy() == 1);
  CHECK(f.observed_occupancy(Side::Writer, 0) == 1);
  CHECK_FALSE(f.pop(10).has_value());
  CHECK_FALSE(f.pop(20).has_value());  // sample point 0 is not after the push
  auto w = f.pop(30);
  REQUIRE(w.has_value());
  CHECK(w->lo == 7);
  CHECK(f.true_occupancy() == 0);
}

TEST_CASE("the writer sees freed space late, never early") {
  Dcdwff f(make(2, 10, 10));
  CHECK(f.push(Word{1, 0}, 0));
  CHECK(f.push(Word{2, 0}, 10));
  CHECK_FALSE(f.push(Word{3, 0}, 20));
  CHECK(f.status(Side::Writer, 20).full);
  REQUIRE(f.pop(40).has_value());
  CHECK_FALSE(f.push(Word{3, 0}, 50));  // sample point 30 precedes the pop
  CHECK_FALSE(f.push(Word{3, 0}, 60));
  CHECK(f.push(Word{3, 0}, 70));
  CHECK(f.rejected_pushes() == 3);
  CHECK(f.accepted_pushes() == 3);
}

TEST_CASE("status flags follow thresholds") {
  auto c = make(8, 10, 10);
  c.almost_full_threshold = 3;
  c.almost_empty_threshold = 2;
  Dcdwff f(c);
  for (int i = 0; i < 3; ++i) f.push(Word{}, 10 * i);
  auto s = f.status(Side::Writer, 30);
  CHECK(s.almost_full);
  CHECK_FALSE(s.full);
  CHECK_FALSE(s.empty);
  auto r = f.status(Side::Reader, 30);  // sample 10 sees one push
  CHECK(r.observed_occupancy == 1);
  CHECK(r.almost_empty);
}

TEST_CASE("width conversion round trips") {
  const Word w{0x0123456789ABCDEFULL, 0xFEDCBA9876543210ULL};
  for (std::uint32_t width : {8U, 16U, 32U, 64U, 128U}) {
    const auto r = width_ratio(width);
    CHECK(r * width == 128);
    Word back;
    for (std::uint32_t i = 0; i < r; ++i) place(back, i, width, slice(w, i, width));
    CHECK(back == w);
  }
  CHECK(slice(w, 0, 16).lo == 0xCDEF);
  CHECK(slice(w, 4, 16).lo == 0x3210);
}

TEST_CASE("pointers wrap at twice the depth") {
  Dcdwff f(make(4, 10, 10));
  Tick t = 0;
  for (int i = 0; i < 20; ++i) {
    while (!f.push(Word{static_cast<std::uint64_t>(i), 0}, t)) t += 10;
    std::optional<Word> w;
    while (!(w = f.pop(t))) t += 10;
    CHECK(w->lo == static_cast<std::uint64_t>(i));
  }
  CHECK(f.wr_ptr() == 20 % 8);
  CHECK(f.rd_ptr() == 20 % 8);
}

TEST_CASE("matches the reference over short exhaustive sequences") {
  for (auto [wp, rp] : {std::pair<Tick, Tick>{6, 6}, {4, 6}, {2, 8}, {6, 4}}) {
    const auto r = testing::enumerate_fifo(4, wp, rp, 0, 8);
    INFO(r.first_mismatch);
    CHECK(r.mismatches == 0);
    CHECK(r.sequences == 256);
  }
}
