#include "doctest.h"

#include <random>
#include <set>

#include "mpmc/address_map.hpp"
#include "mpmc/config_file.hpp"
#include "mpmc/config_regs.hpp"

using namespace mpmc;
using namespace mpmc::config;

namespace {

// CA recurrence stepped one grant at a time.
std::pair<std::uint64_t, WordAddress> scalar_grants(WordAddress sa, WordAddress ea,
                                                    std::uint32_t bc) {
  if (sa == ea) return {1, sa};
  std::uint64_t n = 0;
  WordAddress ca = sa;
  while (ca < ea) {
    ca += bc;
    ++n;
  }
  return {n, ca};
}

const char* kGood = R"(
[memory]
banks = 8
address_order = bank-row-col
timing = ddr3-sockit-300

[experiment]
policy = fcfs
cycles = 5000

[port.0]
sa_read = 0
ea_read = 1024
bc_read = 8
sa_write = 4096
ea_write = 8192
bc_write = 16
clock_mhz = 100
data_width_bits = 32

[port.1]
sa_read = 8388608
ea_read = 8389632
)";

}  // namespace

TEST_CASE("load_config resets CA to SA") {
  RegisterFile rf(2, 1ULL << 26);
  rf.load_config(0, Direction::Read, 0, 1024, 8);
  CHECK(rf.regs(0, Direction::Read).ca == 0);
  CHECK(rf.has_pending(0, Direction::Read));
  CHECK_FALSE(rf.has_pending(0, Direction::Write));
  CHECK_THROWS_AS(rf.load_config(0, Direction::Read, 0, 1024, 65), ConfigError);
  CHECK_THROWS_AS(rf.load_config(0, Direction::Read, 0, 1024, 0), ConfigError);
  CHECK_THROWS_AS(rf.load_config(0, Direction::Read, 10, 5, 4), ConfigError);
  CHECK_THROWS_AS(rf.load_config(2, Direction::Read, 0, 8, 4), ConfigError);
  CHECK_THROWS_AS(rf.load_config(0, Direction::Read, (1ULL << 26) - 4, 1ULL << 26, 8),
                  ConfigError);
  CHECK_THROWS_AS(RegisterFile(33, 1024), ConfigError);
  CHECK_THROWS_AS(RegisterFile(0, 1024), ConfigError);
}

TEST_CASE("advance_ca follows the recurrence") {
  RegisterFile rf(1, 1ULL << 20);
  rf.load_config(0, Direction::Write, 0, 32, 16);
  auto a = rf.advance_ca(0, Direction::Write);
  CHECK(a.new_ca == 16);
  CHECK_FALSE(a.finished);
  a = rf.advance_ca(0, Direction::Write);
  CHECK(a.new_ca == 32);
  CHECK(a.finished);
  CHECK_FALSE(rf.has_pending(0, Direction::Write));

  rf.load_config(0, Direction::Read, 100, 100, 4);
  CHECK(rf.has_pending(0, Direction::Read));
  a = rf.advance_ca(0, Direction::Read);
  CHECK(a.finished);
  CHECK(a.new_ca == 100);

  RegisterFile fresh(1, 1024);
  CHECK_THROWS_AS(fresh.advance_ca(0, Direction::Read), SimulationError);
}

TEST_CASE("grant count and final CA match the scalar loop") {
  std::mt19937_64 rng(12345);
  RegisterFile rf(1, 1ULL << 40);
  for (int i = 0; i < 2000; ++i) {
    const WordAddress sa = rng() % 100000;
    const WordAddress ea = sa + rng() % 5000;
    const auto bc = static_cast<std::uint32_t>(1 + rng() % 64);
    const auto [n, ca] = scalar_grants(sa, ea, bc);
    CHECK(grants_for(sa, ea, bc) == n);
    rf.load_config(0, Direction::Read, sa, ea, bc);
    std::uint64_t grants = 0;
    WordAddress prev = sa;
    for (bool done = false; !done;) {
      const auto r = rf.advance_ca(0, Direction::Read);
      ++grants;
      if (sa != ea) CHECK(r.new_ca == prev + bc);
      prev = r.new_ca;
      done = r.finished;
    }
    CHECK(grants == n);
    CHECK(prev == ca);
  }
}

TEST_CASE("address map") {
  const Geometry g;
  const auto m = AddressMap::for_geometry(g, kBankRowCol);
  CHECK(m.col_bits() == 8);
  CHECK(m.bank_bits() == 3);
  CHECK(m.row_bits() == 15);
  CHECK(m.capacity_words() == g.capacity_words());
  CHECK(m.decode(0) == DecodedAddress{0, 0, 0});
  for (std::uint32_t b = 0; b < 4; ++b)
    CHECK(m.decode(WordAddress{b} << (m.row_bits() + m.col_bits())).bank == b);

  const auto rbc = AddressMap::for_geometry(g, kRowBankCol);
  CHECK(rbc.decode(256).bank == 1);
  CHECK(rbc.decode(256 * 8).row == 1);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 100000; ++i) {
    const WordAddress a = rng() % m.capacity_words();
    CHECK(m.encode(m.decode(a)) == a);
    CHECK(rbc.encode(rbc.decode(a)) == a);
  }
}

TEST_CASE("order names") {
  CHECK(parse_order("bank-row-col") == kBankRowCol);
  CHECK(parse_order("row-bank-col") == kRowBankCol);
  CHECK(order_name(kRowBankCol) == "row-bank-col");
  CHECK_THROWS_AS(parse_order("bank-row"), ConfigError);
  CHECK_THROWS_AS(parse_order("bank-row-row"), ConfigError);
  CHECK_THROWS_AS(parse_order("bank-row-col-col"), ConfigError);
}

TEST_CASE("transaction expansion") {
  const Geometry g;
  const auto m = AddressMap::for_geometry(g, kBankRowCol);

  auto spans = expand_transaction(m, g, 0, 4);
  REQUIRE(spans.size() == 2);
  CHECK(spans[0] == ColumnSpan{0, 0, 0, 8, 0});
  CHECK(spans[1] == ColumnSpan{0, 0, 8, 8, 2});

  // odd start word: a chopped burst first
  spans = expand_transaction(m, g, 1, 2);
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].beat_count == 4);
  CHECK(spans[0].col_start == 4);
  CHECK(spans[1].col_start == 8);

  // straddling a row boundary
  const WordAddress start = g.words_per_row() - 3;
  spans = expand_transaction(m, g, start, 8);
  std::set<std::pair<std::uint32_t, std::uint32_t>> rows;
  std::uint32_t beats = 0;
  for (const auto& s : spans) {
    rows.emplace(s.bank, s.row);
    beats += s.beat_count;
    CHECK(s.beat_count <= g.burst_length);
    CHECK(s.col_start + s.beat_count <= g.columns);
  }
  CHECK(rows.size() == 2);
  CHECK(beats == 8 * g.beats_per_word());
}

TEST_CASE("expansion covers every word once for random regions") {
  const Geometry g;
  for (auto order : {kBankRowCol, kRowBankCol}) {
    const auto m = AddressMap::for_geometry(g, order);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
      const WordAddress start = rng() % (m.capacity_words() - 64);
      const auto n = static_cast<std::uint32_t>(1 + rng() % 64);
      std::uint32_t next = 0;
      for (const auto& s : expand_transaction(m, g, start, n)) {
        CHECK(s.first_word == next);
        const auto d = m.decode(start + s.first_word);
        CHECK(d.bank == s.bank);
        CHECK(d.row == s.row);
        CHECK(d.col * g.beats_per_word() == s.col_start);
        next += s.beat_count / g.beats_per_word();
      }
      CHECK(next == n);
    }
  }
}

TEST_CASE("config file parsing") {
  const auto f = parse_config_text(kGood);
  CHECK(f.memory.geometry.banks == 8);
  CHECK(f.experiment.policy == "fcfs");
  CHECK(f.experiment.cycles == 5000);
  REQUIRE(f.ports.size() == 2);
  CHECK(f.ports[0].bc_write == 16);
  CHECK(f.ports[0].clock_mhz == doctest::Approx(100));
  CHECK(f.ports[1].sa_read == 8388608);
  CHECK_NOTHROW(validate(f));
}

TEST_CASE("config file errors") {
  CHECK_THROWS_AS(parse_config_text("[memory]\nbanks = 8\nfoo = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[nonsense]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[port.0]\nbc_read = many\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[memory\n"), ConfigError);

  auto f = parse_config_text("[port.0]\nea_read = 64\nbc_read = 65\n");
  CHECK_THROWS_AS(validate(f), ConfigError);
  f = parse_config_text("[port.1]\nea_read = 64\n");
  CHECK_THROWS_AS(validate(f), ConfigError);
  f = parse_config_text("[port.0]\ndata_width_bits = 24\n");
  CHECK_THROWS_AS(validate(f), ConfigError);
  f = parse_config_text("[experiment]\npolicy = lifo\n[port.0]\n");
  CHECK_THROWS_AS(validate(f), ConfigError);
  f = parse_config_text("[port.0]\nsa_read = 70\nea_read = 64\n");
  CHECK_THROWS_AS(validate(f), ConfigError);

  CHECK(is_valid_port_width(8));
  CHECK(is_valid_port_width(128));
  CHECK_FALSE(is_valid_port_width(24));
  CHECK_FALSE(is_valid_port_width(256));
  CHECK_THROWS_AS(load_config_file("/nonexistent/x.ini"), ConfigError);
}
