#include "doctest.h"

#include <random>
#include <string>

#include "mpmc/service_queue.hpp"

using namespace mpmc;
using namespace mpmc::arb;

namespace {

MemRequest req(std::uint32_t port, Direction d) {
  static std::uint64_t id = 0;
  return MemRequest{id++, port, d, 0, 8, 0};
}

std::string drain(ServiceQueue& q) {
  std::string out;
  while (auto s = q.pop()) {
    out += s->request.direction == Direction::Read ? 'R' : 'W';
    out += static_cast<char>('0' + s->request.port);
  }
  return out;
}

}  // namespace

TEST_CASE("policy names") {
  CHECK(parse_policy("wfcfs") == Policy::WFCFS);
  CHECK(parse_policy("fcfs") == Policy::FCFS);
  CHECK(to_string(Policy::FCFS) == "fcfs");
  CHECK_THROWS_AS(parse_policy("rr"), ConfigError);
}

TEST_CASE("window example: R0 R2 R3 then W0..W3") {
  ServiceQueue q(Policy::WFCFS, 4);
  for (std::uint32_t p : {0U, 2U, 3U}) q.push(req(p, Direction::Read));
  for (std::uint32_t p = 0; p < 4; ++p) q.push(req(p, Direction::Write));
  CHECK(q.size(Direction::Read) == 3);
  CHECK(q.size(Direction::Write) == 4);
  CHECK(drain(q) == "R0R2R3W0W1W2W3");
  CHECK(q.direction_switches() == 1);
  CHECK(q.windows_opened() == 2);
}

TEST_CASE("a window is a snapshot; late arrivals wait for the next one") {
  ServiceQueue q(Policy::WFCFS, 4);
  q.push(req(0, Direction::Read));
  q.push(req(0, Direction::Write));
  auto s = q.pop();
  CHECK(s->request.direction == Direction::Read);
  q.push(req(1, Direction::Read));  // arrives during the read window
  CHECK(drain(q) == "W0R1");
  CHECK(q.direction_switches() == 2);
}

TEST_CASE("one direction streams without switches") {
  ServiceQueue q(Policy::WFCFS, 4);
  for (int round = 0; round < 5; ++round) {
    for (std::uint32_t p = 0; p < 4; ++p) q.push(req(p, Direction::Read));
    drain(q);
  }
  CHECK(q.direction_switches() == 0);
}

TEST_CASE("FCFS serves strictly by arrival") {
  ServiceQueue q(Policy::FCFS, 4);
  q.push(req(0, Direction::Read));
  q.push(req(0, Direction::Write));
  q.push(req(1, Direction::Read));
  q.push(req(1, Direction::Write));
  CHECK(drain(q) == "R0W0R1W1");
  CHECK(q.direction_switches() == 3);
  CHECK(q.windows_opened() == 4);
}

TEST_CASE("capacity per direction") {
  for (auto pol : {Policy::WFCFS, Policy::FCFS}) {
    ServiceQueue q(pol, 2);
    q.push(req(0, Direction::Read));
    q.push(req(1, Direction::Read));
    q.push(req(0, Direction::Write));
    CHECK_THROWS_AS(q.push(req(2, Direction::Read)), SimulationError);
    CHECK_FALSE(q.empty());
    drain(q);
    CHECK(q.empty());
    CHECK_FALSE(q.pop().has_value());
  }
}

TEST_CASE("windows never switch more often than FCFS on the same arrivals") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    ServiceQueue w(Policy::WFCFS, 8), f(Policy::FCFS, 8);
    std::uint64_t nonempty_windows = 0;
    for (int step = 0; step < 50; ++step) {
      // a poll pass: some ports ready in each direction
      for (auto d : {Direction::Read, Direction::Write}) {
        for (std::uint32_t p = 0; p < 8; ++p) {
          if (rng() % 3 || w.size(d) >= 8 || f.size(d) >= 8) continue;
          const auto r = req(p, d);
          w.push(r);
          f.push(r);
        }
      }
      // serve a random number of requests from each
      const auto k = rng() % 4;
      for (std::uint64_t i = 0; i < k; ++i) {
        w.pop();
        f.pop();
      }
    }
    drain(w);
    drain(f);
    nonempty_windows = w.windows_opened();
    CHECK(w.direction_switches() <= f.direction_switches());
    CHECK(w.direction_switches() <= nonempty_windows);
  }
}
