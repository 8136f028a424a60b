#include "fifo_reference.hpp"

#include <utility>

#include "mpmc/dcdwff.hpp"

namespace mpmc::testing {

EnumerationResult enumerate_fifo(std::uint32_t depth, Tick write_period, Tick read_period,
                                 Tick read_phase, std::uint32_t length, std::uint32_t stages) {
  // merged edge list; the writer goes first on a tie
  std::vector<std::pair<Tick, bool>> edges;  // (tick, is_write)
  for (std::uint64_t w = 0, r = 0; edges.size() < length;) {
    const Tick tw = w * write_period;
    const Tick tr = read_phase + r * read_period;
    if (tw <= tr) {
      edges.emplace_back(tw, true);
      ++w;
    } else {
      edges.emplace_back(tr, false);
      ++r;
    }
  }

  fifo::FifoConfig cfg;
  cfg.depth = depth;
  cfg.write_domain = sim::ClockDomain{2, write_period, 0};
  cfg.read_domain = sim::ClockDomain{3, read_period, read_phase};
  cfg.sync_stages = stages;

  EnumerationResult res;
  for (std::uint64_t mask = 0; mask < (1ULL << length); ++mask) {
    fifo::Dcdwff dut(cfg);
    ReferenceFifo ref(depth, write_period, read_period, stages);
    ++res.sequences;
    for (std::uint32_t k = 0; k < length; ++k) {
      const auto [now, is_write] = edges[k];
      const bool act = (mask >> k) & 1U;
      std::string diff;
      if (act && is_write) {
        const Word w{k + 1, mask};
        if (dut.push(w, now) != ref.push(w, now)) diff = "push acceptance";
      } else if (act) {
        if (dut.pop(now) != ref.pop(now)) diff = "popped value";
      }
      ++res.steps;
      const std::uint32_t wrap = 2 * depth;
      if (diff.empty() && dut.true_occupancy() != ref.occupancy()) diff = "occupancy";
      if (diff.empty() && dut.wr_ptr() != ref.pushes() % wrap) diff = "write pointer";
      if (diff.empty() && dut.rd_ptr() != ref.pops() % wrap) diff = "read pointer";
      if (diff.empty() && dut.observed_occupancy(fifo::Side::Writer, now) != ref.writer_view(now))
        diff = "writer view";
      if (diff.empty() && dut.observed_occupancy(fifo::Side::Reader, now) != ref.reader_view(now))
        diff = "reader view";
      if (!diff.empty()) {
        if (res.mismatches++ == 0)
          res.first_mismatch = diff + " at edge " + std::to_string(k) + " of sequence " +
                               std::to_string(mask);
        break;
      }
    }
  }
  return res;
}

}  // namespace mpmc::testing
