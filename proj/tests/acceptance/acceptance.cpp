// Acceptance run: one PASS/FAIL line per criterion. `--only N` runs a single one.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fifo_reference.hpp"
#include "mpmc/config_regs.hpp"
#include "mpmc/csv.hpp"
#include "mpmc/experiments.hpp"
#include "protocol_oracle.hpp"

using namespace mpmc;
using namespace mpmc::harness;

namespace {

// measurement windows, in controller cycles
constexpr std::uint64_t kWindow = 1'000'000;
constexpr std::uint64_t kLogWindow = 100'000;  // command logs replayed through the oracle

// criterion 1
constexpr double kPeakLo = 90.0, kPeakHi = 96.0;
// criterion 3
constexpr double kInterleaveGapAtBc4 = 5.0;
// criterion 4
constexpr double kPolicyGapBc4Lo = 10.0, kPolicyGapBc4Hi = 25.0;
constexpr double kPolicyGapBc64Lo = 2.0, kPolicyGapBc64Hi = 10.0;
constexpr double kCombinedMin = 10.0;
// criterion 5
constexpr double kRwDiffLo = 1.0, kRwDiffHi = 6.0;
constexpr double kReadLo = 92.0, kReadHi = 97.0;
constexpr double kWriteLo = 89.0, kWriteHi = 95.0;
// criterion 7
constexpr std::uint64_t kSoakWords = 10'000'000;
// criterion 8
constexpr std::uint32_t kEnumDepth = 4;
constexpr std::uint32_t kEnumLength = 12;
// criterion 9
constexpr int kEqTriples = 10'000;

const std::vector<std::uint32_t> kGridN{2, 4, 8, 16, 32};
const std::vector<std::uint32_t> kGridBc{4, 8, 16, 32, 64};

struct Outcome {
  bool pass = false;
  std::string detail;
};

unsigned jobs() { return std::max(1U, std::thread::hardware_concurrency()); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

ExperimentSpec experiment(ExperimentKind kind, std::vector<std::uint32_t> ports,
                          std::vector<std::uint32_t> bcs, std::uint64_t cycles = kWindow) {
  ExperimentSpec s;
  s.kind = kind;
  s.ports = std::move(ports);
  s.burst_counts = std::move(bcs);
  s.cycles = cycles;
  return s;
}

// EFF keyed by (N, BC, pattern name)
using EffTable = std::map<std::tuple<std::uint32_t, std::uint32_t, std::string>, double>;

EffTable table(const std::vector<PointResult>& results) {
  EffTable t;
  for (const auto& r : results) {
    const auto& rep = r.result.report;
    t[{rep.n, rep.bc, rep.name}] = rep.aggregate.eff_percent;
  }
  return t;
}

const std::vector<PointResult>& peak_grid() {
  static const auto results =
      run_experiment(experiment(ExperimentKind::Peak, kGridN, kGridBc), jobs());
  return results;
}

const EffTable& n4_table(ExperimentKind kind, std::optional<arb::Policy> policy = {}) {
  static std::map<std::pair<int, int>, EffTable> cache;
  const std::pair<int, int> key{static_cast<int>(kind), policy ? static_cast<int>(*policy) : -1};
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto s = experiment(kind, {4}, kGridBc);
    s.policy = policy;
    it = cache.emplace(key, table(run_experiment(s, jobs()))).first;
  }
  return it->second;
}

double eff4(ExperimentKind kind, std::uint32_t bc, std::optional<arb::Policy> policy = {}) {
  return n4_table(kind, policy).at({4, bc, "duplex"});
}

Outcome peak_efficiency() {
  const auto r = run_experiment(experiment(ExperimentKind::Peak, {32}, {64}), 1);
  const double e = r.at(0).result.report.aggregate.eff_percent;
  return {e >= kPeakLo && e <= kPeakHi,
          "EFF " + fmt(e) + " in [" + fmt(kPeakLo) + ", " + fmt(kPeakHi) + "]"};
}

Outcome monotonicity() {
  const auto t = table(peak_grid());
  std::string bad;
  for (std::size_t i = 0; i < kGridN.size(); ++i)
    for (std::size_t j = 0; j < kGridBc.size(); ++j) {
      const double e = t.at({kGridN[i], kGridBc[j], "duplex"});
      if (j + 1 < kGridBc.size() && t.at({kGridN[i], kGridBc[j + 1], "duplex"}) < e)
        bad += " N=" + std::to_string(kGridN[i]) + " BC " + std::to_string(kGridBc[j]) + "->" +
               std::to_string(kGridBc[j + 1]);
      if (i + 1 < kGridN.size() && t.at({kGridN[i + 1], kGridBc[j], "duplex"}) < e)
        bad += " BC=" + std::to_string(kGridBc[j]) + " N " + std::to_string(kGridN[i]) + "->" +
               std::to_string(kGridN[i + 1]);
    }
  return {bad.empty(), bad.empty() ? "25 points non-decreasing in N and BC" : "decreases:" + bad};
}

Outcome bank_interleaving() {
  std::string detail, bad;
  for (auto bc : kGridBc) {
    const double a = eff4(ExperimentKind::ExpA, bc);
    const double b = eff4(ExperimentKind::ExpB, bc);
    const double c = eff4(ExperimentKind::ExpC, bc);
    detail += " BC=" + std::to_string(bc) + " " + fmt(a) + "/" + fmt(b) + "/" + fmt(c);
    if (!(c >= b && b >= a)) bad += " order@BC=" + std::to_string(bc);
  }
  const double gap = eff4(ExperimentKind::ExpC, 4) - eff4(ExperimentKind::ExpA, 4);
  if (gap < kInterleaveGapAtBc4) bad += " C-A@BC=4 " + fmt(gap);
  return {bad.empty(), "A/B/C" + detail + "; C-A@4 " + fmt(gap) + (bad.empty() ? "" : ";" + bad)};
}

Outcome policy_gap() {
  std::string detail, bad;
  double prev = 1e9;
  for (auto bc : kGridBc) {
    const double g = eff4(ExperimentKind::ExpC, bc) - eff4(ExperimentKind::ExpD, bc);
    detail += " " + std::to_string(bc) + ":" + fmt(g);
    if (g > prev) bad += " rises@BC=" + std::to_string(bc);
    prev = g;
  }
  const double g4 = eff4(ExperimentKind::ExpC, 4) - eff4(ExperimentKind::ExpD, 4);
  const double g64 = eff4(ExperimentKind::ExpC, 64) - eff4(ExperimentKind::ExpD, 64);
  if (g4 < kPolicyGapBc4Lo || g4 > kPolicyGapBc4Hi) bad += " BC=4 outside band";
  if (g64 < kPolicyGapBc64Lo || g64 > kPolicyGapBc64Hi) bad += " BC=64 outside band";
  // neither technique: every port in one bank, served FCFS
  const double combined =
      eff4(ExperimentKind::ExpC, 4) - eff4(ExperimentKind::ExpA, 4, arb::Policy::FCFS);
  if (combined < kCombinedMin) bad += " combined " + fmt(combined);
  return {bad.empty(), "C-D by BC" + detail + "; combined@4 " + fmt(combined) +
                           (bad.empty() ? "" : ";" + bad)};
}

Outcome read_write() {
  const auto r = run_experiment(experiment(ExperimentKind::Rw, {32}, {64}), jobs());
  const auto t = table(r);
  const double rd = t.at({32, 64, "read"});
  const double wr = t.at({32, 64, "write"});
  const double d = rd - wr;
  const bool ok = d >= kRwDiffLo && d <= kRwDiffHi && rd >= kReadLo && rd <= kReadHi &&
                  wr >= kWriteLo && wr <= kWriteHi;
  return {ok, "read " + fmt(rd) + " write " + fmt(wr) + " diff " + fmt(d)};
}

Outcome protocol_legality() {
  const std::vector<std::pair<ExperimentKind, std::vector<std::uint32_t>>> runs{
      {ExperimentKind::ExpA, {4}}, {ExperimentKind::ExpB, {4}}, {ExperimentKind::ExpC, {4}},
      {ExperimentKind::ExpD, {4}}, {ExperimentKind::Peak, kGridN}, {ExperimentKind::Rw, {2, 4, 8}}};
  std::uint64_t logs = 0, commands = 0;
  std::string bad;
  for (const auto& [kind, ns] : runs) {
    const auto res = run_experiment(experiment(kind, ns, kGridBc, kLogWindow), jobs(), true);
    for (const auto& r : res) {
      const auto trace = testing::parse_trace(r.command_log);
      const auto& rep = r.result.report;
      const auto findings =
          testing::check_trace(trace, dram::TimingParams{}, config::Geometry{});
      ++logs;
      commands += trace.size();
      if (!findings.empty() && bad.size() < 400)
        bad += " " + rep.experiment + "/" + rep.name + " N=" + std::to_string(rep.n) + " BC=" +
               std::to_string(rep.bc) + ": " + findings.front().rule + " at " +
               findings.front().command + ";";
    }
  }
  return {bad.empty(), std::to_string(logs) + " logs, " + std::to_string(commands) + " commands" +
                           (bad.empty() ? ", no violations" : bad)};
}

Outcome data_integrity() {
  const auto r = run_simulation(soak_spec(1, kSoakWords));
  const bool ok = r.completed && r.mods.words_verified >= kSoakWords && r.mods.mismatches == 0 &&
                  r.rejected_pushes == 0 && r.mods.words_verified == r.mods.words_received;
  return {ok, std::to_string(r.mods.words_verified) + " words verified, " +
                  std::to_string(r.mods.mismatches) + " mismatches, " +
                  std::to_string(r.rejected_pushes) + " rejected pushes"};
}

Outcome fifo_enumeration() {
  // write:read clock ratios 1:1, 2:3 and 1:4, both ways round, two read phases
  const std::vector<std::pair<Tick, Tick>> periods{{12, 12}, {6, 4}, {4, 6}, {12, 3}, {3, 12}};
  std::uint64_t sequences = 0, steps = 0, mismatches = 0;
  std::string first;
  for (const auto& [wp, rp] : periods)
    for (Tick phase : {Tick{0}, rp / 2}) {
      const auto r = testing::enumerate_fifo(kEnumDepth, wp, rp, phase, kEnumLength);
      sequences += r.sequences;
      steps += r.steps;
      mismatches += r.mismatches;
      if (first.empty()) first = r.first_mismatch;
    }
  const std::uint64_t expected = periods.size() * 2 * (1ULL << kEnumLength);
  return {mismatches == 0 && sequences == expected,
          std::to_string(sequences) + " sequences, " + std::to_string(steps) + " steps, " +
              std::to_string(mismatches) + " mismatches" + (first.empty() ? "" : ": " + first)};
}

Outcome address_recurrence() {
  std::mt19937_64 rng(2024);
  config::RegisterFile rf(1, 1ULL << 40);
  int bad = 0;
  for (int i = 0; i < kEqTriples; ++i) {
    const WordAddress sa = rng() % (1ULL << 30);
    const WordAddress ea = sa + (rng() % 8 == 0 ? 0 : rng() % 100'000);
    const auto bc = static_cast<std::uint32_t>(1 + rng() % kMaxBurstCount);
    // CA <- CA + BC until CA reaches EA; one grant when the region is empty
    std::uint64_t want_n = 0;
    WordAddress want_ca = sa;
    do {
      if (want_ca < ea) want_ca += bc;
      ++want_n;
    } while (want_ca < ea);

    rf.load_config(0, Direction::Write, sa, ea, bc);
    std::uint64_t n = 0;
    WordAddress ca = sa;
    for (bool done = false; !done; ++n) {
      const auto r = rf.advance_ca(0, Direction::Write);
      ca = r.new_ca;
      done = r.finished;
    }
    if (n != want_n || ca != want_ca || config::grants_for(sa, ea, bc) != want_n) ++bad;
  }
  return {bad == 0, std::to_string(kEqTriples) + " triples, " + std::to_string(bad) + " disagree"};
}

Outcome fairness() {
  std::string bad;
  std::uint64_t checked = 0;
  for (const auto& r : peak_grid()) {
    const auto& rep = r.result.report;
    if (rep.n != 4 && rep.n != 32) continue;
    for (int d = 0; d < 2; ++d) {
      std::uint64_t lo = ~0ULL, hi = 0;
      for (const auto& p : rep.ports) {
        lo = std::min(lo, p.completed_by_direction[d]);
        hi = std::max(hi, p.completed_by_direction[d]);
      }
      ++checked;
      if (hi - lo > rep.bc)
        bad += " N=" + std::to_string(rep.n) + " BC=" + std::to_string(rep.bc) +
               (d == 0 ? " read" : " write") + " spread " + std::to_string(hi - lo) + ";";
    }
  }
  return {bad.empty(), std::to_string(checked) + " (point, direction) pairs" +
                           (bad.empty() ? " within one transaction" : ":" + bad)};
}

Outcome determinism() {
  auto once = [](unsigned threads) {
    const auto spec = experiment(ExperimentKind::ExpD, {4, 8}, {4, 64}, 50'000);
    const auto res = run_experiment(spec, threads, true);
    std::vector<EffReport> reports;
    std::string logs;
    for (const auto& r : res) {
      reports.push_back(r.result.report);
      logs += r.command_log + r.arbitration_log + std::to_string(r.result.dispatch_digest);
    }
    std::ostringstream csv;
    write_csv(csv, to_rows(reports));
    return std::pair{csv.str(), logs};
  };
  const auto a = once(1);
  const auto b = once(1);
  const auto c = once(std::max(2U, jobs()));
  const bool ok = a == b && a == c && !a.second.empty();
  return {ok, "csv " + std::to_string(a.first.size()) + " B, logs " +
                  std::to_string(a.second.size()) + " B, " + (ok ? "identical" : "differ")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mpmc acceptance criteria"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"peak efficiency", peak_efficiency},
      {"monotonicity", monotonicity},
      {"bank interleaving ordering", bank_interleaving},
      {"WFCFS vs FCFS gap", policy_gap},
      {"read/write asymmetry", read_write},
      {"protocol legality", protocol_legality},
      {"data integrity", data_integrity},
      {"DCDWFF reference equivalence", fifo_enumeration},
      {"CA recurrence", address_recurrence},
      {"fairness", fairness},
      {"determinism", determinism},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
