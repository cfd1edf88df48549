// Acceptance run: criteria 1-10 with wall-clock limits, then 11 (repeat and
// thread-count byte identity of the report bundle).
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracwave/parallel.hpp"
#include "fracwave/random.hpp"
#include "fracwave_harness/suite.hpp"

using namespace fracwave;
using namespace fracwave::harness;

namespace {

struct Line {
  int id;
  std::string title;
  bool passed;
  std::string detail;
  double seconds;
};

SuiteResult timed_run(std::uint64_t seed, int threads, std::vector<Line>* lines) {
  set_thread_count(threads);
  return run_verify_all(seed, [&](const CriterionOutcome& o, double secs) {
    if (lines) lines->push_back({o.id, o.title, o.passed, o.detail, secs});
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracwave acceptance"};
  std::uint64_t seed = CounterRng::kDefaultSeed;
  int threads = 8;
  std::vector<int> expect_fail;
  app.add_option("--seed", seed);
  app.add_option("--threads", threads)->check(CLI::PositiveNumber);
  app.add_option("--expect-fail", expect_fail, "criteria known to fail; exit 0 iff failures match exactly");
  CLI11_PARSE(app, argc, argv);

  std::vector<Line> lines;
  const auto first = timed_run(seed, threads, &lines);
  const auto limits = criteria();
  for (auto& l : lines) {
    for (const auto& c : limits) {
      if (c.id == l.id && c.runtime_limit > 0.0 && l.seconds > c.runtime_limit) {
        l.passed = false;
        l.detail += "; runtime " + std::to_string(l.seconds) + " s over limit";
      }
    }
  }

  const auto repeat = timed_run(seed, threads, nullptr);
  const auto single = timed_run(seed, 1, nullptr);
  const std::string bytes = first.bundle.serialize();
  const bool same_repeat = bytes == repeat.bundle.serialize();
  const bool same_threads = bytes == single.bundle.serialize();
  lines.push_back({11, "determinism", same_repeat && same_threads,
                   std::string("repeat identical: ") + (same_repeat ? "yes" : "no") + ", threads " +
                       std::to_string(threads) + " vs 1 identical: " + (same_threads ? "yes" : "no") + " (" +
                       std::to_string(bytes.size()) + " bytes)",
                   0.0});

  std::set<int> failed;
  for (const auto& l : lines) {
    std::printf("%-4s criterion %2d  %-42s %s\n", l.passed ? "PASS" : "FAIL", l.id, l.title.c_str(),
                l.detail.c_str());
    if (!l.passed) failed.insert(l.id);
  }
  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  std::printf("%zu of %zu criteria passed\n", lines.size() - failed.size(), lines.size());
  if (!expected.empty()) {
    std::printf("expected failures:");
    for (int id : expected) std::printf(" %d", id);
    std::printf(" (%s)\n", failed == expected ? "matched" : "MISMATCH");
  }
  return failed == expected ? 0 : 1;
}
