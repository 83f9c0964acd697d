// One line per acceptance criterion.  A criterion passes when every check of
// its suite passes within the time limit; a truncated check fails it, since
// every criterion asks for an exact answer.

#include <cstdio>
#include <map>

#include "fincat/harness.hpp"

using namespace fincat;

int main() {
  // seconds, where a criterion states a limit
  std::map<int, double> const limit{{1, 10}, {2, 60}, {3, 60}, {7, 300}};

  int failed = 0, total = 0;
  for (auto const& info : suite_catalogue()) {
    if (info.criterion == 0) {
      continue;
    }
    ++total;
    auto r  = run_suite(info.name, 0);
    bool ok = r.ok();

    std::string why;
    for (auto const& c : r.checks) {
      if (c.verdict != Verdict::Pass) {
        why = std::string(to_string(c.verdict)) + " " + c.id + (c.detail.empty() ? "" : ": " + c.detail);
        break;
      }
    }
    auto lim = limit.find(info.criterion);
    if (lim != limit.end() && r.wall_seconds >= lim->second) {
      ok = false;
      why += (why.empty() ? "" : "; ") + std::string("over the time limit");
    }
    failed += !ok;
    std::printf("criterion %2d %-24s %s  %zu/%zu checks pass, %.2f s%s%s\n", info.criterion, info.name.c_str(),
                ok ? "PASS" : "FAIL", r.count(Verdict::Pass), r.checks.size(), r.wall_seconds,
                why.empty() ? "" : "  -- ", why.c_str());
  }
  std::printf("%d of %d criteria pass\n", total - failed, total);
  return failed == 0 ? 0 : 1;
}
