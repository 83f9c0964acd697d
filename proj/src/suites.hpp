// Internal: suite registration shared by the suite sources.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "fincat/harness.hpp"

namespace fincat::suites {

  struct Outcome {
    Verdict     verdict = Verdict::Pass;
    std::string detail;
  };
  Outcome pass(std::string detail = {});
  Outcome fail(std::string detail);
  Outcome truncated(std::string detail);

  struct Check {
    std::string              id;
    std::function<Outcome()> run;
  };

  struct Suite {
    SuiteInfo                                                     info;
    std::function<std::vector<Check>(std::uint64_t, Bounds const&)> checks;
  };

  // Independent stream per (suite seed, tag, instance, attempt).
  std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, int k, int attempt = 0);
  // Zero-padded so that check ids sort numerically.
  std::string numbered(std::string const& prefix, int k, int width = 3);

  std::vector<Suite> core_suites();
  std::vector<Suite> localisation_suites();
  std::vector<Suite> descent_suites();
  std::vector<Suite> universe_suites();
  std::vector<Suite> support_suites();

}  // namespace fincat::suites
