// Conformance suites.  Each suite is a list of independent checks run on a
// worker pool; reports are ordered by check id, so they depend only on the
// suite, the seed and the bounds.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "fincat/presentation.hpp"

namespace fincat {

  struct Bounds {
    int max_word_len = default_max_word_len;
    int max_stages   = default_max_stages;
  };

  enum class Verdict { Pass, Fail, Truncated };
  char const* to_string(Verdict v);

  struct SuiteCheck {
    std::string id;
    Verdict     verdict = Verdict::Fail;
    std::string detail;  // witness on failure, diagnostics on truncation
  };

  struct SuiteReport {
    std::string              suite;
    int                      criterion = 0;  // acceptance criterion, 0 for supporting suites
    std::uint64_t            seed      = 0;
    Bounds                   bounds;
    std::vector<std::string> operations;
    std::vector<SuiteCheck>  checks;
    double                   wall_seconds = 0;

    // Pass when every check passes, Fail when any fails, Truncated otherwise.
    Verdict     verdict() const;
    bool        ok() const {
      return verdict() == Verdict::Pass;
    }
    std::size_t count(Verdict v) const;
  };

  struct SuiteInfo {
    std::string              name;
    int                      criterion = 0;
    std::string              summary;
    std::vector<std::string> operations;
  };
  std::vector<SuiteInfo> const& suite_catalogue();

  // Throws precondition_error for an unknown suite.  threads == 0 uses the
  // hardware concurrency.
  SuiteReport run_suite(std::string const& name, std::uint64_t seed = 0, Bounds const& bounds = {},
                        unsigned threads = 0);

  // Every library operation a suite is expected to exercise.
  std::vector<std::string> const& operation_catalogue();
  // Catalogue entries cited by no suite.
  std::vector<std::string> uncovered_operations();

  // Wall time is left out so equal inputs give byte-identical output.
  nlohmann::json to_json(SuiteReport const& r);
  std::string    emit_json(SuiteReport const& r);
  std::string    emit_text(SuiteReport const& r);

}  // namespace fincat
