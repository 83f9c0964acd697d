#include "fincat/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>
#include <sstream>
#include <thread>

#include "fincat/cat_core.hpp"
#include "suites.hpp"

namespace fincat {

  char const* to_string(Verdict v) {
    switch (v) {
      case Verdict::Pass: return "pass";
      case Verdict::Fail: return "fail";
      case Verdict::Truncated: return "truncated";
    }
    return "?";
  }

  Verdict SuiteReport::verdict() const {
    if (count(Verdict::Fail) > 0) {
      return Verdict::Fail;
    }
    return count(Verdict::Truncated) > 0 ? Verdict::Truncated : Verdict::Pass;
  }

  std::size_t SuiteReport::count(Verdict v) const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [&](SuiteCheck const& c) { return c.verdict == v; }));
  }

  namespace suites {

    Outcome pass(std::string detail) {
      return {Verdict::Pass, std::move(detail)};
    }
    Outcome fail(std::string detail) {
      return {Verdict::Fail, std::move(detail)};
    }
    Outcome truncated(std::string detail) {
      return {Verdict::Truncated, std::move(detail)};
    }

    std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, int k, int attempt) {
      // FNV-1a over the tag, then splitmix64 rounds; both are fixed across platforms
      std::uint64_t h = 1469598103934665603ull;
      for (unsigned char c : tag) {
        h = (h ^ c) * 1099511628211ull;
      }
      auto mix = [](std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
      };
      return mix(mix(mix(seed ^ h) + static_cast<std::uint64_t>(k)) + static_cast<std::uint64_t>(attempt));
    }

    std::string numbered(std::string const& prefix, int k, int width) {
      std::string n = std::to_string(k);
      return prefix + std::string(n.size() < static_cast<std::size_t>(width) ? width - n.size() : 0, '0') + n;
    }

    namespace {
      std::vector<Suite> const& registry() {
        static std::vector<Suite> const all = [] {
          std::vector<Suite> v;
          for (auto part : {core_suites(), localisation_suites(), descent_suites(), universe_suites(),
                            support_suites()}) {
            v.insert(v.end(), part.begin(), part.end());
          }
          std::sort(v.begin(), v.end(), [](Suite const& a, Suite const& b) {
            int ca = a.info.criterion ? a.info.criterion : 1000;
            int cb = b.info.criterion ? b.info.criterion : 1000;
            return ca != cb ? ca < cb : a.info.name < b.info.name;
          });
          return v;
        }();
        return all;
      }
    }  // namespace

  }  // namespace suites

  std::vector<SuiteInfo> const& suite_catalogue() {
    static std::vector<SuiteInfo> const infos = [] {
      std::vector<SuiteInfo> v;
      for (auto const& s : suites::registry()) {
        v.push_back(s.info);
      }
      return v;
    }();
    return infos;
  }

  SuiteReport run_suite(std::string const& name, std::uint64_t seed, Bounds const& bounds,
                        unsigned threads) {
    auto const& reg = suites::registry();
    auto it = std::find_if(reg.begin(), reg.end(), [&](suites::Suite const& s) { return s.info.name == name; });
    if (it == reg.end()) {
      throw precondition_error("unknown suite " + name);
    }
    auto start = std::chrono::steady_clock::now();
    SuiteReport R;
    R.suite      = name;
    R.criterion  = it->info.criterion;
    R.seed       = seed;
    R.bounds     = bounds;
    R.operations = it->info.operations;

    auto checks = it->checks(seed, bounds);
    R.checks.resize(checks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < checks.size();) {
        auto& out = R.checks[i];
        out.id    = checks[i].id;
        try {
          auto o      = checks[i].run();
          out.verdict = o.verdict;
          out.detail  = std::move(o.detail);
        } catch (size_error const& e) {
          out.verdict = Verdict::Truncated;
          out.detail  = e.what();
        } catch (std::exception const& e) {
          out.verdict = Verdict::Fail;
          out.detail  = std::string("exception: ") + e.what();
        }
      }
    };
    unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    n          = static_cast<unsigned>(std::min<std::size_t>(n, checks.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) {
      pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
      t.join();
    }
    std::stable_sort(R.checks.begin(), R.checks.end(),
                     [](SuiteCheck const& a, SuiteCheck const& b) { return a.id < b.id; });
    R.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return R;
  }

  std::vector<std::string> const& operation_catalogue() {
    static std::vector<std::string> const ops{
        // categories
        "check_fincat", "functor_category", "comma", "product", "coproduct", "pullback", "core",
        "full_subcategory", "wide_subcategory", "is_fully_faithful", "is_surjective_on_isoclasses",
        "is_equivalence", "pi0", "localisation_preserves_pullback_check",
        // presentations
        "saturate", "pushout", "cocomma", "localize", "sequential_colimit",
        // presheaves
        "restrict", "lan", "presheaf_pushout", "presheaf_seq_colimit", "arrow_left_adjoint", "kelly_S",
        "kelly_S_infty", "localisation_homs_via_S", "gl_is_cartesian", "check_good", "check_nice",
        "big_list_property_suite",
        // fibrations
        "is_left_fibration", "is_right_fibration", "is_left_cofinal", "cofinal_factorization",
        "cocartesian_arrows", "is_cocartesian_fibration", "transport", "unstraighten",
        "straighten_finite", "is_conduche", "inverts_W", "conduche_inverts_W",
        "invertible_transport_check", "localize_fibration", "mapping_square_a", "mapping_square_b",
        "descent_localisation_check", "cocomma_fibration", "sequential_descent_glue", "groupoid_descent",
        // joins and universes
        "directed_join", "join_tower", "fun_cocart", "virtual_join", "is_directed_univalent",
        "univalent_completion", "straighten_against", "straightening_uniqueness_check",
        // workspace
        "parse", "emit_json", "emit_dot", "generate", "run_suite"};
    return ops;
  }

  std::vector<std::string> uncovered_operations() {
    std::set<std::string> cited;
    for (auto const& s : suite_catalogue()) {
      cited.insert(s.operations.begin(), s.operations.end());
    }
    std::vector<std::string> out;
    for (auto const& op : operation_catalogue()) {
      if (!cited.count(op)) {
        out.push_back(op);
      }
    }
    return out;
  }

  nlohmann::json to_json(SuiteReport const& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (auto const& c : r.checks) {
      nlohmann::json j{{"id", c.id}, {"verdict", to_string(c.verdict)}};
      if (!c.detail.empty()) {
        j[c.verdict == Verdict::Fail ? "witness" : c.verdict == Verdict::Truncated ? "diagnostics" : "detail"] =
            c.detail;
      }
      checks.push_back(std::move(j));
    }
    return {{"suite", r.suite},
            {"criterion", r.criterion},
            {"seed", r.seed},
            {"bounds", {{"max_word_len", r.bounds.max_word_len}, {"max_stages", r.bounds.max_stages}}},
            {"operations", r.operations},
            {"verdict", to_string(r.verdict())},
            {"counts",
             {{"pass", r.count(Verdict::Pass)},
              {"fail", r.count(Verdict::Fail)},
              {"truncated", r.count(Verdict::Truncated)}}},
            {"checks", checks}};
  }

  std::string emit_json(SuiteReport const& r) {
    return to_json(r).dump(2) + '\n';
  }

  std::string emit_text(SuiteReport const& r) {
    std::ostringstream o;
    o << "suite " << r.suite << " seed " << r.seed << " max-word-len " << r.bounds.max_word_len
      << " max-stages " << r.bounds.max_stages << '\n';
    for (auto const& c : r.checks) {
      o << "  " << to_string(c.verdict) << "  " << c.id;
      if (!c.detail.empty()) {
        o << "  " << c.detail;
      }
      o << '\n';
    }
    o << r.suite << ": " << to_string(r.verdict()) << " (" << r.count(Verdict::Pass) << " pass, "
      << r.count(Verdict::Fail) << " fail, " << r.count(Verdict::Truncated) << " truncated)\n";
    return o.str();
  }

}  // namespace fincat
