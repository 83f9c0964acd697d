#include <optional>

#include "fincat/generate.hpp"
#include "fincat/join.hpp"
#include "suites.hpp"

namespace fincat::suites {

  namespace {

    MarkedFibration over_point(Cat const& F) {
      return unstraighten(constant_pseudofunctor(terminal(), F));
    }

    MarkedFibration over_discrete(std::vector<Cat> const& fibres) {
      Cat                  D = discrete(static_cast<int>(fibres.size()));
      std::vector<Functor> act;
      for (auto const& F : fibres) {
        act.push_back(identity_functor(F));
      }
      return unstraighten(strict_pseudofunctor(D, fibres, act));
    }

    std::string growth_of(std::vector<std::size_t> const& g) {
      std::string s;
      for (auto n : g) {
        s += (s.empty() ? "" : ",") + std::to_string(n);
      }
      return "[" + s + "]";
    }

    Suite join_tower_suite() {
      Suite s;
      s.info = {"join-tower", 11, "the join tower from the core inclusion recovers the category",
                {"join_tower", "directed_join", "core", "is_fully_faithful", "is_surjective_on_isoclasses",
                 "is_equivalence"}};
      s.checks = [](std::uint64_t, Bounds const& b) {
        std::vector<Check> out;
        std::vector<std::pair<std::string, Cat>> cats{{"interval", interval()},
                                                      {"poset-2", poset_chain(2)},
                                                      {"walking-iso", walking_iso()},
                                                      {"walking-idempotent", walking_idempotent()}};
        for (auto const& [name, B] : cats) {
          out.push_back({name, [B = B, b] {
                           auto c = core(B);
                           auto T = join_tower(c.inclusion, c.inclusion, 6, b.max_word_len);
                           if (T.status != Status::Exact) {
                             return truncated(T.note + ", arrows per stage " + growth_of(T.growth));
                           }
                           if (!T.verified()) {
                             return fail(std::string(T.fully_faithful ? "" : "not fully faithful; ")
                                         + (T.image_matches ? "" : "image differs"));
                           }
                           auto const& g = T.stages[T.stable_stage].g;
                           if (!is_fully_faithful(g) || !is_surjective_on_isoclasses(g) || !is_equivalence(g)) {
                             return fail("stable stage does not map by an equivalence");
                           }
                           return pass("stable at stage " + std::to_string(T.stable_stage) + ", arrows per stage "
                                       + growth_of(T.growth));
                         }});
        }
        return out;
      };
      return s;
    }

    std::string tower_failure(UniverseTower const& T) {
      if (T.status != Status::Exact) {
        return T.note + ", base arrows per stage " + growth_of(T.growth);
      }
      return std::string(T.univalent ? "" : "not directed univalent; ")
             + (T.classifies_same ? "" : "classifies different fibres");
    }

    Outcome completion_outcome(UniverseTower const& T) {
      if (T.status != Status::Exact) {
        return truncated(tower_failure(T));
      }
      if (!T.verified()) {
        return fail(tower_failure(T));
      }
      return pass("stable at stage " + std::to_string(T.stable_stage) + ", base arrows per stage "
                  + growth_of(T.growth));
    }

    // The completion of the fibration over two points with fibres 1 and I,
    // started at the point fibre.
    UniverseTower complete_point_and_interval(Bounds const& b) {
      auto p  = over_discrete({terminal(), interval()});
      auto q0 = base_change(point(p.base(), 0), p);
      return univalent_completion(p, q0, 6, b.max_word_len);
    }

    Suite univalent_completion_suite() {
      Suite s;
      s.info = {"univalent-completion", 12,
                "the completion of a fibration over a groupoid is directed univalent",
                {"univalent_completion", "virtual_join", "fun_cocart", "is_directed_univalent",
                 "localize_fibration"}};
      s.checks = [](std::uint64_t, Bounds const& b) {
        std::vector<Check> out;
        out.push_back({"point-and-interval", [b] {
                         auto T = complete_point_and_interval(b);
                         auto o = completion_outcome(T);
                         if (o.verdict == Verdict::Pass) {
                           auto oracle = functor_class_universe({terminal(), interval()});
                           if (!equivalent(T.universe->base(), oracle.base())) {
                             return fail("universe base differs from the functor-class universe");
                           }
                         }
                         return o;
                       }});
        out.push_back({"point", [b] {
                         auto p = over_point(terminal());
                         auto T = univalent_completion(p, p, 6, b.max_word_len);
                         auto o = completion_outcome(T);
                         if (o.verdict == Verdict::Pass && !equivalent(T.universe->base(), terminal())) {
                           return fail("universe of the point fibre is not a point");
                         }
                         return o;
                       }});
        out.push_back({"point-and-walking-iso", [b] {
                         auto p  = over_discrete({terminal(), walking_iso()});
                         auto q0 = base_change(point(p.base(), 0), p);
                         auto T  = univalent_completion(p, q0, 6, b.max_word_len);
                         auto o  = completion_outcome(T);
                         if (o.verdict == Verdict::Pass && !equivalent(T.universe->base(), terminal())) {
                           return fail("equivalent kinds were not identified");
                         }
                         return o;
                       }});
        return out;
      };
      return s;
    }

    // Straightening checks against a directed univalent universe.
    Outcome straighten_seeded(MarkedFibration const& U, std::uint64_t seed, std::string const& tag) {
      int done = 0;
      for (int attempt = 0; attempt < 60 && done < 5; ++attempt) {
        Rng  rng(derive_seed(seed, tag, 0, attempt));
        Cat  C = random_fincat(rng, FinCatParams{3, 2, 3, 10});
        auto f = random_functor(rng, C, U.base());
        if (!f) {
          continue;
        }
        auto q = base_change(*f, U);
        auto S = straighten_against(U, q);
        if (!naturally_isomorphic(S.f, *f)) {
          return fail("attempt " + std::to_string(attempt) + ": straightening is not isomorphic to f");
        }
        if (!S.equivalence || !is_equivalence(*S.equivalence)) {
          return fail("attempt " + std::to_string(attempt) + ": no equivalence over the base");
        }
        if (!straightening_uniqueness_check(U, *f, *f)) {
          return fail("attempt " + std::to_string(attempt) + ": 2-cells do not match cocartesian functors");
        }
        ++done;
      }
      if (done < 5) {
        return truncated("only " + std::to_string(done) + " functors into the universe in 60 attempts");
      }
      return pass("5 functors");
    }

    Suite straightening_suite() {
      Suite s;
      s.info = {"straightening", 13, "fibrations with classified fibres straighten uniquely against the universe",
                {"straighten_against", "straightening_uniqueness_check", "is_directed_univalent",
                 "straighten_finite", "unstraighten"}};
      s.checks = [](std::uint64_t seed, Bounds const& b) {
        std::vector<Check> out;
        out.push_back({"completed-universe", [seed, b] {
                         auto T = complete_point_and_interval(b);
                         if (!T.verified()) {
                           auto o   = completion_outcome(T);
                           o.detail = "no completed universe: " + o.detail;
                           return o;
                         }
                         return straighten_seeded(*T.universe, seed, "straightening/completed");
                       }});
        out.push_back({"oracle-universe", [seed] {
                         auto U = functor_class_universe({terminal(), interval()});
                         if (!is_directed_univalent(U)) {
                           return fail("functor-class universe is not directed univalent");
                         }
                         return straighten_seeded(U, seed, "straightening/oracle");
                       }});
        out.push_back({"oracle-universe-point-fibre", [] {
                         auto U = functor_class_universe({terminal(), interval()});
                         auto S = straighten_against(U, over_point(interval()));
                         if (S.f.obj != std::vector<int>{1}) {
                           return fail("the interval fibre is not classified by its kind");
                         }
                         if (!S.equivalence || !is_equivalence(S.fibre_equivalences[0])) {
                           return fail("no fibre equivalence");
                         }
                         return pass();
                       }});
        out.push_back({"oracle-universe-seeded-opfibrations", [seed] {
                         auto U = functor_class_universe({terminal(), discrete(2), interval()});
                         OpfibrationParams params;
                         params.base   = FinCatParams{4, 2, 3, 12};
                         params.fibres = {terminal(), walking_iso(), discrete(2), interval()};
                         for (int k = 0; k < 8; ++k) {
                           auto q = random_opfibration(derive_seed(seed, "straightening/opfibration", k), params);
                           auto S = straighten_against(U, q.fibration);
                           if (!S.equivalence || !is_equivalence(*S.equivalence)) {
                             return fail("opfibration " + std::to_string(k) + ": no equivalence over the base");
                           }
                           auto back = unstraighten(straighten_finite(q.fibration));
                           if (!find_equivalence_over(back, q.fibration)) {
                             return fail("opfibration " + std::to_string(k) + ": straightening round trip");
                           }
                         }
                         return pass("8 opfibrations");
                       }});
        return out;
      };
      return s;
    }

  }  // namespace

  std::vector<Suite> universe_suites() {
    return {join_tower_suite(), univalent_completion_suite(), straightening_suite()};
  }

}  // namespace fincat::suites
