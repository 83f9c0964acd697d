#include <optional>

#include "fincat/fibration.hpp"
#include "fincat/generate.hpp"
#include "fincat/presheaf.hpp"
#include "suites.hpp"

namespace fincat::suites {

  namespace {

    struct LocInstance {
      std::string      id;
      Cat              C;
      std::vector<int> W;
    };

    std::vector<LocInstance> oracle_fixtures() {
      Cat I = interval(), two = poset_chain(2), idem = walking_idempotent();
      return {{"fixture-interval", I, {I->find_arrow("f")}},
              {"fixture-poset-2", two, {two->find_arrow("0<1")}},
              {"fixture-walking-idempotent", idem, {idem->find_arrow("e")}}};
    }

    bool kelly_exact(Cat const& C, std::vector<int> const& W, int max_iters) {
      auto R = localisation_cospan(C, W);
      for (std::size_t y = 0; y < C->num_objects(); ++y) {
        if (kelly_S_infty(R, yoneda(C, static_cast<int>(y)), max_iters).status != Status::Exact) {
          return false;
        }
      }
      return true;
    }

    // Seeded instance k: the first attempt on which both algorithms are Exact.
    std::optional<LocInstance> oracle_seeded(std::uint64_t seed, int k, Bounds const& b, int* attempts) {
      for (int attempt = 0; attempt < 40; ++attempt) {
        *attempts = attempt + 1;
        Rng rng(derive_seed(seed, "localisation-oracle", k, attempt));
        Cat C = random_fincat(rng, FinCatParams{3, 3, 3, 20});
        std::vector<int> nonid;
        for (std::size_t a = 0; a < C->num_arrows(); ++a) {
          if (!C->is_identity(static_cast<int>(a))) {
            nonid.push_back(static_cast<int>(a));
          }
        }
        if (nonid.empty()) {
          continue;
        }
        std::vector<int> W{nonid[uniform(rng, 0, static_cast<int>(nonid.size()) - 1)]};
        if (!localize(LocalisationSpec{C, W}, b.max_word_len).sat.exact()) {
          continue;
        }
        if (!kelly_exact(C, W, b.max_stages)) {
          continue;
        }
        return LocInstance{numbered("seeded-", k, 2), C, W};
      }
      return std::nullopt;
    }

    Outcome compare_homs(LocInstance const& I, Bounds const& b) {
      auto loc = localize(LocalisationSpec{I.C, I.W}, b.max_word_len);
      if (!loc.sat.exact()) {
        return truncated("localize: " + loc.sat.note);
      }
      std::string counts;
      for (std::size_t x = 0; x < I.C->num_objects(); ++x) {
        for (std::size_t y = 0; y < I.C->num_objects(); ++y) {
          auto h = localisation_homs_via_S(I.C, I.W, static_cast<int>(x), static_cast<int>(y), b.max_stages);
          if (h.status != Status::Exact) {
            return truncated("S does not stabilize for " + I.C->object_label(static_cast<int>(y)));
          }
          auto n = loc.sat.hom_count(loc.i.obj[x], loc.i.obj[y]);
          if (h.count != n) {
            return fail("hom(" + I.C->object_label(static_cast<int>(x)) + ", "
                        + I.C->object_label(static_cast<int>(y)) + "): localize " + std::to_string(n)
                        + ", via S " + std::to_string(h.count));
          }
          counts += (counts.empty() ? "" : " ") + std::to_string(n);
        }
      }
      return pass(std::to_string(I.C->num_objects()) + " objects, homs " + counts);
    }

    Suite localisation_oracle() {
      Suite s;
      s.info = {"localisation-oracle", 2,
                "localisation hom-sets from the presentation and from the reflector S agree",
                {"localize", "saturate", "localisation_homs_via_S", "kelly_S_infty"}};
      s.checks = [](std::uint64_t seed, Bounds const& b) {
        std::vector<Check> out;
        for (auto const& I : oracle_fixtures()) {
          out.push_back({I.id, [I, b] { return compare_homs(I, b); }});
        }
        for (int k = 0; k < 10; ++k) {
          out.push_back({numbered("seeded-", k, 2), [seed, k, b] {
                           int  attempts = 0;
                           auto I        = oracle_seeded(seed, k, b, &attempts);
                           if (!I) {
                             return truncated("no Exact instance in " + std::to_string(attempts) + " attempts");
                           }
                           return compare_homs(*I, b);
                         }});
        }
        return out;
      };
      return s;
    }

    ////////////////////////////////////////////////////////////////////////
    // Localized fibrations
    ////////////////////////////////////////////////////////////////////////

    OpfibrationParams loc_params() {
      OpfibrationParams p;
      p.base              = FinCatParams{3, 2, 2, 8};
      p.invertible_arrows = 1;
      return p;
    }

    struct FibInstance {
      GeneratedOpfibration  G;
      FibrationLocalisation L;
      int                   attempts = 0;
    };

    // First attempt whose localisation is Exact on the total and on the base.
    std::optional<FibInstance> fibration_seeded(std::uint64_t seed, std::string const& tag, int k,
                                                Bounds const& b) {
      for (int attempt = 0; attempt < 30; ++attempt) {
        auto G = random_opfibration(derive_seed(seed, tag, k, attempt), loc_params());
        if (G.W.empty()) {
          continue;
        }
        auto L = localize_fibration(G.fibration, G.W, b.max_word_len);
        if (L.status == Status::Exact) {
          return FibInstance{std::move(G), std::move(L), attempt + 1};
        }
      }
      return std::nullopt;
    }

    std::string sizes(MarkedFibration const& mf) {
      return std::to_string(mf.total()->num_objects()) + "/" + std::to_string(mf.total()->num_arrows())
             + " over " + std::to_string(mf.base()->num_objects()) + "/"
             + std::to_string(mf.base()->num_arrows());
    }

    // Hom counts of an Exact localisation against the S reflector; counts
    // only the targets on which S stabilizes.
    std::optional<std::string> homs_against_S(Cat const& C, std::vector<int> const& W,
                                              LocalisationResult const& loc, Bounds const& b,
                                              int* compared) {
      for (std::size_t y = 0; y < C->num_objects(); ++y) {
        auto r = kelly_S_infty(localisation_cospan(C, W), yoneda(C, static_cast<int>(y)), b.max_stages);
        if (r.status != Status::Exact) {
          continue;
        }
        for (std::size_t x = 0; x < C->num_objects(); ++x) {
          auto n = loc.sat.hom_count(loc.i.obj[x], loc.i.obj[y]);
          if (static_cast<std::size_t>(r.value.size[x]) != n) {
            return "hom(" + C->object_label(static_cast<int>(x)) + ", " + C->object_label(static_cast<int>(y))
                   + ") " + std::to_string(n) + " against " + std::to_string(r.value.size[x]) + " via S";
          }
        }
        ++*compared;
      }
      return std::nullopt;
    }

    Suite mapping_squares() {
      Suite s;
      s.info = {"mapping-squares", 5,
                "hom squares (a) and (b) of a localized fibration are pullbacks of sets",
                {"mapping_square_a", "mapping_square_b", "localize_fibration", "kelly_S_infty"}};
      s.checks = [](std::uint64_t seed, Bounds const& b) {
        std::vector<Check> out;
        for (int k = 0; k < 20; ++k) {
          out.push_back({numbered("seeded-", k, 2), [seed, k, b] {
                           auto I = fibration_seeded(seed, "mapping-squares", k, b);
                           if (!I) {
                             return truncated("no doubly Exact instance in 30 attempts");
                           }
                           auto const& L = I->L;
                           auto const& E = *I->G.fibration.total();
                           auto const& C = *I->G.fibration.base();
                           int         squares = 0;
                           for (std::size_t x = 0; x < E.num_objects(); ++x) {
                             for (std::size_t y = 0; y < E.num_objects(); ++y) {
                               int xi = static_cast<int>(x), yi = static_cast<int>(y);
                               if (!mapping_square_a(L, xi, yi)) {
                                 return fail("square (a) at " + E.object_label(xi) + ", " + E.object_label(yi));
                               }
                               ++squares;
                               for (std::size_t c = 0; c < C.num_objects(); ++c) {
                                 if (!mapping_square_b(L, xi, yi, static_cast<int>(c))) {
                                   return fail("square (b) at " + E.object_label(xi) + ", " + E.object_label(yi)
                                               + " through " + C.object_label(static_cast<int>(c)));
                                 }
                                 ++squares;
                               }
                             }
                           }
                           int compared = 0;
                           if (auto bad = homs_against_S(I->G.fibration.base(), L.W, L.base, b, &compared)) {
                             return fail("base " + *bad);
                           }
                           if (auto bad = homs_against_S(I->G.fibration.total(), L.W_u, L.total, b, &compared)) {
                             return fail("total " + *bad);
                           }
                           return pass(sizes(I->G.fibration) + ", " + std::to_string(squares) + " squares, "
                                       + std::to_string(compared) + " S runs agree");
                         }});
        }
        return out;
      };
      return s;
    }

    Functor product_projection(Cat const& B, Cat const& F) {
      return product(B, F).first;
    }

    Suite fibration_localisation() {
      Suite s;
      s.info = {"fibration-localisation", 6,
                "the localized projection is a cocartesian fibration and the square is a pullback",
                {"localize_fibration", "inverts_W", "is_cocartesian_fibration"}};
      s.checks = [](std::uint64_t seed, Bounds const& b) {
        std::vector<Check> out;
        std::vector<std::pair<std::string, Cat>> fibres{{"interval", interval()},
                                                        {"walking-iso", walking_iso()},
                                                        {"walking-idempotent", walking_idempotent()},
                                                        {"section-retraction", section_retraction()}};
        for (auto const& [name, F] : fibres) {
          for (bool invert : {false, true}) {
            out.push_back({"fixture-interval-x-" + name + (invert ? "-at-f" : "-at-none"), [F = F, invert, b] {
                             auto mf = mark_fibration(product_projection(interval(), F));
                             std::vector<int> W;
                             if (invert) {
                               W.push_back(interval()->find_arrow("f"));
                             }
                             auto L = localize_fibration(mf, W, b.max_word_len);
                             if (L.status != Status::Exact) {
                               return truncated(L.note);
                             }
                             if (!L.verified()) {
                               return fail(L.witnesses.empty() ? "not verified" : L.witnesses.front());
                             }
                             return pass(sizes(*L.result));
                           }});
          }
        }
        out.push_back({"fixture-z2-swap", [b] {
                         // C2 acting on two points, localized at nothing and at the generator
                         Cat     Z2  = cyclic_group(2);
                         Cat     D2  = discrete(2);
                         int     sig = Z2->is_identity(0) ? 1 : 0;
                         std::vector<Functor> act(2);
                         act[Z2->id(0)] = identity_functor(D2);
                         act[sig]       = Functor{D2, D2, {1, 0}, {1, 0}};
                         auto mf        = unstraighten(strict_pseudofunctor(Z2, {D2}, act));
                         for (auto const& W : {std::vector<int>{}, std::vector<int>{sig}}) {
                           auto L = localize_fibration(mf, W, b.max_word_len);
                           if (L.status != Status::Exact) {
                             return truncated(L.note);
                           }
                           if (!L.verified()) {
                             return fail(L.witnesses.empty() ? "not verified" : L.witnesses.front());
                           }
                         }
                         return pass();
                       }});
        for (int k = 0; k < 20; ++k) {
          out.push_back({numbered("seeded-", k, 2), [seed, k, b] {
                           auto I = fibration_seeded(seed, "fibration-localisation", k, b);
                           if (!I) {
                             return truncated("no Exact instance in 30 attempts");
                           }
                           auto const& L = I->L;
                           if (!L.verified()) {
                             return fail(L.witnesses.empty() ? "not verified" : L.witnesses.front());
                           }
                           return pass(sizes(I->G.fibration) + " -> " + sizes(*L.result));
                         }});
        }
        return out;
      };
      return s;
    }

    ////////////////////////////////////////////////////////////////////////
    // S-orthogonality on the runs of the two suites above
    ////////////////////////////////////////////////////////////////////////

    // Every stabilized run on a representable is orthogonal to the local
    // objects at hand: the terminal and empty presheaves and every S^infty value.
    Outcome orthogonal_runs(Cat const& C, std::vector<int> const& W, Bounds const& b) {
      auto R = localisation_cospan(C, W);
      std::vector<Presheaf>                            locals{terminal_presheaf(C), empty_presheaf(C)};
      std::vector<std::pair<Presheaf, KellyResult>>    runs;
      for (std::size_t y = 0; y < C->num_objects(); ++y) {
        Presheaf x = yoneda(C, static_cast<int>(y));
        auto     r = kelly_S_infty(R, x, b.max_stages);
        if (r.status != Status::Exact) {
          continue;
        }
        if (!inverts(r.value, W)) {
          return fail("S infinity of yo(" + C->object_label(static_cast<int>(y)) + ") is not local");
        }
        locals.push_back(r.value);
        runs.emplace_back(std::move(x), std::move(r));
      }
      for (std::size_t i = 0; i < runs.size(); ++i) {
        for (std::size_t j = 0; j < locals.size(); ++j) {
          if (!s_orthogonal(runs[i].first, runs[i].second, locals[j])) {
            return fail("run " + std::to_string(i) + " against local object " + std::to_string(j));
          }
        }
      }
      return pass(std::to_string(runs.size()) + " stabilized runs x " + std::to_string(locals.size())
                  + " local objects");
    }

    Suite s_ortho() {
      Suite s;
      s.info = {"s-ortho", 14,
                "precomposition with the unit of S infinity is a bijection on local objects",
                {"kelly_S", "kelly_S_infty", "localisation_homs_via_S"}};
      s.checks = [](std::uint64_t seed, Bounds const& b) {
        std::vector<Check> out;
        for (auto const& I : oracle_fixtures()) {
          out.push_back({"oracle-" + I.id, [I, b] { return orthogonal_runs(I.C, I.W, b); }});
        }
        for (int k = 0; k < 10; ++k) {
          out.push_back({"oracle-" + numbered("seeded-", k, 2), [seed, k, b] {
                           int  attempts = 0;
                           auto I        = oracle_seeded(seed, k, b, &attempts);
                           if (!I) {
                             return truncated("no Exact instance in " + std::to_string(attempts) + " attempts");
                           }
                           return orthogonal_runs(I->C, I->W, b);
                         }});
        }
        for (int k = 0; k < 20; ++k) {
          out.push_back({"squares-" + numbered("seeded-", k, 2), [seed, k, b] {
                           auto I = fibration_seeded(seed, "mapping-squares", k, b);
                           if (!I) {
                             return truncated("no doubly Exact instance in 30 attempts");
                           }
                           auto base  = orthogonal_runs(I->G.fibration.base(), I->L.W, b);
                           auto total = orthogonal_runs(I->G.fibration.total(), I->L.W_u, b);
                           if (base.verdict != Verdict::Pass) {
                             return Outcome{base.verdict, "base: " + base.detail};
                           }
                           if (total.verdict != Verdict::Pass) {
                             return Outcome{total.verdict, "total: " + total.detail};
                           }
                           return pass("base " + base.detail + "; total " + total.detail);
                         }});
        }
        return out;
      };
      return s;
    }

    Suite big_list() {
      Suite s;
      s.info = {"big-list", 15, "closure properties (a)-(g) of cartesian glued maps",
                {"big_list_property_suite", "gl_is_cartesian", "check_good", "check_nice"}};
      s.checks = [](std::uint64_t seed, Bounds const&) {
        std::vector<Check> out;
        Cat   I = interval();
        Span2 P = product(I, I);
        std::vector<std::pair<std::string, Functor>> qs{
            {"interval-squared-projection", P.first},
            {"interval-to-point", to_terminal(I)},
            {"walking-idempotent-identity", identity_functor(walking_idempotent())}};
        for (auto const& [name, q] : qs) {
          for (int chunk = 0; chunk < 4; ++chunk) {
            out.push_back({name + "-" + std::to_string(chunk), [seed, q = q, name = name, chunk] {
                             auto r = big_list_property_suite(q, derive_seed(seed, "big-list/" + name, chunk), 25);
                             if (r.lines.size() != 7) {
                               return fail("expected 7 property lines, got " + std::to_string(r.lines.size()));
                             }
                             return r.ok ? pass("25 instances, 7 properties")
                                         : fail(r.failure.value_or("failed"));
                           }});
          }
        }
        return out;
      };
      return s;
    }

  }  // namespace

  std::vector<Suite> localisation_suites() {
    return {localisation_oracle(), mapping_squares(), fibration_localisation(), s_ortho(), big_list()};
  }

}  // namespace fincat::suites
