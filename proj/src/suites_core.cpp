#include <algorithm>

#include "fincat/fibration.hpp"
#include "fincat/generate.hpp"
#include "suites.hpp"

namespace fincat::suites {

  namespace {

    // Category laws checked by direct loops over the table, independently of
    // check_fincat.
    bool laws_hold(RawCat const& r) {
      int const no = static_cast<int>(r.objects.size());
      int const na = static_cast<int>(r.arrows.size());
      if (static_cast<int>(r.identities.size()) != no
          || r.compose.size() != static_cast<std::size_t>(na) * na) {
        return false;
      }
      auto c = [&](int g, int f) { return r.compose[static_cast<std::size_t>(g) * na + f]; };
      for (int x = 0; x < no; ++x) {
        int i = r.identities[x];
        if (i < 0 || i >= na || r.arrows[i].src != x || r.arrows[i].tgt != x) {
          return false;
        }
      }
      for (int g = 0; g < na; ++g) {
        for (int f = 0; f < na; ++f) {
          int gf = c(g, f);
          if (r.arrows[f].tgt != r.arrows[g].src) {
            if (gf != -1) {
              return false;
            }
            continue;
          }
          if (gf < 0 || gf >= na || r.arrows[gf].src != r.arrows[f].src
              || r.arrows[gf].tgt != r.arrows[g].tgt) {
            return false;
          }
        }
      }
      for (int f = 0; f < na; ++f) {
        if (c(r.identities[r.arrows[f].tgt], f) != f || c(f, r.identities[r.arrows[f].src]) != f) {
          return false;
        }
      }
      for (int f = 0; f < na; ++f) {
        for (int g = 0; g < na; ++g) {
          if (r.arrows[f].tgt != r.arrows[g].src) {
            continue;
          }
          for (int h = 0; h < na; ++h) {
            if (r.arrows[g].tgt == r.arrows[h].src && c(c(h, g), f) != c(h, c(g, f))) {
              return false;
            }
          }
        }
      }
      return true;
    }

    bool functor_laws_hold(Functor const& F) {
      auto const& C = *F.dom;
      auto const& D = *F.cod;
      if (F.obj.size() != C.num_objects() || F.arr.size() != C.num_arrows()) {
        return false;
      }
      for (int y : F.obj) {
        if (y < 0 || y >= static_cast<int>(D.num_objects())) {
          return false;
        }
      }
      for (std::size_t a = 0; a < C.num_arrows(); ++a) {
        int ai = static_cast<int>(a), b = F.arr[a];
        if (b < 0 || b >= static_cast<int>(D.num_arrows()) || D.src(b) != F.obj[C.src(ai)]
            || D.tgt(b) != F.obj[C.tgt(ai)]) {
          return false;
        }
        if (C.is_identity(ai) && !D.is_identity(b)) {
          return false;
        }
      }
      for (std::size_t f = 0; f < C.num_arrows(); ++f) {
        for (int g : C.out(C.tgt(static_cast<int>(f)))) {
          if (F.arr[C.compose(g, static_cast<int>(f))] != D.compose(F.arr[g], F.arr[f])) {
            return false;
          }
        }
      }
      return true;
    }

    // Validators agree with the direct loops on C, on single-entry mutations of
    // its table, on the functors given and on single-arrow mutations of them.
    Outcome validate(Cat const& C, std::vector<Functor> const& functors, Rng& rng, int mutations) {
      RawCat raw = C->to_raw();
      if (!check_fincat(raw).ok() || !laws_hold(raw)) {
        return fail("valid table rejected");
      }
      int const na = static_cast<int>(raw.arrows.size());
      int caught = 0, agreed = 0;
      for (int m = 0; m < mutations && na > 0; ++m) {
        RawCat bad = raw;
        int    g   = uniform(rng, 0, na - 1);
        auto const& in = C->in(C->src(g));
        int f  = in[uniform(rng, 0, static_cast<int>(in.size()) - 1)];
        // another arrow with the same ends, or an undefined entry
        auto const& hom = C->hom(C->src(f), C->tgt(g));
        int gf = uniform(rng, 0, static_cast<int>(hom.size())) == 0 ? -1
                                                                     : hom[uniform(rng, 0, static_cast<int>(hom.size()) - 1)];
        bad.set_compose(g, f, gf);
        bool v = check_fincat(bad).ok();
        if (v != laws_hold(bad)) {
          return fail("check_fincat and the direct law check disagree after setting " + raw.arrows[g].label
                      + " . " + raw.arrows[f].label);
        }
        caught += !v;
        ++agreed;
      }
      for (auto const& F : functors) {
        bool v = !check_functor(F).has_value();
        if (!v || !functor_laws_hold(F)) {
          return fail("valid functor rejected");
        }
        if (F.arr.empty()) {
          continue;
        }
        Functor bad = F;
        int     a   = uniform(rng, 0, static_cast<int>(bad.arr.size()) - 1);
        bad.arr[a]  = uniform(rng, 0, static_cast<int>(F.cod->num_arrows()) - 1);
        if (check_functor(bad).has_value() == functor_laws_hold(bad)) {
          return fail("check_functor and the direct functor check disagree on a mutation of "
                      + F.dom->arrow_label(a));
        }
      }
      return pass(std::to_string(C->num_objects()) + " objects, " + std::to_string(na) + " arrows, "
                  + std::to_string(agreed) + " mutations (" + std::to_string(caught) + " invalid), "
                  + std::to_string(functors.size()) + " functors");
    }

    Suite core_laws() {
      Suite s;
      s.info = {"core-laws", 1, "category and functor validators on fixtures and seeded categories",
                {"check_fincat"}};
      s.checks = [](std::uint64_t seed, Bounds const&) {
        std::vector<Check> out;
        std::vector<std::pair<std::string, Cat>> fixtures{
            {"interval", interval()},
            {"walking-iso", walking_iso()},
            {"walking-idempotent", walking_idempotent()},
            {"section-retraction", section_retraction()},
        };
        for (int n = 0; n <= 3; ++n) {
          fixtures.push_back({"poset-" + std::to_string(n), poset_chain(n)});
        }
        for (auto const& [name, C] : fixtures) {
          out.push_back({"fixture-" + name, [seed, C = C, name = name] {
                           Rng rng(derive_seed(seed, "core-laws/" + name, 0));
                           auto fs = all_functors(C, C);
                           auto id = identity_functor(C);
                           for (auto const& F : fs) {
                             if (!(compose(F, id) == F) || !(compose(id, F) == F)) {
                               return fail("identity functor is not a unit");
                             }
                           }
                           return validate(C, fs, rng, 60);
                         }});
        }
        for (int k = 0; k < 200; ++k) {
          out.push_back({numbered("seeded-", k), [seed, k] {
                           Rng rng(derive_seed(seed, "core-laws", k));
                           Cat C = random_fincat(rng, FinCatParams{5, 3, 4, 40});
                           Cat D = random_fincat(rng, FinCatParams{5, 3, 4, 40});
                           std::vector<Functor> fs{identity_functor(C)};
                           if (auto F = random_functor(rng, C, D)) {
                             fs.push_back(*F);
                             fs.push_back(compose(identity_functor(D), *F));
                           }
                           return validate(C, fs, rng, 20);
                         }});
        }
        return out;
      };
      return s;
    }

    OpfibrationParams seeded_params() {
      OpfibrationParams p;
      p.base = FinCatParams{3, 2, 3, 10};
      return p;
    }

    Suite conduche() {
      Suite s;
      s.info = {"conduche", 3, "seeded cocartesian fibrations are Conduche fibrations",
                {"is_conduche", "is_cocartesian_fibration", "unstraighten"}};
      s.checks = [](std::uint64_t seed, Bounds const&) {
        std::vector<Check> out;
        for (int k = 0; k < 100; ++k) {
          out.push_back({numbered("seeded-", k), [seed, k] {
                           auto G = random_opfibration(derive_seed(seed, "conduche", k), seeded_params());
                           auto const& p = G.fibration.p;
                           if (!is_cocartesian_fibration(p).ok()) {
                             return fail("generated functor is not a cocartesian fibration");
                           }
                           std::string d = std::to_string(p.dom->num_objects()) + " objects over "
                                           + std::to_string(p.cod->num_objects());
                           return is_conduche(p) ? pass(d) : fail("not Conduche: " + d);
                         }});
        }
        return out;
      };
      return s;
    }

    Suite invertible_transport() {
      Suite s;
      s.info = {"invertible-transport", 4,
                "over an arrow with invertible transport, cartesian and cocartesian lifts coincide",
                {"invertible_transport_check", "inverts_W", "cocartesian_arrows", "transport"}};
      s.checks = [](std::uint64_t seed, Bounds const&) {
        std::vector<Check> out;
        for (int k = 0; k < 50; ++k) {
          out.push_back({numbered("seeded-", k), [seed, k] {
                           for (int attempt = 0; attempt < 20; ++attempt) {
                             auto p              = seeded_params();
                             p.invertible_arrows = 1;
                             auto G = random_opfibration(derive_seed(seed, "invertible-transport", k, attempt), p);
                             auto const& mf = G.fibration;
                             if (G.W.empty()) {
                               continue;
                             }
                             if (!inverts_W(mf, G.W)) {
                               return fail("generated instance does not invert W");
                             }
                             std::string d;
                             for (int w : G.W) {
                               auto cart   = cartesian_lifts_of(mf.p, w);
                               auto cocart = cocartesian_lifts_of(mf.p, w);
                               std::sort(cart.begin(), cart.end());
                               std::sort(cocart.begin(), cocart.end());
                               auto const& label = mf.base()->arrow_label(w);
                               if (cart != cocart) {
                                 return fail("lift sets differ over " + label + ": "
                                             + std::to_string(cart.size()) + " cartesian, "
                                             + std::to_string(cocart.size()) + " cocartesian");
                               }
                               if (!invertible_transport_check(mf, w)) {
                                 return fail("invertible_transport_check rejects " + label);
                               }
                               d += (d.empty() ? "" : ", ") + label + ": " + std::to_string(cart.size()) + " lifts";
                             }
                             return pass(d + (attempt ? " (attempt " + std::to_string(attempt) + ")" : ""));
                           }
                           return truncated("no instance with an invertible arrow in 20 attempts");
                         }});
        }
        return out;
      };
      return s;
    }

    Suite conduche_counterexample() {
      Suite s;
      s.info = {"conduche-counterexample", 8,
                "a Conduche fibration over [3] inverting W that is not a pullback of a fibration",
                {"is_conduche", "conduche_inverts_W", "is_cocartesian_fibration", "is_equivalence"}};
      s.checks = [](std::uint64_t, Bounds const&) {
        std::vector<Check> out;
        out.push_back({"a-conduche", [] {
                         return is_conduche(delta3_conduche()) ? pass() : fail("not Conduche");
                       }});
        out.push_back({"b-inverts-W", [] {
                         return conduche_inverts_W(delta3_conduche(), delta3_W()) ? pass("W = {0<2, 1<3}")
                                                                                  : fail("W not inverted");
                       }});
        out.push_back({"c-not-cocartesian", [] {
                         auto q = delta3_conduche();
                         auto v = is_cocartesian_fibration(q);
                         if (v.ok()) {
                           return fail("unexpectedly a cocartesian fibration");
                         }
                         return pass("no cocartesian lift of " + q.cod->arrow_label(v.witness->second) + " at "
                                     + q.dom->object_label(v.witness->first));
                       }});
        out.push_back({"d-fibres", [] {
                         auto q = delta3_conduche();
                         bool ok = equivalent(fibre(q, 0).cat, walking_idempotent())
                                   && equivalent(fibre(q, 1).cat, section_retraction());
                         return ok ? pass("fibre 0 ~ walking idempotent, fibre 1 ~ section-retraction")
                                   : fail("fibres are not the expected pair");
                       }});
        out.push_back({"e-no-equivalence", [] {
                         // exhaustive: every functor between the two is tried
                         Cat    I = walking_idempotent(), S = section_retraction();
                         std::size_t n = 0;
                         bool   any = false;
                         enumerate_functors(I, S, [&](Functor const& F) {
                           ++n;
                           any = any || is_equivalence(F);
                           return true;
                         });
                         enumerate_functors(S, I, [&](Functor const& F) {
                           ++n;
                           any = any || is_equivalence(F);
                           return true;
                         });
                         if (any || find_equivalence(I, S)) {
                           return fail("an equivalence exists");
                         }
                         return pass(std::to_string(n) + " functors searched");
                       }});
        return out;
      };
      return s;
    }

  }  // namespace

  std::vector<Suite> core_suites() {
    return {core_laws(), conduche(), invertible_transport(), conduche_counterexample()};
  }

}  // namespace fincat::suites
