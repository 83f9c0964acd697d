#include <algorithm>
#include <optional>

#include "fincat/fibration.hpp"
#include "fincat/generate.hpp"
#include "suites.hpp"

namespace fincat::suites {

  namespace {

    // Strict functor I -> Cat picking h : X -> Y.
    MarkedFibration over_interval(Functor const& h) {
      Cat                  I = interval();
      std::vector<Functor> act(I->num_arrows());
      act[I->id(0)]           = identity_functor(h.dom);
      act[I->id(1)]           = identity_functor(h.cod);
      act[I->find_arrow("f")] = h;
      return unstraighten(strict_pseudofunctor(I, {h.dom, h.cod}, act));
    }

    // Strict functor J -> Cat picking an isomorphism h and its inverse.
    MarkedFibration over_walking_iso(Functor const& h, Functor const& h_inv) {
      Cat                  J = walking_iso();
      std::vector<Functor> act(J->num_arrows());
      act[J->id(0)]           = identity_functor(h.dom);
      act[J->id(1)]           = identity_functor(h.cod);
      act[J->find_arrow("f")] = h;
      act[J->find_arrow("g")] = h_inv;
      return unstraighten(strict_pseudofunctor(J, {h.dom, h.cod}, act));
    }

    // Inverse of a bijective functor, by inverting its object and arrow maps.
    std::optional<Functor> inverse_functor(Functor const& F) {
      if (F.dom->num_objects() != F.cod->num_objects() || F.dom->num_arrows() != F.cod->num_arrows()) {
        return std::nullopt;
      }
      Functor G{F.cod, F.dom, std::vector<int>(F.cod->num_objects(), -1),
                std::vector<int>(F.cod->num_arrows(), -1)};
      for (std::size_t x = 0; x < F.obj.size(); ++x) {
        G.obj[F.obj[x]] = static_cast<int>(x);
      }
      for (std::size_t a = 0; a < F.arr.size(); ++a) {
        G.arr[F.arr[a]] = static_cast<int>(a);
      }
      if (std::count(G.obj.begin(), G.obj.end(), -1) || std::count(G.arr.begin(), G.arr.end(), -1)
          || check_functor(G)) {
        return std::nullopt;
      }
      return G;
    }

    std::string failed_line(DescentReport const& r) {
      for (auto const& c : r.checks) {
        if (!c.ok) {
          return c.name + (c.detail.empty() ? "" : ": " + c.detail);
        }
      }
      return "failed";
    }

    std::string witness(FibrationLocalisation const& L) {
      if (L.status != Status::Exact) {
        return L.note;
      }
      if (!L.witnesses.empty()) {
        return L.witnesses.front();
      }
      return !L.result ? "localized projection is not a cocartesian fibration" : "square is not a pullback";
    }

    // Localizing over_interval(h) at f and every consequence checked on it.
    Outcome localize_over_interval(Functor const& h, FibrationLocalisation const& rep, Bounds const& b) {
      Cat  I  = interval();
      auto mf = over_interval(h);
      std::vector<int> W{I->find_arrow("f")};
      auto L = localize_fibration(mf, W, b.max_word_len);
      if (L.status != Status::Exact) {
        return truncated(L.note);
      }
      if (!L.verified()) {
        return fail(witness(L));
      }
      Cat base = L.base.sat.cat;
      if (!equivalent(base, walking_iso())) {
        return fail("localized base is not the walking isomorphism");
      }
      if (!find_equivalence_over(*L.result, mark_fibration(product(base, h.dom).first))) {
        return fail("localized fibration is not a product over the base");
      }
      auto D = descent_localisation_check(mf, W, b.max_word_len);
      if (D.status != Status::Exact) {
        return truncated("descent check truncated");
      }
      if (!D.ok()) {
        return fail(failed_line(D));
      }
      if (!localized_functors_biject(L, rep)) {
        return fail("cocartesian functors do not restrict bijectively");
      }
      return Outcome{};
    }

    Suite descent_localisation() {
      Suite s;
      s.info = {"descent-localisation", 7,
                "fibrations over the walking isomorphism are the fibrations over I inverting f",
                {"localize_fibration", "descent_localisation_check", "is_equivalence", "unstraighten",
                 "inverts_W"}};
      s.checks = [](std::uint64_t, Bounds const& b) {
        std::vector<Check> out;
        auto pool = std::make_shared<std::vector<Cat>>(enumerate_small_categories(2, 4));
        for (std::size_t i = 0; i < pool->size(); ++i) {
          for (std::size_t j = 0; j < pool->size(); ++j) {
            if (!equivalent((*pool)[i], (*pool)[j])) {
              continue;
            }
            out.push_back({"interval-" + numbered("", static_cast<int>(i), 2) + "-"
                               + numbered("", static_cast<int>(j), 2),
                           [pool, i, j, b] {
                             Cat  X = (*pool)[i], Y = (*pool)[j];
                             auto rep =
                                 localize_fibration(over_interval(identity_functor(X)),
                                                    {interval()->find_arrow("f")}, b.max_word_len);
                             if (!rep.verified()) {
                               return rep.status == Status::Exact ? fail("representative: " + witness(rep))
                                                                  : truncated(rep.note);
                             }
                             int n = 0;
                             for (auto const& h : all_functors(X, Y)) {
                               if (!is_equivalence(h)) {
                                 continue;
                               }
                               auto o = localize_over_interval(h, rep, b);
                               if (o.verdict != Verdict::Pass) {
                                 o.detail = "equivalence " + std::to_string(n) + ": " + o.detail;
                                 return o;
                               }
                               ++n;
                             }
                             return pass(std::to_string(X->num_objects()) + "/" + std::to_string(X->num_arrows())
                                         + " to " + std::to_string(Y->num_objects()) + "/"
                                         + std::to_string(Y->num_arrows()) + ", " + std::to_string(n)
                                         + " equivalences");
                           }});
          }
        }
        for (std::size_t i = 0; i < pool->size(); ++i) {
          out.push_back({"walking-iso-" + numbered("", static_cast<int>(i), 2), [pool, i, b] {
                           Cat     X = (*pool)[i];
                           Cat     I = interval();
                           Functor incl{I, walking_iso(), {0, 1}, {0, 1, 2}};
                           std::vector<int> W{I->find_arrow("f")};
                           int n = 0;
                           for (auto const& h : all_functors(X, X)) {
                             if (!is_isomorphism(h)) {
                               continue;
                             }
                             auto h_inv = inverse_functor(h);
                             if (!h_inv) {
                               return fail("isomorphism without an inverse");
                             }
                             auto overJ  = over_walking_iso(h, *h_inv);
                             auto pulled = base_change(incl, overJ);
                             if (!find_equivalence_over(pulled, over_interval(h))) {
                               return fail("restriction to I differs from the fibration of h");
                             }
                             auto L = localize_fibration(pulled, W, b.max_word_len);
                             if (L.status != Status::Exact) {
                               return truncated(L.note);
                             }
                             if (!L.verified()) {
                               return fail(witness(L));
                             }
                             if (!equivalent(L.result->total(), overJ.total())) {
                               return fail("localizing the restriction does not recover the total");
                             }
                             ++n;
                           }
                           return pass(std::to_string(n) + " automorphisms");
                         }});
        }
        return out;
      };
      return s;
    }

    ////////////////////////////////////////////////////////////////////////
    // Cocomma descent
    ////////////////////////////////////////////////////////////////////////

    OpfibrationParams span_params() {
      OpfibrationParams p;
      p.base = FinCatParams{2, 2, 2, 6};
      return p;
    }

    // Spans of three shapes.  A: q = f^*p over A with g the identity and phi
    // the canonical identification; C: the mirror image; B: spans of points
    // with phi induced by a functor between the fibres.
    std::optional<CocommaSpan> seeded_span(char shape, Rng& rng) {
      if (shape == 'B') {
        auto pool = fibre_pool(2, 4);
        Cat  F    = pool[uniform(rng, 0, static_cast<int>(pool.size()) - 1)];
        Cat  G    = pool[uniform(rng, 0, static_cast<int>(pool.size()) - 1)];
        auto h    = random_functor(rng, F, G);
        if (!h) {
          return std::nullopt;
        }
        Cat  pt = terminal();
        auto p  = unstraighten(constant_pseudofunctor(pt, F));
        auto q  = unstraighten(constant_pseudofunctor(pt, G));
        auto P1 = pullback(identity_functor(pt), p.p);
        auto P2 = pullback(identity_functor(pt), q.p);
        // the unstraightening over a point numbers objects and arrows as the fibre does
        Functor H{p.total(), q.total(), h->obj, h->arr};
        auto    back = inverse_functor(P2.second);
        if (check_functor(H) || !back) {
          return std::nullopt;
        }
        return CocommaSpan{p, q, identity_functor(pt), identity_functor(pt),
                           compose(*back, compose(H, P1.second))};
      }
      auto G = random_opfibration(rng, span_params());
      Cat  A = random_fincat(rng, FinCatParams{2, 2, 2, 6});
      auto f = random_functor(rng, A, G.fibration.base());
      if (!f) {
        return std::nullopt;
      }
      auto q = base_change(*f, G.fibration);
      if (shape == 'A') {
        auto P1   = pullback(*f, G.fibration.p);
        auto P2   = pullback(identity_functor(A), q.p);
        auto back = inverse_functor(P2.second);
        if (!back) {
          return std::nullopt;
        }
        Functor phi{P1.cat, P2.cat, back->obj, back->arr};
        return CocommaSpan{G.fibration, q, *f, identity_functor(A), phi};
      }
      auto P1 = pullback(identity_functor(A), q.p);
      auto P2 = pullback(*f, G.fibration.p);
      Functor phi{P1.cat, P2.cat, P1.second.obj, P1.second.arr};
      return CocommaSpan{q, G.fibration, identity_functor(A), *f, phi};
    }

    Suite descent_cocomma() {
      Suite s;
      s.info = {"descent-cocomma", 9,
                "the cocomma of fibrations is a fibration recovering both legs",
                {"cocomma_fibration", "cocomma", "pullback", "is_cocartesian_fibration"}};
      s.checks = [](std::uint64_t seed, Bounds const& b) {
        std::vector<Check> out;
        for (char shape : {'A', 'B', 'C'}) {
          for (int k = 0; k < 4; ++k) {
            out.push_back({std::string("shape-") + shape + "-" + numbered("", k, 2), [seed, shape, k, b] {
                             std::string tag = std::string("descent-cocomma/") + shape;
                             std::string last = "no span in 30 attempts";
                             for (int attempt = 0; attempt < 30; ++attempt) {
                               Rng  rng(derive_seed(seed, tag, k, attempt));
                               auto S = seeded_span(shape, rng);
                               if (!S) {
                                 continue;
                               }
                               try {
                                 check_cocomma_span(*S);
                               } catch (precondition_error const& e) {
                                 return fail(std::string("generated span rejected: ") + e.what());
                               }
                               auto R = cocomma_fibration(*S, b.max_word_len);
                               if (R.status != Status::Exact) {
                                 last = R.note;
                                 continue;
                               }
                               if (!R.result) {
                                 return fail("glued projection is not a cocartesian fibration");
                               }
                               if (!R.recovers_p || !R.recovers_q) {
                                 return fail(std::string("does not recover ") + (R.recovers_p ? "q" : "p"));
                               }
                               return pass("attempt " + std::to_string(attempt) + ", total "
                                           + std::to_string(R.result->total()->num_arrows()) + " arrows over "
                                           + std::to_string(R.result->base()->num_arrows()));
                             }
                             return truncated(last);
                           }});
          }
        }
        return out;
      };
      return s;
    }

    ////////////////////////////////////////////////////////////////////////
    // Sequential and groupoid descent
    ////////////////////////////////////////////////////////////////////////

    bool all_true(std::vector<bool> const& v) {
      return std::all_of(v.begin(), v.end(), [](bool x) { return x; });
    }

    Suite descent_glue() {
      Suite s;
      s.info = {"descent-glue", 10, "sequential colimits and groupoid bases glue fibrations",
                {"sequential_descent_glue", "groupoid_descent", "sequential_colimit", "straighten_finite",
                 "transport"}};
      s.checks = [](std::uint64_t, Bounds const& b) {
        std::vector<Check> out;
        out.push_back({"sequential-constant", [b] {
                         auto mf = mark_fibration(product(interval(), walking_iso()).first);
                         std::vector<Functor> ids{identity_functor(mf.base()), identity_functor(mf.base())};
                         std::vector<Functor> tids{identity_functor(mf.total()), identity_functor(mf.total())};
                         auto R = sequential_descent_glue({mf, mf, mf}, ids, tids, b.max_stages);
                         if (R.status != Status::Exact) {
                           return truncated("sequential colimit did not stabilize");
                         }
                         if (!R.result || R.stage != 0 || !all_true(R.recovers)) {
                           return fail("stage " + std::to_string(R.stage));
                         }
                         if (!find_isomorphism(R.result->total(), mf.total())) {
                           return fail("glued total differs from the constant stage");
                         }
                         return pass("stable at stage 0");
                       }});
        out.push_back({"sequential-fibre-then-whole", [b] {
                         Cat     I = interval(), E = walking_idempotent();
                         Functor G{I, E, {0, 0}, {0, 0, 1}};
                         auto    U  = unstraighten(
                             strict_pseudofunctor(I, {I, E}, {identity_functor(I), identity_functor(E), G}));
                         auto S0 = fibre(U.p, 0);
                         auto m0 = mark_fibration(to_terminal(S0.cat));
                         auto R  = sequential_descent_glue({m0, U, U}, {point(I, 0), identity_functor(I)},
                                                           {S0.inclusion, identity_functor(U.total())},
                                                           b.max_stages);
                         if (R.status != Status::Exact) {
                           return truncated("sequential colimit did not stabilize");
                         }
                         if (!R.result || R.stage != 1 || !all_true(R.recovers)) {
                           return fail("stage " + std::to_string(R.stage));
                         }
                         if (!find_equivalence_over(*R.result, U) && !equivalent(R.result->total(), U.total())) {
                           return fail("glued fibration differs from the last stage");
                         }
                         return pass("stable at stage 1");
                       }});
        out.push_back({"groupoid-z2-swap", [] {
                         Cat     Z2  = cyclic_group(2);
                         Cat     D2  = discrete(2);
                         int     sig = Z2->is_identity(0) ? 1 : 0;
                         Functor swap{D2, D2, {1, 0}, {1, 0}};
                         std::vector<Functor> act(2);
                         act[Z2->id(0)] = identity_functor(D2);
                         act[sig]       = swap;
                         auto F = strict_pseudofunctor(Z2, {D2}, act);
                         auto g = groupoid_descent(F);
                         if (g.total()->num_objects() != 2 || g.total()->num_arrows() != 4) {
                           return fail("total has " + std::to_string(g.total()->num_objects()) + " objects and "
                                       + std::to_string(g.total()->num_arrows()) + " arrows");
                         }
                         if (g.cocartesian.size() != 4) {
                           return fail("not every arrow is cocartesian");
                         }
                         if (!(g.transport[sig] == swap)) {
                           return fail("transport along the generator is not the swap");
                         }
                         if (!pseudofunctors_isomorphic(straighten_finite(g), F)) {
                           return fail("straightening does not recover the action");
                         }
                         return pass();
                       }});
        out.push_back({"groupoid-discrete", [] {
                         Cat  I = interval(), J = walking_iso();
                         auto g = groupoid_descent(
                             strict_pseudofunctor(discrete(2), {I, J}, {identity_functor(I), identity_functor(J)}));
                         if (!find_isomorphism(g.total(), coproduct(I, J).cat)) {
                           return fail("total is not the coproduct of the fibres");
                         }
                         try {
                           groupoid_descent(constant_pseudofunctor(I, discrete(2)));
                           return fail("non-groupoid base accepted");
                         } catch (precondition_error const&) {
                         }
                         return pass();
                       }});
        return out;
      };
      return s;
    }

  }  // namespace

  std::vector<Suite> descent_suites() {
    return {descent_localisation(), descent_cocomma(), descent_glue()};
  }

}  // namespace fincat::suites
