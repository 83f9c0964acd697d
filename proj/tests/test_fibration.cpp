#include <doctest.h>

#include <algorithm>
#include <set>

#include "fincat/fibration.hpp"
#include "fincat/generate.hpp"

using namespace fincat;

namespace {

  // Projection B x F -> B.
  Functor product_projection(Cat const& B, Cat const& F) {
    return product(B, F).first;
  }

  // dom : Ar(C) -> C.
  Functor dom_projection(Cat const& C) {
    FunctorCategory ar = functor_category(interval(), C);
    Functor         d{ar.cat, C, {}, {}};
    for (auto const& F : ar.objects) {
      d.obj.push_back(F.obj[0]);
    }
    for (auto const& t : ar.arrows) {
      d.arr.push_back(t.comp[0]);
    }
    return d;
  }

  // A functor from a fibre category of an unstraightening, identified by index
  // with the input fibre.
  bool index_identity_is_iso(Cat const& A, Cat const& B) {
    if (A->num_objects() != B->num_objects() || A->num_arrows() != B->num_arrows()) {
      return false;
    }
    Functor F{A, B, {}, {}};
    for (std::size_t x = 0; x < A->num_objects(); ++x) {
      F.obj.push_back(static_cast<int>(x));
    }
    for (std::size_t a = 0; a < A->num_arrows(); ++a) {
      F.arr.push_back(static_cast<int>(a));
    }
    return !check_functor(F) && is_isomorphism(F);
  }

  OpfibrationParams small_params() {
    OpfibrationParams p;
    p.base = FinCatParams{3, 2, 3, 10};
    return p;
  }

}  // namespace

TEST_CASE("left and right fibrations") {
  Cat   C = poset_chain(2);
  Comma cc = comma(point(C, 0), identity_functor(C));
  CHECK(is_left_fibration(cc.cod_proj));
  CHECK(is_left_fibration(product_projection(interval(), discrete(2))));
  CHECK(is_right_fibration(product_projection(interval(), discrete(2))));
  CHECK_FALSE(is_left_fibration(to_terminal(interval())));
  Comma sl = comma(identity_functor(C), point(C, 1));
  CHECK(is_right_fibration(sl.dom_proj));
  CHECK_FALSE(is_left_fibration(sl.dom_proj));
}

TEST_CASE("left cofinal functors and the factorization") {
  Cat C = poset_chain(2);
  CHECK(is_left_cofinal(point(C, 0)));
  CHECK_FALSE(is_left_cofinal(point(interval(), 1)));
  CHECK(is_left_cofinal(identity_functor(C)));

  auto F = cofinal_factorization(identity_functor(C));
  CHECK(is_isomorphism(F.fibration));
  CHECK(F.middle->num_arrows() == C->num_arrows());

  // F = fibration . cofinal, cofinal part cofinal, fibration part discrete
  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    Cat  A = random_fincat(rng, FinCatParams{3, 2, 3, 10});
    Cat  D = random_fincat(rng, FinCatParams{3, 2, 3, 10});
    auto G = random_functor(rng, A, D);
    if (!G) {
      continue;
    }
    auto R = cofinal_factorization(*G);
    CHECK_FALSE(check_functor(R.cofinal));
    CHECK_FALSE(check_functor(R.fibration));
    CHECK(compose(R.fibration, R.cofinal) == *G);
    CHECK(is_left_fibration(R.fibration));
    CHECK(is_left_cofinal(R.cofinal));
  }
}

TEST_CASE("cocartesian arrows of a product projection are the isomorphism components") {
  for (Cat F : {walking_idempotent(), section_retraction(), walking_iso(), interval()}) {
    Span2 P = product(interval(), F);
    std::vector<int> expected;
    for (std::size_t a = 0; a < P.cat->num_arrows(); ++a) {
      if (is_iso(F, P.second.arr[a])) {
        expected.push_back(static_cast<int>(a));
      }
    }
    CHECK(cocartesian_arrows(P.first) == expected);
    auto v = is_cocartesian_fibration(P.first);
    REQUIRE(v.ok());
    CHECK_FALSE(check_marked_fibration(*v.fibration));
    // transports are identities on the F factor
    for (auto const& T : v.fibration->transport) {
      CHECK(T == identity_functor(T.dom));
    }
  }
}

TEST_CASE("identity and domain projections are cocartesian fibrations") {
  auto id = is_cocartesian_fibration(identity_functor(section_retraction()));
  REQUIRE(id.ok());
  CHECK(id.fibration->cocartesian.size() == section_retraction()->num_arrows());

  auto d = is_cocartesian_fibration(dom_projection(interval()));
  REQUIRE(d.ok());
  // straightening sends c to c | I: two objects over 0, one over 1
  auto S = straighten_finite(*d.fibration);
  CHECK(equivalent(S.fibre[0], comma(point(interval(), 0), identity_functor(interval())).cat));
  CHECK(equivalent(S.fibre[1], comma(point(interval(), 1), identity_functor(interval())).cat));

  // a functor with no lift
  Functor q{interval(), interval(), {0, 0}, {0, 0, 0}};
  auto    v = is_cocartesian_fibration(q);
  CHECK_FALSE(v.ok());
  Functor p = point(interval(), 0);
  auto    w = is_cocartesian_fibration(p);
  REQUIRE_FALSE(w.ok());
  CHECK(w.witness->second == interval()->find_arrow("f"));
}

TEST_CASE("cocartesian lifts are unique up to unique vertical isomorphism") {
  Rng rng(11);
  for (int i = 0; i < 15; ++i) {
    auto        G  = random_opfibration(rng, small_params());
    auto const& mf = G.fibration;
    auto const& E  = *mf.total();
    for (int a : mf.cocartesian) {
      for (int b : mf.cocartesian) {
        if (E.src(a) != E.src(b) || mf.p.arr[a] != mf.p.arr[b]) {
          continue;
        }
        int n = 0;
        for (int k : E.hom(E.tgt(a), E.tgt(b))) {
          n += mf.p.arr[k] == mf.base()->id(mf.p.obj[E.tgt(a)]) && E.compose(k, a) == b
               && is_iso(mf.total(), k);
        }
        CHECK(n == 1);
      }
    }
  }
}

TEST_CASE("transport along identities and composites") {
  Rng rng(3);
  for (int i = 0; i < 15; ++i) {
    auto        G  = random_opfibration(rng, small_params());
    auto const& mf = G.fibration;
    auto const& B  = *mf.base();
    CHECK_FALSE(check_marked_fibration(mf));
    for (std::size_t c = 0; c < B.num_objects(); ++c) {
      auto const& T = mf.transport[B.id(static_cast<int>(c))];
      CHECK(T == identity_functor(T.dom));
    }
    for (std::size_t f = 0; f < B.num_arrows(); ++f) {
      for (int g : B.out(B.tgt(static_cast<int>(f)))) {
        CHECK(naturally_isomorphic(compose(mf.transport[g], mf.transport[f]),
                                   mf.transport[B.compose(g, static_cast<int>(f))]));
      }
    }
  }
}

TEST_CASE("unstraightening examples") {
  // constant functor over the point is the projection to the point
  auto c = unstraighten(constant_pseudofunctor(terminal(), section_retraction()));
  CHECK(find_isomorphism(c.total(), section_retraction()).has_value());

  // strict functor on the interval picking G : A -> B
  Cat     A = interval(), B = walking_idempotent();
  Functor G{A, B, {0, 0}, {0, 0, B->find_arrow("e")}};
  REQUIRE_FALSE(check_functor(G));
  auto F  = strict_pseudofunctor(interval(), {A, B},
                                 {identity_functor(A), identity_functor(B), G});
  auto mf = unstraighten(F);
  CHECK(index_identity_is_iso(mf.fibres.fibre[0].cat, A));
  CHECK(index_identity_is_iso(mf.fibres.fibre[1].cat, B));
  CHECK(pseudofunctors_isomorphic(straighten_finite(mf), F));
  // arrows: fibres plus heteromorphisms G(x) -> y, one per x and arrow of B out of G(x)
  CHECK(mf.total()->num_arrows() == A->num_arrows() + B->num_arrows() + 2 * 2);

  // discrete base gives the disjoint union of fibres
  auto d = unstraighten(strict_pseudofunctor(
      discrete(2), {interval(), walking_iso()},
      {identity_functor(interval()), identity_functor(walking_iso())}));
  CHECK(find_isomorphism(d.total(), coproduct(interval(), walking_iso()).cat).has_value());

  // a non-functorial action is rejected
  Functor bad{A, B, {0, 0}, {0, 0, 0}};
  bad.arr[2] = B->find_arrow("e");
  auto P = strict_pseudofunctor(poset_chain(2), {A, A, B},
                                {identity_functor(A), identity_functor(A), identity_functor(B),
                                 identity_functor(A), bad, G});
  CHECK(check_pseudofunctor(P).has_value());
  CHECK_THROWS_AS(unstraighten(P), law_error);
}

TEST_CASE("straightening roundtrip on seeded opfibrations") {
  Rng rng(2024);
  for (int i = 0; i < 20; ++i) {
    OpfibrationParams p = small_params();
    p.base.max_objects  = 4;
    auto G              = random_opfibration(rng, p);
    auto K              = straightening_comparison(G.fibration);
    CHECK_FALSE(check_functor(K));
    CHECK(is_isomorphism(K));
    auto U = unstraighten(straighten_finite(G.fibration));
    CHECK(compose(G.fibration.p, K) == U.p);
    CHECK(pseudofunctors_isomorphic(straighten_finite(G.fibration), G.functor));
    CHECK_FALSE(check_pseudofunctor(straighten_finite(G.fibration)));
  }
}

TEST_CASE("conduche condition") {
  CHECK(is_conduche(identity_functor(section_retraction())));

  // x -> z over 0 < 2 with nothing over 1
  Cat     C = poset_chain(2);
  Functor p{interval(), C, {0, 2}, {C->id(0), C->id(2), C->find_arrow("0<2")}};
  REQUIRE_FALSE(check_functor(p));
  CHECK_FALSE(is_conduche(p));

  Rng rng(5);
  for (int i = 0; i < 25; ++i) {
    CHECK(is_conduche(random_opfibration(rng, small_params()).fibration.p));
  }
}

TEST_CASE("inverting W") {
  auto prod = mark_fibration(product_projection(interval(), walking_idempotent()));
  CHECK(inverts_W(prod, {}));
  CHECK(inverts_W(prod, {interval()->find_arrow("f")}));
  CHECK(conduche_inverts_W(prod.p, {}));

  Rng rng(9);
  int checked = 0;
  for (int i = 0; i < 30; ++i) {
    OpfibrationParams p = small_params();
    p.invertible_arrows = 1;
    auto G              = random_opfibration(rng, p);
    CHECK(inverts_W(G.fibration, G.W));
    for (int w : G.W) {
      CHECK(invertible_transport_check(G.fibration, w));
      ++checked;
    }
  }
  CHECK(checked >= 25);

  auto G = random_opfibration(1, small_params());
  for (std::size_t f = 0; f < G.fibration.base()->num_arrows(); ++f) {
    if (!is_equivalence(G.fibration.transport[f])) {
      CHECK_THROWS_AS(invertible_transport_check(G.fibration, static_cast<int>(f)),
                      precondition_error);
    }
  }
}

TEST_CASE("the Delta3 fixture is Conduche but not an opfibration") {
  Functor q = delta3_conduche();
  CHECK_FALSE(check_functor(q));
  CHECK(q.dom->num_objects() == 6);
  CHECK(is_conduche(q));
  CHECK(conduche_inverts_W(q, delta3_W()));
  CHECK_FALSE(is_cocartesian_fibration(q).ok());
  CHECK(equivalent(fibre(q, 0).cat, walking_idempotent()));
  CHECK(equivalent(fibre(q, 1).cat, section_retraction()));
  CHECK_FALSE(equivalent(walking_idempotent(), section_retraction()));
}

TEST_CASE("localizing a product fibration") {
  Cat  F  = section_retraction();
  auto mf = mark_fibration(product_projection(interval(), F));
  int  f  = interval()->find_arrow("f");

  auto L0 = localize_fibration(mf, {});
  REQUIRE(L0.verified());
  CHECK(is_isomorphism(L0.i_total));

  auto L = localize_fibration(mf, {f});
  REQUIRE(L.verified());
  CHECK(equivalent(L.base.sat.cat, walking_iso()));
  CHECK(equivalent(L.result->total(), product(walking_iso(), F).cat));
  auto const& E = *mf.total();
  for (std::size_t x = 0; x < E.num_objects(); ++x) {
    for (std::size_t y = 0; y < E.num_objects(); ++y) {
      CHECK(mapping_square_a(L, static_cast<int>(x), static_cast<int>(y)));
      for (int c = 0; c < 2; ++c) {
        CHECK(mapping_square_b(L, static_cast<int>(x), static_cast<int>(y), c));
      }
    }
  }
  CHECK(mapping_square_a(L0, 0, 1));
  CHECK(descent_localisation_check(mf, {f}).ok());
  CHECK(descent_localisation_check(mf, {}).ok());
}

TEST_CASE("localizing seeded fibrations") {
  Rng rng(77);
  int verified = 0;
  for (int i = 0; i < 12; ++i) {
    OpfibrationParams p = small_params();
    p.base              = FinCatParams{3, 2, 2, 8};
    p.invertible_arrows = 1;
    auto G              = random_opfibration(rng, p);
    auto L              = localize_fibration(G.fibration, G.W);
    if (L.status != Status::Exact) {
      continue;
    }
    CHECK(L.verified());
    ++verified;
    auto const& E = *G.fibration.total();
    for (std::size_t x = 0; x < E.num_objects(); ++x) {
      for (std::size_t y = 0; y < E.num_objects(); ++y) {
        CHECK(mapping_square_a(L, static_cast<int>(x), static_cast<int>(y)));
        for (std::size_t c = 0; c < G.fibration.base()->num_objects(); ++c) {
          CHECK(mapping_square_b(L, static_cast<int>(x), static_cast<int>(y), static_cast<int>(c)));
        }
      }
    }
  }
  CHECK(verified >= 8);
  CHECK_THROWS_AS(localize_fibration(mark_fibration(dom_projection(interval())),
                                     {interval()->find_arrow("f")}),
                  precondition_error);
}

TEST_CASE("cocomma of fibrations") {
  // A = B = C = 1, phi : F -> G a functor
  Cat     F = interval(), Gc = walking_idempotent();
  auto    p = unstraighten(constant_pseudofunctor(terminal(), F));
  auto    q = unstraighten(constant_pseudofunctor(terminal(), Gc));
  Functor phi{pullback(identity_functor(terminal()), p.p).cat,
              pullback(identity_functor(terminal()), q.p).cat, {0, 0}, {0, 0, 0}};
  phi.arr[2] = Gc->find_arrow("e");
  CocommaSpan s{p, q, identity_functor(terminal()), identity_functor(terminal()), phi};
  auto        R = cocomma_fibration(s);
  REQUIRE(R.verified());
  CHECK(equivalent(R.base.sat.cat, interval()));
  Functor G{F, Gc, phi.obj, phi.arr};
  auto    U = unstraighten(strict_pseudofunctor(interval(), {F, Gc},
                                                {identity_functor(F), identity_functor(Gc), G}));
  CHECK(find_equivalence(R.result->total(), U.total()).has_value());

  // empty apex: disjoint union
  CocommaSpan e{p, q, from_empty(terminal()), from_empty(terminal()),
                Functor{empty_cat(), empty_cat(), {}, {}}};
  auto        D = cocomma_fibration(e);
  REQUIRE(D.verified());
  CHECK(find_isomorphism(D.result->total(), coproduct(F, Gc).cat).has_value());
}

TEST_CASE("sequential and groupoid descent") {
  auto                         mf = mark_fibration(product_projection(interval(), walking_iso()));
  std::vector<MarkedFibration> stages{mf, mf, mf};
  std::vector<Functor>         ids{identity_functor(mf.base()), identity_functor(mf.base())};
  std::vector<Functor>         tids{identity_functor(mf.total()), identity_functor(mf.total())};
  auto                         R = sequential_descent_glue(stages, ids, tids);
  REQUIRE(R.status == Status::Exact);
  REQUIRE(R.result);
  CHECK(R.stage == 0);
  CHECK(std::all_of(R.recovers.begin(), R.recovers.end(), [](bool b) { return b; }));

  // stage 0 the fibre over 0, then the whole fibration
  Functor G{interval(), walking_idempotent(), {0, 0}, {0, 0, 1}};
  auto    U  = unstraighten(strict_pseudofunctor(
      interval(), {interval(), walking_idempotent()},
      {identity_functor(interval()), identity_functor(walking_idempotent()), G}));
  auto    S0 = fibre(U.p, 0);
  auto    m0 = mark_fibration(to_terminal(S0.cat));
  auto    R2 = sequential_descent_glue({m0, U, U}, {point(interval(), 0), identity_functor(interval())},
                                       {S0.inclusion, identity_functor(U.total())});
  REQUIRE(R2.status == Status::Exact);
  CHECK(R2.stage == 1);
  CHECK(std::all_of(R2.recovers.begin(), R2.recovers.end(), [](bool b) { return b; }));

  // the order two group swapping a two-object discrete fibre
  Cat     Z2  = cyclic_group(2);
  Cat     D2  = discrete(2);
  int     sig = Z2->is_identity(0) ? 1 : 0;
  Functor swap{D2, D2, {1, 0}, {1, 0}};
  std::vector<Functor> act(2);
  act[Z2->id(0)] = identity_functor(D2);
  act[sig]       = swap;
  auto g = groupoid_descent(strict_pseudofunctor(Z2, {D2}, act));
  CHECK(g.total()->num_objects() == 2);
  CHECK(g.total()->num_arrows() == 4);
  CHECK(g.cocartesian.size() == 4);
  CHECK(index_identity_is_iso(g.fibres.fibre[0].cat, D2));
  CHECK(g.transport[sig] == swap);

  auto dd = groupoid_descent(strict_pseudofunctor(
      discrete(2), {interval(), walking_iso()},
      {identity_functor(interval()), identity_functor(walking_iso())}));
  CHECK(find_isomorphism(dd.total(), coproduct(interval(), walking_iso()).cat).has_value());
  CHECK_THROWS_AS(groupoid_descent(constant_pseudofunctor(interval(), D2)), precondition_error);
}

TEST_CASE("generator is deterministic per seed") {
  auto a = random_opfibration(42, small_params());
  auto b = random_opfibration(42, small_params());
  CHECK(a.fibration.p == b.fibration.p);
  CHECK(a.fibration.total()->num_arrows() == b.fibration.total()->num_arrows());
}
