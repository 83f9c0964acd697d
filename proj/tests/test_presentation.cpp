#include "doctest.h"

#include "fincat/generate.hpp"
#include "fincat/presentation.hpp"

using namespace fincat;

namespace {

  Presentation one_loop() {
    Presentation P;
    P.add_object("*");
    P.add_generator("e", 0, 0);
    return P;
  }

  // Functors out of a pushout against cocones, counted independently.
  std::size_t cocones(Functor const& f, Functor const& g, Cat const& D) {
    std::size_t n = 0;
    for (auto const& F : all_functors(f.cod, D)) {
      for (auto const& G : all_functors(g.cod, D)) {
        n += compose(F, f) == compose(G, g);
      }
    }
    return n;
  }

  std::size_t inverting_functors(Cat const& C, std::vector<int> const& W, Cat const& D) {
    std::size_t n = 0;
    for (auto const& F : all_functors(C, D)) {
      bool ok = true;
      for (int w : W) {
        ok = ok && is_iso(D, F.arr[w]);
      }
      n += ok;
    }
    return n;
  }

}  // namespace

TEST_CASE("saturate: free arrow, idempotent, free loop") {
  Presentation I;
  I.add_object("0");
  I.add_object("1");
  I.add_generator("f", 0, 1);
  auto r = saturate(I, 4);
  REQUIRE(r.exact());
  CHECK(r.cat->num_arrows() == 3);
  CHECK(find_isomorphism(r.cat, interval()).has_value());

  auto E = one_loop();
  E.add_relation(Word{0, {0, 0}}, Word{0, {0}});
  auto e = saturate(E);
  REQUIRE(e.exact());
  CHECK(e.cat->num_arrows() == 2);
  CHECK(find_isomorphism(e.cat, walking_idempotent()).has_value());

  for (int bound = 1; bound <= 8; ++bound) {
    auto t = saturate(one_loop(), bound);
    CHECK_FALSE(t.exact());
    CHECK(t.normal_forms.size() == static_cast<std::size_t>(bound + 1));
    REQUIRE(t.growth.size() == static_cast<std::size_t>(bound + 1));
    for (std::size_t i = 1; i < t.growth.size(); ++i) {
      CHECK(t.growth[i] > t.growth[i - 1]);
    }
  }
}

TEST_CASE("saturate rejects non-parallel relations and bad bounds") {
  Presentation P;
  P.add_object("0");
  P.add_object("1");
  P.add_generator("f", 0, 1);
  P.add_relation(Word{0, {0}}, Word{0, {}});
  CHECK_THROWS_AS(saturate(P), precondition_error);
  CHECK_THROWS_AS(saturate(one_loop(), 0), precondition_error);
}

TEST_CASE("saturate: finite monoids by presentation") {
  // cyclic group of order n: e^n = 1
  for (int n = 1; n <= 6; ++n) {
    auto P = one_loop();
    P.add_relation(Word{0, std::vector<int>(n, 0)}, Word{0, {}});
    auto r = saturate(P);
    REQUIRE(r.exact());
    CHECK(find_isomorphism(r.cat, cyclic_group(n)).has_value());
  }
  // a^2 = 1, b^2 = 1, (ab)^3 = 1: the symmetric group on three letters
  Presentation S;
  S.add_object("*");
  S.add_generator("a", 0, 0);
  S.add_generator("b", 0, 0);
  S.add_relation(Word{0, {0, 0}}, Word{0, {}});
  S.add_relation(Word{0, {1, 1}}, Word{0, {}});
  S.add_relation(Word{0, {0, 1, 0, 1, 0, 1}}, Word{0, {}});
  auto s = saturate(S);
  REQUIRE(s.exact());
  CHECK(s.cat->num_arrows() == 6);
  CHECK(is_groupoid(s.cat));
}

TEST_CASE("normal forms are irreducible and reduction is idempotent") {
  Presentation S;
  S.add_object("*");
  S.add_generator("a", 0, 0);
  S.add_generator("b", 0, 0);
  S.add_relation(Word{0, {0, 0, 0}}, Word{0, {}});
  S.add_relation(Word{0, {1, 1}}, Word{0, {}});
  S.add_relation(Word{0, {0, 1}}, Word{0, {1, 0, 0}});
  auto r = saturate(S);
  REQUIRE(r.exact());
  for (auto const& w : r.normal_forms) {
    CHECK_FALSE(r.rules.is_reducible(w.gens));
    CHECK(r.normal_form(w) == w);
  }
  for (auto const& rel : S.relations) {
    CHECK(r.normal_form(rel.lhs) == r.normal_form(rel.rhs));
  }
}

TEST_CASE("saturation of a tautological presentation returns the category") {
  for (auto const& C : {interval(), walking_idempotent(), section_retraction(), walking_iso(),
                        poset_chain(3), cyclic_group(4), parallel_pair()}) {
    auto r = saturate(tautological(C));
    REQUIRE(r.exact());
    CHECK(find_isomorphism(r.cat, C).has_value());
  }
  for (std::uint64_t s = 0; s < 40; ++s) {
    auto C = random_fincat(s);
    auto r = saturate(tautological(C));
    REQUIRE(r.exact());
    CHECK(find_isomorphism(r.cat, C).has_value());
    // and once more on the output
    auto again = saturate(tautological(r.cat), r.bound);
    REQUIRE(again.exact());
    CHECK(find_isomorphism(again.cat, r.cat).has_value());
  }
}

TEST_CASE("pushout examples") {
  auto I = interval();
  {
    auto r = pushout(from_empty(I), from_empty(walking_idempotent()));
    REQUIRE(r.sat.exact());
    CHECK(find_isomorphism(r.sat.cat, coproduct(I, walking_idempotent()).cat).has_value());
  }
  {
    auto one = terminal();
    auto r   = pushout(Functor{one, I, {1}, {1}}, Functor{one, I, {0}, {0}});
    REQUIRE(r.sat.exact());
    CHECK(r.sat.cat->num_arrows() == 6);
    CHECK(find_isomorphism(r.sat.cat, poset_chain(2)).has_value());
  }
  for (auto const& C : {I, section_retraction(), cyclic_group(3)}) {
    auto id = identity_functor(C);
    auto r  = pushout(id, id);
    REQUIRE(r.sat.exact());
    CHECK(find_isomorphism(r.sat.cat, C).has_value());
  }
}

TEST_CASE("pushout coprojections form a commuting square") {
  auto I   = interval();
  auto one = terminal();
  Functor f{one, I, {1}, {1}};
  Functor g{one, walking_idempotent(), {0}, {0}};
  auto    r = pushout(f, g);
  REQUIRE(r.sat.exact());
  auto inl = realize(f.cod, r.sat, r.inl);
  auto inr = realize(g.cod, r.sat, r.inr);
  CHECK(!check_functor(inl));
  CHECK(!check_functor(inr));
  CHECK(compose(inl, f) == compose(inr, g));
}

TEST_CASE("pushout mapping-out property against all small categories") {
  auto targets = enumerate_small_categories(3, 4);
  auto I       = interval();
  auto one     = terminal();
  auto two     = discrete(2);
  std::vector<std::pair<Functor, Functor>> spans{
      {Functor{one, I, {1}, {1}}, Functor{one, I, {0}, {0}}},
      {Functor{one, I, {0}, {0}}, Functor{one, walking_idempotent(), {0}, {0}}},
      {Functor{two, I, {0, 1}, {0, 1}}, Functor{two, I, {0, 1}, {0, 1}}},
      {from_empty(I), from_empty(I)},
  };
  // gluing both endpoints of the interval to one point is the free loop
  CHECK_FALSE(pushout(to_terminal(two), Functor{two, I, {0, 1}, {0, 1}}).sat.exact());
  for (auto const& [f, g] : spans) {
    auto r = pushout(f, g);
    REQUIRE(r.sat.exact());
    for (auto const& D : targets) {
      CHECK(all_functors(r.sat.cat, D).size() == cocones(f, g, D));
    }
  }
}

TEST_CASE("cocomma examples") {
  auto one = terminal();
  auto id1 = identity_functor(one);
  auto c   = cocomma(id1, id1);
  REQUIRE(c.sat.exact());
  CHECK(c.sat.cat->num_arrows() == 3);
  CHECK(find_isomorphism(c.sat.cat, interval()).has_value());

  auto e = cocomma(from_empty(interval()), from_empty(walking_idempotent()));
  REQUIRE(e.sat.exact());
  CHECK(find_isomorphism(e.sat.cat, coproduct(interval(), walking_idempotent()).cat).has_value());

  for (auto const& A : {interval(), walking_idempotent(), section_retraction(), poset_chain(2),
                        parallel_pair()}) {
    auto idA = identity_functor(A);
    auto r   = cocomma(idA, idA);
    REQUIRE(r.sat.exact());
    CHECK(find_isomorphism(r.sat.cat, product(A, interval()).cat).has_value());
  }
}

TEST_CASE("cocomma inclusions are fully faithful") {
  Rng rng(11);
  int exact = 0;
  for (int t = 0; t < 30; ++t) {
    FinCatParams p;
    p.max_objects  = 2;
    p.max_set_size = 2;
    p.max_arrows   = 8;
    auto A = random_fincat(rng, p);
    auto B = random_fincat(rng, p);
    auto C = random_fincat(rng, p);
    auto f = random_functor(rng, A, B);
    auto g = random_functor(rng, A, C);
    if (!f || !g) {
      continue;
    }
    auto r = cocomma(*f, *g);
    if (!r.sat.exact()) {
      continue;
    }
    ++exact;
    auto k = realize(B, r.sat, r.k);
    auto l = realize(C, r.sat, r.l);
    CHECK(is_fully_faithful(k));
    CHECK(is_fully_faithful(l));
    // the generating 2-cell is natural
    for (std::size_t a = 0; a < A->num_arrows(); ++a) {
      int u = static_cast<int>(a);
      int s = r.sat.arrow_of(r.sat.pres.single(r.alpha[A->src(u)]));
      int t2 = r.sat.arrow_of(r.sat.pres.single(r.alpha[A->tgt(u)]));
      CHECK(r.sat.cat->compose(t2, k.arr[f->arr[u]]) == r.sat.cat->compose(l.arr[g->arr[u]], s));
    }
  }
  CHECK(exact >= 10);
}

TEST_CASE("localize examples") {
  auto I = interval();
  {
    auto r = localize({I, {}});
    REQUIRE(r.sat.exact());
    CHECK(find_isomorphism(r.sat.cat, I).has_value());
  }
  {
    LocalisationSpec spec{I, {2}};
    auto             r = localize(spec);
    REQUIRE(r.sat.exact());
    CHECK(r.sat.cat->num_objects() == 2);
    CHECK(r.sat.cat->num_arrows() == 4);
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        CHECK(r.sat.cat->hom(x, y).size() == 1);
      }
    }
    CHECK(is_groupoid(r.sat.cat));
    CHECK_FALSE(check_localisation(spec, r));
  }
  {
    // x => y inverting one arrow: hom(y, y) is the free monoid on the
    // other arrow followed by the inverse, one new word every two letters
    auto P = parallel_pair();
    int  f = P->find_arrow("a");
    int  y = P->find_object("y");
    for (int bound = 2; bound <= 10; bound += 2) {
      auto r = localize({P, {f}}, bound);
      CHECK_FALSE(r.sat.exact());
      CHECK(r.sat.confluent);
      CHECK(r.sat.hom_count(y, y) == static_cast<std::size_t>(bound / 2 + 1));
    }
  }
}

TEST_CASE("localisation universal property on small targets") {
  auto targets = enumerate_small_categories(3, 4);
  std::vector<LocalisationSpec> specs{
      {interval(), {2}},
      {walking_idempotent(), {1}},
      {section_retraction(), {section_retraction()->find_arrow("r")}},
      {poset_chain(2), {3}},
      {section_retraction(), {}},
  };
  for (auto const& spec : specs) {
    auto r = localize(spec);
    REQUIRE(r.sat.exact());
    CHECK_FALSE(check_localisation(spec, r));
    auto i = realize(spec.base, r.sat, r.i);
    for (auto const& D : targets) {
      // every functor out of the localisation restricts to a W-inverting one,
      // and restriction is a bijection
      auto out = all_functors(r.sat.cat, D);
      CHECK(out.size() == inverting_functors(spec.base, spec.W, D));
      for (std::size_t a = 0; a < out.size(); ++a) {
        for (std::size_t b = a + 1; b < out.size(); ++b) {
          CHECK_FALSE(compose(out[a], i) == compose(out[b], i));
        }
      }
    }
  }
}

TEST_CASE("localisation inverts more than W when forced") {
  // inverting the retraction makes the section its inverse and the idempotent
  // an identity
  auto             S = section_retraction();
  LocalisationSpec spec{S, {S->find_arrow("r")}};
  auto             r = localize(spec);
  REQUIRE(r.sat.exact());
  CHECK(inverted_arrows(spec, r).size() == S->num_arrows());
  CHECK(equivalent(r.sat.cat, terminal()));
}

TEST_CASE("sequential colimits") {
  auto I  = interval();
  auto id = identity_functor(I);
  auto c  = sequential_colimit({I, I, I}, {id, id});
  REQUIRE(c.status == Status::Exact);
  CHECK(c.stage == 0);
  CHECK(c.cocone.size() == 3);

  std::vector<Cat>     stages;
  std::vector<Functor> links;
  for (int n = 1; n <= 5; ++n) {
    stages.push_back(discrete(n));
  }
  for (int n = 1; n < 5; ++n) {
    Functor inc{stages[n - 1], stages[n], {}, {}};
    for (int x = 0; x < n; ++x) {
      inc.obj.push_back(x);
      inc.arr.push_back(x);
    }
    links.push_back(inc);
  }
  auto d = sequential_colimit(stages, links);
  CHECK(d.status == Status::Truncated);
  CHECK(d.growth == std::vector<std::size_t>{1, 2, 3, 4, 5});

  // identical from stage 2 on
  auto S  = section_retraction();
  auto E  = walking_idempotent();
  Functor ei{E, S, {1}, {1, S->find_arrow("t")}};
  auto    ids = identity_functor(S);
  auto    s   = sequential_colimit({E, S, S, S}, {ei, ids, ids});
  REQUIRE(s.status == Status::Exact);
  CHECK(s.stage == 1);
  CHECK(s.colimit == S);
  for (std::size_t i = 0; i < s.cocone.size(); ++i) {
    CHECK(!check_functor(s.cocone[i]));
  }
  auto t = sequential_colimit({E, E, S, S, S}, {identity_functor(E), ei, ids, ids});
  REQUIRE(t.status == Status::Exact);
  CHECK(t.stage == 2);
  CHECK_THROWS_AS(sequential_colimit({E, S}, {}), precondition_error);
}
