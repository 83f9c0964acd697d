#include <doctest.h>

#include <map>
#include <set>

#include "fincat/generate.hpp"
#include "fincat/presentation.hpp"
#include "fincat/presheaf.hpp"

using namespace fincat;

namespace {

  Presheaf random_presheaf(Rng& rng, Cat const& C) {
    Presheaf P = empty_presheaf(C);
    int      n = C->num_objects() == 0 ? 0 : uniform(rng, 0, 2);
    for (int i = 0; i < n; ++i) {
      P = coproduct(P, yoneda(C, uniform(rng, 0, static_cast<int>(C->num_objects()) - 1)));
    }
    if (uniform(rng, 0, 2) == 0) {
      P = coproduct(P, terminal_presheaf(C));
    }
    return P;
  }

  std::size_t count_maps(Presheaf const& P, Presheaf const& Q) {
    std::size_t n = 0;
    enumerate_presheaf_maps(P, Q, [&](PresheafMap const&) {
      ++n;
      return true;
    });
    return n;
  }

  // Natural maps by trying every family of functions, for tiny presheaves.
  std::size_t brute_count_maps(Presheaf const& P, Presheaf const& Q) {
    auto const&                   C = *P.base;
    std::vector<std::vector<int>> comp;
    std::size_t                   n = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t x) {
      if (x == C.num_objects()) {
        n += !check_presheaf_map(P, Q, PresheafMap{comp}).has_value();
        return;
      }
      std::vector<int> f(P.size[x], 0);
      if (P.size[x] > 0 && Q.size[x] == 0) {
        return;
      }
      while (true) {
        comp.push_back(f);
        rec(x + 1);
        comp.pop_back();
        std::size_t i = 0;
        while (i < f.size() && ++f[i] == Q.size[x]) {
          f[i++] = 0;
        }
        if (i == f.size()) {
          return;
        }
      }
    };
    rec(0);
    return n;
  }

  // Classes of Q(x) + R(x) under f(e) ~ g(e), by depth-first search.
  int brute_pushout_size(int nq, int nr, std::vector<int> const& f, std::vector<int> const& g) {
    std::vector<std::vector<int>> adj(nq + nr);
    for (std::size_t e = 0; e < f.size(); ++e) {
      adj[f[e]].push_back(nq + g[e]);
      adj[nq + g[e]].push_back(f[e]);
    }
    std::vector<bool> seen(nq + nr);
    int               classes = 0;
    for (int s = 0; s < nq + nr; ++s) {
      if (seen[s]) {
        continue;
      }
      ++classes;
      std::vector<int> stack{s};
      seen[s] = true;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v]) {
          if (!seen[w]) {
            seen[w] = true;
            stack.push_back(w);
          }
        }
      }
    }
    return classes;
  }

  std::vector<Cat> small_cats() {
    static std::vector<Cat> cats = enumerate_small_categories(3, 4);
    return cats;
  }

  // Cocartesian lifts of f for the first projection: identity in the second factor.
  std::vector<int> cocartesian_lifts(Span2 const& P, int f) {
    std::vector<int> lifts;
    for (std::size_t a = 0; a < P.cat->num_arrows(); ++a) {
      if (P.first.arr[a] == f && P.second.cod->is_identity(P.second.arr[a])) {
        lifts.push_back(static_cast<int>(a));
      }
    }
    return lifts;
  }

}  // namespace

TEST_CASE("presheaf laws are checked") {
  Cat      I = interval();
  Presheaf P = yoneda(I, 1);
  CHECK_FALSE(check_presheaf(P).has_value());
  CHECK(P.size == std::vector<int>{1, 1});
  int      f = I->find_arrow("f");
  Presheaf bad = P;
  bad.act[f] = {1};
  CHECK(check_presheaf(bad)->law == "restriction leaves its codomain");
  bad.act[f] = {0};
  bad.act[I->id(1)] = {0};
  bad.size[0] = 2;
  bad.act[I->id(0)] = {1, 0};
  CHECK(check_presheaf(bad)->law == "identity does not act trivially");
  Copresheaf Q{I, {2, 1}, std::vector<std::vector<int>>(3)};
  Q.act[I->id(0)] = {0, 1};
  Q.act[I->id(1)] = {0};
  Q.act[f]        = {0, 0};
  CHECK_FALSE(check_presheaf(as_presheaf(Q)).has_value());
}

TEST_CASE("natural map enumeration agrees with brute force") {
  Rng rng(11);
  for (auto const& C : small_cats()) {
    for (int t = 0; t < 2; ++t) {
      Presheaf P = random_presheaf(rng, C), Q = random_presheaf(rng, C);
      if (P.total() > 5 || Q.total() > 5) {
        continue;
      }
      CHECK(count_maps(P, Q) == brute_count_maps(P, Q));
    }
  }
}

TEST_CASE("yoneda lemma: maps out of a representable are elements") {
  Rng rng(5);
  for (auto const& C : small_cats()) {
    Presheaf P = random_presheaf(rng, C);
    for (std::size_t c = 0; c < C->num_objects(); ++c) {
      CHECK(count_maps(yoneda(C, static_cast<int>(c)), P) == static_cast<std::size_t>(P.size[c]));
    }
  }
}

TEST_CASE("elements form a discrete fibration") {
  Cat      I = interval();
  Presheaf P = coproduct(yoneda(I, 1), terminal_presheaf(I));
  Elements el = elements(P);
  CHECK(el.cat->num_objects() == P.total());
  CHECK_FALSE(check_functor(el.proj).has_value());
  // unique lift of each arrow with a given target
  for (std::size_t t = 0; t < el.cat->num_objects(); ++t) {
    for (std::size_t a = 0; a < I->num_arrows(); ++a) {
      if (I->tgt(static_cast<int>(a)) != el.proj.obj[t]) {
        continue;
      }
      int lifts = 0;
      for (int b : el.cat->in(static_cast<int>(t))) {
        lifts += el.proj.arr[b] == static_cast<int>(a);
      }
      CHECK(lifts == 1);
    }
  }
}

TEST_CASE("restrict examples") {
  Cat      I = interval();
  Presheaf P = yoneda(I, 1);
  CHECK(restrict(identity_functor(I), P) == P);
  CHECK(restrict(point(I, 0), P).size == std::vector<int>{1});
  CHECK(restrict(point(I, 1), P).size == std::vector<int>{1});
}

TEST_CASE("lan examples") {
  Cat I = interval();
  Lan L = lan(point(I, 0), terminal_presheaf(terminal()));
  CHECK(L.value.size == std::vector<int>{1, 0});
  CHECK_FALSE(check_presheaf(L.value).has_value());

  Rng rng(3);
  for (auto const& C : small_cats()) {
    Presheaf P = random_presheaf(rng, C);
    CHECK(find_presheaf_iso(lan(identity_functor(C), P).value, P).has_value());
  }
}

TEST_CASE("lan of a representable is representable") {
  Rng  rng(17);
  auto cats = small_cats();
  for (int t = 0; t < 60; ++t) {
    Cat  C = cats[uniform(rng, 0, static_cast<int>(cats.size()) - 1)];
    Cat  D = cats[uniform(rng, 0, static_cast<int>(cats.size()) - 1)];
    auto F = random_functor(rng, C, D);
    if (!F || C->num_objects() == 0) {
      continue;
    }
    int c = uniform(rng, 0, static_cast<int>(C->num_objects()) - 1);
    CHECK(find_presheaf_iso(lan(*F, yoneda(C, c)).value, yoneda(D, F->obj[c])).has_value());
  }
}

TEST_CASE("lan is left adjoint to restrict") {
  Rng  rng(23);
  auto cats = small_cats();
  int  checked = 0;
  for (auto const& C : cats) {
    for (auto const& D : cats) {
      if (C->num_objects() == 0 || D->num_objects() == 0 || uniform(rng, 0, 3) != 0) {
        continue;
      }
      auto F = random_functor(rng, C, D);
      if (!F) {
        continue;
      }
      Presheaf P = random_presheaf(rng, C), Q = random_presheaf(rng, D);
      Lan      L = lan(*F, P);
      REQUIRE_FALSE(check_presheaf(L.value).has_value());
      CHECK(count_maps(L.value, Q) == count_maps(P, restrict(*F, Q)));

      // triangle identities
      Lan         LL  = lan(*F, restrict(*F, L.value));
      PresheafMap tri = compose(lan_counit(LL, L.value), lan_map(L, LL, lan_unit(L)));
      CHECK(tri == identity_map(L.value));
      Lan         LQ  = lan(*F, restrict(*F, Q));
      PresheafMap tri2 = compose(restrict(*F, lan_counit(LQ, Q)), lan_unit(LQ));
      CHECK(tri2 == identity_map(restrict(*F, Q)));
      CHECK_FALSE(check_presheaf_map(P, restrict(*F, L.value), lan_unit(L)).has_value());
      CHECK_FALSE(check_presheaf_map(LQ.value, Q, lan_counit(LQ, Q)).has_value());
      ++checked;
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("lan along a composite") {
  Rng  rng(29);
  auto cats = small_cats();
  int  checked = 0;
  for (int t = 0; t < 80 && checked < 25; ++t) {
    Cat  A = cats[uniform(rng, 0, static_cast<int>(cats.size()) - 1)];
    Cat  B = cats[uniform(rng, 0, static_cast<int>(cats.size()) - 1)];
    Cat  C = cats[uniform(rng, 0, static_cast<int>(cats.size()) - 1)];
    auto F = random_functor(rng, A, B);
    auto G = random_functor(rng, B, C);
    if (!F || !G) {
      continue;
    }
    Presheaf P = random_presheaf(rng, A);
    CHECK(find_presheaf_iso(lan(compose(*G, *F), P).value, lan(*G, lan(*F, P).value).value)
              .has_value());
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("presheaf pushouts") {
  Cat      I = interval();
  Presheaf P = coproduct(yoneda(I, 1), terminal_presheaf(I));
  auto     id = identity_map(P);
  CHECK(presheaf_pushout(P, P, P, id, id).value == P);
  Presheaf E  = empty_presheaf(I);
  auto     ee = identity_map(E);
  CHECK(presheaf_pushout(E, E, E, ee, ee).value.total() == 0);

  Rng rng(31);
  int checked = 0;
  for (auto const& C : small_cats()) {
    if (checked == 3 || C->num_objects() < 2) {
      continue;
    }
    Presheaf A = random_presheaf(rng, C), Q = random_presheaf(rng, C), R = random_presheaf(rng, C);
    auto     fs = all_presheaf_maps(A, Q), gs = all_presheaf_maps(A, R);
    if (fs.empty() || gs.empty() || A.total() == 0) {
      continue;
    }
    auto const& f  = fs[uniform(rng, 0, static_cast<int>(fs.size()) - 1)];
    auto const& g  = gs[uniform(rng, 0, static_cast<int>(gs.size()) - 1)];
    auto        po = presheaf_pushout(A, Q, R, f, g);
    REQUIRE_FALSE(check_presheaf(po.value).has_value());
    CHECK_FALSE(check_presheaf_map(Q, po.value, po.inl).has_value());
    CHECK_FALSE(check_presheaf_map(R, po.value, po.inr).has_value());
    CHECK(compose(po.inl, f) == compose(po.inr, g));
    for (std::size_t x = 0; x < C->num_objects(); ++x) {
      CHECK(po.value.size[x] == brute_pushout_size(Q.size[x], R.size[x], f.comp[x], g.comp[x]));
    }
    ++checked;
  }
  CHECK(checked == 3);
}

TEST_CASE("sequential colimits and images") {
  Cat      I = interval();
  Presheaf P = yoneda(I, 0);
  Presheaf Q = yoneda(I, 1);
  auto     incl = yoneda_map(I, Q, 0, 0);  // yo 0 -> yo 1 along f
  auto     seq = presheaf_seq_colimit({P, Q, Q}, {incl, identity_map(Q)});
  REQUIRE(seq.status == Status::Exact);
  CHECK(seq.stage == 1);
  CHECK(seq.value == Q);
  CHECK(seq.cocone[0] == incl);
  auto trunc = presheaf_seq_colimit({P, Q}, {incl});
  CHECK(trunc.status == Status::Truncated);

  Image im = image(P, Q, incl);
  CHECK(im.value.size == std::vector<int>{1, 0});
  CHECK(compose(im.inclusion, im.corestriction) == incl);
}

TEST_CASE("arrow-category left adjoint") {
  Rng  rng(37);
  int  checked = 0;
  auto cats = small_cats();
  for (auto const& C : cats) {
    if (C->num_arrows() == 0) {
      continue;
    }
    std::vector<int> W;
    int              nw = uniform(rng, 1, 2);
    for (int i = 0; i < nw; ++i) {
      W.push_back(uniform(rng, 0, static_cast<int>(C->num_arrows()) - 1));
    }
    NatTrans m = arrow_family(C, W);
    REQUIRE_FALSE(check_natural(m).has_value());
    Presheaf P = random_presheaf(rng, C), Y = random_presheaf(rng, C);
    // a general arrow object: l-part mapping to the k-part of P
    ArrowObject base = arrow_restrict(m, P);
    ArrowObject X{restrict(m.tgt, random_presheaf(rng, C)), base.k_part, {}};
    if (X.l_part.total() + X.k_part.total() > 6 || Y.total() > 4) {
      continue;
    }
    auto maps = all_presheaf_maps(X.l_part, X.k_part);
    if (maps.empty()) {
      continue;
    }
    X.map              = maps[uniform(rng, 0, static_cast<int>(maps.size()) - 1)];
    ArrowLeftAdjoint A = arrow_left_adjoint(m, X);
    REQUIRE_FALSE(check_presheaf(A.value.value).has_value());
    if (A.value.value.total() > 8) {
      continue;
    }
    CHECK(count_maps(A.value.value, Y) == count_arrow_maps(X, arrow_restrict(m, Y)));
    ++checked;
  }
  CHECK(checked > 5);
}

TEST_CASE("one S step") {
  Cat I = interval();
  int f = I->find_arrow("f");

  Rng rng(41);
  for (int t = 0; t < 5; ++t) {
    Presheaf  P = random_presheaf(rng, I);
    KellyStep s = kelly_S(localisation_cospan(I, {}), P);
    CHECK(s.value == P);
    CHECK(is_bijective(s.s));
  }

  // the element of yo(0) gets a formal preimage at 1
  KellyStep s = kelly_S(localisation_cospan(I, {f}), yoneda(I, 0));
  CHECK(s.value.size == std::vector<int>{1, 1});
  CHECK(inverts(s.value, {f}));
  CHECK(find_presheaf_iso(s.value, yoneda(I, 1)).has_value());

  // a local object is fixed
  KellyStep l = kelly_S(localisation_cospan(I, {f}), yoneda(I, 1));
  CHECK(is_bijective(l.s));
}

TEST_CASE("S infinity") {
  Cat  I = interval();
  int  f = I->find_arrow("f");
  auto R = localisation_cospan(I, {f});

  auto local = kelly_S_infty(R, yoneda(I, 1));
  CHECK(local.status == Status::Exact);
  CHECK(local.iterations == 0);

  auto r = kelly_S_infty(R, yoneda(I, 0));
  REQUIRE(r.status == Status::Exact);
  CHECK(r.value.size == std::vector<int>{1, 1});
  CHECK(inverts(r.value, {f}));

  Cat  PP = parallel_pair();
  int  a  = PP->find_arrow("a");
  int  y  = PP->find_object("y");
  auto rp = kelly_S_infty(localisation_cospan(PP, {a}), yoneda(PP, y), 6);
  CHECK(rp.status == Status::Truncated);
  for (std::size_t n = 1; n < rp.component_growth.size(); ++n) {
    CHECK(rp.component_growth[n][y] > rp.component_growth[n - 1][y]);
  }
}

TEST_CASE("localisation homs: two algorithms agree") {
  struct Case {
    Cat              C;
    std::vector<int> W;
  };
  std::vector<Case> cases;
  Cat               I = interval();
  cases.push_back({I, {I->find_arrow("f")}});
  Cat two = poset_chain(2);
  cases.push_back({two, {two->find_arrow("0<1")}});
  Cat idem = walking_idempotent();
  cases.push_back({idem, {idem->find_arrow("e")}});
  Cat sr = section_retraction();
  cases.push_back({sr, {sr->find_arrow("r")}});
  cases.push_back({sr, {}});

  for (auto const& c : cases) {
    auto loc = localize(LocalisationSpec{c.C, c.W});
    REQUIRE(loc.sat.exact());
    for (std::size_t x = 0; x < c.C->num_objects(); ++x) {
      for (std::size_t y = 0; y < c.C->num_objects(); ++y) {
        auto h = localisation_homs_via_S(c.C, c.W, static_cast<int>(x), static_cast<int>(y));
        REQUIRE(h.status == Status::Exact);
        CHECK(h.count == loc.sat.hom_count(loc.i.obj[x], loc.i.obj[y]));
      }
    }
  }
}

TEST_CASE("localisation homs agree on random instances") {
  Rng rng(43);
  int agreed = 0;
  for (int t = 0; t < 40; ++t) {
    Cat C = random_fincat(rng, FinCatParams{3, 3, 3, 20});
    if (C->num_arrows() == 0) {
      continue;
    }
    std::vector<int> W{uniform(rng, 0, static_cast<int>(C->num_arrows()) - 1)};
    auto             loc = localize(LocalisationSpec{C, W});
    if (!loc.sat.exact()) {
      continue;
    }
    bool all = true;
    for (std::size_t y = 0; y < C->num_objects() && all; ++y) {
      auto r = kelly_S_infty(localisation_cospan(C, W), yoneda(C, static_cast<int>(y)));
      if (r.status != Status::Exact) {
        all = false;
        break;
      }
      for (std::size_t x = 0; x < C->num_objects(); ++x) {
        CHECK(static_cast<std::size_t>(r.value.size[x])
              == loc.sat.hom_count(loc.i.obj[x], loc.i.obj[y]));
      }
    }
    agreed += all;
  }
  CHECK(agreed >= 10);
}

TEST_CASE("s-orthogonality on stabilized runs") {
  Cat  sr = section_retraction();
  std::vector<int> W{sr->find_arrow("r")};
  auto R = localisation_cospan(sr, W);
  std::vector<Presheaf> locals{terminal_presheaf(sr), empty_presheaf(sr)};
  std::vector<std::pair<Presheaf, KellyResult>> runs;
  for (std::size_t y = 0; y < sr->num_objects(); ++y) {
    Presheaf x = yoneda(sr, static_cast<int>(y));
    auto     r = kelly_S_infty(R, x);
    REQUIRE(r.status == Status::Exact);
    CHECK(inverts(r.value, W));
    locals.push_back(r.value);
    runs.emplace_back(x, r);
  }
  for (auto const& [x, r] : runs) {
    for (auto const& y : locals) {
      CHECK(s_orthogonal(x, r, y));
    }
  }
}

TEST_CASE("cartesian glued maps") {
  Cat     one = terminal();
  Functor q   = identity_functor(one);
  GluedObject y{Presheaf{one, {1}, {{0}}}, Presheaf{one, {2}, {{0, 1}}}, PresheafMap{{{0}}}};
  GluedObject x{Presheaf{one, {0}, {{}}}, Presheaf{one, {1}, {{0}}}, PresheafMap{{{}}}};
  REQUIRE_FALSE(check_glued(q, x).has_value());
  REQUIRE_FALSE(check_glued(q, y).has_value());
  GluedMap over_empty{PresheafMap{{{}}}, PresheafMap{{{1}}}};
  GluedMap over_full{PresheafMap{{{}}}, PresheafMap{{{0}}}};
  CHECK(gl_is_cartesian(q, x, y, over_empty));
  CHECK_FALSE(gl_is_cartesian(q, x, y, over_full));
  CHECK(gl_is_cartesian(q, y, y, glued_identity(y)));

  // two elements collapsed over one: the gap map is not injective
  GluedObject two{Presheaf{one, {2}, {{0, 1}}}, Presheaf{one, {1}, {{0}}}, PresheafMap{{{0, 0}}}};
  GluedObject pt{Presheaf{one, {1}, {{0}}}, Presheaf{one, {1}, {{0}}}, PresheafMap{{{0}}}};
  CHECK_FALSE(gl_is_cartesian(q, two, pt, GluedMap{PresheafMap{{{0, 0}}}, PresheafMap{{{0}}}}));

  auto [z, g] = glued_pullback(q, y, x.down, over_empty.down);
  CHECK(gl_is_cartesian(q, z, y, g));
  CHECK(gl_is_cartesian(q, z, y, glued_compose(glued_identity(y), g)));
}

TEST_CASE("representables over an opfibration are good and nice") {
  Cat     I = interval();
  Span2   P = product(I, I);
  Functor q = P.first;
  int     f = I->find_arrow("f");
  std::vector<int> lifts = cocartesian_lifts(P, f);
  for (std::size_t a = 0; a < P.cat->num_objects(); ++a) {
    GluedObject x = glued_yoneda(q, static_cast<int>(a));
    REQUIRE_FALSE(check_glued(q, x).has_value());
    CHECK(check_good(x, GlueCospan{q, {f}, lifts}));
    for (std::size_t c = 0; c < I->num_objects(); ++c) {
      CHECK(check_nice(q, x, static_cast<int>(c)));
    }
  }

  Functor bang = to_terminal(I);
  for (std::size_t a = 0; a < I->num_objects(); ++a) {
    GluedObject x = glued_yoneda(bang, static_cast<int>(a));
    CHECK(check_good(x, GlueCospan{bang, {}, {}}));
    CHECK(check_nice(bang, x, 0));
  }
}

TEST_CASE("a perturbed restriction makes a glued object not good") {
  Cat     I = interval();
  Span2   P = product(I, I);
  Functor q = P.first;
  int     f = I->find_arrow("f");
  std::vector<int> lifts = cocartesian_lifts(P, f);
  // up: the terminal presheaf over the product, down: two points over I
  // identified by f; send every up element to the first point.
  GluedObject x{terminal_presheaf(P.cat), Presheaf{I, {2, 2}, {}}, {}};
  x.down.act.assign(I->num_arrows(), {0, 1});
  x.down.act[f] = {0, 0};
  for (std::size_t e = 0; e < P.cat->num_objects(); ++e) {
    x.comparison.comp.push_back({0});
  }
  REQUIRE_FALSE(check_presheaf(x.down).has_value());
  REQUIRE_FALSE(check_glued(q, x).has_value());
  CHECK_FALSE(check_good(x, GlueCospan{q, {f}, lifts}));
}

TEST_CASE("big-list closure properties") {
  Cat   I = interval();
  Span2 P = product(I, I);
  for (auto const& q : {P.first, to_terminal(I), identity_functor(walking_idempotent())}) {
    auto r = big_list_property_suite(q, 7, 25);
    INFO(r.failure.value_or(""));
    CHECK(r.ok);
    CHECK(r.lines.size() == 7);
  }
}
