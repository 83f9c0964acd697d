#include <algorithm>
#include <array>
#include <set>
#include <map>
#include <numeric>

#include "fincat/generate.hpp"
#include "fincat/presheaf.hpp"

namespace fincat {

  namespace {

    // Is the commuting square A -f-> B, A -g-> C, B -h-> D, C -k-> D a pullback?
    bool is_pullback(std::vector<int> const& f, std::vector<int> const& g,
                     std::vector<int> const& h, std::vector<int> const& k) {
      for (std::size_t a = 0; a < f.size(); ++a) {
        if (h[f[a]] != k[g[a]]) {
          return false;
        }
      }
      std::set<std::pair<int, int>> seen;
      for (std::size_t a = 0; a < f.size(); ++a) {
        if (!seen.emplace(f[a], g[a]).second) {
          return false;
        }
      }
      std::size_t corners = 0;
      for (int hb : h) {
        corners += static_cast<std::size_t>(std::count(k.begin(), k.end(), hb));
      }
      return corners == f.size();
    }

    // Records a map on classes from a map on their members.
    void put(std::vector<int>& out, int cls, int v) {
      if (out[cls] >= 0 && out[cls] != v) {
        throw law_error("comparison is not well defined on classes");
      }
      out[cls] = v;
    }

  }  // namespace

  std::optional<std::string> check_glued(Functor const& q, GluedObject const& x) {
    if (x.up.base != q.dom || x.down.base != q.cod) {
      return "glued object lives over the wrong categories";
    }
    if (auto v = check_presheaf(x.up)) {
      return "up: " + v->describe();
    }
    if (auto v = check_presheaf(x.down)) {
      return "down: " + v->describe();
    }
    if (auto v = check_presheaf_map(x.up, restrict(q, x.down), x.comparison)) {
      return "comparison: " + v->describe();
    }
    return std::nullopt;
  }

  std::optional<std::string> check_glued_map(Functor const& q, GluedObject const& x,
                                             GluedObject const& y, GluedMap const& f) {
    if (auto v = check_presheaf_map(x.up, y.up, f.up)) {
      return "up: " + v->describe();
    }
    if (auto v = check_presheaf_map(x.down, y.down, f.down)) {
      return "down: " + v->describe();
    }
    if (compose(y.comparison, f.up) != compose(restrict(q, f.down), x.comparison)) {
      return "square with the comparisons does not commute";
    }
    return std::nullopt;
  }

  bool gl_is_cartesian(Functor const& q, GluedObject const& x, GluedObject const& y,
                       GluedMap const& f) {
    for (std::size_t e = 0; e < q.dom->num_objects(); ++e) {
      int c = q.obj[e];
      if (!is_pullback(f.up.comp[e], x.comparison.comp[e], y.comparison.comp[e],
                       f.down.comp[c])) {
        return false;
      }
    }
    return true;
  }

  GluedMap glued_identity(GluedObject const& x) {
    return GluedMap{identity_map(x.up), identity_map(x.down)};
  }

  GluedMap glued_compose(GluedMap const& g, GluedMap const& f) {
    return GluedMap{compose(g.up, f.up), compose(g.down, f.down)};
  }

  GluedObject glued_yoneda(Functor const& q, int a) {
    GluedObject x{yoneda(q.dom, a), yoneda(q.cod, q.obj[a]), {}};
    for (std::size_t e = 0; e < q.dom->num_objects(); ++e) {
      std::vector<int> comp;
      for (int u : q.dom->hom(static_cast<int>(e), a)) {
        comp.push_back(q.cod->hom_index(q.arr[u]));
      }
      x.comparison.comp.push_back(std::move(comp));
    }
    return x;
  }

  bool check_good(GluedObject const& x, GlueCospan const& G) {
    auto const& q = G.q;
    auto const& E = *q.dom;
    for (int wu : G.W_u) {
      if (std::find(G.W.begin(), G.W.end(), q.arr[wu]) == G.W.end()) {
        throw precondition_error("lifted arrow does not lie over the localising family");
      }
    }
    // each lifted arrow gives a pullback square of up over down
    for (int wu : G.W_u) {
      int s = E.src(wu), t = E.tgt(wu);
      if (!is_pullback(x.up.act[wu], x.comparison.comp[t], x.comparison.comp[s],
                       x.down.act[q.arr[wu]])) {
        return false;
      }
    }
    // m_! m^* up -> up is the pullback of m_! m^* down -> down
    NatTrans         mu = arrow_family_full(q.dom, G.W_u);
    NatTrans         md = arrow_family_full(q.cod, G.W);
    std::vector<int> widx;
    for (int wu : mu.comp) {
      widx.push_back(static_cast<int>(
          std::find(md.comp.begin(), md.comp.end(), q.arr[wu]) - md.comp.begin()));
    }
    ArrowLeftAdjoint Au = arrow_left_adjoint(mu, arrow_restrict(mu, x.up));
    ArrowLeftAdjoint Ad = arrow_left_adjoint(md, arrow_restrict(md, x.down));
    PresheafMap      cu = arrow_counit(Au, x.up);
    PresheafMap      cd = arrow_counit(Ad, x.down);
    for (std::size_t e = 0; e < E.num_objects(); ++e) {
      int              c = q.obj[e];
      std::vector<int> cmp(Au.value.value.size[e], -1);
      auto             side = [&](Lan const& up_lan, Lan const& down_lan, PresheafMap const& up_in,
                      PresheafMap const& down_in, Functor const& leg) {
        for (std::size_t t = 0; t < up_lan.triples[e].size(); ++t) {
          auto [i, p, u] = up_lan.triples[e][t];
          int d = down_lan.element(c, widx[i], x.comparison.comp[leg.obj[i]][p], q.arr[u]);
          put(cmp, up_in.comp[e][up_lan.class_of[e][t]], down_in.comp[c][d]);
        }
      };
      side(Au.k_k, Ad.k_k, Au.value.inl, Ad.value.inl, mu.src);
      side(Au.l_l, Ad.l_l, Au.value.inr, Ad.value.inr, mu.tgt);
      if (!is_pullback(cu.comp[e], cmp, x.comparison.comp[e], cd.comp[c])) {
        return false;
      }
    }
    return true;
  }

  bool check_nice(Functor const& q, GluedObject const& x, int c) {
    Sub         F  = fibre(q, c);
    Functor     k  = F.inclusion;
    Lan         Lu = lan(k, restrict(k, x.up));
    PresheafMap cu = lan_counit(Lu, x.up);
    Functor     pt = point(q.cod, c);
    Lan         Ld = lan(pt, restrict(pt, x.down));
    PresheafMap cd = lan_counit(Ld, x.down);
    for (std::size_t e = 0; e < q.dom->num_objects(); ++e) {
      int              qe = q.obj[e];
      std::vector<int> cmp(Lu.value.size[e], -1);
      for (std::size_t t = 0; t < Lu.triples[e].size(); ++t) {
        auto [f, p, u] = Lu.triples[e][t];
        put(cmp, Lu.class_of[e][t], Ld.element(qe, 0, x.comparison.comp[k.obj[f]][p], q.arr[u]));
      }
      if (!is_pullback(cu.comp[e], cmp, x.comparison.comp[e], cd.comp[qe])) {
        return false;
      }
    }
    return true;
  }

  GluedPushout glued_pushout(Functor const& q, GluedObject const& x, GluedObject const& y,
                             GluedObject const& z, GluedMap const& f, GluedMap const& g) {
    PresheafPushout up   = presheaf_pushout(x.up, y.up, z.up, f.up, g.up);
    PresheafPushout down = presheaf_pushout(x.down, y.down, z.down, f.down, g.down);
    PresheafMap     cmp  = pushout_induced(up, compose(restrict(q, down.inl), y.comparison),
                                           compose(restrict(q, down.inr), z.comparison));
    GluedPushout P;
    P.value = GluedObject{up.value, down.value, cmp};
    P.inl   = GluedMap{up.inl, down.inl};
    P.inr   = GluedMap{up.inr, down.inr};
    return P;
  }

  std::pair<GluedObject, GluedMap> glued_pullback(Functor const& q, GluedObject const& y,
                                                  Presheaf const& down, PresheafMap const& d) {
    PresheafPullback B =
        presheaf_pullback(y.up, restrict(q, y.down), restrict(q, down), y.comparison, restrict(q, d));
    return {GluedObject{B.value, down, B.second}, GluedMap{B.first, d}};
  }

  ////////////////////////////////////////////////////////////////////////
  // Closure properties of cartesian maps
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // A coproduct of representables of C with a map to a fixed presheaf T.
    struct Over {
      Presheaf         D;
      PresheafMap      to_T;
      std::vector<int> objs;   // summand objects
      std::vector<int> elems;  // image of each summand generator in T
    };

    PresheafMap from_summands(Cat const& C, std::vector<int> const& objs, Presheaf const& P,
                              std::vector<int> const& elems) {
      PresheafMap f;
      f.comp.assign(C->num_objects(), {});
      for (std::size_t i = 0; i < objs.size(); ++i) {
        PresheafMap y = yoneda_map(C, P, objs[i], elems[i]);
        for (std::size_t x = 0; x < C->num_objects(); ++x) {
          f.comp[x].insert(f.comp[x].end(), y.comp[x].begin(), y.comp[x].end());
        }
      }
      return f;
    }

    Presheaf sum_of_representables(Cat const& C, std::vector<int> const& objs) {
      Presheaf D = empty_presheaf(C);
      for (int c : objs) {
        D = coproduct(D, yoneda(C, c));
      }
      return D;
    }

    struct Instance {
      Functor     q;
      Rng         rng;
      GluedObject T;

      Instance(Functor q_, std::uint64_t seed) : q(std::move(q_)), rng(seed) {
        auto const& C = q.cod;
        auto const& E = q.dom;
        std::vector<int> dobjs;
        int              nd = uniform(rng, 1, 2);
        for (int i = 0; i < nd; ++i) {
          dobjs.push_back(uniform(rng, 0, static_cast<int>(C->num_objects()) - 1));
        }
        T.down = sum_of_representables(C, dobjs);
        if (uniform(rng, 0, 1)) {
          T.down = coproduct(T.down, terminal_presheaf(C));
        }
        Presheaf         qT = restrict(q, T.down);
        std::vector<int> uobjs, uelems;
        int              nu = uniform(rng, 1, 3);
        for (int i = 0; i < nu; ++i) {
          int e = uniform(rng, 0, static_cast<int>(E->num_objects()) - 1);
          if (qT.size[e] > 0) {
            uobjs.push_back(e);
            uelems.push_back(uniform(rng, 0, qT.size[e] - 1));
          }
        }
        T.up         = sum_of_representables(E, uobjs);
        T.comparison = from_summands(E, uobjs, qT, uelems);
      }

      Over over() {
        auto const& C = q.cod;
        Over        o;
        int         n = uniform(rng, 1, 2);
        for (int i = 0; i < n; ++i) {
          int c = uniform(rng, 0, static_cast<int>(C->num_objects()) - 1);
          if (T.down.size[c] > 0) {
            o.objs.push_back(c);
            o.elems.push_back(uniform(rng, 0, T.down.size[c] - 1));
          }
        }
        o.D    = sum_of_representables(C, o.objs);
        o.to_T = from_summands(C, o.objs, T.down, o.elems);
        return o;
      }

      static Over join(Over const& a, Over const& b) {
        Over o = a;
        o.objs.insert(o.objs.end(), b.objs.begin(), b.objs.end());
        o.elems.insert(o.elems.end(), b.elems.begin(), b.elems.end());
        o.D = coproduct(a.D, b.D);
        for (std::size_t x = 0; x < o.to_T.comp.size(); ++x) {
          o.to_T.comp[x].insert(o.to_T.comp[x].end(), b.to_T.comp[x].begin(),
                                b.to_T.comp[x].end());
        }
        return o;
      }

      static PresheafMap inclusion(Over const& a, Over const& ab) {
        PresheafMap f;
        for (std::size_t x = 0; x < a.D.size.size(); ++x) {
          std::vector<int> c(a.D.size[x]);
          std::iota(c.begin(), c.end(), 0);
          f.comp.push_back(std::move(c));
          (void) ab;
        }
        return f;
      }

      // A map a -> b over T, if one exists for the chosen generators.
      std::optional<PresheafMap> map_over(Over const& a, Over const& b) {
        std::vector<int> chosen;
        for (std::size_t i = 0; i < a.objs.size(); ++i) {
          int              c = a.objs[i];
          std::vector<int> cands;
          for (int d = 0; d < b.D.size[c]; ++d) {
            if (b.to_T.comp[c][d] == a.elems[i]) {
              cands.push_back(d);
            }
          }
          if (cands.empty()) {
            return std::nullopt;
          }
          chosen.push_back(cands[uniform(rng, 0, static_cast<int>(cands.size()) - 1)]);
        }
        return from_summands(q.cod, a.objs, b.D, chosen);
      }

      // A map a -> b over T: random when possible, else b := a + b with the inclusion.
      PresheafMap extend(Over const& a, Over& b) {
        if (auto f = map_over(a, b)) {
          return *f;
        }
        b = join(a, b);
        return inclusion(a, b);
      }

      std::pair<GluedObject, GluedMap> lift(Over const& o) {
        return glued_pullback(q, T, o.D, o.to_T);
      }

      // The glued map between lifts induced by a map of downs over T.
      GluedMap induced(std::pair<GluedObject, GluedMap> const& x1,
                       std::pair<GluedObject, GluedMap> const& x2, PresheafMap const& h) {
        GluedMap f{{}, h};
        for (std::size_t e = 0; e < q.dom->num_objects(); ++e) {
          std::map<std::pair<int, int>, int> at;
          for (int v = 0; v < x2.first.up.size[e]; ++v) {
            at[{x2.second.up.comp[e][v], x2.first.comparison.comp[e][v]}] = v;
          }
          std::vector<int> comp;
          for (int u = 0; u < x1.first.up.size[e]; ++u) {
            comp.push_back(at.at({x1.second.up.comp[e][u],
                                  h.comp[q.obj[e]][x1.first.comparison.comp[e][u]]}));
          }
          f.up.comp.push_back(std::move(comp));
        }
        return f;
      }

      // An arbitrary map into y from a sum of representables, identity on downs.
      std::pair<GluedObject, GluedMap> arbitrary_into(GluedObject const& y) {
        auto const&      E = q.dom;
        std::vector<int> objs, elems;
        int              n = uniform(rng, 0, 3);
        for (int i = 0; i < n; ++i) {
          int e = uniform(rng, 0, static_cast<int>(E->num_objects()) - 1);
          if (y.up.size[e] > 0) {
            objs.push_back(e);
            elems.push_back(uniform(rng, 0, y.up.size[e] - 1));
          }
        }
        GluedObject z;
        z.up         = sum_of_representables(E, objs);
        z.down       = y.down;
        GluedMap f{from_summands(E, objs, y.up, elems), identity_map(y.down)};
        z.comparison = compose(y.comparison, f.up);
        return {z, f};
      }

      // x with its up relabelled by random permutations, and the iso x -> x'.
      std::pair<GluedObject, GluedMap> permuted(GluedObject const& x) {
        auto const& E = *q.dom;
        GluedMap    f{{}, identity_map(x.down)};
        for (int n : x.up.size) {
          std::vector<int> s(n);
          std::iota(s.begin(), s.end(), 0);
          std::shuffle(s.begin(), s.end(), rng);
          f.up.comp.push_back(std::move(s));
        }
        GluedObject y{x.up, x.down, x.comparison};
        for (std::size_t a = 0; a < E.num_arrows(); ++a) {
          int sx = E.src(static_cast<int>(a)), ty = E.tgt(static_cast<int>(a));
          for (int e = 0; e < x.up.size[ty]; ++e) {
            y.up.act[a][f.up.comp[ty][e]] = f.up.comp[sx][x.up.act[a][e]];
          }
        }
        for (std::size_t e = 0; e < E.num_objects(); ++e) {
          for (int u = 0; u < x.up.size[e]; ++u) {
            y.comparison.comp[e][f.up.comp[e][u]] = x.comparison.comp[e][u];
          }
        }
        return {y, f};
      }
    };

  }  // namespace

  BigListReport big_list_property_suite(Functor const& q, std::uint64_t seed, int instances) {
    BigListReport R;
    std::array<int, 7>         checks{};
    std::array<char const*, 7> names{"(a) identities, isos, composition, cancellation",
                                     "(b) restriction along functors into the base",
                                     "(c) cobase change along a monic leg",
                                     "(d) cogap of a square of cartesian maps",
                                     "(e) pushout of a cartesian map of spans",
                                     "(f) bounded transfinite composition",
                                     "(g) sequential colimit of a cartesian ladder"};
    auto expect = [&](int prop, int inst, bool ok, char const* what) {
      ++checks[prop];
      if (!ok && R.ok) {
        R.ok      = false;
        R.failure = std::string(names[prop]) + ": instance " + std::to_string(inst) + ": " + what;
      }
    };
    auto const& C = q.cod;
    for (int inst = 0; inst < instances; ++inst) {
      Instance I(q, seed + static_cast<std::uint64_t>(inst) * 0x9e3779b97f4a7c15ull);
      auto&    T = I.T;

      // (a)
      expect(0, inst, gl_is_cartesian(q, T, T, glued_identity(T)), "identity");
      auto [Tp, iso] = I.permuted(T);
      expect(0, inst, gl_is_cartesian(q, T, Tp, iso), "isomorphism");
      Over        d1 = I.over(), d2 = I.over(), d3 = I.over();
      PresheafMap h12 = I.extend(d1, d2);
      PresheafMap h23 = I.extend(d2, d3);
      auto        x1 = I.lift(d1), x2 = I.lift(d2), x3 = I.lift(d3);
      GluedMap    f12 = I.induced(x1, x2, h12), f23 = I.induced(x2, x3, h23);
      expect(0, inst, gl_is_cartesian(q, x1.first, T, x1.second), "pullback map");
      expect(0, inst, gl_is_cartesian(q, x1.first, x2.first, f12), "map over T");
      expect(0, inst,
             gl_is_cartesian(q, x1.first, x3.first, glued_compose(f23, f12)), "composite");
      auto [z, fz] = I.arbitrary_into(x2.first);
      expect(0, inst,
             gl_is_cartesian(q, z, x2.first, fz)
                 == gl_is_cartesian(q, z, T, glued_compose(x2.second, fz)),
             "cancellation");

      // (b)
      Rng  jr(seed ^ static_cast<std::uint64_t>(inst + 1));
      Cat  Ep = random_fincat(jr, FinCatParams{2, 2, 3, 20});
      if (auto j = random_functor(jr, Ep, q.dom)) {
        Functor qj = compose(q, *j);
        auto    pull = [&](GluedObject const& x) {
          return GluedObject{restrict(*j, x.up), x.down, restrict(*j, x.comparison)};
        };
        GluedMap jf{restrict(*j, f12.up), f12.down};
        expect(1, inst, gl_is_cartesian(qj, pull(x1.first), pull(x2.first), jf), "restricted map");
      }

      // (c) y <- x -> z with x -> y a coproduct inclusion
      Over        dx = I.over(), dy = Instance::join(dx, I.over()), dz = I.over();
      PresheafMap hxy = Instance::inclusion(dx, dy);
      PresheafMap hxz = I.extend(dx, dz);
      auto        gx = I.lift(dx), gy = I.lift(dy), gz = I.lift(dz);
      GluedMap    fxy = I.induced(gx, gy, hxy), fxz = I.induced(gx, gz, hxz);
      GluedPushout P  = glued_pushout(q, gx.first, gy.first, gz.first, fxy, fxz);
      expect(2, inst, gl_is_cartesian(q, gy.first, P.value, P.inl), "left leg");
      expect(2, inst, gl_is_cartesian(q, gz.first, P.value, P.inr), "right leg");

      // (d) general span over T, cogap into T
      Over        ex = I.over(), ey = I.over(), ez = I.over();
      PresheafMap kxy = I.extend(ex, ey), kxz = I.extend(ex, ez);
      auto        lx = I.lift(ex), ly = I.lift(ey), lz = I.lift(ez);
      GluedPushout Q  = glued_pushout(q, lx.first, ly.first, lz.first, I.induced(lx, ly, kxy),
                                      I.induced(lx, lz, kxz));
      GluedMap    cogap{pushout_induced(PresheafPushout{Q.value.up, Q.inl.up, Q.inr.up},
                                        ly.second.up, lz.second.up),
                        pushout_induced(PresheafPushout{Q.value.down, Q.inl.down, Q.inr.down},
                                        ly.second.down, lz.second.down)};
      expect(3, inst, gl_is_cartesian(q, Q.value, T, cogap), "cogap");

      // (e) b <- a -> c over y <- x -> z, monic legs a -> b and x -> y
      Over        da = I.over();
      PresheafMap hax;
      if (auto h = I.map_over(da, dx)) {
        hax = *h;
      } else {
        std::size_t k = static_cast<std::size_t>(uniform(I.rng, 0, static_cast<int>(dx.objs.size())));
        da            = Over{Presheaf{}, {}, {dx.objs.begin(), dx.objs.begin() + k},
                  {dx.elems.begin(), dx.elems.begin() + k}};
        da.D          = sum_of_representables(C, da.objs);
        da.to_T       = from_summands(C, da.objs, T.down, da.elems);
        hax           = Instance::inclusion(da, dx);
      }
      Over        db = Instance::join(da, I.over());
      Over        dc = Instance::join(da, I.over());
      auto        hby = [&] {
        // a part through x -> y, the rest anywhere over T
        Over        rest{Presheaf{}, {}, {db.objs.begin() + da.objs.size(), db.objs.end()},
                  {db.elems.begin() + da.elems.size(), db.elems.end()}};
        rest.D    = sum_of_representables(C, rest.objs);
        rest.to_T = from_summands(C, rest.objs, T.down, rest.elems);
        auto        r = I.map_over(rest, dy);
        PresheafMap a = compose(hxy, hax);
        return std::make_pair(a, r);
      }();
      auto hcz = [&] {
        Over rest{Presheaf{}, {}, {dc.objs.begin() + da.objs.size(), dc.objs.end()},
                  {dc.elems.begin() + da.elems.size(), dc.elems.end()}};
        rest.D    = sum_of_representables(C, rest.objs);
        rest.to_T = from_summands(C, rest.objs, T.down, rest.elems);
        auto        r = I.map_over(rest, dz);
        PresheafMap a = compose(hxz, hax);
        return std::make_pair(a, r);
      }();
      if (hby.second && hcz.second) {
        auto concat = [](PresheafMap a, PresheafMap const& b) {
          for (std::size_t x = 0; x < a.comp.size(); ++x) {
            a.comp[x].insert(a.comp[x].end(), b.comp[x].begin(), b.comp[x].end());
          }
          return a;
        };
        PresheafMap hb = concat(hby.first, *hby.second);
        PresheafMap hc = concat(hcz.first, *hcz.second);
        auto        ga = I.lift(da), gb = I.lift(db), gc = I.lift(dc);
        GluedMap    fab = I.induced(ga, gb, Instance::inclusion(da, db));
        GluedMap    fac = I.induced(ga, gc, Instance::inclusion(da, dc));
        GluedPushout P1 = glued_pushout(q, ga.first, gb.first, gc.first, fab, fac);
        GluedMap    fb = I.induced(gb, gy, hb), fc = I.induced(gc, gz, hc);
        GluedMap    m{pushout_induced(PresheafPushout{P1.value.up, P1.inl.up, P1.inr.up},
                                      compose(P.inl.up, fb.up), compose(P.inr.up, fc.up)),
                   pushout_induced(PresheafPushout{P1.value.down, P1.inl.down, P1.inr.down},
                                   compose(P.inl.down, fb.down), compose(P.inr.down, fc.down))};
        expect(4, inst, gl_is_cartesian(q, P1.value, P.value, m), "induced map of pushouts");
      }

      // (f) a chain of maps over T
      std::vector<Over> chain{I.over()};
      GluedMap          run  = glued_identity(I.lift(chain[0]).first);
      auto              prev = I.lift(chain[0]);
      int               len  = uniform(I.rng, 2, 4);
      for (int i = 0; i < len; ++i) {
        Over        next = I.over();
        PresheafMap h    = I.extend(chain.back(), next);
        auto        cur  = I.lift(next);
        run              = glued_compose(I.induced(prev, cur, h), run);
        chain.push_back(next);
        prev = cur;
      }
      expect(5, inst, gl_is_cartesian(q, I.lift(chain[0]).first, prev.first, run), "composite");

      // (g) x_n -> y_n over T with both rows eventually constant
      std::vector<Over>        xs{I.over()}, ys;
      std::vector<PresheafMap> xh, yh, vert;
      ys.push_back(I.over());
      vert.push_back(I.extend(xs[0], ys[0]));
      for (int i = 0; i < 2; ++i) {
        Over nx = Instance::join(xs.back(), I.over());
        xh.push_back(Instance::inclusion(xs.back(), nx));
        Over        ny = Instance::join(ys.back(), I.over());
        PresheafMap yi = Instance::inclusion(ys.back(), ny);
        // x-part through the old vertical map, the new summands anywhere over ny
        Over rest{Presheaf{}, {}, {nx.objs.begin() + xs.back().objs.size(), nx.objs.end()},
                  {nx.elems.begin() + xs.back().elems.size(), nx.elems.end()}};
        rest.D    = sum_of_representables(C, rest.objs);
        rest.to_T = from_summands(C, rest.objs, T.down, rest.elems);
        auto r    = I.map_over(rest, ny);
        if (!r) {
          break;
        }
        PresheafMap v = compose(yi, vert.back());
        for (std::size_t x = 0; x < v.comp.size(); ++x) {
          v.comp[x].insert(v.comp[x].end(), r->comp[x].begin(), r->comp[x].end());
        }
        xs.push_back(nx);
        ys.push_back(ny);
        yh.push_back(yi);
        vert.push_back(v);
      }
      xh.resize(ys.size() - 1);
      // constant tail
      xs.push_back(xs.back());
      ys.push_back(ys.back());
      xh.push_back(identity_map(xs.back().D));
      yh.push_back(identity_map(ys.back().D));
      vert.push_back(vert.back());
      std::vector<std::pair<GluedObject, GluedMap>> xl, yl;
      std::vector<GluedMap>                         xm, ym;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        xl.push_back(I.lift(xs[i]));
        yl.push_back(I.lift(ys[i]));
      }
      for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        xm.push_back(I.induced(xl[i], xl[i + 1], xh[i]));
        ym.push_back(I.induced(yl[i], yl[i + 1], yh[i]));
      }
      auto colim = [&](std::vector<std::pair<GluedObject, GluedMap>> const& l,
                       std::vector<GluedMap> const& m) {
        std::vector<Presheaf>    ups, downs;
        std::vector<PresheafMap> mu, md;
        for (auto const& s : l) {
          ups.push_back(s.first.up);
          downs.push_back(s.first.down);
        }
        for (auto const& g : m) {
          mu.push_back(g.up);
          md.push_back(g.down);
        }
        return std::make_pair(presheaf_seq_colimit(ups, mu), presheaf_seq_colimit(downs, md));
      };
      auto [xu, xd] = colim(xl, xm);
      auto [yu, yd] = colim(yl, ym);
      if (xu.status == Status::Exact && xd.status == Status::Exact && yu.status == Status::Exact
          && yd.status == Status::Exact) {
        std::size_t last = xs.size() - 1;
        GluedMap    fl   = I.induced(xl[last], yl[last], vert[last]);
        // transport f_last along the last cocone components, which are bijections
        auto invert = [](PresheafMap const& f) {
          PresheafMap g;
          for (auto const& c : f.comp) {
            std::vector<int> inv(c.size());
            for (std::size_t e = 0; e < c.size(); ++e) {
              inv[c[e]] = static_cast<int>(e);
            }
            g.comp.push_back(std::move(inv));
          }
          return g;
        };
        GluedObject cx{xu.value, xd.value,
                       compose(restrict(q, xd.cocone[last]),
                               compose(xl[last].first.comparison, invert(xu.cocone[last])))};
        GluedObject cy{yu.value, yd.value,
                       compose(restrict(q, yd.cocone[last]),
                               compose(yl[last].first.comparison, invert(yu.cocone[last])))};
        GluedMap finf{compose(yu.cocone[last], compose(fl.up, invert(xu.cocone[last]))),
                      compose(yd.cocone[last], compose(fl.down, invert(xd.cocone[last])))};
        bool each = true;
        for (std::size_t i = 0; i < xs.size(); ++i) {
          each = each
              && gl_is_cartesian(q, xl[i].first, yl[i].first,
                                 I.induced(xl[i], yl[i], vert[i]));
        }
        expect(6, inst, each, "ladder rung");
        expect(6, inst, gl_is_cartesian(q, cx, cy, finf), "colimit map");
      }
    }
    for (int p = 0; p < 7; ++p) {
      R.lines.push_back(std::string(names[p]) + ": " + std::to_string(checks[p]) + " checks");
    }
    return R;
  }

}  // namespace fincat
