#include "fincat/cat_core.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fincat {

  ////////////////////////////////////////////////////////////////////////
  // Functor categories
  ////////////////////////////////////////////////////////////////////////

  FunctorCategory functor_category(Cat const& C, Cat const& D) {
    FunctorCategory R;
    R.objects = all_functors(C, D);
    int const n = static_cast<int>(R.objects.size());
    check_budget(R.objects.size(), "functor category");
    std::vector<RawCat::Arrow> arrows;
    std::vector<int>           ids(n, -1);
    // (src, tgt, components) -> arrow index
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        enumerate_nat_trans(R.objects[i], R.objects[j], [&](NatTrans const& a) {
          std::vector<int> key{i, j};
          key.insert(key.end(), a.comp.begin(), a.comp.end());
          int  k      = static_cast<int>(arrows.size());
          bool is_id  = i == j && a.comp == identity_nat(R.objects[i]).comp;
          std::string lbl = is_id ? "id_F" + std::to_string(i)
                                  : "F" + std::to_string(i) + "=>F" + std::to_string(j) + "#"
                                        + std::to_string(k);
          if (is_id) {
            ids[i] = k;
          }
          index[key] = k;
          arrows.push_back({lbl, i, j});
          R.arrows.push_back(a);
          check_budget(arrows.size(), "functor category");
          return true;
        });
      }
    }
    std::vector<std::string> objs;
    for (int i = 0; i < n; ++i) {
      objs.push_back("F" + std::to_string(i));
    }
    R.cat = build_cat(objs, arrows, ids, [&](int g, int f) {
      auto             c = vcompose(R.arrows[g], R.arrows[f]);
      std::vector<int> key{arrows[f].src, arrows[g].tgt};
      key.insert(key.end(), c.comp.begin(), c.comp.end());
      return index.at(key);
    });
    return R;
  }

  ////////////////////////////////////////////////////////////////////////
  // Comma categories
  ////////////////////////////////////////////////////////////////////////

  Comma comma(Functor const& F, Functor const& G) {
    if (F.cod != G.cod) {
      throw precondition_error("comma of functors with different codomains");
    }
    auto const& B = *F.dom;
    auto const& C = *G.dom;
    auto const& A = *F.cod;
    Comma       R;
    std::vector<std::string> objs;
    std::map<std::tuple<int, int, int>, int> oidx;
    for (std::size_t b = 0; b < B.num_objects(); ++b) {
      for (std::size_t c = 0; c < C.num_objects(); ++c) {
        for (int a : A.hom(F.obj[b], G.obj[c])) {
          oidx[{static_cast<int>(b), static_cast<int>(c), a}] = static_cast<int>(R.objects.size());
          R.objects.push_back({static_cast<int>(b), static_cast<int>(c), a});
          objs.push_back("(" + B.object_label(b) + "," + C.object_label(c) + ","
                         + A.arrow_label(a) + ")");
        }
      }
    }
    std::vector<RawCat::Arrow>                    arrows;
    std::vector<int>                              ids(R.objects.size(), -1);
    std::map<std::tuple<int, int, int, int>, int> aidx;  // (src obj, tgt obj, u, v)
    for (std::size_t i = 0; i < R.objects.size(); ++i) {
      auto const& o = R.objects[i];
      for (std::size_t j = 0; j < R.objects.size(); ++j) {
        auto const& p = R.objects[j];
        for (int u : B.hom(o.b, p.b)) {
          for (int v : C.hom(o.c, p.c)) {
            if (A.compose(p.alpha, F.arr[u]) != A.compose(G.arr[v], o.alpha)) {
              continue;
            }
            int k = static_cast<int>(arrows.size());
            if (i == j && B.is_identity(u) && C.is_identity(v)) {
              ids[i] = k;
            }
            aidx[{static_cast<int>(i), static_cast<int>(j), u, v}] = k;
            arrows.push_back({"(" + B.arrow_label(u) + "," + C.arrow_label(v) + "):"
                                  + std::to_string(i) + "->" + std::to_string(j),
                              static_cast<int>(i), static_cast<int>(j)});
            R.arrows.emplace_back(u, v);
            check_budget(arrows.size(), "comma");
          }
        }
      }
    }
    R.cat = build_cat(objs, arrows, ids, [&](int g, int f) {
      auto [u1, v1] = R.arrows[f];
      auto [u2, v2] = R.arrows[g];
      return aidx.at({arrows[f].src, arrows[g].tgt, B.compose(u2, u1), C.compose(v2, v1)});
    });
    R.dom_proj = Functor{R.cat, F.dom, {}, {}};
    R.cod_proj = Functor{R.cat, G.dom, {}, {}};
    for (auto const& o : R.objects) {
      R.dom_proj.obj.push_back(o.b);
      R.cod_proj.obj.push_back(o.c);
    }
    for (auto [u, v] : R.arrows) {
      R.dom_proj.arr.push_back(u);
      R.cod_proj.arr.push_back(v);
    }
    R.cell = NatTrans{compose(F, R.dom_proj), compose(G, R.cod_proj), {}};
    for (auto const& o : R.objects) {
      R.cell.comp.push_back(o.alpha);
    }
    return R;
  }

  ////////////////////////////////////////////////////////////////////////
  // Products, coproducts, pullbacks
  ////////////////////////////////////////////////////////////////////////

  Span2 pullback(Functor const& F, Functor const& G) {
    if (F.cod != G.cod) {
      throw precondition_error("pullback of functors with different codomains");
    }
    auto const& C = *F.dom;
    auto const& D = *G.dom;
    std::vector<std::pair<int, int>> objs;
    std::vector<std::string>         olbl;
    std::map<std::pair<int, int>, int> oidx;
    for (std::size_t c = 0; c < C.num_objects(); ++c) {
      for (std::size_t d = 0; d < D.num_objects(); ++d) {
        if (F.obj[c] == G.obj[d]) {
          oidx[{static_cast<int>(c), static_cast<int>(d)}] = static_cast<int>(objs.size());
          objs.emplace_back(c, d);
          olbl.push_back("(" + C.object_label(c) + "," + D.object_label(d) + ")");
        }
      }
    }
    std::vector<std::pair<int, int>>   arrs;
    std::vector<RawCat::Arrow>         arrows;
    std::map<std::pair<int, int>, int> aidx;
    std::vector<int>                   ids(objs.size());
    for (std::size_t u = 0; u < C.num_arrows(); ++u) {
      auto s = C.src(u), t = C.tgt(u);
      for (std::size_t v = 0; v < D.num_arrows(); ++v) {
        if (F.arr[u] != G.arr[v]) {
          continue;
        }
        int si = oidx.at({s, D.src(v)}), ti = oidx.at({t, D.tgt(v)});
        int k  = static_cast<int>(arrows.size());
        if (C.is_identity(u) && D.is_identity(v)) {
          ids[si] = k;
        }
        aidx[{static_cast<int>(u), static_cast<int>(v)}] = k;
        arrs.emplace_back(u, v);
        arrows.push_back({"(" + C.arrow_label(u) + "," + D.arrow_label(v) + ")", si, ti});
        check_budget(arrows.size(), "pullback");
      }
    }
    Span2 R;
    R.cat = build_cat(olbl, arrows, ids, [&](int g, int f) {
      return aidx.at({C.compose(arrs[g].first, arrs[f].first),
                      D.compose(arrs[g].second, arrs[f].second)});
    });
    R.first  = Functor{R.cat, F.dom, {}, {}};
    R.second = Functor{R.cat, G.dom, {}, {}};
    for (auto [c, d] : objs) {
      R.first.obj.push_back(c);
      R.second.obj.push_back(d);
    }
    for (auto [u, v] : arrs) {
      R.first.arr.push_back(u);
      R.second.arr.push_back(v);
    }
    return R;
  }

  Span2 product(Cat const& C, Cat const& D) {
    return pullback(to_terminal(C), to_terminal(D));
  }

  Span2 coproduct(Cat const& C, Cat const& D) {
    int nc = static_cast<int>(C->num_objects());
    int ac = static_cast<int>(C->num_arrows());
    std::vector<std::string>   objs;
    std::vector<RawCat::Arrow> arrows;
    std::vector<int>           ids;
    for (int x = 0; x < nc; ++x) {
      objs.push_back("0." + C->object_label(x));
      ids.push_back(C->id(x));
    }
    for (std::size_t x = 0; x < D->num_objects(); ++x) {
      objs.push_back("1." + D->object_label(x));
      ids.push_back(ac + D->id(x));
    }
    for (int a = 0; a < ac; ++a) {
      arrows.push_back({"0." + C->arrow_label(a), C->src(a), C->tgt(a)});
    }
    for (std::size_t a = 0; a < D->num_arrows(); ++a) {
      arrows.push_back({"1." + D->arrow_label(a), nc + D->src(a), nc + D->tgt(a)});
    }
    Span2 R;
    R.cat = build_cat(objs, arrows, ids, [&](int g, int f) {
      return f < ac ? C->compose(g, f) : ac + D->compose(g - ac, f - ac);
    });
    R.first  = Functor{C, R.cat, {}, {}};
    R.second = Functor{D, R.cat, {}, {}};
    for (int x = 0; x < nc; ++x) {
      R.first.obj.push_back(x);
    }
    for (int a = 0; a < ac; ++a) {
      R.first.arr.push_back(a);
    }
    for (std::size_t x = 0; x < D->num_objects(); ++x) {
      R.second.obj.push_back(nc + static_cast<int>(x));
    }
    for (std::size_t a = 0; a < D->num_arrows(); ++a) {
      R.second.arr.push_back(ac + static_cast<int>(a));
    }
    return R;
  }

  ////////////////////////////////////////////////////////////////////////
  // Subcategories
  ////////////////////////////////////////////////////////////////////////

  namespace {
    Sub sub_from(Cat const& C, std::vector<int> const& objects, std::vector<int> const& arrows) {
      std::vector<int> onew(C->num_objects(), -1), anew(C->num_arrows(), -1);
      for (std::size_t i = 0; i < objects.size(); ++i) {
        onew[objects[i]] = static_cast<int>(i);
      }
      for (std::size_t i = 0; i < arrows.size(); ++i) {
        anew[arrows[i]] = static_cast<int>(i);
      }
      std::vector<std::string>   olbl;
      std::vector<RawCat::Arrow> alist;
      std::vector<int>           ids;
      for (int x : objects) {
        olbl.push_back(C->object_label(x));
        ids.push_back(anew[C->id(x)]);
      }
      for (int a : arrows) {
        alist.push_back({C->arrow_label(a), onew[C->src(a)], onew[C->tgt(a)]});
      }
      Sub S;
      S.cat = build_cat(olbl, alist, ids, [&](int g, int f) {
        int h = anew[C->compose(arrows[g], arrows[f])];
        if (h < 0) {
          throw precondition_error("arrow predicate is not closed under composition: "
                                   + C->arrow_label(arrows[g]) + " after "
                                   + C->arrow_label(arrows[f]));
        }
        return h;
      });
      S.objects   = objects;
      S.arrows    = arrows;
      S.inclusion = Functor{S.cat, C, objects, arrows};
      return S;
    }
  }  // namespace

  Sub full_subcategory(Cat const& C, std::function<bool(int)> const& keep_object) {
    std::vector<int> objs, arrs;
    for (std::size_t x = 0; x < C->num_objects(); ++x) {
      if (keep_object(static_cast<int>(x))) {
        objs.push_back(static_cast<int>(x));
      }
    }
    for (std::size_t a = 0; a < C->num_arrows(); ++a) {
      if (keep_object(C->src(a)) && keep_object(C->tgt(a))) {
        arrs.push_back(static_cast<int>(a));
      }
    }
    return sub_from(C, objs, arrs);
  }

  Sub wide_subcategory(Cat const& C, std::function<bool(int)> const& keep_arrow) {
    std::vector<int> objs, arrs;
    for (std::size_t x = 0; x < C->num_objects(); ++x) {
      objs.push_back(static_cast<int>(x));
    }
    for (std::size_t a = 0; a < C->num_arrows(); ++a) {
      bool keep = keep_arrow(static_cast<int>(a));
      if (!keep && is_iso(C, static_cast<int>(a))) {
        throw precondition_error("arrow predicate omits the isomorphism "
                                 + C->arrow_label(a));
      }
      if (keep) {
        arrs.push_back(static_cast<int>(a));
      }
    }
    return sub_from(C, objs, arrs);
  }

  Sub core(Cat const& C) {
    return wide_subcategory(C, [&](int a) { return is_iso(C, a); });
  }

  Sub skeleton(Cat const& C) {
    auto reps = iso_class_reps(C);
    return full_subcategory(C, [&](int x) { return reps[x] == x; });
  }

  Sub fibre(Functor const& p, int b) {
    auto const&      E = p.dom;
    std::vector<int> objs, arrs;
    for (std::size_t x = 0; x < E->num_objects(); ++x) {
      if (p.obj[x] == b) {
        objs.push_back(static_cast<int>(x));
      }
    }
    int idb = p.cod->id(b);
    for (std::size_t a = 0; a < E->num_arrows(); ++a) {
      if (p.arr[a] == idb) {
        arrs.push_back(static_cast<int>(a));
      }
    }
    return sub_from(E, objs, arrs);
  }

  Cat opposite(Cat const& C) {
    std::vector<std::string>   objs;
    std::vector<RawCat::Arrow> arrows;
    std::vector<int>           ids;
    for (std::size_t x = 0; x < C->num_objects(); ++x) {
      objs.push_back(C->object_label(x));
      ids.push_back(C->id(x));
    }
    for (std::size_t a = 0; a < C->num_arrows(); ++a) {
      arrows.push_back({C->arrow_label(a), C->tgt(a), C->src(a)});
    }
    return build_cat(objs, arrows, ids, [&](int g, int f) { return C->compose(f, g); });
  }

  ////////////////////////////////////////////////////////////////////////
  // Isomorphisms and equivalences
  ////////////////////////////////////////////////////////////////////////

  int inverse_of(Cat const& C, int a) {
    int x = C->src(a), y = C->tgt(a);
    for (int b : C->hom(y, x)) {
      if (C->compose(b, a) == C->id(x) && C->compose(a, b) == C->id(y)) {
        return b;
      }
    }
    return -1;
  }

  bool is_iso(Cat const& C, int a) {
    return inverse_of(C, a) >= 0;
  }

  bool is_groupoid(Cat const& C) {
    for (std::size_t a = 0; a < C->num_arrows(); ++a) {
      if (!is_iso(C, static_cast<int>(a))) {
        return false;
      }
    }
    return true;
  }

  bool isomorphic_objects(Cat const& C, int x, int y) {
    for (int a : C->hom(x, y)) {
      if (is_iso(C, a)) {
        return true;
      }
    }
    return false;
  }

  std::vector<int> iso_class_reps(Cat const& C) {
    int              n = static_cast<int>(C->num_objects());
    std::vector<int> rep(n, -1);
    for (int x = 0; x < n; ++x) {
      if (rep[x] >= 0) {
        continue;
      }
      rep[x] = x;
      for (int y = x + 1; y < n; ++y) {
        if (rep[y] < 0 && isomorphic_objects(C, x, y)) {
          rep[y] = x;
        }
      }
    }
    return rep;
  }

  bool is_faithful(Functor const& F) {
    auto const& C = *F.dom;
    for (std::size_t x = 0; x < C.num_objects(); ++x) {
      for (std::size_t y = 0; y < C.num_objects(); ++y) {
        std::set<int> img;
        for (int a : C.hom(x, y)) {
          if (!img.insert(F.arr[a]).second) {
            return false;
          }
        }
      }
    }
    return true;
  }

  bool is_full(Functor const& F) {
    auto const& C = *F.dom;
    auto const& D = *F.cod;
    for (std::size_t x = 0; x < C.num_objects(); ++x) {
      for (std::size_t y = 0; y < C.num_objects(); ++y) {
        std::set<int> img;
        for (int a : C.hom(x, y)) {
          img.insert(F.arr[a]);
        }
        if (img.size() != D.hom(F.obj[x], F.obj[y]).size()) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_fully_faithful(Functor const& F) {
    return is_faithful(F) && is_full(F);
  }

  bool is_surjective_on_isoclasses(Functor const& F) {
    auto const&       D = F.cod;
    auto              rep = iso_class_reps(D);
    std::set<int>     hit;
    for (int x : F.obj) {
      hit.insert(rep[x]);
    }
    for (std::size_t y = 0; y < D->num_objects(); ++y) {
      if (!hit.count(rep[y])) {
        return false;
      }
    }
    return true;
  }

  bool is_equivalence(Functor const& F) {
    return is_fully_faithful(F) && is_surjective_on_isoclasses(F);
  }

  bool is_isomorphism(Functor const& F) {
    std::set<int> o(F.obj.begin(), F.obj.end()), a(F.arr.begin(), F.arr.end());
    return o.size() == F.obj.size() && o.size() == F.cod->num_objects()
           && a.size() == F.arr.size() && a.size() == F.cod->num_arrows();
  }

  namespace {
    // Retraction C -> skeleton(C) sending x to its representative.
    Functor skeleton_retraction(Cat const& C, Sub const& S) {
      auto             rep = iso_class_reps(C);
      std::vector<int> to_sub(C->num_objects(), -1);
      for (std::size_t i = 0; i < S.objects.size(); ++i) {
        to_sub[S.objects[i]] = static_cast<int>(i);
      }
      std::vector<int> sub_arrow(C->num_arrows(), -1);
      for (std::size_t i = 0; i < S.arrows.size(); ++i) {
        sub_arrow[S.arrows[i]] = static_cast<int>(i);
      }
      // chosen iso phi_x : x -> rep x
      std::vector<int> phi(C->num_objects(), -1), phi_inv(C->num_objects(), -1);
      for (std::size_t x = 0; x < C->num_objects(); ++x) {
        if (rep[x] == static_cast<int>(x)) {
          phi[x] = phi_inv[x] = C->id(x);
          continue;
        }
        for (int a : C->hom(x, rep[x])) {
          int b = inverse_of(C, a);
          if (b >= 0) {
            phi[x]     = a;
            phi_inv[x] = b;
            break;
          }
        }
      }
      Functor R{C, S.cat, {}, {}};
      for (std::size_t x = 0; x < C->num_objects(); ++x) {
        R.obj.push_back(to_sub[rep[x]]);
      }
      for (std::size_t a = 0; a < C->num_arrows(); ++a) {
        int x = C->src(a), y = C->tgt(a);
        int m = C->compose(phi[y], C->compose(static_cast<int>(a), phi_inv[x]));
        R.arr.push_back(sub_arrow[m]);
      }
      return R;
    }
  }  // namespace

  std::optional<Functor> find_equivalence(Cat const& C, Cat const& D) {
    auto SC = skeleton(C);
    auto SD = skeleton(D);
    auto iso = find_isomorphism(SC.cat, SD.cat);
    if (!iso) {
      return std::nullopt;
    }
    auto r = skeleton_retraction(C, SC);
    return compose(SD.inclusion, compose(*iso, r));
  }

  bool equivalent(Cat const& C, Cat const& D) {
    return find_equivalence(C, D).has_value();
  }

  ////////////////////////////////////////////////////////////////////////
  // Connected components
  ////////////////////////////////////////////////////////////////////////

  Components pi0(Cat const& C) {
    UnionFind uf(C->num_objects());
    for (std::size_t a = 0; a < C->num_arrows(); ++a) {
      uf.unite(C->src(a), C->tgt(a));
    }
    Components r;
    r.of = uf.classes(&r.count);
    return r;
  }

  bool localisation_preserves_pullback_check(Functor const& F, Functor const& G) {
    if (!is_groupoid(F.cod)) {
      throw precondition_error("corner of the pullback square is not a groupoid");
    }
    auto P  = pullback(F, G);
    auto pP = pi0(P.cat);
    auto pX = pi0(F.dom);
    auto pY = pi0(G.dom);
    auto pZ = pi0(F.cod);
    std::vector<int> fx(pX.count), gy(pY.count);
    for (std::size_t x = 0; x < F.dom->num_objects(); ++x) {
      fx[pX.of[x]] = pZ.of[F.obj[x]];
    }
    for (std::size_t y = 0; y < G.dom->num_objects(); ++y) {
      gy[pY.of[y]] = pZ.of[G.obj[y]];
    }
    std::set<std::pair<int, int>> target;
    for (int a = 0; a < pX.count; ++a) {
      for (int b = 0; b < pY.count; ++b) {
        if (fx[a] == gy[b]) {
          target.emplace(a, b);
        }
      }
    }
    std::map<int, std::pair<int, int>> image;
    for (std::size_t o = 0; o < P.cat->num_objects(); ++o) {
      image[pP.of[o]] = {pX.of[P.first.obj[o]], pY.of[P.second.obj[o]]};
    }
    std::set<std::pair<int, int>> hit;
    for (auto const& [c, pr] : image) {
      if (!hit.insert(pr).second) {
        return false;
      }
    }
    return hit == target;
  }

}  // namespace fincat
