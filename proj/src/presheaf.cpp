#include "fincat/presheaf.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace fincat {

  std::size_t Presheaf::total() const {
    return std::accumulate(size.begin(), size.end(), std::size_t{0});
  }

  std::optional<Violation> check_presheaf(Presheaf const& P) {
    auto const& C = *P.base;
    if (P.size.size() != C.num_objects() || P.act.size() != C.num_arrows()) {
      return Violation{"presheaf has the wrong shape", {}};
    }
    for (std::size_t a = 0; a < C.num_arrows(); ++a) {
      int x = C.src(static_cast<int>(a)), y = C.tgt(static_cast<int>(a));
      if (static_cast<int>(P.act[a].size()) != P.size[y]) {
        return Violation{"restriction has the wrong domain", {C.arrow_label(a)}};
      }
      for (int e = 0; e < P.size[y]; ++e) {
        int v = P.act[a][e];
        if (v < 0 || v >= P.size[x]) {
          return Violation{"restriction leaves its codomain", {C.arrow_label(a)}};
        }
        if (C.is_identity(static_cast<int>(a)) && v != e) {
          return Violation{"identity does not act trivially", {C.arrow_label(a)}};
        }
      }
    }
    for (std::size_t f = 0; f < C.num_arrows(); ++f) {
      for (int g : C.out(C.tgt(static_cast<int>(f)))) {
        int gf = C.compose(g, static_cast<int>(f));
        for (int e = 0; e < P.size[C.tgt(g)]; ++e) {
          if (P.act[gf][e] != P.act[f][P.act[g][e]]) {
            return Violation{"restriction is not functorial",
                             {C.arrow_label(g), C.arrow_label(f)}};
          }
        }
      }
    }
    return std::nullopt;
  }

  std::optional<Violation> check_presheaf_map(Presheaf const& P, Presheaf const& Q,
                                              PresheafMap const& f) {
    auto const& C = *P.base;
    if (f.comp.size() != C.num_objects()) {
      return Violation{"map has the wrong shape", {}};
    }
    for (std::size_t x = 0; x < C.num_objects(); ++x) {
      if (static_cast<int>(f.comp[x].size()) != P.size[x]) {
        return Violation{"component has the wrong domain", {C.object_label(x)}};
      }
      for (int v : f.comp[x]) {
        if (v < 0 || v >= Q.size[x]) {
          return Violation{"component leaves its codomain", {C.object_label(x)}};
        }
      }
    }
    for (std::size_t a = 0; a < C.num_arrows(); ++a) {
      int x = C.src(static_cast<int>(a)), y = C.tgt(static_cast<int>(a));
      for (int e = 0; e < P.size[y]; ++e) {
        if (f.comp[x][P.act[a][e]] != Q.act[a][f.comp[y][e]]) {
          return Violation{"map is not natural", {C.arrow_label(a)}};
        }
      }
    }
    return std::nullopt;
  }

  Presheaf as_presheaf(Copresheaf const& P) {
    return Presheaf{opposite(P.base), P.size, P.act};
  }

  Presheaf yoneda(Cat const& C, int c) {
    Presheaf P{C, {}, {}};
    for (std::size_t x = 0; x < C->num_objects(); ++x) {
      P.size.push_back(static_cast<int>(C->hom(static_cast<int>(x), c).size()));
    }
    for (std::size_t a = 0; a < C->num_arrows(); ++a) {
      std::vector<int> f;
      for (int u : C->hom(C->tgt(static_cast<int>(a)), c)) {
        f.push_back(C->hom_index(C->compose(u, static_cast<int>(a))));
      }
      P.act.push_back(std::move(f));
    }
    return P;
  }

  Presheaf terminal_presheaf(Cat const& C) {
    return Presheaf{C, std::vector<int>(C->num_objects(), 1),
                    std::vector<std::vector<int>>(C->num_arrows(), std::vector<int>{0})};
  }

  Presheaf empty_presheaf(Cat const& C) {
    return Presheaf{C, std::vector<int>(C->num_objects(), 0),
                    std::vector<std::vector<int>>(C->num_arrows())};
  }

  Presheaf coproduct(Presheaf const& P, Presheaf const& Q) {
    Presheaf R{P.base, {}, {}};
    auto const& C = *P.base;
    for (std::size_t x = 0; x < C.num_objects(); ++x) {
      R.size.push_back(P.size[x] + Q.size[x]);
    }
    for (std::size_t a = 0; a < C.num_arrows(); ++a) {
      int              x = C.src(static_cast<int>(a));
      std::vector<int> f = P.act[a];
      for (int v : Q.act[a]) {
        f.push_back(P.size[x] + v);
      }
      R.act.push_back(std::move(f));
    }
    return R;
  }

  PresheafMap identity_map(Presheaf const& P) {
    PresheafMap f;
    for (int n : P.size) {
      std::vector<int> c(n);
      std::iota(c.begin(), c.end(), 0);
      f.comp.push_back(std::move(c));
    }
    return f;
  }

  PresheafMap compose(PresheafMap const& g, PresheafMap const& f) {
    PresheafMap h;
    for (std::size_t x = 0; x < f.comp.size(); ++x) {
      std::vector<int> c;
      for (int v : f.comp[x]) {
        c.push_back(g.comp[x][v]);
      }
      h.comp.push_back(std::move(c));
    }
    return h;
  }

  bool is_injective(PresheafMap const& f) {
    for (auto const& c : f.comp) {
      std::set<int> s(c.begin(), c.end());
      if (s.size() != c.size()) {
        return false;
      }
    }
    return true;
  }

  bool is_bijective(PresheafMap const& f) {
    // callers compare sizes; a bijection here is injective onto a same-size set
    for (auto const& c : f.comp) {
      std::set<int> s(c.begin(), c.end());
      if (s.size() != c.size()
          || (!c.empty() && (*s.begin() != 0 || *s.rbegin() != static_cast<int>(c.size()) - 1))) {
        return false;
      }
    }
    return true;
  }

  PresheafMap yoneda_map(Cat const& C, Presheaf const& P, int c, int e) {
    PresheafMap f;
    for (std::size_t x = 0; x < C->num_objects(); ++x) {
      std::vector<int> comp;
      for (int u : C->hom(static_cast<int>(x), c)) {
        comp.push_back(P.act[u][e]);
      }
      f.comp.push_back(std::move(comp));
    }
    return f;
  }

  namespace {
    // pin[x][e] >= 0 fixes the image of e in P(x)
    void enumerate_pinned(Presheaf const& P, Presheaf const& Q,
                          std::vector<std::vector<int>> const*           pin,
                          std::function<bool(PresheafMap const&)> const& sink) {
      auto const&      C  = *P.base;
      int const        no = static_cast<int>(C.num_objects());
      std::vector<int> off(no + 1, 0);
      for (int x = 0; x < no; ++x) {
        off[x + 1] = off[x] + P.size[x];
      }
      int const n = off[no];
      std::vector<int> obj_of(n);
      for (int x = 0; x < no; ++x) {
        for (int e = off[x]; e < off[x + 1]; ++e) {
          obj_of[e] = x;
        }
      }
      // constraint (a, element of P(tgt a), element P(a)e of P(src a)), checked
      // once the later of the two is assigned
      struct Con {
        int a, hi_is_tgt, tgt_elem, src_elem;
      };
      std::vector<std::vector<Con>> cons(n);
      for (std::size_t a = 0; a < C.num_arrows(); ++a) {
        if (C.is_identity(static_cast<int>(a))) {
          continue;
        }
        int x = C.src(static_cast<int>(a)), y = C.tgt(static_cast<int>(a));
        for (int e = 0; e < P.size[y]; ++e) {
          int ge = off[y] + e, gs = off[x] + P.act[a][e];
          cons[std::max(ge, gs)].push_back({static_cast<int>(a), ge > gs, ge, gs});
        }
      }
      std::vector<int> val(n, -1);
      bool             stopped = false;
      PresheafMap      out;
      std::function<void(int)> rec = [&](int i) {
        if (i == n) {
          out.comp.assign(no, {});
          for (int x = 0; x < no; ++x) {
            out.comp[x].assign(val.begin() + off[x], val.begin() + off[x + 1]);
          }
          stopped = !sink(out);
          return;
        }
        int x  = obj_of[i];
        int lo = 0, hi = Q.size[x];
        if (pin != nullptr && (*pin)[x][i - off[x]] >= 0) {
          lo = (*pin)[x][i - off[x]];
          hi = lo + 1;
        }
        for (int v = lo; v < hi; ++v) {
          val[i]  = v;
          bool ok = true;
          for (auto const& c : cons[i]) {
            if (Q.act[c.a][val[c.tgt_elem]] != val[c.src_elem]) {
              ok = false;
              break;
            }
          }
          if (ok) {
            rec(i + 1);
          }
          if (stopped) {
            return;
          }
        }
        val[i] = -1;
      };
      rec(0);
    }
  }  // namespace

  void enumerate_presheaf_maps(Presheaf const& P, Presheaf const& Q,
                               std::function<bool(PresheafMap const&)> const& sink) {
    enumerate_pinned(P, Q, nullptr, sink);
  }

  std::vector<PresheafMap> all_presheaf_maps(Presheaf const& P, Presheaf const& Q) {
    std::vector<PresheafMap> out;
    enumerate_presheaf_maps(P, Q, [&](PresheafMap const& f) {
      out.push_back(f);
      return true;
    });
    return out;
  }

  std::optional<PresheafMap> find_presheaf_iso(Presheaf const& P, Presheaf const& Q) {
    if (P.size != Q.size) {
      return std::nullopt;
    }
    std::optional<PresheafMap> r;
    enumerate_presheaf_maps(P, Q, [&](PresheafMap const& f) {
      if (is_bijective(f)) {
        r = f;
        return false;
      }
      return true;
    });
    return r;
  }

  Elements elements(Presheaf const& P) {
    auto const&                    C = P.base;
    Elements                       R;
    std::map<std::pair<int, int>, int> oidx;
    std::vector<std::string>       olbl;
    for (std::size_t x = 0; x < C->num_objects(); ++x) {
      for (int e = 0; e < P.size[x]; ++e) {
        oidx[{static_cast<int>(x), e}] = static_cast<int>(R.objects.size());
        R.objects.emplace_back(static_cast<int>(x), e);
        olbl.push_back(C->object_label(x) + ":" + std::to_string(e));
      }
    }
    // arrow (a, e) : (x, P(a) e) -> (y, e)
    std::vector<std::pair<int, int>>   arrs;
    std::vector<RawCat::Arrow>         arrows;
    std::map<std::pair<int, int>, int> aidx;
    std::vector<int>                   ids(R.objects.size());
    for (std::size_t a = 0; a < C->num_arrows(); ++a) {
      int x = C->src(static_cast<int>(a)), y = C->tgt(static_cast<int>(a));
      for (int e = 0; e < P.size[y]; ++e) {
        int s = oidx.at({x, P.act[a][e]}), t = oidx.at({y, e});
        int k = static_cast<int>(arrows.size());
        if (C->is_identity(static_cast<int>(a))) {
          ids[t] = k;
        }
        aidx[{static_cast<int>(a), e}] = k;
        arrs.emplace_back(static_cast<int>(a), e);
        arrows.push_back({C->arrow_label(a) + "@" + std::to_string(e), s, t});
      }
    }
    R.cat = build_cat(olbl, arrows, ids, [&](int g, int f) {
      return aidx.at({C->compose(arrs[g].first, arrs[f].first), arrs[g].second});
    });
    R.proj = Functor{R.cat, C, {}, {}};
    for (auto [x, e] : R.objects) {
      R.proj.obj.push_back(x);
    }
    for (auto [a, e] : arrs) {
      R.proj.arr.push_back(a);
    }
    return R;
  }

  ////////////////////////////////////////////////////////////////////////
  // Restriction and left Kan extension
  ////////////////////////////////////////////////////////////////////////

  Presheaf restrict(Functor const& F, Presheaf const& P) {
    Presheaf Q{F.dom, {}, {}};
    for (int y : F.obj) {
      Q.size.push_back(P.size[y]);
    }
    for (int b : F.arr) {
      Q.act.push_back(P.act[b]);
    }
    return Q;
  }

  PresheafMap restrict(Functor const& F, PresheafMap const& f) {
    PresheafMap g;
    for (int y : F.obj) {
      g.comp.push_back(f.comp[y]);
    }
    return g;
  }

  int Lan::element(int d, int c, int p, int u) const {
    int n = static_cast<int>(F.cod->hom(d, F.obj[c]).size());
    return class_of[d][offset[d][c] + p * n + F.cod->hom_index(u)];
  }

  Lan lan(Functor const& F, Presheaf const& P) {
    auto const& C = *F.dom;
    auto const& D = *F.cod;
    Lan         L;
    L.F     = F;
    L.P     = P;
    L.value = Presheaf{F.cod, {}, {}};
    int const nd = static_cast<int>(D.num_objects());
    L.triples.resize(nd);
    L.class_of.resize(nd);
    L.rep.resize(nd);
    L.offset.resize(nd);
    for (int d = 0; d < nd; ++d) {
      auto& T = L.triples[d];
      for (std::size_t c = 0; c < C.num_objects(); ++c) {
        L.offset[d].push_back(static_cast<int>(T.size()));
        for (int p = 0; p < P.size[c]; ++p) {
          for (int u : D.hom(d, F.obj[c])) {
            T.emplace_back(static_cast<int>(c), p, u);
          }
        }
      }
      UnionFind uf(T.size());
      auto      idx = [&](int c, int p, int u) {
        int n = static_cast<int>(D.hom(d, F.obj[c]).size());
        return L.offset[d][c] + p * n + D.hom_index(u);
      };
      // (c', p', F h . u) ~ (c, P(h) p', u) for h : c -> c'
      for (std::size_t h = 0; h < C.num_arrows(); ++h) {
        int c = C.src(static_cast<int>(h)), c2 = C.tgt(static_cast<int>(h));
        for (int p2 = 0; p2 < P.size[c2]; ++p2) {
          for (int u : D.hom(d, F.obj[c])) {
            uf.unite(idx(c2, p2, D.compose(F.arr[h], u)), idx(c, P.act[h][p2], u));
          }
        }
      }
      int count = 0;
      L.class_of[d] = uf.classes(&count);
      L.rep[d].assign(count, -1);
      for (std::size_t t = 0; t < T.size(); ++t) {
        if (L.rep[d][L.class_of[d][t]] < 0) {
          L.rep[d][L.class_of[d][t]] = static_cast<int>(t);
        }
      }
      L.value.size.push_back(count);
    }
    for (std::size_t k = 0; k < D.num_arrows(); ++k) {
      int              d2 = D.src(static_cast<int>(k)), d = D.tgt(static_cast<int>(k));
      std::vector<int> f;
      for (int t : L.rep[d]) {
        auto [c, p, u] = L.triples[d][t];
        f.push_back(L.element(d2, c, p, D.compose(u, static_cast<int>(k))));
      }
      L.value.act.push_back(std::move(f));
    }
    return L;
  }

  PresheafMap lan_map(Lan const& from, Lan const& to, PresheafMap const& f) {
    PresheafMap g;
    for (std::size_t d = 0; d < from.rep.size(); ++d) {
      std::vector<int> comp;
      for (int t : from.rep[d]) {
        auto [c, p, u] = from.triples[d][t];
        comp.push_back(to.element(static_cast<int>(d), c, f.comp[c][p], u));
      }
      g.comp.push_back(std::move(comp));
    }
    return g;
  }

  PresheafMap lan_unit(Lan const& L) {
    PresheafMap g;
    for (std::size_t c = 0; c < L.F.dom->num_objects(); ++c) {
      int              d = L.F.obj[c];
      std::vector<int> comp;
      for (int p = 0; p < L.P.size[c]; ++p) {
        comp.push_back(L.element(d, static_cast<int>(c), p, L.F.cod->id(d)));
      }
      g.comp.push_back(std::move(comp));
    }
    return g;
  }

  PresheafMap lan_counit(Lan const& L, Presheaf const& Q) {
    PresheafMap g;
    for (std::size_t d = 0; d < L.rep.size(); ++d) {
      std::vector<int> comp;
      for (int t : L.rep[d]) {
        auto [c, q, u] = L.triples[d][t];
        comp.push_back(Q.act[u][q]);
      }
      g.comp.push_back(std::move(comp));
    }
    return g;
  }

  PresheafMap lan_mate(NatTrans const& m, Lan const& along_k, Lan const& along_l) {
    auto const& C = *m.src.cod;
    PresheafMap g;
    for (std::size_t d = 0; d < along_k.rep.size(); ++d) {
      std::vector<int> comp;
      for (int t : along_k.rep[d]) {
        auto [w, q, u] = along_k.triples[d][t];
        comp.push_back(along_l.element(static_cast<int>(d), w, q, C.compose(m.comp[w], u)));
      }
      g.comp.push_back(std::move(comp));
    }
    return g;
  }

  ////////////////////////////////////////////////////////////////////////
  // Colimits and limits
  ////////////////////////////////////////////////////////////////////////

  PresheafPushout presheaf_pushout(Presheaf const& P, Presheaf const& Q, Presheaf const& R,
                                   PresheafMap const& f, PresheafMap const& g) {
    auto const&     C = *P.base;
    PresheafPushout O;
    O.value = Presheaf{P.base, {}, {}};
    std::vector<std::vector<int>> cls(C.num_objects()), rep(C.num_objects());
    for (std::size_t x = 0; x < C.num_objects(); ++x) {
      int       nq = Q.size[x];
      UnionFind uf(nq + R.size[x]);
      for (int e = 0; e < P.size[x]; ++e) {
        uf.unite(f.comp[x][e], nq + g.comp[x][e]);
      }
      int count = 0;
      cls[x]    = uf.classes(&count);
      rep[x].assign(count, -1);
      for (std::size_t i = 0; i < cls[x].size(); ++i) {
        if (rep[x][cls[x][i]] < 0) {
          rep[x][cls[x][i]] = static_cast<int>(i);
        }
      }
      O.value.size.push_back(count);
      O.inl.comp.emplace_back(cls[x].begin(), cls[x].begin() + nq);
      O.inr.comp.emplace_back(cls[x].begin() + nq, cls[x].end());
    }
    for (std::size_t a = 0; a < C.num_arrows(); ++a) {
      int              x = C.src(static_cast<int>(a)), y = C.tgt(static_cast<int>(a));
      std::vector<int> act;
      for (int r : rep[y]) {
        act.push_back(r < Q.size[y] ? cls[x][Q.act[a][r]]
                                    : cls[x][Q.size[x] + R.act[a][r - Q.size[y]]]);
      }
      O.value.act.push_back(std::move(act));
    }
    return O;
  }

  PresheafMap pushout_induced(PresheafPushout const& po, PresheafMap const& from_left,
                              PresheafMap const& from_right) {
    PresheafMap h;
    for (std::size_t x = 0; x < po.value.size.size(); ++x) {
      std::vector<int> comp(po.value.size[x], -1);
      auto             put = [&](int cls, int v) {
        if (comp[cls] >= 0 && comp[cls] != v) {
          throw law_error("cocone does not commute with the pushout span");
        }
        comp[cls] = v;
      };
      for (std::size_t e = 0; e < from_left.comp[x].size(); ++e) {
        put(po.inl.comp[x][e], from_left.comp[x][e]);
      }
      for (std::size_t e = 0; e < from_right.comp[x].size(); ++e) {
        put(po.inr.comp[x][e], from_right.comp[x][e]);
      }
      h.comp.push_back(std::move(comp));
    }
    return h;
  }

  namespace {
    PresheafMap inverse_bijection(PresheafMap const& f) {
      PresheafMap g;
      for (auto const& c : f.comp) {
        std::vector<int> inv(c.size());
        for (std::size_t e = 0; e < c.size(); ++e) {
          inv[c[e]] = static_cast<int>(e);
        }
        g.comp.push_back(std::move(inv));
      }
      return g;
    }
  }  // namespace

  PresheafSeqColimit presheaf_seq_colimit(std::vector<Presheaf> const&    stages,
                                          std::vector<PresheafMap> const& maps,
                                          int                             max_stages) {
    if (stages.empty() || maps.size() + 1 != stages.size()) {
      throw precondition_error("sequential colimit needs one map between consecutive stages");
    }
    PresheafSeqColimit R;
    int const          n = std::min(static_cast<int>(stages.size()), max_stages);
    for (int i = 0; i < n; ++i) {
      R.growth.push_back(stages[i].total());
    }
    int from = n - 1;
    while (from > 0 && stages[from - 1].size == stages[from].size && is_bijective(maps[from - 1])) {
      --from;
    }
    if (from >= n - 1) {
      return R;
    }
    R.status = Status::Exact;
    R.stage  = from;
    R.value  = stages[from];
    for (int i = 0; i < n; ++i) {
      PresheafMap c = identity_map(stages[i]);
      if (i <= from) {
        for (int j = i; j < from; ++j) {
          c = compose(maps[j], c);
        }
      } else {
        PresheafMap to = identity_map(stages[from]);
        for (int j = from; j < i; ++j) {
          to = compose(maps[j], to);
        }
        c = inverse_bijection(to);
      }
      R.cocone.push_back(c);
    }
    return R;
  }

  Image image(Presheaf const& P, Presheaf const& Q, PresheafMap const& f) {
    auto const& C = *P.base;
    Image       I;
    I.value = Presheaf{P.base, {}, {}};
    std::vector<std::vector<int>> pos(C.num_objects());
    for (std::size_t x = 0; x < C.num_objects(); ++x) {
      std::set<int>    s(f.comp[x].begin(), f.comp[x].end());
      std::vector<int> incl(s.begin(), s.end());
      pos[x].assign(Q.size[x], -1);
      for (std::size_t i = 0; i < incl.size(); ++i) {
        pos[x][incl[i]] = static_cast<int>(i);
      }
      std::vector<int> cor;
      for (int v : f.comp[x]) {
        cor.push_back(pos[x][v]);
      }
      I.value.size.push_back(static_cast<int>(incl.size()));
      I.inclusion.comp.push_back(std::move(incl));
      I.corestriction.comp.push_back(std::move(cor));
    }
    for (std::size_t a = 0; a < C.num_arrows(); ++a) {
      int              x = C.src(static_cast<int>(a)), y = C.tgt(static_cast<int>(a));
      std::vector<int> act;
      for (int v : I.inclusion.comp[y]) {
        act.push_back(pos[x][Q.act[a][v]]);
      }
      I.value.act.push_back(std::move(act));
    }
    return I;
  }

  PresheafPullback presheaf_pullback(Presheaf const& Q, Presheaf const& R, Presheaf const& S,
                                     PresheafMap const& f, PresheafMap const& g) {
    (void) R;
    auto const&      C = *Q.base;
    PresheafPullback B;
    B.value = Presheaf{Q.base, {}, {}};
    std::vector<std::map<std::pair<int, int>, int>> idx(C.num_objects());
    B.pairs.resize(C.num_objects());
    for (std::size_t x = 0; x < C.num_objects(); ++x) {
      std::vector<int> first, second;
      for (int q = 0; q < Q.size[x]; ++q) {
        for (int s = 0; s < S.size[x]; ++s) {
          if (f.comp[x][q] == g.comp[x][s]) {
            idx[x][{q, s}] = static_cast<int>(B.pairs[x].size());
            B.pairs[x].emplace_back(q, s);
            first.push_back(q);
            second.push_back(s);
          }
        }
      }
      B.value.size.push_back(static_cast<int>(B.pairs[x].size()));
      B.first.comp.push_back(std::move(first));
      B.second.comp.push_back(std::move(second));
    }
    for (std::size_t a = 0; a < C.num_arrows(); ++a) {
      int              x = C.src(static_cast<int>(a)), y = C.tgt(static_cast<int>(a));
      std::vector<int> act;
      for (auto [q, s] : B.pairs[y]) {
        act.push_back(idx[x].at({Q.act[a][q], S.act[a][s]}));
      }
      B.value.act.push_back(std::move(act));
    }
    return B;
  }

  ////////////////////////////////////////////////////////////////////////
  // Arrow-category left adjoint
  ////////////////////////////////////////////////////////////////////////

  ArrowObject arrow_restrict(NatTrans const& m, Presheaf const& P) {
    ArrowObject X;
    X.l_part = restrict(m.tgt, P);
    X.k_part = restrict(m.src, P);
    for (std::size_t w = 0; w < m.comp.size(); ++w) {
      X.map.comp.push_back(P.act[m.comp[w]]);
    }
    return X;
  }

  ArrowLeftAdjoint arrow_left_adjoint(NatTrans const& m, ArrowObject const& X) {
    ArrowLeftAdjoint A;
    A.k_l   = lan(m.src, X.l_part);
    A.k_k   = lan(m.src, X.k_part);
    A.l_l   = lan(m.tgt, X.l_part);
    A.leg_k = lan_map(A.k_l, A.k_k, X.map);
    A.leg_l = lan_mate(m, A.k_l, A.l_l);
    A.value = presheaf_pushout(A.k_l.value, A.k_k.value, A.l_l.value, A.leg_k, A.leg_l);
    return A;
  }

  std::size_t count_arrow_maps(ArrowObject const& X, ArrowObject const& Y) {
    // for each l-component, count k-components agreeing on the image of X.map
    std::size_t n = 0;
    enumerate_presheaf_maps(X.l_part, Y.l_part, [&](PresheafMap const& fl) {
      PresheafMap                   top = compose(Y.map, fl);
      std::vector<std::vector<int>> pin;
      bool                          consistent = true;
      for (std::size_t w = 0; w < X.k_part.size.size(); ++w) {
        pin.emplace_back(X.k_part.size[w], -1);
        for (std::size_t e = 0; e < X.map.comp[w].size(); ++e) {
          int& p = pin[w][X.map.comp[w][e]];
          consistent = consistent && (p < 0 || p == top.comp[w][e]);
          p          = top.comp[w][e];
        }
      }
      if (consistent) {
        enumerate_pinned(X.k_part, Y.k_part, &pin, [&](PresheafMap const&) {
          ++n;
          return true;
        });
      }
      return true;
    });
    return n;
  }

}  // namespace fincat
