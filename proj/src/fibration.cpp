#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "fincat/fibration.hpp"

namespace fincat {

  ////////////////////////////////////////////////////////////////////////
  // Discrete fibrations and cofinality
  ////////////////////////////////////////////////////////////////////////

  namespace {
    bool unique_lifts(Functor const& p, bool from_source) {
      auto const& E = *p.dom;
      auto const& B = *p.cod;
      for (std::size_t e = 0; e < E.num_objects(); ++e) {
        int         b     = p.obj[e];
        auto const& base  = from_source ? B.out(b) : B.in(b);
        auto const& above = from_source ? E.out(static_cast<int>(e)) : E.in(static_cast<int>(e));
        for (int f : base) {
          int n = 0;
          for (int a : above) {
            n += p.arr[a] == f;
          }
          if (n != 1) {
            return false;
          }
        }
      }
      return true;
    }

    // Components of F | d: elements (a, u : F a -> d).
    struct SliceComponents {
      std::vector<std::vector<int>> offset;  // offset[d][a]
      std::vector<std::vector<int>> of;      // of[d][element]
      std::vector<int>              count;
    };

    SliceComponents slice_components(Functor const& F) {
      auto const&     A = *F.dom;
      auto const&     D = *F.cod;
      SliceComponents S;
      for (std::size_t d = 0; d < D.num_objects(); ++d) {
        std::vector<int> off;
        int              n = 0;
        for (std::size_t a = 0; a < A.num_objects(); ++a) {
          off.push_back(n);
          n += static_cast<int>(D.hom(F.obj[a], static_cast<int>(d)).size());
        }
        UnionFind uf(n);
        for (std::size_t h = 0; h < A.num_arrows(); ++h) {
          int a = A.src(static_cast<int>(h)), a2 = A.tgt(static_cast<int>(h));
          for (int u2 : D.hom(F.obj[a2], static_cast<int>(d))) {
            int u = D.compose(u2, F.arr[h]);
            uf.unite(off[a] + D.hom_index(u), off[a2] + D.hom_index(u2));
          }
        }
        int  count = 0;
        auto cls   = uf.classes(&count);
        S.offset.push_back(off);
        S.of.emplace_back(cls.begin(), cls.end());
        S.count.push_back(count);
      }
      return S;
    }
  }  // namespace

  bool is_left_fibration(Functor const& p) {
    return unique_lifts(p, true);
  }

  bool is_right_fibration(Functor const& p) {
    return unique_lifts(p, false);
  }

  bool is_left_cofinal(Functor const& F) {
    auto S = slice_components(F);
    return std::all_of(S.count.begin(), S.count.end(), [](int c) { return c == 1; });
  }

  CofinalFactorization cofinal_factorization(Functor const& F) {
    auto const&          A = *F.dom;
    auto const&          D = *F.cod;
    auto                 S = slice_components(F);
    CofinalFactorization R;
    std::vector<std::vector<int>> obj_index(D.num_objects());
    std::vector<std::string>      olbl;
    for (std::size_t d = 0; d < D.num_objects(); ++d) {
      for (int k = 0; k < S.count[d]; ++k) {
        obj_index[d].push_back(static_cast<int>(R.objects.size()));
        R.objects.emplace_back(static_cast<int>(d), k);
        olbl.push_back(D.object_label(static_cast<int>(d)) + ":" + std::to_string(k));
      }
    }
    // Pushforward of component k of F | d along g : d -> d'.
    auto push = [&](int g, int k) {
      int d = D.src(g), d2 = D.tgt(g);
      for (std::size_t a = 0; a < A.num_objects(); ++a) {
        for (int u : D.hom(F.obj[a], d)) {
          if (S.of[d][S.offset[d][a] + D.hom_index(u)] == k) {
            int gu = D.compose(g, u);
            return S.of[d2][S.offset[d2][a] + D.hom_index(gu)];
          }
        }
      }
      throw law_error("empty slice component");
    };
    std::vector<RawCat::Arrow>  arrows;
    std::vector<int>            ids(R.objects.size());
    std::map<std::pair<int, int>, int> aidx;  // (g, object) -> arrow
    std::vector<std::pair<int, int>>   adata;
    for (std::size_t o = 0; o < R.objects.size(); ++o) {
      auto [d, k] = R.objects[o];
      for (int g : D.out(d)) {
        int t = obj_index[D.tgt(g)][push(g, k)];
        aidx[{g, static_cast<int>(o)}] = static_cast<int>(arrows.size());
        if (D.is_identity(g)) {
          ids[o] = static_cast<int>(arrows.size());
        }
        arrows.push_back({D.arrow_label(g) + "@" + std::to_string(k), static_cast<int>(o), t});
        adata.emplace_back(g, static_cast<int>(o));
      }
    }
    R.middle = build_cat(olbl, arrows, ids, [&](int g, int f) {
      if (arrows[f].tgt != arrows[g].src) {
        return -1;
      }
      return aidx.at({D.compose(adata[g].first, adata[f].first), adata[f].second});
    });
    R.fibration = Functor{R.middle, F.cod, {}, {}};
    for (auto [d, k] : R.objects) {
      R.fibration.obj.push_back(d);
    }
    for (auto [g, o] : adata) {
      R.fibration.arr.push_back(g);
    }
    R.cofinal = Functor{F.dom, R.middle, {}, {}};
    auto at_id = [&](int a) {
      int d = F.obj[a];
      return obj_index[d][S.of[d][S.offset[d][a] + D.hom_index(D.id(d))]];
    };
    for (std::size_t a = 0; a < A.num_objects(); ++a) {
      R.cofinal.obj.push_back(at_id(static_cast<int>(a)));
    }
    for (std::size_t h = 0; h < A.num_arrows(); ++h) {
      R.cofinal.arr.push_back(aidx.at({F.arr[h], at_id(A.src(static_cast<int>(h)))}));
    }
    return R;
  }

  ////////////////////////////////////////////////////////////////////////
  // Cocartesian arrows
  ////////////////////////////////////////////////////////////////////////

  bool is_cocartesian(Functor const& p, int a) {
    auto const& E = *p.dom;
    auto const& B = *p.cod;
    int         e = E.src(a), e2 = E.tgt(a);
    for (std::size_t zz = 0; zz < E.num_objects(); ++zz) {
      int         z = static_cast<int>(zz);
      std::size_t corner = 0;
      for (int psi : E.hom(e, z)) {
        for (int beta : B.hom(p.obj[e2], p.obj[z])) {
          corner += B.compose(beta, p.arr[a]) == p.arr[psi];
        }
      }
      auto const& from = E.hom(e2, z);
      if (from.size() != corner) {
        return false;
      }
      std::set<std::pair<int, int>> seen;
      for (int chi : from) {
        seen.emplace(E.compose(chi, a), p.arr[chi]);
      }
      if (seen.size() != from.size()) {
        return false;
      }
    }
    return true;
  }

  bool is_cartesian(Functor const& p, int a) {
    auto const& E = *p.dom;
    auto const& B = *p.cod;
    int         e = E.src(a), e2 = E.tgt(a);
    for (std::size_t zz = 0; zz < E.num_objects(); ++zz) {
      int         z = static_cast<int>(zz);
      std::size_t corner = 0;
      for (int psi : E.hom(z, e2)) {
        for (int beta : B.hom(p.obj[z], p.obj[e])) {
          corner += B.compose(p.arr[a], beta) == p.arr[psi];
        }
      }
      auto const& from = E.hom(z, e);
      if (from.size() != corner) {
        return false;
      }
      std::set<std::pair<int, int>> seen;
      for (int chi : from) {
        seen.emplace(E.compose(a, chi), p.arr[chi]);
      }
      if (seen.size() != from.size()) {
        return false;
      }
    }
    return true;
  }

  std::vector<int> cocartesian_arrows(Functor const& p) {
    std::vector<int> out;
    for (std::size_t a = 0; a < p.dom->num_arrows(); ++a) {
      if (is_cocartesian(p, static_cast<int>(a))) {
        out.push_back(static_cast<int>(a));
      }
    }
    return out;
  }

  std::vector<int> cartesian_arrows(Functor const& p) {
    std::vector<int> out;
    for (std::size_t a = 0; a < p.dom->num_arrows(); ++a) {
      if (is_cartesian(p, static_cast<int>(a))) {
        out.push_back(static_cast<int>(a));
      }
    }
    return out;
  }

  std::vector<int> cocartesian_lifts_of(Functor const& p, int f) {
    std::vector<int> out;
    for (std::size_t a = 0; a < p.dom->num_arrows(); ++a) {
      if (p.arr[a] == f && is_cocartesian(p, static_cast<int>(a))) {
        out.push_back(static_cast<int>(a));
      }
    }
    return out;
  }

  std::vector<int> cartesian_lifts_of(Functor const& p, int f) {
    std::vector<int> out;
    for (std::size_t a = 0; a < p.dom->num_arrows(); ++a) {
      if (p.arr[a] == f && is_cartesian(p, static_cast<int>(a))) {
        out.push_back(static_cast<int>(a));
      }
    }
    return out;
  }

  FibreFamily fibre_family(Functor const& p) {
    FibreFamily F;
    F.base = p.cod;
    F.fibre_obj.assign(p.dom->num_objects(), -1);
    F.fibre_arr.assign(p.dom->num_arrows(), -1);
    for (std::size_t b = 0; b < p.cod->num_objects(); ++b) {
      F.fibre.push_back(fibre(p, static_cast<int>(b)));
      auto const& S = F.fibre.back();
      for (std::size_t i = 0; i < S.objects.size(); ++i) {
        F.fibre_obj[S.objects[i]] = static_cast<int>(i);
      }
      for (std::size_t i = 0; i < S.arrows.size(); ++i) {
        F.fibre_arr[S.arrows[i]] = static_cast<int>(i);
      }
    }
    return F;
  }

  int transport_arrow(MarkedFibration const& mf, int f, int v) {
    auto const& E  = *mf.total();
    int         l  = mf.lift(E.src(v), f);
    int         l2 = mf.lift(E.tgt(v), f);
    int         want = E.compose(l2, v);
    int         id   = mf.base()->id(mf.base()->tgt(f));
    for (int chi : E.hom(E.tgt(l), E.tgt(l2))) {
      if (mf.p.arr[chi] == id && E.compose(chi, l) == want) {
        return chi;
      }
    }
    throw law_error("no transport of " + E.arrow_label(v) + " along "
                    + mf.base()->arrow_label(f));
  }

  namespace {
    void build_transports(MarkedFibration& mf) {
      auto const& B = *mf.base();
      auto const& E = *mf.total();
      for (std::size_t ff = 0; ff < B.num_arrows(); ++ff) {
        int         f  = static_cast<int>(ff);
        auto const& S  = mf.fibres.fibre[B.src(f)];
        auto const& T  = mf.fibres.fibre[B.tgt(f)];
        Functor     tr{S.cat, T.cat, {}, {}};
        for (int e : S.objects) {
          tr.obj.push_back(mf.fibres.fibre_obj[E.tgt(mf.lift(e, f))]);
        }
        for (int v : S.arrows) {
          tr.arr.push_back(mf.fibres.fibre_arr[transport_arrow(mf, f, v)]);
        }
        mf.transport.push_back(tr);
      }
    }
  }  // namespace

  FibrationVerdict is_cocartesian_fibration(Functor const& p) {
    auto const&     E = *p.dom;
    auto const&     B = *p.cod;
    MarkedFibration mf;
    mf.p           = p;
    mf.cocartesian = cocartesian_arrows(p);
    mf.marked.assign(E.num_arrows(), 0);
    for (int a : mf.cocartesian) {
      mf.marked[a] = 1;
    }
    mf.cleavage.resize(E.num_objects());
    FibrationVerdict v;
    for (std::size_t ee = 0; ee < E.num_objects(); ++ee) {
      int e = static_cast<int>(ee);
      for (int f : B.out(p.obj[e])) {
        int lift = -1;
        if (B.is_identity(f)) {
          lift = E.id(e);
        } else {
          for (int a : E.out(e)) {
            if (p.arr[a] == f && mf.marked[a]) {
              lift = a;
              break;
            }
          }
        }
        if (lift < 0) {
          v.witness = std::make_pair(e, f);
          return v;
        }
        mf.cleavage[e][f] = lift;
      }
    }
    mf.fibres = fibre_family(p);
    build_transports(mf);
    v.fibration = std::move(mf);
    return v;
  }

  MarkedFibration mark_fibration(Functor const& p) {
    auto v = is_cocartesian_fibration(p);
    if (!v.ok()) {
      auto [e, f] = *v.witness;
      throw law_error("no cocartesian lift of " + p.cod->arrow_label(f) + " at "
                      + p.dom->object_label(e));
    }
    return std::move(*v.fibration);
  }

  std::optional<std::string> check_marked_fibration(MarkedFibration const& mf) {
    auto const& E = *mf.total();
    auto const& B = *mf.base();
    if (auto v = check_functor(mf.p)) {
      return "projection: " + v->describe();
    }
    for (std::size_t a = 0; a < E.num_arrows(); ++a) {
      if (mf.marked[a] && !is_cocartesian(mf.p, static_cast<int>(a))) {
        return "marked arrow " + E.arrow_label(static_cast<int>(a)) + " is not cocartesian";
      }
    }
    for (std::size_t e = 0; e < E.num_objects(); ++e) {
      for (int f : B.out(mf.p.obj[e])) {
        auto it = mf.cleavage[e].find(f);
        if (it == mf.cleavage[e].end()) {
          return "no chosen lift of " + B.arrow_label(f) + " at " + E.object_label(static_cast<int>(e));
        }
        int l = it->second;
        if (!mf.marked[l] || E.src(l) != static_cast<int>(e) || mf.p.arr[l] != f) {
          return "chosen lift " + E.arrow_label(l) + " is not a marked lift of " + B.arrow_label(f);
        }
      }
    }
    for (std::size_t f = 0; f < B.num_arrows(); ++f) {
      auto const& tr = mf.transport[f];
      if (auto v = check_functor(tr)) {
        return "transport along " + B.arrow_label(static_cast<int>(f)) + ": " + v->describe();
      }
      auto const& S = mf.fibres.fibre[B.src(static_cast<int>(f))];
      for (std::size_t i = 0; i < S.objects.size(); ++i) {
        int t = E.tgt(mf.lift(S.objects[i], static_cast<int>(f)));
        if (mf.fibres.fibre_obj[t] != tr.obj[i]) {
          return "transport along " + B.arrow_label(static_cast<int>(f)) + " disagrees with the cleavage";
        }
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Pseudofunctors
  ////////////////////////////////////////////////////////////////////////

  NatTrans Pseudofunctor::mu(int g, int f) const {
    auto it = comparison.find({g, f});
    if (it != comparison.end()) {
      return it->second;
    }
    Functor  gf = compose(action[g], action[f]);
    NatTrans m{gf, action[base->compose(g, f)], {}};
    for (int y : gf.obj) {
      m.comp.push_back(gf.cod->id(y));
    }
    return m;
  }

  std::optional<std::string> check_pseudofunctor(Pseudofunctor const& F) {
    auto const& B = *F.base;
    if (F.fibre.size() != B.num_objects() || F.action.size() != B.num_arrows()) {
      return "fibre or action count does not match the base";
    }
    for (std::size_t aa = 0; aa < B.num_arrows(); ++aa) {
      int         a = static_cast<int>(aa);
      auto const& G = F.action[a];
      if (G.dom != F.fibre[B.src(a)] || G.cod != F.fibre[B.tgt(a)]) {
        return "action of " + B.arrow_label(a) + " has the wrong endpoints";
      }
      if (auto v = check_functor(G)) {
        return "action of " + B.arrow_label(a) + ": " + v->describe();
      }
      if (B.is_identity(a) && !(G == identity_functor(G.dom))) {
        return "action of the identity " + B.arrow_label(a) + " is not the identity";
      }
    }
    for (auto const& [key, m] : F.comparison) {
      auto [g, f] = key;
      if (B.is_identity(g) || B.is_identity(f) || B.tgt(f) != B.src(g)) {
        return "comparison stored for an invalid pair";
      }
    }
    for (std::size_t ff = 0; ff < B.num_arrows(); ++ff) {
      int f = static_cast<int>(ff);
      for (int g : B.out(B.tgt(f))) {
        if (B.is_identity(f) || B.is_identity(g)) {
          continue;
        }
        NatTrans m  = F.mu(g, f);
        Functor  gf = compose(F.action[g], F.action[f]);
        auto     name = B.arrow_label(g) + "," + B.arrow_label(f);
        if (!(m.src == gf) || !(m.tgt == F.action[B.compose(g, f)])) {
          return "comparison (" + name + ") has the wrong boundary";
        }
        if (auto v = check_natural(m)) {
          return "comparison (" + name + "): " + v->describe();
        }
        for (int c : m.comp) {
          if (!is_iso(m.src.cod, c)) {
            return "comparison (" + name + ") is not invertible";
          }
        }
      }
    }
    // mu(h, g f) . F(h) mu(g, f) = mu(h g, f) . mu(h, g) F(f)
    for (std::size_t ff = 0; ff < B.num_arrows(); ++ff) {
      int f = static_cast<int>(ff);
      for (int g : B.out(B.tgt(f))) {
        for (int h : B.out(B.tgt(g))) {
          if (B.is_identity(f) || B.is_identity(g) || B.is_identity(h)) {
            continue;
          }
          auto const& X  = *F.fibre[B.tgt(h)];
          NatTrans    a1 = F.mu(h, B.compose(g, f));
          NatTrans    a2 = F.mu(g, f);
          NatTrans    b1 = F.mu(B.compose(h, g), f);
          NatTrans    b2 = F.mu(h, g);
          for (std::size_t x = 0; x < F.fibre[B.src(f)]->num_objects(); ++x) {
            int lhs = X.compose(a1.comp[x], F.action[h].arr[a2.comp[x]]);
            int rhs = X.compose(b1.comp[x], b2.comp[F.action[f].obj[x]]);
            if (lhs != rhs) {
              return "associativity fails at (" + B.arrow_label(h) + "," + B.arrow_label(g) + ","
                     + B.arrow_label(f) + ")";
            }
          }
        }
      }
    }
    return std::nullopt;
  }

  Pseudofunctor strict_pseudofunctor(Cat const& base, std::vector<Cat> fibre,
                                     std::vector<Functor> action) {
    return Pseudofunctor{base, std::move(fibre), std::move(action), {}};
  }

  Pseudofunctor constant_pseudofunctor(Cat const& base, Cat const& D) {
    std::vector<Cat>     fibre(base->num_objects(), D);
    std::vector<Functor> action(base->num_arrows(), identity_functor(D));
    return strict_pseudofunctor(base, fibre, action);
  }

  namespace {
    struct UnstraightenedArrow {
      int g, x, phi;
    };

    // Arrows ordered by g, then phi, then x; over an identity g this lists the
    // fibre's arrows in their own order.
    std::vector<UnstraightenedArrow> unstraightened_arrows(Pseudofunctor const& F) {
      auto const&                      B = *F.base;
      std::vector<UnstraightenedArrow> out;
      for (std::size_t g = 0; g < B.num_arrows(); ++g) {
        auto const& G = F.action[g];
        auto const& T = *F.fibre[B.tgt(static_cast<int>(g))];
        for (std::size_t phi = 0; phi < T.num_arrows(); ++phi) {
          for (std::size_t x = 0; x < G.obj.size(); ++x) {
            if (G.obj[x] == T.src(static_cast<int>(phi))) {
              out.push_back({static_cast<int>(g), static_cast<int>(x), static_cast<int>(phi)});
            }
          }
        }
      }
      return out;
    }
  }  // namespace

  MarkedFibration unstraighten(Pseudofunctor const& F) {
    if (auto v = check_pseudofunctor(F)) {
      throw law_error("pseudofunctor: " + *v);
    }
    auto const&              B = *F.base;
    std::vector<int>         offset;
    std::vector<std::string> olbl;
    for (std::size_t c = 0; c < B.num_objects(); ++c) {
      offset.push_back(static_cast<int>(olbl.size()));
      for (std::size_t x = 0; x < F.fibre[c]->num_objects(); ++x) {
        olbl.push_back(B.object_label(static_cast<int>(c)) + "."
                       + F.fibre[c]->object_label(static_cast<int>(x)));
      }
    }
    auto                       arrs = unstraightened_arrows(F);
    std::vector<RawCat::Arrow> arrows;
    std::vector<int>           ids(olbl.size());
    std::map<std::tuple<int, int, int>, int> index;
    for (std::size_t k = 0; k < arrs.size(); ++k) {
      auto [g, x, phi] = arrs[k];
      int         c = B.src(g), c2 = B.tgt(g);
      auto const& T = *F.fibre[c2];
      arrows.push_back({"(" + B.arrow_label(g) + "," + F.fibre[c]->object_label(x) + ","
                            + T.arrow_label(phi) + ")",
                        offset[c] + x, offset[c2] + T.tgt(phi)});
      index[{g, x, phi}] = static_cast<int>(k);
      if (B.is_identity(g) && T.is_identity(phi)) {
        ids[offset[c] + x] = static_cast<int>(k);
      }
    }
    Cat E = build_cat(olbl, arrows, ids, [&](int b, int a) {
      if (arrows[a].tgt != arrows[b].src) {
        return -1;
      }
      auto [g, x, phi]    = arrs[a];
      auto [g2, x2, phi2] = arrs[b];
      int         gg = B.compose(g2, g);
      auto const& T  = *F.fibre[B.tgt(g2)];
      NatTrans    m  = F.mu(g2, g);
      int         mu_inv = inverse_of(F.fibre[B.tgt(g2)], m.comp[x]);
      int psi = T.compose(phi2, T.compose(F.action[g2].arr[phi], mu_inv));
      return index.at({gg, x, psi});
    });
    Functor p{E, F.base, {}, {}};
    for (std::size_t c = 0; c < B.num_objects(); ++c) {
      for (std::size_t x = 0; x < F.fibre[c]->num_objects(); ++x) {
        p.obj.push_back(static_cast<int>(c));
      }
    }
    for (auto const& a : arrs) {
      p.arr.push_back(a.g);
    }
    return mark_fibration(p);
  }

  Pseudofunctor straighten_finite(MarkedFibration const& mf) {
    auto const&   B = *mf.base();
    auto const&   E = *mf.total();
    Pseudofunctor F;
    F.base = mf.base();
    for (auto const& S : mf.fibres.fibre) {
      F.fibre.push_back(S.cat);
    }
    F.action = mf.transport;
    for (std::size_t ff = 0; ff < B.num_arrows(); ++ff) {
      int f = static_cast<int>(ff);
      if (B.is_identity(f)) {
        continue;
      }
      for (int g : B.out(B.tgt(f))) {
        if (B.is_identity(g)) {
          continue;
        }
        int      gf = B.compose(g, f);
        NatTrans m{compose(F.action[g], F.action[f]), F.action[gf], {}};
        for (int e : mf.fibres.fibre[B.src(f)].objects) {
          int l1   = mf.lift(e, f);
          int l2   = mf.lift(E.tgt(l1), g);
          int l    = mf.lift(e, gf);
          int via  = E.compose(l2, l1);
          int comp = -1;
          for (int chi : E.hom(E.tgt(l2), E.tgt(l))) {
            if (mf.p.arr[chi] == B.id(B.tgt(g)) && E.compose(chi, via) == l) {
              comp = chi;
              break;
            }
          }
          if (comp < 0) {
            throw law_error("cleavage has no comparison at " + E.object_label(e));
          }
          m.comp.push_back(mf.fibres.fibre_arr[comp]);
        }
        F.comparison[{g, f}] = m;
      }
    }
    return F;
  }

  Functor straightening_comparison(MarkedFibration const& mf) {
    Pseudofunctor S = straighten_finite(mf);
    MarkedFibration U = unstraighten(S);
    auto const&      E = *mf.total();
    Functor          K{U.total(), mf.total(), {}, {}};
    for (auto const& Sb : mf.fibres.fibre) {
      for (int e : Sb.objects) {
        K.obj.push_back(e);
      }
    }
    for (auto [g, x, phi] : unstraightened_arrows(S)) {
      auto const& src = mf.fibres.fibre[mf.base()->src(g)];
      auto const& tgt = mf.fibres.fibre[mf.base()->tgt(g)];
      K.arr.push_back(E.compose(tgt.arrows[phi], mf.lift(src.objects[x], g)));
    }
    return K;
  }

  namespace {
    std::vector<Functor> isomorphisms(Cat const& C, Cat const& D) {
      std::vector<Functor> out;
      if (C->num_objects() != D->num_objects() || C->num_arrows() != D->num_arrows()) {
        return out;
      }
      enumerate_functors(C, D, [&](Functor const& F) {
        if (is_isomorphism(F)) {
          out.push_back(F);
        }
        return true;
      });
      return out;
    }
  }  // namespace

  bool pseudofunctors_isomorphic(Pseudofunctor const& F, Pseudofunctor const& G) {
    auto const& B = *F.base;
    if (B.num_objects() != G.base->num_objects() || B.num_arrows() != G.base->num_arrows()) {
      return false;
    }
    int                               n = static_cast<int>(B.num_objects());
    std::vector<std::vector<Functor>> choices;
    for (int c = 0; c < n; ++c) {
      choices.push_back(isomorphisms(F.fibre[c], G.fibre[c]));
    }
    std::vector<int>            pick(n, -1);
    std::function<bool(int)> go = [&](int c) {
      if (c == n) {
        return true;
      }
      for (std::size_t k = 0; k < choices[c].size(); ++k) {
        pick[c] = static_cast<int>(k);
        bool ok = true;
        for (std::size_t a = 0; a < B.num_arrows() && ok; ++a) {
          int s = B.src(static_cast<int>(a)), t = B.tgt(static_cast<int>(a));
          if (s > c || t > c || (s != c && t != c)) {
            continue;
          }
          ok = naturally_isomorphic(compose(G.action[a], choices[s][pick[s]]),
                                    compose(choices[t][pick[t]], F.action[a]));
        }
        if (ok && go(c + 1)) {
          return true;
        }
      }
      pick[c] = -1;
      return false;
    };
    return go(0);
  }

  ////////////////////////////////////////////////////////////////////////
  // Conduché condition
  ////////////////////////////////////////////////////////////////////////

  bool is_conduche(Functor const& p) {
    auto const& E = *p.dom;
    auto const& B = *p.cod;
    int         ne = static_cast<int>(E.num_objects());
    std::vector<std::vector<int>> over(B.num_objects());
    for (int e = 0; e < ne; ++e) {
      over[p.obj[e]].push_back(e);
    }
    for (int x = 0; x < ne; ++x) {
      for (int z = 0; z < ne; ++z) {
        for (std::size_t bb = 0; bb < B.num_objects(); ++bb) {
          int         b = static_cast<int>(bb);
          std::size_t target = 0;
          for (int h : E.hom(x, z)) {
            for (int beta : B.hom(p.obj[x], b)) {
              for (int gamma : B.hom(b, p.obj[z])) {
                target += B.compose(gamma, beta) == p.arr[h];
              }
            }
          }
          // elements (y, u, v), indexed per y
          std::map<int, int> offset;
          int                n = 0;
          for (int y : over[b]) {
            offset[y] = n;
            n += static_cast<int>(E.hom(x, y).size() * E.hom(y, z).size());
          }
          auto index = [&](int y, int u, int v) {
            return offset[y] + E.hom_index(u) * static_cast<int>(E.hom(y, z).size())
                   + E.hom_index(v);
          };
          UnionFind uf(n);
          for (int y : over[b]) {
            for (int y2 : over[b]) {
              for (int k : E.hom(y, y2)) {
                if (p.arr[k] != B.id(b)) {
                  continue;
                }
                for (int u : E.hom(x, y)) {
                  for (int v2 : E.hom(y2, z)) {
                    uf.unite(index(y, u, E.compose(v2, k)), index(y2, E.compose(k, u), v2));
                  }
                }
              }
            }
          }
          std::map<std::size_t, std::tuple<int, int, int>> image;
          for (int y : over[b]) {
            for (int u : E.hom(x, y)) {
              for (int v : E.hom(y, z)) {
                image.emplace(uf.find(index(y, u, v)),
                              std::make_tuple(E.compose(v, u), p.arr[u], p.arr[v]));
              }
            }
          }
          std::set<std::tuple<int, int, int>> distinct;
          for (auto const& [root, t] : image) {
            distinct.insert(t);
          }
          if (distinct.size() != image.size() || distinct.size() != target) {
            return false;
          }
        }
      }
    }
    return true;
  }

  bool inverts_W(MarkedFibration const& mf, std::vector<int> const& W) {
    for (int w : W) {
      if (!is_equivalence(mf.transport.at(w))) {
        return false;
      }
    }
    return true;
  }

  bool conduche_inverts_W(Functor const& p, std::vector<int> const& W) {
    auto const& E = *p.dom;
    auto const& B = *p.cod;
    for (int w : W) {
      auto cocart = cocartesian_lifts_of(p, w);
      auto cart   = cartesian_lifts_of(p, w);
      if (cocart != cart) {
        return false;
      }
      for (std::size_t e = 0; e < E.num_objects(); ++e) {
        if (p.obj[e] == B.src(w)
            && std::none_of(cocart.begin(), cocart.end(),
                            [&](int a) { return E.src(a) == static_cast<int>(e); })) {
          return false;
        }
        if (p.obj[e] == B.tgt(w)
            && std::none_of(cart.begin(), cart.end(),
                            [&](int a) { return E.tgt(a) == static_cast<int>(e); })) {
          return false;
        }
      }
    }
    return true;
  }

  bool invertible_transport_check(MarkedFibration const& mf, int f) {
    if (!is_equivalence(mf.transport.at(f))) {
      throw precondition_error("transport along " + mf.base()->arrow_label(f)
                               + " is not an equivalence");
    }
    auto const& E    = *mf.total();
    auto        cart = cartesian_lifts_of(mf.p, f);
    std::vector<int> cocart;
    for (int a : mf.cocartesian) {
      if (mf.p.arr[a] == f) {
        cocart.push_back(a);
      }
    }
    if (cocart != cart) {
      return false;
    }
    for (std::size_t e = 0; e < E.num_objects(); ++e) {
      if (mf.p.obj[e] == mf.base()->tgt(f)
          && std::none_of(cart.begin(), cart.end(),
                          [&](int a) { return E.tgt(a) == static_cast<int>(e); })) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Functors over the base
  ////////////////////////////////////////////////////////////////////////

  namespace {
    void enumerate_over(MarkedFibration const& a, MarkedFibration const& b, bool cocartesian,
                        std::function<bool(Functor const&)> const& sink) {
      if (a.base()->num_objects() != b.base()->num_objects()
          || a.base()->num_arrows() != b.base()->num_arrows()) {
        throw precondition_error("fibrations over different bases");
      }
      enumerate_functors_where(
          a.total(), b.total(),
          [&](int x, int y) { return a.p.obj[x] == b.p.obj[y]; },
          [&](int f, int g) {
            return a.p.arr[f] == b.p.arr[g] && (!cocartesian || !a.marked[f] || b.marked[g]);
          },
          sink);
    }
  }  // namespace

  std::size_t count_cocartesian_functors(MarkedFibration const& a, MarkedFibration const& b) {
    std::size_t n = 0;
    enumerate_over(a, b, true, [&](Functor const&) {
      ++n;
      return true;
    });
    return n;
  }

  std::optional<Functor> find_equivalence_over(MarkedFibration const& a, MarkedFibration const& b) {
    std::optional<Functor> out;
    enumerate_over(a, b, false, [&](Functor const& F) {
      if (is_equivalence(F)) {
        out = F;
        return false;
      }
      return true;
    });
    return out;
  }

  bool is_pullback_square(Functor const& top, Functor const& left, Functor const& right,
                          Functor const& bottom) {
    auto const& P = *top.dom;
    for (std::size_t x = 0; x < P.num_objects(); ++x) {
      if (bottom.obj[left.obj[x]] != right.obj[top.obj[x]]) {
        return false;
      }
    }
    for (std::size_t a = 0; a < P.num_arrows(); ++a) {
      if (bottom.arr[left.arr[a]] != right.arr[top.arr[a]]) {
        return false;
      }
    }
    auto corner = [](std::vector<int> const& l, std::vector<int> const& r, std::size_t ns) {
      std::vector<std::size_t> cl(ns, 0), cr(ns, 0);
      for (int s : l) {
        ++cl[s];
      }
      for (int s : r) {
        ++cr[s];
      }
      std::size_t n = 0;
      for (std::size_t s = 0; s < ns; ++s) {
        n += cl[s] * cr[s];
      }
      return n;
    };
    std::set<std::pair<int, int>> objs, arrs;
    for (std::size_t x = 0; x < P.num_objects(); ++x) {
      objs.emplace(left.obj[x], top.obj[x]);
    }
    for (std::size_t a = 0; a < P.num_arrows(); ++a) {
      arrs.emplace(left.arr[a], top.arr[a]);
    }
    return objs.size() == P.num_objects() && arrs.size() == P.num_arrows()
           && objs.size() == corner(bottom.obj, right.obj, bottom.cod->num_objects())
           && arrs.size() == corner(bottom.arr, right.arr, bottom.cod->num_arrows());
  }

  MarkedFibration base_change(Functor const& F, MarkedFibration const& mf) {
    Span2 P = pullback(F, mf.p);
    return mark_fibration(P.first);
  }

  ////////////////////////////////////////////////////////////////////////
  // Fixtures
  ////////////////////////////////////////////////////////////////////////

  Functor delta3_conduche() {
    Cat   D  = poset_chain(3);
    Cat   SR = section_retraction();
    Span2 P  = product(D, SR);
    int   x = SR->find_object("x"), y = SR->find_object("y");
    std::set<std::pair<int, int>> keep{{0, y}, {1, x}, {1, y}, {2, y}, {3, x}, {3, y}};
    Sub S = full_subcategory(P.cat, [&](int o) {
      return keep.count({P.first.obj[o], P.second.obj[o]}) > 0;
    });
    return compose(P.first, S.inclusion);
  }

  std::vector<int> delta3_W() {
    Cat D = poset_chain(3);
    return {D->find_arrow("0<2"), D->find_arrow("1<3")};
  }

}  // namespace fincat
