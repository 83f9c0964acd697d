#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "fincat/join.hpp"

namespace fincat {

  ////////////////////////////////////////////////////////////////////////
  // Cocartesian functors between fibres
  ////////////////////////////////////////////////////////////////////////

  namespace {
    bool invertible_components(NatTrans const& b) {
      auto const& D = b.src.cod;
      return std::all_of(b.comp.begin(), b.comp.end(), [&](int c) { return is_iso(D, c); });
    }
  }  // namespace

  FunCocart fun_cocart(MarkedFibration const& mf0, MarkedFibration const& mf1) {
    if (!is_groupoid(mf0.base())) {
      throw precondition_error("Fun_cocart needs a groupoid as first base");
    }
    auto const& C0 = *mf0.base();
    auto const& C1 = *mf1.base();
    auto        S0 = straighten_finite(mf0);
    auto        S1 = straighten_finite(mf1);
    FunCocart   R;

    std::vector<std::string> labels;
    for (std::size_t c0 = 0; c0 < C0.num_objects(); ++c0) {
      for (std::size_t c1 = 0; c1 < C1.num_objects(); ++c1) {
        int k = 0;
        for (auto& a : all_functors(S0.fibre[c0], S1.fibre[c1])) {
          labels.push_back(C0.object_label(static_cast<int>(c0)) + "|"
                           + C1.object_label(static_cast<int>(c1)) + "|" + std::to_string(k++));
          R.objects.push_back({static_cast<int>(c0), static_cast<int>(c1), std::move(a)});
        }
      }
    }

    using Key = std::tuple<int, int, int, int, std::vector<int>>;  // x, y, g, f, beta
    std::map<Key, int>          index;
    std::vector<RawCat::Arrow>  arrows;
    std::vector<int>            ids(R.objects.size(), -1);
    for (std::size_t x = 0; x < R.objects.size(); ++x) {
      auto const& X = R.objects[x];
      for (std::size_t y = 0; y < R.objects.size(); ++y) {
        auto const& Y = R.objects[y];
        for (int g : C0.hom(X.c0, Y.c0)) {
          for (int f : C1.hom(X.c1, Y.c1)) {
            int k = 0;
            for (auto& beta : all_nat_trans(compose(S1.action[f], X.a), compose(Y.a, S0.action[g]))) {
              if (!invertible_components(beta)) {
                continue;
              }
              int i = static_cast<int>(R.arrows.size());
              index[{static_cast<int>(x), static_cast<int>(y), g, f, beta.comp}] = i;
              if (x == y && C0.is_identity(g) && C1.is_identity(f)
                  && beta.comp == identity_nat(X.a).comp) {
                ids[x] = i;
              }
              arrows.push_back({std::to_string(x) + ">" + std::to_string(y) + ":" + C0.arrow_label(g)
                                    + "," + C1.arrow_label(f) + "," + std::to_string(k++),
                                static_cast<int>(x), static_cast<int>(y)});
              R.arrows.push_back({g, f, std::move(beta)});
            }
          }
        }
      }
    }

    auto comp = [&](int m2, int m1) {
      auto const& A1 = R.arrows[m1];
      auto const& A2 = R.arrows[m2];
      int         x = arrows[m1].src, z = arrows[m2].tgt;
      auto const& a = R.objects[x];
      auto const& c = R.objects[z];
      auto const& F1 = S1.fibre[c.c1];
      auto        mu1 = S1.mu(A2.f, A1.f);
      auto        mu0 = S0.mu(A2.g, A1.g);
      auto const& T0g = S0.action[A1.g];
      auto const& T1f = S1.action[A2.f];
      std::vector<int> beta;
      for (std::size_t e = 0; e < a.a.obj.size(); ++e) {
        int s1 = inverse_of(F1, mu1.comp[a.a.obj[e]]);
        int s2 = T1f.arr[A1.beta.comp[e]];
        int s3 = A2.beta.comp[T0g.obj[e]];
        int s4 = c.a.arr[mu0.comp[e]];
        beta.push_back(F1->compose(s4, F1->compose(s3, F1->compose(s2, s1))));
      }
      auto it = index.find({x, z, C0.compose(A2.g, A1.g), C1.compose(A2.f, A1.f), beta});
      if (it == index.end()) {
        throw law_error("Fun_cocart composite is not a listed morphism");
      }
      return it->second;
    };
    R.cat = build_cat(labels, arrows, ids, comp);

    R.u0 = Functor{R.cat, mf0.base(), {}, {}};
    R.u1 = Functor{R.cat, mf1.base(), {}, {}};
    for (auto const& o : R.objects) {
      R.u0.obj.push_back(o.c0);
      R.u1.obj.push_back(o.c1);
    }
    for (auto const& m : R.arrows) {
      R.u0.arr.push_back(m.g);
      R.u1.arr.push_back(m.f);
    }
    return R;
  }

  ////////////////////////////////////////////////////////////////////////
  // Virtual join
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // Evaluation u0^* E0 -> u1^* E1 over Fun_cocart.
    Functor evaluation(FunCocart const& F, MarkedFibration const& mf0, MarkedFibration const& mf1) {
      auto fp = pullback(F.u0, mf0.p);
      auto gq = pullback(F.u1, mf1.p);
      std::map<std::pair<int, int>, int> gq_obj, gq_arr;
      for (std::size_t i = 0; i < gq.cat->num_objects(); ++i) {
        gq_obj[{gq.first.obj[i], gq.second.obj[i]}] = static_cast<int>(i);
      }
      for (std::size_t i = 0; i < gq.cat->num_arrows(); ++i) {
        gq_arr[{gq.first.arr[i], gq.second.arr[i]}] = static_cast<int>(i);
      }
      auto const& E0 = *mf0.total();
      auto const& E1 = *mf1.total();
      auto const& f0 = mf0.fibres;
      auto const& f1 = mf1.fibres;
      Functor     phi{fp.cat, gq.cat, {}, {}};
      for (std::size_t i = 0; i < fp.cat->num_objects(); ++i) {
        auto const& X  = F.objects[fp.first.obj[i]];
        int         e  = fp.second.obj[i];
        int         ae = f1.fibre[X.c1].objects[X.a.obj[f0.fibre_obj[e]]];
        phi.obj.push_back(gq_obj.at({fp.first.obj[i], ae}));
      }
      for (std::size_t i = 0; i < fp.cat->num_arrows(); ++i) {
        int         m  = fp.first.arr[i];
        int         h  = fp.second.arr[i];
        auto const& M  = F.arrows[m];
        auto const& X  = F.objects[F.cat->src(m)];
        auto const& Y  = F.objects[F.cat->tgt(m)];
        int         e  = E0.src(h);
        int         l  = mf0.lift(e, M.g);
        int         v  = -1;
        for (int w : E0.hom(E0.tgt(l), E0.tgt(h))) {
          if (E0.compose(w, l) == h) {
            v = w;
            break;
          }
        }
        auto const& Fib = f1.fibre[Y.c1].cat;
        int phi_fib = Fib->compose(Y.a.arr[f0.fibre_arr[v]], M.beta.comp[f0.fibre_obj[e]]);
        int ae      = f1.fibre[X.c1].objects[X.a.obj[f0.fibre_obj[e]]];
        int h1      = E1.compose(f1.fibre[Y.c1].arrows[phi_fib], mf1.lift(ae, M.f));
        phi.arr.push_back(gq_arr.at({m, h1}));
      }
      return phi;
    }
  }  // namespace

  VirtualJoin virtual_join(MarkedFibration const& mf0, MarkedFibration const& mf1,
                           int max_word_len) {
    VirtualJoin V;
    V.fun = fun_cocart(mf0, mf1);
    CocommaSpan span{mf0, mf1, V.fun.u0, V.fun.u1, evaluation(V.fun, mf0, mf1)};
    V.cocomma = cocomma_fibration(span, max_word_len);
    if (V.cocomma.status != Status::Exact) {
      V.note = "cocomma " + V.cocomma.note;
      return V;
    }
    if (!V.cocomma.verified()) {
      // an automorphism in Fun_cocart acting on a fibre collapses the cocomma
      V.status = Status::Exact;
      V.note   = "cocomma of the evaluation span is not a fibration after 1-truncation";
      return V;
    }
    auto const& base = V.cocomma.base;
    for (std::size_t x = 0; x < V.fun.objects.size(); ++x) {
      auto const& X = V.fun.objects[x];
      if (is_equivalence(X.a)) {
        V.W.push_back(base.sat.arrow_of(Word{base.k.obj[X.c0], {base.alpha[x]}}));
      }
    }
    V.localisation = localize_fibration(*V.cocomma.result, V.W, max_word_len);
    auto const& L  = *V.localisation;
    if (L.status != Status::Exact) {
      V.note = "localisation " + L.note;
      return V;
    }
    V.status = Status::Exact;
    if (!L.verified()) {
      V.note = L.witnesses.empty() ? "localisation not verified" : L.witnesses.front();
      return V;
    }
    V.result = *L.result;
    auto const& T = V.cocomma.total;
    V.i0 = compose(L.i_base, realize(mf0.base(), base.sat, base.k));
    V.i1 = compose(L.i_base, realize(mf1.base(), base.sat, base.l));
    Functor j0 = compose(L.i_total, realize(mf0.total(), T.sat, T.k));
    Functor j1 = compose(L.i_total, realize(mf1.total(), T.sat, T.l));
    V.recovers0 = is_pullback_square(j0, mf0.p, L.q, V.i0);
    V.recovers1 = is_pullback_square(j1, mf1.p, L.q, V.i1);
    return V;
  }

  ////////////////////////////////////////////////////////////////////////
  // Univalence
  ////////////////////////////////////////////////////////////////////////

  std::vector<Functor> functor_classes(Cat const& X, Cat const& Y) {
    std::vector<Functor> reps;
    enumerate_functors(X, Y, [&](Functor const& F) {
      if (std::none_of(reps.begin(), reps.end(),
                       [&](Functor const& G) { return naturally_isomorphic(F, G); })) {
        reps.push_back(F);
      }
      return true;
    });
    return reps;
  }

  namespace {
    int class_of(std::vector<Functor> const& reps, Functor const& F) {
      for (std::size_t j = 0; j < reps.size(); ++j) {
        if (naturally_isomorphic(F, reps[j])) {
          return static_cast<int>(j);
        }
      }
      return -1;
    }
  }  // namespace

  bool is_directed_univalent(MarkedFibration const& mf) {
    auto const& B   = *mf.base();
    auto const& fib = mf.fibres.fibre;
    for (std::size_t x = 0; x < B.num_objects(); ++x) {
      for (std::size_t y = 0; y < B.num_objects(); ++y) {
        auto const& hom  = B.hom(static_cast<int>(x), static_cast<int>(y));
        auto        reps = functor_classes(fib[x].cat, fib[y].cat);
        if (hom.size() != reps.size()) {
          return false;
        }
        std::set<int> hit;
        for (int f : hom) {
          hit.insert(class_of(reps, mf.transport[f]));
        }
        if (hit.size() != reps.size() || hit.count(-1)) {
          return false;
        }
      }
    }
    return true;
  }

  std::optional<int> classifies(MarkedFibration const& mf, Cat const& C) {
    for (std::size_t b = 0; b < mf.base()->num_objects(); ++b) {
      if (equivalent(mf.fibres.fibre[b].cat, C)) {
        return static_cast<int>(b);
      }
    }
    return std::nullopt;
  }

  MarkedFibration functor_class_universe(std::vector<Cat> const& kinds) {
    int const n = static_cast<int>(kinds.size());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        if (equivalent(kinds[i], kinds[j])) {
          throw precondition_error("universe kinds are not pairwise inequivalent");
        }
      }
    }
    std::vector<std::string>   objects;
    std::vector<RawCat::Arrow> arrows;
    std::vector<Functor>       reps;
    std::vector<int>           ids(n);
    std::map<std::pair<int, int>, std::vector<int>> hom;
    for (int i = 0; i < n; ++i) {
      objects.push_back("U" + std::to_string(i));
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        auto cls = functor_classes(kinds[i], kinds[j]);
        if (i == j) {
          // the identity represents its own class
          auto id = identity_functor(kinds[i]);
          int  k  = class_of(cls, id);
          cls[k]  = id;
          std::swap(cls[0], cls[k]);
          ids[i] = static_cast<int>(reps.size());
        }
        for (std::size_t k = 0; k < cls.size(); ++k) {
          hom[{i, j}].push_back(static_cast<int>(reps.size()));
          arrows.push_back({"U" + std::to_string(i) + ">U" + std::to_string(j) + "#"
                                + std::to_string(k),
                            i, j});
          reps.push_back(cls[k]);
        }
      }
    }
    auto comp = [&](int g, int f) {
      auto const& h = hom[{arrows[f].src, arrows[g].tgt}];
      auto        c = compose(reps[g], reps[f]);
      for (int k : h) {
        if (naturally_isomorphic(c, reps[k])) {
          return k;
        }
      }
      return -1;
    };
    Cat           B = build_cat(objects, arrows, ids, comp);
    Pseudofunctor P;
    P.base   = B;
    P.fibre  = kinds;
    P.action = reps;
    for (std::size_t f = 0; f < B->num_arrows(); ++f) {
      if (B->is_identity(static_cast<int>(f))) {
        continue;
      }
      for (int g : B->out(B->tgt(static_cast<int>(f)))) {
        if (B->is_identity(g)) {
          continue;
        }
        auto c  = compose(reps[g], reps[f]);
        int  gf = B->compose(g, static_cast<int>(f));
        if (!(c == reps[gf])) {
          P.comparison[{g, static_cast<int>(f)}] = *find_natural_iso(c, reps[gf]);
        }
      }
    }
    return unstraighten(P);
  }

  ////////////////////////////////////////////////////////////////////////
  // Univalent completion
  ////////////////////////////////////////////////////////////////////////

  UniverseTower univalent_completion(MarkedFibration const& p, MarkedFibration const& q0,
                                     int max_stages, int max_word_len) {
    if (!is_groupoid(p.base())) {
      throw precondition_error("completion needs a fibration over a groupoid");
    }
    for (auto const& S : q0.fibres.fibre) {
      if (!classifies(p, S.cat)) {
        throw precondition_error("a fibre of q0 is not classified by p");
      }
    }
    UniverseTower T;
    T.stages.push_back(UniverseStage{0, q0, {}, false, true});
    T.growth.push_back(q0.base()->num_arrows());
    for (int n = 1; n <= max_stages; ++n) {
      auto V = virtual_join(p, T.stages.back().q, max_word_len);
      if (V.status != Status::Exact) {
        T.note = "stage " + std::to_string(n) + ": " + V.note;
        return T;
      }
      if (!V.verified()) {
        T.note = "stage " + std::to_string(n) + ": " + V.note;
        return T;
      }
      bool eq = is_equivalence(V.i1);
      T.growth.push_back(V.result->base()->num_arrows());
      T.stages.push_back(UniverseStage{n, *V.result, V.i1, eq, V.recovers1});
      if (n >= 2 && T.stages[n].link_is_equivalence && T.stages[n - 1].link_is_equivalence) {
        int m          = n - 2;
        T.stable_stage = m;
        T.status       = Status::Exact;
        T.universe     = T.stages[m].q;
        T.univalent    = is_directed_univalent(*T.universe);
        bool forward   = std::all_of(T.universe->fibres.fibre.begin(), T.universe->fibres.fibre.end(),
                                     [&](Sub const& S) { return classifies(p, S.cat).has_value(); });
        bool backward  = std::all_of(p.fibres.fibre.begin(), p.fibres.fibre.end(), [&](Sub const& S) {
          return classifies(*T.universe, S.cat).has_value();
        });
        T.classifies_same = forward && backward;
        return T;
      }
    }
    T.note = "no stabilization within " + std::to_string(max_stages) + " stages";
    return T;
  }

  ////////////////////////////////////////////////////////////////////////
  // Straightening against a universe
  ////////////////////////////////////////////////////////////////////////

  Straightening straighten_against(MarkedFibration const& universe, MarkedFibration const& q) {
    if (!is_directed_univalent(universe)) {
      throw precondition_error("universe is not directed univalent");
    }
    auto const&          C = *q.base();
    auto const&          B = *universe.base();
    Straightening        R;
    std::vector<Functor> back;
    R.f = Functor{q.base(), universe.base(), {}, {}};
    for (std::size_t c = 0; c < C.num_objects(); ++c) {
      auto const& Fc = q.fibres.fibre[c].cat;
      auto        b  = classifies(universe, Fc);
      if (!b) {
        throw precondition_error("fibre over " + C.object_label(static_cast<int>(c))
                                 + " is not classified");
      }
      R.f.obj.push_back(*b);
      auto e = find_equivalence(Fc, universe.fibres.fibre[*b].cat);
      R.fibre_equivalences.push_back(*e);
      back.push_back(*find_quasi_inverse(*e));
    }
    for (std::size_t g = 0; g < C.num_arrows(); ++g) {
      int  s = C.src(static_cast<int>(g)), t = C.tgt(static_cast<int>(g));
      auto want = compose(R.fibre_equivalences[t], compose(q.transport[g], back[s]));
      int  h    = -1;
      for (int k : B.hom(R.f.obj[s], R.f.obj[t])) {
        if (naturally_isomorphic(universe.transport[k], want)) {
          h = k;
          break;
        }
      }
      if (h < 0) {
        throw law_error("no universe arrow classifies transport along "
                        + C.arrow_label(static_cast<int>(g)));
      }
      R.f.arr.push_back(h);
    }
    if (auto v = check_functor(R.f)) {
      throw law_error("classifying map is not a functor: " + v->describe());
    }
    R.equivalence = find_equivalence_over(base_change(R.f, universe), q);
    return R;
  }

  bool straightening_uniqueness_check(MarkedFibration const& universe, Functor const& f,
                                      Functor const& g) {
    if (f.dom != g.dom || f.cod != universe.base() || g.cod != universe.base()) {
      throw precondition_error("f and g must be parallel functors into the universe base");
    }
    auto const& E  = *universe.total();
    auto        nt = all_nat_trans(f, g);
    auto        pf = base_change(f, universe);
    auto        pg = base_change(g, universe);
    auto        sf = pullback(f, universe.p);
    auto        sg = pullback(g, universe.p);
    std::map<std::pair<int, int>, int> g_obj, g_arr;
    for (std::size_t i = 0; i < sg.cat->num_objects(); ++i) {
      g_obj[{sg.first.obj[i], sg.second.obj[i]}] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < sg.cat->num_arrows(); ++i) {
      g_arr[{sg.first.arr[i], sg.second.arr[i]}] = static_cast<int>(i);
    }
    std::set<std::pair<std::vector<int>, std::vector<int>>> images;
    for (auto const& a : nt) {
      Functor Phi{pf.total(), pg.total(), {}, {}};
      for (std::size_t i = 0; i < sf.cat->num_objects(); ++i) {
        int c = sf.first.obj[i];
        int e = sf.second.obj[i];
        Phi.obj.push_back(g_obj.at({c, E.tgt(universe.lift(e, a.comp[c]))}));
      }
      for (std::size_t i = 0; i < sf.cat->num_arrows(); ++i) {
        int h  = sf.first.arr[i];
        int k  = sf.second.arr[i];
        int l1 = universe.lift(E.src(k), a.comp[f.dom->src(h)]);
        int l2 = universe.lift(E.tgt(k), a.comp[f.dom->tgt(h)]);
        int rhs = E.compose(l2, k);
        int k2  = -1;
        for (int w : E.hom(E.tgt(l1), E.tgt(l2))) {
          if (E.compose(w, l1) == rhs && universe.p.arr[w] == g.arr[h]) {
            k2 = w;
            break;
          }
        }
        Phi.arr.push_back(g_arr.at({h, k2}));
      }
      if (check_functor(Phi)) {
        return false;
      }
      for (int m : pf.cocartesian) {
        if (!pg.marked[Phi.arr[m]]) {
          return false;
        }
      }
      images.emplace(Phi.obj, Phi.arr);
    }
    return images.size() == nt.size() && nt.size() == count_cocartesian_functors(pf, pg);
  }

}  // namespace fincat
