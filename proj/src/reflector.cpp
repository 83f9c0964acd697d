#include <algorithm>
#include <set>

#include "fincat/presheaf.hpp"

namespace fincat {

  PresheafMap arrow_counit(ArrowLeftAdjoint const& A, Presheaf const& P) {
    return pushout_induced(A.value, lan_counit(A.k_k, P), lan_counit(A.l_l, P));
  }

  NatTrans arrow_family(Cat const& C, std::vector<int> const& W) {
    Cat      Wd = discrete(static_cast<int>(W.size()));
    NatTrans m{Functor{Wd, C, {}, {}}, Functor{Wd, C, {}, {}}, {}};
    for (int w : W) {
      if (w < 0 || w >= static_cast<int>(C->num_arrows())) {
        throw precondition_error("localising arrow out of range");
      }
      m.src.obj.push_back(C->src(w));
      m.src.arr.push_back(C->id(C->src(w)));
      m.tgt.obj.push_back(C->tgt(w));
      m.tgt.arr.push_back(C->id(C->tgt(w)));
      m.comp.push_back(w);
    }
    return m;
  }

  NatTrans arrow_family_full(Cat const& C, std::vector<int> const& W) {
    FunctorCategory ar = functor_category(interval(), C);
    int const       f  = 2;  // the non-identity arrow of the interval
    Sub             D  = full_subcategory(ar.cat, [&](int o) {
      return std::find(W.begin(), W.end(), ar.objects[o].arr[f]) != W.end();
    });
    NatTrans m{Functor{D.cat, C, {}, {}}, Functor{D.cat, C, {}, {}}, {}};
    for (int o : D.objects) {
      auto const& F = ar.objects[o];
      m.src.obj.push_back(F.obj[0]);
      m.tgt.obj.push_back(F.obj[1]);
      m.comp.push_back(F.arr[f]);
    }
    for (int a : D.arrows) {
      auto const& t = ar.arrows[a];
      m.src.arr.push_back(t.comp[0]);
      m.tgt.arr.push_back(t.comp[1]);
    }
    return m;
  }

  bool inverts(Presheaf const& P, std::vector<int> const& W) {
    auto const& C = *P.base;
    for (int w : W) {
      int x = C.src(w), y = C.tgt(w);
      if (P.size[x] != P.size[y]) {
        return false;
      }
      std::set<int> s(P.act[w].begin(), P.act[w].end());
      if (static_cast<int>(s.size()) != P.size[x]) {
        return false;
      }
    }
    return true;
  }

  ReflectorCospan localisation_cospan(Cat const& C, std::vector<int> const& W) {
    NatTrans        m = arrow_family(C, W);
    ReflectorCospan R;
    R.base     = C;
    R.is_local = [W](Presheaf const& P) { return inverts(P, W); };
    R.span     = [m](Presheaf const& P) {
      ArrowObject      X = arrow_restrict(m, P);
      ArrowLeftAdjoint A = arrow_left_adjoint(m, X);
      // l_! k^* P receives k_! k^* P by the mate and l_! l^* P by l_!(P(m))
      Lan         lk   = lan(m.tgt, X.k_part);
      PresheafMap from_k = lan_mate(m, A.k_k, lk);
      PresheafMap from_l = lan_map(A.l_l, lk, X.map);
      ReflectorSpan s;
      s.apex       = A.value.value;
      s.other      = lk.value;
      s.counit     = arrow_counit(A, P);
      s.unit_image = pushout_induced(A.value, from_k, from_l);
      return s;
    };
    return R;
  }

  KellyStep kelly_S(ReflectorCospan const& R, Presheaf const& x) {
    KellyStep k;
    k.span    = R.span(x);
    k.pushout = presheaf_pushout(k.span.apex, x, k.span.other, k.span.counit, k.span.unit_image);
    k.value   = k.pushout.value;
    k.s       = k.pushout.inl;
    return k;
  }

  KellyResult kelly_S_infty(ReflectorCospan const& R, Presheaf const& x, int max_iters) {
    KellyResult r;
    r.value = x;
    r.unit  = identity_map(x);
    r.growth.push_back(x.total());
    r.component_growth.push_back(x.size);
    if (R.is_local(x)) {
      r.status = Status::Exact;
      return r;
    }
    for (int n = 0; n < max_iters; ++n) {
      KellyStep step = kelly_S(R, r.value);
      r.growth.push_back(step.value.total());
      r.component_growth.push_back(step.value.size);
      Image       im   = image(r.value, step.value, step.s);
      PresheafMap unit = compose(step.s, r.unit);
      r.iterations     = n + 1;
      if (R.is_local(im.value)) {
        r.status = Status::Exact;
        r.unit   = compose(im.corestriction, r.unit);
        r.value  = im.value;
        return r;
      }
      r.value = step.value;
      r.unit  = unit;
    }
    return r;
  }

  bool s_orthogonal(Presheaf const& x, KellyResult const& r, Presheaf const& y) {
    std::set<std::vector<std::vector<int>>> seen;
    std::size_t                             from_value = 0;
    enumerate_presheaf_maps(r.value, y, [&](PresheafMap const& f) {
      ++from_value;
      seen.insert(compose(f, r.unit).comp);
      return true;
    });
    if (seen.size() != from_value) {
      return false;
    }
    std::size_t from_x = 0;
    enumerate_presheaf_maps(x, y, [&](PresheafMap const&) {
      ++from_x;
      return true;
    });
    return from_x == from_value;
  }

  HomsViaS localisation_homs_via_S(Cat const& C, std::vector<int> const& W, int x, int y,
                                   int max_iters) {
    KellyResult r = kelly_S_infty(localisation_cospan(C, W), yoneda(C, y), max_iters);
    HomsViaS    h;
    h.status     = r.status;
    h.count      = static_cast<std::size_t>(r.value.size[x]);
    h.iterations = r.iterations;
    h.growth     = r.growth;
    return h;
  }

}  // namespace fincat
