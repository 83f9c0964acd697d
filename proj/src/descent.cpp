#include <algorithm>
#include <numeric>
#include <set>

#include "fincat/fibration.hpp"

namespace fincat {

  ////////////////////////////////////////////////////////////////////////
  // Cocomma of fibrations
  ////////////////////////////////////////////////////////////////////////

  namespace {
    struct SpanLegs {
      Span2   fp, gq;  // f^* Y and g^* Z
      Functor phi;     // rebound to fp.cat -> gq.cat
    };

    SpanLegs span_legs(CocommaSpan const& s) {
      SpanLegs L;
      L.fp = pullback(s.f, s.p.p);
      L.gq = pullback(s.g, s.q.p);
      if (s.f.dom != s.g.dom || s.f.cod != s.p.base() || s.g.cod != s.q.base()) {
        throw precondition_error("cocomma span does not match its fibrations");
      }
      if (s.phi.obj.size() != L.fp.cat->num_objects() || s.phi.arr.size() != L.fp.cat->num_arrows()
          || s.phi.cod->num_objects() != L.gq.cat->num_objects()
          || s.phi.cod->num_arrows() != L.gq.cat->num_arrows()) {
        throw precondition_error("phi is not a functor between the pulled back fibrations");
      }
      L.phi = Functor{L.fp.cat, L.gq.cat, s.phi.obj, s.phi.arr};
      return L;
    }
  }  // namespace

  void check_cocomma_span(CocommaSpan const& s) {
    auto L = span_legs(s);
    if (auto v = check_functor(L.phi)) {
      throw precondition_error("phi: " + v->describe());
    }
    if (!(compose(L.gq.first, L.phi) == L.fp.first)) {
      throw precondition_error("phi does not lie over A");
    }
    auto cart_g = cocartesian_arrows(L.gq.first);
    for (int a : cocartesian_arrows(L.fp.first)) {
      if (!std::binary_search(cart_g.begin(), cart_g.end(), L.phi.arr[a])) {
        throw precondition_error("phi does not preserve cocartesian arrows");
      }
    }
  }

  CocommaFibration cocomma_fibration(CocommaSpan const& s, int max_word_len) {
    check_cocomma_span(s);
    auto             legs = span_legs(s);
    Functor          u    = legs.fp.second;
    Functor          v    = compose(legs.gq.second, legs.phi);
    CocommaFibration R;
    R.total = cocomma(u, v, max_word_len);
    R.base  = cocomma(s.f, s.g, max_word_len);
    if (!R.total.sat.exact() || !R.base.sat.exact()) {
      R.note = !R.total.sat.exact() ? "total: " + R.total.sat.note : "base: " + R.base.sat.note;
      return R;
    }
    R.status = Status::Exact;

    auto const&  Pw = R.total.sat.pres;
    auto const&  Pd = R.base.sat.pres;
    PresentedMap m;
    m.obj.assign(Pw.objects.size(), -1);
    m.gen.resize(Pw.generators.size());
    auto embed = [&](MarkedFibration const& mf, PresentedMap const& into_w,
                     PresentedMap const& into_d) {
      auto const& Y  = mf.total();
      auto        gi = generator_of(Y);
      for (std::size_t y = 0; y < Y->num_objects(); ++y) {
        m.obj[into_w.obj[y]] = into_d.obj[mf.p.obj[y]];
      }
      for (std::size_t a = 0; a < Y->num_arrows(); ++a) {
        if (gi[a] >= 0) {
          m.gen[into_w.gen[gi[a]].gens.at(0)]
              = into_d.apply(arrow_word(mf.base(), mf.p.arr[a]), Pd);
        }
      }
    };
    embed(s.p, R.total.k, R.base.k);
    embed(s.q, R.total.l, R.base.l);
    for (std::size_t e = 0; e < R.total.alpha.size(); ++e) {
      int a = legs.fp.first.obj[e];
      m.gen[R.total.alpha[e]] = Word{R.base.k.obj[s.f.obj[a]], {R.base.alpha[a]}};
    }
    R.r = induced(R.total.sat, R.base.sat, m);
    if (check_functor(R.r)) {
      return R;
    }
    auto verdict = is_cocartesian_fibration(R.r);
    if (verdict.ok()) {
      R.result = std::move(verdict.fibration);
    }
    Functor kY = realize(s.p.total(), R.total.sat, R.total.k);
    Functor kB = realize(s.p.base(), R.base.sat, R.base.k);
    Functor lZ = realize(s.q.total(), R.total.sat, R.total.l);
    Functor lC = realize(s.q.base(), R.base.sat, R.base.l);
    R.recovers_p = is_pullback_square(kY, s.p.p, R.r, kB);
    R.recovers_q = is_pullback_square(lZ, s.q.p, R.r, lC);
    return R;
  }

  ////////////////////////////////////////////////////////////////////////
  // Sequential and groupoid descent
  ////////////////////////////////////////////////////////////////////////

  namespace {
    Functor inverse_of_iso(Functor const& F) {
      Functor G{F.cod, F.dom, std::vector<int>(F.cod->num_objects(), -1),
                std::vector<int>(F.cod->num_arrows(), -1)};
      for (std::size_t x = 0; x < F.obj.size(); ++x) {
        G.obj[F.obj[x]] = static_cast<int>(x);
      }
      for (std::size_t a = 0; a < F.arr.size(); ++a) {
        G.arr[F.arr[a]] = static_cast<int>(a);
      }
      return G;
    }
  }  // namespace

  SequentialDescent sequential_descent_glue(std::vector<MarkedFibration> const& stages,
                                            std::vector<Functor> const&         base_links,
                                            std::vector<Functor> const&         total_links,
                                            int                                 max_stages) {
    if (stages.empty() || base_links.size() + 1 != stages.size()
        || total_links.size() != base_links.size()) {
      throw precondition_error("sequential descent needs one pair of links per step");
    }
    std::vector<Cat> bases, totals;
    for (std::size_t n = 0; n < stages.size(); ++n) {
      bases.push_back(stages[n].base());
      totals.push_back(stages[n].total());
      if (n + 1 < stages.size()
          && !(compose(stages[n + 1].p, total_links[n]) == compose(base_links[n], stages[n].p))) {
        throw precondition_error("total link " + std::to_string(n) + " does not lie over its base link");
      }
    }
    SequentialDescent R;
    auto              cb = sequential_colimit(bases, base_links, max_stages);
    auto              ct = sequential_colimit(totals, total_links, max_stages);
    if (cb.status != Status::Exact || ct.status != Status::Exact) {
      return R;
    }
    R.status = Status::Exact;
    R.stage  = std::max(cb.stage, ct.stage);
    int     n = R.stage;
    Functor p = compose(cb.cocone[n], compose(stages[n].p, inverse_of_iso(ct.cocone[n])));
    auto    verdict = is_cocartesian_fibration(p);
    if (verdict.ok()) {
      R.result = std::move(verdict.fibration);
    }
    for (std::size_t k = 0; k < cb.cocone.size(); ++k) {
      R.recovers.push_back(is_pullback_square(ct.cocone[k], stages[k].p, p, cb.cocone[k]));
    }
    return R;
  }

  MarkedFibration groupoid_descent(Pseudofunctor const& F) {
    if (!is_groupoid(F.base)) {
      throw precondition_error("groupoid descent over a base that is not a groupoid");
    }
    return unstraighten(F);
  }

  ////////////////////////////////////////////////////////////////////////
  // Generator
  ////////////////////////////////////////////////////////////////////////

  std::vector<Cat> fibre_pool(int max_objects, int max_arrows) {
    std::vector<Cat> out;
    for (auto const& C : enumerate_small_categories(max_objects, max_arrows)) {
      if (C->num_objects() > 0) {
        out.push_back(C);
      }
    }
    return out;
  }

  namespace {
    // Strict functor by backtracking over random candidate orders.
    std::optional<std::vector<Functor>> sample_action(Rng& rng, Cat const& B,
                                                      std::vector<Cat> const& fibre,
                                                      std::vector<char> const& invertible) {
      int                               na = static_cast<int>(B->num_arrows());
      std::vector<std::vector<Functor>> cand(na);
      std::vector<int>                  order;
      for (int a = 0; a < na; ++a) {
        if (B->is_identity(a)) {
          continue;
        }
        order.push_back(a);
        for (auto& F : all_functors(fibre[B->src(a)], fibre[B->tgt(a)])) {
          if (!invertible[a] || is_isomorphism(F)) {
            cand[a].push_back(F);
          }
        }
        std::shuffle(cand[a].begin(), cand[a].end(), rng);
      }
      std::vector<Functor> act(na);
      std::vector<char>    set(na, 0);
      for (int a = 0; a < na; ++a) {
        if (B->is_identity(a)) {
          act[a] = identity_functor(fibre[B->src(a)]);
          set[a] = 1;
        }
      }
      auto consistent = [&](int a) {
        for (int f = 0; f < na; ++f) {
          for (int g : B->out(B->tgt(f))) {
            if (f != a && g != a && B->compose(g, f) != a) {
              continue;
            }
            int gf = B->compose(g, f);
            if (set[f] && set[g] && set[gf] && !(compose(act[g], act[f]) == act[gf])) {
              return false;
            }
          }
        }
        return true;
      };
      long                     budget = 20000;
      std::function<bool(std::size_t)> go = [&](std::size_t k) {
        if (k == order.size()) {
          return true;
        }
        int a = order[k];
        for (auto const& F : cand[a]) {
          if (--budget < 0) {
            return false;
          }
          act[a] = F;
          set[a] = 1;
          if (consistent(a) && go(k + 1)) {
            return true;
          }
          set[a] = 0;
        }
        return false;
      };
      if (!go(0)) {
        return std::nullopt;
      }
      return act;
    }
  }  // namespace

  GeneratedOpfibration random_opfibration(Rng& rng, OpfibrationParams const& p) {
    auto pool = p.fibres.empty() ? fibre_pool(p.max_fibre_objects, p.max_fibre_arrows) : p.fibres;
    for (;;) {
      Cat              B  = random_fincat(rng, p.base);
      int              na = static_cast<int>(B->num_arrows());
      std::vector<int> nonid;
      for (int a = 0; a < na; ++a) {
        if (!B->is_identity(a)) {
          nonid.push_back(a);
        }
      }
      std::vector<char> invertible(na, 0);
      std::vector<int>  W;
      if (p.all_invertible) {
        W = nonid;
      } else {
        std::shuffle(nonid.begin(), nonid.end(), rng);
        int k = std::min<int>(p.invertible_arrows, static_cast<int>(nonid.size()));
        W.assign(nonid.begin(), nonid.begin() + k);
        std::sort(W.begin(), W.end());
      }
      if (static_cast<int>(W.size()) < std::min<int>(p.invertible_arrows, 1)) {
        continue;  // the base has no non-identity arrow to invert
      }
      UnionFind uf(B->num_objects());
      for (int w : W) {
        invertible[w] = 1;
        uf.unite(B->src(w), B->tgt(w));
      }
      std::vector<Cat> by_root(B->num_objects());
      std::vector<Cat> fibre;
      for (std::size_t c = 0; c < B->num_objects(); ++c) {
        auto r = uf.find(c);
        if (!by_root[r]) {
          by_root[r] = pool[uniform(rng, 0, static_cast<int>(pool.size()) - 1)];
        }
        fibre.push_back(by_root[r]);
      }
      auto act = sample_action(rng, B, fibre, invertible);
      if (!act) {
        continue;
      }
      GeneratedOpfibration G;
      G.functor   = strict_pseudofunctor(B, fibre, *act);
      G.fibration = unstraighten(G.functor);
      G.W         = W;
      return G;
    }
  }

  GeneratedOpfibration random_opfibration(std::uint64_t seed, OpfibrationParams const& p) {
    Rng rng(seed);
    return random_opfibration(rng, p);
  }

}  // namespace fincat
