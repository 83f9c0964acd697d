#include <algorithm>

#include "fincat/join.hpp"

namespace fincat {

  DirectedJoin directed_join(Functor const& f0, Functor const& f1, int max_word_len) {
    if (f0.cod != f1.cod) {
      throw precondition_error("directed join of functors with different codomains");
    }
    DirectedJoin J;
    J.comma = comma(f0, f1);
    auto K  = tautological(J.comma.cat);
    auto A0 = tautological(f0.dom);
    auto A1 = tautological(f1.dom);
    auto P  = cocomma_presentation(K, A0, A1, functor_map(J.comma.dom_proj),
                                   functor_map(J.comma.cod_proj));
    J.i0    = P.k;
    J.i1    = P.l;
    J.alpha = P.alpha;

    std::vector<Word> W;
    for (std::size_t k = 0; k < J.comma.objects.size(); ++k) {
      if (is_iso(f0.cod, J.comma.objects[k].alpha)) {
        J.inverted.push_back(static_cast<int>(k));
        W.push_back(P.pres.single(P.alpha[k]));
      }
    }
    auto L = localize_presentation(P.pres, W);
    J.sat  = saturate(L.pres, max_word_len);
    if (!J.sat.exact()) {
      J.note = J.sat.note;
      return J;
    }
    J.status = Status::Exact;

    std::vector<int> obj(L.pres.objects.size(), -1);
    std::vector<int> gen(L.pres.generators.size(), -1);
    auto send = [&](Functor const& f, PresentedMap const& m) {
      for (std::size_t x = 0; x < f.obj.size(); ++x) {
        obj[m.obj[x]] = f.obj[x];
      }
      auto gi = generator_of(f.dom);
      for (std::size_t a = 0; a < f.arr.size(); ++a) {
        if (gi[a] >= 0) {
          gen[m.gen[gi[a]].gens.at(0)] = f.arr[a];
        }
      }
    };
    send(f0, P.k);
    send(f1, P.l);
    for (std::size_t k = 0; k < J.comma.objects.size(); ++k) {
      gen[P.alpha[k]] = J.comma.objects[k].alpha;
    }
    for (std::size_t j = 0; j < J.inverted.size(); ++j) {
      gen[L.inverse[j]] = inverse_of(f0.cod, J.comma.objects[J.inverted[j]].alpha);
    }
    J.to_base = evaluate(J.sat, f0.cod, obj, gen);
    J.I0      = realize(f0.dom, J.sat, P.k);
    J.I1      = realize(f1.dom, J.sat, P.l);
    return J;
  }

  namespace {
    // Objects of B isomorphic to something in the image of F.
    std::vector<char> iso_closed_image(Functor const& F) {
      auto const&       B = F.cod;
      std::vector<char> in(B->num_objects(), 0);
      for (std::size_t b = 0; b < B->num_objects(); ++b) {
        for (int y : F.obj) {
          if (isomorphic_objects(B, static_cast<int>(b), y)) {
            in[b] = 1;
            break;
          }
        }
      }
      return in;
    }
  }  // namespace

  JoinTower join_tower(Functor const& f, Functor const& g0, int max_stages, int max_word_len) {
    if (f.cod != g0.cod) {
      throw precondition_error("tower functors have different codomains");
    }
    auto image_f = iso_closed_image(f);
    auto image_g = iso_closed_image(g0);
    for (std::size_t b = 0; b < image_g.size(); ++b) {
      if (image_g[b] && !image_f[b]) {
        throw precondition_error("g0 leaves the image of f at " + f.cod->object_label(static_cast<int>(b)));
      }
    }
    JoinTower T;
    T.stages.push_back(JoinStage{0, g0.dom, g0, {}, false});
    T.growth.push_back(g0.dom->num_arrows());
    for (int n = 1; n <= max_stages; ++n) {
      auto const& prev = T.stages.back();
      auto        J    = directed_join(f, prev.g, max_word_len);
      if (J.status != Status::Exact) {
        T.note = "stage " + std::to_string(n) + ": " + J.note;
        return T;
      }
      if (!(compose(J.to_base, J.I1) == prev.g)) {
        throw law_error("tower stage " + std::to_string(n) + " does not restrict to the previous one");
      }
      JoinStage s{n, J.sat.cat, J.to_base, J.I1, is_equivalence(J.I1)};
      T.stages.push_back(std::move(s));
      T.growth.push_back(J.sat.cat->num_arrows());
      if (n >= 2 && T.stages[n].link_is_equivalence && T.stages[n - 1].link_is_equivalence) {
        int m          = n - 2;
        T.stable_stage = m;
        T.status       = Status::Exact;
        auto const& g  = T.stages[m].g;
        T.fully_faithful = is_fully_faithful(g);
        T.image_matches  = iso_closed_image(g) == image_f;
        return T;
      }
    }
    T.note = "no stabilization within " + std::to_string(max_stages) + " stages";
    return T;
  }

}  // namespace fincat
