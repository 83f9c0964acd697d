#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "fincat/fibration.hpp"

namespace fincat {

  FibrationLocalisation localize_fibration(MarkedFibration const& mf, std::vector<int> const& W,
                                           int max_word_len) {
    if (!inverts_W(mf, W)) {
      throw precondition_error("transport along W is not invertible");
    }
    auto const&           E = mf.total();
    auto const&           C = mf.base();
    FibrationLocalisation L;
    L.input = mf;
    L.W     = W;
    for (int a : mf.cocartesian) {
      if (std::find(W.begin(), W.end(), mf.p.arr[a]) != W.end()) {
        L.W_u.push_back(a);
      }
    }
    L.total = localize({E, L.W_u}, max_word_len);
    L.base  = localize({C, W}, max_word_len);
    if (!L.total.sat.exact() || !L.base.sat.exact()) {
      L.note = !L.total.sat.exact() ? "total: " + L.total.sat.note : "base: " + L.base.sat.note;
      return L;
    }
    L.status  = Status::Exact;
    L.i_total = realize(E, L.total.sat, L.total.i);
    L.i_base  = realize(C, L.base.sat, L.base.i);

    auto const&  Pt = L.total.sat.pres;
    auto const&  Pb = L.base.sat.pres;
    PresentedMap m;
    m.obj = mf.p.obj;
    m.gen.resize(Pt.generators.size());
    auto gi = generator_of(E);
    for (std::size_t a = 0; a < E->num_arrows(); ++a) {
      if (gi[a] >= 0) {
        m.gen[gi[a]] = L.base.i.apply(arrow_word(C, mf.p.arr[a]), Pb);
      }
    }
    for (std::size_t j = 0; j < L.W_u.size(); ++j) {
      int inv = L.total.inverse[j];
      if (inv < 0) {
        continue;
      }
      int w = mf.p.arr[L.W_u[j]];
      int k = static_cast<int>(std::find(W.begin(), W.end(), w) - W.begin());
      int t = C->tgt(w);
      m.gen[inv] = L.base.inverse[k] < 0 ? Word{t, {}} : Word{t, {L.base.inverse[k]}};
    }
    L.q = induced(L.total.sat, L.base.sat, m);
    if (auto v = check_functor(L.q)) {
      L.witnesses.push_back("induced projection is not a functor: " + v->describe());
      return L;
    }
    auto verdict = is_cocartesian_fibration(L.q);
    if (verdict.ok()) {
      L.result = std::move(verdict.fibration);
    } else {
      auto [e, f] = *verdict.witness;
      L.witnesses.push_back("no cocartesian lift of " + L.q.cod->arrow_label(f) + " at "
                            + L.q.dom->object_label(e));
    }
    L.square_is_pullback = is_pullback_square(L.i_total, mf.p, L.q, L.i_base);
    if (!L.square_is_pullback) {
      L.witnesses.push_back("E is not the pullback of the localized fibration");
    }
    return L;
  }

  namespace {
    FibrationLocalisation const& require_exact(FibrationLocalisation const& L) {
      if (L.status != Status::Exact) {
        throw precondition_error("localisation is truncated: " + L.note);
      }
      return L;
    }
  }  // namespace

  bool mapping_square_a(FibrationLocalisation const& L, int x, int y) {
    require_exact(L);
    auto const& E  = *L.input.total();
    auto const& E2 = *L.i_total.cod;
    auto const& p  = L.input.p;
    auto const& C  = *p.cod;
    std::size_t corner = 0;
    for (int g : C.hom(p.obj[x], p.obj[y])) {
      for (int phi : E2.hom(L.i_total.obj[x], L.i_total.obj[y])) {
        corner += L.i_base.arr[g] == L.q.arr[phi];
      }
    }
    std::set<std::pair<int, int>> seen;
    for (int a : E.hom(x, y)) {
      seen.emplace(p.arr[a], L.i_total.arr[a]);
    }
    return seen.size() == E.hom(x, y).size() && seen.size() == corner;
  }

  bool mapping_square_b(FibrationLocalisation const& L, int x, int y, int c) {
    require_exact(L);
    auto const& E  = *L.input.total();
    auto const& E2 = *L.i_total.cod;
    auto const& C2 = *L.i_base.cod;
    auto const& p  = L.input.p;
    auto const& C  = *p.cod;
    auto const& i  = L.i_total;
    int         ix = i.obj[x], iy = i.obj[y];

    std::size_t target = 0;
    for (int phi : E2.hom(ix, iy)) {
      for (int beta : C.hom(p.obj[x], c)) {
        for (int gamma : C2.hom(L.i_base.obj[c], L.i_base.obj[p.obj[y]])) {
          target += C2.compose(gamma, L.i_base.arr[beta]) == L.q.arr[phi];
        }
      }
    }

    std::vector<int> over;
    for (std::size_t z = 0; z < E.num_objects(); ++z) {
      if (p.obj[z] == c) {
        over.push_back(static_cast<int>(z));
      }
    }
    std::map<int, int> offset;
    int                n = 0;
    for (int z : over) {
      offset[z] = n;
      n += static_cast<int>(E.hom(x, z).size() * E2.hom(i.obj[z], iy).size());
    }
    auto index = [&](int z, int u, int v) {
      return offset[z] + E.hom_index(u) * static_cast<int>(E2.hom(i.obj[z], iy).size())
             + E2.hom_index(v);
    };
    UnionFind uf(n);
    for (int z : over) {
      for (int z2 : over) {
        for (int k : E.hom(z, z2)) {
          if (p.arr[k] != C.id(c)) {
            continue;
          }
          for (int u : E.hom(x, z)) {
            for (int v2 : E2.hom(i.obj[z2], iy)) {
              uf.unite(index(z, u, E2.compose(v2, i.arr[k])), index(z2, E.compose(k, u), v2));
            }
          }
        }
      }
    }
    std::map<std::size_t, std::tuple<int, int, int>> image;
    for (int z : over) {
      for (int u : E.hom(x, z)) {
        for (int v : E2.hom(i.obj[z], iy)) {
          image.emplace(uf.find(index(z, u, v)),
                        std::make_tuple(E2.compose(v, i.arr[u]), p.arr[u], L.q.arr[v]));
        }
      }
    }
    std::set<std::tuple<int, int, int>> distinct;
    for (auto const& [root, t] : image) {
      distinct.insert(t);
    }
    return distinct.size() == image.size() && distinct.size() == target;
  }

  bool mapping_square_a(MarkedFibration const& mf, std::vector<int> const& W, int x, int y) {
    return mapping_square_a(localize_fibration(mf, W), x, y);
  }

  bool mapping_square_b(MarkedFibration const& mf, std::vector<int> const& W, int x, int y,
                        int c) {
    return mapping_square_b(localize_fibration(mf, W), x, y, c);
  }

  bool DescentReport::ok() const {
    return status == Status::Exact
           && std::all_of(checks.begin(), checks.end(), [](CheckLine const& c) { return c.ok; });
  }

  namespace {
    // Cocartesian functors E'_a -> E'_b over C' restricted along the
    // localisations, against cocartesian functors E_a -> E_b over C.
    CheckLine functor_bijection(FibrationLocalisation const& A, FibrationLocalisation const& B) {
      CheckLine line{"cocartesian functors biject", true, ""};
      auto const& Ea = *A.input.total();
      auto const& Eb = *B.input.total();
      std::set<std::vector<int>> restricted;
      std::size_t                upstairs = 0;
      enumerate_functors_where(
          A.result->total(), B.result->total(),
          [&](int x, int y) { return A.q.obj[x] == B.q.obj[y]; },
          [&](int f, int g) {
            return A.q.arr[f] == B.q.arr[g] && (!A.result->marked[f] || B.result->marked[g]);
          },
          [&](Functor const& G) {
            ++upstairs;
            // i_b is bijective on objects, and on arrows over a fixed C-arrow
            std::vector<int> arr;
            for (std::size_t a = 0; a < Ea.num_arrows(); ++a) {
              int target = G.arr[A.i_total.arr[a]];
              int found  = -1;
              int ys = G.obj[A.i_total.obj[Ea.src(static_cast<int>(a))]];
              int yt = G.obj[A.i_total.obj[Ea.tgt(static_cast<int>(a))]];
              for (int b : Eb.hom(ys, yt)) {
                if (B.i_total.arr[b] == target && B.input.p.arr[b] == A.input.p.arr[a]) {
                  found = b;
                }
              }
              if (found < 0) {
                line.ok     = false;
                line.detail = "a functor does not restrict";
                return false;
              }
              arr.push_back(found);
            }
            restricted.insert(arr);
            return true;
          });
      if (!line.ok) {
        return line;
      }
      std::size_t downstairs = count_cocartesian_functors(A.input, B.input);
      line.ok = restricted.size() == upstairs && upstairs == downstairs;
      line.detail = std::to_string(upstairs) + " over the localisation, "
                    + std::to_string(downstairs) + " over the base";
      return line;
    }
  }  // namespace

  DescentReport descent_localisation_check(MarkedFibration const& mf, std::vector<int> const& W,
                                           int max_word_len) {
    DescentReport R;
    auto          L = localize_fibration(mf, W, max_word_len);
    if (L.status != Status::Exact) {
      R.checks.push_back({"localisation", false, L.note});
      return R;
    }
    R.status = Status::Exact;
    R.checks.push_back({"localized projection is a cocartesian fibration", L.result.has_value(),
                        L.witnesses.empty() ? "" : L.witnesses.front()});
    if (!L.result) {
      return R;
    }
    auto pb = base_change(L.i_base, *L.result);
    R.checks.push_back({"pullback inverts W", inverts_W(pb, W), ""});
    R.checks.push_back({"pullback recovers the input", L.square_is_pullback, ""});
    R.checks.push_back(functor_bijection(L, L));
    return R;
  }

  bool localized_functors_biject(FibrationLocalisation const& a, FibrationLocalisation const& b) {
    if (!a.verified() || !b.verified()) {
      throw precondition_error("both localisations must be verified");
    }
    return functor_bijection(a, b).ok;
  }

}  // namespace fincat
