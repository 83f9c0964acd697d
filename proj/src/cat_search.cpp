// Backtracking searches for functors, natural transformations and isomorphisms.

#include "fincat/cat_core.hpp"

#include <algorithm>

namespace fincat {

  namespace {

    struct FunctorSearch {
      Cat  C, D;
      bool bijective = false;
      std::function<bool(Functor const&)> const* sink;
      std::function<bool(int, int)>              obj_ok, arr_ok;  // optional filters

      std::vector<int>                              nonid;
      std::vector<int>                              pos;  // position of arrow in nonid, -1 for ids
      std::vector<std::vector<std::pair<int, int>>> decomps;
      std::vector<char>                             has_arrow;  // C has x -> y
      Functor                                       F;
      std::vector<char>                             used_obj, used_arr;
      bool                                          stopped = false;

      FunctorSearch(Cat c, Cat d, bool bij, std::function<bool(Functor const&)> const& f)
          : C(std::move(c)), D(std::move(d)), bijective(bij), sink(&f) {
        int na = static_cast<int>(C->num_arrows());
        int no = static_cast<int>(C->num_objects());
        pos.assign(na, -1);
        for (int a = 0; a < na; ++a) {
          if (!C->is_identity(a)) {
            pos[a] = static_cast<int>(nonid.size());
            nonid.push_back(a);
          }
        }
        decomps.assign(na, {});
        for (int f = 0; f < na; ++f) {
          if (C->is_identity(f)) {
            continue;
          }
          for (int g : C->out(C->tgt(f))) {
            if (!C->is_identity(g)) {
              decomps[C->compose(g, f)].emplace_back(g, f);
            }
          }
        }
        has_arrow.assign(static_cast<std::size_t>(no) * no, 0);
        for (int x = 0; x < no; ++x) {
          for (int y = 0; y < no; ++y) {
            has_arrow[x * no + y] = !C->hom(x, y).empty();
          }
        }
        F = Functor{C, D, std::vector<int>(no, -1), std::vector<int>(na, -1)};
        used_obj.assign(D->num_objects(), 0);
        used_arr.assign(D->num_arrows(), 0);
      }

      void run() {
        if (bijective
            && (C->num_objects() != D->num_objects() || C->num_arrows() != D->num_arrows())) {
          return;
        }
        objects(0);
      }

      bool object_ok(int x, int y) {
        int no = static_cast<int>(C->num_objects());
        for (int x2 = 0; x2 <= x; ++x2) {
          int y2 = x2 == x ? y : F.obj[x2];
          if (bijective) {
            if (C->hom(x2, x).size() != D->hom(y2, y).size()
                || C->hom(x, x2).size() != D->hom(y, y2).size()) {
              return false;
            }
          } else {
            if (has_arrow[x2 * no + x] && D->hom(y2, y).empty()) {
              return false;
            }
            if (has_arrow[x * no + x2] && D->hom(y, y2).empty()) {
              return false;
            }
          }
        }
        return true;
      }

      void objects(int x) {
        if (stopped) {
          return;
        }
        if (x == static_cast<int>(C->num_objects())) {
          for (std::size_t c = 0; c < C->num_objects(); ++c) {
            F.arr[C->id(c)] = D->id(F.obj[c]);
          }
          arrows(0);
          return;
        }
        for (int y = 0; y < static_cast<int>(D->num_objects()); ++y) {
          if (bijective && used_obj[y]) {
            continue;
          }
          if (!object_ok(x, y) || (obj_ok && !obj_ok(x, y))) {
            continue;
          }
          F.obj[x]    = y;
          used_obj[y] = 1;
          objects(x + 1);
          used_obj[y] = 0;
          F.obj[x]    = -1;
          if (stopped) {
            return;
          }
        }
      }

      bool assigned(int a, int k) const {
        return pos[a] < 0 || pos[a] < k;
      }

      bool consistent(int a, int k) {
        int b = F.arr[a];
        for (auto [g, f] : decomps[a]) {
          if (assigned(g, k) && assigned(f, k) && D->compose(F.arr[g], F.arr[f]) != b) {
            return false;
          }
        }
        for (int g : C->out(C->tgt(a))) {
          if (pos[g] < 0 || !assigned(g, k)) {
            continue;
          }
          int h = C->compose(g, a);
          if ((assigned(h, k) || h == a) && F.arr[h] != D->compose(F.arr[g], b)) {
            return false;
          }
        }
        for (int f : C->in(C->src(a))) {
          if (pos[f] < 0 || !assigned(f, k)) {
            continue;
          }
          int h = C->compose(a, f);
          if ((assigned(h, k) || h == a) && F.arr[h] != D->compose(b, F.arr[f])) {
            return false;
          }
        }
        // a composed with itself
        if (C->tgt(a) == C->src(a)) {
          int h = C->compose(a, a);
          if ((assigned(h, k) || h == a) && F.arr[h] != D->compose(b, b)) {
            return false;
          }
        }
        return true;
      }

      void arrows(int k) {
        if (stopped) {
          return;
        }
        if (k == static_cast<int>(nonid.size())) {
          if (!(*sink)(F)) {
            stopped = true;
          }
          return;
        }
        int a = nonid[k];
        for (int b : D->hom(F.obj[C->src(a)], F.obj[C->tgt(a)])) {
          if (bijective && (used_arr[b] || D->is_identity(b))) {
            continue;
          }
          if (arr_ok && !arr_ok(a, b)) {
            continue;
          }
          F.arr[a] = b;
          // arrows at positions <= k count as assigned for the check
          if (consistent(a, k + 1)) {
            used_arr[b] = 1;
            arrows(k + 1);
            used_arr[b] = 0;
          }
          F.arr[a] = -1;
          if (stopped) {
            return;
          }
        }
      }
    };

  }  // namespace

  void enumerate_functors(Cat const& C, Cat const& D,
                          std::function<bool(Functor const&)> const& f) {
    FunctorSearch s(C, D, false, f);
    s.run();
  }

  void enumerate_functors_where(Cat const& C, Cat const& D,
                                std::function<bool(int, int)> const&       obj_ok,
                                std::function<bool(int, int)> const&       arr_ok,
                                std::function<bool(Functor const&)> const& f) {
    FunctorSearch s(C, D, false, f);
    s.obj_ok = obj_ok;
    s.arr_ok = arr_ok;
    s.run();
  }

  std::vector<Functor> all_functors(Cat const& C, Cat const& D) {
    std::vector<Functor> out;
    enumerate_functors(C, D, [&](Functor const& F) {
      out.push_back(F);
      return true;
    });
    return out;
  }

  std::optional<Functor> find_isomorphism(Cat const& C, Cat const& D) {
    std::optional<Functor>              result;
    std::function<bool(Functor const&)> sink = [&](Functor const& F) {
      result = F;
      return false;
    };
    FunctorSearch s(C, D, true, sink);
    s.run();
    return result;
  }

  namespace {
    void search_nat(Functor const& F, Functor const& G, bool iso_only,
                    std::function<bool(NatTrans const&)> const& sink) {
      auto const& C  = *F.dom;
      auto const& D  = *F.cod;
      int         no = static_cast<int>(C.num_objects());
      // arrows checked once both endpoints are assigned: by max endpoint
      std::vector<std::vector<int>> check(no);
      for (std::size_t a = 0; a < C.num_arrows(); ++a) {
        if (!C.is_identity(static_cast<int>(a))) {
          check[std::max(C.src(a), C.tgt(a))].push_back(static_cast<int>(a));
        }
      }
      NatTrans t{F, G, std::vector<int>(no, -1)};
      bool     stopped = false;
      std::function<void(int)> rec = [&](int x) {
        if (x == no) {
          if (!sink(t)) {
            stopped = true;
          }
          return;
        }
        for (int c : D.hom(F.obj[x], G.obj[x])) {
          if (iso_only && inverse_of(F.cod, c) < 0) {
            continue;
          }
          t.comp[x] = c;
          bool ok   = true;
          for (int a : check[x]) {
            int s = C.src(a), u = C.tgt(a);
            if (D.compose(t.comp[u], F.arr[a]) != D.compose(G.arr[a], t.comp[s])) {
              ok = false;
              break;
            }
          }
          if (ok) {
            rec(x + 1);
          }
          if (stopped) {
            return;
          }
        }
        t.comp[x] = -1;
      };
      rec(0);
    }
  }  // namespace

  void enumerate_nat_trans(Functor const& F, Functor const& G,
                           std::function<bool(NatTrans const&)> const& f) {
    search_nat(F, G, false, f);
  }

  std::vector<NatTrans> all_nat_trans(Functor const& F, Functor const& G) {
    std::vector<NatTrans> out;
    enumerate_nat_trans(F, G, [&](NatTrans const& a) {
      out.push_back(a);
      return true;
    });
    return out;
  }

  std::optional<NatTrans> find_natural_iso(Functor const& F, Functor const& G) {
    std::optional<NatTrans> r;
    search_nat(F, G, true, [&](NatTrans const& a) {
      r = a;
      return false;
    });
    return r;
  }

  bool naturally_isomorphic(Functor const& F, Functor const& G) {
    if (F == G) {
      return true;
    }
    return find_natural_iso(F, G).has_value();
  }

  std::optional<Functor> find_quasi_inverse(Functor const& F) {
    std::optional<Functor> r;
    auto                   idC = identity_functor(F.dom);
    auto                   idD = identity_functor(F.cod);
    enumerate_functors(F.cod, F.dom, [&](Functor const& G) {
      if (naturally_isomorphic(compose(G, F), idC) && naturally_isomorphic(compose(F, G), idD)) {
        r = G;
        return false;
      }
      return true;
    });
    return r;
  }

}  // namespace fincat
