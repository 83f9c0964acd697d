#include "fincat/cat_core.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace fincat {

  namespace {
    std::atomic<std::size_t> g_budget{10000};
  }

  std::size_t arrow_budget() {
    return g_budget.load();
  }

  void set_arrow_budget(std::size_t n) {
    g_budget.store(n);
  }

  void check_budget(std::size_t arrows, char const* what) {
    if (arrows > arrow_budget()) {
      throw size_error(std::string(what) + ": output exceeds the arrow budget of "
                       + std::to_string(arrow_budget()));
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // UnionFind
  ////////////////////////////////////////////////////////////////////////

  UnionFind::UnionFind(std::size_t n) : _parent(n) {
    std::iota(_parent.begin(), _parent.end(), 0);
  }

  std::size_t UnionFind::add() {
    _parent.push_back(_parent.size());
    return _parent.size() - 1;
  }

  std::size_t UnionFind::find(std::size_t x) {
    while (_parent[x] != x) {
      _parent[x] = _parent[_parent[x]];
      x          = _parent[x];
    }
    return x;
  }

  bool UnionFind::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) {
      return false;
    }
    if (a < b) {
      _parent[b] = a;
    } else {
      _parent[a] = b;
    }
    return true;
  }

  std::vector<int> UnionFind::classes(int* count) {
    std::vector<int> cls(_parent.size(), -1);
    std::vector<int> root_cls(_parent.size(), -1);
    int              n = 0;
    for (std::size_t i = 0; i < _parent.size(); ++i) {
      std::size_t r = find(i);
      if (root_cls[r] < 0) {
        root_cls[r] = n++;
      }
      cls[i] = root_cls[r];
    }
    if (count != nullptr) {
      *count = n;
    }
    return cls;
  }

  ////////////////////////////////////////////////////////////////////////
  // RawCat and validation
  ////////////////////////////////////////////////////////////////////////

  int RawCat::add_object(std::string label) {
    objects.push_back(std::move(label));
    return static_cast<int>(objects.size()) - 1;
  }

  int RawCat::add_arrow(std::string label, int src, int tgt) {
    arrows.push_back({std::move(label), src, tgt});
    return static_cast<int>(arrows.size()) - 1;
  }

  void RawCat::resize_table() {
    compose.assign(arrows.size() * arrows.size(), -1);
  }

  void RawCat::set_compose(int g, int f, int gf) {
    compose[static_cast<std::size_t>(g) * arrows.size() + f] = gf;
  }

  std::string Violation::describe() const {
    std::ostringstream os;
    os << law;
    if (!witnesses.empty()) {
      os << " [";
      for (std::size_t i = 0; i < witnesses.size(); ++i) {
        os << (i ? ", " : "") << witnesses[i];
      }
      os << "]";
    }
    return os.str();
  }

  CheckResult check_fincat(RawCat const& raw) {
    auto fail = [](std::string law, std::vector<std::string> w) {
      return CheckResult{nullptr, Violation{std::move(law), std::move(w)}};
    };
    int const no = static_cast<int>(raw.objects.size());
    int const na = static_cast<int>(raw.arrows.size());
    {
      std::unordered_set<std::string> seen;
      for (auto const& o : raw.objects) {
        if (!seen.insert(o).second) {
          return fail("duplicate object label", {o});
        }
      }
      seen.clear();
      for (auto const& a : raw.arrows) {
        if (!seen.insert(a.label).second) {
          return fail("duplicate arrow label", {a.label});
        }
      }
    }
    for (auto const& a : raw.arrows) {
      if (a.src < 0 || a.src >= no || a.tgt < 0 || a.tgt >= no) {
        return fail("dangling source or target", {a.label});
      }
    }
    if (static_cast<int>(raw.identities.size()) != no) {
      return fail("identity missing", {});
    }
    for (int x = 0; x < no; ++x) {
      int i = raw.identities[x];
      if (i < 0 || i >= na || raw.arrows[i].src != x || raw.arrows[i].tgt != x) {
        return fail("identity is not an endomorphism of its object", {raw.objects[x]});
      }
    }
    if (static_cast<long long>(raw.compose.size()) != static_cast<long long>(na) * na) {
      return fail("composition table has wrong size", {});
    }
    auto comp = [&](int g, int f) {
      return raw.compose[static_cast<std::size_t>(g) * na + f];
    };
    auto lbl = [&](int a) {
      return raw.arrows[a].label;
    };
    for (int g = 0; g < na; ++g) {
      for (int f = 0; f < na; ++f) {
        int gf = comp(g, f);
        if (raw.arrows[f].tgt != raw.arrows[g].src) {
          if (gf != -1) {
            return fail("composite defined on a non-composable pair", {lbl(g), lbl(f)});
          }
          continue;
        }
        if (gf < 0 || gf >= na) {
          return fail("composite missing", {lbl(g), lbl(f)});
        }
        if (raw.arrows[gf].src != raw.arrows[f].src
            || raw.arrows[gf].tgt != raw.arrows[g].tgt) {
          return fail("composite has wrong source or target", {lbl(g), lbl(f)});
        }
      }
    }
    for (int f = 0; f < na; ++f) {
      if (comp(raw.identities[raw.arrows[f].tgt], f) != f
          || comp(f, raw.identities[raw.arrows[f].src]) != f) {
        return fail("identity law fails", {lbl(f)});
      }
    }

    auto C      = std::make_shared<FinCat>();
    C->_objects = raw.objects;
    C->_src.resize(na);
    C->_tgt.resize(na);
    C->_labels.resize(na);
    for (int a = 0; a < na; ++a) {
      C->_src[a]    = raw.arrows[a].src;
      C->_tgt[a]    = raw.arrows[a].tgt;
      C->_labels[a] = raw.arrows[a].label;
    }
    C->_id = raw.identities;
    C->_hom.assign(static_cast<std::size_t>(no) * no, {});
    C->_out.assign(no, {});
    C->_in.assign(no, {});
    C->_hom_pos.resize(na);
    C->_out_pos.resize(na);
    for (int a = 0; a < na; ++a) {
      auto& h        = C->_hom[static_cast<std::size_t>(C->_src[a]) * no + C->_tgt[a]];
      C->_hom_pos[a] = static_cast<int>(h.size());
      h.push_back(a);
      C->_out_pos[a] = static_cast<int>(C->_out[C->_src[a]].size());
      C->_out[C->_src[a]].push_back(a);
      C->_in[C->_tgt[a]].push_back(a);
    }
    C->_comp.resize(na);
    for (int f = 0; f < na; ++f) {
      auto const& outs = C->_out[C->_tgt[f]];
      C->_comp[f].resize(outs.size());
      for (std::size_t k = 0; k < outs.size(); ++k) {
        C->_comp[f][k] = comp(outs[k], f);
      }
    }
    for (int f = 0; f < na; ++f) {
      for (int g : C->_out[C->_tgt[f]]) {
        int gf = C->compose(g, f);
        for (int h : C->_out[C->_tgt[g]]) {
          if (C->compose(h, gf) != C->compose(C->compose(h, g), f)) {
            return fail("associativity fails", {lbl(h), lbl(g), lbl(f)});
          }
        }
      }
    }
    return CheckResult{C, std::nullopt};
  }

  Cat make_cat(RawCat const& raw) {
    auto r = check_fincat(raw);
    if (!r.ok()) {
      throw law_error(r.violation->describe());
    }
    return r.cat;
  }

  Cat build_cat(std::vector<std::string> const&     objects,
                std::vector<RawCat::Arrow> const&   arrows,
                std::vector<int> const&             identities,
                std::function<int(int, int)> const& compose) {
    check_budget(arrows.size(), "category");
    RawCat raw;
    raw.objects    = objects;
    raw.arrows     = arrows;
    raw.identities = identities;
    raw.resize_table();
    int const n = static_cast<int>(arrows.size());
    // Only composable pairs are filled; build per target object to stay near-linear.
    std::vector<std::vector<int>> out(objects.size());
    for (int a = 0; a < n; ++a) {
      out[arrows[a].src].push_back(a);
    }
    for (int f = 0; f < n; ++f) {
      for (int g : out[arrows[f].tgt]) {
        raw.set_compose(g, f, compose(g, f));
      }
    }
    return make_cat(raw);
  }

  int FinCat::compose(int g, int f) const {
    if (_tgt[f] != _src[g]) {
      return -1;
    }
    return _comp[f][_out_pos[g]];
  }

  int FinCat::find_object(std::string const& label) const {
    auto it = std::find(_objects.begin(), _objects.end(), label);
    return it == _objects.end() ? -1 : static_cast<int>(it - _objects.begin());
  }

  int FinCat::find_arrow(std::string const& label) const {
    auto it = std::find(_labels.begin(), _labels.end(), label);
    return it == _labels.end() ? -1 : static_cast<int>(it - _labels.begin());
  }

  RawCat FinCat::to_raw() const {
    RawCat raw;
    raw.objects = _objects;
    for (std::size_t a = 0; a < num_arrows(); ++a) {
      raw.arrows.push_back({_labels[a], _src[a], _tgt[a]});
    }
    raw.identities = _id;
    raw.resize_table();
    for (std::size_t f = 0; f < num_arrows(); ++f) {
      for (int g : _out[_tgt[f]]) {
        raw.set_compose(g, static_cast<int>(f), compose(g, static_cast<int>(f)));
      }
    }
    return raw;
  }

  ////////////////////////////////////////////////////////////////////////
  // Functors and natural transformations
  ////////////////////////////////////////////////////////////////////////

  std::optional<Violation> check_functor(Functor const& F) {
    auto const& C = *F.dom;
    auto const& D = *F.cod;
    if (F.obj.size() != C.num_objects() || F.arr.size() != C.num_arrows()) {
      return Violation{"functor data has wrong size", {}};
    }
    for (int x : F.obj) {
      if (x < 0 || x >= static_cast<int>(D.num_objects())) {
        return Violation{"object image out of range", {}};
      }
    }
    for (std::size_t a = 0; a < C.num_arrows(); ++a) {
      int b = F.arr[a];
      if (b < 0 || b >= static_cast<int>(D.num_arrows())) {
        return Violation{"arrow image out of range", {C.arrow_label(a)}};
      }
      if (D.src(b) != F.obj[C.src(a)] || D.tgt(b) != F.obj[C.tgt(a)]) {
        return Violation{"functor does not preserve source/target", {C.arrow_label(a)}};
      }
    }
    for (std::size_t x = 0; x < C.num_objects(); ++x) {
      if (F.arr[C.id(x)] != D.id(F.obj[x])) {
        return Violation{"functor does not preserve identities", {C.object_label(x)}};
      }
    }
    for (std::size_t f = 0; f < C.num_arrows(); ++f) {
      for (int g : C.out(C.tgt(f))) {
        if (F.arr[C.compose(g, f)] != D.compose(F.arr[g], F.arr[f])) {
          return Violation{"functor does not preserve composition",
                           {C.arrow_label(g), C.arrow_label(f)}};
        }
      }
    }
    return std::nullopt;
  }

  std::optional<Violation> check_natural(NatTrans const& a) {
    auto const& C = *a.src.dom;
    auto const& D = *a.src.cod;
    if (a.comp.size() != C.num_objects()) {
      return Violation{"wrong number of components", {}};
    }
    for (std::size_t x = 0; x < C.num_objects(); ++x) {
      int c = a.comp[x];
      if (D.src(c) != a.src.obj[x] || D.tgt(c) != a.tgt.obj[x]) {
        return Violation{"component has wrong type", {C.object_label(x)}};
      }
    }
    for (std::size_t f = 0; f < C.num_arrows(); ++f) {
      int x = C.src(f), y = C.tgt(f);
      if (D.compose(a.comp[y], a.src.arr[f]) != D.compose(a.tgt.arr[f], a.comp[x])) {
        return Violation{"naturality square fails", {C.arrow_label(f)}};
      }
    }
    return std::nullopt;
  }

  Functor identity_functor(Cat const& C) {
    Functor F{C, C, {}, {}};
    F.obj.resize(C->num_objects());
    F.arr.resize(C->num_arrows());
    std::iota(F.obj.begin(), F.obj.end(), 0);
    std::iota(F.arr.begin(), F.arr.end(), 0);
    return F;
  }

  Functor compose(Functor const& G, Functor const& F) {
    if (F.cod != G.dom) {
      throw precondition_error("composite of functors that do not meet");
    }
    Functor H{F.dom, G.cod, {}, {}};
    H.obj.resize(F.obj.size());
    H.arr.resize(F.arr.size());
    for (std::size_t x = 0; x < F.obj.size(); ++x) {
      H.obj[x] = G.obj[F.obj[x]];
    }
    for (std::size_t a = 0; a < F.arr.size(); ++a) {
      H.arr[a] = G.arr[F.arr[a]];
    }
    return H;
  }

  NatTrans identity_nat(Functor const& F) {
    NatTrans a{F, F, {}};
    for (int x : F.obj) {
      a.comp.push_back(F.cod->id(x));
    }
    return a;
  }

  NatTrans vcompose(NatTrans const& b, NatTrans const& a) {
    NatTrans c{a.src, b.tgt, {}};
    for (std::size_t x = 0; x < a.comp.size(); ++x) {
      c.comp.push_back(a.src.cod->compose(b.comp[x], a.comp[x]));
    }
    return c;
  }

  NatTrans whisker_left(NatTrans const& a, Functor const& F) {
    NatTrans c{compose(a.src, F), compose(a.tgt, F), {}};
    for (int x : F.obj) {
      c.comp.push_back(a.comp[x]);
    }
    return c;
  }

  NatTrans whisker_right(Functor const& G, NatTrans const& a) {
    NatTrans c{compose(G, a.src), compose(G, a.tgt), {}};
    for (int m : a.comp) {
      c.comp.push_back(G.arr[m]);
    }
    return c;
  }

  Functor point(Cat const& C, int x) {
    return Functor{terminal(), C, {x}, {C->id(x)}};
  }

  Functor to_terminal(Cat const& C) {
    return Functor{C, terminal(), std::vector<int>(C->num_objects(), 0),
                   std::vector<int>(C->num_arrows(), 0)};
  }

  Functor from_empty(Cat const& C) {
    return Functor{empty_cat(), C, {}, {}};
  }

  ////////////////////////////////////////////////////////////////////////
  // Fixtures
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // A monoid on one object from its multiplication table, element 0 the unit.
    Cat monoid(std::vector<std::string> const& names,
               std::vector<std::vector<int>> const& mul,
               std::string const& object = "*") {
      std::vector<RawCat::Arrow> arrows;
      for (auto const& n : names) {
        arrows.push_back({n, 0, 0});
      }
      return build_cat({object}, arrows, {0}, [&](int g, int f) { return mul[g][f]; });
    }
  }  // namespace

  Cat terminal() {
    static Cat const one = build_cat({"*"}, {{"id_*", 0, 0}}, {0}, [](int, int) { return 0; });
    return one;
  }

  Cat empty_cat() {
    static Cat const e = build_cat({}, {}, {}, [](int, int) { return -1; });
    return e;
  }

  Cat discrete(int n) {
    std::vector<std::string>   objs;
    std::vector<RawCat::Arrow> arrows;
    std::vector<int>           ids;
    for (int i = 0; i < n; ++i) {
      objs.push_back(std::to_string(i));
      arrows.push_back({"id_" + std::to_string(i), i, i});
      ids.push_back(i);
    }
    return build_cat(objs, arrows, ids, [](int g, int) { return g; });
  }

  Cat poset_chain(int n) {
    std::vector<std::string>   objs;
    std::vector<RawCat::Arrow> arrows;
    std::vector<int>           ids(n + 1);
    std::map<std::pair<int, int>, int> idx;
    for (int i = 0; i <= n; ++i) {
      objs.push_back(std::to_string(i));
    }
    for (int i = 0; i <= n; ++i) {
      for (int j = i; j <= n; ++j) {
        std::string lbl = i == j ? "id_" + std::to_string(i)
                                 : std::to_string(i) + "<" + std::to_string(j);
        idx[{i, j}] = static_cast<int>(arrows.size());
        if (i == j) {
          ids[i] = static_cast<int>(arrows.size());
        }
        arrows.push_back({lbl, i, j});
      }
    }
    return build_cat(objs, arrows, ids, [&](int g, int f) {
      return idx.at({arrows[f].src, arrows[g].tgt});
    });
  }

  Cat interval() {
    static Cat const I = build_cat({"0", "1"}, {{"id_0", 0, 0}, {"id_1", 1, 1}, {"f", 0, 1}},
                                   {0, 1}, [](int g, int f) {
                                     if (g == 0 || g == 1) {
                                       return f;
                                     }
                                     return g;  // f after id_0
                                   });
    return I;
  }

  Cat walking_iso() {
    // arrows: id_0, id_1, f: 0->1, g: 1->0
    static Cat const J = build_cat(
        {"0", "1"}, {{"id_0", 0, 0}, {"id_1", 1, 1}, {"f", 0, 1}, {"g", 1, 0}}, {0, 1},
        [](int g, int f) {
          if (g <= 1) {
            return f;
          }
          if (f <= 1) {
            return g;
          }
          return g == 2 ? 1 : 0;  // f g = id_1, g f = id_0
        });
    return J;
  }

  Cat walking_idempotent() {
    static Cat const E = monoid({"id_*", "e"}, {{0, 1}, {1, 1}});
    return E;
  }

  Cat section_retraction() {
    // objects x, y; s: x -> y, r: y -> x, r s = id_x, t = s r idempotent on y.
    static Cat const B = build_cat(
        {"x", "y"},
        {{"id_x", 0, 0}, {"id_y", 1, 1}, {"s", 0, 1}, {"r", 1, 0}, {"t", 1, 1}}, {0, 1},
        [](int g, int f) {
          enum { ix, iy, s, r, t };
          if (g == ix || g == iy) {
            return f;
          }
          if (f == ix || f == iy) {
            return g;
          }
          if (g == r && f == s) {
            return int(ix);
          }
          if (g == s && f == r) {
            return int(t);
          }
          if (g == t && f == s) {
            return int(s);
          }
          if (g == r && f == t) {
            return int(r);
          }
          return int(t);  // t t
        });
    return B;
  }

  Cat cyclic_group(int n) {
    std::vector<std::string>      names;
    std::vector<std::vector<int>> mul(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i) {
      names.push_back(i == 0 ? "id_*" : "g" + std::to_string(i));
      for (int j = 0; j < n; ++j) {
        mul[i][j] = (i + j) % n;
      }
    }
    return monoid(names, mul);
  }

  Cat parallel_pair() {
    static Cat const P = build_cat(
        {"x", "y"}, {{"id_x", 0, 0}, {"id_y", 1, 1}, {"a", 0, 1}, {"b", 0, 1}}, {0, 1},
        [](int g, int f) { return g <= 1 ? f : g; });
    return P;
  }

}  // namespace fincat
