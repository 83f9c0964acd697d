#include "fincat/generate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

namespace fincat {

  int uniform(Rng& rng, int lo, int hi) {
    // Portable across standard libraries, unlike uniform_int_distribution.
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(rng() % span);
  }

  namespace {
    struct Map {
      int              src, tgt;
      std::vector<int> f;
      bool operator<(Map const& o) const {
        return std::tie(src, tgt, f) < std::tie(o.src, o.tgt, o.f);
      }
    };

    Map after(Map const& g, Map const& f) {
      Map h{f.src, g.tgt, {}};
      for (int v : f.f) {
        h.f.push_back(g.f[v]);
      }
      return h;
    }

    // Closure under composition; empty if it exceeds the limit.
    std::vector<Map> closure(std::vector<int> const& sizes, std::vector<Map> const& gens,
                             int limit) {
      std::vector<Map>   all;
      std::map<Map, int> seen;
      auto               push = [&](Map m) {
        if (seen.count(m)) {
          return;
        }
        seen[m] = static_cast<int>(all.size());
        all.push_back(std::move(m));
      };
      for (std::size_t x = 0; x < sizes.size(); ++x) {
        Map id{static_cast<int>(x), static_cast<int>(x), {}};
        for (int i = 0; i < sizes[x]; ++i) {
          id.f.push_back(i);
        }
        push(id);
      }
      for (auto const& g : gens) {
        push(g);
      }
      for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
          for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
            if (all[a].tgt == all[b].src) {
              push(after(all[b], all[a]));
            }
          }
          if (static_cast<int>(all.size()) > limit) {
            return {};
          }
        }
      }
      return all;
    }
  }  // namespace

  Cat random_fincat(Rng& rng, FinCatParams const& p) {
    int              n = uniform(rng, 1, p.max_objects);
    std::vector<int> sizes(n);
    for (auto& s : sizes) {
      s = uniform(rng, 1, p.max_set_size);
    }
    int              k = uniform(rng, 0, p.max_generators);
    std::vector<Map> gens;
    for (int i = 0; i < k; ++i) {
      Map m{uniform(rng, 0, n - 1), uniform(rng, 0, n - 1), {}};
      for (int v = 0; v < sizes[m.src]; ++v) {
        m.f.push_back(uniform(rng, 0, sizes[m.tgt] - 1));
      }
      gens.push_back(m);
    }
    std::vector<Map> all;
    while (true) {
      all = closure(sizes, gens, p.max_arrows);
      if (!all.empty()) {
        break;
      }
      gens.pop_back();
    }
    std::map<Map, int> index;
    for (std::size_t i = 0; i < all.size(); ++i) {
      index[all[i]] = static_cast<int>(i);
    }
    std::vector<std::string>   objs;
    std::vector<RawCat::Arrow> arrows;
    std::vector<int>           ids;
    for (int x = 0; x < n; ++x) {
      objs.push_back("o" + std::to_string(x));
      ids.push_back(x);
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
      std::string lbl = static_cast<int>(i) < n ? "id_o" + std::to_string(i)
                                                : "a" + std::to_string(i - n);
      arrows.push_back({lbl, all[i].src, all[i].tgt});
    }
    return build_cat(objs, arrows, ids,
                     [&](int g, int f) { return index.at(after(all[g], all[f])); });
  }

  Cat random_fincat(std::uint64_t seed, FinCatParams const& p) {
    Rng rng(seed);
    return random_fincat(rng, p);
  }

  std::optional<Functor> random_functor(Rng& rng, Cat const& C, Cat const& D) {
    auto fs = all_functors(C, D);
    if (fs.empty()) {
      return std::nullopt;
    }
    return fs[uniform(rng, 0, static_cast<int>(fs.size()) - 1)];
  }

  ////////////////////////////////////////////////////////////////////////
  // Exhaustive enumeration of small categories
  ////////////////////////////////////////////////////////////////////////

  namespace {
    void tables(int n, std::vector<std::pair<int, int>> const& nonid_ends,
                std::vector<Cat>& out) {
      int const m = static_cast<int>(nonid_ends.size());
      int const N = n + m;
      std::vector<RawCat::Arrow> arrows;
      std::vector<int>           ids;
      std::vector<std::string>   objs;
      for (int x = 0; x < n; ++x) {
        objs.push_back(std::to_string(x));
        arrows.push_back({"id_" + std::to_string(x), x, x});
        ids.push_back(x);
      }
      for (int i = 0; i < m; ++i) {
        arrows.push_back({"a" + std::to_string(i), nonid_ends[i].first, nonid_ends[i].second});
      }
      // composable non-identity pairs, each needs a value
      std::vector<std::pair<int, int>> pairs;
      for (int f = n; f < N; ++f) {
        for (int g = n; g < N; ++g) {
          if (arrows[f].tgt == arrows[g].src) {
            pairs.emplace_back(g, f);
          }
        }
      }
      std::vector<int> table(static_cast<std::size_t>(N) * N, -1);
      auto             at = [&](int g, int f) -> int& { return table[g * N + f]; };
      for (int a = 0; a < N; ++a) {
        at(ids[arrows[a].tgt], a) = a;
        at(a, ids[arrows[a].src]) = a;
      }
      std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == pairs.size()) {
          RawCat raw;
          raw.objects    = objs;
          raw.arrows     = arrows;
          raw.identities = ids;
          raw.compose    = table;
          auto r         = check_fincat(raw);
          if (!r.ok()) {
            return;
          }
          for (auto const& c : out) {
            if (find_isomorphism(c, r.cat)) {
              return;
            }
          }
          out.push_back(r.cat);
          return;
        }
        auto [g, f] = pairs[k];
        for (int h = 0; h < N; ++h) {
          if (arrows[h].src != arrows[f].src || arrows[h].tgt != arrows[g].tgt) {
            continue;
          }
          at(g, f) = h;
          // associativity on triples that are now fully determined
          bool ok = true;
          for (int a = 0; a < N && ok; ++a) {
            for (int b = 0; b < N && ok; ++b) {
              for (int c = 0; c < N && ok; ++c) {
                if (arrows[a].tgt != arrows[b].src || arrows[b].tgt != arrows[c].src) {
                  continue;
                }
                int ba = at(b, a), cb = at(c, b);
                if (ba < 0 || cb < 0) {
                  continue;
                }
                int l = at(c, ba), r = at(cb, a);
                if (l >= 0 && r >= 0 && l != r) {
                  ok = false;
                }
              }
            }
          }
          if (ok) {
            rec(k + 1);
          }
          at(g, f) = -1;
        }
      };
      rec(0);
    }

    void distribute(int n, int remaining, int from, std::vector<std::pair<int, int>>& ends,
                    std::vector<Cat>& out) {
      tables(n, ends, out);
      if (remaining == 0) {
        return;
      }
      for (int p = from; p < n * n; ++p) {
        ends.emplace_back(p / n, p % n);
        distribute(n, remaining - 1, p, ends, out);
        ends.pop_back();
      }
    }
  }  // namespace

  std::vector<Cat> enumerate_small_categories(int max_objects, int max_arrows) {
    std::vector<Cat> out;
    for (int n = 0; n <= max_objects; ++n) {
      if (n > max_arrows) {
        break;
      }
      std::vector<std::pair<int, int>> ends;
      distribute(n, max_arrows - n, 0, ends, out);
    }
    return out;
  }

}  // namespace fincat
