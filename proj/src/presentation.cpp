#include "fincat/presentation.hpp"

#include <algorithm>
#include <deque>

namespace fincat {

  bool Word::operator<(Word const& o) const {
    if (gens.size() != o.gens.size()) {
      return gens.size() < o.gens.size();
    }
    if (gens != o.gens) {
      return gens < o.gens;
    }
    return src < o.src;
  }

  char const* to_string(Status s) {
    return s == Status::Exact ? "Exact" : "Truncated";
  }

  ////////////////////////////////////////////////////////////////////////
  // Presentation
  ////////////////////////////////////////////////////////////////////////

  int Presentation::add_object(std::string label) {
    objects.push_back(std::move(label));
    return static_cast<int>(objects.size()) - 1;
  }

  int Presentation::add_generator(std::string label, int src, int tgt) {
    generators.push_back({std::move(label), src, tgt});
    return static_cast<int>(generators.size()) - 1;
  }

  void Presentation::add_relation(Word lhs, Word rhs) {
    relations.push_back({std::move(lhs), std::move(rhs)});
  }

  int Presentation::tgt(Word const& w) const {
    if (w.src < 0 || w.src >= static_cast<int>(objects.size())) {
      return -1;
    }
    int at = w.src;
    for (int g : w.gens) {
      if (g < 0 || g >= static_cast<int>(generators.size()) || generators[g].src != at) {
        return -1;
      }
      at = generators[g].tgt;
    }
    return at;
  }

  Word Presentation::concat(Word const& a, Word const& b) const {
    Word w = a;
    w.gens.insert(w.gens.end(), b.gens.begin(), b.gens.end());
    return w;
  }

  std::optional<std::string> Presentation::validate() const {
    int const no = static_cast<int>(objects.size());
    for (auto const& g : generators) {
      if (g.src < 0 || g.src >= no || g.tgt < 0 || g.tgt >= no) {
        return "generator " + g.label + " has a dangling endpoint";
      }
    }
    for (std::size_t i = 0; i < relations.size(); ++i) {
      auto const& r = relations[i];
      int         a = tgt(r.lhs), b = tgt(r.rhs);
      if (a < 0 || b < 0) {
        return "relation " + std::to_string(i) + " has a side that is not a path";
      }
      if (r.lhs.src != r.rhs.src || a != b) {
        return "relation " + std::to_string(i) + " has non-parallel sides";
      }
    }
    return std::nullopt;
  }

  Word PresentedMap::apply(Word const& w, Presentation const& target) const {
    Word r{obj[w.src], {}};
    for (int g : w.gens) {
      r = target.concat(r, gen[g]);
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Rewriting
  ////////////////////////////////////////////////////////////////////////

  RewriteSystem::RewriteSystem(std::size_t num_generators) : _by_last(num_generators) {}

  void RewriteSystem::add(Rule r) {
    _by_last[r.lhs.gens.back()].push_back(static_cast<int>(_rules.size()));
    _rules.push_back(std::move(r));
  }

  namespace {
    bool ends_with(std::vector<int> const& s, std::vector<int> const& t) {
      return t.size() <= s.size() && std::equal(t.rbegin(), t.rend(), s.rbegin());
    }
  }  // namespace

  bool RewriteSystem::suffix_reducible(std::vector<int> const& gens) const {
    if (gens.empty()) {
      return false;
    }
    for (int ri : _by_last[gens.back()]) {
      if (ends_with(gens, _rules[ri].lhs.gens)) {
        return true;
      }
    }
    return false;
  }

  bool RewriteSystem::is_reducible(std::vector<int> const& gens) const {
    std::vector<int> prefix;
    for (int g : gens) {
      prefix.push_back(g);
      if (suffix_reducible(prefix)) {
        return true;
      }
    }
    return false;
  }

  Word RewriteSystem::reduce(Word const& w) const {
    std::vector<int> out;
    std::vector<int> in(w.gens.rbegin(), w.gens.rend());
    while (!in.empty()) {
      out.push_back(in.back());
      in.pop_back();
      for (int ri : _by_last[out.back()]) {
        auto const& r = _rules[ri];
        if (ends_with(out, r.lhs.gens)) {
          out.resize(out.size() - r.lhs.gens.size());
          in.insert(in.end(), r.rhs.gens.rbegin(), r.rhs.gens.rend());
          break;
        }
      }
    }
    return Word{w.src, std::move(out)};
  }

  namespace {

    constexpr std::size_t max_rules = 20000;

    // Knuth-Bendix completion with rule length capped at max_len.
    struct Completion {
      std::size_t                        ngen;
      int                                max_len;
      std::vector<Rule>                  rules;
      std::vector<char>                  alive;
      std::vector<std::vector<int>>      by_last;
      std::deque<std::pair<Word, Word>>  pending;
      bool                               dropped = false;
      std::string                        note;

      Word reduce(Word const& w) const {
        std::vector<int> out;
        std::vector<int> in(w.gens.rbegin(), w.gens.rend());
        while (!in.empty()) {
          out.push_back(in.back());
          in.pop_back();
          for (int ri : by_last[out.back()]) {
            if (!alive[ri]) {
              continue;
            }
            auto const& r = rules[ri];
            if (ends_with(out, r.lhs.gens)) {
              out.resize(out.size() - r.lhs.gens.size());
              in.insert(in.end(), r.rhs.gens.rbegin(), r.rhs.gens.rend());
              break;
            }
          }
        }
        return Word{w.src, std::move(out)};
      }

      static bool contains(std::vector<int> const& hay, std::vector<int> const& needle) {
        return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
      }

      void add_rule(Word lhs, Word rhs) {
        int n = static_cast<int>(rules.size());
        rules.push_back({std::move(lhs), std::move(rhs)});
        alive.push_back(1);
        by_last[rules[n].lhs.gens.back()].push_back(n);
        auto const& l = rules[n].lhs.gens;
        for (int s = 0; s < n; ++s) {
          if (!alive[s]) {
            continue;
          }
          if (contains(rules[s].lhs.gens, l)) {
            alive[s] = 0;
            pending.emplace_back(rules[s].lhs, rules[s].rhs);
          } else if (contains(rules[s].rhs.gens, l)) {
            rules[s].rhs = reduce(rules[s].rhs);
          }
        }
      }

      void drain() {
        while (!pending.empty()) {
          auto [a, b] = pending.front();
          pending.pop_front();
          a = reduce(a);
          b = reduce(b);
          if (a == b) {
            continue;
          }
          if (a < b) {
            std::swap(a, b);
          }
          if (static_cast<int>(a.gens.size()) > max_len) {
            dropped = true;
            continue;
          }
          if (rules.size() >= max_rules) {
            dropped = true;
            note    = "rule limit reached during completion";
            pending.clear();
            return;
          }
          add_rule(std::move(a), std::move(b));
        }
      }

      void overlaps(int r, int s) {
        auto const& lr = rules[r].lhs.gens;
        auto const& ls = rules[s].lhs.gens;
        std::size_t m  = std::min(lr.size(), ls.size());
        for (std::size_t k = 1; k < m; ++k) {
          if (!std::equal(lr.end() - static_cast<long>(k), lr.end(), ls.begin())) {
            continue;
          }
          Word one = rules[r].rhs;
          one.gens.insert(one.gens.end(), ls.begin() + static_cast<long>(k), ls.end());
          Word two{rules[r].lhs.src,
                   std::vector<int>(lr.begin(), lr.end() - static_cast<long>(k))};
          two.gens.insert(two.gens.end(), rules[s].rhs.gens.begin(), rules[s].rhs.gens.end());
          pending.emplace_back(std::move(one), std::move(two));
        }
      }

      void run(std::vector<Relation> const& relations) {
        for (auto const& r : relations) {
          pending.emplace_back(r.lhs, r.rhs);
        }
        drain();
        for (std::size_t next = 0; next < rules.size(); ++next) {
          int r = static_cast<int>(next);
          for (int s = 0; s <= r; ++s) {
            if (!alive[r]) {
              break;
            }
            if (!alive[s]) {
              continue;
            }
            overlaps(r, s);
            if (s != r) {
              overlaps(s, r);
            }
            drain();
          }
          if (!note.empty()) {
            return;
          }
        }
      }
    };

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Saturation
  ////////////////////////////////////////////////////////////////////////

  int SaturationResult::arrow_of(Word const& w) const {
    auto it = index.find(rules.reduce(w));
    return it == index.end() ? -1 : it->second;
  }

  int SaturationResult::compose(int g, int f) const {
    if (tgt(f) != src(g)) {
      return -1;
    }
    return arrow_of(pres.concat(normal_forms[f], normal_forms[g]));
  }

  std::vector<int> SaturationResult::hom(int x, int y) const {
    std::vector<int> out;
    for (std::size_t a = 0; a < normal_forms.size(); ++a) {
      if (normal_forms[a].src == x && pres.tgt(normal_forms[a]) == y) {
        out.push_back(static_cast<int>(a));
      }
    }
    return out;
  }

  std::size_t SaturationResult::hom_count(int x, int y) const {
    return hom(x, y).size();
  }

  SaturationResult saturate(Presentation const& P, int max_word_len) {
    if (max_word_len < 1) {
      throw precondition_error("max_word_len must be at least 1");
    }
    if (auto bad = P.validate()) {
      throw precondition_error("invalid presentation: " + *bad);
    }
    SaturationResult R;
    R.pres  = P;
    R.bound = max_word_len;

    Completion kb;
    kb.ngen    = P.generators.size();
    kb.max_len = max_word_len;
    kb.by_last.assign(kb.ngen, {});
    kb.run(P.relations);
    R.confluent = !kb.dropped;
    R.rules     = RewriteSystem(kb.ngen);
    for (std::size_t i = 0; i < kb.rules.size(); ++i) {
      if (kb.alive[i]) {
        R.rules.add(kb.rules[i]);
      }
    }

    std::vector<std::vector<int>> out_gens(P.objects.size());
    for (std::size_t g = 0; g < P.generators.size(); ++g) {
      out_gens[P.generators[g].src].push_back(static_cast<int>(g));
    }
    std::vector<Word> level;
    for (std::size_t x = 0; x < P.objects.size(); ++x) {
      level.push_back(Word{static_cast<int>(x), {}});
    }
    R.normal_forms = level;
    R.growth.push_back(level.size());
    bool closed    = false;
    bool over      = false;
    for (int L = 1; L <= max_word_len + 1; ++L) {
      std::vector<Word> next;
      for (auto const& w : level) {
        for (int g : out_gens[P.tgt(w)]) {
          Word c = w;
          c.gens.push_back(g);
          if (!R.rules.suffix_reducible(c.gens)) {
            next.push_back(std::move(c));
          }
        }
      }
      if (next.empty()) {
        closed = true;
        break;
      }
      if (L == max_word_len + 1) {
        break;
      }
      std::sort(next.begin(), next.end());
      R.normal_forms.insert(R.normal_forms.end(), next.begin(), next.end());
      R.growth.push_back(R.normal_forms.size());
      if (R.normal_forms.size() > arrow_budget()) {
        over = true;
        break;
      }
      level = std::move(next);
    }
    for (std::size_t i = 0; i < R.normal_forms.size(); ++i) {
      R.index[R.normal_forms[i]] = static_cast<int>(i);
    }

    if (!R.confluent) {
      R.note = kb.note.empty() ? "completion needed rules longer than the word bound" : kb.note;
    } else if (over) {
      R.note = "normal forms exceed the arrow budget";
    } else if (!closed) {
      R.note = "normal forms of length " + std::to_string(max_word_len + 1) + " exist";
    }
    if (!R.confluent || !closed) {
      R.status = Status::Truncated;
      return R;
    }

    R.status = Status::Exact;
    std::vector<RawCat::Arrow> arrows;
    std::vector<int>           ids;
    for (std::size_t a = 0; a < R.normal_forms.size(); ++a) {
      auto const& w = R.normal_forms[a];
      std::string lbl;
      if (w.gens.empty()) {
        lbl = "id_" + P.objects[w.src];
        ids.push_back(static_cast<int>(a));
      } else {
        for (std::size_t i = 0; i < w.gens.size(); ++i) {
          lbl += (i ? ";" : "") + P.generators[w.gens[i]].label;
        }
      }
      arrows.push_back({lbl, w.src, P.tgt(w)});
    }
    R.cat = build_cat(P.objects, arrows, ids, [&](int g, int f) {
      return R.index.at(R.rules.reduce(P.concat(R.normal_forms[f], R.normal_forms[g])));
    });
    return R;
  }

  ////////////////////////////////////////////////////////////////////////
  // Tautological presentations
  ////////////////////////////////////////////////////////////////////////

  namespace {
    std::vector<int> generator_index(Cat const& C) {
      std::vector<int> gi(C->num_arrows(), -1);
      int              n = 0;
      for (std::size_t a = 0; a < C->num_arrows(); ++a) {
        if (!C->is_identity(static_cast<int>(a))) {
          gi[a] = n++;
        }
      }
      return gi;
    }
  }  // namespace

  Word arrow_word(Cat const& C, int a) {
    if (C->is_identity(a)) {
      return Word{C->src(a), {}};
    }
    int g = 0;
    for (int b = 0; b < a; ++b) {
      g += !C->is_identity(b);
    }
    return Word{C->src(a), {g}};
  }

  Presentation tautological(Cat const& C) {
    Presentation P;
    for (std::size_t x = 0; x < C->num_objects(); ++x) {
      P.add_object(C->object_label(static_cast<int>(x)));
    }
    auto gi = generator_index(C);
    for (std::size_t a = 0; a < C->num_arrows(); ++a) {
      if (gi[a] >= 0) {
        P.add_generator(C->arrow_label(static_cast<int>(a)), C->src(static_cast<int>(a)),
                        C->tgt(static_cast<int>(a)));
      }
    }
    auto word = [&](int a) {
      return gi[a] < 0 ? Word{C->src(a), {}} : Word{C->src(a), {gi[a]}};
    };
    for (std::size_t f = 0; f < C->num_arrows(); ++f) {
      if (gi[f] < 0) {
        continue;
      }
      for (int g : C->out(C->tgt(static_cast<int>(f)))) {
        if (gi[g] >= 0) {
          P.add_relation(Word{C->src(static_cast<int>(f)), {gi[f], gi[g]}},
                         word(C->compose(g, static_cast<int>(f))));
        }
      }
    }
    return P;
  }

  PresentedMap functor_map(Functor const& F) {
    PresentedMap m;
    m.obj = F.obj;
    for (std::size_t a = 0; a < F.dom->num_arrows(); ++a) {
      if (!F.dom->is_identity(static_cast<int>(a))) {
        m.gen.push_back(arrow_word(F.cod, F.arr[a]));
      }
    }
    return m;
  }

  std::vector<int> realize_partial(Cat const& dom, SaturationResult const& R,
                                   PresentedMap const& m) {
    std::vector<int> arr;
    for (std::size_t a = 0; a < dom->num_arrows(); ++a) {
      arr.push_back(R.arrow_of(m.apply(arrow_word(dom, static_cast<int>(a)), R.pres)));
    }
    return arr;
  }

  Functor realize(Cat const& dom, SaturationResult const& R, PresentedMap const& m) {
    if (!R.exact()) {
      throw precondition_error("functor into a truncated saturation");
    }
    return Functor{dom, R.cat, m.obj, realize_partial(dom, R, m)};
  }

  Functor evaluate(SaturationResult const& R, Cat const& D, std::vector<int> const& obj,
                   std::vector<int> const& gen) {
    if (!R.exact()) {
      throw precondition_error("functor out of a truncated saturation");
    }
    Functor F{R.cat, D, obj, {}};
    for (auto const& w : R.normal_forms) {
      int cur = D->id(obj[w.src]);
      for (int g : w.gens) {
        cur = D->compose(gen[g], cur);
        if (cur < 0) {
          throw law_error("generator images do not compose");
        }
      }
      F.arr.push_back(cur);
    }
    return F;
  }

  Functor induced(SaturationResult const& R, SaturationResult const& S, PresentedMap const& m) {
    if (!R.exact() || !S.exact()) {
      throw precondition_error("functor between truncated saturations");
    }
    Functor F{R.cat, S.cat, m.obj, {}};
    for (auto const& w : R.normal_forms) {
      F.arr.push_back(S.arrow_of(m.apply(w, S.pres)));
    }
    return F;
  }

  std::vector<int> generator_of(Cat const& C) {
    return generator_index(C);
  }

  ////////////////////////////////////////////////////////////////////////
  // Presentation-level colimits
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // Copies the generators and relations of Q into P with objects renamed by
    // obj and generators shifted by the current generator count.
    PresentedMap embed(Presentation& P, Presentation const& Q, std::vector<int> const& obj,
                       std::string const& prefix) {
      PresentedMap m;
      m.obj    = obj;
      int base = static_cast<int>(P.generators.size());
      for (std::size_t g = 0; g < Q.generators.size(); ++g) {
        auto const& G = Q.generators[g];
        P.add_generator(prefix + G.label, obj[G.src], obj[G.tgt]);
        m.gen.push_back(Word{obj[G.src], {base + static_cast<int>(g)}});
      }
      for (auto const& r : Q.relations) {
        P.add_relation(m.apply(r.lhs, P), m.apply(r.rhs, P));
      }
      return m;
    }
  }  // namespace

  PresentedPushout pushout_presentation(Presentation const& A, Presentation const& B,
                                        Presentation const& C, PresentedMap const& f,
                                        PresentedMap const& g) {
    int const nb = static_cast<int>(B.objects.size());
    int const nc = static_cast<int>(C.objects.size());
    UnionFind uf(nb + nc);
    for (std::size_t a = 0; a < A.objects.size(); ++a) {
      uf.unite(f.obj[a], nb + g.obj[a]);
    }
    int  count = 0;
    auto cls   = uf.classes(&count);
    PresentedPushout R;
    std::vector<std::string> labels(count);
    for (int x = 0; x < nb + nc; ++x) {
      std::string l = x < nb ? "0." + B.objects[x] : "1." + C.objects[x - nb];
      labels[cls[x]] += (labels[cls[x]].empty() ? "" : "=") + l;
    }
    for (auto& l : labels) {
      R.pres.add_object(l);
    }
    std::vector<int> ob(cls.begin(), cls.begin() + nb), oc(cls.begin() + nb, cls.end());
    R.inl = embed(R.pres, B, ob, "0.");
    R.inr = embed(R.pres, C, oc, "1.");
    for (std::size_t w = 0; w < A.generators.size(); ++w) {
      R.pres.add_relation(R.inl.apply(f.gen[w], R.pres), R.inr.apply(g.gen[w], R.pres));
    }
    return R;
  }

  PresentedCocomma cocomma_presentation(Presentation const& A, Presentation const& B,
                                        Presentation const& C, PresentedMap const& f,
                                        PresentedMap const& g) {
    int const        nb = static_cast<int>(B.objects.size());
    PresentedCocomma R;
    std::vector<int> ob, oc;
    for (int x = 0; x < nb; ++x) {
      ob.push_back(R.pres.add_object("0." + B.objects[x]));
    }
    for (std::size_t x = 0; x < C.objects.size(); ++x) {
      oc.push_back(R.pres.add_object("1." + C.objects[x]));
    }
    R.k = embed(R.pres, B, ob, "0.");
    R.l = embed(R.pres, C, oc, "1.");
    for (std::size_t a = 0; a < A.objects.size(); ++a) {
      R.alpha.push_back(R.pres.add_generator("alpha_" + A.objects[a], ob[f.obj[a]], oc[g.obj[a]]));
    }
    // alpha_{a'} after f(w) = g(w) after alpha_a
    for (std::size_t w = 0; w < A.generators.size(); ++w) {
      auto const& G   = A.generators[w];
      Word        lhs = R.k.apply(f.gen[w], R.pres);
      lhs.gens.push_back(R.alpha[G.tgt]);
      Word rhs = R.pres.concat(Word{ob[f.obj[G.src]], {R.alpha[G.src]}},
                               R.l.apply(g.gen[w], R.pres));
      R.pres.add_relation(lhs, rhs);
    }
    return R;
  }

  PresentedLocalisation localize_presentation(Presentation const& P, std::vector<Word> const& W) {
    PresentedLocalisation R;
    R.pres = P;
    for (std::size_t x = 0; x < P.objects.size(); ++x) {
      R.i.obj.push_back(static_cast<int>(x));
    }
    for (std::size_t g = 0; g < P.generators.size(); ++g) {
      R.i.gen.push_back(P.single(static_cast<int>(g)));
    }
    for (auto const& w : W) {
      int t = P.tgt(w);
      if (t < 0) {
        throw precondition_error("localising word is not a path");
      }
      if (w.gens.empty()) {
        R.inverse.push_back(-1);
        continue;
      }
      std::string lbl;
      for (std::size_t i = 0; i < w.gens.size(); ++i) {
        lbl += (i ? ";" : "") + P.generators[w.gens[i]].label;
      }
      int inv = R.pres.add_generator("inv(" + lbl + ")", t, w.src);
      R.inverse.push_back(inv);
      R.pres.add_relation(R.pres.concat(w, Word{t, {inv}}), Word{w.src, {}});
      R.pres.add_relation(R.pres.concat(Word{t, {inv}}, w), Word{t, {}});
    }
    return R;
  }

  ////////////////////////////////////////////////////////////////////////
  // Colimits of finite categories
  ////////////////////////////////////////////////////////////////////////

  namespace {
    void require_common_domain(Functor const& f, Functor const& g) {
      if (f.dom != g.dom) {
        throw precondition_error("span legs do not share a domain");
      }
    }
  }  // namespace

  PushoutResult pushout(Functor const& f, Functor const& g, int max_word_len) {
    require_common_domain(f, g);
    auto A = tautological(f.dom);
    auto B = tautological(f.cod);
    auto C = tautological(g.cod);
    auto p = pushout_presentation(A, B, C, functor_map(f), functor_map(g));
    return PushoutResult{saturate(p.pres, max_word_len), p.inl, p.inr};
  }

  CocommaResult cocomma(Functor const& f, Functor const& g, int max_word_len) {
    require_common_domain(f, g);
    auto A = tautological(f.dom);
    auto B = tautological(f.cod);
    auto C = tautological(g.cod);
    auto p = cocomma_presentation(A, B, C, functor_map(f), functor_map(g));
    return CocommaResult{saturate(p.pres, max_word_len), p.k, p.l, p.alpha};
  }

  LocalisationResult localize(LocalisationSpec const& spec, int max_word_len) {
    auto const&       C = spec.base;
    std::vector<Word> W;
    for (int a : spec.W) {
      if (a < 0 || a >= static_cast<int>(C->num_arrows())) {
        throw precondition_error("localising arrow out of range");
      }
      W.push_back(arrow_word(C, a));
    }
    auto p = localize_presentation(tautological(C), W);
    return LocalisationResult{saturate(p.pres, max_word_len), p.i, p.inverse};
  }

  std::vector<int> inverted_arrows(LocalisationSpec const& spec, LocalisationResult const& L) {
    auto             i = realize(spec.base, L.sat, L.i);
    std::vector<int> out;
    for (std::size_t a = 0; a < spec.base->num_arrows(); ++a) {
      if (is_iso(L.sat.cat, i.arr[a])) {
        out.push_back(static_cast<int>(a));
      }
    }
    return out;
  }

  std::optional<std::string> check_localisation(LocalisationSpec const& spec,
                                                LocalisationResult const& L) {
    if (!L.sat.exact()) {
      throw precondition_error("localisation is truncated");
    }
    auto i = realize(spec.base, L.sat, L.i);
    if (auto v = check_functor(i)) {
      return "i is not a functor: " + v->describe();
    }
    for (int w : spec.W) {
      if (!is_iso(L.sat.cat, i.arr[w])) {
        return "i does not invert " + spec.base->arrow_label(w);
      }
    }
    std::vector<char> hit(L.sat.cat->num_objects(), 0);
    for (int x : i.obj) {
      hit[x] = 1;
    }
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) {
      return "i is not surjective on objects";
    }
    std::vector<char> allowed(L.sat.pres.generators.size(), 0);
    for (auto const& w : L.i.gen) {
      for (int g : w.gens) {
        allowed[g] = 1;
      }
    }
    for (int g : L.inverse) {
      if (g >= 0) {
        allowed[g] = 1;
      }
    }
    for (auto const& w : L.sat.normal_forms) {
      for (int g : w.gens) {
        if (!allowed[g]) {
          return "normal form is not a zigzag";
        }
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Sequential colimits
  ////////////////////////////////////////////////////////////////////////

  namespace {
    Functor inverse_iso(Functor const& F) {
      Functor G{F.cod, F.dom, std::vector<int>(F.obj.size()), std::vector<int>(F.arr.size())};
      for (std::size_t x = 0; x < F.obj.size(); ++x) {
        G.obj[F.obj[x]] = static_cast<int>(x);
      }
      for (std::size_t a = 0; a < F.arr.size(); ++a) {
        G.arr[F.arr[a]] = static_cast<int>(a);
      }
      return G;
    }
  }  // namespace

  SequentialColimit sequential_colimit(std::vector<Cat> const&     stages,
                                       std::vector<Functor> const& links, int max_stages) {
    if (stages.empty() || links.size() + 1 != stages.size()) {
      throw precondition_error("sequential colimit needs one link between consecutive stages");
    }
    for (std::size_t i = 0; i < links.size(); ++i) {
      if (links[i].dom != stages[i] || links[i].cod != stages[i + 1]) {
        throw precondition_error("link " + std::to_string(i) + " does not join its stages");
      }
    }
    SequentialColimit R;
    int const n = std::min(static_cast<int>(stages.size()), max_stages);
    for (int i = 0; i < n; ++i) {
      R.growth.push_back(stages[i]->num_arrows());
    }
    int last = n - 2;  // last link considered
    int from = last + 1;
    while (from > 0 && is_isomorphism(links[from - 1])) {
      --from;
    }
    if (from > last) {
      return R;
    }
    R.status  = Status::Exact;
    R.stage   = from;
    R.colimit = stages[from];
    for (int i = 0; i < n; ++i) {
      Functor c = identity_functor(stages[i]);
      if (i <= from) {
        for (int j = i; j < from; ++j) {
          c = compose(links[j], c);
        }
      } else {
        Functor to = identity_functor(stages[from]);
        for (int j = from; j < i; ++j) {
          to = compose(links[j], to);
        }
        c = inverse_iso(to);
      }
      R.cocone.push_back(c);
    }
    return R;
  }

}  // namespace fincat
