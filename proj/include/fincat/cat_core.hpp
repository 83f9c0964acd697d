// Explicit finite categories, functors, natural transformations and the finite
// constructions built from them.

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fincat {

  class size_error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class law_error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class precondition_error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Output budget for every construction (default 10000 arrows).
  std::size_t arrow_budget();
  void        set_arrow_budget(std::size_t n);
  void        check_budget(std::size_t arrows, char const* what);

  class FinCat;
  using Cat = std::shared_ptr<FinCat const>;

  // Unvalidated category data.  compose is keyed by (g, f) meaning g after f.
  struct RawCat {
    struct Arrow {
      std::string label;
      int         src;
      int         tgt;
    };
    std::vector<std::string> objects;
    std::vector<Arrow>       arrows;
    std::vector<int>         identities;
    std::vector<int>         compose;  // arrows x arrows, row g, column f; -1 if undefined

    int add_object(std::string label);
    int add_arrow(std::string label, int src, int tgt);
    void set_compose(int g, int f, int gf);
    void resize_table();
  };

  struct Violation {
    std::string              law;
    std::vector<std::string> witnesses;
    std::string              describe() const;
  };

  struct CheckResult {
    Cat                      cat;
    std::optional<Violation> violation;
    bool                     ok() const {
      return cat != nullptr;
    }
  };

  CheckResult check_fincat(RawCat const& raw);
  Cat         make_cat(RawCat const& raw);  // throws law_error

  // Builds and validates a category from a composition callback.
  Cat build_cat(std::vector<std::string> const&        objects,
                std::vector<RawCat::Arrow> const&      arrows,
                std::vector<int> const&                identities,
                std::function<int(int, int)> const&    compose);

  class FinCat {
   public:
    std::size_t num_objects() const {
      return _objects.size();
    }
    std::size_t num_arrows() const {
      return _src.size();
    }
    int src(int a) const {
      return _src[a];
    }
    int tgt(int a) const {
      return _tgt[a];
    }
    int id(int x) const {
      return _id[x];
    }
    bool is_identity(int a) const {
      return _id[_src[a]] == a;
    }
    // g after f, or -1 when tgt f != src g.
    int compose(int g, int f) const;

    std::vector<int> const& hom(int x, int y) const {
      return _hom[static_cast<std::size_t>(x) * _objects.size() + y];
    }
    std::vector<int> const& out(int x) const {
      return _out[x];
    }
    std::vector<int> const& in(int x) const {
      return _in[x];
    }
    // Position of a within hom(src a, tgt a).
    int hom_index(int a) const {
      return _hom_pos[a];
    }

    std::string const& object_label(int x) const {
      return _objects[x];
    }
    std::string const& arrow_label(int a) const {
      return _labels[a];
    }
    int find_object(std::string const& label) const;
    int find_arrow(std::string const& label) const;

    RawCat to_raw() const;

   private:
    friend CheckResult check_fincat(RawCat const&);
    std::vector<std::string>      _objects;
    std::vector<std::string>      _labels;
    std::vector<int>              _src, _tgt, _id;
    std::vector<std::vector<int>> _hom, _out, _in;
    std::vector<int>              _hom_pos, _out_pos;
    std::vector<std::vector<int>> _comp;  // _comp[f][out_pos of g] = g∘f
  };

  struct Functor {
    Cat              dom;
    Cat              cod;
    std::vector<int> obj;
    std::vector<int> arr;

    bool operator==(Functor const& o) const {
      return obj == o.obj && arr == o.arr;
    }
  };

  struct NatTrans {
    Functor          src;
    Functor          tgt;
    std::vector<int> comp;
  };

  std::optional<Violation> check_functor(Functor const& F);
  std::optional<Violation> check_natural(NatTrans const& a);
  Functor                  identity_functor(Cat const& C);
  Functor                  compose(Functor const& G, Functor const& F);
  NatTrans                 identity_nat(Functor const& F);
  NatTrans                 vcompose(NatTrans const& b, NatTrans const& a);
  NatTrans                 whisker_left(NatTrans const& a, Functor const& F);   // a F
  NatTrans                 whisker_right(Functor const& G, NatTrans const& a);  // G a
  // The functor 1 -> C picking x.
  Functor                  point(Cat const& C, int x);
  Functor                  to_terminal(Cat const& C);
  Functor                  from_empty(Cat const& C);

  // Fixtures.
  Cat terminal();
  Cat empty_cat();
  Cat discrete(int n);
  Cat interval();
  Cat walking_iso();
  Cat walking_idempotent();
  Cat section_retraction();
  Cat poset_chain(int n);  // [n] = 0 < 1 < ... < n
  Cat cyclic_group(int n);
  Cat parallel_pair();

  // Enumeration.  The callback returns false to stop.
  void enumerate_functors(Cat const& C, Cat const& D,
                          std::function<bool(Functor const&)> const& f);
  // Functors with F(x) = y only where obj_ok(x, y) and F(a) = b only where
  // arr_ok(a, b) for non-identity a.  Either filter may be empty.
  void enumerate_functors_where(Cat const& C, Cat const& D,
                                std::function<bool(int, int)> const&       obj_ok,
                                std::function<bool(int, int)> const&       arr_ok,
                                std::function<bool(Functor const&)> const& f);
  std::vector<Functor> all_functors(Cat const& C, Cat const& D);
  void enumerate_nat_trans(Functor const& F, Functor const& G,
                           std::function<bool(NatTrans const&)> const& f);
  std::vector<NatTrans> all_nat_trans(Functor const& F, Functor const& G);

  struct FunctorCategory {
    Cat                   cat;
    std::vector<Functor>  objects;
    std::vector<NatTrans> arrows;
  };
  FunctorCategory functor_category(Cat const& C, Cat const& D);

  struct Comma {
    Cat      cat;
    Functor  dom_proj;
    Functor  cod_proj;
    NatTrans cell;  // F dom_proj => G cod_proj
    struct Obj {
      int b, c, alpha;
    };
    std::vector<Obj>                 objects;
    std::vector<std::pair<int, int>> arrows;  // (arrow of B, arrow of C)
  };
  Comma comma(Functor const& F, Functor const& G);

  struct Span2 {
    Cat     cat;
    Functor first;
    Functor second;
  };
  Span2 product(Cat const& C, Cat const& D);
  Span2 coproduct(Cat const& C, Cat const& D);  // injections
  Span2 pullback(Functor const& F, Functor const& G);

  struct Sub {
    Cat              cat;
    Functor          inclusion;
    std::vector<int> objects;  // sub index -> ambient index
    std::vector<int> arrows;
  };
  Sub full_subcategory(Cat const& C, std::function<bool(int)> const& keep_object);
  Sub wide_subcategory(Cat const& C, std::function<bool(int)> const& keep_arrow);
  Sub core(Cat const& C);
  Sub skeleton(Cat const& C);
  // Fibre of p over b: objects over b, arrows over its identity.
  Sub fibre(Functor const& p, int b);

  Cat opposite(Cat const& C);

  int  inverse_of(Cat const& C, int a);  // -1 if not invertible
  bool is_iso(Cat const& C, int a);
  bool is_groupoid(Cat const& C);
  bool isomorphic_objects(Cat const& C, int x, int y);
  // iso class representative per object (least index)
  std::vector<int> iso_class_reps(Cat const& C);

  bool is_faithful(Functor const& F);
  bool is_full(Functor const& F);
  bool is_fully_faithful(Functor const& F);
  bool is_surjective_on_isoclasses(Functor const& F);
  bool is_equivalence(Functor const& F);
  bool is_isomorphism(Functor const& F);

  std::optional<NatTrans> find_natural_iso(Functor const& F, Functor const& G);
  bool                    naturally_isomorphic(Functor const& F, Functor const& G);
  // Brute-force quasi-inverse search.
  std::optional<Functor> find_quasi_inverse(Functor const& F);
  std::optional<Functor> find_isomorphism(Cat const& C, Cat const& D);
  // Equivalence C -> D built from skeleta, if one exists.
  std::optional<Functor> find_equivalence(Cat const& C, Cat const& D);
  bool                   equivalent(Cat const& C, Cat const& D);

  struct Components {
    int              count = 0;
    std::vector<int> of;  // component of each object, numbered by first occurrence
  };
  Components pi0(Cat const& C);

  // Cospan X -> Z <- Y with Z a groupoid: pi0 of the pullback against the
  // pullback of pi0's.
  bool localisation_preserves_pullback_check(Functor const& F, Functor const& G);

  class UnionFind {
   public:
    explicit UnionFind(std::size_t n = 0);
    std::size_t add();
    std::size_t find(std::size_t x);
    bool        unite(std::size_t a, std::size_t b);  // keeps the smaller root
    std::size_t size() const {
      return _parent.size();
    }
    // class index per element, classes numbered by least member
    std::vector<int> classes(int* count = nullptr);

   private:
    std::vector<std::size_t> _parent;
  };

}  // namespace fincat
