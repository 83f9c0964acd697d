// Set-valued presheaves on finite categories, left Kan extension, the
// reflector S built from a cospan of adjunctions, and gluing predicates.
//
// Elements of P(x) are 0 .. size[x]-1.  Elements of computed colimits are
// numbered by their least witness, so equal inputs give equal outputs.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "fincat/cat_core.hpp"
#include "fincat/presentation.hpp"

namespace fincat {

  struct Presheaf {
    Cat                           base;
    std::vector<int>              size;
    std::vector<std::vector<int>> act;  // act[a : x -> y] : P(y) -> P(x)

    int operator()(int a, int e) const {
      return act[a][e];
    }
    std::size_t total() const;
    bool        operator==(Presheaf const& o) const {
      return size == o.size && act == o.act;
    }
  };

  // Covariant: act[a : x -> y] : P(x) -> P(y).
  struct Copresheaf {
    Cat                           base;
    std::vector<int>              size;
    std::vector<std::vector<int>> act;
  };

  struct PresheafMap {
    std::vector<std::vector<int>> comp;  // comp[x] : P(x) -> Q(x)

    bool operator==(PresheafMap const& o) const {
      return comp == o.comp;
    }
  };

  std::optional<Violation> check_presheaf(Presheaf const& P);
  std::optional<Violation> check_presheaf_map(Presheaf const& P, Presheaf const& Q,
                                              PresheafMap const& f);
  Presheaf    as_presheaf(Copresheaf const& P);  // over the opposite category
  Presheaf    yoneda(Cat const& C, int c);       // elements of C(x, c) by hom_index
  Presheaf    terminal_presheaf(Cat const& C);
  Presheaf    empty_presheaf(Cat const& C);
  Presheaf    coproduct(Presheaf const& P, Presheaf const& Q);  // P first
  PresheafMap identity_map(Presheaf const& P);
  PresheafMap compose(PresheafMap const& g, PresheafMap const& f);
  bool        is_bijective(PresheafMap const& f);
  bool        is_injective(PresheafMap const& f);
  // The map yo(c) -> P classifying an element e of P(c).
  PresheafMap yoneda_map(Cat const& C, Presheaf const& P, int c, int e);

  void enumerate_presheaf_maps(Presheaf const& P, Presheaf const& Q,
                               std::function<bool(PresheafMap const&)> const& f);
  std::vector<PresheafMap> all_presheaf_maps(Presheaf const& P, Presheaf const& Q);
  std::optional<PresheafMap> find_presheaf_iso(Presheaf const& P, Presheaf const& Q);

  // Category of elements with its projection, a discrete fibration.
  struct Elements {
    Cat                              cat;
    Functor                          proj;
    std::vector<std::pair<int, int>> objects;  // (x, e)
  };
  Elements elements(Presheaf const& P);

  ////////////////////////////////////////////////////////////////////////
  // Restriction and left Kan extension
  ////////////////////////////////////////////////////////////////////////

  Presheaf    restrict(Functor const& F, Presheaf const& P);
  PresheafMap restrict(Functor const& F, PresheafMap const& f);

  struct Lan {
    Functor  F;
    Presheaf P;      // over dom F
    Presheaf value;  // over cod F
    // Triples (c, p in P(c), u : d -> F c) enumerated per d, and their classes.
    std::vector<std::vector<std::tuple<int, int, int>>> triples;
    std::vector<std::vector<int>>                       class_of;
    std::vector<std::vector<int>>                       rep;  // class -> least triple
    std::vector<std::vector<int>>                       offset;  // offset[d][c]

    int element(int d, int c, int p, int u) const;
  };
  Lan lan(Functor const& F, Presheaf const& P);
  // F_! on a map P -> P', given both extensions.
  PresheafMap lan_map(Lan const& from, Lan const& to, PresheafMap const& f);
  PresheafMap lan_unit(Lan const& L);  // P -> F^* F_! P
  // F_! F^* Q -> Q, where L = lan(F, restrict(F, Q)).
  PresheafMap lan_counit(Lan const& L, Presheaf const& Q);
  // m : k => l of functors W -> C gives k_! Q -> l_! Q.
  PresheafMap lan_mate(NatTrans const& m, Lan const& along_k, Lan const& along_l);

  ////////////////////////////////////////////////////////////////////////
  // Colimits
  ////////////////////////////////////////////////////////////////////////

  struct PresheafPushout {
    Presheaf    value;
    PresheafMap inl, inr;
  };
  // Pushout of Q <-f- P -g-> R.
  PresheafPushout presheaf_pushout(Presheaf const& P, Presheaf const& Q, Presheaf const& R,
                                   PresheafMap const& f, PresheafMap const& g);
  // The map out of a pushout induced by a cocone; throws if the cocone does not commute.
  PresheafMap pushout_induced(PresheafPushout const& po, PresheafMap const& from_left,
                              PresheafMap const& from_right);

  struct PresheafSeqColimit {
    Status                   status = Status::Truncated;
    Presheaf                 value;
    int                      stage = -1;
    std::vector<PresheafMap> cocone;
    std::vector<std::size_t> growth;  // total elements per stage
  };
  // Exact when every map from some stage on is bijective.
  PresheafSeqColimit presheaf_seq_colimit(std::vector<Presheaf> const&    stages,
                                          std::vector<PresheafMap> const& maps,
                                          int max_stages = default_max_stages);

  struct Image {
    Presheaf    value;
    PresheafMap corestriction;  // P -> image
    PresheafMap inclusion;      // image -> Q
  };
  Image image(Presheaf const& P, Presheaf const& Q, PresheafMap const& f);

  // Pointwise pullback of Q -f-> R <-g- S.
  struct PresheafPullback {
    Presheaf                                      value;
    PresheafMap                                   first, second;
    std::vector<std::vector<std::pair<int, int>>> pairs;
  };
  PresheafPullback presheaf_pullback(Presheaf const& Q, Presheaf const& R, Presheaf const& S,
                                     PresheafMap const& f, PresheafMap const& g);

  ////////////////////////////////////////////////////////////////////////
  // Arrow-category left adjoint
  ////////////////////////////////////////////////////////////////////////

  // An object of the arrow category of presheaves over W: a map from_l -> to_k.
  struct ArrowObject {
    Presheaf    l_part;
    Presheaf    k_part;
    PresheafMap map;
  };

  // m^* P = (l^* P -> k^* P) for m : k => l of functors W -> C.
  ArrowObject arrow_restrict(NatTrans const& m, Presheaf const& P);

  struct ArrowLeftAdjoint {
    Lan             k_l, k_k, l_l;  // k_! l_part, k_! k_part, l_! l_part
    PresheafMap     leg_k, leg_l;   // k_! l_part -> k_! k_part, -> l_! l_part
    PresheafPushout value;          // m_! X
  };
  ArrowLeftAdjoint arrow_left_adjoint(NatTrans const& m, ArrowObject const& X);
  // m_! m^* P -> P, for A = arrow_left_adjoint(m, arrow_restrict(m, P)).
  PresheafMap arrow_counit(ArrowLeftAdjoint const& A, Presheaf const& P);
  // A list of arrows of C as src => tgt, functors discrete(|W|) -> C.
  NatTrans arrow_family(Cat const& C, std::vector<int> const& W);
  // The same family indexed by the full subcategory of the arrow category on
  // W, so commuting squares between members are part of the index.
  NatTrans arrow_family_full(Cat const& C, std::vector<int> const& W);
  // Maps in the arrow category X -> Y.
  std::size_t count_arrow_maps(ArrowObject const& X, ArrowObject const& Y);

  ////////////////////////////////////////////////////////////////////////
  // The reflector S
  ////////////////////////////////////////////////////////////////////////

  // The span f_! f^* x -> x and f_! f^* x -> f_! g^* g_! f^* x.
  struct ReflectorSpan {
    Presheaf    apex;
    Presheaf    other;
    PresheafMap counit;      // apex -> x
    PresheafMap unit_image;  // apex -> other
  };

  struct ReflectorCospan {
    Cat                                              base;
    std::function<ReflectorSpan(Presheaf const&)>    span;
    std::function<bool(Presheaf const&)>             is_local;
  };

  // The cospan whose reflective subcategory is presheaves inverting W.
  ReflectorCospan localisation_cospan(Cat const& C, std::vector<int> const& W);
  bool            inverts(Presheaf const& P, std::vector<int> const& W);

  struct KellyStep {
    Presheaf        value;  // S x
    PresheafMap     s;      // x -> S x
    ReflectorSpan   span;
    PresheafPushout pushout;
  };
  KellyStep kelly_S(ReflectorCospan const& R, Presheaf const& x);

  struct KellyResult {
    Status                   status = Status::Truncated;
    Presheaf                 value;  // S^infty x when Exact, last stage otherwise
    PresheafMap              unit;   // x -> value
    int                      iterations = 0;
    std::vector<std::size_t> growth;  // total elements of each stage
    std::vector<std::vector<int>> component_growth;  // per stage, per object
  };
  // Iterates S.  Stops at stage n when the image of s : X_n -> X_{n+1} is
  // local, which then is S^infty x; x itself when x is local.
  KellyResult kelly_S_infty(ReflectorCospan const& R, Presheaf const& x,
                            int max_iters = default_max_stages);

  // Precomposition with the unit, hom(S^infty x, y) -> hom(x, y), is a bijection.
  bool s_orthogonal(Presheaf const& x, KellyResult const& r, Presheaf const& y);

  struct HomsViaS {
    Status                   status = Status::Truncated;
    std::size_t              count  = 0;  // at the last stage when truncated
    int                      iterations = 0;
    std::vector<std::size_t> growth;
  };
  HomsViaS localisation_homs_via_S(Cat const& C, std::vector<int> const& W, int x, int y,
                                   int max_iters = default_max_stages);

  ////////////////////////////////////////////////////////////////////////
  // Gluing along q^* for q : E -> C
  ////////////////////////////////////////////////////////////////////////

  struct GluedObject {
    Presheaf    up;          // over E
    Presheaf    down;        // over C
    PresheafMap comparison;  // up -> q^* down
  };

  struct GluedMap {
    PresheafMap up;
    PresheafMap down;
  };

  std::optional<std::string> check_glued(Functor const& q, GluedObject const& x);
  std::optional<std::string> check_glued_map(Functor const& q, GluedObject const& x,
                                             GluedObject const& y, GluedMap const& f);
  // Pointwise pullback test of up(x) -> up(y) over q^* down(x) -> q^* down(y).
  bool gl_is_cartesian(Functor const& q, GluedObject const& x, GluedObject const& y,
                       GluedMap const& f);
  GluedMap    glued_identity(GluedObject const& x);
  GluedMap    glued_compose(GluedMap const& g, GluedMap const& f);

  // yo a -> q^* q_! yo a, with q_! yo a identified with yo(q a).
  GluedObject glued_yoneda(Functor const& q, int a);

  // Localisation cospan of the gluing: W in C and lifts W_u in E over W.  Both
  // families are indexed by the full subcategories of arrow categories they span.
  struct GlueCospan {
    Functor          q;
    std::vector<int> W;
    std::vector<int> W_u;
  };
  bool check_good(GluedObject const& x, GlueCospan const& G);
  // Counit k_! k^* x -> x along the fibre inclusion at c is cartesian.
  bool check_nice(Functor const& q, GluedObject const& x, int c);

  // Glued pushout and pullback of a map of downs.
  struct GluedPushout {
    GluedObject value;
    GluedMap    inl, inr;
  };
  GluedPushout glued_pushout(Functor const& q, GluedObject const& x, GluedObject const& y,
                             GluedObject const& z, GluedMap const& f, GluedMap const& g);
  // The cartesian map into y over a map down -> y.down.
  std::pair<GluedObject, GluedMap> glued_pullback(Functor const& q, GluedObject const& y,
                                                  Presheaf const& down, PresheafMap const& d);

  struct BigListReport {
    bool                       ok = true;
    std::vector<std::string>   lines;    // one per property
    std::optional<std::string> failure;  // first failing instance
  };
  // Closure properties (a)-(g) of cartesian maps on seeded gluing instances.
  BigListReport big_list_property_suite(Functor const& q, std::uint64_t seed, int instances);

}  // namespace fincat
