// Left and right fibrations, cofinality, cocartesian fibrations with a cleavage,
// (un)straightening against finite pseudofunctors, the Conduché condition,
// localisation of fibrations and the descent constructions.
//
// A functor p : E -> B is handled directly; a MarkedFibration caches its
// cocartesian arrows, fibres, cleavage and transports.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fincat/cat_core.hpp"
#include "fincat/generate.hpp"
#include "fincat/presentation.hpp"

namespace fincat {

  ////////////////////////////////////////////////////////////////////////
  // Discrete fibrations and cofinality
  ////////////////////////////////////////////////////////////////////////

  bool is_left_fibration(Functor const& p);
  bool is_right_fibration(Functor const& p);

  // pi0(F | d) is a singleton for every d.
  bool is_left_cofinal(Functor const& F);

  // F = fibration . cofinal, where the middle category is the category of
  // elements of d |-> pi0(F | d).
  struct CofinalFactorization {
    Cat                              middle;
    Functor                          cofinal;    // dom F -> middle
    Functor                          fibration;  // middle -> cod F
    std::vector<std::pair<int, int>> objects;    // (d, component)
  };
  CofinalFactorization cofinal_factorization(Functor const& F);

  ////////////////////////////////////////////////////////////////////////
  // Cocartesian arrows
  ////////////////////////////////////////////////////////////////////////

  // Precomposition with a, E(tgt a, z) -> E(src a, z) x_{B(p src a, p z)} B(p tgt a, p z),
  // is a bijection for every z.
  bool is_cocartesian(Functor const& p, int a);
  // Dual: postcomposition E(z, src a) -> E(z, tgt a) x B(p z, p src a) is a bijection.
  bool is_cartesian(Functor const& p, int a);
  std::vector<int> cocartesian_arrows(Functor const& p);
  std::vector<int> cartesian_arrows(Functor const& p);
  // Cocartesian (resp. cartesian) arrows of E lying over f.
  std::vector<int> cocartesian_lifts_of(Functor const& p, int f);
  std::vector<int> cartesian_lifts_of(Functor const& p, int f);

  // Fibres of p with ambient-to-fibre index maps.
  struct FibreFamily {
    Cat                           base;
    std::vector<Sub>              fibre;       // per object of base
    std::vector<int>              fibre_obj;   // object of E -> index in its fibre
    std::vector<int>              fibre_arr;   // vertical arrow of E -> index in its fibre, else -1
  };
  FibreFamily fibre_family(Functor const& p);

  struct MarkedFibration {
    Functor          p;
    std::vector<int> cocartesian;  // sorted arrows of E
    std::vector<char> marked;      // per arrow of E
    FibreFamily      fibres;
    // cleavage[e] maps each arrow f out of p(e) to its chosen lift.
    std::vector<std::map<int, int>> cleavage;
    std::vector<Functor>            transport;  // per arrow of B, between fibre categories

    Cat const& total() const {
      return p.dom;
    }
    Cat const& base() const {
      return p.cod;
    }
    int lift(int e, int f) const {
      return cleavage[e].at(f);
    }
  };

  struct FibrationVerdict {
    std::optional<MarkedFibration> fibration;
    // First object and base arrow without a cocartesian lift.
    std::optional<std::pair<int, int>> witness;
    bool ok() const {
      return fibration.has_value();
    }
  };
  // Marks cocartesian arrows and builds the cleavage: identities lift to
  // identities, every other arrow to its least-indexed cocartesian lift.
  FibrationVerdict is_cocartesian_fibration(Functor const& p);
  MarkedFibration  mark_fibration(Functor const& p);  // throws law_error with the witness

  // Unique vertical chi with chi . lift(e, f) = lift(e', f) . v for v : e -> e' over src f.
  int transport_arrow(MarkedFibration const& mf, int f, int v);

  std::optional<std::string> check_marked_fibration(MarkedFibration const& mf);

  ////////////////////////////////////////////////////////////////////////
  // Pseudofunctors and (un)straightening
  ////////////////////////////////////////////////////////////////////////

  // A normalized pseudofunctor B -> Cat: action[id] is the identity and
  // comparison (g, f) is an isomorphism F(g) F(f) => F(g f).  Comparisons are
  // stored for composable pairs of non-identity arrows; missing ones are identities.
  struct Pseudofunctor {
    Cat                                       base;
    std::vector<Cat>                          fibre;
    std::vector<Functor>                      action;
    std::map<std::pair<int, int>, NatTrans>   comparison;

    NatTrans mu(int g, int f) const;  // identity when not stored
  };

  std::optional<std::string> check_pseudofunctor(Pseudofunctor const& F);
  // A strict functor B -> Cat: identity comparisons.
  Pseudofunctor strict_pseudofunctor(Cat const& base, std::vector<Cat> fibre,
                                     std::vector<Functor> action);
  Pseudofunctor constant_pseudofunctor(Cat const& base, Cat const& D);

  // Objects (c, x) in order of c then x; arrows (g, phi : F(g) x -> x').
  // Throws law_error on a pseudofunctor law violation.
  MarkedFibration unstraighten(Pseudofunctor const& F);
  Pseudofunctor   straighten_finite(MarkedFibration const& mf);

  // unstraighten(straighten_finite(mf)) -> E, (g, phi) |-> incl(phi) . lift(x, g).
  Functor straightening_comparison(MarkedFibration const& mf);
  // Componentwise comparison: for every c an isomorphism F(c) ~ G(c) under
  // which the actions are naturally isomorphic.
  bool pseudofunctors_isomorphic(Pseudofunctor const& F, Pseudofunctor const& G);

  ////////////////////////////////////////////////////////////////////////
  // Conduché condition and inverting W
  ////////////////////////////////////////////////////////////////////////

  bool is_conduche(Functor const& p);
  bool inverts_W(MarkedFibration const& mf, std::vector<int> const& W);
  bool conduche_inverts_W(Functor const& p, std::vector<int> const& W);
  // Requires transport(f) to be an equivalence; throws precondition_error otherwise.
  bool invertible_transport_check(MarkedFibration const& mf, int f);

  // Functors over the base between the totals; equivalence search over the base.
  std::size_t            count_cocartesian_functors(MarkedFibration const& a,
                                                    MarkedFibration const& b);
  std::optional<Functor> find_equivalence_over(MarkedFibration const& a, MarkedFibration const& b);

  // Square top : P -> R, left : P -> Q, right : R -> S, bottom : Q -> S is a
  // pullback of categories up to isomorphism.
  bool is_pullback_square(Functor const& top, Functor const& left, Functor const& right,
                          Functor const& bottom);

  ////////////////////////////////////////////////////////////////////////
  // Localisation of fibrations
  ////////////////////////////////////////////////////////////////////////

  struct FibrationLocalisation {
    Status                     status = Status::Truncated;
    std::string                note;
    MarkedFibration            input;
    std::vector<int>           W;
    std::vector<int>           W_u;  // cocartesian lifts of W
    LocalisationResult         total, base;
    Functor                    i_total, i_base;  // E -> E', C -> C'
    Functor                    q;                // E' -> C'
    std::optional<MarkedFibration> result;       // set when q is a cocartesian fibration
    bool                       square_is_pullback = false;
    std::vector<std::string>   witnesses;

    bool verified() const {
      return status == Status::Exact && result && square_is_pullback;
    }
  };
  // Throws precondition_error unless inverts_W(mf, W).
  FibrationLocalisation localize_fibration(MarkedFibration const& mf, std::vector<int> const& W,
                                           int max_word_len = default_max_word_len);

  // E(x, y) -> E'(x, y) over C(qx, qy) -> C'(qx, qy) is a pullback of sets.
  bool mapping_square_a(FibrationLocalisation const& L, int x, int y);
  // pi0(x | E_c | i y) -> E'(x, y) over C(qx, c) x C'(c, qy) -> C'(qx, qy).
  bool mapping_square_b(FibrationLocalisation const& L, int x, int y, int c);
  bool mapping_square_a(MarkedFibration const& mf, std::vector<int> const& W, int x, int y);
  bool mapping_square_b(MarkedFibration const& mf, std::vector<int> const& W, int x, int y,
                        int c);

  struct CheckLine {
    std::string name;
    bool        ok = true;
    std::string detail;
  };

  struct DescentReport {
    Status                 status = Status::Truncated;
    std::vector<CheckLine> checks;
    bool ok() const;
  };
  // (i) the pullback of the localized fibration inverts W; (ii) it recovers mf;
  // (iii) cocartesian functors mf -> mf over C biject with those over C[W^-1].
  DescentReport descent_localisation_check(MarkedFibration const& mf, std::vector<int> const& W,
                                           int max_word_len = default_max_word_len);

  // Cocartesian functors between the two localized fibrations restrict
  // bijectively to cocartesian functors between the inputs.  Both must be
  // verified and share the base localisation.
  bool localized_functors_biject(FibrationLocalisation const& a, FibrationLocalisation const& b);

  // Pullback of a fibration along F : C -> B.
  MarkedFibration base_change(Functor const& F, MarkedFibration const& mf);

  ////////////////////////////////////////////////////////////////////////
  // Descent constructions
  ////////////////////////////////////////////////////////////////////////

  // phi : f^* Y -> g^* Z over A, where f^* Y = pullback(f, p).cat and so on.
  struct CocommaSpan {
    MarkedFibration p;  // over B
    MarkedFibration q;  // over C
    Functor         f;  // A -> B
    Functor         g;  // A -> C
    Functor         phi;
  };

  struct CocommaFibration {
    Status                         status = Status::Truncated;
    std::string                    note;
    CocommaResult                  total;  // cocomma of Y <- f^*Y -> Z
    CocommaResult                  base;   // cocomma of B <- A -> C
    Functor                        r;
    std::optional<MarkedFibration> result;
    bool                           recovers_p = false, recovers_q = false;

    bool verified() const {
      return status == Status::Exact && result && recovers_p && recovers_q;
    }
  };
  CocommaFibration cocomma_fibration(CocommaSpan const& s,
                                     int max_word_len = default_max_word_len);
  // Throws precondition_error unless phi is a cocartesian functor over A.
  void check_cocomma_span(CocommaSpan const& s);

  // Stages p_n : E_n -> C_n with base links C_n -> C_{n+1} and total links
  // E_n -> E_{n+1} over them.
  struct SequentialDescent {
    Status                         status = Status::Truncated;
    int                            stage = -1;
    std::optional<MarkedFibration> result;
    std::vector<bool>              recovers;  // per stage, stage n is the pullback
  };
  SequentialDescent sequential_descent_glue(std::vector<MarkedFibration> const& stages,
                                            std::vector<Functor> const&         base_links,
                                            std::vector<Functor> const&         total_links,
                                            int max_stages = default_max_stages);

  // A pseudofunctor over a groupoid glued into its total category; throws
  // precondition_error when the base is not a groupoid.
  MarkedFibration groupoid_descent(Pseudofunctor const& F);

  ////////////////////////////////////////////////////////////////////////
  // Fixtures and generators
  ////////////////////////////////////////////////////////////////////////

  // Full subcategory of [3] x (section-retraction pair) on (0,y), (1,x), (1,y),
  // (2,y), (3,x), (3,y), projected to [3].  Fibres alternate between the
  // walking idempotent and the section-retraction pair.
  Functor delta3_conduche();
  // Arrows 0<2 and 1<3 of [3].
  std::vector<int> delta3_W();

  struct OpfibrationParams {
    FinCatParams base{3, 2, 3, 12};
    int          max_fibre_objects = 2;
    int          max_fibre_arrows  = 4;
    // Number of base arrows forced to act by automorphisms.
    int          invertible_arrows = 0;
    // Force every non-identity base arrow to act by an automorphism.
    bool         all_invertible = false;
    // Fibres are drawn from here when non-empty, otherwise from fibre_pool.
    std::vector<Cat> fibres;
  };

  struct GeneratedOpfibration {
    Pseudofunctor    functor;
    MarkedFibration  fibration;
    std::vector<int> W;  // arrows whose transport is invertible by construction
  };
  // Unstraightening of a random strict functor into small categories.
  GeneratedOpfibration random_opfibration(std::uint64_t seed, OpfibrationParams const& p = {});
  GeneratedOpfibration random_opfibration(Rng& rng, OpfibrationParams const& p = {});
  // Small fibre categories used by the generator.
  std::vector<Cat> fibre_pool(int max_objects, int max_arrows);

}  // namespace fincat
