// Directed joins and full-image towers, cocartesian functor categories, the
// virtual join of fibrations, directed univalence, univalent completion and
// straightening against a universe.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fincat/cat_core.hpp"
#include "fincat/fibration.hpp"
#include "fincat/presentation.hpp"

namespace fincat {

  ////////////////////////////////////////////////////////////////////////
  // Directed join and the tower
  ////////////////////////////////////////////////////////////////////////

  struct DirectedJoin {
    Status           status = Status::Truncated;
    std::string      note;
    Comma            comma;        // f0 | f1
    SaturationResult sat;          // the join, a localized cocomma
    PresentedMap     i0, i1;       // from tautological(A0), tautological(A1)
    std::vector<int> alpha;        // generator per object of the comma
    std::vector<int> inverted;     // comma objects whose 2-cell is inverted
    Functor          to_base;      // join -> B, Exact only
    Functor          I0, I1;       // realized inclusions, Exact only
  };
  DirectedJoin directed_join(Functor const& f0, Functor const& f1,
                             int max_word_len = default_max_word_len);

  struct JoinStage {
    int     n = 0;
    Cat     X;
    Functor g;     // X_n -> B
    Functor link;  // X_{n-1} -> X_n, empty at stage 0
    bool    link_is_equivalence = false;
  };

  struct JoinTower {
    Status                 status = Status::Truncated;
    std::string            note;
    std::vector<JoinStage> stages;
    int                    stable_stage = -1;  // X_n with the next two links equivalences
    bool                   fully_faithful = false;
    bool                   image_matches  = false;
    std::vector<std::size_t> growth;  // arrows per stage

    bool verified() const {
      return status == Status::Exact && fully_faithful && image_matches;
    }
  };
  // Throws precondition_error unless every g0 x is isomorphic to some f a.
  JoinTower join_tower(Functor const& f, Functor const& g0, int max_stages = 6,
                       int max_word_len = default_max_word_len);

  ////////////////////////////////////////////////////////////////////////
  // Cocartesian functors and the virtual join
  ////////////////////////////////////////////////////////////////////////

  struct FunCocart {
    struct Obj {
      int     c0, c1;
      Functor a;  // fib(c0) -> fib(c1)
    };
    struct Arr {
      int      g, f;
      NatTrans beta;  // f_! a => b g_!, invertible
    };
    Cat              cat;
    Functor          u0, u1;
    std::vector<Obj> objects;
    std::vector<Arr> arrows;
  };
  // Throws precondition_error when the base of mf0 is not a groupoid.
  FunCocart fun_cocart(MarkedFibration const& mf0, MarkedFibration const& mf1);

  struct VirtualJoin {
    Status                         status = Status::Truncated;
    std::string                    note;
    FunCocart                      fun;
    std::vector<int>               W;  // inverted 2-cells, arrows of the cocomma base
    CocommaFibration               cocomma;
    std::optional<FibrationLocalisation> localisation;
    std::optional<MarkedFibration> result;
    Functor                        i0, i1;  // C0 -> base, C1 -> base
    bool                           recovers0 = false, recovers1 = false;

    bool verified() const {
      return status == Status::Exact && result && recovers0 && recovers1;
    }
  };
  VirtualJoin virtual_join(MarkedFibration const& mf0, MarkedFibration const& mf1,
                           int max_word_len = default_max_word_len);

  ////////////////////////////////////////////////////////////////////////
  // Universes
  ////////////////////////////////////////////////////////////////////////

  // Functors fib(x) -> fib(y) up to natural isomorphism.
  std::vector<Functor> functor_classes(Cat const& X, Cat const& Y);
  // B(x, y) -> functor classes, f |-> transport(f), is a bijection for all x, y.
  bool is_directed_univalent(MarkedFibration const& mf);
  // Some fibre is equivalent to C; returns the least such object.
  std::optional<int> classifies(MarkedFibration const& mf, Cat const& C);

  // Universe built directly: one object per listed category (pairwise
  // inequivalent), arrows the functor classes, fibres the categories.
  MarkedFibration functor_class_universe(std::vector<Cat> const& kinds);

  struct UniverseStage {
    int             n = 0;
    MarkedFibration q;
    Functor         link;  // X_{n-1} -> X_n
    bool            link_is_equivalence = false;
    bool            recovers_previous   = false;
  };

  struct UniverseTower {
    Status                     status = Status::Truncated;
    std::string                note;
    std::vector<UniverseStage> stages;
    int                        stable_stage = -1;
    bool                       univalent = false;
    bool                       classifies_same = false;
    std::optional<MarkedFibration> universe;
    std::vector<std::size_t>   growth;  // base arrows per stage

    bool verified() const {
      return status == Status::Exact && univalent && classifies_same;
    }
  };
  // p over a groupoid; throws precondition_error when a fibre of q0 is not
  // classified by p.
  UniverseTower univalent_completion(MarkedFibration const& p, MarkedFibration const& q0,
                                     int max_stages = 6,
                                     int max_word_len = default_max_word_len);

  struct Straightening {
    Functor                f;                    // C -> B
    std::vector<Functor>   fibre_equivalences;  // fib_q(c) -> fib_U(f c)
    std::optional<Functor> equivalence;         // f^* U -> q over C
  };
  // Throws precondition_error unless the universe is directed univalent and
  // classifies every fibre of q.
  Straightening straighten_against(MarkedFibration const& universe, MarkedFibration const& q);

  // Natural transformations f => g against cocartesian functors f^* U -> g^* U.
  bool straightening_uniqueness_check(MarkedFibration const& universe, Functor const& f,
                                      Functor const& g);

}  // namespace fincat
