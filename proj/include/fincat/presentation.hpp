// Finitely presented categories: generators and relations, bounded
// Knuth-Bendix saturation, and the colimits built from presentations.
//
// Words are paths written in diagrammatic order: gens[0] is applied first.
// The empty word at an object is its identity.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fincat/cat_core.hpp"

namespace fincat {

  constexpr int default_max_word_len = 16;
  constexpr int default_max_stages   = 12;

  struct Generator {
    std::string label;
    int         src;
    int         tgt;
  };

  struct Word {
    int              src = 0;
    std::vector<int> gens;

    bool operator==(Word const& o) const {
      return src == o.src && gens == o.gens;
    }
    bool operator<(Word const& o) const;  // shortlex, then source object
  };

  struct Relation {
    Word lhs;
    Word rhs;
  };

  struct Presentation {
    std::vector<std::string> objects;
    std::vector<Generator>   generators;
    std::vector<Relation>    relations;

    int add_object(std::string label);
    int add_generator(std::string label, int src, int tgt);
    void add_relation(Word lhs, Word rhs);

    int  tgt(Word const& w) const;  // -1 if w is not a path
    Word identity(int x) const {
      return Word{x, {}};
    }
    Word single(int g) const {
      return Word{generators[g].src, {g}};
    }
    Word concat(Word const& a, Word const& b) const;  // a then b

    // Empty when every relation is a pair of parallel paths.
    std::optional<std::string> validate() const;
  };

  // Image of each object and generator of a source presentation.
  struct PresentedMap {
    std::vector<int>  obj;
    std::vector<Word> gen;

    Word apply(Word const& w, Presentation const& target) const;
  };

  struct Rule {
    Word lhs;
    Word rhs;
  };

  // Shortlex rewriting system.  Leftmost-innermost reduction.
  class RewriteSystem {
   public:
    RewriteSystem() = default;
    explicit RewriteSystem(std::size_t num_generators);

    Word reduce(Word const& w) const;
    bool is_reducible(std::vector<int> const& gens) const;
    bool suffix_reducible(std::vector<int> const& gens) const;
    void add(Rule r);  // caller keeps the system interreduced
    std::vector<Rule> const& rules() const {
      return _rules;
    }

   private:
    std::vector<Rule>             _rules;
    std::vector<std::vector<int>> _by_last;  // generator -> rules whose lhs ends with it
  };

  enum class Status { Exact, Truncated };
  char const* to_string(Status s);

  struct SaturationResult {
    Status       status = Status::Truncated;
    Presentation pres;
    int          bound = 0;
    bool         confluent = false;  // completion finished without dropping rules
    std::string  note;               // why the result is truncated, if it is

    // Normal forms of length <= bound.  On Exact results normal_forms[i] is
    // arrow i of cat.
    std::vector<Word>        normal_forms;
    std::map<Word, int>      index;
    std::vector<std::size_t> growth;  // growth[L] = normal forms of length <= L
    RewriteSystem            rules;
    Cat                      cat;  // Exact only

    bool exact() const {
      return status == Status::Exact;
    }
    Word normal_form(Word const& w) const {
      return rules.reduce(w);
    }
    // Arrow index of a word, or -1 when its normal form lies beyond the bound.
    int arrow_of(Word const& w) const;
    // Partial composition, defined when the composite's normal form is in range.
    int compose(int g, int f) const;
    int src(int a) const {
      return normal_forms[a].src;
    }
    int tgt(int a) const {
      return pres.tgt(normal_forms[a]);
    }
    // Normal forms from x to y found within the bound; exact on Exact results
    // and a lower bound on confluent truncated ones.
    std::size_t hom_count(int x, int y) const;
    std::vector<int> hom(int x, int y) const;
  };

  SaturationResult saturate(Presentation const& P, int max_word_len = default_max_word_len);

  // Presentation whose generators are the non-identity arrows of C and whose
  // relations are its composition table.
  Presentation tautological(Cat const& C);
  Word         arrow_word(Cat const& C, int a);  // word of arrow a in tautological(C)
  PresentedMap functor_map(Functor const& F);    // tautological(dom) -> tautological(cod)

  // Functor from dom into an Exact result, sending generators along m.
  Functor realize(Cat const& dom, SaturationResult const& R, PresentedMap const& m);
  // Same on arrows of a FinCat source whose tautological map is m; -1 beyond the bound.
  std::vector<int> realize_partial(Cat const& dom, SaturationResult const& R,
                                   PresentedMap const& m);

  // Functor out of an Exact saturation into D sending object x to obj[x] and
  // generator g to arrow gen[g].  Throws law_error if a normal form does not compose.
  Functor evaluate(SaturationResult const& R, Cat const& D, std::vector<int> const& obj,
                   std::vector<int> const& gen);
  // Functor between Exact saturations induced by a map of their presentations.
  Functor induced(SaturationResult const& R, SaturationResult const& S, PresentedMap const& m);
  // Generator of tautological(C) for each arrow of C, -1 for identities.
  std::vector<int> generator_of(Cat const& C);

  ////////////////////////////////////////////////////////////////////////
  // Colimits at presentation level
  ////////////////////////////////////////////////////////////////////////

  struct PresentedPushout {
    Presentation pres;
    PresentedMap inl, inr;
  };
  PresentedPushout pushout_presentation(Presentation const& A, Presentation const& B,
                                        Presentation const& C, PresentedMap const& f,
                                        PresentedMap const& g);

  struct PresentedCocomma {
    Presentation     pres;
    PresentedMap     k, l;
    std::vector<int> alpha;  // generator alpha_a : f(a) -> g(a), per object a of A
  };
  PresentedCocomma cocomma_presentation(Presentation const& A, Presentation const& B,
                                        Presentation const& C, PresentedMap const& f,
                                        PresentedMap const& g);

  struct PresentedLocalisation {
    Presentation     pres;
    PresentedMap     i;
    std::vector<int> inverse;  // generator inverting W[j]
  };
  PresentedLocalisation localize_presentation(Presentation const& P, std::vector<Word> const& W);

  ////////////////////////////////////////////////////////////////////////
  // Colimits of finite categories
  ////////////////////////////////////////////////////////////////////////

  struct PushoutResult {
    SaturationResult sat;
    PresentedMap     inl, inr;  // from tautological(B), tautological(C)
  };
  PushoutResult pushout(Functor const& f, Functor const& g,
                        int max_word_len = default_max_word_len);

  struct CocommaResult {
    SaturationResult sat;
    PresentedMap     k, l;
    std::vector<int> alpha;  // generator per object of A
  };
  CocommaResult cocomma(Functor const& f, Functor const& g,
                        int max_word_len = default_max_word_len);

  struct LocalisationSpec {
    Cat              base;
    std::vector<int> W;  // arrows of base
  };

  struct LocalisationResult {
    SaturationResult sat;
    PresentedMap     i;
    std::vector<int> inverse;  // inverse generator per entry of W
  };
  LocalisationResult localize(LocalisationSpec const& spec,
                              int max_word_len = default_max_word_len);

  // Checks on Exact localisations: W is inverted, i is surjective on objects,
  // every normal form is a zigzag of C-arrows and formal inverses.  Returns
  // the failing property, if any.
  std::optional<std::string> check_localisation(LocalisationSpec const& spec,
                                                LocalisationResult const& L);
  // Arrows of the base sent to isomorphisms.
  std::vector<int> inverted_arrows(LocalisationSpec const& spec, LocalisationResult const& L);

  struct SequentialColimit {
    Status                   status = Status::Truncated;
    Cat                      colimit;
    int                      stage = -1;  // stabilization stage when Exact
    std::vector<Functor>     cocone;      // stage i -> colimit
    std::vector<std::size_t> growth;      // arrows per stage
  };
  // links[i] : stages[i] -> stages[i+1].  Exact when every link from some stage
  // n on (at least one) is an isomorphism.
  SequentialColimit sequential_colimit(std::vector<Cat> const&     stages,
                                       std::vector<Functor> const& links,
                                       int                         max_stages = default_max_stages);

}  // namespace fincat
