// The .fincat workspace language.
//
//   category I { objects a b; arrows f: a -> b }
//   category E { objects x; arrows e: x -> x; relations e.e = e }
//   category T = poset(2)
//   presentation N { objects x; arrows s: x -> x }
//   functor F : I -> E { obj a -> x, b -> x; arr f -> e }
//   functor K : I -> I { obj a -> a, b -> b; arr f -> f }
//   fibration P = K { marked f }
//   functor H : E -> E { obj x -> x; arr e -> e }
//   fibration Q over I { fibre a = E; fibre b = E; action f = H }
//   suite nightly { run core-laws conduche; seed 3; max-word-len 12 }
//
// Statements end at ';' or a newline, '#' starts a comment, and names may be
// quoted.  Words compose applicatively: g.f is f followed by g, id(x) is an
// identity.  A marked list names the non-identity cocartesian arrows.
// Categories are saturated on parse; a truncated saturation is an error
// located at the block.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fincat/cat_core.hpp"
#include "fincat/fibration.hpp"
#include "fincat/presentation.hpp"

namespace fincat {

  class parse_error : public std::runtime_error {
   public:
    parse_error(std::string file, int line, int column, std::string const& message);
    std::string const& file() const {
      return _file;
    }
    int line() const {
      return _line;
    }
    int column() const {
      return _column;
    }
    std::string const& message() const {
      return _message;
    }

   private:
    std::string _file;
    int         _line;
    int         _column;
    std::string _message;
  };

  // A category together with the generators it was declared with.  Every
  // arrow is a composite of generators; builtin and emitted categories use
  // their non-identity arrows as generators.
  struct NamedCat {
    Cat                           cat;
    std::vector<std::string>      generators;
    std::vector<int>              gen_arrow;   // generator -> arrow of cat
    std::vector<std::vector<int>> arrow_word;  // arrow -> generators, first applied first
    std::optional<Presentation>   presentation;

    // A generator or arrow label, -1 if unknown.
    int find_arrow(std::string const& name) const;
  };
  NamedCat named(Cat const& C);

  struct NamedFunctor {
    Functor     F;
    std::string dom, cod;  // workspace names
  };

  struct NamedFibration {
    MarkedFibration  mf;
    std::string      total, base;  // workspace names, empty if not declared
    std::string      projection;   // functor name for the `= F` form
    std::vector<std::string> fibres;   // `over` form: category name per base object
    std::vector<std::string> actions;  // `over` form: functor name per base generator
    std::vector<int> W;            // arrows of the base to invert
  };

  struct SuiteRequest {
    std::vector<std::string> suites;
    std::uint64_t            seed = 0;
    int                      max_word_len = default_max_word_len;
    int                      max_stages   = default_max_stages;
  };

  struct Workspace {
    enum class Kind { Category, Presentation, Functor, Fibration, Suite };
    struct Entry {
      Kind        kind;
      std::string name;
    };
    std::vector<Entry>                     order;
    std::map<std::string, NamedCat>        categories;
    std::map<std::string, Presentation>    presentations;
    std::map<std::string, NamedFunctor>    functors;
    std::map<std::string, NamedFibration>  fibrations;
    std::map<std::string, SuiteRequest>    suites;

    NamedCat const& category(std::string const& name) const;  // throws precondition_error
  };

  struct ParseOptions {
    std::string file         = "<input>";
    int         max_word_len = default_max_word_len;
  };

  Workspace parse_workspace(std::string const& text, ParseOptions const& opt = {});
  // Reads the file and parses it with the path as file name.
  Workspace parse(std::string const& path, int max_word_len = default_max_word_len);

  // Builtin categories: terminal, empty, interval, walking_iso,
  // walking_idempotent, section_retraction, parallel_pair, discrete(n),
  // poset(n), cyclic(n).
  std::optional<Cat> builtin_category(std::string const& name, std::optional<int> arg);

}  // namespace fincat
