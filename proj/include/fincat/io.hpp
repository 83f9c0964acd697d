// Serialization: .fincat text, JSON and DOT.  Seeded instance generation
// for the command line.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "fincat/cat_core.hpp"
#include "fincat/fibration.hpp"
#include "fincat/join.hpp"
#include "fincat/workspace.hpp"

namespace fincat {

  // A name as it must appear in .fincat text, quoted when needed.
  std::string dsl_name(std::string const& s);

  // Every non-identity arrow is a generator and every composite of two
  // non-identity arrows a relation, so parsing recovers the table.
  std::string emit_dsl(std::string const& name, Cat const& C);
  std::string emit_dsl(std::string const& name, Functor const& F, std::string const& dom,
                       std::string const& cod);
  // Total category, base, projection and the fibration block with its marked
  // arrows and W.  Blocks are named name.total, name.base and name.p.
  std::string emit_dsl(std::string const& name, MarkedFibration const& mf,
                       std::vector<int> const& W = {});
  std::string emit_dsl(Workspace const& ws);

  // Labels only: object labels, arrows with endpoint labels and the
  // composition table, each sorted.  Equal for categories that differ only
  // in the order of their objects and arrows.
  std::string canonical_form(Cat const& C);

  nlohmann::json to_json(Cat const& C);
  nlohmann::json to_json(Functor const& F);
  nlohmann::json to_json(MarkedFibration const& mf);
  nlohmann::json to_json(JoinTower const& T);
  nlohmann::json to_json(UniverseTower const& T);
  nlohmann::json to_json(SaturationResult const& R);  // status and growth
  // Throws precondition_error on malformed input and law_error on law violations.
  Cat cat_from_json(nlohmann::json const& j);

  std::string emit_json(Cat const& C);
  std::string emit_json(Functor const& F);
  std::string emit_json(MarkedFibration const& mf);

  // Underlying quiver: identities omitted.
  std::string emit_dot(std::string const& name, Cat const& C);
  // Total category clustered by fibre, marked arrows bold.
  std::string emit_dot(std::string const& name, MarkedFibration const& mf);

  enum class GenerateKind { FinCat, Opfibration, LocalisationInstance };
  struct GenerateParams {
    int max_objects       = 3;
    int max_arrows        = 12;
    int max_fibre_objects = 2;
    int max_fibre_arrows  = 4;
  };
  // .fincat text for a seeded instance.  Opfibrations come from random strict
  // functors into small categories; localisation instances also list W.
  std::string generate(GenerateKind kind, std::uint64_t seed, GenerateParams const& p = {});
  GenerateKind generate_kind(std::string const& name);  // throws precondition_error

}  // namespace fincat
