// Deterministic seeded instance generators.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fincat/cat_core.hpp"

namespace fincat {

  using Rng = std::mt19937_64;

  struct FinCatParams {
    int max_objects    = 3;
    int max_set_size   = 3;
    int max_generators = 4;
    int max_arrows     = 40;
  };

  // A subcategory of finite sets generated by random maps between random sets.
  Cat random_fincat(std::uint64_t seed, FinCatParams const& p = {});
  Cat random_fincat(Rng& rng, FinCatParams const& p = {});

  // A random functor C -> D, or nullopt if none was found.
  std::optional<Functor> random_functor(Rng& rng, Cat const& C, Cat const& D);

  // Every category with at most the given numbers of objects and arrows, up to
  // isomorphism, in a deterministic order.
  std::vector<Cat> enumerate_small_categories(int max_objects, int max_arrows);

  int uniform(Rng& rng, int lo, int hi);  // inclusive

}  // namespace fincat
