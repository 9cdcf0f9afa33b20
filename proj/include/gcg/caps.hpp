#pragma once

#include <cstdint>
#include <string>

#include "gcg/cayley.hpp"
#include "gcg/symmetry.hpp"

namespace gcg {

// Every limit the library and CLI enforce, in one place.
struct Caps {
  std::string profile = "desk";
  int max_group_order = 256;
  SearchLimits search;
  std::uint64_t aut_enumeration_cap = 100'000;
  std::int64_t subgroup_budget = 1'000'000;
  int bit_budget = 24;
  // Instances a single sweep may check before it reports the rest as skipped.
  std::uint64_t sweep_budget = 2'000'000;

  CayleyCaps cayley() const { return CayleyCaps{search, aut_enumeration_cap, subgroup_budget}; }
};

// "desk" or "extended"; throws InvalidInput otherwise.
Caps caps_for_profile(const std::string& name);
// Reads GCG_CAPS_PROFILE, defaulting to desk.
Caps caps_from_environment();

}  // namespace gcg
