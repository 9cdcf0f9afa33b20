#include "gcg/caps.hpp"

#include <cstdlib>

#include "gcg/error.hpp"

namespace gcg {

Caps caps_for_profile(const std::string& name) {
  Caps c;
  if (name == "desk") return c;
  if (name != "extended") throw InvalidInput("unknown caps profile '" + name + "' (expected desk or extended)");
  c.profile = name;
  c.search.max_vertices = 512;
  c.search.node_budget = 50'000'000;
  c.aut_enumeration_cap = 2'000'000;
  c.subgroup_budget = 50'000'000;
  c.bit_budget = 30;
  c.sweep_budget = 100'000'000;
  return c;
}

Caps caps_from_environment() {
  const char* env = std::getenv("GCG_CAPS_PROFILE");
  return caps_for_profile(env && *env ? env : "desk");
}

}  // namespace gcg
