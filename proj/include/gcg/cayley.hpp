#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcg/element_set.hpp"
#include "gcg/graph.hpp"
#include "gcg/symmetry.hpp"

namespace gcg {

struct VertexTransitivity {
  bool transitive = true;
  std::vector<std::vector<int>> orbits;
};

// The edgeless graph and K1 count as vertex-transitive.
VertexTransitivity is_vertex_transitive(const Graph& g, const SearchLimits& limits = {});

struct CayleyCaps {
  SearchLimits search;
  std::uint64_t aut_enumeration_cap = 100'000;  // largest |Aut| the subgroup search will list
  std::int64_t subgroup_budget = 1'000'000;     // closures tried by the subgroup search
};

// X is isomorphic to Cay(group, connection_set) via map.
struct CayleyWitness {
  GroupPtr group;
  ElementSet connection_set;
  IsomorphismWitness map;
};

bool verify_cayley_witness(const Graph& x, const CayleyWitness& w);

enum class CayleyStatus { cayley, not_cayley, unknown };
enum class Refutation { none, not_vertex_transitive, regular_subgroup_search_exhausted };

struct CayleyVerdict {
  CayleyStatus status = CayleyStatus::unknown;
  Refutation reason = Refutation::none;
  std::optional<CayleyWitness> witness;         // set iff cayley
  std::optional<std::pair<int, int>> separated;  // two vertices in different Aut-orbits
  std::string note;                              // why unknown, if it is
  BigInt aut_order = 0;                          // 0 when not computed
  CayleyCaps caps;
};

// 1. not vertex-transitive -> not_cayley;
// 2. complete or edgeless  -> cayley on Z_n;
// 3. |Aut| <= caps.aut_enumeration_cap -> backtracking search for a regular
//    subgroup of Aut(X) built from fixed-point-free elements;
// 4. otherwise unknown. Never throws on caps; they turn into unknown.
CayleyVerdict detect_cayley(const Graph& g, const CayleyCaps& caps = {});

enum class Stability { stable, unstable, not_applicable };

struct StabilityReport {
  Stability status = Stability::not_applicable;
  BigInt aut_x = 0;
  BigInt aut_cover = 0;  // |Aut(B(X))|
};

// not_applicable for bipartite or disconnected X; otherwise compares
// |Aut(B(X))| against 2 |Aut(X)|. Throws CapExceeded when 2n exceeds the
// search cap.
StabilityReport stability_check(const Graph& g, const SearchLimits& limits = {});

const char* to_string(CayleyStatus s);
const char* to_string(Refutation r);
const char* to_string(Stability s);

}  // namespace gcg
