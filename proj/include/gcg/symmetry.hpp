#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gcg/graph.hpp"

namespace gcg {

using BigInt = boost::multiprecision::cpp_int;
using Permutation = std::vector<int>;

struct SearchLimits {
  int max_vertices = 128;
  std::int64_t node_budget = 2'000'000;
};

// Aut(X) as a generating set plus the data of one stabilizer chain.
struct PermGroupDescription {
  int degree = 0;
  std::vector<Permutation> generators;
  BigInt order = 1;
  // Base points along the first search path and the size of each basic
  // orbit; order is the product of basic_orbit_sizes.
  std::vector<int> base;
  std::vector<int> basic_orbit_sizes;
  // Vertex orbits, each sorted, ordered by smallest vertex.
  std::vector<std::vector<int>> orbits;
  std::vector<int> orbit_of;  // vertex -> index into orbits
  std::int64_t nodes = 0;
};

// Generators of Aut(X) by individualization-refinement over equitable
// partitions (target cell: first smallest non-singleton cell). The order is
// exact. Throws CapExceeded above limits.max_vertices and BudgetExceeded when
// the search exceeds limits.node_budget; no partial answers.
PermGroupDescription automorphism_group(const Graph& g, const SearchLimits& limits = {});

struct CanonicalForm {
  Permutation labeling;     // vertex v gets canonical label labeling[v]
  std::string fingerprint;  // graph6 of relabel(g, labeling)
};

CanonicalForm canonical_form(const Graph& g, const SearchLimits& limits = {});

struct IsomorphismWitness {
  std::string source;
  std::string target;
  Permutation map;  // source vertex -> target vertex
};

// True iff `map` is a bijection sending edges to edges and non-edges to
// non-edges. Checked over all vertex pairs; independent of any search code.
bool verify_witness(const Graph& source, const Graph& target, std::span<const int> map);
bool is_automorphism(const Graph& g, std::span<const int> perm);

std::optional<IsomorphismWitness> is_isomorphic(const Graph& x, const Graph& y,
                                                const SearchLimits& limits = {});

// Orbits of the group generated by `generators` on {0..degree-1}, each sorted,
// ordered by smallest member.
std::vector<std::vector<int>> orbits_of(int degree, std::span<const Permutation> generators);

}  // namespace gcg
