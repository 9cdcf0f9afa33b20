#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gcg/bitset.hpp"

namespace gcg {

// Largest vertex count any construction will produce.
inline constexpr int kMaxGraphVertices = 1 << 15;

// Undirected simple graph with bitset adjacency rows. Symmetric, no loops.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  static Graph from_edges(int n, std::span<const std::pair<int, int>> edges);

  int order() const { return static_cast<int>(rows_.size()); }
  bool adjacent(int u, int v) const { return rows_[u].test(v); }
  const Bitset& neighbors(int v) const { return rows_[v]; }
  int degree(int v) const { return static_cast<int>(rows_[v].count()); }
  std::size_t edge_count() const;

  // Throws InvalidInput on loops or out-of-range ends.
  void add_edge(int u, int v);

  // All edges (i, j) with i < j, lexicographically sorted.
  std::vector<std::pair<int, int>> edges() const;

  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);

  // Compares adjacency only.
  friend bool operator==(const Graph& a, const Graph& b) { return a.rows_ == b.rows_; }

 private:
  std::vector<Bitset> rows_;
  std::vector<std::string> labels_;
};

Graph complete_graph(int n);
Graph edgeless_graph(int n);
Graph cycle_graph(int n);
Graph petersen_graph();

// Vertex (x, y) is x * |V(Y)| + y throughout.
Graph direct_product(const Graph& x, const Graph& y);
Graph bipartite_double_cover(const Graph& x);  // X x K2
Graph lexicographic_product(const Graph& x, const Graph& y);
Graph disjoint_union(const Graph& x, const Graph& y);

// Vertex v of `g` becomes vertex perm[v].
Graph relabel(const Graph& g, std::span<const int> perm);

// Number of triangles through each vertex.
std::vector<int> triangle_profile(const Graph& g);

int component_count(const Graph& g);
bool is_connected(const Graph& g);
bool is_bipartite(const Graph& g);
std::optional<int> regular_degree(const Graph& g);
bool is_complete(const Graph& g);
bool is_edgeless(const Graph& g);

}  // namespace gcg
