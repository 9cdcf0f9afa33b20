#include "gcg/graph.hpp"

#include <string>

#include "gcg/error.hpp"

namespace gcg {

namespace {

int checked_product(int a, int b) {
  const long long n = static_cast<long long>(a) * b;
  if (n > kMaxGraphVertices)
    throw CapExceeded("product graph would have " + std::to_string(n) + " vertices");
  return static_cast<int>(n);
}

}  // namespace

Graph::Graph(int n) {
  if (n < 0 || n > kMaxGraphVertices) throw CapExceeded("graph order " + std::to_string(n) + " out of range");
  rows_.assign(n, Bitset(n));
}

Graph Graph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& r : rows_) twice += r.count();
  return twice / 2;
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= order() || v >= order()) throw InvalidInput("edge end out of range");
  if (u == v) throw InvalidInput("loops are not allowed");
  rows_[u].set(v);
  rows_[v].set(u);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < order(); ++u)
    for (std::size_t v = rows_[u].next(u + 1); v < rows_[u].size(); v = rows_[u].next(v + 1))
      out.emplace_back(u, static_cast<int>(v));
  return out;
}

void Graph::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != rows_.size()) throw InvalidInput("label count mismatch");
  labels_ = std::move(labels);
}

Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph edgeless_graph(int n) { return Graph(n); }

Graph cycle_graph(int n) {
  if (n < 3) throw InvalidInput("cycles need at least 3 vertices");
  Graph g(n);
  for (int u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
  return g;
}

Graph petersen_graph() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);          // outer cycle
    g.add_edge(i, i + 5);                // spokes
    g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return g;
}

Graph direct_product(const Graph& x, const Graph& y) {
  const int m = y.order();
  Graph g(checked_product(x.order(), m));
  for (auto [x1, x2] : x.edges())
    for (auto [y1, y2] : y.edges()) {
      g.add_edge(x1 * m + y1, x2 * m + y2);
      g.add_edge(x1 * m + y2, x2 * m + y1);
    }
  return g;
}

Graph bipartite_double_cover(const Graph& x) { return direct_product(x, complete_graph(2)); }

Graph lexicographic_product(const Graph& x, const Graph& y) {
  const int m = y.order();
  Graph g(checked_product(x.order(), m));
  for (auto [x1, x2] : x.edges())
    for (int y1 = 0; y1 < m; ++y1)
      for (int y2 = 0; y2 < m; ++y2) g.add_edge(x1 * m + y1, x2 * m + y2);
  for (int x1 = 0; x1 < x.order(); ++x1)
    for (auto [y1, y2] : y.edges()) g.add_edge(x1 * m + y1, x1 * m + y2);
  return g;
}

Graph disjoint_union(const Graph& x, const Graph& y) {
  Graph g(x.order() + y.order());
  for (auto [u, v] : x.edges()) g.add_edge(u, v);
  for (auto [u, v] : y.edges()) g.add_edge(x.order() + u, x.order() + v);
  return g;
}

Graph relabel(const Graph& g, std::span<const int> perm) {
  if (perm.size() != static_cast<std::size_t>(g.order())) throw InvalidInput("permutation size mismatch");
  Graph out(g.order());
  for (auto [u, v] : g.edges()) out.add_edge(perm[u], perm[v]);
  if (!g.labels().empty()) {
    std::vector<std::string> labels(g.order());
    for (int v = 0; v < g.order(); ++v) labels[perm[v]] = g.labels()[v];
    out.set_labels(std::move(labels));
  }
  return out;
}

std::vector<int> triangle_profile(const Graph& g) {
  std::vector<int> out(g.order(), 0);
  for (int v = 0; v < g.order(); ++v) {
    const Bitset& nv = g.neighbors(v);
    std::size_t twice = 0;
    nv.for_each([&](std::size_t u) { twice += nv.intersect_count(g.neighbors(static_cast<int>(u))); });
    out[v] = static_cast<int>(twice / 2);
  }
  return out;
}

int component_count(const Graph& g) {
  std::vector<char> seen(g.order(), 0);
  int components = 0;
  std::vector<int> stack;
  for (int s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      g.neighbors(u).for_each([&](std::size_t w) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(static_cast<int>(w));
        }
      });
    }
  }
  return components;
}

bool is_connected(const Graph& g) { return component_count(g) <= 1; }

bool is_bipartite(const Graph& g) {
  std::vector<int> side(g.order(), -1);
  std::vector<int> stack;
  for (int s = 0; s < g.order(); ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      bool ok = true;
      g.neighbors(u).for_each([&](std::size_t w) {
        if (side[w] == -1) {
          side[w] = 1 - side[u];
          stack.push_back(static_cast<int>(w));
        } else if (side[w] == side[u]) {
          ok = false;
        }
      });
      if (!ok) return false;
    }
  }
  return true;
}

std::optional<int> regular_degree(const Graph& g) {
  if (g.order() == 0) return 0;
  const int d = g.degree(0);
  for (int v = 1; v < g.order(); ++v)
    if (g.degree(v) != d) return std::nullopt;
  return d;
}

bool is_complete(const Graph& g) {
  return g.edge_count() == static_cast<std::size_t>(g.order()) * (g.order() - 1) / 2;
}

bool is_edgeless(const Graph& g) { return g.edge_count() == 0; }

}  // namespace gcg
