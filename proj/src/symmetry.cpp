#include "gcg/symmetry.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "gcg/error.hpp"
#include "gcg/graph_io.hpp"

namespace gcg {

namespace {

// Ordered partition in the nauty layout: `lab` lists vertices by position and
// every cell is a contiguous range identified by its start position.
struct Partition {
  std::vector<int> lab;
  std::vector<int> cell_of;   // vertex -> start of its cell
  std::vector<int> cell_end;  // start -> one past the end (valid at starts)
  int cells = 0;

  int size() const { return static_cast<int>(lab.size()); }
  bool discrete() const { return cells == size(); }
};

Partition unit_partition(int n) {
  Partition p;
  p.lab.resize(n);
  std::iota(p.lab.begin(), p.lab.end(), 0);
  p.cell_of.assign(n, 0);
  p.cell_end.assign(n, 0);
  if (n > 0) {
    p.cell_end[0] = n;
    p.cells = 1;
  }
  return p;
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

inline std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0xff51afd7ed558ccdULL;
}

class SymmetrySearch {
 public:
  SymmetrySearch(const Graph& g, const SearchLimits& limits) : g_(g), limits_(limits), n_(g.order()) {
    if (n_ > limits.max_vertices)
      throw CapExceeded("graph has " + std::to_string(n_) + " vertices, cap is " +
                        std::to_string(limits.max_vertices));
  }

  PermGroupDescription automorphisms() {
    PermGroupDescription out;
    out.degree = n_;
    build_first_path();
    const int depth = static_cast<int>(base_.size());
    out.basic_orbit_sizes.assign(depth, 1);
    for (int level = depth - 1; level >= 0; --level) {
      const Partition& node = path_[level].p;
      const int s = target_cell(node);
      const int e = node.cell_end[s];
      auto orbit = orbit_partition(gens_);
      for (int pos = s; pos < e; ++pos) {
        const int w = node.lab[pos];
        if (orbit.find(w) == orbit.find(base_[level])) continue;
        Partition child = node;
        const std::uint64_t inv = individualize(child, w);
        if (inv != path_[level + 1].invariant) continue;
        if (auto gamma = find_equivalent_leaf(child, level + 1)) {
          gens_.push_back(std::move(*gamma));
          orbit = orbit_partition(gens_);
        }
      }
      int size = 0;
      for (int pos = s; pos < e; ++pos) size += orbit.find(node.lab[pos]) == orbit.find(base_[level]);
      out.basic_orbit_sizes[level] = size;
    }
    out.generators = gens_;
    out.base = base_;
    for (int sz : out.basic_orbit_sizes) out.order *= sz;
    out.orbits = orbits_of(n_, gens_);
    out.orbit_of.assign(n_, 0);
    for (std::size_t i = 0; i < out.orbits.size(); ++i)
      for (int v : out.orbits[i]) out.orbit_of[v] = static_cast<int>(i);
    out.nodes = nodes_;
    return out;
  }

  CanonicalForm canonical() {
    if (path_.empty()) automorphisms();
    std::vector<std::uint64_t> invariants{path_[0].invariant};
    std::vector<int> fixed;
    best_.reset();
    canonical_search(path_[0].p, invariants, fixed);
    CanonicalForm out;
    out.labeling.assign(n_, 0);
    for (int pos = 0; pos < n_; ++pos) out.labeling[best_->lab[pos]] = pos;
    out.fingerprint = best_->certificate;
    return out;
  }

 private:
  struct PathNode {
    Partition p;
    std::uint64_t invariant;
  };
  struct Leaf {
    std::vector<std::uint64_t> invariants;
    std::string certificate;
    std::vector<int> lab;
  };

  void tick() {
    if (++nodes_ > limits_.node_budget)
      throw BudgetExceeded("automorphism search exceeded " + std::to_string(limits_.node_budget) + " nodes");
  }

  // Refines to the coarsest equitable partition finer than `p`, starting from
  // the given splitter cells. Returns a label-invariant hash of the process.
  std::uint64_t refine(Partition& p, std::vector<int> splitters) {
    tick();
    std::deque<int> queue(splitters.begin(), splitters.end());
    std::vector<char> queued(n_, 0);
    for (int s : splitters) queued[s] = 1;
    std::uint64_t h = 0x84222325cbf29ce4ULL;
    std::vector<int> count(n_);
    Bitset wset(n_);
    while (!queue.empty() && !p.discrete()) {
      const int w = queue.front();
      queue.pop_front();
      queued[w] = 0;
      wset = Bitset(n_);
      for (int pos = w; pos < p.cell_end[w]; ++pos) wset.set(p.lab[pos]);
      for (int s = 0; s < n_;) {
        const int e = p.cell_end[s];
        if (e - s == 1) {
          s = e;
          continue;
        }
        bool uniform = true;
        for (int pos = s; pos < e; ++pos) {
          const int v = p.lab[pos];
          count[v] = static_cast<int>(g_.neighbors(v).intersect_count(wset));
          uniform = uniform && count[v] == count[p.lab[s]];
        }
        if (uniform) {
          s = e;
          continue;
        }
        std::stable_sort(p.lab.begin() + s, p.lab.begin() + e,
                         [&](int a, int b) { return count[a] > count[b]; });
        h = mix(mix(h, static_cast<std::uint64_t>(s)), static_cast<std::uint64_t>(w));
        const bool was_queued = queued[s];
        int largest = s, largest_size = 0;
        std::vector<int> fragments;
        for (int fs = s; fs < e;) {
          int fe = fs + 1;
          while (fe < e && count[p.lab[fe]] == count[p.lab[fs]]) ++fe;
          p.cell_end[fs] = fe;
          for (int pos = fs; pos < fe; ++pos) p.cell_of[p.lab[pos]] = fs;
          h = mix(mix(h, static_cast<std::uint64_t>(fe - fs)), static_cast<std::uint64_t>(count[p.lab[fs]]));
          if (fe - fs > largest_size) {
            largest = fs;
            largest_size = fe - fs;
          }
          fragments.push_back(fs);
          fs = fe;
        }
        p.cells += static_cast<int>(fragments.size()) - 1;
        for (int fs : fragments) {
          if (queued[fs]) continue;
          if (!was_queued && fs == largest) continue;
          queued[fs] = 1;
          queue.push_back(fs);
        }
        s = e;
      }
    }
    return mix(h, static_cast<std::uint64_t>(p.cells));
  }

  std::uint64_t individualize(Partition& p, int v) {
    const int s = p.cell_of[v];
    const int e = p.cell_end[s];
    const int pos = static_cast<int>(std::find(p.lab.begin() + s, p.lab.begin() + e, v) - p.lab.begin());
    std::swap(p.lab[s], p.lab[pos]);
    p.cell_end[s] = s + 1;
    p.cell_end[s + 1] = e;
    for (int q = s + 1; q < e; ++q) p.cell_of[p.lab[q]] = s + 1;
    ++p.cells;
    return refine(p, {s});
  }

  static int target_cell(const Partition& p) {
    int best = -1, best_size = 0;
    for (int s = 0; s < p.size(); s = p.cell_end[s]) {
      const int size = p.cell_end[s] - s;
      if (size > 1 && (best < 0 || size < best_size)) {
        best = s;
        best_size = size;
      }
    }
    return best;
  }

  void build_first_path() {
    Partition p = unit_partition(n_);
    std::uint64_t inv = n_ > 0 ? refine(p, {0}) : 0;
    path_.push_back({p, inv});
    while (!p.discrete()) {
      const int v = p.lab[target_cell(p)];
      base_.push_back(v);
      inv = individualize(p, v);
      path_.push_back({p, inv});
    }
  }

  UnionFind orbit_partition(std::span<const Permutation> gens) const {
    UnionFind uf(n_);
    for (const auto& g : gens)
      for (int v = 0; v < n_; ++v) uf.unite(v, g[v]);
    return uf;
  }

  // Depth-first search below `node` for a leaf whose labeling differs from
  // the first leaf by an automorphism. Children whose refinement invariant
  // differs from the first path at the same depth cannot lead there.
  std::optional<Permutation> find_equivalent_leaf(const Partition& node, int depth) {
    if (node.discrete()) {
      const auto& first = path_.back().p.lab;
      Permutation gamma(n_);
      for (int pos = 0; pos < n_; ++pos) gamma[first[pos]] = node.lab[pos];
      if (is_automorphism(g_, gamma)) return gamma;
      return std::nullopt;
    }
    const int s = target_cell(node);
    for (int pos = s; pos < node.cell_end[s]; ++pos) {
      Partition child = node;
      if (individualize(child, node.lab[pos]) != path_[depth + 1].invariant) continue;
      if (auto gamma = find_equivalent_leaf(child, depth + 1)) return gamma;
    }
    return std::nullopt;
  }

  std::string certificate(const std::vector<int>& lab) const {
    Permutation relabeling(n_);
    for (int pos = 0; pos < n_; ++pos) relabeling[lab[pos]] = pos;
    return to_graph6(relabel(g_, relabeling));
  }

  // Canonical leaf = least (invariant sequence, certificate) over the search
  // tree. Children in one orbit of the automorphisms fixing the current
  // individualized vertices have equal subtrees, so one per orbit suffices.
  void canonical_search(const Partition& node, std::vector<std::uint64_t>& invariants, std::vector<int>& fixed) {
    if (best_) {
      const std::size_t len = std::min(invariants.size(), best_->invariants.size());
      const auto mismatch = std::mismatch(invariants.begin(), invariants.begin() + static_cast<long>(len),
                                          best_->invariants.begin());
      if (mismatch.first != invariants.begin() + static_cast<long>(len) && *mismatch.first > *mismatch.second)
        return;
    }
    if (node.discrete()) {
      Leaf leaf{invariants, certificate(node.lab), node.lab};
      if (!best_ || std::tie(leaf.invariants, leaf.certificate) < std::tie(best_->invariants, best_->certificate))
        best_ = std::move(leaf);
      return;
    }
    std::vector<Permutation> stabilizer;
    for (const auto& g : gens_)
      if (std::all_of(fixed.begin(), fixed.end(), [&](int v) { return g[v] == v; })) stabilizer.push_back(g);
    UnionFind orbit = orbit_partition(stabilizer);
    const int s = target_cell(node);
    std::vector<char> seen_root(n_, 0);
    for (int pos = s; pos < node.cell_end[s]; ++pos) {
      const int w = node.lab[pos];
      const int root = orbit.find(w);
      if (seen_root[root]) continue;
      seen_root[root] = 1;
      Partition child = node;
      invariants.push_back(individualize(child, w));
      fixed.push_back(w);
      canonical_search(child, invariants, fixed);
      fixed.pop_back();
      invariants.pop_back();
    }
  }

  const Graph& g_;
  SearchLimits limits_;
  int n_;
  std::int64_t nodes_ = 0;
  std::vector<PathNode> path_;
  std::vector<int> base_;
  std::vector<Permutation> gens_;
  std::optional<Leaf> best_;
};

}  // namespace

std::vector<std::vector<int>> orbits_of(int degree, std::span<const Permutation> generators) {
  UnionFind uf(degree);
  for (const auto& g : generators)
    for (int v = 0; v < degree; ++v) uf.unite(v, g[v]);
  std::vector<std::vector<int>> out;
  std::vector<int> slot(degree, -1);
  for (int v = 0; v < degree; ++v) {
    const int r = uf.find(v);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[r]].push_back(v);
  }
  return out;
}

bool is_automorphism(const Graph& g, std::span<const int> perm) { return verify_witness(g, g, perm); }

bool verify_witness(const Graph& source, const Graph& target, std::span<const int> map) {
  const int n = source.order();
  if (target.order() != n || map.size() != static_cast<std::size_t>(n)) return false;
  std::vector<char> hit(n, 0);
  for (int v : map) {
    if (v < 0 || v >= n || hit[v]) return false;
    hit[v] = 1;
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (source.adjacent(u, v) != target.adjacent(map[u], map[v])) return false;
  return true;
}

PermGroupDescription automorphism_group(const Graph& g, const SearchLimits& limits) {
  return SymmetrySearch(g, limits).automorphisms();
}

CanonicalForm canonical_form(const Graph& g, const SearchLimits& limits) {
  return SymmetrySearch(g, limits).canonical();
}

std::optional<IsomorphismWitness> is_isomorphic(const Graph& x, const Graph& y, const SearchLimits& limits) {
  if (x.order() != y.order() || x.edge_count() != y.edge_count()) return std::nullopt;
  const CanonicalForm cx = canonical_form(x, limits);
  const CanonicalForm cy = canonical_form(y, limits);
  if (cx.fingerprint != cy.fingerprint) return std::nullopt;
  const int n = x.order();
  Permutation from_canonical_y(n);
  for (int v = 0; v < n; ++v) from_canonical_y[cy.labeling[v]] = v;
  IsomorphismWitness w{"x", "y", Permutation(n)};
  for (int v = 0; v < n; ++v) w.map[v] = from_canonical_y[cx.labeling[v]];
  if (!verify_witness(x, y, w.map)) throw Error("canonical forms agree but the derived map is not an isomorphism");
  return w;
}

}  // namespace gcg
