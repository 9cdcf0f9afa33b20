#pragma once

// Brute-force reference implementations. None of these call into the search
// code they are used to check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gcg/group.hpp"
#include "gcg/graph.hpp"

namespace oracle {

using gcg::Element;
using gcg::FiniteGroup;
using gcg::Graph;

// All automorphisms as image arrays, by assigning images to elements one at
// a time in id order and checking every product whose three ends are known.
inline std::vector<std::vector<Element>> all_automorphisms(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<std::vector<Element>> out;
  std::vector<Element> img(n, -1);
  std::vector<char> used(n, 0);
  img[0] = 0;
  used[0] = 1;
  auto consistent = [&](int upto) {
    for (int a = 0; a <= upto; ++a)
      for (int b = 0; b <= upto; ++b) {
        const int c = g.mul(a, b);
        if (c <= upto && img[c] != g.mul(img[a], img[b])) return false;
      }
    return true;
  };
  auto rec = [&](auto&& self, int a) -> void {
    if (a == n) {
      out.push_back(img);
      return;
    }
    for (int t = 1; t < n; ++t) {
      if (used[t] || g.element_order(t) != g.element_order(a)) continue;
      img[a] = t;
      used[t] = 1;
      if (consistent(a)) self(self, a + 1);
      used[t] = 0;
      img[a] = -1;
    }
  };
  if (n == 1)
    out.push_back(img);
  else
    rec(rec, 1);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::vector<Element>> involutory_automorphisms(const FiniteGroup& g) {
  std::vector<std::vector<Element>> out;
  for (auto& a : all_automorphisms(g)) {
    bool ok = true;
    for (int x = 0; x < g.order(); ++x) ok = ok && a[a[x]] == x;
    if (ok) out.push_back(std::move(a));
  }
  return out;
}

// Some isomorphism between two tables, or empty.
inline std::vector<Element> group_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
  const int n = a.order();
  if (b.order() != n) return {};
  std::vector<Element> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (p[0] != 0) continue;
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y) ok = p[a.mul(x, y)] == b.mul(p[x], p[y]);
    if (ok) return p;
  } while (std::next_permutation(p.begin(), p.end()));
  return {};
}

// Number of vertex permutations preserving adjacency, over all n! of them.
inline std::uint64_t automorphism_count(const Graph& g) {
  const int n = g.order();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (int u = 0; u < n && ok; ++u)
      for (int v = u + 1; v < n && ok; ++v) ok = g.adjacent(u, v) == g.adjacent(p[u], p[v]);
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

// graph6 written straight from the format description: bit string of the
// upper triangle column by column, padded to a multiple of six.
inline std::string graph6(const Graph& g) {
  const int n = g.order();
  std::string out;
  if (n <= 62) {
    out += static_cast<char>(n + 63);
  } else {
    out += '~';
    for (int shift : {12, 6, 0}) out += static_cast<char>(((n >> shift) & 63) + 63);
  }
  std::string bits;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) bits += g.adjacent(i, j) ? '1' : '0';
  while (bits.size() % 6) bits += '0';
  for (std::size_t k = 0; k < bits.size(); k += 6) out += static_cast<char>(std::stoi(bits.substr(k, 6), nullptr, 2) + 63);
  return out;
}

// Neighborhood of x in GC(G, S, alpha), computed from x ~ y iff
// alpha(x^-1) y in S.
inline std::vector<std::vector<char>> gc_adjacency(const FiniteGroup& g, const std::vector<Element>& alpha,
                                                   const std::vector<Element>& s) {
  const int n = g.order();
  std::vector<char> in_s(n, 0);
  for (Element e : s) in_s[e] = 1;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) adj[x][y] = in_s[g.mul(alpha[g.inv(x)], y)];
  return adj;
}

// Subsets S of G satisfying conditions (ii) and (iii) directly, as sorted
// element lists, ordered lexicographically.
inline std::vector<std::vector<Element>> valid_sets_by_power_set(const FiniteGroup& g, const std::vector<Element>& alpha) {
  const int n = g.order();
  std::vector<std::vector<Element>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    auto in = [&](int e) { return (mask >> e) & 1; };
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = !in(g.mul(alpha[g.inv(x)], x));
    for (int s = 0; s < n && ok; ++s)
      if (in(s)) ok = in(alpha[g.inv(s)]);
    if (!ok) continue;
    std::vector<Element> set;
    for (int e = 0; e < n; ++e)
      if (in(e)) set.push_back(e);
    out.push_back(std::move(set));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace oracle
