#include "gcg/cayley.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "gcg/error.hpp"
#include "gcg/gc_spec.hpp"

namespace gcg {

namespace {

struct PermHash {
  std::size_t operator()(const Permutation& p) const {
    std::size_t h = 1469598103934665603ULL;
    for (int v : p) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
    return h;
  }
};

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation c(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) c[v] = a[b[v]];
  return c;
}

int perm_order(const Permutation& p) {
  Permutation id(p.size());
  for (std::size_t v = 0; v < p.size(); ++v) id[v] = static_cast<int>(v);
  Permutation q = p;
  int k = 1;
  while (q != id) {
    q = compose(p, q);
    ++k;
  }
  return k;
}

bool fixed_point_free(const Permutation& p) {
  for (std::size_t v = 0; v < p.size(); ++v)
    if (p[v] == static_cast<int>(v)) return false;
  return true;
}

// Backtracking over semiregular subgroups H of Aut(X). Each step picks the
// smallest vertex outside H(0) and tries every fixed-point-free element
// mapping 0 there; |H| at least doubles per step. Subgroups already explored
// are memoized.
class RegularSubgroupSearch {
 public:
  RegularSubgroupSearch(int n, std::vector<Permutation> elements, std::int64_t budget)
      : n_(n), elements_(std::move(elements)), budget_(budget) {
    for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], static_cast<int>(i));
    by_target_.resize(n_);
    for (std::size_t i = 0; i < elements_.size(); ++i)
      if (fixed_point_free(elements_[i])) by_target_[elements_[i][0]].push_back(static_cast<int>(i));
    std::vector<int> order(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) order[i] = perm_order(elements_[i]);
    for (auto& list : by_target_)
      std::stable_sort(list.begin(), list.end(), [&](int a, int b) { return order[a] > order[b]; });
    identity_ = index_.at(identity_perm());
  }

  // Element ids of a regular subgroup, or nullopt when none exists.
  std::optional<std::vector<int>> run() {
    if (n_ <= 1) return std::vector<int>{identity_};
    return extend({identity_});
  }

 private:
  Permutation identity_perm() const {
    Permutation p(n_);
    for (int v = 0; v < n_; ++v) p[v] = v;
    return p;
  }

  // Closure of `members` plus `extra`; nullopt if it stops being semiregular.
  std::optional<std::vector<int>> close(const std::vector<int>& members, int extra) {
    if (++closures_ > budget_) throw BudgetExceeded("regular subgroup search exceeded its budget");
    std::vector<int> out = members;
    std::set<int> in(out.begin(), out.end());
    std::vector<int> gens = members;
    gens.push_back(extra);
    if (!in.insert(extra).second) return out;
    out.push_back(extra);
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (int gi : gens) {
        const int prod = index_.at(compose(elements_[out[i]], elements_[gi]));
        if (in.insert(prod).second) {
          if (prod != identity_ && !fixed_point_free(elements_[prod])) return std::nullopt;
          out.push_back(prod);
          if (static_cast<int>(out.size()) > n_) return std::nullopt;
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<std::vector<int>> extend(const std::vector<int>& members) {
    if (static_cast<int>(members.size()) == n_) return members;
    std::vector<char> covered(n_, 0);
    for (int m : members) covered[elements_[m][0]] = 1;
    int target = 0;
    while (covered[target]) ++target;
    for (int cand : by_target_[target]) {
      auto next = close(members, cand);
      if (!next || n_ % static_cast<int>(next->size()) != 0) continue;
      if (!visited_.insert(*next).second) continue;
      if (auto found = extend(*next)) return found;
    }
    return std::nullopt;
  }

  int n_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, int, PermHash> index_;
  std::vector<std::vector<int>> by_target_;
  std::set<std::vector<int>> visited_;
  int identity_ = 0;
  std::int64_t budget_;
  std::int64_t closures_ = 0;
};

std::vector<Permutation> enumerate_group(int n, const std::vector<Permutation>& gens) {
  Permutation id(n);
  for (int v = 0; v < n; ++v) id[v] = v;
  std::vector<Permutation> out{id};
  std::unordered_map<Permutation, int, PermHash> seen{{id, 0}};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      Permutation p = compose(out[i], g);
      if (seen.emplace(p, static_cast<int>(out.size())).second) out.push_back(std::move(p));
    }
  return out;
}

CayleyWitness cyclic_witness(const Graph& g) {
  const int n = g.order();
  auto group = make_group("Z" + std::to_string(std::max(n, 1)), std::max(n, 1));
  ElementSet s(group);
  if (is_complete(g))
    for (int v = 1; v < n; ++v) s.insert(v);
  Permutation id(n);
  for (int v = 0; v < n; ++v) id[v] = v;
  return CayleyWitness{group, std::move(s), IsomorphismWitness{"X", "Cay(Z" + std::to_string(n) + ",S)", id}};
}

}  // namespace

bool verify_cayley_witness(const Graph& x, const CayleyWitness& w) {
  if (w.group->order() != x.order()) return false;
  try {
    return verify_witness(x, cayley_graph(w.group, w.connection_set), w.map.map);
  } catch (const InvalidSpec&) {
    return false;
  }
}

VertexTransitivity is_vertex_transitive(const Graph& g, const SearchLimits& limits) {
  if (g.order() == 0) return {true, {}};
  auto aut = automorphism_group(g, limits);
  return VertexTransitivity{aut.orbits.size() == 1, std::move(aut.orbits)};
}

CayleyVerdict detect_cayley(const Graph& g, const CayleyCaps& caps) {
  CayleyVerdict v;
  v.caps = caps;
  const int n = g.order();
  if (n == 0) {
    v.status = CayleyStatus::unknown;
    v.note = "empty vertex set";
    return v;
  }
  PermGroupDescription aut;
  try {
    aut = automorphism_group(g, caps.search);
  } catch (const Error& e) {
    v.note = e.what();
    return v;
  }
  v.aut_order = aut.order;
  if (aut.orbits.size() > 1) {
    v.status = CayleyStatus::not_cayley;
    v.reason = Refutation::not_vertex_transitive;
    v.separated = std::make_pair(aut.orbits[0].front(), aut.orbits[1].front());
    return v;
  }
  if (is_complete(g) || is_edgeless(g)) {
    v.status = CayleyStatus::cayley;
    v.witness = cyclic_witness(g);
    return v;
  }
  if (aut.order > caps.aut_enumeration_cap) {
    v.note = "|Aut| = " + aut.order.str() + " above enumeration cap";
    return v;
  }
  try {
    const auto elements = enumerate_group(n, aut.generators);
    RegularSubgroupSearch search(n, elements, caps.subgroup_budget);
    auto found = search.run();
    if (!found) {
      v.status = CayleyStatus::not_cayley;
      v.reason = Refutation::regular_subgroup_search_exhausted;
      return v;
    }
    // Element of R sending 0 to vertex u gets id u; then r_u r_w = r_{r_u(w)}.
    std::vector<const Permutation*> by_vertex(n, nullptr);
    for (int idx : *found) by_vertex[elements[idx][0]] = &elements[idx];
    std::vector<Element> table(static_cast<std::size_t>(n) * n);
    std::vector<std::string> names(n);
    for (int u = 0; u < n; ++u) {
      names[u] = "r" + std::to_string(u);
      for (int w = 0; w < n; ++w) table[static_cast<std::size_t>(u) * n + w] = (*by_vertex[u])[w];
    }
    auto group = make_group_from_table(std::move(table), std::move(names));
    ElementSet s(group);
    g.neighbors(0).for_each([&](std::size_t w) { s.insert(static_cast<Element>(w)); });
    Permutation id(n);
    for (int u = 0; u < n; ++u) id[u] = u;
    v.status = CayleyStatus::cayley;
    v.witness = CayleyWitness{group, std::move(s), IsomorphismWitness{"X", "Cay(R,S)", std::move(id)}};
    if (!verify_cayley_witness(g, *v.witness)) throw Error("regular subgroup witness failed verification");
  } catch (const BudgetExceeded& e) {
    v.status = CayleyStatus::unknown;
    v.note = e.what();
  }
  return v;
}

StabilityReport stability_check(const Graph& g, const SearchLimits& limits) {
  StabilityReport r;
  if (2 * g.order() > limits.max_vertices)
    throw CapExceeded("double cover of a " + std::to_string(g.order()) + "-vertex graph exceeds the search cap");
  if (g.order() == 0 || is_bipartite(g) || !is_connected(g)) return r;
  r.aut_x = automorphism_group(g, limits).order;
  r.aut_cover = automorphism_group(bipartite_double_cover(g), limits).order;
  r.status = r.aut_cover == 2 * r.aut_x ? Stability::stable : Stability::unstable;
  return r;
}

const char* to_string(CayleyStatus s) {
  switch (s) {
    case CayleyStatus::cayley:
      return "cayley";
    case CayleyStatus::not_cayley:
      return "not_cayley";
    case CayleyStatus::unknown:
      return "unknown";
  }
  return "unknown";
}

const char* to_string(Refutation r) {
  switch (r) {
    case Refutation::none:
      return "none";
    case Refutation::not_vertex_transitive:
      return "not_vertex_transitive";
    case Refutation::regular_subgroup_search_exhausted:
      return "regular_subgroup_search_exhausted";
  }
  return "none";
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::stable:
      return "stable";
    case Stability::unstable:
      return "unstable";
    case Stability::not_applicable:
      return "not_applicable";
  }
  return "not_applicable";
}

}  // namespace gcg
