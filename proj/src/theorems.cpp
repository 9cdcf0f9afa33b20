#include "gcg/theorems.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "gcg/error.hpp"
#include "gcg/graph_io.hpp"

namespace gcg {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::verified:
      return "verified";
    case Verdict::refuted:
      return "refuted";
    case Verdict::skipped:
      return "skipped";
  }
  return "skipped";
}

const char* to_string(InversionBranch b) {
  switch (b) {
    case InversionBranch::elementary:
      return "elementary_abelian_2";
    case InversionBranch::cyclic_sylow:
      return "cyclic_sylow_2";
    case InversionBranch::neither:
      return "neither";
  }
  return "neither";
}

nlohmann::json TheoremReport::to_json() const {
  nlohmann::json j;
  j["theorem"] = theorem_id;
  j["instance"] = instance;
  j["verdict"] = to_string(verdict);
  j["stats"] = {{"instances", instances}, {"elapsed_ms", elapsed_ms}};
  if (!note.empty()) j["note"] = note;
  j["certificate"] = certificate;
  return j;
}

nlohmann::json group_json(const FiniteGroup& g) {
  if (g.descriptor().kind != Descriptor::Kind::Table) return g.descriptor().to_string();
  nlohmann::json t = nlohmann::json::array();
  for (int a = 0; a < g.order(); ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (int b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
    t.push_back(std::move(row));
  }
  return {{"table", std::move(t)}};
}

nlohmann::json spec_json(const GCSpec& spec) {
  return {{"group", group_json(*spec.group())}, {"alpha", spec.alpha().images()}, {"set", spec.set().elements()}};
}

nlohmann::json witness_json(const Graph& source, const Graph& target, std::span<const int> map,
                            const std::string& source_name, const std::string& target_name) {
  return {{"source", source_name},
          {"target", target_name},
          {"source_graph6", to_graph6(source)},
          {"target_graph6", to_graph6(target)},
          {"map", std::vector<int>(map.begin(), map.end())}};
}

namespace {

// Colour refinement seeded by per-vertex triangle counts. Colours are
// invariant under automorphisms, so differing colours separate orbits.
std::vector<int> refined_triangle_colors(const Graph& g) {
  const int n = g.order();
  std::vector<int> color = triangle_profile(g);
  // compress seed colours
  {
    std::map<int, int> ids;
    for (int c : color) ids.emplace(c, 0);
    int next = 0;
    for (auto& [k, v] : ids) v = next++;
    for (int& c : color) c = ids[c];
  }
  for (int round = 0; round <= n; ++round) {
    std::map<std::pair<int, std::vector<int>>, int> ids;
    std::vector<std::pair<int, std::vector<int>>> sig(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> nb;
      g.neighbors(v).for_each([&](std::size_t w) { nb.push_back(color[w]); });
      std::sort(nb.begin(), nb.end());
      sig[v] = {color[v], std::move(nb)};
      ids.emplace(sig[v], 0);
    }
    int next = 0;
    for (auto& [k, val] : ids) val = next++;
    std::vector<int> fresh(n);
    for (int v = 0; v < n; ++v) fresh[v] = ids[sig[v]];
    const bool stable = std::set<int>(fresh.begin(), fresh.end()).size() == std::set<int>(color.begin(), color.end()).size();
    color = std::move(fresh);
    if (stable) break;
  }
  return color;
}

Graph graph_from_spec_json(const nlohmann::json& s) {
  auto group = make_group(s.at("group").get<std::string>());
  Automorphism alpha(group, s.at("alpha").get<std::vector<Element>>());
  const auto elems = s.at("set").get<std::vector<Element>>();
  return build_gc_graph(GCSpec(alpha, ElementSet(group, elems)));
}

bool recheck_node(const nlohmann::json& j, const SearchLimits& limits, std::size_t& count) {
  if (j.is_array()) {
    for (const auto& e : j)
      if (!recheck_node(e, limits, count)) return false;
    return true;
  }
  if (!j.is_object()) return true;
  if (j.contains("source_graph6") && j.contains("target_graph6") && j.contains("map")) {
    const Graph s = from_graph6(j["source_graph6"].get<std::string>());
    const Graph t = from_graph6(j["target_graph6"].get<std::string>());
    if (!verify_witness(s, t, j["map"].get<std::vector<int>>())) return false;
    if (j.contains("source_spec") && j["source_spec"]["group"].is_string() &&
        !(graph_from_spec_json(j["source_spec"]) == s))
      return false;
    ++count;
  }
  if (j.contains("separation")) {
    const auto& sep = j["separation"];
    const Graph g = from_graph6(sep.at("graph6").get<std::string>());
    const int u = sep.at("u"), v = sep.at("v");
    if (u < 0 || v < 0 || u >= g.order() || v >= g.order()) return false;
    if (sep.at("invariant") == "refined_triangles") {
      const auto c = refined_triangle_colors(g);
      if (c[u] == c[v]) return false;
    } else {
      const auto aut = automorphism_group(g, limits);
      if (aut.orbit_of[u] == aut.orbit_of[v]) return false;
    }
    ++count;
  }
  for (const auto& [key, value] : j.items())
    if (key != "separation" && !recheck_node(value, limits, count)) return false;
  return true;
}

std::vector<int> identity_perm(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

bool is_inversion(const Automorphism& a) {
  const FiniteGroup& g = *a.group();
  for (int x = 0; x < g.order(); ++x)
    if (a(x) != g.inv(x)) return false;
  return true;
}

int mod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

std::optional<std::size_t> recheck_certificate(const nlohmann::json& certificate, const SearchLimits& limits) {
  std::size_t count = 0;
  try {
    if (!recheck_node(certificate, limits, count)) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return count;
}

std::optional<Separation> separate_orbits(const Graph& g, const SearchLimits& limits) {
  if (g.order() < 2) return std::nullopt;
  const auto c = refined_triangle_colors(g);
  for (int v = 1; v < g.order(); ++v)
    if (c[v] != c[0]) return Separation{0, v, "refined_triangles"};
  const auto aut = automorphism_group(g, limits);
  if (aut.orbits.size() < 2) return std::nullopt;
  return Separation{aut.orbits[0].front(), aut.orbits[1].front(), "aut_orbits"};
}

nlohmann::json separation_json(const Graph& g, const Separation& s) {
  nlohmann::json j{{"graph6", to_graph6(g)}, {"u", s.u}, {"v", s.v}, {"invariant", s.invariant}};
  if (s.invariant == "refined_triangles") {
    const auto t = triangle_profile(g);
    j["triangles_u"] = t[s.u];
    j["triangles_v"] = t[s.v];
  }
  return {{"separation", j}};
}

// ---------------------------------------------------------------------------

ConjugationResult verify_conjugation_isomorphism(const GCSpec& spec, const Automorphism& phi) {
  if (phi.group() != spec.group()) throw InvalidInput("phi is not an automorphism of the spec's group");
  const Automorphism conj = phi.after(spec.alpha()).after(phi.inverse());
  ElementSet image(spec.group());
  for (Element s : spec.set().elements()) image.insert(phi(s));
  ConjugationResult r{GCSpec(conj, image), false, false};
  r.conjugated_valid = r.conjugated.valid();
  if (spec.valid() && r.conjugated_valid)
    r.witness_ok = verify_witness(build_gc_graph(spec), build_gc_graph(r.conjugated), phi.images());
  return r;
}

OddAbelianNormalForm normal_form_odd_abelian(const GCSpec& spec) {
  const FiniteGroup& g = *spec.group();
  if (!g.is_abelian() || g.order() % 2 == 0) throw InvalidInput("normal form needs an Abelian group of odd order");
  if (!spec.valid()) throw InvalidSpec("connection set fails validation");
  const auto d = decompose_odd_abelian(spec.alpha());
  OddAbelianNormalForm nf;
  std::vector<Element> m1, m2;
  nf.g1 = subgroup_as_group(d.fixed, &m1);
  nf.g2 = subgroup_as_group(d.omega, &m2);
  std::vector<int> loc1(g.order(), -1), loc2(g.order(), -1);
  for (std::size_t i = 0; i < m1.size(); ++i) loc1[m1[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < m2.size(); ++i) loc2[m2[i]] = static_cast<int>(i);
  const int n2 = nf.g2->order();
  nf.map.resize(g.order());
  for (int x = 0; x < g.order(); ++x) nf.map[x] = loc1[d.split[x].first] * n2 + loc2[d.split[x].second];
  for (Element s : spec.set().elements()) nf.s_bar.emplace_back(loc1[d.split[s].first], loc2[d.split[s].second]);
  std::sort(nf.s_bar.begin(), nf.s_bar.end());

  nf.s_bar_in_shape = std::all_of(nf.s_bar.begin(), nf.s_bar.end(), [](const auto& s) { return s.first != 0; });
  const std::set<std::pair<Element, Element>> members(nf.s_bar.begin(), nf.s_bar.end());
  nf.s_bar_symmetric = std::all_of(nf.s_bar.begin(), nf.s_bar.end(),
                                   [&](const auto& s) { return members.count({nf.g1->inv(s.first), s.second}) > 0; });

  // Y: (g1, g2) ~ (g1 s1, g2^-1 s2). The rule must come out symmetric and loopless.
  const int n = g.order();
  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
  bool loopless = true;
  for (int a1 = 0; a1 < nf.g1->order(); ++a1)
    for (int a2 = 0; a2 < n2; ++a2)
      for (const auto& [s1, s2] : nf.s_bar) {
        const int u = a1 * n2 + a2;
        const int v = nf.g1->mul(a1, s1) * n2 + nf.g2->mul(nf.g2->inv(a2), s2);
        if (u == v) loopless = false;
        rel[u][v] = 1;
      }
  bool symmetric = true;
  nf.y = Graph(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (rel[u][v] != rel[v][u]) symmetric = false;
      if (rel[u][v] && u < v) nf.y.add_edge(u, v);
    }
  nf.x = build_gc_graph(spec);
  nf.witness_ok = loopless && symmetric && verify_witness(nf.x, nf.y, nf.map);
  return nf;
}

DihedralizationWitness dihedralize_inversion(const GCSpec& spec) {
  const GroupPtr& gp = spec.group();
  const FiniteGroup& g = *gp;
  if (!g.is_abelian() || !is_inversion(spec.alpha()))
    throw InvalidInput("dihedralization needs the inversion automorphism of an Abelian group");
  if (g.order() % 2 != 0 || !sylow2_is_cyclic(g))
    throw InvalidInput("dihedralization needs a non-trivial cyclic Sylow 2-subgroup");
  if (!spec.valid()) throw InvalidSpec("connection set fails validation");

  const auto d = decompose_cyclic_sylow(spec.alpha());
  const Element c = d.generator;
  auto odd = Subgroup::verified(ElementSet(gp, odd_order_elements(g)));
  std::vector<Element> members;
  auto table_h = subgroup_as_group(odd, &members);
  // rename the odd part as a product of cyclic groups
  std::string hdesc;
  for (const auto& [p, exps] : primary_type(*table_h))
    for (int e : exps) {
      int q = 1;
      for (int t = 0; t < e; ++t) q *= p;
      hdesc += (hdesc.empty() ? "Z" : "xZ") + std::to_string(q);
    }
  auto hgrp = make_group(hdesc.empty() ? "Z1" : hdesc, g.order());
  const auto to_table = abelian_isomorphism(*hgrp, *table_h);
  if (!to_table) throw Error("odd part is not a product of its primary cyclic factors");
  std::vector<int> hloc(g.order(), -1);
  for (int i = 0; i < hgrp->order(); ++i) hloc[members[(*to_table)[i]]] = i;

  const int nh = hgrp->order();
  GroupPtr inner;
  if (d.n == 1 && nh > 1) {
    inner = hgrp;
  } else if (nh == 1) {
    inner = make_group("Z" + std::to_string(1 << (d.n - 1)), g.order());
  } else {
    const GroupPtr parts[] = {make_group("Z" + std::to_string(1 << (d.n - 1)), g.order()), hgrp};
    inner = make_direct_product(parts, g.order());
  }
  auto target = make_generalized_dihedral(inner, g.order());
  const int ni = inner->order();

  DihedralizationWitness w{d.n, hgrp, target, ElementSet(target), {}, false, false, false, {}, {}};
  std::vector<int> xs(g.order()), hs(g.order());
  w.map.resize(g.order());
  for (int e = 0; e < g.order(); ++e) {
    const int x = d.coordinates[e][0];
    const Element h = g.mul(e, g.inv(g.pow(c, x)));
    xs[e] = x;
    hs[e] = hloc[h];
    w.map[e] = (x % 2) * ni + (x / 2) * nh + hs[e];
  }
  w.odd_first_coordinates = true;
  for (Element s : spec.set().elements()) {
    if (xs[s] % 2 == 0) {
      w.odd_first_coordinates = false;
      continue;
    }
    w.target_set.insert(ni + ((xs[s] - 1) / 2) * nh + hs[s]);
  }

  // ((x1,g1),0)^-1 ((x2,g2),1) = ((x1,g1),1)^-1 ((x2,g2),0) = ((x1+x2, g1 g2), 1)
  w.product_identity = true;
  const int step = ni * ni <= 4096 ? 1 : 7;
  for (int idx = 0; idx < ni * ni; idx += step) {
    const int a = idx / ni, b = idx % ni;
    const Element want = ni + inner->mul(a, b);
    if (target->mul(target->inv(a), ni + b) != want || target->mul(target->inv(ni + a), b) != want)
      w.product_identity = false;
  }

  w.source = build_gc_graph(spec);
  if (w.odd_first_coordinates) {
    w.target_graph = cayley_graph(target, w.target_set);
    w.witness_ok = verify_witness(w.source, w.target_graph, w.map);
  }
  return w;
}

GCSpec build_counterexample(CounterexampleKind kind, int a, int b, int cap) {
  if (kind == CounterexampleKind::ex32) {
    if (a < 1 || b < 2 || a > 16 || b > 16) throw InvalidInput("ex32 needs m >= 1 and n >= 2");
    if ((1LL << a) * (1LL << b) > cap) throw CapExceeded("ex32 group order exceeds the cap");
    auto g = make_group("Z" + std::to_string(1 << a) + "xZ" + std::to_string(1 << b), cap);
    auto at = [&](int x, int y) { return g->from_coordinates(std::vector<int>{x, y}); };
    return GCSpec(Automorphism::inversion(g), ElementSet(g, std::vector<Element>{at(1, 0), at(0, 1), at(1, 1)}));
  }
  if (a < 1 || a > 1'000'000) throw InvalidInput("ex33 needs k >= 1");
  if (4LL * (2 * a + 1) > cap) throw CapExceeded("ex33 group order exceeds the cap");
  auto g = make_group("Z2xZ2xZ" + std::to_string(2 * a + 1), cap);
  auto at = [&](int x, int y, int z) { return g->from_coordinates(std::vector<int>{x, y, z}); };
  return GCSpec(Automorphism::inversion(g),
                ElementSet(g, std::vector<Element>{at(1, 0, 0), at(0, 1, 0), at(1, 1, 1)}));
}

CounterexampleCertificate certify_counterexample(CounterexampleKind kind, int a, int b, const Caps& caps) {
  GCSpec spec = build_counterexample(kind, a, b, caps.max_group_order);
  const FiniteGroup& g = *spec.group();
  CounterexampleCertificate cert{kind, 0, 0, 0, spec, build_gc_graph(spec), {}, std::nullopt, false, {}};
  cert.triangles = triangle_profile(cert.graph);
  const int n = g.order();
  if (kind == CounterexampleKind::ex32) {
    cert.m = a;
    cert.n = b;
    bool each_has_involution = true;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        if (!cert.graph.adjacent(u, v)) continue;
        for (int w = v + 1; w < n; ++w) {
          if (!cert.graph.adjacent(u, w) || !cert.graph.adjacent(v, w)) continue;
          const bool hit = g.mul(u, u) == 0 || g.mul(v, v) == 0 || g.mul(w, w) == 0;
          each_has_involution = each_has_involution && hit;
        }
      }
    const int maxt = *std::max_element(cert.triangles.begin(), cert.triangles.end());
    const int mint = *std::min_element(cert.triangles.begin(), cert.triangles.end());
    bool claim = each_has_involution && maxt != mint;
    std::string detail = "every triangle contains x with 2x = 0: " + std::string(each_has_involution ? "yes" : "no") +
                         "; triangle counts range " + std::to_string(mint) + ".." + std::to_string(maxt);
    if (a >= 3 || b >= 3) {
      const Element v22 = g.from_coordinates(std::vector<int>{2 % (1 << a), 2 % (1 << b)});
      claim = claim && cert.triangles[v22] == 0 && maxt > 0;
      detail += "; vertex " + g.name(v22) + " on " + std::to_string(cert.triangles[v22]) + " triangles";
    }
    cert.triangle_claims = claim;
    cert.detail = detail;
  } else {
    const int k = a;
    const int q = 2 * k + 1;
    cert.k = k;
    auto at = [&](int x, int y, int z) { return g.from_coordinates(std::vector<int>{x, y, mod(z, q)}); };
    const Element o = at(0, 0, 0), p1 = at(0, 0, k), p2 = at(1, 0, -k), p3 = at(0, 1, k + 1);
    const bool triangle = cert.graph.adjacent(p1, p2) && cert.graph.adjacent(p2, p3) && cert.graph.adjacent(p1, p3);
    cert.triangle_claims = cert.triangles[o] == 0 && triangle;
    cert.detail = "vertex " + g.name(o) + " on " + std::to_string(cert.triangles[o]) + " triangles; " + g.name(p1) +
                  "," + g.name(p2) + "," + g.name(p3) + (triangle ? " form a triangle" : " do not form a triangle");
  }
  cert.separated = separate_orbits(cert.graph, caps.search);
  return cert;
}

ProductLemmaResult verify_product_lemma(const GCSpec& a, const GCSpec& b, int cap) {
  if (!a.valid() || !b.valid()) throw InvalidSpec("both factor specs must be valid");
  const FiniteGroup& g1 = *a.group();
  const FiniteGroup& g2 = *b.group();
  const GroupPtr parts[] = {a.group(), b.group()};
  auto g = make_direct_product(parts, cap);
  const int n2 = g2.order();
  std::vector<Element> img(g->order());
  for (int x = 0; x < g1.order(); ++x)
    for (int y = 0; y < n2; ++y) img[x * n2 + y] = a.alpha()(x) * n2 + b.alpha()(y);
  Automorphism alpha(g, img);
  ElementSet s(g);
  for (Element s1 : a.set().elements())
    for (Element s2 : b.set().elements()) s.insert(s1 * n2 + s2);

  ProductLemmaResult r{GCSpec(alpha, s), false, false, false, {}, {}};
  const auto om = omega_set(alpha).set;
  const auto om1 = omega_set(a.alpha()).set;
  const auto om2 = omega_set(b.alpha()).set;
  ElementSet expected(g);
  for (Element x : om1.elements())
    for (Element y : om2.elements()) expected.insert(x * n2 + y);
  r.omega_identity = om == expected;
  r.product_valid = r.product.valid();
  r.lhs = direct_product(build_gc_graph(a), build_gc_graph(b));
  if (r.product_valid) {
    r.rhs = build_gc_graph(r.product);
    r.adjacency_identity = verify_witness(r.lhs, r.rhs, identity_perm(g->order()));
  }
  return r;
}

InversionBranch classify_inversion_branch(const FiniteGroup& g) {
  if (!g.is_abelian()) throw InvalidInput("the inversion dichotomy concerns Abelian groups");
  if (is_elementary_abelian_2(g)) return InversionBranch::elementary;
  if (sylow2_is_cyclic(g)) return InversionBranch::cyclic_sylow;
  return InversionBranch::neither;
}

std::vector<std::pair<int, std::vector<int>>> primary_type(const FiniteGroup& g) {
  if (!g.is_abelian()) throw InvalidInput("primary type needs an Abelian group");
  std::vector<std::pair<int, std::vector<int>>> out;
  int rest = g.order();
  for (int p = 2; p <= rest; ++p) {
    if (rest % p) continue;
    int total = 0;
    while (rest % p == 0) {
      rest /= p;
      ++total;
    }
    // a[j] = log_p |{x : x^(p^j) = 1}|
    std::vector<int> a{0};
    for (int j = 1; a.back() < total; ++j) {
      long long pj = 1;
      for (int t = 0; t < j; ++t) pj *= p;
      int count = 0;
      for (int x = 0; x < g.order(); ++x) count += pj % g.element_order(x) == 0;
      int lg = 0;
      for (int c = count; c > 1; c /= p) ++lg;
      a.push_back(lg);
    }
    // r[j] = number of cyclic factors of exponent >= j
    std::vector<int> exps;
    for (std::size_t j = a.size() - 1; j >= 1; --j) {
      const int ge_j = a[j] - a[j - 1];
      const int ge_next = j + 1 < a.size() ? a[j + 1] - a[j] : 0;
      for (int t = 0; t < ge_j - ge_next; ++t) exps.push_back(static_cast<int>(j));
    }
    out.emplace_back(p, std::move(exps));
  }
  return out;
}

std::optional<std::vector<Element>> abelian_isomorphism(const FiniteGroup& from, const FiniteGroup& to) {
  if (from.order() != to.order() || !from.is_abelian() || !to.is_abelian()) return std::nullopt;
  const auto radices = from.radices();
  const int r = static_cast<int>(radices.size());
  std::vector<Element> units(r);
  for (int i = 0; i < r; ++i) {
    std::vector<int> c(r, 0);
    c[i] = 1 % radices[i];
    units[i] = from.from_coordinates(c);
    if (from.element_order(units[i]) != radices[i]) throw InvalidInput("source must be a product of cyclic groups");
  }
  std::vector<Element> images(r);
  std::vector<std::vector<Element>> spans{{0}};
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == r) return true;
    for (Element t = 0; t < to.order(); ++t) {
      if (to.element_order(t) != radices[i]) continue;
      std::vector<Element> next;
      std::vector<char> seen(to.order(), 0);
      Element power = 0;
      for (int e = 0; e < radices[i]; ++e, power = to.mul(power, t))
        for (Element x : spans.back()) {
          const Element y = to.mul(x, power);
          if (!seen[y]) {
            seen[y] = 1;
            next.push_back(y);
          }
        }
      if (next.size() != spans.back().size() * radices[i]) continue;
      images[i] = t;
      spans.push_back(std::move(next));
      if (self(self, i + 1)) return true;
      spans.pop_back();
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  std::vector<Element> map(from.order());
  for (int x = 0; x < from.order(); ++x) {
    const auto c = from.coordinates(x);
    Element y = 0;
    for (int i = 0; i < r; ++i) y = to.mul(y, to.pow(images[i], c[i]));
    map[x] = y;
  }
  std::vector<char> hit(to.order(), 0);
  for (Element y : map) hit[y] = 1;
  if (std::count(hit.begin(), hit.end(), 1) != to.order()) return std::nullopt;
  for (int x = 0; x < from.order(); ++x)
    for (int y = 0; y < from.order(); ++y)
      if (map[from.mul(x, y)] != to.mul(map[x], map[y])) return std::nullopt;
  return map;
}

Order2pWitness order_2p_witness(const GCSpec& spec, const Caps& caps) {
  const GroupPtr& gp = spec.group();
  const FiniteGroup& g = *gp;
  if (g.order() % 2 != 0 || !is_prime(g.order() / 2)) throw InvalidInput("group order must be 2p for a prime p");
  if (!spec.valid()) throw InvalidSpec("connection set fails validation");
  const int p = g.order() / 2;
  const Graph x = build_gc_graph(spec);
  Order2pWitness w{p, "", spec, gp, spec.set(), identity_perm(g.order()), std::nullopt, {}, 0, false, false};

  bool cyclic = false;
  for (int e = 0; e < g.order(); ++e) cyclic = cyclic || g.element_order(e) == g.order();

  if (spec.alpha().is_identity()) {
    w.route = "cayley-by-definition";
    w.witness_ok = verify_witness(x, cayley_graph(gp, spec.set()), w.map);
  } else if (cyclic) {
    w.route = "dihedralization";
    if (!is_inversion(spec.alpha())) return w;  // only identity and inversion exist on Z_2p
    auto d = dihedralize_inversion(spec);
    w.target_group = d.target;
    w.target_set = d.target_set;
    w.map = d.map;
    w.witness_ok = d.witness_ok && d.product_identity;
  } else if (p == 2) {
    w.route = "small-case";
    auto v = detect_cayley(x, caps.cayley());
    if (v.status != CayleyStatus::cayley) return w;
    w.target_group = v.witness->group;
    w.target_set = v.witness->connection_set;
    w.map = v.witness->map.map;
    w.witness_ok = verify_cayley_witness(x, *v.witness);
  } else {
    w.route = "reflection-shift";
    const auto kind = g.descriptor().kind;
    const bool dihedral_layout =
        kind == Descriptor::Kind::Dihedral ||
        (kind == Descriptor::Kind::Dih && g.descriptor().factors.front().kind == Descriptor::Kind::Cyclic);
    if (!dihedral_layout) throw InvalidInput("order-2p non-cyclic group must be given as D<2p> or Dih(Z<p>)");
    w.params = dihedral_params_of(spec.alpha());
    if (!w.params) return w;
    const int kp = w.params->halfshift;
    w.halfshift = kp;
    for (Element s : spec.set().elements()) {
      if (s < p) return w;  // rotations cannot lie in S
      w.s_prime.push_back(s - p);
    }
    // S' = l - S', i.e. S' - k' = -(S' - k')
    std::set<int> sp(w.s_prime.begin(), w.s_prime.end());
    w.s_prime_symmetric = std::all_of(sp.begin(), sp.end(), [&](int i) { return sp.count(mod(w.params->l - i, p)) > 0; });
    ElementSet s1(gp);
    for (int i : w.s_prime) s1.insert(p + mod(i - kp, p));
    w.target_set = s1;
    for (int i = 0; i < p; ++i) w.map[i] = mod(-i - kp, p);
    for (int j = 0; j < p; ++j) w.map[p + j] = p + j;
    w.witness_ok = w.s_prime_symmetric && verify_witness(x, cayley_graph(gp, s1), w.map);
  }
  return w;
}

UnworthyResult verify_unworthy_theory(const GCSpec& spec) {
  const FiniteGroup& g = *spec.group();
  UnworthyResult r{kernel_subgroup(spec), false, false, false, false, std::nullopt, {}, build_gc_graph(spec), {}};
  const int n = g.order();
  const Graph& x = r.x;
  r.coset_law = true;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      const bool twins = x.neighbors(u) == x.neighbors(v);
      if (twins != r.kernel.kernel.contains(g.mul(g.inv(u), v))) r.coset_law = false;
      if (u != v && twins) r.unworthy = true;
    }
  const int kn = r.kernel.kernel.order();
  r.unworthy_iff_kernel = r.unworthy == (kn > 1);
  r.map.assign(n, -1);
  for (std::size_t c = 0; c < r.kernel.cosets.size(); ++c)
    for (std::size_t j = 0; j < r.kernel.cosets[c].size(); ++j)
      r.map[r.kernel.cosets[c][j]] = static_cast<int>(c) * kn + static_cast<int>(j);
  r.quotient = quotient_by_kernel(x, r.kernel);
  r.lexicographic_ok = verify_witness(x, lexicographic_product(r.quotient, edgeless_graph(kn)), r.map);

  if (g.is_abelian()) {
    const auto om = omega_set(spec.alpha()).set;
    bool complement = true;
    for (int e = 0; e < n; ++e) complement = complement && (spec.set().contains(e) != om.contains(e));
    if (complement) {
      const int on = om.size();
      const int m = n / on;
      r.complete_multipartite = r.kernel.kernel.elements() == om && r.quotient == complete_graph(m) &&
                                verify_witness(x, lexicographic_product(complete_graph(m), edgeless_graph(on)), r.map);
    }
  }
  return r;
}

}  // namespace gcg
