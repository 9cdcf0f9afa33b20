// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gcg/census.hpp"
#include "gcg/graph_io.hpp"
#include "gcg/symmetry.hpp"
#include "gcg/theorems.hpp"
#include "oracles.hpp"

using namespace gcg;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

bool all_verified(const std::vector<TheoremReport>& reports, Outcome& o, const std::string& id,
                  bool allow_skipped = false) {
  bool ok = !reports.empty();
  for (const auto& r : reports) {
    const bool fine = r.verdict == Verdict::verified || (allow_skipped && r.verdict == Verdict::skipped);
    if (!fine) o.require(false, id + " " + r.instance + ": " + to_string(r.verdict) + " " + r.note);
    if (r.verdict == Verdict::verified && !recheck_certificate(r.certificate))
      o.require(false, id + " " + r.instance + ": certificate does not recheck");
    ok = ok && fine;
  }
  return ok;
}

std::uint64_t instances(const std::vector<TheoremReport>& reports) {
  std::uint64_t n = 0;
  for (const auto& r : reports) n += r.instances;
  return n;
}

TheoremParams with_max(int m) {
  TheoremParams p;
  p.max_order = m;
  return p;
}

// ---------------------------------------------------------------------------

Outcome c1() {
  Outcome o;
  const auto reports = run_theorem("lemma-2.3", with_max(16));
  all_verified(reports, o, "lemma-2.3");
  // independent: brute-force involutions, Fix and omega by direct scan
  std::size_t pairs = 0;
  for (const auto& d : group_catalog(16)) {
    auto g = make_group(d);
    for (const auto& a : oracle::involutory_automorphisms(*g)) {
      std::vector<char> om(g->order(), 0);
      int fix = 0;
      for (int x = 0; x < g->order(); ++x) {
        fix += a[x] == x;
        om[g->mul(a[x], g->inv(x))] = 1;
      }
      int omega = 0;
      for (char c : om) omega += c;
      o.require(fix * omega == g->order(), d.to_string() + ": |Fix| |omega| != |G|");
      ++pairs;
    }
  }
  o.detail = o.ok ? std::to_string(pairs) + " (G, alpha) pairs" : o.detail;
  return o;
}

Outcome c2() {
  Outcome o;
  const auto reports = run_theorem("thm-3.1", {});
  all_verified(reports, o, "thm-3.1");
  std::size_t checked = 0;
  for (const char* name : {"Z2", "Z4", "Z8", "Z6", "Z12", "Z20"}) {
    auto g = make_group(name);
    const auto iota = Automorphism::inversion(g);
    for (const auto& s : oracle::valid_sets_by_power_set(*g, iota.images())) {
      GCSpec spec(iota, ElementSet(g, s));
      const auto w = dihedralize_inversion(spec);
      const auto adj = oracle::gc_adjacency(*g, iota.images(), s);
      const auto& t = *w.target;
      // x ~ y in Cay(T, phi(S)) iff x^-1 y in phi(S), read off the table
      bool same = std::set<int>(w.map.begin(), w.map.end()).size() == static_cast<std::size_t>(g->order());
      for (int u = 0; u < g->order() && same; ++u)
        for (int v = 0; v < g->order(); ++v)
          same = same && static_cast<bool>(adj[u][v]) == w.target_set.contains(t.mul(t.inv(w.map[u]), w.map[v]));
      o.require(same, std::string(name) + ": dihedralization map is not an isomorphism");
      ++checked;
    }
  }
  if (o.ok) o.detail = std::to_string(checked) + " witnesses checked against table adjacency";
  return o;
}

Outcome c3() {
  Outcome o;
  const auto reports = run_theorem("thm-4.3", {});
  all_verified(reports, o, "thm-4.3");
  o.require(reports.size() == 6, "expected Z_2p and D_2p for p in {2,3,5}");
  if (o.ok) o.detail = std::to_string(instances(reports)) + " specs, witnesses verified, detect_cayley consistent";
  return o;
}

Outcome c4() {
  Outcome o;
  Caps caps;
  std::size_t triangles = 0;
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {1, 3}}) {
    const auto c = certify_counterexample(CounterexampleKind::ex32, m, n, caps);
    const std::string tag = "ex32(" + std::to_string(m) + "," + std::to_string(n) + ")";
    o.require(c.separated.has_value(), tag + " not certified non-VT");
    if (c.separated) o.require(recheck_certificate(separation_json(c.graph, *c.separated)).has_value(), tag + " separation");
    const auto& g = *c.spec.group();
    const auto adj = oracle::gc_adjacency(g, c.spec.alpha().images(), c.spec.set().elements());
    const int N = g.order();
    for (int a = 0; a < N; ++a)
      for (int b = a + 1; b < N; ++b)
        for (int d = b + 1; d < N; ++d)
          if (adj[a][b] && adj[a][d] && adj[b][d]) {
            ++triangles;
            o.require(g.mul(a, a) == 0 || g.mul(b, b) == 0 || g.mul(d, d) == 0, tag + " triangle without 2x = 0");
          }
  }
  for (int k : {1, 2}) {
    const auto c = certify_counterexample(CounterexampleKind::ex33, k, 0, caps);
    const std::string tag = "ex33(" + std::to_string(k) + ")";
    o.require(c.separated.has_value(), tag + " not certified non-VT");
    if (c.separated) o.require(recheck_certificate(separation_json(c.graph, *c.separated)).has_value(), tag + " separation");
    const auto& g = *c.spec.group();
    const int q = 2 * k + 1;
    const auto adj = oracle::gc_adjacency(g, c.spec.alpha().images(), c.spec.set().elements());
    auto at = [&](int x, int y, int z) { return g.from_coordinates(std::vector<int>{x, y, ((z % q) + q) % q}); };
    const int o0 = at(0, 0, 0);
    bool zero_free = true;
    for (int a = 0; a < g.order(); ++a)
      for (int b = 0; b < g.order(); ++b)
        if (adj[o0][a] && adj[o0][b] && adj[a][b]) zero_free = false;
    o.require(zero_free, tag + " (0,0,0) lies on a triangle");
    const int p1 = at(0, 0, k), p2 = at(1, 0, -k), p3 = at(0, 1, k + 1);
    o.require(adj[p1][p2] && adj[p2][p3] && adj[p1][p3], tag + " (0,0,k),(1,0,-k),(0,1,k+1) is not a triangle");
  }
  if (o.ok) o.detail = "5 graphs certified, " + std::to_string(triangles) + " ex32 triangles checked";
  return o;
}

Outcome c5() {
  Outcome o;
  const auto reports = run_theorem("thm-3.5", with_max(24));
  all_verified(reports, o, "thm-3.5");
  std::size_t abelian = 0;
  for (const auto& d : group_catalog(24)) abelian += make_group(d)->is_abelian();
  o.require(reports.size() == abelian, "one report per Abelian group");
  std::map<std::string, int> branches;
  for (const auto& r : reports) {
    const auto b = r.certificate.value("branch", std::string());
    ++branches[b];
    // independent: every element of order <= 2 gives elementary, at most one involution gives cyclic Sylow 2
    auto g = make_group(r.instance);
    int involutions = 0;
    bool elementary = true;
    for (int x = 0; x < g->order(); ++x) {
      int ord = 1;
      for (int y = x; y != 0; y = g->mul(y, x)) ++ord;
      if (ord > 2) elementary = false;
      involutions += ord == 2;
    }
    const std::string expect = elementary ? "elementary_abelian_2" : involutions <= 1 ? "cyclic_sylow_2" : "neither";
    o.require(b == expect, r.instance + ": branch " + b + ", expected " + expect);
    if (b == "neither") o.require(r.certificate.contains("separation"), r.instance + " lacks a non-VT certificate");
  }
  if (o.ok) {
    std::ostringstream s;
    s << abelian << " groups:";
    for (const auto& [b, n] : branches) s << " " << b << "=" << n;
    o.detail = s.str();
  }
  return o;
}

Outcome c6() {
  Outcome o;
  std::uint64_t n = 0;
  for (const char* id : {"prop-5.1", "cor-5.2", "prop-5.3", "cor-5.4"}) {
    const auto r = run_theorem(id, with_max(12));
    all_verified(r, o, id);
    n += instances(r);
  }
  if (o.ok) o.detail = std::to_string(n) + " instances over four results";
  return o;
}

Graph random_graph(int n, double p, std::mt19937_64& rng) {
  Graph g(n);
  std::bernoulli_distribution coin(p);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

Outcome c7() {
  Outcome o;
  std::mt19937_64 rng(99);
  std::vector<Graph> small{cycle_graph(4), complete_graph(4), edgeless_graph(5), cycle_graph(7),
                           lexicographic_product(complete_graph(2), edgeless_graph(3)), petersen_graph()};
  small.pop_back();
  for (int i = 0; i < 30; ++i) small.push_back(random_graph(4 + i % 5, 0.15 + 0.1 * (i % 7), rng));
  for (const auto& g : small)
    o.require(automorphism_group(g).order == oracle::automorphism_count(g), "|Aut| differs from brute force");

  std::size_t sets = 0;
  for (const auto& d : group_catalog(12)) {
    auto g = make_group(d);
    for (const auto& alpha : enumerate_involutory_automorphisms(g)) {
      std::vector<std::vector<Element>> got;
      for (const auto& s : collect_connection_sets(alpha)) got.push_back(s.set().elements());
      std::sort(got.begin(), got.end());
      o.require(got == oracle::valid_sets_by_power_set(*g, alpha.images()), d.to_string() + ": enumeration differs");
      sets += got.size();
    }
  }

  auto fixtures = small;
  fixtures.push_back(petersen_graph());
  fixtures.push_back(build_gc_graph(build_counterexample(CounterexampleKind::ex32, 1, 2)));
  fixtures.push_back(build_gc_graph(build_counterexample(CounterexampleKind::ex33, 1)));
  for (const auto& g : fixtures) {
    const auto base = canonical_form(g).fingerprint;
    for (int i = 0; i < 100; ++i)
      o.require(canonical_form(relabel(g, oracle::random_permutation(g.order(), rng))).fingerprint == base,
                "fingerprint changed under relabeling");
  }
  if (o.ok)
    o.detail = std::to_string(small.size()) + " Aut orders, " + std::to_string(sets) + " connection sets, " +
               std::to_string(fixtures.size()) + " x 100 relabelings";
  return o;
}

Outcome c8() {
  Outcome o;
  const auto a = stability_check(build_gc_graph(build_counterexample(CounterexampleKind::ex32, 1, 2)));
  const auto b = stability_check(build_gc_graph(build_counterexample(CounterexampleKind::ex33, 1)));
  const auto c = stability_check(cycle_graph(3));
  o.require(a.status == Stability::unstable && a.aut_cover > 2 * a.aut_x, "ex32(1,2) not unstable");
  o.require(b.status == Stability::unstable && b.aut_cover > 2 * b.aut_x, "ex33(1) not unstable");
  o.require(c.status == Stability::stable && c.aut_cover == 2 * c.aut_x, "C3 not stable");
  if (o.ok)
    o.detail = "ex32(1,2) " + a.aut_cover.str() + " > 2*" + a.aut_x.str() + ", ex33(1) " + b.aut_cover.str() +
               " > 2*" + b.aut_x.str() + ", C3 " + c.aut_cover.str() + " = 2*" + c.aut_x.str();
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome c9() {
  Outcome o;
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "gcg_acceptance";
  fs::create_directories(dir);
  RunConfig one;
  one.max_order = 8;
  one.out_path = (dir / "one.jsonl").string();
  RunConfig four = one;
  four.jobs = 4;
  four.out_path = (dir / "four.jsonl").string();
  for (const auto& c : {one, four}) {
    fs::remove(c.out_path);
    fs::remove(c.out_path + ".journal");
  }
  const auto s1 = run_census(one);
  const auto s4 = run_census(four);
  o.require(slurp(one.out_path) == slurp(four.out_path), "catalogs differ between 1 and 4 workers");
  std::size_t naive = 0;
  for (const auto& d : group_catalog(8)) {
    auto g = make_group(d);
    for (const auto& a : oracle::involutory_automorphisms(*g)) naive += oracle::valid_sets_by_power_set(*g, a).size();
  }
  o.require(s1.records == naive, "record count " + std::to_string(s1.records) + " != " + std::to_string(naive));
  o.require(s1.contradictions == 0 && s4.contradictions == 0, "census contradicts a proven result");
  if (o.ok) o.detail = std::to_string(s1.records) + " records, byte-identical, 0 contradictions";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 = no time limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Fix/omega product sweep, |G| <= 16", 5, c1},
      {2, "dihedralization of the inversion on Z2,Z4,Z8,Z6,Z12,Z20", 30, c2},
      {3, "order 2p: Z_2p and D_2p, p in {2,3,5}", 60, c3},
      {4, "counterexamples ex32/ex33", 10, c4},
      {5, "inversion dichotomy, Abelian |G| <= 24", 180, c5},
      {6, "kernel, unworthy and multipartite results, |G| <= 12", 60, c6},
      {7, "oracle equivalences", 0, c7},
      {8, "stability of ex32(1,2), ex33(1), C3", 10, c8},
      {9, "census determinism and honesty, |G| <= 8", 0, c9},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && s >= c.limit_s) o.require(false, "over time limit");
    if (!o.ok) ++failed;
    char timing[64];
    if (c.limit_s > 0)
      std::snprintf(timing, sizeof timing, "%.2fs < %.0fs", s, c.limit_s);
    else
      std::snprintf(timing, sizeof timing, "%.2fs", s);
    std::printf("criterion %d %s  %-58s [%s] %s\n", c.id, o.ok ? "PASS" : "FAIL", c.name, timing, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
