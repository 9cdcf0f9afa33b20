#include <doctest.h>

#include <set>

#include "gcg/error.hpp"
#include "gcg/graph_io.hpp"
#include "gcg/theorems.hpp"
#include "oracles.hpp"

using namespace gcg;

namespace {

GCSpec spec_on(const std::string& group, bool inversion, std::vector<Element> s) {
  auto g = make_group(group);
  return GCSpec(inversion ? Automorphism::inversion(g) : Automorphism::identity(g), ElementSet(g, s));
}

void expect_all_verified(const std::string& id, const TheoremParams& params = {}) {
  const auto reports = run_theorem(id, params);
  REQUIRE_FALSE(reports.empty());
  for (const auto& r : reports) {
    INFO(r.to_json().dump().substr(0, 2000));
    if (r.verdict == Verdict::skipped) {
      CHECK(!r.note.empty());
      continue;
    }
    CHECK(r.verdict == Verdict::verified);
    CHECK(r.instances > 0);
    CHECK(recheck_certificate(r.certificate).has_value());
  }
}

}  // namespace

TEST_CASE("conjugation isomorphism") {
  auto d6 = make_group("D6");
  auto alpha = to_automorphism(DihedralInvolutionParams{3, 2, 0, 0}, d6);
  GCSpec spec(alpha, ElementSet(d6, std::vector<Element>{3}));
  auto same = verify_conjugation_isomorphism(spec, Automorphism::identity(d6));
  CHECK(same.witness_ok);
  CHECK(same.conjugated.alpha() == alpha);

  auto r = verify_conjugation_isomorphism(spec, Automorphism::conjugation(d6, 1));
  CHECK(r.witness_ok);
  auto params = dihedral_params_of(r.conjugated.alpha());
  REQUIRE(params.has_value());
  CHECK(params->k == 2);
  CHECK(params->l != 0);
  // r (t) r^-1 = t r^-2 = t r
  CHECK(r.conjugated.set().elements() == std::vector<Element>{4});
}

TEST_CASE("odd Abelian normal form") {
  auto z9 = make_group("Z9");
  for (const auto& spec : collect_connection_sets(Automorphism::inversion(z9))) {
    auto nf = normal_form_odd_abelian(spec);
    CHECK(nf.g1->order() == 1);
    CHECK(nf.g2->order() == 9);
    CHECK(nf.witness_ok);
  }
  auto g = make_group("Z3xZ5");
  std::vector<Element> img(15);
  for (int x = 0; x < 15; ++x) {
    auto c = g->coordinates(x);
    c[1] = (5 - c[1]) % 5;
    img[x] = g->from_coordinates(c);
  }
  ElementSet s(g);
  for (int y = 0; y < 5; ++y) s.insert(g->from_coordinates(std::vector<int>{1, y}));
  // {(1,y)} alone is not closed under s -> alpha(s^-1) = (-1, y)
  CHECK_FALSE(GCSpec(Automorphism(g, img), s).report().cond_iii);
  for (int y = 0; y < 5; ++y) s.insert(g->from_coordinates(std::vector<int>{2, y}));
  GCSpec spec(Automorphism(g, img), s);
  REQUIRE(spec.valid());
  auto nf = normal_form_odd_abelian(spec);
  CHECK(nf.g1->order() == 3);
  CHECK(nf.g2->order() == 5);
  CHECK(nf.s_bar.size() == 10);
  CHECK(nf.s_bar_in_shape);
  CHECK(nf.s_bar_symmetric);
  CHECK(nf.witness_ok);

  auto id = spec_on("Z7", false, {1, 6});
  auto nid = normal_form_odd_abelian(id);
  CHECK(nid.g2->order() == 1);
  CHECK(nid.y == cayley_graph(id.group(), id.set()));
  CHECK_THROWS_AS(normal_form_odd_abelian(spec_on("Z4", true, {1, 3})), InvalidInput);
}

TEST_CASE("dihedralization of the inversion") {
  auto k2 = dihedralize_inversion(spec_on("Z2", true, {1}));
  CHECK(k2.witness_ok);
  CHECK(k2.target->order() == 2);
  CHECK(k2.target_graph == complete_graph(2));

  auto c4 = dihedralize_inversion(spec_on("Z4", true, {1, 3}));
  CHECK(c4.witness_ok);
  CHECK(c4.product_identity);
  CHECK(c4.target->descriptor().to_string() == "Dih(Z2)");
  // ((0),1) and ((1),1) are ids 2 and 3
  CHECK(c4.target_set.elements() == std::vector<Element>{2, 3});
  CHECK(c4.source == cycle_graph(4));

  std::size_t n = 0;
  for (const auto& spec : collect_connection_sets(Automorphism::inversion(make_group("Z12")))) {
    auto w = dihedralize_inversion(spec);
    CHECK(w.witness_ok);
    CHECK(w.odd_first_coordinates);
    for (Element t : w.target_set.elements()) CHECK(t >= 6);
    ++n;
  }
  CHECK(n == 64);
  CHECK_THROWS_AS(dihedralize_inversion(spec_on("Z2xZ4", true, {})), InvalidInput);
  CHECK_THROWS_AS(dihedralize_inversion(spec_on("Z4", false, {1, 3})), InvalidInput);
}

TEST_CASE("counterexamples") {
  Caps caps;
  auto a = certify_counterexample(CounterexampleKind::ex32, 1, 2, caps);
  CHECK(a.graph.order() == 8);
  CHECK(regular_degree(a.graph) == 3);
  CHECK(a.separated.has_value());
  CHECK(a.triangle_claims);

  auto b = certify_counterexample(CounterexampleKind::ex33, 1, 0, caps);
  CHECK(b.graph.order() == 12);
  CHECK(regular_degree(b.graph) == 3);
  CHECK(b.separated.has_value());
  CHECK(b.triangle_claims);
  const auto& g = *b.spec.group();
  auto at = [&](int x, int y, int z) { return g.from_coordinates(std::vector<int>{x, y, z}); };
  CHECK(b.triangles[at(0, 0, 0)] == 0);
  CHECK(b.graph.adjacent(at(0, 0, 1), at(1, 0, 2)));
  CHECK(b.graph.adjacent(at(0, 0, 1), at(0, 1, 2)));
  CHECK(b.graph.adjacent(at(1, 0, 2), at(0, 1, 2)));

  auto c = certify_counterexample(CounterexampleKind::ex32, 3, 3, caps);
  const auto& g33 = *c.spec.group();
  CHECK(c.triangles[g33.from_coordinates(std::vector<int>{2, 2})] == 0);
  CHECK(*std::max_element(c.triangles.begin(), c.triangles.end()) > 0);
  CHECK(c.triangle_claims);

  // the separation is checkable without the search engine
  auto j = separation_json(b.graph, *b.separated);
  CHECK(recheck_certificate(j) == 1u);
  j["separation"]["v"] = j["separation"]["u"];
  CHECK_FALSE(recheck_certificate(j).has_value());

  CHECK_THROWS_AS(build_counterexample(CounterexampleKind::ex32, 1, 1), InvalidInput);
  CHECK_THROWS_AS(build_counterexample(CounterexampleKind::ex33, 0), InvalidInput);
  CHECK_THROWS_AS(build_counterexample(CounterexampleKind::ex33, 200), CapExceeded);
}

TEST_CASE("product lemma") {
  auto r = verify_product_lemma(spec_on("Z4", true, {1, 3}), spec_on("Z1", false, {}));
  CHECK(r.adjacency_identity);
  CHECK(is_edgeless(r.lhs));
  CHECK(is_edgeless(r.rhs));
  auto e = verify_product_lemma(spec_on("Z3", false, {}), spec_on("Z2", false, {1}));
  CHECK(is_edgeless(e.lhs));
  CHECK(is_edgeless(e.rhs));

  auto p = verify_product_lemma(spec_on("Z4", true, {1, 3}), spec_on("Z3", false, {1, 2}));
  CHECK(p.omega_identity);
  CHECK(p.adjacency_identity);
  CHECK(p.rhs.order() == 12);

  auto q = verify_product_lemma(build_counterexample(CounterexampleKind::ex33, 1), spec_on("Z5", false, {1, 2, 3, 4}));
  CHECK(q.adjacency_identity);
  CHECK_FALSE(is_vertex_transitive(q.rhs).transitive);
  CHECK_THROWS_AS(verify_product_lemma(spec_on("Z3", true, {1, 2}), spec_on("Z2", false, {1})), InvalidSpec);
}

TEST_CASE("inversion branches and primary types") {
  CHECK(classify_inversion_branch(*make_group("Z2xZ2")) == InversionBranch::elementary);
  CHECK(classify_inversion_branch(*make_group("Z12")) == InversionBranch::cyclic_sylow);
  CHECK(classify_inversion_branch(*make_group("Z2xZ2xZ3")) == InversionBranch::neither);
  CHECK(classify_inversion_branch(*make_group("Z2xZ4")) == InversionBranch::neither);
  CHECK_THROWS_AS(classify_inversion_branch(*make_group("D6")), InvalidInput);

  auto t = primary_type(*make_group("Z2xZ12"));
  REQUIRE(t.size() == 2);
  CHECK(t[0] == std::pair<int, std::vector<int>>{2, {2, 1}});
  CHECK(t[1] == std::pair<int, std::vector<int>>{3, {1}});

  auto from = make_group("Z2xZ2xZ3");
  auto to = make_group("Z2xZ6");
  auto iso = abelian_isomorphism(*from, *to);
  REQUIRE(iso.has_value());
  for (int x = 0; x < 12; ++x)
    for (int y = 0; y < 12; ++y) CHECK((*iso)[from->mul(x, y)] == to->mul((*iso)[x], (*iso)[y]));
  CHECK_FALSE(abelian_isomorphism(*make_group("Z4"), *make_group("Z2xZ2")).has_value());
}

TEST_CASE("order 2p witnesses") {
  auto z6 = order_2p_witness(spec_on("Z6", true, {1, 5}));
  CHECK(z6.route == "dihedralization");
  CHECK(z6.witness_ok);
  CHECK(z6.target_group->descriptor().to_string() == "Dih(Z3)");

  auto d6 = make_group("D6");
  auto m = order_2p_witness(GCSpec(to_automorphism(DihedralInvolutionParams{3, 2, 0, 0}, d6),
                                   ElementSet(d6, std::vector<Element>{3})));
  CHECK(m.route == "reflection-shift");
  CHECK(m.halfshift == 0);
  CHECK(m.target_set.elements() == std::vector<Element>{3});
  CHECK(m.witness_ok);

  auto d10 = make_group("D10");
  DihedralInvolutionParams l4{5, 4, 4, 2};
  auto alpha = to_automorphism(l4, d10);
  REQUIRE(dihedral_params_of(alpha) == l4);
  GCSpec spec(alpha, ElementSet(d10, std::vector<Element>{5 + 0, 5 + 4}));
  REQUIRE(spec.valid());
  auto w = order_2p_witness(spec);
  CHECK(w.halfshift == 2);
  CHECK(w.s_prime_symmetric);
  // t r^-2 = t r^3 (id 8) and t r^2 (id 7)
  CHECK(w.target_set.elements() == std::vector<Element>{7, 8});
  CHECK(w.witness_ok);

  auto klein = make_group("D4");
  for (const auto& a : enumerate_involutory_automorphisms(klein))
    for (const auto& s : collect_connection_sets(a)) CHECK(order_2p_witness(s).witness_ok);
  CHECK_THROWS_AS(order_2p_witness(spec_on("Z8", false, {})), InvalidInput);
}

TEST_CASE("kernel and unworthy theory") {
  auto c4 = verify_unworthy_theory(spec_on("Z4", true, {1, 3}));
  CHECK(c4.kernel.kernel.elements().elements() == std::vector<Element>{0, 2});
  CHECK(c4.unworthy);
  CHECK(c4.lexicographic_ok);
  CHECK(c4.coset_law);
  CHECK(c4.complete_multipartite == true);

  auto c7 = verify_unworthy_theory(spec_on("Z7", false, {1, 6}));
  CHECK(c7.kernel.kernel.order() == 1);
  CHECK_FALSE(c7.unworthy);
  CHECK(c7.unworthy_iff_kernel);
  CHECK(c7.quotient == c7.x);

  auto k33 = verify_unworthy_theory(spec_on("Z6", true, {1, 3, 5}));
  CHECK(k33.kernel.kernel.elements().elements() == std::vector<Element>{0, 2, 4});
  CHECK(k33.complete_multipartite == true);
  CHECK(is_isomorphic(k33.x, lexicographic_product(complete_graph(2), edgeless_graph(3))).has_value());
}

TEST_CASE("certificates are rechecked independently") {
  auto spec = spec_on("Z4", true, {1, 3});
  auto x = build_gc_graph(spec);
  auto good = witness_json(x, lexicographic_product(complete_graph(2), edgeless_graph(2)),
                           std::vector<int>{0, 2, 1, 3}, "X", "K2[E2]");
  CHECK(recheck_certificate(good) == 1u);
  auto bad = good;
  bad["map"] = std::vector<int>{0, 1, 2, 3};
  CHECK_FALSE(recheck_certificate(bad).has_value());
  good["source_spec"] = spec_json(spec);
  CHECK(recheck_certificate(good) == 1u);
  good["source_spec"]["set"] = std::vector<int>{};
  CHECK_FALSE(recheck_certificate(good).has_value());
}

TEST_CASE("every theorem id verifies at default parameters") {
  for (const auto& id : theorem_ids()) {
    if (id == "prop-2.1" || id == "prop-2.2" || id == "thm-3.5") continue;  // timed in the acceptance suite
    INFO(id);
    expect_all_verified(id);
  }
}

TEST_CASE("literal odd-group inversion example is reported as skipped") {
  bool saw = false;
  for (const auto& r : run_theorem("lemma-3.4", {}))
    if (r.verdict == Verdict::skipped) {
      saw = true;
      CHECK(r.certificate["invalid_specs"].size() == 2);
    }
  CHECK(saw);
}

TEST_CASE("sweep budget turns into skipped reports") {
  TheoremParams p;
  p.caps.sweep_budget = 5;
  const auto reports = run_theorem("thm-3.1", p);
  bool skipped = false;
  for (const auto& r : reports) {
    CHECK(r.verdict != Verdict::refuted);
    skipped = skipped || r.verdict == Verdict::skipped;
  }
  CHECK(skipped);
}

TEST_CASE("parameter errors") {
  CHECK_THROWS_AS(run_theorem("thm-9.9", {}), InvalidInput);
  TheoremParams p;
  p.p = 4;
  CHECK_THROWS_AS(run_theorem("thm-4.3", p), InvalidInput);
  TheoremParams q;
  q.group = "D8";
  CHECK_THROWS_AS(run_theorem("prop-2.4", q), InvalidInput);
  TheoremParams k;
  k.k = 0;
  CHECK_THROWS_AS(run_theorem("ex-3.3", k), InvalidInput);
}
