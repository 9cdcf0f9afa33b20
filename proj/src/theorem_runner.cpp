#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>

#include "gcg/error.hpp"
#include "gcg/graph_io.hpp"
#include "gcg/theorems.hpp"

namespace gcg {

namespace {

using Json = nlohmann::json;
using Clock = std::chrono::steady_clock;

struct RunContext {
  const TheoremParams& params;
  std::uint64_t used = 0;
  bool exhausted = false;
};

// Collects one report. take() charges an instance against the sweep budget.
class Acc {
 public:
  Acc(RunContext& ctx, std::string id, std::string instance) : ctx_(ctx), start_(Clock::now()) {
    rep_.theorem_id = std::move(id);
    rep_.instance = std::move(instance);
    rep_.certificate = Json::object();
  }

  bool take() {
    if (ctx_.used >= ctx_.params.caps.sweep_budget) {
      ctx_.exhausted = true;
      return false;
    }
    ++ctx_.used;
    ++rep_.instances;
    return true;
  }

  Json& cert() { return rep_.certificate; }

  void witness(Json w) {
    auto& arr = rep_.certificate["witnesses"];
    if (arr.is_null()) arr = Json::array();
    if (static_cast<int>(arr.size()) < ctx_.params.certificate_limit) arr.push_back(std::move(w));
  }

  void check(bool ok, const std::string& what, Json detail = nullptr) {
    if (ok) return;
    ++failures_;
    auto& arr = rep_.certificate["failures"];
    if (arr.is_null()) arr = Json::array();
    if (arr.size() < 16) arr.push_back({{"what", what}, {"detail", std::move(detail)}});
  }

  void skip(std::string why) { skip_ = std::move(why); }

  TheoremReport finish() {
    rep_.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    if (failures_ > 0) {
      rep_.verdict = Verdict::refuted;
      rep_.note = std::to_string(failures_) + " check(s) failed";
    } else if (!skip_.empty()) {
      rep_.verdict = Verdict::skipped;
      rep_.note = skip_;
    } else if (ctx_.exhausted) {
      rep_.verdict = Verdict::skipped;
      rep_.note = "sweep budget of " + std::to_string(ctx_.params.caps.sweep_budget) +
                  " instances exhausted after " + std::to_string(rep_.instances) + " here";
    }
    rep_.certificate["instances_checked"] = rep_.instances;
    return std::move(rep_);
  }

 private:
  RunContext& ctx_;
  Clock::time_point start_;
  TheoremReport rep_;
  int failures_ = 0;
  std::string skip_;
};

// Runs body; limits turn into skipped, library errors on valid input into
// refutations.
TheoremReport guarded(RunContext& ctx, const std::string& id, const std::string& instance,
                      const std::function<void(Acc&)>& body) {
  Acc acc(ctx, id, instance);
  if (ctx.exhausted) {
    acc.skip("sweep budget exhausted before this instance");
    return acc.finish();
  }
  try {
    body(acc);
  } catch (const CapExceeded& e) {
    acc.skip(std::string("cap exceeded: ") + e.what());
  } catch (const BudgetExceeded& e) {
    acc.skip(std::string("search budget exceeded: ") + e.what());
  } catch (const Error& e) {
    acc.check(false, "unexpected error", e.what());
  }
  return acc.finish();
}

std::vector<GroupPtr> sweep_groups(const TheoremParams& p, int default_max,
                                   const std::function<bool(const FiniteGroup&)>& keep) {
  std::vector<GroupPtr> out;
  if (p.group) {
    auto g = make_group(*p.group, p.caps.max_group_order);
    if (!keep(*g)) throw InvalidInput("group " + *p.group + " is outside this result's hypotheses");
    out.push_back(g);
    return out;
  }
  const int max = p.max_order.value_or(default_max);
  if (max < 1) throw InvalidInput("--max-order must be positive");
  if (max > p.caps.max_group_order) throw CapExceeded("--max-order exceeds the group order cap");
  for (const auto& d : group_catalog(max)) {
    auto g = make_group(d, p.caps.max_group_order);
    if (keep(*g)) out.push_back(g);
  }
  return out;
}

bool any_group(const FiniteGroup&) { return true; }
bool abelian(const FiniteGroup& g) { return g.is_abelian(); }
bool odd_abelian(const FiniteGroup& g) { return g.is_abelian() && g.order() % 2 == 1; }

std::string name_of(const GroupPtr& g) { return g->descriptor().to_string(); }

// Every valid S for alpha, in mask order.
template <class F>
void for_each_spec(Acc& acc, const Automorphism& alpha, int bits, F&& f) {
  ConnectionSetSpace space(alpha, bits);
  for (std::uint64_t mask = 0; mask < space.size(); ++mask) {
    if (!acc.take()) return;
    f(space.at(mask));
  }
}

Json spec_witness(const GCSpec& spec, const Graph& source, const Graph& target, std::span<const int> map,
                  const std::string& target_name) {
  Json w = witness_json(source, target, map, "GC" , target_name);
  w["source_spec"] = spec_json(spec);
  return w;
}

std::vector<int> identity_perm(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

Automorphism a4_transposition_conjugation(const GroupPtr& a4) {
  const auto r = a4->find("(1 2 3)"), v = a4->find("(1 3)(2 4)");
  const auto r2 = a4->find("(1 3 2)"), v2 = a4->find("(1 4)(2 3)");
  if (!r || !v || !r2 || !v2) throw Error("A4 element names are not in cycle notation");
  for (auto& a : enumerate_automorphisms(a4))
    if (a(*r) == *r2 && a(*v) == *v2) return a;
  throw Error("no automorphism of A4 realizes conjugation by (1 2)");
}

// ---- basic structure ----

void prop_2_1(RunContext& ctx, std::vector<TheoremReport>& out) {
  const auto& p = ctx.params;
  for (const auto& g : sweep_groups(p, 8, any_group)) {
    out.push_back(guarded(ctx, "prop-2.1", name_of(g), [&](Acc& acc) {
      const auto all = enumerate_automorphisms(g, p.caps.max_group_order);
      const auto inv = enumerate_involutory_automorphisms(g, p.caps.max_group_order);
      for (const auto& alpha : inv)
        for (const auto& phi : all)
          for_each_spec(acc, alpha, p.caps.bit_budget, [&](const GCSpec& spec) {
            const auto r = verify_conjugation_isomorphism(spec, phi);
            acc.check(r.conjugated_valid && r.witness_ok, "conjugated spec", spec_json(spec));
            if (r.witness_ok && !phi.is_identity() && !spec.set().empty())
              acc.witness(spec_witness(spec, build_gc_graph(spec), build_gc_graph(r.conjugated), phi.images(),
                                       "conjugated GC"));
          });
      acc.cert()["automorphisms"] = all.size();
      acc.cert()["involutions"] = inv.size();
    }));
  }
  if (p.group) return;
  out.push_back(guarded(ctx, "prop-2.1", "D6, alpha(k=-1,l=0), phi = conjugation by r", [&](Acc& acc) {
    auto d6 = make_group("D6");
    auto alpha = to_automorphism(DihedralInvolutionParams{3, 2, 0, 0}, d6);
    auto phi = Automorphism::conjugation(d6, 1);
    GCSpec spec(alpha, ElementSet(d6, std::vector<Element>{3}));
    acc.take();
    auto r = verify_conjugation_isomorphism(spec, phi);
    const auto params = dihedral_params_of(r.conjugated.alpha());
    acc.check(r.conjugated_valid && r.witness_ok, "conjugation witness");
    acc.check(params && params->l != 0, "conjugated alpha has l' != 0");
    if (params) acc.cert()["conjugated"] = {{"k", params->k}, {"l", params->l}};
    acc.witness(spec_witness(spec, build_gc_graph(spec), build_gc_graph(r.conjugated), phi.images(), "conjugated GC"));
  }));
}

void prop_2_2(RunContext& ctx, std::vector<TheoremReport>& out) {
  const auto& p = ctx.params;
  for (const auto& g : sweep_groups(p, 64, any_group)) {
    out.push_back(guarded(ctx, "prop-2.2", name_of(g), [&](Acc& acc) {
      for (const auto& a : enumerate_involutory_automorphisms(g, p.caps.max_group_order)) {
        if (!acc.take()) return;
        const auto fix = fix_set(a);
        const auto om = omega_set(a);
        acc.check(is_subgroup(fix.elements()), "Fix is a subgroup", a.images());
        if (g->is_abelian()) acc.check(om.is_subgroup && is_subgroup(om.set), "omega is a subgroup", a.images());
        for (Element x : om.set.elements()) acc.check(a(x) == g->inv(x), "alpha inverts omega", a.images());
      }
    }));
  }
  if (p.group) return;
  out.push_back(guarded(ctx, "prop-2.2", "A4, conjugation by (1 2)", [&](Acc& acc) {
    auto a4 = make_group("A4");
    acc.take();
    const auto a = a4_transposition_conjugation(a4);
    const auto om = omega_set(a);
    const auto fix = fix_set(a);
    std::vector<std::string> om_names, fix_names;
    for (Element x : om.set.elements()) om_names.push_back(a4->name(x));
    for (Element x : fix.elements().elements()) fix_names.push_back(a4->name(x));
    acc.check(a.is_involution(), "involution");
    acc.check(!om.is_subgroup && !is_subgroup(om.set), "omega is not a subgroup");
    acc.check(om.set.size() == 6 && fix.order() == 2, "|omega| = 6, |Fix| = 2");
    acc.cert()["omega"] = om_names;
    acc.cert()["fix"] = fix_names;
  }));
}

void lemma_2_3(RunContext& ctx, std::vector<TheoremReport>& out) {
  const auto& p = ctx.params;
  for (const auto& g : sweep_groups(p, 16, any_group)) {
    out.push_back(guarded(ctx, "lemma-2.3", name_of(g), [&](Acc& acc) {
      Json rows = Json::array();
      int index = 0;
      for (const auto& a : enumerate_involutory_automorphisms(g, p.caps.max_group_order)) {
        if (!acc.take()) break;
        const int f = fix_set(a).order();
        const int o = omega_set(a).set.size();
        acc.check(static_cast<long long>(f) * o == g->order(), "|Fix| |omega| = |G|", index);
        if (rows.size() < 64) rows.push_back({{"alpha", index}, {"fix", f}, {"omega", o}});
        ++index;
      }
      acc.cert()["order"] = g->order();
      acc.cert()["products"] = rows;
    }));
  }
}

void prop_2_4(RunContext& ctx, std::vector<TheoremReport>& out) {
  const auto& p = ctx.params;
  for (const auto& g : sweep_groups(p, 64, odd_abelian)) {
    out.push_back(guarded(ctx, "prop-2.4", name_of(g), [&](Acc& acc) {
      int index = 0;
      for (const auto& a : enumerate_involutory_automorphisms(g, p.caps.max_group_order)) {
        if (!acc.take()) break;
        const auto d = decompose_odd_abelian(a);
        const auto fix = fix_set(a);
        const auto om = omega_set(a);
        bool ok = d.fixed == fix && d.omega.elements() == om.set;
        for (Element x : d.fixed.elements().elements()) ok = ok && (x == 0 || !d.omega.contains(x));
        for (int x = 0; x < g->order(); ++x) {
          const auto [x1, x2] = d.split[x];
          ok = ok && g->mul(x1, x2) == x && fix.contains(x1) && om.set.contains(x2);
        }
        acc.check(ok, "G = Fix x omega", index);
        if (index < 8)
          acc.cert()["decompositions"].push_back(
              {{"alpha", index}, {"fix", d.fixed.elements().elements()}, {"omega", d.omega.elements().elements()}});
        ++index;
      }
    }));
  }
}

void prop_2_5(RunContext& ctx, std::vector<TheoremReport>& out) {
  const auto& p = ctx.params;
  auto one = [&](Acc& acc, const GCSpec& spec) {
    const auto nf = normal_form_odd_abelian(spec);
    acc.check(nf.witness_ok && nf.s_bar_in_shape && nf.s_bar_symmetric, "normal form", spec_json(spec));
    if (nf.witness_ok && !spec.set().empty()) {
      auto w = spec_witness(spec, nf.x, nf.y, nf.map, "Y");
      w["s_bar"] = nf.s_bar;
      acc.witness(std::move(w));
    }
  };
  for (const auto& g : sweep_groups(p, 15, odd_abelian)) {
    out.push_back(guarded(ctx, "prop-2.5", name_of(g), [&](Acc& acc) {
      for (const auto& a : enumerate_involutory_automorphisms(g, p.caps.max_group_order))
        for_each_spec(acc, a, p.caps.bit_budget, [&](const GCSpec& spec) { one(acc, spec); });
    }));
  }
  if (p.group) return;
  out.push_back(guarded(ctx, "prop-2.5", "Z3xZ5, fix Z3, invert Z5, S = {(+-1,y)}", [&](Acc& acc) {
    auto g = make_group("Z3xZ5");
    std::vector<Element> img(15);
    for (int x = 0; x < 15; ++x) {
      auto c = g->coordinates(x);
      c[1] = (5 - c[1]) % 5;
      img[x] = g->from_coordinates(c);
    }
    ElementSet s(g);
    for (int y = 0; y < 5; ++y) s.insert(g->from_coordinates(std::vector<int>{1, y}));
    const GCSpec literal(Automorphism(g, img), s);
    acc.check(!literal.report().cond_iii, "{(1,y)} alone is not closed under s -> alpha(s^-1)");
    acc.cert()["literal_set_invalid"] = {{"spec", spec_json(literal)},
                                         {"cond_iii_witness", literal.report().witness_iii.value_or(-1)}};
    for (int y = 0; y < 5; ++y) s.insert(g->from_coordinates(std::vector<int>{2, y}));
    GCSpec spec(Automorphism(g, img), s);
    acc.take();
    acc.check(spec.valid(), "spec valid");
    if (spec.valid()) one(acc, spec);
  }));
}

void prop_2_6(RunContext& ctx, std::vector<TheoremReport>& out) {
  const auto& p = ctx.params;
  auto keep = [](const FiniteGroup& g) { return g.is_abelian() && g.order() % 2 == 0 && sylow2_is_cyclic(g); };
  for (const auto& g : sweep_groups(p, 64, keep)) {
    out.push_back(guarded(ctx, "prop-2.6", name_of(g), [&](Acc& acc) {
      int index = 0;
      for (const auto& alpha : enumerate_involutory_automorphisms(g, p.caps.max_group_order)) {
        if (!acc.take()) break;
        const auto d = decompose_cyclic_sylow(alpha);
        const int two_n = 1 << d.n;
        const int half = two_n / 2;
        std::set<int> allowed{1 % two_n, (two_n - 1) % two_n};
        if (d.n >= 3) allowed.insert({(half + 1) % two_n, (half - 1) % two_n});
        acc.check(allowed.count(d.a % two_n) > 0, "a in {+-1, 2^(n-1) +- 1}", index);
        const int n1 = static_cast<int>(d.h1_members.size()), n2 = static_cast<int>(d.h2_members.size());
        acc.check(two_n * n1 * n2 == g->order(), "|G| = 2^n |H1| |H2|", index);
        bool ok = true;
        for (int x = 0; x < two_n; ++x)
          for (int i1 = 0; i1 < n1; ++i1)
            for (int i2 = 0; i2 < n2; ++i2) {
              const Element e = d.embedding[(x * n1 + i1) * n2 + i2];
              const Element want = g->mul(g->mul(g->pow(d.generator, static_cast<long long>(d.a) * x), d.h1_members[i1]),
                                          g->inv(d.h2_members[i2]));
              ok = ok && alpha(e) == want && alpha(d.h1_members[i1]) == d.h1_members[i1];
            }
        acc.check(ok, "alpha acts as (x, y1, y2) -> (a x, y1, y2^-1)", index);
        if (index < 8)
          acc.cert()["decompositions"].push_back({{"alpha", index}, {"n", d.n}, {"a", d.a}, {"h1", d.h1_members},
                                                  {"h2", d.h2_members}});
        ++index;
      }
    }));
  }
}

// ---- inversion and Abelian groups ----

void dihedralization_sweep(Acc& acc, const GroupPtr& g, int bits) {
  for_each_spec(acc, Automorphism::inversion(g), bits, [&](const GCSpec& spec) {
    const auto w = dihedralize_inversion(spec);
    acc.check(w.witness_ok && w.product_identity && w.odd_first_coordinates, "dihedralization", spec_json(spec));
    if (w.witness_ok) {
      auto j = spec_witness(spec, w.source, w.target_graph, w.map, "Cay(" + name_of(w.target) + ")");
      j["target_set"] = w.target_set.elements();
      acc.witness(std::move(j));
    }
  });
}

void thm_3_1(RunContext& ctx, std::vector<TheoremReport>& out) {
  const auto& p = ctx.params;
  auto keep = [](const FiniteGroup& g) { return g.is_abelian() && g.order() % 2 == 0 && sylow2_is_cyclic(g); };
  std::vector<GroupPtr> groups;
  if (p.group || p.max_order) {
    groups = sweep_groups(p, 0, keep);
  } else {
    for (const char* d : {"Z2", "Z4", "Z8", "Z6", "Z12", "Z20"}) groups.push_back(make_group(d));
  }
  for (const auto& g : groups)
    out.push_back(guarded(ctx, "thm-3.1", name_of(g), [&](Acc& acc) { dihedralization_sweep(acc, g, p.caps.bit_budget); }));
}

Json counterexample_json(const CounterexampleCertificate& c) {
  Json j;
  j["spec"] = spec_json(c.spec);
  j["graph6"] = to_graph6(c.graph);
  j["triangle_profile"] = c.triangles;
  j["detail"] = c.detail;
  if (c.separated) j.update(separation_json(c.graph, *c.separated));
  return j;
}

void counterexample(RunContext& ctx, std::vector<TheoremReport>& out, CounterexampleKind kind, int a, int b) {
  const bool e32 = kind == CounterexampleKind::ex32;
  const std::string id = e32 ? "ex-3.2" : "ex-3.3";
  const std::string inst = e32 ? "m=" + std::to_string(a) + ", n=" + std::to_string(b) : "k=" + std::to_string(a);
  out.push_back(guarded(ctx, id, inst, [&](Acc& acc) {
    acc.take();
    const auto c = certify_counterexample(kind, a, b, ctx.params.caps);
    acc.check(c.separated.has_value(), "not vertex-transitive");
    acc.check(c.triangle_claims, "triangle structure", c.detail);
    acc.cert().update(counterexample_json(c));
  }));
}

void ex_3_2(RunContext& ctx, std::vector<TheoremReport>& out) {
  const auto& p = ctx.params;
  if (p.m || p.n) {
    if (!p.m || !p.n) throw InvalidInput("the Z2m x Z2n example needs both --m and --n");
    if (*p.m < 1 || *p.n < 2) throw InvalidInput("the Z2m x Z2n example needs m >= 1 and n >= 2");
    counterexample(ctx, out, CounterexampleKind::ex32, *p.m, *p.n);
    return;
  }
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {1, 3}, {3, 3}})
    counterexample(ctx, out, CounterexampleKind::ex32, m, n);
}

void ex_3_3(RunContext& ctx, std::vector<TheoremReport>& out) {
  const auto& p = ctx.params;
  if (p.k) {
    if (*p.k < 1) throw InvalidInput("the Z2xZ2xZ(2k+1) example needs k >= 1");
    counterexample(ctx, out, CounterexampleKind::ex33, *p.k, 0);
    return;
  }
  for (int k : {1, 2}) counterexample(ctx, out, CounterexampleKind::ex33, k, 0);
}

GCSpec spec_on(const std::string& group, bool inversion, std::vector<Element> s) {
  auto g = make_group(group);
  return GCSpec(inversion ? Automorphism::inversion(g) : Automorphism::identity(g), ElementSet(g, s));
}

void product_case(Acc& acc, const GCSpec& a, const GCSpec& b, int cap, bool expect_non_vt, const SearchLimits& lim) {
  acc.take();
  const auto r = verify_product_lemma(a, b, cap);
  acc.check(r.omega_identity && r.product_valid && r.adjacency_identity, "X x Y = GC(G1 x G2, S1 x S2, alpha)",
            {{"a", spec_json(a)}, {"b", spec_json(b)}});
  if (r.adjacency_identity) {
    auto w = witness_json(r.lhs, r.rhs, identity_perm(r.lhs.order()), "X x Y", "GC(G1 x G2)");
    w["factor_specs"] = {spec_json(a), spec_json(b)};
    acc.witness(std::move(w));
  }
  if (expect_non_vt) {
    const auto sep = separate_orbits(r.rhs, lim);
    acc.check(sep.has_value(), "non-VT x VT product is non-VT");
    if (sep) acc.cert().update(separation_json(r.rhs, *sep));
  }
}

void lemma_3_4(RunContext& ctx, std::vector<TheoremReport>& out) {
  const auto& p = ctx.params;
  const int cap = p.caps.max_group_order;
  out.push_back(guarded(ctx, "lemma-3.4", "Z4/inv/{1,3} x Z1/id/{}", [&](Acc& acc) {
    product_case(acc, spec_on("Z4", true, {1, 3}), spec_on("Z1", false, {}), cap, false, p.caps.search);
  }));
  out.push_back(guarded(ctx, "lemma-3.4", "Z4/inv/{1,3} x Z3/id/{1,2}", [&](Acc& acc) {
    product_case(acc, spec_on("Z4", true, {1, 3}), spec_on("Z3", false, {1, 2}), cap, false, p.caps.search);
  }));
  out.push_back(guarded(ctx, "lemma-3.4", "ex33(1) x Z5/id/{1,2,3,4}", [&](Acc& acc) {
    product_case(acc, build_counterexample(CounterexampleKind::ex33, 1, 0, cap), spec_on("Z5", false, {1, 2, 3, 4}),
                 cap, true, p.caps.search);
  }));
  out.push_back(guarded(ctx, "lemma-3.4", "Z3/inv/{1,2} and Z5/inv/{1,2,3,4}", [&](Acc& acc) {
    for (const auto& s : {spec_on("Z3", true, {1, 2}), spec_on("Z5", true, {1, 2, 3, 4})}) {
      acc.check(!s.valid(), "inversion on an odd group leaves no room for S");
      acc.cert()["invalid_specs"].push_back(
          {{"spec", spec_json(s)}, {"cond_ii_witness", s.report().witness_ii.value_or(-1)}});
    }
    acc.skip("inversion on an odd cyclic group makes omega the whole group, so these specs fail condition (ii); "
             "the identity automorphism (complete graphs) is used instead");
  }));
  out.push_back(guarded(ctx, "lemma-3.4", "all spec pairs on groups of order <= 4", [&](Acc& acc) {
    std::vector<GCSpec> specs;
    for (const auto& d : group_catalog(4)) {
      auto g = make_group(d);
      for (const auto& a : enumerate_involutory_automorphisms(g)) {
        auto all = collect_connection_sets(a);
        specs.insert(specs.end(), all.begin(), all.end());
      }
    }
    for (const auto& a : specs)
      for (const auto& b : specs) product_case(acc, a, b, cap, false, p.caps.search);
  }));
}

struct NeitherPlan {
  std::string kind;  // ex32 or ex33
  int m = 0, n = 0, k = 0;
  std::vector<int> head;  // cyclic factor orders carrying S1
  std::vector<int> rest;  // cyclic factor orders of H
};

NeitherPlan plan_neither(const FiniteGroup& g) {
  const auto type = primary_type(g);
  NeitherPlan plan;
  std::vector<int> two;
  std::vector<std::pair<int, int>> odd;  // (order, prime)
  for (const auto& [prime, exps] : type)
    for (int e : exps) {
      int q = 1;
      for (int t = 0; t < e; ++t) q *= prime;
      if (prime == 2)
        two.push_back(e);
      else
        odd.emplace_back(q, prime);
    }
  std::sort(two.rbegin(), two.rend());
  if (two.size() < 2) throw InvalidInput("Sylow 2-subgroup is cyclic");
  if (two[0] >= 2) {
    plan.kind = "ex32";
    plan.n = two[0];
    plan.m = two[1];
    plan.head = {1 << plan.m, 1 << plan.n};
    for (std::size_t i = 2; i < two.size(); ++i) plan.rest.push_back(1 << two[i]);
    for (auto [q, pr] : odd) plan.rest.push_back(q);
  } else {
    if (odd.empty()) throw InvalidInput("group is an elementary Abelian 2-group");
    std::sort(odd.begin(), odd.end());
    plan.kind = "ex33";
    const int q = odd.back().first;
    plan.k = (q - 1) / 2;
    plan.head = {2, 2, q};
    for (std::size_t i = 2; i < two.size(); ++i) plan.rest.push_back(2);
    for (std::size_t i = 0; i + 1 < odd.size(); ++i) plan.rest.push_back(odd[i].first);
  }
  return plan;
}

void neither_branch(Acc& acc, const GroupPtr& g, const Caps& caps) {
  acc.take();
  const auto plan = plan_neither(*g);
  std::string desc;
  for (int q : plan.head) desc += (desc.empty() ? "Z" : "xZ") + std::to_string(q);
  for (int q : plan.rest) desc += "xZ" + std::to_string(q);
  auto model = make_group(desc, caps.max_group_order);
  const int nh = static_cast<int>(plan.head.size());
  const auto s1 = build_counterexample(plan.kind == "ex32" ? CounterexampleKind::ex32 : CounterexampleKind::ex33,
                                       plan.kind == "ex32" ? plan.m : plan.k, plan.n, caps.max_group_order);
  acc.cert()["construction"] = {{"kind", plan.kind}, {"m", plan.m}, {"n", plan.n}, {"k", plan.k},
                                {"model", desc}, {"complement", plan.rest}};

  auto build_model_set = [&](bool drop_identity) {
    ElementSet s(model);
    for (int x = 0; x < model->order(); ++x) {
      const auto c = model->coordinates(x);
      std::vector<int> head(c.begin(), c.begin() + nh);
      const Element in_head = s1.group()->from_coordinates(head);
      const bool h_trivial = std::all_of(c.begin() + nh, c.end(), [](int v) { return v == 0; });
      if (!s1.set().contains(in_head)) continue;
      if (drop_identity && h_trivial && c.size() > static_cast<std::size_t>(nh)) continue;
      s.insert(x);
    }
    return s;
  };

  std::optional<Separation> sep;
  std::optional<GCSpec> chosen;
  Graph x;
  for (bool drop : {true, false}) {
    GCSpec spec(Automorphism::inversion(model), build_model_set(drop));
    acc.check(spec.valid(), "product spec valid", spec_json(spec));
    if (!spec.valid()) return;
    x = build_gc_graph(spec);
    sep = separate_orbits(x, caps.search);
    if (sep) {
      chosen = spec;
      acc.cert()["complement_set"] = drop ? "H minus identity" : "H";
      break;
    }
  }
  acc.check(sep.has_value(), "neither branch yields a non-VT graph");
  if (!sep) return;

  const auto iso = abelian_isomorphism(*model, *g);
  acc.check(iso.has_value(), "model group is isomorphic to G");
  if (!iso) return;
  ElementSet s(g);
  for (Element e : chosen->set().elements()) s.insert((*iso)[e]);
  GCSpec on_g(Automorphism::inversion(g), s);
  acc.check(on_g.valid(), "transported spec valid");
  if (!on_g.valid()) return;
  const Graph y = build_gc_graph(on_g);
  acc.check(verify_witness(x, y, *iso), "transport is a graph isomorphism");
  const auto sep_g = separate_orbits(y, caps.search);
  acc.check(sep_g.has_value(), "GC(G, S, inversion) is not vertex-transitive");
  acc.cert()["spec"] = spec_json(on_g);
  if (sep_g) acc.cert().update(separation_json(y, *sep_g));
  acc.witness(witness_json(x, y, *iso, "GC(" + desc + ")", "GC(" + name_of(g) + ")"));
}

void thm_3_5(RunContext& ctx, std::vector<TheoremReport>& out) {
  const auto& p = ctx.params;
  for (const auto& g : sweep_groups(p, 24, abelian)) {
    out.push_back(guarded(ctx, "thm-3.5", name_of(g), [&](Acc& acc) {
      // independent branch predicates: all squares trivial; at most one involution
      bool all_square_trivial = true;
      int involutions = 0;
      for (int x = 0; x < g->order(); ++x) {
        all_square_trivial = all_square_trivial && g->mul(x, x) == 0;
        involutions += g->element_order(x) == 2;
      }
      const bool b_elem = all_square_trivial;
      const bool b_cyc = !all_square_trivial && involutions <= 1;
      const bool b_neither = !all_square_trivial && involutions > 1;
      acc.check(int{b_elem} + int{b_cyc} + int{b_neither} == 1, "exactly one branch");
      const auto branch = classify_inversion_branch(*g);
      acc.check((branch == InversionBranch::elementary) == b_elem &&
                    (branch == InversionBranch::cyclic_sylow) == b_cyc &&
                    (branch == InversionBranch::neither) == b_neither,
                "classification agrees with the independent predicates");
      acc.cert()["branch"] = to_string(branch);
      const auto iota = Automorphism::inversion(g);
      switch (branch) {
        case InversionBranch::elementary:
          acc.check(iota.is_identity(), "inversion is the identity");
          for_each_spec(acc, iota, p.caps.bit_budget, [&](const GCSpec& spec) {
            const Graph x = build_gc_graph(spec);
            const Graph c = cayley_graph(g, spec.set());
            acc.check(verify_witness(x, c, identity_perm(g->order())), "GC = Cay", spec_json(spec));
            if (!spec.set().empty()) acc.witness(spec_witness(spec, x, c, identity_perm(g->order()), "Cay(G,S)"));
          });
          break;
        case InversionBranch::cyclic_sylow:
          if (g->order() % 2 == 1) {
            for_each_spec(acc, iota, p.caps.bit_budget, [&](const GCSpec& spec) {
              acc.check(spec.set().empty(), "odd order leaves only S = {}", spec_json(spec));
              const Graph x = build_gc_graph(spec);
              const Graph c = cayley_graph(g, spec.set());
              acc.check(verify_witness(x, c, identity_perm(g->order())), "edgeless = Cay(G, {})");
              acc.witness(spec_witness(spec, x, c, identity_perm(g->order()), "Cay(G,{})"));
            });
          } else {
            dihedralization_sweep(acc, g, p.caps.bit_budget);
          }
          break;
        case InversionBranch::neither:
          neither_branch(acc, g, p.caps);
          break;
      }
    }));
  }
}

// ---- order 2p ----

std::vector<int> primes_param(const TheoremParams& p, std::vector<int> defaults, int min_p) {
  if (!p.p) return defaults;
  if (!is_prime(*p.p) || *p.p < min_p) throw InvalidInput("--p must be a prime >= " + std::to_string(min_p));
  return {*p.p};
}

void lemma_4_1(RunContext& ctx, std::vector<TheoremReport>& out) {
  for (int p : primes_param(ctx.params, {2, 3, 5, 7}, 2)) {
    out.push_back(guarded(ctx, "lemma-4.1", "Z" + std::to_string(2 * p), [&](Acc& acc) {
      acc.take();
      auto g = make_group("Z" + std::to_string(2 * p), ctx.params.caps.max_group_order);
      const auto inv = enumerate_involutory_automorphisms(g);
      acc.check(inv.size() == 2, "exactly two involutory automorphisms");
      acc.check(std::all_of(inv.begin(), inv.end(),
                            [&](const Automorphism& a) { return a.is_identity() || a == Automorphism::inversion(g); }),
                "they are the identity and the inversion");
      for (const auto& a : inv) acc.cert()["involutions"].push_back(a.images());
    }));
  }
}

void lemma_4_2(RunContext& ctx, std::vector<TheoremReport>& out) {
  for (int p : primes_param(ctx.params, {3, 5, 7}, 3)) {
    out.push_back(guarded(ctx, "lemma-4.2", "D" + std::to_string(2 * p), [&](Acc& acc) {
      auto g = make_group("D" + std::to_string(2 * p), ctx.params.caps.max_group_order);
      const auto classes = classify_dihedral_involutions(p);
      const auto inv = enumerate_involutory_automorphisms(g);
      acc.check(classes.size() == inv.size() && inv.size() == static_cast<std::size_t>(p + 1),
                "p + 1 involutory automorphisms");
      std::set<std::vector<Element>> from_table, from_params;
      for (const auto& a : inv) from_table.insert(a.images());
      for (const auto& c : classes) {
        if (!acc.take()) return;
        from_params.insert(to_automorphism(c, g).images());
        acc.check(c.k == 1 || c.k == p - 1, "k = +-1 mod p");
        acc.check((c.l * (c.k + 1)) % p == 0, "l (k+1) = 0 mod p");
        acc.check(c.k != 1 || c.l == 0, "k = 1 forces l = 0");
        acc.check((2 * c.halfshift) % p == c.l % p, "2 k' = l mod p");
        if (c.k == p - 1)
          for (const auto& spec : collect_connection_sets(to_automorphism(c, g)))
            for (Element s : spec.set().elements()) acc.check(s >= p, "S lies among the reflections", s);
        acc.cert()["involutions"].push_back({{"k", c.k}, {"l", c.l}, {"halfshift", c.halfshift}});
      }
      acc.check(from_table == from_params, "classification matches the enumerated involutions");
    }));
  }
}

void thm_4_3(RunContext& ctx, std::vector<TheoremReport>& out) {
  const auto& caps = ctx.params.caps;
  for (int p : primes_param(ctx.params, {2, 3, 5}, 2)) {
    for (const std::string& d : {"Z" + std::to_string(2 * p), "D" + std::to_string(2 * p)}) {
      out.push_back(guarded(ctx, "thm-4.3", d, [&](Acc& acc) {
        auto g = make_group(d, caps.max_group_order);
        std::map<std::string, int> routes;
        for (const auto& alpha : enumerate_involutory_automorphisms(g))
          for_each_spec(acc, alpha, caps.bit_budget, [&](const GCSpec& spec) {
            const auto w = order_2p_witness(spec, caps);
            ++routes[w.route];
            acc.check(w.witness_ok, "order-2p witness", spec_json(spec));
            const Graph x = build_gc_graph(spec);
            const auto v = detect_cayley(x, caps.cayley());
            acc.check(v.status != CayleyStatus::not_cayley, "detect_cayley agrees", spec_json(spec));
            if (w.witness_ok && !spec.set().empty()) {
              auto j = spec_witness(spec, x, cayley_graph(w.target_group, w.target_set), w.map,
                                    "Cay(" + name_of(w.target_group) + ")");
              j["route"] = w.route;
              j["target_set"] = w.target_set.elements();
              if (w.params) j["halfshift"] = w.halfshift;
              acc.witness(std::move(j));
            }
          });
        acc.cert()["routes"] = routes;
      }));
    }
  }
}

// ---- kernel and duplicate neighbourhoods ----

void kernel_results(RunContext& ctx, std::vector<TheoremReport>& out, const std::string& id) {
  const auto& p = ctx.params;
  for (const auto& g : sweep_groups(p, 12, any_group)) {
    out.push_back(guarded(ctx, id, name_of(g), [&](Acc& acc) {
      std::uint64_t unworthy = 0;
      for (const auto& a : enumerate_involutory_automorphisms(g, p.caps.max_group_order))
        for_each_spec(acc, a, p.caps.bit_budget, [&](const GCSpec& spec) {
          const auto r = verify_unworthy_theory(spec);
          const int kn = r.kernel.kernel.order();
          unworthy += kn > 1;
          if (id == "prop-5.1") {
            acc.check(r.coset_law, "twin classes are the cosets of K", spec_json(spec));
          } else if (id == "cor-5.2") {
            acc.check(r.unworthy_iff_kernel, "unworthy iff |K| > 1", spec_json(spec));
          } else {
            acc.check(r.lexicographic_ok, "X = X_K[E_|K|]", spec_json(spec));
            if (r.lexicographic_ok && kn > 1)
              acc.witness(spec_witness(spec, r.x, lexicographic_product(r.quotient, edgeless_graph(kn)), r.map,
                                       "X_K[E" + std::to_string(kn) + "]"));
          }
        });
      acc.cert()["unworthy_specs"] = unworthy;
    }));
  }
}

void cor_5_4(RunContext& ctx, std::vector<TheoremReport>& out) {
  const auto& p = ctx.params;
  for (const auto& g : sweep_groups(p, 12, abelian)) {
    out.push_back(guarded(ctx, "cor-5.4", name_of(g), [&](Acc& acc) {
      for (const auto& a : enumerate_involutory_automorphisms(g, p.caps.max_group_order)) {
        if (!acc.take()) return;
        const auto om = omega_set(a).set;
        ElementSet s(g);
        for (int x = 0; x < g->order(); ++x)
          if (!om.contains(x)) s.insert(x);
        GCSpec spec(a, s);
        acc.check(spec.valid(), "G minus omega is a valid connection set", spec_json(spec));
        if (!spec.valid()) continue;
        const auto r = verify_unworthy_theory(spec);
        const int n = om.size(), m = g->order() / n;
        acc.check(r.complete_multipartite.value_or(false), "X = K_m[E_n]", spec_json(spec));
        if (r.complete_multipartite.value_or(false))
          acc.witness(spec_witness(spec, r.x, lexicographic_product(complete_graph(m), edgeless_graph(n)), r.map,
                                   "K" + std::to_string(m) + "[E" + std::to_string(n) + "]"));
      }
    }));
  }
}

}  // namespace

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids{"prop-2.1", "prop-2.2", "lemma-2.3", "prop-2.4", "prop-2.5", "prop-2.6",
                                            "thm-3.1",  "ex-3.2",   "ex-3.3",    "lemma-3.4", "thm-3.5", "lemma-4.1",
                                            "lemma-4.2", "thm-4.3", "prop-5.1",  "cor-5.2",  "prop-5.3", "cor-5.4"};
  return ids;
}

std::vector<TheoremReport> run_theorem(const std::string& id, const TheoremParams& params) {
  if (params.certificate_limit < 0) throw InvalidInput("certificate limit must be non-negative");
  RunContext ctx{params};
  std::vector<TheoremReport> out;
  if (id == "prop-2.1") prop_2_1(ctx, out);
  else if (id == "prop-2.2") prop_2_2(ctx, out);
  else if (id == "lemma-2.3") lemma_2_3(ctx, out);
  else if (id == "prop-2.4") prop_2_4(ctx, out);
  else if (id == "prop-2.5") prop_2_5(ctx, out);
  else if (id == "prop-2.6") prop_2_6(ctx, out);
  else if (id == "thm-3.1") thm_3_1(ctx, out);
  else if (id == "ex-3.2") ex_3_2(ctx, out);
  else if (id == "ex-3.3") ex_3_3(ctx, out);
  else if (id == "lemma-3.4") lemma_3_4(ctx, out);
  else if (id == "thm-3.5") thm_3_5(ctx, out);
  else if (id == "lemma-4.1") lemma_4_1(ctx, out);
  else if (id == "lemma-4.2") lemma_4_2(ctx, out);
  else if (id == "thm-4.3") thm_4_3(ctx, out);
  else if (id == "prop-5.1" || id == "cor-5.2" || id == "prop-5.3") kernel_results(ctx, out, id);
  else if (id == "cor-5.4") cor_5_4(ctx, out);
  else throw InvalidInput("unknown theorem id '" + id + "'");
  return out;
}

}  // namespace gcg
