#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gcg/census.hpp"
#include "gcg/decomposition.hpp"
#include "gcg/error.hpp"
#include "gcg/graph_io.hpp"
#include "gcg/symmetry.hpp"
#include "oracles.hpp"

using namespace gcg;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "gcg_census_test";
  fs::create_directories(dir);
  auto p = dir / name;
  fs::remove(p);
  fs::remove(p.string() + ".journal");
  return p;
}

Graph rebuild(const CensusRecord& r) {
  auto g = make_group(r.group);
  return build_gc_graph(GCSpec(Automorphism(g, r.alpha), ElementSet(g, r.set)));
}

}  // namespace

TEST_CASE("record count matches the power-set enumerator") {
  RunConfig c;
  c.max_order = 8;
  const auto records = census_records(c);
  std::size_t naive = 0;
  for (const auto& d : group_catalog(8)) {
    auto g = make_group(d);
    for (const auto& alpha : oracle::involutory_automorphisms(*g))
      naive += oracle::valid_sets_by_power_set(*g, alpha).size();
  }
  CHECK(records.size() == naive);
  for (std::size_t i = 1; i < records.size(); ++i) CHECK(records[i - 1].key() < records[i].key());
  for (const auto& r : records) {
    CHECK_FALSE(census_contradiction(r).has_value());
    const Graph x = rebuild(r);
    CHECK(canonical_form(x).fingerprint == r.fingerprint);
    CHECK(from_graph6(to_graph6(x)) == x);
    CHECK(from_json(to_json(x)) == x);
    CHECK(CensusRecord::from_json(r.to_json()).to_json() == r.to_json());
  }
}

TEST_CASE("catalog files are byte-identical across worker counts") {
  RunConfig c;
  c.max_order = 8;
  c.out_path = scratch("one.jsonl").string();
  const auto a = run_census(c);
  RunConfig d = c;
  d.jobs = 4;
  d.out_path = scratch("four.jsonl").string();
  const auto b = run_census(d);
  CHECK(a.records == b.records);
  CHECK(slurp(c.out_path) == slurp(d.out_path));
  CHECK_FALSE(fs::exists(c.out_path + ".journal"));
  CHECK(a.contradictions == 0);
}

TEST_CASE("interrupted runs resume from the journal") {
  RunConfig c;
  c.max_order = 6;
  c.out_path = scratch("full.jsonl").string();
  run_census(c);
  const std::string full = slurp(c.out_path);

  RunConfig r = c;
  r.out_path = scratch("resumed.jsonl").string();
  std::istringstream lines(full);
  std::ofstream journal(r.out_path + ".journal");
  std::string line;
  int kept = 0;
  // keep every other record, then a torn line
  for (int i = 0; std::getline(lines, line); ++i)
    if (i % 2 == 0) {
      journal << line << '\n';
      ++kept;
    }
  journal << R"({"group":"Z)";
  journal.close();
  const auto s = run_census(r);
  CHECK(s.resumed == static_cast<std::uint64_t>(kept));
  CHECK(slurp(r.out_path) == full);
  CHECK_FALSE(fs::exists(r.out_path + ".journal"));
}

TEST_CASE("census facts at small orders") {
  RunConfig c;
  c.max_order = 10;
  for (const auto& r : census_records(c)) {
    auto g = make_group(r.group);
    if (g->order() % 2 == 0 && is_prime(g->order() / 2)) CHECK(r.cayley != "not_cayley");
    CHECK(r.cayley != "unknown");
  }

  RunConfig e;
  e.group = "Z2xZ2xZ3";
  auto g = make_group("Z2xZ2xZ3");
  const auto inv = enumerate_involutory_automorphisms(g);
  const auto it = std::find(inv.begin(), inv.end(), Automorphism::inversion(g));
  REQUIRE(it != inv.end());
  e.alpha_index = static_cast<int>(it - inv.begin());
  int non_vt = 0;
  for (const auto& r : census_records(e)) non_vt += r.vertex_transitive == "false";
  CHECK(non_vt >= 1);
}

TEST_CASE("filters and config errors") {
  RunConfig c;
  c.group = "Z4";
  c.nonempty_only = true;
  CHECK(census_records(c).size() == 6);  // 3 non-empty sets for each of the two involutions
  RunConfig bad;
  bad.jobs = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  RunConfig big;
  big.max_order = 10000;
  CHECK_THROWS_AS(big.validate(), CapExceeded);
  RunConfig nowhere;
  nowhere.max_order = 2;
  nowhere.out_path = "/nonexistent-dir/x.jsonl";
  CHECK_THROWS_AS(run_census(nowhere), InvalidInput);
}
