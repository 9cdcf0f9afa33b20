#include "gcg/census.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "gcg/automorphism.hpp"
#include "gcg/cayley.hpp"
#include "gcg/decomposition.hpp"
#include "gcg/error.hpp"
#include "gcg/graph_io.hpp"
#include "gcg/symmetry.hpp"

namespace gcg {

namespace {

std::string fnv1a(const std::vector<int>& values) {
  std::uint64_t h = 1469598103934665603ULL;
  for (int v : values) {
    for (int b = 0; b < 4; ++b) {
      h ^= static_cast<std::uint8_t>((static_cast<unsigned>(v) >> (8 * b)) & 0xff);
      h *= 1099511628211ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct WorkItem {
  int position;
  GroupPtr group;
  int alpha_index;
  std::shared_ptr<const ConnectionSetSpace> space;
  std::uint64_t mask;
};

std::vector<WorkItem> plan(const RunConfig& c) {
  std::vector<std::pair<int, GroupPtr>> groups;
  const auto catalog = group_catalog(c.group ? c.caps.max_group_order : c.max_order);
  if (c.group) {
    auto g = make_group(*c.group, c.caps.max_group_order);
    const auto it = std::find(catalog.begin(), catalog.end(), g->descriptor());
    groups.emplace_back(it == catalog.end() ? -1 : static_cast<int>(it - catalog.begin()), g);
  } else {
    for (std::size_t i = 0; i < catalog.size(); ++i)
      groups.emplace_back(static_cast<int>(i), make_group(catalog[i], c.caps.max_group_order));
  }
  std::vector<WorkItem> items;
  for (const auto& [pos, g] : groups) {
    const auto inv = enumerate_involutory_automorphisms(g, c.caps.max_group_order);
    std::vector<std::size_t> chosen;
    if (c.representatives_only) {
      chosen = conjugacy_class_representatives(inv, enumerate_automorphisms(g, c.caps.max_group_order));
    } else {
      for (std::size_t i = 0; i < inv.size(); ++i) chosen.push_back(i);
    }
    for (std::size_t i : chosen) {
      if (c.alpha_index && static_cast<int>(i) != *c.alpha_index) continue;
      auto space = std::make_shared<const ConnectionSetSpace>(inv[i], c.caps.bit_budget);
      for (std::uint64_t mask = 0; mask < space->size(); ++mask)
        items.push_back({pos, g, static_cast<int>(i), space, mask});
    }
    if (c.alpha_index && *c.alpha_index >= static_cast<int>(inv.size()))
      throw InvalidInput("alpha index out of range for " + g->descriptor().to_string());
  }
  return items;
}

std::string key_of(int position, int alpha, const std::vector<Element>& set) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%05d|%05d|", position + 1, alpha);
  std::string k = buf;
  for (Element e : set) {
    std::snprintf(buf, sizeof buf, "%05d,", e);
    k += buf;
  }
  return k;
}

std::optional<CensusRecord> process(const WorkItem& item, const RunConfig& c) {
  const GCSpec spec = item.space->at(item.mask);
  if (c.nonempty_only && spec.set().empty()) return std::nullopt;
  if (c.connected_only && !is_connected(build_gc_graph(spec))) return std::nullopt;
  return analyze_record(spec, item.position, item.alpha_index, c.caps);
}

std::vector<CensusRecord> compute(const RunConfig& c, const std::set<std::string>& done,
                                  const std::function<void(const CensusRecord&)>& sink) {
  const auto items = plan(c);
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (done.empty() || !done.count(key_of(items[i].position, items[i].alpha_index, items[i].space->set_at(items[i].mask).elements())))
      todo.push_back(i);
  }
  std::vector<std::optional<CensusRecord>> results(items.size());
  std::atomic<std::size_t> next{0};
  std::mutex writer;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= todo.size()) return;
      try {
        auto r = process(items[todo[t]], c);
        if (r) {
          std::lock_guard lock(writer);
          sink(*r);
        }
        results[todo[t]] = std::move(r);
      } catch (...) {
        std::lock_guard lock(writer);
        if (!failure) failure = std::current_exception();
        next = todo.size();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < c.jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  std::vector<CensusRecord> out;
  for (auto& r : results)
    if (r) out.push_back(std::move(*r));
  return out;
}

void sort_records(std::vector<CensusRecord>& v) {
  std::sort(v.begin(), v.end(), [](const CensusRecord& a, const CensusRecord& b) { return a.key() < b.key(); });
}

}  // namespace

void RunConfig::validate() const {
  if (max_order < 1) throw InvalidInput("max order must be positive");
  if (max_order > caps.max_group_order) throw CapExceeded("max order exceeds the group order cap");
  if (jobs < 1) throw InvalidInput("worker count must be at least 1");
  if (caps.bit_budget < 1 || caps.search.node_budget < 1 || caps.aut_enumeration_cap < 1)
    throw InvalidInput("caps must be positive");
  if (alpha_index && *alpha_index < 0) throw InvalidInput("alpha index must be non-negative");
}

nlohmann::json CensusRecord::to_json() const {
  nlohmann::json j{{"group", group},
                   {"catalog_position", catalog_position},
                   {"alpha_index", alpha_index},
                   {"alpha", alpha},
                   {"set", set},
                   {"fingerprint", fingerprint},
                   {"connected", connected},
                   {"bipartite", bipartite},
                   {"degree", degree ? nlohmann::json(*degree) : nlohmann::json(nullptr)},
                   {"vertex_transitive", vertex_transitive},
                   {"cayley", cayley},
                   {"unworthy", unworthy},
                   {"kernel_order", kernel_order},
                   {"stability", stability},
                   {"triangle_hash", triangle_hash}};
  if (!note.empty()) j["note"] = note;
  return j;
}

CensusRecord CensusRecord::from_json(const nlohmann::json& j) {
  CensusRecord r;
  r.group = j.at("group");
  r.catalog_position = j.at("catalog_position");
  r.alpha_index = j.at("alpha_index");
  r.alpha = j.at("alpha").get<std::vector<Element>>();
  r.set = j.at("set").get<std::vector<Element>>();
  r.fingerprint = j.at("fingerprint");
  r.connected = j.at("connected");
  r.bipartite = j.at("bipartite");
  if (!j.at("degree").is_null()) r.degree = j.at("degree").get<int>();
  r.vertex_transitive = j.at("vertex_transitive");
  r.cayley = j.at("cayley");
  r.unworthy = j.at("unworthy");
  r.kernel_order = j.at("kernel_order");
  r.stability = j.at("stability");
  r.triangle_hash = j.at("triangle_hash");
  r.note = j.value("note", "");
  return r;
}

std::string CensusRecord::key() const { return key_of(catalog_position, alpha_index, set); }

CensusRecord analyze_record(const GCSpec& spec, int catalog_position, int alpha_index, const Caps& caps) {
  CensusRecord r;
  const FiniteGroup& g = *spec.group();
  r.group = g.descriptor().to_string();
  r.catalog_position = catalog_position;
  r.alpha_index = alpha_index;
  r.alpha = spec.alpha().images();
  r.set = spec.set().elements();
  const Graph x = build_gc_graph(spec);
  r.connected = is_connected(x);
  r.bipartite = is_bipartite(x);
  r.degree = regular_degree(x);
  r.kernel_order = kernel_subgroup(spec).kernel.order();
  for (int u = 0; u < x.order() && !r.unworthy; ++u)
    for (int v = u + 1; v < x.order(); ++v)
      if (x.neighbors(u) == x.neighbors(v)) {
        r.unworthy = true;
        break;
      }
  auto tri = triangle_profile(x);
  std::sort(tri.begin(), tri.end());
  r.triangle_hash = fnv1a(tri);

  std::vector<std::string> notes;
  try {
    r.fingerprint = canonical_form(x, caps.search).fingerprint;
  } catch (const Error& e) {
    r.fingerprint = "unknown";
    notes.push_back(std::string("fingerprint: ") + e.what());
  }
  const auto v = detect_cayley(x, caps.cayley());
  r.cayley = to_string(v.status);
  if (v.status == CayleyStatus::cayley) {
    r.vertex_transitive = "true";
  } else if (v.reason == Refutation::not_vertex_transitive) {
    r.vertex_transitive = "false";
  } else {
    try {
      r.vertex_transitive = is_vertex_transitive(x, caps.search).transitive ? "true" : "false";
    } catch (const Error& e) {
      r.vertex_transitive = "unknown";
      notes.push_back(std::string("vertex transitivity: ") + e.what());
    }
  }
  if (v.status == CayleyStatus::unknown) notes.push_back("cayley: " + v.note);
  try {
    r.stability = to_string(stability_check(x, caps.search).status);
  } catch (const Error& e) {
    r.stability = "unknown";
    notes.push_back(std::string("stability: ") + e.what());
  }
  for (const auto& n : notes) r.note += (r.note.empty() ? "" : "; ") + n;
  return r;
}

std::optional<std::string> census_contradiction(const CensusRecord& r) {
  if (r.unworthy != (r.kernel_order > 1)) return "unworthy disagrees with |K| > 1";
  if (r.cayley == "cayley" && r.vertex_transitive == "false") return "Cayley graph reported not vertex-transitive";
  if (r.cayley != "not_cayley") return std::nullopt;
  auto g = make_group(r.group, std::max<int>(kDefaultOrderCap, static_cast<int>(r.alpha.size())));
  const int n = g->order();
  bool identity = true, inversion = true;
  for (int x = 0; x < n; ++x) {
    identity = identity && r.alpha[x] == x;
    inversion = inversion && r.alpha[x] == g->inv(x);
  }
  if (identity) return "identity alpha gives a Cayley graph by definition";
  if (n % 2 == 0 && is_prime(n / 2)) return "every GC graph of order 2p is Cayley";
  if (g->is_abelian() && inversion && (is_elementary_abelian_2(*g) || sylow2_is_cyclic(*g)))
    return "inversion on this Abelian group gives a Cayley graph";
  return std::nullopt;
}

std::vector<CensusRecord> census_records(const RunConfig& config) {
  config.validate();
  auto out = compute(config, {}, [](const CensusRecord&) {});
  sort_records(out);
  return out;
}

CensusSummary run_census(const RunConfig& config) {
  config.validate();
  if (config.out_path.empty()) throw InvalidInput("census needs an output path");
  namespace fs = std::filesystem;
  const fs::path out(config.out_path);
  const fs::path journal = fs::path(config.out_path + ".journal");

  CensusSummary summary;
  std::vector<CensusRecord> previous;
  std::set<std::string> done;
  if (fs::exists(journal)) {
    std::ifstream in(journal);
    std::string line;
    while (std::getline(in, line)) {
      try {
        auto r = CensusRecord::from_json(nlohmann::json::parse(line));
        if (done.insert(r.key()).second) previous.push_back(std::move(r));
      } catch (const std::exception&) {
        // torn final line from an interrupted run
      }
    }
  }
  summary.resumed = previous.size();

  std::ofstream j(journal, std::ios::app);
  if (!j) throw InvalidInput("cannot write journal " + journal.string());
  auto fresh = compute(config, done, [&](const CensusRecord& r) { j << r.to_json().dump() << '\n' << std::flush; });
  j.close();

  auto all = std::move(previous);
  all.insert(all.end(), std::make_move_iterator(fresh.begin()), std::make_move_iterator(fresh.end()));
  sort_records(all);

  const fs::path tmp = fs::path(config.out_path + ".tmp");
  {
    std::ofstream o(tmp, std::ios::trunc);
    if (!o) throw InvalidInput("cannot write " + tmp.string());
    for (const auto& r : all) o << r.to_json().dump() << '\n';
    if (!o) throw InvalidInput("write failed for " + tmp.string());
  }
  fs::rename(tmp, out);
  fs::remove(journal);

  summary.records = all.size();
  for (const auto& r : all) {
    summary.unknown += r.fingerprint == "unknown" || r.vertex_transitive == "unknown" || r.cayley == "unknown" ||
                       r.stability == "unknown";
    summary.contradictions += census_contradiction(r).has_value();
  }
  return summary;
}

}  // namespace gcg
