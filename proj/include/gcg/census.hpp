#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcg/caps.hpp"
#include "gcg/gc_spec.hpp"

namespace gcg {

struct RunConfig {
  int max_order = 8;
  Caps caps;
  int jobs = 1;
  std::string out_path;                  // JSONL catalog; a journal lives next to it while running
  std::optional<std::string> group;      // restrict to one group
  std::optional<int> alpha_index;        // restrict to one involution (by enumeration index)
  bool representatives_only = false;     // one alpha per Aut(G)-conjugacy class
  bool nonempty_only = false;
  bool connected_only = false;

  void validate() const;  // throws InvalidInput
};

// Flags that depend on a search hold "unknown" when a cap stopped it.
struct CensusRecord {
  std::string group;
  int catalog_position = 0;
  int alpha_index = 0;
  std::vector<Element> alpha;
  std::vector<Element> set;
  std::string fingerprint;  // canonical graph6, or "unknown"
  bool connected = false;
  bool bipartite = false;
  std::optional<int> degree;
  std::string vertex_transitive;  // true | false | unknown
  std::string cayley;             // cayley | not_cayley | unknown
  bool unworthy = false;          // two distinct vertices with equal neighborhoods
  int kernel_order = 1;
  std::string stability;          // stable | unstable | not_applicable | unknown
  std::string triangle_hash;      // FNV-1a over the sorted per-vertex triangle counts
  std::string note;

  nlohmann::json to_json() const;
  static CensusRecord from_json(const nlohmann::json& j);
  std::string key() const;  // group position, alpha index, S, zero padded for sorting
};

CensusRecord analyze_record(const GCSpec& spec, int catalog_position, int alpha_index, const Caps& caps);

// Non-empty when the record contradicts one of the proven results (order 2p,
// identity alpha, inversion on Abelian groups with elementary or cyclic
// Sylow 2-subgroup, and the twin/kernel law).
std::optional<std::string> census_contradiction(const CensusRecord& r);

struct CensusSummary {
  std::uint64_t records = 0;
  std::uint64_t resumed = 0;  // records taken from an existing journal
  std::uint64_t unknown = 0;  // records with at least one unknown flag
  std::uint64_t contradictions = 0;
};

// Writes the sorted catalog to config.out_path. Resumes from the journal if
// a previous run was interrupted; removes it on success.
CensusSummary run_census(const RunConfig& config);

// Same records, in memory and sorted; no files.
std::vector<CensusRecord> census_records(const RunConfig& config);

}  // namespace gcg
