#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gcg/automorphism.hpp"
#include "gcg/caps.hpp"
#include "gcg/cayley.hpp"
#include "gcg/decomposition.hpp"
#include "gcg/gc_spec.hpp"
#include "gcg/graph.hpp"
#include "gcg/symmetry.hpp"

namespace gcg {

enum class Verdict { verified, refuted, skipped };
const char* to_string(Verdict v);

struct TheoremReport {
  std::string theorem_id;
  std::string instance;
  Verdict verdict = Verdict::verified;
  nlohmann::json certificate = nlohmann::json::object();
  std::uint64_t instances = 0;
  double elapsed_ms = 0;
  std::string note;

  nlohmann::json to_json() const;
};

// Serialized graph isomorphism: both graphs as graph6 plus the vertex map.
// Every witness in every certificate has this shape.
nlohmann::json witness_json(const Graph& source, const Graph& target, std::span<const int> map,
                            const std::string& source_name, const std::string& target_name);

// Spec as {group, alpha, set}; table groups carry their table.
nlohmann::json spec_json(const GCSpec& spec);
nlohmann::json group_json(const FiniteGroup& g);

// Walks a certificate and re-checks every witness (graph6 decode plus an
// exhaustive edge check) and every non-transitivity separation (see
// separation_json). Returns the number of items checked, or nullopt if any
// fails.
std::optional<std::size_t> recheck_certificate(const nlohmann::json& certificate, const SearchLimits& limits = {});

// Two vertices in different Aut-orbits. Prefers a separation by refined
// triangle counts, which is checkable without any automorphism search, and
// falls back to the orbit partition.
struct Separation {
  int u = 0, v = 0;
  std::string invariant;  // "refined_triangles" or "aut_orbits"
};
std::optional<Separation> separate_orbits(const Graph& g, const SearchLimits& limits = {});
nlohmann::json separation_json(const Graph& g, const Separation& s);

// ---- Fix, omega and normal forms --------------------------------------------

// phi as an isomorphism GC(G,S,alpha) -> GC(G, phi(S), phi alpha phi^-1).
struct ConjugationResult {
  GCSpec conjugated;
  bool conjugated_valid = false;
  bool witness_ok = false;
};
ConjugationResult verify_conjugation_isomorphism(const GCSpec& spec, const Automorphism& phi);

struct OddAbelianNormalForm {
  GroupPtr g1;  // Fix(alpha)
  GroupPtr g2;  // omega(G)
  std::vector<std::pair<Element, Element>> s_bar;
  Graph x;
  Graph y;
  Permutation map;  // g -> index of (g1, g2) = i1 * |G2| + i2
  bool s_bar_in_shape = false;  // S_bar inside (G1 \ {1}) x G2
  bool s_bar_symmetric = false;
  bool witness_ok = false;
};
// Throws InvalidInput unless G is odd Abelian; InvalidSpec on invalid specs.
OddAbelianNormalForm normal_form_odd_abelian(const GCSpec& spec);

// ---- inversion on Abelian groups --------------------------------------------

struct DihedralizationWitness {
  int n = 0;                      // Sylow 2-subgroup Z_{2^n}
  GroupPtr odd_part;              // G in Z_{2^n} x G
  GroupPtr target;                // Dih(Z_{2^{n-1}} x G)
  ElementSet target_set;          // phi(S)
  Permutation map;
  bool odd_first_coordinates = false;
  bool product_identity = false;  // ((x1,g1),0)^-1 ((x2,g2),1) = ((x1+x2, g1 g2), 1)
  bool witness_ok = false;
  Graph source;
  Graph target_graph;
};
// Requires alpha = inversion on an Abelian group with a non-trivial cyclic
// Sylow 2-subgroup. Throws InvalidInput otherwise, InvalidSpec on invalid S.
DihedralizationWitness dihedralize_inversion(const GCSpec& spec);

enum class CounterexampleKind { ex32, ex33 };

struct CounterexampleCertificate {
  CounterexampleKind kind = CounterexampleKind::ex32;
  int m = 0, n = 0, k = 0;
  GCSpec spec;
  Graph graph;
  std::vector<int> triangles;          // per vertex
  std::optional<Separation> separated;  // set iff certified non-transitive
  bool triangle_claims = false;         // the structural claims about triangles
  std::string detail;
};
// ex32: Z_{2^m} x Z_{2^n} (m >= 1, n >= 2), S = {(1,0),(0,1),(1,1)}.
// ex33: Z2 x Z2 x Z_{2k+1} (k >= 1), S = {(1,0,0),(0,1,0),(1,1,1)}.
// Throws InvalidInput on parameters out of range, CapExceeded above caps.
GCSpec build_counterexample(CounterexampleKind kind, int a, int b = 0, int cap = kDefaultOrderCap);
CounterexampleCertificate certify_counterexample(CounterexampleKind kind, int a, int b, const Caps& caps);

struct ProductLemmaResult {
  GCSpec product;
  bool omega_identity = false;
  bool product_valid = false;
  bool adjacency_identity = false;
  Graph lhs;  // X x Y
  Graph rhs;  // GC(G1 x G2, S1 x S2, alpha)
};
// Throws InvalidSpec unless both specs are valid.
ProductLemmaResult verify_product_lemma(const GCSpec& a, const GCSpec& b, int cap = kDefaultOrderCap);

enum class InversionBranch { elementary, cyclic_sylow, neither };
const char* to_string(InversionBranch b);
InversionBranch classify_inversion_branch(const FiniteGroup& g);

// p -> exponents e_i with G_p = prod Z_{p^e_i}, descending; Abelian only.
std::vector<std::pair<int, std::vector<int>>> primary_type(const FiniteGroup& g);

// Isomorphism from a product of cyclic groups (radices) onto an Abelian
// group, as an image array; nullopt when none exists.
std::optional<std::vector<Element>> abelian_isomorphism(const FiniteGroup& from, const FiniteGroup& to);

// ---- order 2p ---------------------------------------------------------------

struct Order2pWitness {
  int p = 0;
  std::string route;  // cayley-by-definition | dihedralization | reflection-shift | small-case
  GCSpec source;
  GroupPtr target_group;
  ElementSet target_set;
  Permutation map;
  std::optional<DihedralInvolutionParams> params;
  std::vector<int> s_prime;  // S' = {i | t r^i in S}
  int halfshift = 0;         // k'
  bool s_prime_symmetric = false;
  bool witness_ok = false;
};
// Spec on Z_{2p} or D_{2p} (D4 for p = 2).
Order2pWitness order_2p_witness(const GCSpec& spec, const Caps& caps = {});

// ---- twins and the kernel subgroup -----------------------------------------

struct UnworthyResult {
  KernelSubgroup kernel;
  bool coset_law = false;        // twin classes are exactly the left cosets of K
  bool unworthy = false;         // brute force: two distinct vertices share a neighborhood
  bool unworthy_iff_kernel = false;  // unworthy iff |K| > 1
  bool lexicographic_ok = false; // X = X_K[edgeless_|K|] under the coset map
  std::optional<bool> complete_multipartite;  // set when G Abelian and S = G \ omega
  Permutation map;
  Graph x;
  Graph quotient;
};
UnworthyResult verify_unworthy_theory(const GCSpec& spec);

// ---- driver ----------------------------------------------------------------

struct TheoremParams {
  std::optional<int> max_order;
  std::optional<int> p;
  std::optional<int> k;
  std::optional<int> m;
  std::optional<int> n;
  std::optional<std::string> group;
  int certificate_limit = 4;  // witnesses kept inline per report
  Caps caps;
};

const std::vector<std::string>& theorem_ids();
// Throws InvalidInput on unknown ids or out-of-range parameters.
std::vector<TheoremReport> run_theorem(const std::string& id, const TheoremParams& params);

}  // namespace gcg
