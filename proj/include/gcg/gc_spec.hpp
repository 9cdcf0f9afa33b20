#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gcg/automorphism.hpp"
#include "gcg/element_set.hpp"
#include "gcg/graph.hpp"

namespace gcg {

// The three connection-set conditions, each with one violating element when
// it fails:
//   (i)   alpha^2 = 1                     witness g with alpha(alpha(g)) != g
//   (ii)  alpha(x^-1) x not in S          witness x
//   (iii) alpha(S^-1) = S                 witness s in S with alpha(s^-1) not in S
struct ValidationReport {
  bool cond_i = true;
  bool cond_ii = true;
  bool cond_iii = true;
  std::optional<Element> witness_i;
  std::optional<Element> witness_ii;
  std::optional<Element> witness_iii;

  bool valid() const { return cond_i && cond_ii && cond_iii; }
};

ValidationReport validate_connection_set(const Automorphism& alpha, const ElementSet& s);

// (G, alpha, S) with its validation report. Construction never throws on
// invalid input; graph building does.
class GCSpec {
 public:
  GCSpec(Automorphism alpha, ElementSet set);

  const GroupPtr& group() const { return alpha_.group(); }
  const Automorphism& alpha() const { return alpha_; }
  const ElementSet& set() const { return set_; }
  const ValidationReport& report() const { return report_; }
  bool valid() const { return report_.valid(); }

 private:
  Automorphism alpha_;
  ElementSet set_;
  ValidationReport report_;
};

// GC(G, S, alpha) on vertex set G: x ~ alpha(x) s for s in S. Vertices carry
// the group's element names. Throws InvalidSpec unless spec.valid().
Graph build_gc_graph(const GCSpec& spec);

// Cay(G, S): x ~ x s. Throws InvalidSpec unless 1 not in S and S = S^-1.
Graph cayley_graph(const GroupPtr& group, const ElementSet& s);

struct EnumerationOptions {
  bool nonempty_only = false;
  bool connected_only = false;
  bool up_to_complement = false;  // keep S only when mask <= complement mask
  int bit_budget = 24;
};

// Every valid S is a union of orbits of the involution s -> alpha(s^-1) on
// G minus omega(G). Orbits are sorted internally and ordered by smallest id.
class ConnectionSetSpace {
 public:
  // Throws InvalidInput unless alpha is an involution, CapExceeded when the
  // orbit count is above `bit_budget`.
  explicit ConnectionSetSpace(const Automorphism& alpha, int bit_budget = 24);

  const std::vector<std::vector<Element>>& orbits() const { return orbits_; }
  int orbit_count() const { return static_cast<int>(orbits_.size()); }
  std::uint64_t size() const { return std::uint64_t{1} << orbits_.size(); }
  // Bit i of `mask` selects orbit i.
  GCSpec at(std::uint64_t mask) const;
  ElementSet set_at(std::uint64_t mask) const;

 private:
  Automorphism alpha_;
  std::vector<std::vector<Element>> orbits_;
};

// Streams the filtered specs in increasing mask order. Use
// ConnectionSetSpace::at directly to split the mask range across workers.
void enumerate_connection_sets(const Automorphism& alpha, const EnumerationOptions& options,
                               const std::function<void(const GCSpec&)>& sink);
std::vector<GCSpec> collect_connection_sets(const Automorphism& alpha, const EnumerationOptions& options = {});

// K = {g | alpha(g) S = S} with its left cosets in order of smallest element.
struct KernelSubgroup {
  Subgroup kernel;
  std::vector<std::vector<Element>> cosets;
};

KernelSubgroup kernel_subgroup(const GCSpec& spec);

// X_K on the left cosets of K: two cosets are adjacent iff some cross pair is
// adjacent in X. Throws InvalidInput when the orders do not match.
Graph quotient_by_kernel(const Graph& x, const KernelSubgroup& k);

}  // namespace gcg
