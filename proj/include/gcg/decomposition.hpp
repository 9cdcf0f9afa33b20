#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "gcg/automorphism.hpp"
#include "gcg/element_set.hpp"

namespace gcg {

// Internal direct product G = Fix(alpha) x omega(G) for odd Abelian G.
struct OddAbelianDecomposition {
  Subgroup fixed;
  Subgroup omega;
  // split[g] = (g1, g2) with g1 in Fix, g2 in omega, g = g1 g2.
  std::vector<std::pair<Element, Element>> split;
};

// Throws InvalidInput for even order or non-Abelian groups. A certificate
// failure throws Error: it can only mean an implementation bug.
OddAbelianDecomposition decompose_odd_abelian(const Automorphism& alpha);

// G = Z_{2^n} x H1 x H2 with alpha acting as (x, y1, y2) -> (a x, y1, y2^-1).
struct CyclicSylowDecomposition {
  int n = 0;               // Sylow 2-subgroup has order 2^n
  int a = 1;               // alpha(c) = c^a on the cyclic factor
  Element generator = 0;   // c, smallest id of order 2^n
  Subgroup h1;             // Fix(alpha) meet H
  Subgroup h2;             // omega(G) meet H
  std::vector<Element> h1_members, h2_members;
  // embedding[(x * |H1| + i1) * |H2| + i2] = c^x h1_members[i1] h2_members[i2]
  std::vector<Element> embedding;
  // coordinates[g] = (x, i1, i2), the inverse of embedding.
  std::vector<std::array<int, 3>> coordinates;
};

// Throws InvalidInput unless G is Abelian with a non-trivial cyclic Sylow
// 2-subgroup and alpha is an involution.
CyclicSylowDecomposition decompose_cyclic_sylow(const Automorphism& alpha);

// Involution of D_{2p}: alpha(r) = r^k, alpha(t) = t r^l.
struct DihedralInvolutionParams {
  int p = 3;
  int k = 1;          // 1 or p-1
  int l = 0;
  int halfshift = 0;  // k' with l = 2k' (mod p), i.e. l (p+1)/2 mod p

  friend bool operator==(const DihedralInvolutionParams&, const DihedralInvolutionParams&) = default;
};

bool is_prime(int n);

// Identity first, then (k = -1, l = 0..p-1). Throws InvalidInput unless p is
// an odd prime.
std::vector<DihedralInvolutionParams> classify_dihedral_involutions(int p);

// `d2p` must be the dihedral group of order 2p (D<2p> or Dih(Z<p>)).
Automorphism to_automorphism(const DihedralInvolutionParams& params, const GroupPtr& d2p);

// Reads k, l off an involution of D_{2p}; nullopt if alpha is not one.
std::optional<DihedralInvolutionParams> dihedral_params_of(const Automorphism& alpha);

}  // namespace gcg
