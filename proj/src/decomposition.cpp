#include "gcg/decomposition.hpp"

#include <string>

#include "gcg/error.hpp"

namespace gcg {

namespace {

bool is_dihedral_table_group(const FiniteGroup& g) {
  const auto& d = g.descriptor();
  if (d.kind == Descriptor::Kind::Dihedral) return true;
  return d.kind == Descriptor::Kind::Dih && d.factors.front().kind == Descriptor::Kind::Cyclic;
}

}  // namespace

OddAbelianDecomposition decompose_odd_abelian(const Automorphism& alpha) {
  const GroupPtr& gp = alpha.group();
  const FiniteGroup& g = *gp;
  if (g.order() % 2 == 0) throw InvalidInput("odd Abelian decomposition needs odd order");
  if (!g.is_abelian()) throw InvalidInput("odd Abelian decomposition needs an Abelian group");
  if (!alpha.is_involution()) throw InvalidInput("alpha must satisfy alpha^2 = 1");

  Subgroup fixed = fix_set(alpha);
  OmegaSet om = omega_set(alpha);
  auto omega = Subgroup::from_set(om.set);
  if (!omega) throw Error("omega set of an Abelian group is not a subgroup");

  for (Element x : fixed.elements().elements())
    if (x != 0 && omega->contains(x)) throw Error("Fix and omega intersect non-trivially");

  std::vector<std::pair<Element, Element>> split(g.order(), {-1, -1});
  for (Element g1 : fixed.elements().elements())
    for (Element g2 : omega->elements().elements()) {
      auto& slot = split[g.mul(g1, g2)];
      if (slot.first != -1) throw Error("Fix x omega -> G is not injective");
      slot = {g1, g2};
    }
  for (const auto& s : split)
    if (s.first == -1) throw Error("Fix x omega does not cover G");
  // Group isomorphism onto the external product.
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = 0; y < g.order(); ++y) {
      const auto& sx = split[x];
      const auto& sy = split[y];
      const auto& sxy = split[g.mul(x, y)];
      if (sxy.first != g.mul(sx.first, sy.first) || sxy.second != g.mul(sx.second, sy.second))
        throw Error("split map is not a homomorphism");
    }
  return OddAbelianDecomposition{std::move(fixed), *std::move(omega), std::move(split)};
}

CyclicSylowDecomposition decompose_cyclic_sylow(const Automorphism& alpha) {
  const GroupPtr& gp = alpha.group();
  const FiniteGroup& g = *gp;
  if (!g.is_abelian()) throw InvalidInput("cyclic Sylow decomposition needs an Abelian group");
  if (!alpha.is_involution()) throw InvalidInput("alpha must satisfy alpha^2 = 1");
  if (g.order() % 2 != 0) throw InvalidInput("group has trivial Sylow 2-subgroup");
  if (!sylow2_is_cyclic(g)) throw InvalidInput("Sylow 2-subgroup is not cyclic");

  CyclicSylowDecomposition out{
      .h1 = Subgroup::trivial(gp),
      .h2 = Subgroup::trivial(gp),
  };
  int two_part = 1;
  for (int m = g.order(); m % 2 == 0; m /= 2) {
    two_part *= 2;
    ++out.n;
  }
  for (Element c = 0; c < g.order(); ++c)
    if (g.element_order(c) == two_part) {
      out.generator = c;
      break;
    }
  const Element c = out.generator;
  out.a = -1;
  for (int a = 1; a < two_part; a += 2)
    if (g.pow(c, a) == alpha(c)) out.a = a;
  if (out.a < 0) throw Error("alpha does not preserve the Sylow 2-subgroup");
  if ((out.a * out.a) % two_part != 1 % two_part) throw Error("a^2 != 1 mod 2^n");

  const auto odd = odd_order_elements(g);
  ElementSet h(gp, odd);
  const Subgroup fixed = fix_set(alpha);
  const OmegaSet om = omega_set(alpha);
  ElementSet s1(gp), s2(gp);
  for (Element y : odd) {
    if (fixed.contains(y)) s1.insert(y);
    if (om.set.contains(y)) s2.insert(y);
  }
  out.h1 = Subgroup::verified(std::move(s1));
  out.h2 = Subgroup::verified(std::move(s2));
  out.h1_members = out.h1.elements().elements();
  out.h2_members = out.h2.elements().elements();

  const int m1 = out.h1.order(), m2 = out.h2.order();
  if (two_part * m1 * m2 != g.order()) throw Error("Z_{2^n} x H1 x H2 has the wrong order");
  out.embedding.assign(g.order(), -1);
  out.coordinates.assign(g.order(), {-1, -1, -1});
  for (int x = 0; x < two_part; ++x)
    for (int i1 = 0; i1 < m1; ++i1)
      for (int i2 = 0; i2 < m2; ++i2) {
        const Element e = g.mul(g.mul(g.pow(c, x), out.h1_members[i1]), out.h2_members[i2]);
        if (out.coordinates[e][0] != -1) throw Error("embedding is not injective");
        out.embedding[(x * m1 + i1) * m2 + i2] = e;
        out.coordinates[e] = {x, i1, i2};
      }

  // Homomorphism and transported action, both exhaustive.
  std::vector<int> h1_index(g.order(), -1), h2_index(g.order(), -1);
  for (int i = 0; i < m1; ++i) h1_index[out.h1_members[i]] = i;
  for (int i = 0; i < m2; ++i) h2_index[out.h2_members[i]] = i;
  auto at = [&](int x, int i1, int i2) { return out.embedding[(x * m1 + i1) * m2 + i2]; };
  for (Element u = 0; u < g.order(); ++u) {
    const auto [x, i1, i2] = out.coordinates[u];
    const Element moved = at((out.a * x) % two_part, i1, h2_index[g.inv(out.h2_members[i2])]);
    if (alpha(u) != moved) throw Error("alpha does not act as (a x, y1, y2^-1)");
    for (Element v = 0; v < g.order(); ++v) {
      const auto [x2, j1, j2] = out.coordinates[v];
      const Element prod = at((x + x2) % two_part, h1_index[g.mul(out.h1_members[i1], out.h1_members[j1])],
                              h2_index[g.mul(out.h2_members[i2], out.h2_members[j2])]);
      if (prod != g.mul(u, v)) throw Error("embedding is not a homomorphism");
    }
  }
  return out;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<DihedralInvolutionParams> classify_dihedral_involutions(int p) {
  if (p % 2 == 0 || !is_prime(p)) throw InvalidInput(std::to_string(p) + " is not an odd prime");
  std::vector<DihedralInvolutionParams> out;
  out.push_back({p, 1, 0, 0});
  for (int l = 0; l < p; ++l) out.push_back({p, p - 1, l, (l * ((p + 1) / 2)) % p});
  return out;
}

Automorphism to_automorphism(const DihedralInvolutionParams& params, const GroupPtr& d2p) {
  const int p = params.p;
  if (d2p->order() != 2 * p || !is_dihedral_table_group(*d2p))
    throw InvalidInput("expected the dihedral group of order " + std::to_string(2 * p));
  std::vector<Element> img(2 * p);
  for (int i = 0; i < p; ++i) {
    img[i] = (params.k * i) % p;                     // r^i -> r^(k i)
    img[p + i] = p + (params.l + params.k * i) % p;  // t r^i -> t r^l r^(k i)
  }
  return Automorphism(d2p, std::move(img));
}

std::optional<DihedralInvolutionParams> dihedral_params_of(const Automorphism& alpha) {
  const FiniteGroup& g = *alpha.group();
  if (g.order() % 2 != 0 || !is_dihedral_table_group(g) || !alpha.is_involution()) return std::nullopt;
  const int p = g.order() / 2;
  if (p < 3) return std::nullopt;
  const Element r = alpha(1), t = alpha(p);
  if (r >= p || t < p) return std::nullopt;
  DihedralInvolutionParams params{p, r, t - p, ((t - p) * ((p + 1) / 2)) % p};
  return params;
}

}  // namespace gcg
