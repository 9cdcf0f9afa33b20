#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gcg/element_set.hpp"
#include "gcg/group.hpp"

namespace gcg {

// Bijection on group elements respecting multiplication.
class Automorphism {
 public:
  // Throws InvalidInput unless `images` is a bijective homomorphism of `group`.
  Automorphism(GroupPtr group, std::vector<Element> images);

  static Automorphism identity(const GroupPtr& group);
  // x -> x^-1; throws InvalidInput for non-Abelian groups.
  static Automorphism inversion(const GroupPtr& group);
  // x -> g x g^-1.
  static Automorphism conjugation(const GroupPtr& group, Element g);

  const GroupPtr& group() const { return group_; }
  Element operator()(Element a) const { return images_[a]; }
  const std::vector<Element>& images() const { return images_; }
  bool is_involution() const { return involution_; }  // order <= 2
  bool is_identity() const;

  // (this o other)(x) = this(other(x)).
  Automorphism after(const Automorphism& other) const;
  Automorphism inverse() const;

  friend bool operator==(const Automorphism& a, const Automorphism& b) {
    return a.group_ == b.group_ && a.images_ == b.images_;
  }

 private:
  struct Trusted {};
  Automorphism(Trusted, GroupPtr group, std::vector<Element> images);

  GroupPtr group_;
  std::vector<Element> images_;
  bool involution_ = false;

  friend std::vector<Automorphism> enumerate_automorphisms(const GroupPtr&, int);
  friend std::vector<Automorphism> enumerate_involutory_automorphisms(const GroupPtr&, int);
};

// Exhaustive check over all pairs; images[0] must be 0.
bool is_homomorphism(const FiniteGroup& g, std::span<const Element> images);

// All automorphisms, by backtracking over images of the group's generators
// with homomorphism pruning. Sorted lexicographically by image array, so the
// identity is always first. Throws CapExceeded when |G| > cap.
std::vector<Automorphism> enumerate_automorphisms(const GroupPtr& g, int cap = kDefaultOrderCap);

// All automorphisms with alpha^2 = 1 (identity included), same ordering.
// The position in this list is the "alpha index" used by the CLI and catalog.
std::vector<Automorphism> enumerate_involutory_automorphisms(const GroupPtr& g, int cap = kDefaultOrderCap);

// Indices into `involutions` of one representative (the first) per
// Aut(G)-conjugacy class, given the full automorphism list `all`.
std::vector<std::size_t> conjugacy_class_representatives(std::span<const Automorphism> involutions,
                                                         std::span<const Automorphism> all);

// {g | alpha(g) = g}.
Subgroup fix_set(const Automorphism& alpha);

struct OmegaSet {
  ElementSet set;  // {alpha(g) g^-1 | g in G}
  bool is_subgroup = false;
};
OmegaSet omega_set(const Automorphism& alpha);

}  // namespace gcg
