#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gcg/bitset.hpp"
#include "gcg/group.hpp"

namespace gcg {

// Subset of a group's elements, stored as a bitset in id order.
class ElementSet {
 public:
  explicit ElementSet(GroupPtr group);
  ElementSet(GroupPtr group, std::span<const Element> elements);

  const GroupPtr& group() const { return group_; }
  const Bitset& bits() const { return bits_; }

  bool contains(Element a) const { return bits_.test(a); }
  void insert(Element a);
  void erase(Element a) { bits_.reset(a); }
  int size() const { return static_cast<int>(bits_.count()); }
  bool empty() const { return bits_.none(); }
  std::vector<Element> elements() const { return bits_.to_vector(); }

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.group_ == b.group_ && a.bits_ == b.bits_;
  }

 private:
  GroupPtr group_;
  Bitset bits_;
};

// Contains the identity and is closed under multiplication and inversion.
bool is_subgroup(const ElementSet& s);

// Subgroup with a closure certificate: the left coset representatives, one
// per coset gH, each the smallest id in its coset.
class Subgroup {
 public:
  // nullopt when `s` is not closed.
  static std::optional<Subgroup> from_set(ElementSet s);
  // Throws InvalidInput when `s` is not closed.
  static Subgroup verified(ElementSet s);
  static Subgroup whole(const GroupPtr& g);
  static Subgroup trivial(const GroupPtr& g);

  const ElementSet& elements() const { return set_; }
  const GroupPtr& group() const { return set_.group(); }
  int order() const { return set_.size(); }
  bool contains(Element a) const { return set_.contains(a); }
  const std::vector<Element>& coset_representatives() const { return reps_; }
  int index() const { return static_cast<int>(reps_.size()); }

  // Left cosets gH in order of their smallest element; each coset sorted.
  std::vector<std::vector<Element>> left_cosets() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.set_ == b.set_; }

 private:
  Subgroup(ElementSet s, std::vector<Element> reps) : set_(std::move(s)), reps_(std::move(reps)) {}

  ElementSet set_;
  std::vector<Element> reps_;
};

// The subgroup as a standalone group whose id i is the i-th smallest member.
// `embedding`, when given, receives that member list.
GroupPtr subgroup_as_group(const Subgroup& h, std::vector<Element>* embedding = nullptr);

}  // namespace gcg
