#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gcg {

// Group elements are dense ids 0..order-1; id 0 is always the identity.
using Element = int;

inline constexpr int kDefaultOrderCap = 256;

// Structural tag of a group. The ASCII form is
//   Z<n> | D<2n> | A4 | Dih(<desc>) | <desc>x<desc>x...
// Table is reserved for groups built from a raw multiplication table (for
// example a regular subgroup found by search) and has no parseable form.
struct Descriptor {
  enum class Kind { Cyclic, Dihedral, Product, Dih, A4, Table };

  Kind kind = Kind::Cyclic;
  int order = 1;
  std::vector<Descriptor> factors;  // Product: the factors; Dih: the inner group.

  std::string to_string() const;
  friend bool operator==(const Descriptor&, const Descriptor&) = default;
};

// Throws InvalidInput on malformed text.
Descriptor parse_descriptor(std::string_view text);

class FiniteGroup {
 public:
  // Validates the table (identity row/column, Latin square, inverses, and
  // associativity when order <= 64). Throws InvalidInput on failure.
  FiniteGroup(Descriptor descriptor, std::vector<Element> table,
              std::vector<std::string> names, std::vector<int> radices = {});

  int order() const { return order_; }
  Element mul(Element a, Element b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  Element inv(Element a) const { return inv_[a]; }
  Element pow(Element a, long long k) const;
  int element_order(Element a) const { return element_order_[a]; }
  bool is_abelian() const { return abelian_; }

  const Descriptor& descriptor() const { return descriptor_; }
  const std::string& name(Element a) const { return names_[a]; }
  std::optional<Element> find(std::string_view name) const;

  // Mixed-radix coordinates. For a direct product the radices are the factor
  // orders and coordinate i is the local id in factor i (first factor most
  // significant). Any other group has the single radix {order}.
  std::span<const int> radices() const { return radices_; }
  std::vector<int> coordinates(Element a) const;
  Element from_coordinates(std::span<const int> coords) const;

  // A small generating set, chosen greedily by decreasing element order.
  const std::vector<Element>& generators() const { return generators_; }

  // Closure of `seeds` under multiplication.
  std::vector<Element> span_of(std::span<const Element> seeds) const;

 private:
  Descriptor descriptor_;
  int order_;
  std::vector<Element> table_;
  std::vector<Element> inv_;
  std::vector<int> element_order_;
  std::vector<std::string> names_;
  std::vector<int> radices_;
  std::vector<Element> generators_;
  bool abelian_ = true;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Element ordering: lexicographic over descriptor coordinates. Dihedral D<2n>
// lists r^0..r^{n-1} then t r^0..t r^{n-1}. Dih(A) lists (a,0) for a in A then
// (a,1), so Dih(Z<n>) and D<2n> have identical tables.
// Throws InvalidInput on bad descriptors and CapExceeded above `cap`.
GroupPtr make_group(std::string_view descriptor, int cap = kDefaultOrderCap);
GroupPtr make_group(const Descriptor& descriptor, int cap = kDefaultOrderCap);

// Dih(A) = A x| Z2 with Z2 acting by inversion:
//   (g1,i)(g2,0) = (g1 g2, i),  (g1,i)(g2,1) = (g1^-1 g2, i+1).
// Throws InvalidInput when `inner` is not Abelian.
GroupPtr make_generalized_dihedral(const GroupPtr& inner, int cap = kDefaultOrderCap);

GroupPtr make_direct_product(std::span<const GroupPtr> factors, int cap = kDefaultOrderCap);

// Wraps a raw table; descriptor kind Table.
GroupPtr make_group_from_table(std::vector<Element> table, std::vector<std::string> names);

// Structural queries answered from the table.
bool is_elementary_abelian_2(const FiniteGroup& g);
// Elements whose order is a power of two (the Sylow 2-subgroup when Abelian).
std::vector<Element> two_elements(const FiniteGroup& g);
std::vector<Element> odd_order_elements(const FiniteGroup& g);
// Locates a maximal-order 2-element and checks its span holds every 2-element.
bool sylow2_is_cyclic(const FiniteGroup& g);

// Builtin catalog up to `max_order`, sorted by (order, descriptor string):
// cyclic groups, non-cyclic Abelian groups in invariant-factor form,
// dihedral groups D<2n> for n >= 3, A4, and Dih(A) for non-cyclic Abelian A
// of exponent > 2.
std::vector<Descriptor> group_catalog(int max_order);

}  // namespace gcg
