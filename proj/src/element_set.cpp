#include "gcg/element_set.hpp"

#include <string>

#include "gcg/error.hpp"

namespace gcg {

ElementSet::ElementSet(GroupPtr group) : group_(std::move(group)), bits_(group_->order()) {}

ElementSet::ElementSet(GroupPtr group, std::span<const Element> elements) : ElementSet(std::move(group)) {
  for (Element a : elements) insert(a);
}

void ElementSet::insert(Element a) {
  if (a < 0 || a >= group_->order())
    throw InvalidInput("element id " + std::to_string(a) + " out of range for " +
                       group_->descriptor().to_string());
  bits_.set(a);
}

bool is_subgroup(const ElementSet& s) {
  const FiniteGroup& g = *s.group();
  if (!s.contains(0)) return false;
  const auto elems = s.elements();
  for (Element a : elems) {
    if (!s.contains(g.inv(a))) return false;
    for (Element b : elems)
      if (!s.contains(g.mul(a, b))) return false;
  }
  return true;
}

std::optional<Subgroup> Subgroup::from_set(ElementSet s) {
  if (!is_subgroup(s)) return std::nullopt;
  const FiniteGroup& g = *s.group();
  Bitset covered(g.order());
  std::vector<Element> reps;
  const auto elems = s.elements();
  for (Element x = 0; x < g.order(); ++x) {
    if (covered.test(x)) continue;
    reps.push_back(x);
    for (Element h : elems) covered.set(g.mul(x, h));
  }
  return Subgroup(std::move(s), std::move(reps));
}

Subgroup Subgroup::verified(ElementSet s) {
  auto h = from_set(std::move(s));
  if (!h) throw InvalidInput("element set is not a subgroup");
  return *std::move(h);
}

Subgroup Subgroup::whole(const GroupPtr& g) {
  ElementSet s(g);
  for (Element a = 0; a < g->order(); ++a) s.insert(a);
  return verified(std::move(s));
}

Subgroup Subgroup::trivial(const GroupPtr& g) {
  const Element id[] = {0};
  return verified(ElementSet(g, id));
}

std::vector<std::vector<Element>> Subgroup::left_cosets() const {
  const FiniteGroup& g = *group();
  const auto elems = set_.elements();
  std::vector<std::vector<Element>> out;
  out.reserve(reps_.size());
  for (Element r : reps_) {
    Bitset coset(g.order());
    for (Element h : elems) coset.set(g.mul(r, h));
    out.push_back(coset.to_vector());
  }
  return out;
}

GroupPtr subgroup_as_group(const Subgroup& h, std::vector<Element>* embedding) {
  const FiniteGroup& g = *h.group();
  const auto members = h.elements().elements();
  const int n = static_cast<int>(members.size());
  std::vector<int> local(g.order(), -1);
  for (int i = 0; i < n; ++i) local[members[i]] = i;
  std::vector<Element> table(static_cast<std::size_t>(n) * n);
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) {
    names[i] = g.name(members[i]);
    for (int j = 0; j < n; ++j) table[static_cast<std::size_t>(i) * n + j] = local[g.mul(members[i], members[j])];
  }
  if (embedding) *embedding = members;
  return make_group_from_table(std::move(table), std::move(names));
}

}  // namespace gcg
