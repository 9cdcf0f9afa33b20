#include "gcg/automorphism.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "gcg/error.hpp"

namespace gcg {

namespace {

bool squares_to_identity(std::span<const Element> images) {
  for (std::size_t a = 0; a < images.size(); ++a)
    if (images[images[a]] != static_cast<Element>(a)) return false;
  return true;
}

void check_cap(const FiniteGroup& g, int cap) {
  if (g.order() > cap)
    throw CapExceeded("group order " + std::to_string(g.order()) + " exceeds cap " + std::to_string(cap));
}

// Generator-image backtracking. Level L assigns the image of generator L and
// re-closes the partial map over the span of generators 0..L, rejecting as
// soon as the map stops being a well-defined injective homomorphism.
class AutomorphismSearch {
 public:
  AutomorphismSearch(const FiniteGroup& g, bool involutions_only)
      : g_(g), gens_(g.generators()), involutions_only_(involutions_only) {}

  std::vector<std::vector<Element>> run() {
    std::vector<Element> gen_images;
    descend(gen_images);
    std::sort(results_.begin(), results_.end());
    return std::move(results_);
  }

 private:
  bool close(const std::vector<Element>& gen_images, std::vector<Element>& img) const {
    const int n = g_.order();
    img.assign(n, -1);
    std::vector<char> used(n, 0);
    img[0] = 0;
    used[0] = 1;
    std::vector<Element> frontier{0};
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const Element a = frontier[i];
      for (std::size_t j = 0; j < gen_images.size(); ++j) {
        const Element b = g_.mul(a, gens_[j]);
        const Element e = g_.mul(img[a], gen_images[j]);
        if (img[b] == -1) {
          if (used[e]) return false;
          img[b] = e;
          used[e] = 1;
          frontier.push_back(b);
        } else if (img[b] != e) {
          return false;
        }
      }
    }
    if (involutions_only_) {
      for (Element a : frontier) {
        const Element b = img[a];
        if (img[b] != -1 && img[b] != a) return false;
      }
    }
    return true;
  }

  void descend(std::vector<Element>& gen_images) {
    const std::size_t level = gen_images.size();
    std::vector<Element> img;
    if (level == gens_.size()) {
      if (!close(gen_images, img)) return;
      if (involutions_only_ && !squares_to_identity(img)) return;
      results_.push_back(std::move(img));
      return;
    }
    const int target_order = g_.element_order(gens_[level]);
    for (Element c = 1; c < g_.order(); ++c) {
      if (g_.element_order(c) != target_order) continue;
      gen_images.push_back(c);
      if (close(gen_images, img)) descend(gen_images);
      gen_images.pop_back();
    }
  }

  const FiniteGroup& g_;
  const std::vector<Element>& gens_;
  bool involutions_only_;
  std::vector<std::vector<Element>> results_;
};

}  // namespace

bool is_homomorphism(const FiniteGroup& g, std::span<const Element> images) {
  const int n = g.order();
  if (images.size() != static_cast<std::size_t>(n) || images[0] != 0) return false;
  std::vector<char> seen(n, 0);
  for (Element e : images) {
    if (e < 0 || e >= n || seen[e]) return false;
    seen[e] = 1;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (images[g.mul(a, b)] != g.mul(images[a], images[b])) return false;
  return true;
}

Automorphism::Automorphism(GroupPtr group, std::vector<Element> images)
    : group_(std::move(group)), images_(std::move(images)) {
  if (!is_homomorphism(*group_, images_)) throw InvalidInput("map is not an automorphism");
  involution_ = squares_to_identity(images_);
}

Automorphism::Automorphism(Trusted, GroupPtr group, std::vector<Element> images)
    : group_(std::move(group)), images_(std::move(images)), involution_(squares_to_identity(images_)) {}

Automorphism Automorphism::identity(const GroupPtr& group) {
  std::vector<Element> img(group->order());
  for (int a = 0; a < group->order(); ++a) img[a] = a;
  return Automorphism(Trusted{}, group, std::move(img));
}

Automorphism Automorphism::inversion(const GroupPtr& group) {
  if (!group->is_abelian()) throw InvalidInput("inversion is an automorphism only of Abelian groups");
  std::vector<Element> img(group->order());
  for (int a = 0; a < group->order(); ++a) img[a] = group->inv(a);
  return Automorphism(Trusted{}, group, std::move(img));
}

Automorphism Automorphism::conjugation(const GroupPtr& group, Element g) {
  std::vector<Element> img(group->order());
  for (int a = 0; a < group->order(); ++a) img[a] = group->mul(group->mul(g, a), group->inv(g));
  return Automorphism(Trusted{}, group, std::move(img));
}

bool Automorphism::is_identity() const {
  for (std::size_t a = 0; a < images_.size(); ++a)
    if (images_[a] != static_cast<Element>(a)) return false;
  return true;
}

Automorphism Automorphism::after(const Automorphism& other) const {
  if (group_ != other.group_) throw InvalidInput("composing automorphisms of different groups");
  std::vector<Element> img(images_.size());
  for (std::size_t a = 0; a < img.size(); ++a) img[a] = images_[other.images_[a]];
  return Automorphism(Trusted{}, group_, std::move(img));
}

Automorphism Automorphism::inverse() const {
  std::vector<Element> img(images_.size());
  for (std::size_t a = 0; a < img.size(); ++a) img[images_[a]] = static_cast<Element>(a);
  return Automorphism(Trusted{}, group_, std::move(img));
}

std::vector<Automorphism> enumerate_automorphisms(const GroupPtr& g, int cap) {
  check_cap(*g, cap);
  std::vector<Automorphism> out;
  for (auto& img : AutomorphismSearch(*g, false).run())
    out.push_back(Automorphism(Automorphism::Trusted{}, g, std::move(img)));
  return out;
}

std::vector<Automorphism> enumerate_involutory_automorphisms(const GroupPtr& g, int cap) {
  check_cap(*g, cap);
  std::vector<Automorphism> out;
  for (auto& img : AutomorphismSearch(*g, true).run())
    out.push_back(Automorphism(Automorphism::Trusted{}, g, std::move(img)));
  return out;
}

std::vector<std::size_t> conjugacy_class_representatives(std::span<const Automorphism> involutions,
                                                         std::span<const Automorphism> all) {
  std::map<std::vector<Element>, std::size_t> index;
  for (std::size_t i = 0; i < involutions.size(); ++i) index.emplace(involutions[i].images(), i);
  std::vector<char> assigned(involutions.size(), 0);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < involutions.size(); ++i) {
    if (assigned[i]) continue;
    reps.push_back(i);
    for (const auto& beta : all) {
      const Automorphism conj = beta.after(involutions[i]).after(beta.inverse());
      if (auto it = index.find(conj.images()); it != index.end()) assigned[it->second] = 1;
    }
  }
  return reps;
}

Subgroup fix_set(const Automorphism& alpha) {
  ElementSet s(alpha.group());
  for (Element a = 0; a < alpha.group()->order(); ++a)
    if (alpha(a) == a) s.insert(a);
  return Subgroup::verified(std::move(s));
}

OmegaSet omega_set(const Automorphism& alpha) {
  const FiniteGroup& g = *alpha.group();
  ElementSet s(alpha.group());
  for (Element a = 0; a < g.order(); ++a) s.insert(g.mul(alpha(a), g.inv(a)));
  const bool sub = is_subgroup(s);
  return OmegaSet{std::move(s), sub};
}

}  // namespace gcg
