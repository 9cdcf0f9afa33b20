#include "gcg/group.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <string>

#include "gcg/bitset.hpp"
#include "gcg/error.hpp"

namespace gcg {

namespace {

class DescriptorParser {
 public:
  explicit DescriptorParser(std::string_view text) : text_(text) {}

  Descriptor parse() {
    Descriptor d = product();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("bad group descriptor '" + std::string(text_) + "' at offset " +
                       std::to_string(pos_) + ": " + what);
  }

  bool accept(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  int number() {
    std::size_t start = pos_;
    long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1'000'000) fail("number too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    if (text_[start] == '0' && pos_ - start > 1) fail("leading zero");
    return static_cast<int>(v);
  }

  Descriptor product() {
    std::vector<Descriptor> parts;
    parts.push_back(term());
    while (accept("x")) parts.push_back(term());
    if (parts.size() == 1) return parts.front();
    Descriptor d;
    d.kind = Descriptor::Kind::Product;
    d.order = 1;
    for (auto& p : parts) {
      d.order *= p.order;
      if (d.order > 1'000'000) fail("order too large");
    }
    d.factors = std::move(parts);
    return d;
  }

  Descriptor term() {
    Descriptor d;
    if (accept("Dih(")) {
      Descriptor inner = product();
      if (!accept(")")) fail("expected ')'");
      d.kind = Descriptor::Kind::Dih;
      d.order = 2 * inner.order;
      d.factors.push_back(std::move(inner));
    } else if (accept("A4")) {
      d.kind = Descriptor::Kind::A4;
      d.order = 12;
    } else if (accept("Z")) {
      d.kind = Descriptor::Kind::Cyclic;
      d.order = number();
      if (d.order < 1) fail("cyclic order must be positive");
    } else if (accept("D")) {
      d.kind = Descriptor::Kind::Dihedral;
      d.order = number();
      if (d.order < 2 || d.order % 2 != 0) fail("dihedral order must be even and >= 2");
    } else {
      fail("expected Z, D, A4 or Dih(");
    }
    return d;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

GroupPtr cyclic(int n) {
  std::vector<Element> table(static_cast<std::size_t>(n) * n);
  std::vector<std::string> names(n);
  for (int a = 0; a < n; ++a) {
    names[a] = std::to_string(a);
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  }
  Descriptor d{Descriptor::Kind::Cyclic, n, {}};
  return std::make_shared<const FiniteGroup>(d, std::move(table), std::move(names));
}

// r^a -> a, t r^a -> n + a; t r t = r^-1.
GroupPtr dihedral(int order) {
  const int n = order / 2;
  std::vector<Element> table(static_cast<std::size_t>(order) * order);
  std::vector<std::string> names(order);
  for (int a = 0; a < order; ++a) {
    names[a] = (a < n ? "r^" : "tr^") + std::to_string(a % n);
    for (int b = 0; b < order; ++b) {
      const int i = a % n, j = b % n;
      Element c;
      if (a < n && b < n) {
        c = (i + j) % n;
      } else if (a < n) {  // r^i t r^j = t r^(j-i)
        c = n + ((j - i) % n + n) % n;
      } else if (b < n) {  // t r^i r^j
        c = n + (i + j) % n;
      } else {  // t r^i t r^j = r^(j-i)
        c = ((j - i) % n + n) % n;
      }
      table[static_cast<std::size_t>(a) * order + b] = c;
    }
  }
  Descriptor d{Descriptor::Kind::Dihedral, order, {}};
  return std::make_shared<const FiniteGroup>(d, std::move(table), std::move(names));
}

std::string cycle_notation(const std::array<int, 4>& p) {
  std::string out;
  std::array<bool, 4> seen{};
  for (int s = 0; s < 4; ++s) {
    if (seen[s] || p[s] == s) continue;
    out += '(';
    int x = s;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) out += ' ';
      out += std::to_string(x + 1);
      first = false;
      x = p[x];
    }
    out += ')';
  }
  return out.empty() ? "id" : out;
}

// Even permutations of {1,2,3,4} in lexicographic order of their image
// arrays; (ab)(x) = a(b(x)).
GroupPtr alternating4() {
  std::vector<std::array<int, 4>> perms;
  std::array<int, 4> p{0, 1, 2, 3};
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inversions += p[i] > p[j];
    if (inversions % 2 == 0) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const int n = static_cast<int>(perms.size());
  auto index_of = [&](const std::array<int, 4>& q) {
    return static_cast<Element>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<Element> table(static_cast<std::size_t>(n) * n);
  std::vector<std::string> names(n);
  for (int a = 0; a < n; ++a) {
    names[a] = cycle_notation(perms[a]);
    for (int b = 0; b < n; ++b) {
      std::array<int, 4> c{};
      for (int x = 0; x < 4; ++x) c[x] = perms[a][perms[b][x]];
      table[static_cast<std::size_t>(a) * n + b] = index_of(c);
    }
  }
  Descriptor d{Descriptor::Kind::A4, 12, {}};
  return std::make_shared<const FiniteGroup>(d, std::move(table), std::move(names));
}

void check_cap(int order, int cap) {
  if (order > cap)
    throw CapExceeded("group order " + std::to_string(order) + " exceeds cap " + std::to_string(cap));
}

}  // namespace

std::string Descriptor::to_string() const {
  switch (kind) {
    case Kind::Cyclic:
      return "Z" + std::to_string(order);
    case Kind::Dihedral:
      return "D" + std::to_string(order);
    case Kind::A4:
      return "A4";
    case Kind::Dih:
      return "Dih(" + factors.front().to_string() + ")";
    case Kind::Table:
      return "T" + std::to_string(order);
    case Kind::Product: {
      std::string out;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out += 'x';
        out += factors[i].to_string();
      }
      return out;
    }
  }
  return {};
}

Descriptor parse_descriptor(std::string_view text) { return DescriptorParser(text).parse(); }

FiniteGroup::FiniteGroup(Descriptor descriptor, std::vector<Element> table,
                         std::vector<std::string> names, std::vector<int> radices)
    : descriptor_(std::move(descriptor)),
      order_(descriptor_.order),
      table_(std::move(table)),
      names_(std::move(names)),
      radices_(std::move(radices)) {
  const int n = order_;
  if (n < 1 || table_.size() != static_cast<std::size_t>(n) * n)
    throw InvalidInput("multiplication table does not match order " + std::to_string(n));
  if (names_.size() != static_cast<std::size_t>(n)) throw InvalidInput("name list does not match order");
  if (radices_.empty()) radices_ = {n};
  if (std::accumulate(radices_.begin(), radices_.end(), 1, std::multiplies<>()) != n)
    throw InvalidInput("radices do not multiply to the group order");

  for (Element e : table_)
    if (e < 0 || e >= n) throw InvalidInput("table entry out of range");
  for (int a = 0; a < n; ++a) {
    Bitset row(n), col(n);
    for (int b = 0; b < n; ++b) {
      Element ab = mul(a, b), ba = mul(b, a);
      row.set(ab);
      col.set(ba);
    }
    if (row.count() != static_cast<std::size_t>(n) || col.count() != static_cast<std::size_t>(n))
      throw InvalidInput("multiplication table is not a Latin square");
    if (mul(0, a) != a || mul(a, 0) != a) throw InvalidInput("id 0 is not the identity");
  }
  inv_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (mul(a, b) == 0) inv_[a] = b;
    if (mul(inv_[a], a) != 0) throw InvalidInput("missing two-sided inverse");
  }
  if (n <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw InvalidInput("table is not associative");
  }
  for (int a = 0; a < n && abelian_; ++a)
    for (int b = a + 1; b < n; ++b)
      if (mul(a, b) != mul(b, a)) {
        abelian_ = false;
        break;
      }

  element_order_.assign(n, 1);
  for (int a = 1; a < n; ++a) {
    Element x = a;
    int k = 1;
    while (x != 0) {
      x = mul(x, a);
      ++k;
    }
    element_order_[a] = k;
  }

  std::vector<Element> by_order(n);
  std::iota(by_order.begin(), by_order.end(), 0);
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](Element a, Element b) { return element_order_[a] > element_order_[b]; });
  Bitset spanned(n);
  spanned.set(0);
  for (Element g : by_order) {
    if (spanned.count() == static_cast<std::size_t>(n)) break;
    if (spanned.test(g)) continue;
    generators_.push_back(g);
    for (Element h : span_of(generators_)) spanned.set(h);
  }
}

Element FiniteGroup::pow(Element a, long long k) const {
  const int ord = element_order_[a];
  long long e = ((k % ord) + ord) % ord;
  Element r = 0;
  for (long long i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

std::optional<Element> FiniteGroup::find(std::string_view name) const {
  for (int a = 0; a < order_; ++a)
    if (names_[a] == name) return a;
  return std::nullopt;
}

std::vector<int> FiniteGroup::coordinates(Element a) const {
  std::vector<int> out(radices_.size());
  for (std::size_t i = radices_.size(); i-- > 0;) {
    out[i] = a % radices_[i];
    a /= radices_[i];
  }
  return out;
}

Element FiniteGroup::from_coordinates(std::span<const int> coords) const {
  if (coords.size() != radices_.size()) throw InvalidInput("coordinate arity mismatch");
  Element a = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const int r = radices_[i];
    a = a * r + ((coords[i] % r) + r) % r;
  }
  return a;
}

std::vector<Element> FiniteGroup::span_of(std::span<const Element> seeds) const {
  Bitset in(order_);
  std::vector<Element> out{0};
  in.set(0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Element g : seeds) {
      Element h = mul(out[i], g);
      if (!in.test(h)) {
        in.set(h);
        out.push_back(h);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

GroupPtr make_group(std::string_view descriptor, int cap) {
  return make_group(parse_descriptor(descriptor), cap);
}

GroupPtr make_group(const Descriptor& d, int cap) {
  check_cap(d.order, cap);
  switch (d.kind) {
    case Descriptor::Kind::Cyclic:
      return cyclic(d.order);
    case Descriptor::Kind::Dihedral:
      return dihedral(d.order);
    case Descriptor::Kind::A4:
      return alternating4();
    case Descriptor::Kind::Dih:
      return make_generalized_dihedral(make_group(d.factors.front(), cap), cap);
    case Descriptor::Kind::Product: {
      std::vector<GroupPtr> parts;
      for (const auto& f : d.factors) parts.push_back(make_group(f, cap));
      return make_direct_product(parts, cap);
    }
    case Descriptor::Kind::Table:
      throw InvalidInput("table groups cannot be built from a descriptor");
  }
  throw InvalidInput("unknown descriptor kind");
}

GroupPtr make_generalized_dihedral(const GroupPtr& inner, int cap) {
  if (!inner->is_abelian())
    throw InvalidInput("Dih(A) needs an Abelian A, got " + inner->descriptor().to_string());
  const int m = inner->order();
  const int n = 2 * m;
  check_cap(n, cap);
  std::vector<Element> table(static_cast<std::size_t>(n) * n);
  std::vector<std::string> names(n);
  for (int a = 0; a < n; ++a) {
    const int g1 = a % m, i = a / m;
    names[a] = "(" + inner->name(g1) + "," + std::to_string(i) + ")";
    for (int b = 0; b < n; ++b) {
      const int g2 = b % m, j = b / m;
      const Element g = j == 0 ? inner->mul(g1, g2) : inner->mul(inner->inv(g1), g2);
      table[static_cast<std::size_t>(a) * n + b] = ((i + j) % 2) * m + g;
    }
  }
  Descriptor d{Descriptor::Kind::Dih, n, {inner->descriptor()}};
  return std::make_shared<const FiniteGroup>(d, std::move(table), std::move(names));
}

GroupPtr make_direct_product(std::span<const GroupPtr> factors, int cap) {
  if (factors.empty()) return cyclic(1);
  if (factors.size() == 1) return factors.front();
  long long order = 1;
  Descriptor d{Descriptor::Kind::Product, 1, {}};
  std::vector<int> radices;
  for (const auto& f : factors) {
    order *= f->order();
    if (order > cap)
      throw CapExceeded("direct product order exceeds cap " + std::to_string(cap));
    const Descriptor& fd = f->descriptor();
    if (fd.kind == Descriptor::Kind::Product) {
      d.factors.insert(d.factors.end(), fd.factors.begin(), fd.factors.end());
    } else {
      d.factors.push_back(fd);
    }
    for (int r : f->radices()) radices.push_back(r);
  }
  const int n = static_cast<int>(order);
  d.order = n;

  // Row-major over factors; factor ids are themselves row-major over their
  // own radices, so flattening keeps coordinates consistent.
  std::vector<std::vector<int>> coords(n);
  for (int a = 0; a < n; ++a) {
    int rest = a;
    coords[a].resize(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      coords[a][i] = rest % factors[i]->order();
      rest /= factors[i]->order();
    }
  }
  auto encode = [&](const std::vector<int>& c) {
    int a = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) a = a * factors[i]->order() + c[i];
    return a;
  };
  std::vector<Element> table(static_cast<std::size_t>(n) * n);
  std::vector<std::string> names(n);
  std::vector<int> c(factors.size());
  for (int a = 0; a < n; ++a) {
    std::string name = "(";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) name += ',';
      name += factors[i]->name(coords[a][i]);
    }
    names[a] = name + ")";
    for (int b = 0; b < n; ++b) {
      for (std::size_t i = 0; i < factors.size(); ++i) c[i] = factors[i]->mul(coords[a][i], coords[b][i]);
      table[static_cast<std::size_t>(a) * n + b] = encode(c);
    }
  }
  return std::make_shared<const FiniteGroup>(d, std::move(table), std::move(names), std::move(radices));
}

GroupPtr make_group_from_table(std::vector<Element> table, std::vector<std::string> names) {
  const int n = static_cast<int>(names.size());
  Descriptor d{Descriptor::Kind::Table, n, {}};
  return std::make_shared<const FiniteGroup>(d, std::move(table), std::move(names));
}

bool is_elementary_abelian_2(const FiniteGroup& g) {
  if (!g.is_abelian()) return false;
  for (int a = 0; a < g.order(); ++a)
    if (g.element_order(a) > 2) return false;
  return true;
}

std::vector<Element> two_elements(const FiniteGroup& g) {
  std::vector<Element> out;
  for (int a = 0; a < g.order(); ++a)
    if (std::has_single_bit(static_cast<unsigned>(g.element_order(a)))) out.push_back(a);
  return out;
}

std::vector<Element> odd_order_elements(const FiniteGroup& g) {
  std::vector<Element> out;
  for (int a = 0; a < g.order(); ++a)
    if (g.element_order(a) % 2 == 1) out.push_back(a);
  return out;
}

bool sylow2_is_cyclic(const FiniteGroup& g) {
  const auto twos = two_elements(g);
  Element best = 0;
  for (Element a : twos)
    if (g.element_order(a) > g.element_order(best)) best = a;
  // 2-part of |G|.
  int two_part = 1;
  for (int n = g.order(); n % 2 == 0; n /= 2) two_part *= 2;
  const Element gen[] = {best};
  const auto cyc = g.span_of(gen);
  if (g.element_order(best) != two_part) return false;
  // In the Abelian case twos is the Sylow subgroup; otherwise check that
  // every 2-element lies in one cyclic subgroup of full 2-power order.
  for (Element a : twos)
    if (!std::binary_search(cyc.begin(), cyc.end(), a)) return false;
  return true;
}

namespace {

void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

// Invariant factors d1 | d2 | ... of every Abelian group of order n.
std::vector<std::vector<int>> abelian_invariant_factors(int n) {
  std::vector<std::pair<int, int>> primes;
  int rest = n;
  for (int p = 2; p * p <= rest; ++p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e) primes.emplace_back(p, e);
  }
  if (rest > 1) primes.emplace_back(rest, 1);

  std::vector<std::vector<int>> result{{}};
  for (auto [p, e] : primes) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(e, e, cur, parts);
    std::vector<std::vector<int>> next;
    for (const auto& base : result) {
      for (const auto& part : parts) {
        // base holds factors in descending order; multiply the i-th largest
        // prime power into the i-th largest factor.
        std::vector<int> f = base;
        if (f.size() < part.size()) f.resize(part.size(), 1);
        for (std::size_t i = 0; i < part.size(); ++i) {
          int pp = 1;
          for (int k = 0; k < part[i]; ++k) pp *= p;
          f[i] *= pp;
        }
        next.push_back(std::move(f));
      }
    }
    result = std::move(next);
  }
  for (auto& f : result) std::sort(f.begin(), f.end());
  return result;
}

Descriptor abelian_descriptor(const std::vector<int>& factors) {
  if (factors.size() <= 1) return Descriptor{Descriptor::Kind::Cyclic, factors.empty() ? 1 : factors[0], {}};
  Descriptor d{Descriptor::Kind::Product, 1, {}};
  for (int f : factors) {
    d.factors.push_back(Descriptor{Descriptor::Kind::Cyclic, f, {}});
    d.order *= f;
  }
  return d;
}

}  // namespace

std::vector<Descriptor> group_catalog(int max_order) {
  std::vector<Descriptor> out;
  for (int n = 1; n <= max_order; ++n) {
    for (const auto& f : abelian_invariant_factors(n)) {
      out.push_back(abelian_descriptor(f));
      // Dih(A) is non-Abelian and not dihedral iff A is non-cyclic of exponent > 2.
      if (f.size() >= 2 && f.back() > 2 && 2 * n <= max_order)
        out.push_back(Descriptor{Descriptor::Kind::Dih, 2 * n, {abelian_descriptor(f)}});
    }
    if (n >= 6 && n % 2 == 0) out.push_back(Descriptor{Descriptor::Kind::Dihedral, n, {}});
    if (n == 12) out.push_back(Descriptor{Descriptor::Kind::A4, 12, {}});
  }
  std::stable_sort(out.begin(), out.end(), [](const Descriptor& a, const Descriptor& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.to_string() < b.to_string();
  });
  return out;
}

}  // namespace gcg
