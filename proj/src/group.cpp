#include "hgrpd/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "hgrpd/error.hpp"

namespace hgrpd {

ValidationReport validate_group_table(std::size_t n, std::span<const Elem> table) {
  ValidationReport report;
  if (n == 0) {
    report.push_back({"nonempty", "a group has at least one element"});
    return report;
  }
  if (table.size() != n * n) {
    report.push_back({"shape", "table has " + std::to_string(table.size()) + " entries, expected " +
                                   std::to_string(n * n)});
    return report;
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] >= n) {
      report.push_back({"closure", "product " + std::to_string(i / n) + "*" +
                                       std::to_string(i % n) + " is out of range"});
      return report;
    }
  }
  auto mul = [&](Elem a, Elem b) { return table[a * n + b]; };
  std::optional<Elem> identity;
  for (Elem e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) identity = e;
  }
  if (!identity) {
    report.push_back({"identity", "no two-sided identity element"});
    return report;
  }
  for (Elem a = 0; a < n; ++a) {
    bool found = false;
    for (Elem b = 0; b < n && !found; ++b) found = mul(a, b) == *identity && mul(b, a) == *identity;
    if (!found) report.push_back({"inverse", "element " + std::to_string(a) + " has no inverse"});
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
          report.push_back({"associativity", "(" + std::to_string(a) + "*" + std::to_string(b) +
                                                 ")*" + std::to_string(c)});
          return report;
        }
  return report;
}

FiniteGroup::FiniteGroup(std::vector<Elem> table, std::vector<std::string> labels) {
  init(std::move(table), std::move(labels));
}

void FiniteGroup::init(std::vector<Elem> table, std::vector<std::string> labels) {
  std::size_t n = 0;
  while (n * n < table.size()) ++n;
  if (n * n != table.size()) throw InputError("group table is not square");
  auto report = validate_group_table(n, table);
  if (!report.empty())
    throw InvalidStructure("not a group: " + report.front().axiom + ": " + report.front().detail);
  n_ = n;
  table_ = std::move(table);
  inverse_.assign(n, 0);
  for (Elem e = 0; e < n; ++e) {
    if (mul(e, 0) == 0 && mul(0, e) == 0) {
      bool ok = true;
      for (Elem a = 0; a < n && ok; ++a) ok = mul(e, a) == a;
      if (ok) {
        identity_ = e;
        break;
      }
    }
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (mul(a, b) == identity_) {
        inverse_[a] = b;
        break;
      }
  if (labels.empty()) {
    labels.reserve(n);
    for (Elem a = 0; a < n; ++a) labels.push_back(std::to_string(a));
  }
  if (labels.size() != n) throw InputError("group label count does not match order");
  labels_ = std::move(labels);
}

std::optional<Elem> FiniteGroup::find(std::string_view label) const {
  for (Elem a = 0; a < n_; ++a)
    if (labels_[a] == label) return a;
  return std::nullopt;
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup({0}, {"e"}); }

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw InputError("cyclic group of order 0");
  std::vector<Elem> table(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) table[a * n + b] = static_cast<Elem>((a + b) % n);
  return FiniteGroup(std::move(table));
}

FiniteGroup FiniteGroup::dihedral(std::size_t n) {
  if (n < 3) throw InputError("dihedral group needs n >= 3");
  Permutation rot(n), refl(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    rot[i] = static_cast<std::uint32_t>((i + 1) % n);
    refl[i] = static_cast<std::uint32_t>((n - i) % n);
  }
  return from_permutations(n, {rot, refl});
}

FiniteGroup FiniteGroup::symmetric(std::size_t n) {
  if (n == 0) throw InputError("symmetric group of degree 0");
  if (n == 1) return from_permutations(1, {});
  Permutation swap(n), cycle(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    swap[i] = i;
    cycle[i] = static_cast<std::uint32_t>((i + 1) % n);
  }
  std::swap(swap[0], swap[1]);
  return from_permutations(n, {swap, cycle});
}

std::string cycle_notation(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  std::ostringstream out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out << '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out << ' ';
      out << j + 1;
      first = false;
      j = p[j];
    }
    out << ')';
  }
  auto s = out.str();
  return s.empty() ? "()" : s;
}

FiniteGroup FiniteGroup::from_permutations(std::size_t degree, const std::vector<Permutation>& gens) {
  Permutation id(degree);
  for (std::uint32_t i = 0; i < degree; ++i) id[i] = i;
  for (const auto& g : gens) {
    if (g.size() != degree) throw InputError("generator has wrong degree");
    std::vector<bool> hit(degree, false);
    for (auto x : g) {
      if (x >= degree || hit[x]) throw InputError("generator is not a permutation");
      hit[x] = true;
    }
  }
  // (a*b)(x) = a(b(x))
  auto compose = [&](const Permutation& a, const Permutation& b) {
    Permutation c(degree);
    for (std::size_t x = 0; x < degree; ++x) c[x] = a[b[x]];
    return c;
  };
  std::set<Permutation> seen{id};
  std::deque<Permutation> queue{id};
  while (!queue.empty()) {
    auto p = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      auto q = compose(p, g);
      if (seen.insert(q).second) queue.push_back(std::move(q));
    }
  }
  std::vector<Permutation> elems(seen.begin(), seen.end());
  std::map<Permutation, Elem> index;
  for (Elem i = 0; i < elems.size(); ++i) index[elems[i]] = i;
  const auto n = elems.size();
  std::vector<Elem> table(n * n);
  std::vector<std::string> labels;
  for (Elem a = 0; a < n; ++a) {
    labels.push_back(cycle_notation(elems[a]));
    for (Elem b = 0; b < n; ++b) table[a * n + b] = index.at(compose(elems[a], elems[b]));
  }
  FiniteGroup g(std::move(table), std::move(labels));
  g.perms_ = std::move(elems);
  return g;
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const auto na = a.order(), nb = b.order(), n = na * nb;
  std::vector<Elem> table(n * n);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (Elem x = 0; x < n; ++x) {
    labels.push_back("(" + a.label(x / nb) + "," + b.label(x % nb) + ")");
    for (Elem y = 0; y < n; ++y)
      table[x * n + y] = static_cast<Elem>(a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb));
  }
  return FiniteGroup(std::move(table), std::move(labels));
}

FiniteGroup FiniteGroup::gl2_f2() {
  // bits: a b c d = 8 4 2 1 for the matrix [ab;cd]
  std::vector<unsigned> mats;
  for (unsigned m = 0; m < 16; ++m) {
    unsigned a = m >> 3 & 1, b = m >> 2 & 1, c = m >> 1 & 1, d = m & 1;
    if (((a * d) ^ (b * c)) & 1) mats.push_back(m);
  }
  auto product = [](unsigned x, unsigned y) {
    unsigned a = x >> 3 & 1, b = x >> 2 & 1, c = x >> 1 & 1, d = x & 1;
    unsigned e = y >> 3 & 1, f = y >> 2 & 1, g = y >> 1 & 1, h = y & 1;
    unsigned p = (a * e + b * g) & 1, q = (a * f + b * h) & 1;
    unsigned r = (c * e + d * g) & 1, s = (c * f + d * h) & 1;
    return p << 3 | q << 2 | r << 1 | s;
  };
  const auto n = mats.size();
  std::vector<Elem> table(n * n);
  std::vector<std::string> labels;
  for (Elem i = 0; i < n; ++i) {
    unsigned m = mats[i];
    labels.push_back("[" + std::to_string(m >> 3 & 1) + std::to_string(m >> 2 & 1) + ";" +
                     std::to_string(m >> 1 & 1) + std::to_string(m & 1) + "]");
    for (Elem j = 0; j < n; ++j) {
      auto p = product(m, mats[j]);
      table[i * n + j] = static_cast<Elem>(std::find(mats.begin(), mats.end(), p) - mats.begin());
    }
  }
  return FiniteGroup(std::move(table), std::move(labels));
}

std::optional<Elem> Subgroup::local(Elem parent) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), parent);
  if (it == elements.end() || *it != parent) return std::nullopt;
  return static_cast<Elem>(it - elements.begin());
}

bool is_subgroup(const FiniteGroup& g, std::span<const Elem> subset) {
  std::vector<bool> in(g.order(), false);
  for (auto x : subset) {
    if (x >= g.order()) return false;
    in[x] = true;
  }
  if (!in[g.identity()]) return false;
  for (auto a : subset) {
    if (!in[g.inverse(a)]) return false;
    for (auto b : subset)
      if (!in[g.mul(a, b)]) return false;
  }
  return true;
}

Subgroup make_subgroup(const FiniteGroup& g, std::vector<Elem> subset) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  if (!is_subgroup(g, subset)) throw InvalidStructure("element subset is not a subgroup");
  const auto k = subset.size();
  std::vector<Elem> table(k * k);
  std::vector<std::string> labels;
  for (Elem i = 0; i < k; ++i) {
    labels.push_back(g.label(subset[i]));
    for (Elem j = 0; j < k; ++j) {
      auto p = g.mul(subset[i], subset[j]);
      table[i * k + j] =
          static_cast<Elem>(std::lower_bound(subset.begin(), subset.end(), p) - subset.begin());
    }
  }
  return Subgroup{FiniteGroup(std::move(table), std::move(labels)), std::move(subset)};
}

std::vector<Elem> generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<Elem> out{g.identity()};
  in[g.identity()] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (auto s : gens) {
      auto p = g.mul(out[i], s);
      if (!in[p]) {
        in[p] = true;
        out.push_back(p);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Elem>> small_subgroups(const FiniteGroup& g) {
  std::set<std::vector<Elem>> found;
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = a; b < g.order(); ++b) {
      Elem gens[2] = {a, b};
      found.insert(generated_subgroup(g, gens));
    }
  std::vector<std::vector<Elem>> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& x, const auto& y) { return x.size() < y.size(); });
  return out;
}

std::vector<Elem> generating_set(const FiniteGroup& g) {
  const auto n = g.order();
  if (n == 1) return {};
  for (Elem a = 0; a < n; ++a) {
    Elem gens[1] = {a};
    if (generated_subgroup(g, gens).size() == n) return {a};
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b) {
      Elem gens[2] = {a, b};
      if (generated_subgroup(g, gens).size() == n) return {a, b};
    }
  std::vector<Elem> gens;
  std::vector<Elem> current{g.identity()};
  for (Elem a = 0; a < n && current.size() < n; ++a) {
    if (std::binary_search(current.begin(), current.end(), a)) continue;
    gens.push_back(a);
    current = generated_subgroup(g, gens);
  }
  return gens;
}

std::optional<std::pair<Elem, Elem>> normality_witness(const FiniteGroup& g,
                                                       std::span<const Elem> subset) {
  std::vector<bool> in(g.order(), false);
  for (auto x : subset) in[x] = true;
  for (auto x : subset)
    for (Elem c = 0; c < g.order(); ++c)
      if (!in[g.mul(g.mul(c, x), g.inverse(c))]) return std::make_pair(x, c);
  return std::nullopt;
}

QuotientGroup quotient_group(const FiniteGroup& g, std::span<const Elem> n) {
  if (!is_subgroup(g, n)) throw InvalidStructure("quotient by a subset that is not a subgroup");
  if (auto w = normality_witness(g, n))
    throw NotNormal(w->first, w->second,
                    "subgroup is not normal: conjugating " + g.label(w->first) + " by " +
                        g.label(w->second) + " leaves it");
  std::vector<Elem> projection(g.order(), UINT32_MAX), reps;
  for (Elem a = 0; a < g.order(); ++a) {
    if (projection[a] != UINT32_MAX) continue;
    auto id = static_cast<Elem>(reps.size());
    reps.push_back(a);
    for (auto x : n) projection[g.mul(a, x)] = id;
  }
  const auto k = reps.size();
  std::vector<Elem> table(k * k);
  std::vector<std::string> labels;
  for (Elem i = 0; i < k; ++i) {
    labels.push_back(g.label(reps[i]) + "N");
    for (Elem j = 0; j < k; ++j) table[i * k + j] = projection[g.mul(reps[i], reps[j])];
  }
  return QuotientGroup{FiniteGroup(std::move(table), std::move(labels)), std::move(projection),
                       std::move(reps)};
}

bool is_homomorphism(const FiniteGroup& from, const FiniteGroup& to, std::span<const Elem> map) {
  if (map.size() != from.order()) return false;
  for (auto x : map)
    if (x >= to.order()) return false;
  for (Elem a = 0; a < from.order(); ++a)
    for (Elem b = 0; b < from.order(); ++b)
      if (map[from.mul(a, b)] != to.mul(map[a], map[b])) return false;
  return true;
}

bool is_automorphism(const FiniteGroup& g, std::span<const Elem> map) {
  if (!is_homomorphism(g, g, map)) return false;
  std::vector<bool> hit(g.order(), false);
  for (auto x : map) {
    if (hit[x]) return false;
    hit[x] = true;
  }
  return true;
}

std::vector<Elem> conjugation_map(const FiniteGroup& g, Elem c) {
  std::vector<Elem> out(g.order());
  for (Elem a = 0; a < g.order(); ++a) out[a] = g.mul(g.mul(c, a), g.inverse(c));
  return out;
}

std::vector<Elem> inversion_map(const FiniteGroup& g) {
  std::vector<Elem> out(g.order());
  for (Elem a = 0; a < g.order(); ++a) out[a] = g.inverse(a);
  return out;
}

std::vector<Elem> identity_map(const FiniteGroup& g) {
  std::vector<Elem> out(g.order());
  for (Elem a = 0; a < g.order(); ++a) out[a] = a;
  return out;
}

namespace {

// Extends generator images along the right Cayley graph; nullopt when the
// assignment does not define a homomorphism.
std::optional<std::vector<Elem>> extend_homomorphism(const FiniteGroup& g,
                                                     const std::vector<Elem>& gens,
                                                     const std::vector<Elem>& images) {
  std::vector<Elem> map(g.order(), UINT32_MAX);
  map[g.identity()] = g.identity();
  std::vector<Elem> queue{g.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto x = queue[i];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      auto y = g.mul(x, gens[k]);
      auto image = g.mul(map[x], images[k]);
      if (map[y] == UINT32_MAX) {
        map[y] = image;
        queue.push_back(y);
      } else if (map[y] != image) {
        return std::nullopt;
      }
    }
  }
  return map;
}

}  // namespace

std::vector<std::vector<Elem>> involutive_automorphisms(const FiniteGroup& g) {
  const auto gens = generating_set(g);
  const auto n = g.order();
  std::set<std::vector<Elem>> found;
  std::vector<Elem> images(gens.size(), 0);
  while (true) {
    if (auto map = extend_homomorphism(g, gens, images)) {
      bool ok = true;
      for (Elem a = 0; a < n && ok; ++a) ok = (*map)[(*map)[a]] == a;
      if (ok) found.insert(std::move(*map));
    }
    std::size_t k = 0;
    while (k < images.size() && ++images[k] == n) images[k++] = 0;
    if (k == images.size()) break;
  }
  std::vector<std::vector<Elem>> out;
  auto id = identity_map(g);
  out.push_back(id);
  for (auto& m : found)
    if (m != id) out.push_back(m);
  return out;
}

}  // namespace hgrpd
