#include "hgrpd/group_action.hpp"

#include <algorithm>

#include "hgrpd/error.hpp"

namespace hgrpd {

ValidationReport validate_action(const GroupAction& a) {
  ValidationReport report;
  const auto n = a.carrier_size;
  const auto& g = a.group;
  if (a.table.size() != g.order() * n) {
    report.push_back({"shape", "action table has the wrong size"});
    return report;
  }
  for (auto y : a.table)
    if (y >= n) {
      report.push_back({"shape", "action table entry out of range"});
      return report;
    }
  for (std::uint32_t x = 0; x < n; ++x)
    if (a.act(g.identity(), x) != x)
      report.push_back({"unit", "identity moves point " + std::to_string(x)});
  for (Elem h = 0; h < g.order(); ++h)
    for (Elem k = 0; k < g.order(); ++k)
      for (std::uint32_t x = 0; x < n; ++x)
        if (a.act(h, a.act(k, x)) != a.act(g.mul(h, k), x)) {
          report.push_back({"compatibility", g.label(h) + " . (" + g.label(k) + " . " +
                                                 std::to_string(x) + ")"});
          return report;
        }
  return report;
}

GroupAction left_multiplication(const FiniteGroup& g) {
  GroupAction a{g, g.order(), g.table(), g.labels()};
  return a;
}

GroupAction trivial_action(const FiniteGroup& g, std::size_t carrier_size,
                           std::vector<std::string> labels) {
  GroupAction a{g, carrier_size, std::vector<std::uint32_t>(g.order() * carrier_size), std::move(labels)};
  for (Elem h = 0; h < g.order(); ++h)
    for (std::uint32_t x = 0; x < carrier_size; ++x) a.table[h * carrier_size + x] = x;
  if (a.carrier_labels.empty()) {
    if (carrier_size == 1)
      a.carrier_labels = {"*"};
    else
      for (std::uint32_t x = 0; x < carrier_size; ++x) a.carrier_labels.push_back("x" + std::to_string(x));
  }
  return a;
}

std::vector<std::uint32_t> coset_index(const FiniteGroup& g, std::span<const Elem> subgroup) {
  if (!is_subgroup(g, subgroup)) throw InvalidStructure("coset index needs a subgroup");
  std::vector<std::uint32_t> coset_of(g.order(), kNone);
  std::uint32_t next = 0;
  for (Elem a = 0; a < g.order(); ++a) {
    if (coset_of[a] != kNone) continue;
    for (auto h : subgroup) coset_of[g.mul(a, h)] = next;
    ++next;
  }
  return coset_of;
}

GroupAction coset_action(const FiniteGroup& g, std::span<const Elem> subgroup) {
  if (!is_subgroup(g, subgroup)) throw InvalidStructure("coset action needs a subgroup");
  std::vector<std::uint32_t> coset_of(g.order(), kNone);
  std::vector<Elem> reps;
  for (Elem a = 0; a < g.order(); ++a) {
    if (coset_of[a] != kNone) continue;
    for (auto h : subgroup) coset_of[g.mul(a, h)] = static_cast<std::uint32_t>(reps.size());
    reps.push_back(a);
  }
  GroupAction act{g, reps.size(), std::vector<std::uint32_t>(g.order() * reps.size()), {}};
  for (Elem h = 0; h < g.order(); ++h)
    for (std::uint32_t c = 0; c < reps.size(); ++c)
      act.table[h * reps.size() + c] = coset_of[g.mul(h, reps[c])];
  for (auto r : reps)
    act.carrier_labels.push_back(subgroup.size() == 1 ? g.label(r) : g.label(r) + "H");
  return act;
}

FiniteGroupoid build_action_groupoid(const GroupAction& a) {
  const auto& g = a.group;
  const auto n = a.carrier_size;
  const auto n_mor = g.order() * n;
  std::vector<ObjId> src(n_mor), tgt(n_mor);
  std::vector<MorId> identity(n), inverse(n_mor);
  std::vector<std::string> olabels = a.carrier_labels, mlabels(n_mor);
  if (olabels.empty())
    for (std::uint32_t x = 0; x < n; ++x) olabels.push_back("x" + std::to_string(x));
  for (std::uint32_t x = 0; x < n; ++x) identity[x] = action_morphism(a, g.identity(), x);
  for (Elem h = 0; h < g.order(); ++h)
    for (std::uint32_t x = 0; x < n; ++x) {
      auto m = action_morphism(a, h, x);
      src[m] = x;
      tgt[m] = a.act(h, x);
      inverse[m] = action_morphism(a, g.inverse(h), a.act(h, x));
      mlabels[m] = n == 1 ? g.label(h) : g.label(h) + "@" + olabels[x];
    }
  return FiniteGroupoid(
      n, std::move(src), std::move(tgt), std::move(identity), std::move(inverse),
      [&](MorId first, MorId then) {
        auto h = static_cast<Elem>(first / n), k = static_cast<Elem>(then / n);
        auto x = static_cast<std::uint32_t>(first % n);
        return action_morphism(a, g.mul(k, h), x);
      },
      std::move(olabels), std::move(mlabels));
}

FiniteGroupoid build_eg(const FiniteGroup& g) { return build_action_groupoid(left_multiplication(g)); }

FiniteGroupoid build_bg(const FiniteGroup& g) { return build_action_groupoid(trivial_action(g)); }

GroupoidMap action_groupoid_map(const GroupAction& a, const FiniteGroupoid& a_groupoid,
                                const GroupAction& b, const FiniteGroupoid& b_groupoid,
                                std::span<const Elem> hom, std::span<const std::uint32_t> set_map) {
  if (hom.size() != a.group.order() || set_map.size() != a.carrier_size)
    throw InputError("induced map: table sizes do not match the actions");
  for (Elem g = 0; g < a.group.order(); ++g)
    for (std::uint32_t x = 0; x < a.carrier_size; ++x)
      if (set_map[a.act(g, x)] != b.act(hom[g], set_map[x]))
        throw NotEquivariant(true, x,
                             "carrier map is not equivariant at point " + std::to_string(x) +
                                 " and element " + a.group.label(g));
  GroupoidMap f{a_groupoid, b_groupoid, std::vector<ObjId>(set_map.begin(), set_map.end()),
                std::vector<MorId>(a.group.order() * a.carrier_size)};
  for (Elem g = 0; g < a.group.order(); ++g)
    for (std::uint32_t x = 0; x < a.carrier_size; ++x)
      f.mor_map[action_morphism(a, g, x)] = action_morphism(b, hom[g], set_map[x]);
  return f;
}

GroupoidMap action_groupoid_map(const GroupAction& a, const GroupAction& b,
                                std::span<const Elem> hom, std::span<const std::uint32_t> set_map) {
  return action_groupoid_map(a, build_action_groupoid(a), b, build_action_groupoid(b), hom, set_map);
}

std::optional<std::pair<std::uint32_t, Elem>> freeness_witness(const GroupAction& a,
                                                                std::span<const Elem> subgroup) {
  for (std::uint32_t x = 0; x < a.carrier_size; ++x)
    for (auto n : subgroup)
      if (n != a.group.identity() && a.act(n, x) == x) return std::make_pair(x, n);
  return std::nullopt;
}

QuotientComparison quotient_map(const GroupAction& a, std::span<const Elem> normal) {
  const auto& g = a.group;
  auto quotient = quotient_group(g, normal);
  std::vector<std::uint32_t> orbit_of(a.carrier_size, kNone);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t x = 0; x < a.carrier_size; ++x) {
    if (orbit_of[x] != kNone) continue;
    for (auto n : normal) orbit_of[a.act(n, x)] = static_cast<std::uint32_t>(reps.size());
    reps.push_back(x);
  }
  const auto& q = quotient.group;
  GroupAction qa{q, reps.size(), std::vector<std::uint32_t>(q.order() * reps.size()), {}};
  for (Elem c = 0; c < q.order(); ++c)
    for (std::uint32_t o = 0; o < reps.size(); ++o)
      qa.table[c * reps.size() + o] = orbit_of[a.act(quotient.coset_rep[c], reps[o])];
  for (auto r : reps)
    qa.carrier_labels.push_back("[" + (a.carrier_labels.empty() ? std::to_string(r) : a.carrier_labels[r]) + "]");
  auto map = action_groupoid_map(a, qa, quotient.projection, orbit_of);
  QuotientComparison out{std::move(quotient), std::move(qa), std::move(orbit_of), std::move(map)};
  out.fibration = is_fibration(out.map);
  out.weak_equivalence = is_weak_equivalence(out.map);
  return out;
}

QuotientComparison quotient_comparison(const GroupAction& a, std::span<const Elem> normal) {
  if (auto w = freeness_witness(a, normal)) {
    const auto& label = a.carrier_labels.empty() ? std::to_string(w->first) : a.carrier_labels[w->first];
    throw NotFree(w->first, w->second,
                  "normal subgroup does not act freely: " + a.group.label(w->second) + " fixes " + label);
  }
  return quotient_map(a, normal);
}

}  // namespace hgrpd
