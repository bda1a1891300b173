#include "hgrpd/cohomology.hpp"

#include <algorithm>

#include "hgrpd/error.hpp"
#include "hgrpd/group_action.hpp"

namespace hgrpd {

ValidationReport validate_group_gamma_action(const GroupGammaAction& a) {
  ValidationReport report;
  const auto& g = a.group;
  if (a.bar.size() != g.order()) {
    report.push_back({"shape", "bar has " + std::to_string(a.bar.size()) + " entries for a group of order " +
                                   std::to_string(g.order())});
    return report;
  }
  for (auto x : a.bar)
    if (x >= g.order()) {
      report.push_back({"shape", "bar value out of range"});
      return report;
    }
  for (Elem x = 0; x < g.order(); ++x)
    if (a.bar[a.bar[x]] != x) {
      report.push_back({"involutive", "bar is not involutive on " + g.label(x)});
      break;
    }
  if (!is_automorphism(g, a.bar)) report.push_back({"automorphism", "bar is not a group automorphism"});
  return report;
}

namespace {

void require_valid(const GroupGammaAction& a) {
  auto report = validate_group_gamma_action(a);
  if (!report.empty())
    throw InvalidStructure("group involution: " + report.front().axiom + ": " + report.front().detail);
}

}  // namespace

std::vector<Elem> z1(const GroupGammaAction& a) {
  require_valid(a);
  std::vector<Elem> out;
  for (Elem s = 0; s < a.group.order(); ++s)
    if (a.group.mul(s, a.bar[s]) == a.group.identity()) out.push_back(s);
  return out;
}

std::vector<CocycleClass> h1(const GroupGammaAction& a) {
  const auto& g = a.group;
  auto cocycles = z1(a);
  auto twist = [&](Elem x, Elem s) { return g.mul(g.mul(a.bar[x], s), g.inverse(x)); };

  std::vector<bool> seen(g.order(), false);
  std::vector<CocycleClass> out;
  for (auto s : cocycles) {
    if (seen[s]) continue;
    std::vector<Elem> members, stabilizer;
    for (Elem x = 0; x < g.order(); ++x) {
      auto t = twist(x, s);
      if (!seen[t]) {
        seen[t] = true;
        members.push_back(t);
      }
      if (t == s) stabilizer.push_back(x);
    }
    std::sort(members.begin(), members.end());
    out.push_back(CocycleClass{s, std::move(members), make_subgroup(g, std::move(stabilizer))});
  }
  return out;
}

GammaAction bg_gamma_action(const GroupGammaAction& a) {
  require_valid(a);
  return GammaAction{build_bg(a.group), {0}, a.bar};
}

BgDecomposition bg_hfp_decomposition(const GroupGammaAction& a) {
  BgDecomposition d{h1(a), hfp(bg_gamma_action(a)), {}, false};
  std::vector<FiniteGroupoid> parts;
  for (const auto& c : d.classes) parts.push_back(build_bg(c.stabilizer.group));
  auto sum = coproduct(parts);

  GroupoidMap f{sum.groupoid, d.fixed_points.groupoid, {}, {}};
  f.obj_map.resize(parts.size());
  f.mor_map.resize(sum.groupoid.num_morphisms());
  for (std::size_t i = 0; i < d.classes.size(); ++i) {
    const auto& c = d.classes[i];
    auto o = d.fixed_points.find({0, c.representative});
    if (!o) throw InvalidStructure("cocycle missing from the homotopy fixed points");
    f.obj_map[i] = *o;
    for (Elem k = 0; k < c.stabilizer.elements.size(); ++k)
      f.mor_map[sum.morphism_offset[i] + k] = d.fixed_points.arrow(*o, c.stabilizer.elements[k]);
  }
  d.map = std::move(f);
  d.weak_equivalence = is_weak_equivalence(d.map);
  return d;
}

Skeleton skeletonize(const FiniteGroupoid& g) {
  Skeleton s;
  std::vector<FiniteGroupoid> parts;
  for (auto x : g.component_representatives()) {
    auto aut = g.hom(x, x);
    std::vector<MorId> morphisms(aut.begin(), aut.end());
    const auto k = morphisms.size();
    auto index = [&](MorId m) {
      return static_cast<Elem>(std::lower_bound(morphisms.begin(), morphisms.end(), m) - morphisms.begin());
    };
    std::vector<Elem> table(k * k);
    std::vector<std::string> labels;
    for (Elem i = 0; i < k; ++i) {
      labels.push_back(g.morphism_label(morphisms[i]));
      for (Elem j = 0; j < k; ++j) table[i * k + j] = index(g.compose(morphisms[j], morphisms[i]));
    }
    FiniteGroup group(std::move(table), std::move(labels));
    parts.push_back(build_bg(group));
    s.pieces.push_back(SkeletonPiece{x, std::move(group), std::move(morphisms)});
  }
  auto sum = coproduct(parts);
  GroupoidMap f{sum.groupoid, g, {}, std::vector<MorId>(sum.groupoid.num_morphisms())};
  for (std::size_t i = 0; i < s.pieces.size(); ++i) {
    f.obj_map.push_back(s.pieces[i].representative);
    for (std::size_t k = 0; k < s.pieces[i].morphisms.size(); ++k)
      f.mor_map[sum.morphism_offset[i] + k] = s.pieces[i].morphisms[k];
  }
  s.map = std::move(f);
  s.weak_equivalence = is_weak_equivalence(s.map);
  return s;
}

}  // namespace hgrpd
