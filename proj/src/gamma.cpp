#include "hgrpd/gamma.hpp"

#include <algorithm>
#include <map>

#include "hgrpd/error.hpp"

namespace hgrpd {

ValidationReport validate_gamma_action(const GammaAction& a) {
  ValidationReport report;
  const auto& g = a.carrier;
  if (a.bar_obj.size() != g.num_objects() || a.bar_mor.size() != g.num_morphisms()) {
    report.push_back({"shape", "bar tables do not match the groupoid"});
    return report;
  }
  for (auto x : a.bar_obj)
    if (x >= g.num_objects()) {
      report.push_back({"shape", "bar object out of range"});
      return report;
    }
  for (auto m : a.bar_mor)
    if (m >= g.num_morphisms()) {
      report.push_back({"shape", "bar morphism out of range"});
      return report;
    }
  for (ObjId x = 0; x < g.num_objects(); ++x) {
    if (a.bar_obj[a.bar_obj[x]] != x)
      report.push_back({"involutive", "bar is not involutive on " + g.object_label(x)});
    if (a.bar_mor[g.identity(x)] != g.identity(a.bar_obj[x]))
      report.push_back({"identity", "bar does not preserve the identity of " + g.object_label(x)});
  }
  for (MorId m = 0; m < g.num_morphisms(); ++m) {
    auto b = a.bar_mor[m];
    if (a.bar_mor[b] != m)
      report.push_back({"involutive", "bar is not involutive on " + g.morphism_label(m)});
    if (g.src(b) != a.bar_obj[g.src(m)])
      report.push_back({"source", "bar does not commute with source at " + g.morphism_label(m)});
    if (g.tgt(b) != a.bar_obj[g.tgt(m)])
      report.push_back({"target", "bar does not commute with target at " + g.morphism_label(m)});
    if (a.bar_mor[g.inverse(m)] != g.inverse(b))
      report.push_back({"inverse", "bar does not commute with inverse at " + g.morphism_label(m)});
  }
  for (MorId m = 0; m < g.num_morphisms(); ++m)
    for (auto n : g.out(g.tgt(m))) {
      auto c = g.compose(m, n);
      if (c != kNone && a.bar_mor[c] != g.compose(a.bar_mor[m], a.bar_mor[n])) {
        report.push_back({"composition", "bar does not commute with " + g.morphism_label(m) +
                                             " then " + g.morphism_label(n)});
        return report;
      }
    }
  return report;
}

GammaAction trivial_gamma_action(const FiniteGroupoid& g) {
  auto id = identity_functor(g);
  return GammaAction{g, std::move(id.obj_map), std::move(id.mor_map)};
}

GammaAction set_as_groupoid(std::span<const std::uint32_t> involution,
                            std::vector<std::string> labels) {
  auto g = FiniteGroupoid::discrete(involution.size(), std::move(labels));
  std::vector<ObjId> bar(involution.begin(), involution.end());
  for (auto x : bar)
    if (x >= bar.size()) throw InputError("involution out of range");
  return GammaAction{g, bar, bar};
}

GammaAction swap_action(const FiniteGroupoid& x) {
  auto p = product(x, x);
  const auto n = x.num_objects(), m = x.num_morphisms();
  GammaAction a{p, std::vector<ObjId>(n * n), std::vector<MorId>(m * m)};
  for (ObjId i = 0; i < n; ++i)
    for (ObjId j = 0; j < n; ++j) a.bar_obj[i * n + j] = static_cast<ObjId>(j * n + i);
  for (MorId i = 0; i < m; ++i)
    for (MorId j = 0; j < m; ++j) a.bar_mor[i * m + j] = static_cast<MorId>(j * m + i);
  return a;
}

std::optional<ObjId> HomotopyFixedPoints::find(HfpObject o) const {
  auto it = std::lower_bound(objects.begin(), objects.end(), o);
  if (it == objects.end() || *it != o) return std::nullopt;
  return static_cast<ObjId>(it - objects.begin());
}

MorId HomotopyFixedPoints::arrow(ObjId source, MorId alpha) const {
  return static_cast<MorId>(arrows_begin[source] + action.carrier.out_position(alpha));
}

GammaAction induced_gamma_action(const GroupAction& a, std::span<const Elem> theta,
                                 std::span<const std::uint32_t> involution) {
  const auto& g = a.group;
  if (theta.size() != g.order() || involution.size() != a.carrier_size)
    throw InputError("induced action: table sizes do not match");
  for (Elem h = 0; h < g.order(); ++h)
    for (std::uint32_t x = 0; x < a.carrier_size; ++x)
      if (involution[a.act(h, x)] != a.act(theta[h], involution[x]))
        throw NotEquivariant(true, x, "set involution is not compatible with the group involution");
  GammaAction out{build_action_groupoid(a), {involution.begin(), involution.end()}, {}};
  out.bar_mor.resize(out.carrier.num_morphisms());
  for (Elem h = 0; h < g.order(); ++h)
    for (std::uint32_t x = 0; x < a.carrier_size; ++x)
      out.bar_mor[action_morphism(a, h, x)] = action_morphism(a, theta[h], involution[x]);
  return out;
}

GammaAction coproduct_action(std::span<const GammaAction> parts) {
  std::vector<FiniteGroupoid> carriers;
  for (const auto& p : parts) carriers.push_back(p.carrier);
  auto c = coproduct(carriers);
  GammaAction out{c.groupoid, {}, {}};
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (auto x : parts[i].bar_obj) out.bar_obj.push_back(c.object_offset[i] + x);
    for (auto m : parts[i].bar_mor) out.bar_mor.push_back(c.morphism_offset[i] + m);
  }
  return out;
}

GammaAction product_action(const GammaAction& a, const GammaAction& b) {
  GroupoidMap bars = product_map(GroupoidMap{a.carrier, a.carrier, a.bar_obj, a.bar_mor},
                                 GroupoidMap{b.carrier, b.carrier, b.bar_obj, b.bar_mor});
  return GammaAction{bars.dom, std::move(bars.obj_map), std::move(bars.mor_map)};
}

GammaAction transport(const GammaAction& a, const GroupoidMap& iso) {
  if (!(iso.dom == a.carrier) || !is_isomorphism(iso)) throw InputError("transport needs an isomorphism out of the carrier");
  GammaAction out{iso.cod, std::vector<ObjId>(iso.cod.num_objects()), std::vector<MorId>(iso.cod.num_morphisms())};
  for (ObjId x = 0; x < a.carrier.num_objects(); ++x) out.bar_obj[iso.obj_map[x]] = iso.obj_map[a.bar_obj[x]];
  for (MorId m = 0; m < a.carrier.num_morphisms(); ++m) out.bar_mor[iso.mor_map[m]] = iso.mor_map[a.bar_mor[m]];
  return out;
}

GammaAction pushforward(const GammaAction& a, const GroupoidMap& f) {
  GammaAction out{f.cod, std::vector<ObjId>(f.cod.num_objects(), kNone),
                  std::vector<MorId>(f.cod.num_morphisms(), kNone)};
  for (ObjId x = 0; x < f.dom.num_objects(); ++x) {
    auto& slot = out.bar_obj[f.obj_map[x]];
    auto value = f.obj_map[a.bar_obj[x]];
    if (slot != kNone && slot != value) throw NotEquivariant(true, x, "no action on the codomain makes the map equivariant");
    slot = value;
  }
  for (MorId m = 0; m < f.dom.num_morphisms(); ++m) {
    auto& slot = out.bar_mor[f.mor_map[m]];
    auto value = f.mor_map[a.bar_mor[m]];
    if (slot != kNone && slot != value)
      throw NotEquivariant(false, m, "no action on the codomain makes the map equivariant");
    slot = value;
  }
  if (std::count(out.bar_obj.begin(), out.bar_obj.end(), kNone) ||
      std::count(out.bar_mor.begin(), out.bar_mor.end(), kNone))
    throw InputError("pushforward needs a map that is surjective on objects and morphisms");
  return out;
}

GammaAction restrict_action(const GammaAction& a, const GroupoidMap& inclusion) {
  if (!(inclusion.cod == a.carrier)) throw InputError("restriction needs a map into the carrier");
  std::vector<ObjId> obj_pre(a.carrier.num_objects(), kNone);
  std::vector<MorId> mor_pre(a.carrier.num_morphisms(), kNone);
  for (ObjId x = 0; x < inclusion.obj_map.size(); ++x) obj_pre[inclusion.obj_map[x]] = x;
  for (MorId m = 0; m < inclusion.mor_map.size(); ++m) mor_pre[inclusion.mor_map[m]] = m;
  GammaAction out{inclusion.dom, {}, {}};
  for (ObjId x = 0; x < inclusion.obj_map.size(); ++x) {
    auto y = obj_pre[a.bar_obj[inclusion.obj_map[x]]];
    if (y == kNone) throw NotEquivariant(true, x, "the subgroupoid is not stable under the action");
    out.bar_obj.push_back(y);
  }
  for (MorId m = 0; m < inclusion.mor_map.size(); ++m) {
    auto n = mor_pre[a.bar_mor[inclusion.mor_map[m]]];
    if (n == kNone) throw NotEquivariant(false, m, "the subgroupoid is not stable under the action");
    out.bar_mor.push_back(n);
  }
  return out;
}

HomotopyFixedPoints hfp(const GammaAction& a) {
  const auto& g = a.carrier;
  HomotopyFixedPoints h{a, FiniteGroupoid(), {}, {}, {}};
  std::vector<std::vector<ObjId>> over(g.num_objects());
  for (ObjId x = 0; x < g.num_objects(); ++x)
    for (auto phi : g.hom(x, a.bar_obj[x]))
      if (a.bar_mor[phi] == g.inverse(phi)) {
        over[x].push_back(static_cast<ObjId>(h.objects.size()));
        h.objects.push_back({x, phi});
      }

  const auto n_obj = h.objects.size();
  h.arrows_begin.resize(n_obj + 1, 0);
  for (ObjId o = 0; o < n_obj; ++o)
    h.arrows_begin[o + 1] = static_cast<MorId>(h.arrows_begin[o] + g.out(h.objects[o].base).size());
  const auto n_mor = h.arrows_begin[n_obj];

  std::vector<ObjId> src(n_mor), tgt(n_mor);
  std::vector<MorId> identity(n_obj), inverse(n_mor);
  h.underlying.resize(n_mor);
  std::vector<std::string> olabels, mlabels(n_mor);
  for (const auto& o : h.objects)
    olabels.push_back("(" + g.object_label(o.base) + "," + g.morphism_label(o.phi) + ")");

  // An arrow (x, φ) -> (x₁, φ₁) labelled α exists iff φ₁α = ᾱφ, i.e.
  // compose(α, φ₁) == compose(φ, ᾱ).
  for (ObjId o = 0; o < n_obj; ++o) {
    const auto [x, phi] = h.objects[o];
    for (auto alpha : g.out(x)) {
      auto id = h.arrow(o, alpha);
      auto rhs = g.compose(phi, a.bar_mor[alpha]);
      ObjId target = kNone;
      for (auto o1 : over[g.tgt(alpha)])
        if (g.compose(alpha, h.objects[o1].phi) == rhs) {
          target = o1;
          break;
        }
      if (target == kNone)
        throw InvalidStructure("homotopy fixed points: no arrow labelled " + g.morphism_label(alpha) +
                               " out of " + olabels[o] + "; the action is not valid");
      src[id] = o;
      tgt[id] = target;
      h.underlying[id] = alpha;
      mlabels[id] = g.morphism_label(alpha) + "@" + olabels[o];
    }
  }
  for (ObjId o = 0; o < n_obj; ++o) identity[o] = h.arrow(o, g.identity(h.objects[o].base));
  for (MorId m = 0; m < n_mor; ++m) inverse[m] = h.arrow(tgt[m], g.inverse(h.underlying[m]));

  h.groupoid = FiniteGroupoid(
      n_obj, src, tgt, std::move(identity), std::move(inverse),
      [&](MorId first, MorId then) {
        auto c = g.compose(h.underlying[first], h.underlying[then]);
        return c == kNone ? kNone : h.arrow(src[first], c);
      },
      std::move(olabels), std::move(mlabels));
  return h;
}

GroupoidMap iota(const HomotopyFixedPoints& h) {
  GroupoidMap f{h.groupoid, h.action.carrier, {}, h.underlying};
  f.obj_map.reserve(h.objects.size());
  for (const auto& o : h.objects) f.obj_map.push_back(o.base);
  return f;
}

void check_equivariant(const EquivariantMap& f) {
  const auto& m = f.map;
  if (!(m.dom == f.dom_action.carrier) || !(m.cod == f.cod_action.carrier))
    throw InputError("equivariant map: actions do not sit on the map's domain and codomain");
  for (ObjId x = 0; x < m.dom.num_objects(); ++x)
    if (m.obj_map[f.dom_action.bar_obj[x]] != f.cod_action.bar_obj[m.obj_map[x]])
      throw NotEquivariant(true, x, "map does not commute with bar at object " + m.dom.object_label(x));
  for (MorId a = 0; a < m.dom.num_morphisms(); ++a)
    if (m.mor_map[f.dom_action.bar_mor[a]] != f.cod_action.bar_mor[m.mor_map[a]])
      throw NotEquivariant(false, a,
                           "map does not commute with bar at morphism " + m.dom.morphism_label(a));
}

bool is_equivariant(const EquivariantMap& f) {
  try {
    check_equivariant(f);
    return true;
  } catch (const NotEquivariant&) {
    return false;
  }
}

GroupoidMap hfp_map(const EquivariantMap& f) {
  check_equivariant(f);
  return hfp_map(f, hfp(f.dom_action), hfp(f.cod_action));
}

GroupoidMap hfp_map(const EquivariantMap& f, const HomotopyFixedPoints& dom,
                    const HomotopyFixedPoints& cod) {
  check_equivariant(f);
  const auto& m = f.map;
  GroupoidMap out{dom.groupoid, cod.groupoid, std::vector<ObjId>(dom.objects.size()),
                  std::vector<MorId>(dom.underlying.size())};
  for (ObjId o = 0; o < dom.objects.size(); ++o) {
    HfpObject image{m.obj_map[dom.objects[o].base], m.mor_map[dom.objects[o].phi]};
    auto found = cod.find(image);
    if (!found) throw InvalidStructure("image of a homotopy fixed point is not one");
    out.obj_map[o] = *found;
  }
  for (MorId a = 0; a < dom.underlying.size(); ++a)
    out.mor_map[a] = cod.arrow(out.obj_map[dom.groupoid.src(a)], m.mor_map[dom.underlying[a]]);
  return out;
}

SwapComparison swap_comparison(const FiniteGroupoid& x) {
  auto h = hfp(swap_action(x));
  const auto n = x.num_objects(), m = x.num_morphisms();
  GroupoidMap f{x, h.groupoid, std::vector<ObjId>(n), std::vector<MorId>(m)};
  for (ObjId v = 0; v < n; ++v) {
    auto id = x.identity(v);
    auto found = h.find({static_cast<ObjId>(v * n + v), static_cast<MorId>(id * m + id)});
    if (!found) throw InvalidStructure("diagonal object is missing from the swap fixed points");
    f.obj_map[v] = *found;
  }
  for (MorId a = 0; a < m; ++a)
    f.mor_map[a] = h.arrow(f.obj_map[x.src(a)], static_cast<MorId>(a * m + a));
  SwapComparison out{std::move(h), std::move(f)};
  out.full = is_full(out.map);
  out.faithful = is_faithful(out.map);
  out.weak_equivalence = is_weak_equivalence(out.map);
  return out;
}

}  // namespace hgrpd
