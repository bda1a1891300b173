#include "hgrpd/presheaf.hpp"

#include <algorithm>
#include <bit>

#include "hgrpd/error.hpp"

namespace hgrpd {

namespace {

std::vector<std::string> default_point_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

std::uint32_t full_mask(std::size_t n) { return n >= 32 ? ~0u : (1u << n) - 1; }

void require_valid(const ValidationReport& report, const std::string& what) {
  if (!report.empty())
    throw InvalidStructure("invalid " + what + ": " + report.front().axiom + ": " + report.front().detail);
}

// Pairs (u, v) with V ⊆ U, in order.
template <class Fn>
void for_each_inclusion(const FiniteSite& s, Fn fn) {
  for (std::size_t u = 0; u < s.num_opens(); ++u)
    for (std::size_t v = 0; v < s.num_opens(); ++v)
      if (s.contains(u, v)) fn(u, v);
}

// Triples W ⊆ V ⊆ U.
template <class Fn>
void for_each_chain(const FiniteSite& s, Fn fn) {
  for_each_inclusion(s, [&](std::size_t u, std::size_t v) {
    for (std::size_t w = 0; w < s.num_opens(); ++w)
      if (s.contains(v, w)) fn(u, v, w);
  });
}

std::string pair_label(const FiniteSite& s, std::size_t u, std::size_t v) {
  return s.open_label(u) + " -> " + s.open_label(v);
}

}  // namespace

std::optional<std::size_t> FiniteSite::find(std::uint32_t mask) const {
  for (std::size_t u = 0; u < opens.size(); ++u)
    if (opens[u] == mask) return u;
  return std::nullopt;
}

std::size_t FiniteSite::minimal_open(std::uint32_t t) const {
  if (t >= num_points) throw InputError("no point " + std::to_string(t));
  std::uint32_t mask = full_mask(num_points);
  for (auto o : opens)
    if (o >> t & 1u) mask &= o;
  auto u = find(mask);
  if (!u) throw InvalidStructure("the neighbourhoods of " + point_labels[t] + " have no smallest member");
  return *u;
}

std::vector<std::size_t> FiniteSite::neighbourhoods(std::uint32_t t) const {
  std::vector<std::size_t> out;
  for (std::size_t u = opens.size(); u-- > 0;)
    if (opens[u] >> t & 1u) out.push_back(u);
  return out;
}

std::string FiniteSite::open_label(std::size_t u) const {
  if (opens[u] == 0) return "∅";
  std::string out = "{";
  bool first = true;
  for (std::size_t t = 0; t < num_points; ++t)
    if (opens[u] >> t & 1u) {
      out += (first ? "" : ",") + point_labels[t];
      first = false;
    }
  return out + "}";
}

FiniteSite FiniteSite::from_opens(std::size_t num_points, std::vector<std::uint32_t> opens,
                                  std::vector<std::string> point_labels) {
  std::stable_sort(opens.begin(), opens.end(), [](std::uint32_t a, std::uint32_t b) {
    auto pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  if (point_labels.empty()) point_labels = default_point_labels(num_points);
  return FiniteSite{num_points, std::move(opens), std::move(point_labels)};
}

FiniteSite FiniteSite::from_preorder(std::size_t num_points,
                                     std::span<const std::pair<std::uint32_t, std::uint32_t>> pairs,
                                     std::vector<std::string> point_labels) {
  if (num_points > 16) throw InputError("at most 16 points");
  for (auto [s, t] : pairs)
    if (s >= num_points || t >= num_points) throw InputError("preorder pair out of range");
  std::vector<std::uint32_t> opens;
  for (std::uint32_t mask = 0; mask <= full_mask(num_points); ++mask) {
    bool open = true;
    for (auto [s, t] : pairs) open = open && (!(mask >> t & 1u) || (mask >> s & 1u));
    if (open) opens.push_back(mask);
  }
  return from_opens(num_points, std::move(opens), std::move(point_labels));
}

FiniteSite FiniteSite::discrete(std::size_t num_points) { return from_preorder(num_points, {}); }

FiniteSite FiniteSite::sierpinski() { return from_opens(2, {0b00, 0b01, 0b11}); }

ValidationReport validate_site(const FiniteSite& s) {
  ValidationReport report;
  if (s.num_points > 31) return {{"shape", "at most 31 points"}};
  if (s.point_labels.size() != s.num_points) report.push_back({"shape", "one label per point"});
  const auto all = full_mask(s.num_points);
  for (auto o : s.opens)
    if (o & ~all) report.push_back({"shape", "open " + std::to_string(o) + " mentions a missing point"});
  if (!report.empty()) return report;
  for (std::size_t u = 0; u < s.num_opens(); ++u)
    for (std::size_t v = u + 1; v < s.num_opens(); ++v)
      if (s.opens[u] == s.opens[v]) report.push_back({"separation", "open " + s.open_label(u) + " listed twice"});
  if (!s.find(0)) report.push_back({"bottom", "∅ is not open"});
  if (!s.find(all)) report.push_back({"top", "the whole space is not open"});
  for (std::size_t u = 0; u < s.num_opens(); ++u)
    for (std::size_t v = u + 1; v < s.num_opens(); ++v) {
      if (!s.find(s.opens[u] & s.opens[v]))
        report.push_back({"meet", s.open_label(u) + " ∩ " + s.open_label(v) + " is not open"});
      if (!s.find(s.opens[u] | s.opens[v]))
        report.push_back({"join", s.open_label(u) + " ∪ " + s.open_label(v) + " is not open"});
    }
  return report;
}

GroupoidPresheaf make_presheaf(const FiniteSite& site, std::vector<FiniteGroupoid> sections,
                               const std::function<GroupoidMap(std::size_t u, std::size_t v)>& restrict) {
  if (sections.size() != site.num_opens()) throw InputError("one section per open");
  GroupoidPresheaf x{site, std::move(sections), std::vector<GroupoidMap>(site.num_opens() * site.num_opens())};
  for_each_inclusion(site, [&](std::size_t u, std::size_t v) { x.restrictions[u * site.num_opens() + v] = restrict(u, v); });
  return x;
}

GroupoidPresheaf constant_presheaf(const FiniteSite& site, const FiniteGroupoid& g) {
  return make_presheaf(site, std::vector<FiniteGroupoid>(site.num_opens(), g),
                       [&](std::size_t, std::size_t) { return identity_functor(g); });
}

ValidationReport validate_presheaf(const GroupoidPresheaf& x) {
  const auto& s = x.site;
  auto report = validate_site(s);
  for (auto& v : report) v.axiom = "site";
  if (!report.empty()) return report;
  const auto n = s.num_opens();
  if (x.sections.size() != n || x.restrictions.size() != n * n)
    return {{"shape", "expected one section per open and a restriction slot per pair of opens"}};
  for_each_inclusion(s, [&](std::size_t u, std::size_t v) {
    const auto& r = x.restriction(u, v);
    if (!(r.dom == x.sections[u]) || !(r.cod == x.sections[v]) || !validate_functor(r).empty())
      report.push_back({"functor", "restriction " + pair_label(s, u, v) + " is not a functor between the sections"});
  });
  if (!report.empty()) return report;
  for (std::size_t u = 0; u < n; ++u)
    if (!(x.restriction(u, u) == identity_functor(x.sections[u])))
      report.push_back({"identity", "restriction " + pair_label(s, u, u) + " is not the identity"});
  for_each_chain(s, [&](std::size_t u, std::size_t v, std::size_t w) {
    if (u == v || v == w) return;
    if (!(then(x.restriction(u, v), x.restriction(v, w)) == x.restriction(u, w)))
      report.push_back({"composition", "restricting " + pair_label(s, u, v) + " -> " + s.open_label(w) +
                                           " differs from restricting directly"});
  });
  return report;
}

ValidationReport validate_presheaf_action(const GroupoidPresheaf& x, const PresheafGammaAction& a) {
  if (a.sections.size() != x.sections.size()) return {{"shape", "one action per open"}};
  ValidationReport report;
  for (std::size_t u = 0; u < x.sections.size(); ++u) {
    if (!(a.sections[u].carrier == x.sections[u]))
      report.push_back({"shape", "action over " + x.site.open_label(u) + " is on another groupoid"});
    else if (!validate_gamma_action(a.sections[u]).empty())
      report.push_back({"gamma", "action over " + x.site.open_label(u) + " is invalid"});
  }
  if (!report.empty()) return report;
  for_each_inclusion(x.site, [&](std::size_t u, std::size_t v) {
    if (!is_equivariant({x.restriction(u, v), a.sections[u], a.sections[v]}))
      report.push_back({"equivariance", "restriction " + pair_label(x.site, u, v) + " is not equivariant"});
  });
  return report;
}

PresheafGammaAction trivial_presheaf_action(const GroupoidPresheaf& x) {
  PresheafGammaAction a;
  for (const auto& g : x.sections) a.sections.push_back(trivial_gamma_action(g));
  return a;
}

GroupoidPresheaf discrete_presheaf(const FiniteSite& site, const std::vector<std::size_t>& sizes,
                                   const std::function<std::vector<std::uint32_t>(std::size_t u, std::size_t v)>& restrict) {
  std::vector<FiniteGroupoid> sections;
  for (auto n : sizes) sections.push_back(FiniteGroupoid::discrete(n));
  return make_presheaf(site, sections, [&](std::size_t u, std::size_t v) {
    auto f = restrict(u, v);
    if (f.size() != sizes[u]) throw InputError("restriction " + pair_label(site, u, v) + " has the wrong size");
    // in a discrete groupoid morphism x is the identity of object x
    return GroupoidMap{sections[u], sections[v], f, f};
  });
}

ValidationReport validate_presheaf_map(const PresheafMap& f) {
  const auto& s = f.dom.site;
  if (s.opens != f.cod.site.opens) return {{"site", "domain and codomain live on different sites"}};
  if (f.components.size() != s.num_opens()) return {{"shape", "one component per open"}};
  ValidationReport report;
  for (std::size_t u = 0; u < s.num_opens(); ++u) {
    const auto& c = f.components[u];
    if (!(c.dom == f.dom.sections[u]) || !(c.cod == f.cod.sections[u]) || !validate_functor(c).empty())
      report.push_back({"functor", "component over " + s.open_label(u) + " is not a functor between the sections"});
  }
  if (!report.empty()) return report;
  for_each_inclusion(s, [&](std::size_t u, std::size_t v) {
    if (u == v) return;
    if (!(then(f.components[u], f.cod.restriction(u, v)) == then(f.dom.restriction(u, v), f.components[v])))
      report.push_back({"naturality", "square for " + pair_label(s, u, v) + " does not commute"});
  });
  return report;
}

PresheafMap identity_presheaf_map(const GroupoidPresheaf& x) {
  PresheafMap f{x, x, {}};
  for (const auto& g : x.sections) f.components.push_back(identity_functor(g));
  return f;
}

PresheafMap to_terminal(const GroupoidPresheaf& x) {
  PresheafMap f{x, constant_presheaf(x.site, FiniteGroupoid::terminal()), {}};
  for (const auto& g : x.sections) f.components.push_back(to_terminal(g));
  return f;
}

PresheafMap image_presheaf(const GroupoidPresheaf& x, std::vector<GroupoidMap> components) {
  const auto& s = x.site;
  if (components.size() != s.num_opens()) throw InputError("one component per open");
  std::vector<FiniteGroupoid> sections;
  for (const auto& c : components) sections.push_back(c.cod);
  auto forced = [&](std::size_t u, std::size_t v) {
    const auto& fu = components[u];
    const auto& fv = components[v];
    const auto& r = x.restriction(u, v);
    GroupoidMap g{fu.cod, fv.cod, std::vector<ObjId>(fu.cod.num_objects(), kNone),
                  std::vector<MorId>(fu.cod.num_morphisms(), kNone)};
    auto assign = [&](auto& slot, auto value) {
      if (slot != kNone && slot != value)
        throw InvalidStructure("restriction " + pair_label(s, u, v) + " of the image is not well defined");
      slot = value;
    };
    for (ObjId o = 0; o < fu.obj_map.size(); ++o) assign(g.obj_map[fu.obj_map[o]], fv.obj_map[r.obj_map[o]]);
    for (MorId m = 0; m < fu.mor_map.size(); ++m) assign(g.mor_map[fu.mor_map[m]], fv.mor_map[r.mor_map[m]]);
    if (std::count(g.obj_map.begin(), g.obj_map.end(), kNone) || std::count(g.mor_map.begin(), g.mor_map.end(), kNone))
      throw InvalidStructure("component over " + s.open_label(u) + " is not surjective");
    return g;
  };
  return PresheafMap{x, make_presheaf(s, std::move(sections), forced), std::move(components)};
}

bool is_sectionwise_weq(const PresheafMap& f) {
  return std::all_of(f.components.begin(), f.components.end(), [](const auto& c) { return is_weak_equivalence(c); });
}

bool is_sectionwise_fib(const PresheafMap& f) {
  return std::all_of(f.components.begin(), f.components.end(), [](const auto& c) { return is_fibration(c); });
}

bool is_local_weq(const PresheafMap& f) {
  for (std::uint32_t t = 0; t < f.dom.site.num_points; ++t)
    if (!is_weak_equivalence(stalk_map(f, t))) return false;
  return true;
}

bool is_local_fib(const PresheafMap& f) {
  for (std::uint32_t t = 0; t < f.dom.site.num_points; ++t)
    if (!is_fibration(stalk_map(f, t))) return false;
  return true;
}

Neighbourhoods neighbourhood_diagram(const GroupoidPresheaf& x, std::uint32_t t) {
  const auto& s = x.site;
  if (t >= s.num_points) throw InputError("no point " + std::to_string(t));
  Neighbourhoods out{s.neighbourhoods(t), {}};
  const auto& nb = out.opens;
  std::vector<std::pair<ObjId, ObjId>> inclusions;
  for (ObjId i = 0; i < nb.size(); ++i)
    for (ObjId j = i + 1; j < nb.size(); ++j)
      if (s.contains(nb[i], nb[j])) inclusions.push_back({i, j});
  auto index = IndexCategory::poset(nb.size(), inclusions);
  for (ObjId i = 0; i < nb.size(); ++i) index.object_labels[i] = s.open_label(nb[i]);
  out.diagram.index = index;
  for (auto u : nb) out.diagram.nodes.push_back(x.sections[u]);
  for (MorId a = 0; a < index.num_arrows(); ++a)
    out.diagram.arrows.push_back(x.restriction(nb[index.src[a]], nb[index.tgt[a]]));
  return out;
}

GammaDiagram neighbourhood_diagram(const GroupoidPresheaf& x, const PresheafGammaAction& a, std::uint32_t t) {
  auto n = neighbourhood_diagram(x, t);
  GammaDiagram d{n.diagram.index, {}, n.diagram.arrows};
  for (auto u : n.opens) d.nodes.push_back(a.sections.at(u));
  return d;
}

StalkComputation stalk_computation(const GroupoidPresheaf& x, std::uint32_t t) {
  require_valid(validate_presheaf(x), "presheaf");
  StalkComputation out;
  out.point = t;
  out.minimal_open = x.site.minimal_open(t);
  out.neighbourhoods = neighbourhood_diagram(x, t);
  out.colimit = colimit(out.neighbourhoods.diagram);
  const auto& nb = out.neighbourhoods.opens;
  auto leg = std::find(nb.begin(), nb.end(), out.minimal_open) - nb.begin();
  out.matches_minimal_open = is_isomorphism(out.colimit.cocone[leg]);
  return out;
}

FiniteGroupoid stalk(const GroupoidPresheaf& x, std::uint32_t t) { return stalk_computation(x, t).colimit.groupoid; }

GammaAction stalk_action(const GroupoidPresheaf& x, const PresheafGammaAction& a, std::uint32_t t) {
  require_valid(validate_presheaf(x), "presheaf");
  require_valid(validate_presheaf_action(x, a), "presheaf action");
  return colimit(neighbourhood_diagram(x, a, t)).action;
}

GroupoidMap stalk_map(const PresheafMap& f, std::uint32_t t) {
  require_valid(validate_presheaf_map(f), "presheaf map");
  auto source = stalk_computation(f.dom, t);
  auto target = stalk_computation(f.cod, t);
  std::vector<GroupoidMap> components;
  for (auto u : source.neighbourhoods.opens) components.push_back(f.components[u]);
  return colimit_map(source.colimit, target.colimit, components);
}

namespace {

std::vector<HomotopyFixedPoints> sectionwise_hfp(const PresheafGammaAction& a) {
  std::vector<HomotopyFixedPoints> out;
  for (const auto& s : a.sections) out.push_back(hfp(s));
  return out;
}

GroupoidPresheaf hfp_presheaf(const GroupoidPresheaf& x, const PresheafGammaAction& a,
                              const std::vector<HomotopyFixedPoints>& fp) {
  std::vector<FiniteGroupoid> sections;
  for (const auto& h : fp) sections.push_back(h.groupoid);
  return make_presheaf(x.site, sections, [&](std::size_t u, std::size_t v) {
    return hfp_map({x.restriction(u, v), a.sections[u], a.sections[v]}, fp[u], fp[v]);
  });
}

}  // namespace

PresheafHfp presheaf_hfp(const GroupoidPresheaf& x, const PresheafGammaAction& a) {
  require_valid(validate_presheaf(x), "presheaf");
  require_valid(validate_presheaf_action(x, a), "presheaf action");
  PresheafHfp out{sectionwise_hfp(a), {}, {}};
  out.presheaf = hfp_presheaf(x, a, out.fixed_points);
  out.iota = PresheafMap{out.presheaf, x, {}};
  for (const auto& h : out.fixed_points) out.iota.components.push_back(iota(h));
  return out;
}

PresheafMap presheaf_hfp_map(const PresheafMap& f, const PresheafGammaAction& dom_action,
                             const PresheafGammaAction& cod_action) {
  require_valid(validate_presheaf_map(f), "presheaf map");
  auto dom = presheaf_hfp(f.dom, dom_action);
  auto cod = presheaf_hfp(f.cod, cod_action);
  PresheafMap out{dom.presheaf, cod.presheaf, {}};
  for (std::size_t u = 0; u < f.components.size(); ++u)
    out.components.push_back(hfp_map({f.components[u], dom_action.sections[u], cod_action.sections[u]},
                                     dom.fixed_points[u], cod.fixed_points[u]));
  return out;
}

StalkCommutation stalk_commutation_check(const GroupoidPresheaf& x, const PresheafGammaAction& a, std::uint32_t t) {
  auto fixed = presheaf_hfp(x, a);
  auto nb = neighbourhood_diagram(fixed.presheaf, t);
  StalkCommutation out{t, hfp_colimit_comparison(neighbourhood_diagram(x, a, t)), false, false};
  const auto& d = out.comparison.fixed_point_diagram.diagram;
  out.restrictions_match = d.nodes == nb.diagram.nodes && d.arrows == nb.diagram.arrows;
  out.isomorphism = out.restrictions_match && out.comparison.isomorphism;
  return out;
}

GroupPresheaf make_group_presheaf(const FiniteSite& site, std::vector<FiniteGroup> groups,
                                  const std::function<std::vector<Elem>(std::size_t u, std::size_t v)>& restrict) {
  if (groups.size() != site.num_opens()) throw InputError("one group per open");
  GroupPresheaf g{site, std::move(groups), std::vector<std::vector<Elem>>(site.num_opens() * site.num_opens())};
  for_each_inclusion(site, [&](std::size_t u, std::size_t v) { g.restrictions[u * site.num_opens() + v] = restrict(u, v); });
  return g;
}

GroupPresheaf constant_group_presheaf(const FiniteSite& site, const FiniteGroup& g) {
  return make_group_presheaf(site, std::vector<FiniteGroup>(site.num_opens(), g),
                             [&](std::size_t, std::size_t) { return identity_map(g); });
}

ValidationReport validate_group_presheaf(const GroupPresheaf& g) {
  const auto& s = g.site;
  auto report = validate_site(s);
  for (auto& v : report) v.axiom = "site";
  if (!report.empty()) return report;
  const auto n = s.num_opens();
  if (g.groups.size() != n || g.restrictions.size() != n * n)
    return {{"shape", "expected one group per open and a restriction slot per pair of opens"}};
  for_each_inclusion(s, [&](std::size_t u, std::size_t v) {
    const auto& r = g.restriction(u, v);
    bool ok = r.size() == g.groups[u].order() &&
              std::all_of(r.begin(), r.end(), [&](Elem e) { return e < g.groups[v].order(); });
    if (!ok || !is_homomorphism(g.groups[u], g.groups[v], r))
      report.push_back({"homomorphism", "restriction " + pair_label(s, u, v) + " is not a homomorphism"});
  });
  if (!report.empty()) return report;
  for (std::size_t u = 0; u < n; ++u)
    if (g.restriction(u, u) != identity_map(g.groups[u]))
      report.push_back({"identity", "restriction " + pair_label(s, u, u) + " is not the identity"});
  for_each_chain(s, [&](std::size_t u, std::size_t v, std::size_t w) {
    const auto &uv = g.restriction(u, v), &vw = g.restriction(v, w), &uw = g.restriction(u, w);
    for (Elem e = 0; e < uv.size(); ++e)
      if (vw[uv[e]] != uw[e]) {
        report.push_back({"composition", "restrictions " + pair_label(s, u, v) + " -> " + s.open_label(w) +
                                             " do not compose"});
        return;
      }
  });
  return report;
}

ValidationReport validate_action_presheaf(const ActionPresheaf& x) {
  auto report = validate_group_presheaf(x.groups);
  if (!report.empty()) return report;
  const auto& s = x.groups.site;
  const auto n = s.num_opens();
  if (x.actions.size() != n || x.restrictions.size() != n * n)
    return {{"shape", "expected one action per open and a restriction slot per pair of opens"}};
  for (std::size_t u = 0; u < n; ++u)
    if (!(x.actions[u].group == x.groups.groups[u]) || !validate_action(x.actions[u]).empty())
      report.push_back({"action", "action over " + s.open_label(u) + " is not an action of G(U)"});
  if (!report.empty()) return report;
  for_each_inclusion(s, [&](std::size_t u, std::size_t v) {
    const auto& r = x.restriction(u, v);
    const auto& a = x.actions[u];
    const auto& b = x.actions[v];
    const auto& h = x.groups.restriction(u, v);
    if (r.size() != a.carrier_size ||
        !std::all_of(r.begin(), r.end(), [&](std::uint32_t p) { return p < b.carrier_size; })) {
      report.push_back({"shape", "restriction " + pair_label(s, u, v) + " has the wrong size"});
      return;
    }
    for (Elem g = 0; g < a.group.order(); ++g)
      for (std::uint32_t p = 0; p < a.carrier_size; ++p)
        if (r[a.act(g, p)] != b.act(h[g], r[p])) {
          report.push_back({"equivariance", "restriction " + pair_label(s, u, v) + " is not equivariant"});
          return;
        }
  });
  if (!report.empty()) return report;
  for (std::size_t u = 0; u < n; ++u) {
    const auto& r = x.restriction(u, u);
    for (std::uint32_t p = 0; p < r.size(); ++p)
      if (r[p] != p) {
        report.push_back({"identity", "restriction " + pair_label(s, u, u) + " is not the identity"});
        break;
      }
  }
  for_each_chain(s, [&](std::size_t u, std::size_t v, std::size_t w) {
    const auto &uv = x.restriction(u, v), &vw = x.restriction(v, w), &uw = x.restriction(u, w);
    for (std::uint32_t p = 0; p < uv.size(); ++p)
      if (vw[uv[p]] != uw[p]) {
        report.push_back({"composition", "restrictions " + pair_label(s, u, v) + " -> " + s.open_label(w) +
                                             " do not compose"});
        return;
      }
  });
  return report;
}

ActionPresheaf point_action_presheaf(const GroupPresheaf& g) {
  const auto n = g.site.num_opens();
  ActionPresheaf x{g, {}, std::vector<std::vector<std::uint32_t>>(n * n)};
  for (const auto& group : g.groups) x.actions.push_back(trivial_action(group));
  for_each_inclusion(g.site, [&](std::size_t u, std::size_t v) { x.restrictions[u * n + v] = {0}; });
  return x;
}

ActionPresheaf translation_action_presheaf(const GroupPresheaf& g) {
  const auto n = g.site.num_opens();
  ActionPresheaf x{g, {}, std::vector<std::vector<std::uint32_t>>(n * n)};
  for (const auto& group : g.groups) x.actions.push_back(left_multiplication(group));
  for_each_inclusion(g.site, [&](std::size_t u, std::size_t v) {
    const auto& h = g.restriction(u, v);
    x.restrictions[u * n + v].assign(h.begin(), h.end());
  });
  return x;
}

GroupoidPresheaf build_presheaf_action_groupoid(const ActionPresheaf& x) {
  require_valid(validate_action_presheaf(x), "action presheaf");
  std::vector<FiniteGroupoid> sections;
  for (const auto& a : x.actions) sections.push_back(build_action_groupoid(a));
  return make_presheaf(x.groups.site, sections, [&](std::size_t u, std::size_t v) {
    return action_groupoid_map(x.actions[u], sections[u], x.actions[v], sections[v], x.groups.restriction(u, v),
                               x.restriction(u, v));
  });
}

ValidationReport validate_involutive_presheaf(const InvolutivePresheaf& d) {
  auto report = validate_group_presheaf(d.groups);
  if (!report.empty()) return report;
  const auto& s = d.groups.site;
  if (d.theta.size() != s.num_opens() || d.subgroups.size() != s.num_opens())
    return {{"shape", "expected θ and B at every open"}};
  for (std::size_t u = 0; u < s.num_opens(); ++u) {
    auto r = validate_involutive_data(d.section(u));
    if (!r.empty()) report.push_back({"involution", "data over " + s.open_label(u) + ": " + r.front().axiom});
  }
  if (!report.empty()) return report;
  for_each_inclusion(s, [&](std::size_t u, std::size_t v) {
    const auto& h = d.groups.restriction(u, v);
    for (Elem g = 0; g < h.size(); ++g)
      if (h[d.theta[u][g]] != d.theta[v][h[g]]) {
        report.push_back({"theta-natural", "restriction " + pair_label(s, u, v) + " does not commute with θ"});
        break;
      }
    const auto& bv = d.subgroups[v];
    for (auto b : d.subgroups[u])
      if (std::find(bv.begin(), bv.end(), h[b]) == bv.end()) {
        report.push_back({"subgroup", "restriction " + pair_label(s, u, v) + " does not carry B(U) into B(V)"});
        break;
      }
  });
  return report;
}

InvolutivePresheaf constant_involutive_presheaf(const FiniteSite& site, const InvolutiveGroupData& d) {
  return InvolutivePresheaf{constant_group_presheaf(site, d.group),
                            std::vector<std::vector<Elem>>(site.num_opens(), d.theta),
                            std::vector<std::vector<Elem>>(site.num_opens(), d.subgroup)};
}

ParameterFibrationPresheaf parameter_fibration_presheaf(const InvolutivePresheaf& d) {
  require_valid(validate_involutive_presheaf(d), "involutive presheaf");
  const auto& site = d.groups.site;
  const auto n = site.num_opens();
  ParameterFibrationPresheaf out;
  std::vector<GroupAction> double_cosets;
  std::vector<Subgroup> b;
  std::vector<FiniteGroupoid> source_sections, target_sections;
  for (std::size_t u = 0; u < n; ++u) {
    auto data = d.section(u);
    double_cosets.push_back(double_coset_action(data));
    b.push_back(subgroup_of(data));
    out.action.sections.push_back(build_double_coset_groupoid(data));
    source_sections.push_back(out.action.sections.back().carrier);
    out.sections.push_back(parameter_fibration(data));
    target_sections.push_back(out.sections.back().map.cod);
  }
  // h restricted to B(U) -> B(V) in local ids
  auto on_b = [&](std::size_t u, std::size_t v) {
    const auto& h = d.groups.restriction(u, v);
    std::vector<Elem> out_map;
    for (auto e : b[u].elements) out_map.push_back(*b[v].local(h[e]));
    return out_map;
  };
  out.source = make_presheaf(site, source_sections, [&](std::size_t u, std::size_t v) {
    auto hb = on_b(u, v);
    const auto m = b[u].elements.size(), k = b[v].elements.size();
    std::vector<Elem> pairs(m * m);
    for (Elem b1 = 0; b1 < m; ++b1)
      for (Elem b2 = 0; b2 < m; ++b2) pairs[b1 * m + b2] = static_cast<Elem>(hb[b1] * k + hb[b2]);
    const auto& h = d.groups.restriction(u, v);
    std::vector<std::uint32_t> on_g(h.begin(), h.end());
    return action_groupoid_map(double_cosets[u], source_sections[u], double_cosets[v], source_sections[v], pairs, on_g);
  });
  out.fixed_points = presheaf_hfp(out.source, out.action);
  out.target = make_presheaf(site, target_sections, [&](std::size_t u, std::size_t v) {
    const auto& zu = out.sections[u].z;
    const auto& zv = out.sections[v].z;
    const auto& h = d.groups.restriction(u, v);
    std::vector<std::uint32_t> on_z;
    for (auto z : zu.elements) {
      auto it = std::lower_bound(zv.elements.begin(), zv.elements.end(), h[z]);
      on_z.push_back(static_cast<std::uint32_t>(it - zv.elements.begin()));
    }
    return action_groupoid_map(zu.action, target_sections[u], zv.action, target_sections[v], on_b(u, v), on_z);
  });
  out.map = PresheafMap{out.fixed_points.presheaf, out.target, {}};
  for (std::size_t u = 0; u < n; ++u) {
    auto c = out.sections[u].map;
    if (!(c.dom == out.fixed_points.presheaf.sections[u]))
      throw InvalidStructure("fixed points over " + site.open_label(u) + " were built inconsistently");
    c.dom = out.fixed_points.presheaf.sections[u];
    out.map.components.push_back(std::move(c));
  }
  out.natural = validate_presheaf(out.target).empty() && validate_presheaf_map(out.map).empty();
  out.sectionwise_fibration = is_sectionwise_fib(out.map);
  out.sectionwise_weak_equivalence = is_sectionwise_weq(out.map);
  return out;
}

}  // namespace hgrpd
