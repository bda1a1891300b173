#include "hgrpd/colimit.hpp"

#include <algorithm>
#include <map>

#include "hgrpd/error.hpp"
#include "hgrpd/union_find.hpp"

namespace hgrpd {

std::vector<MorId> IndexCategory::hom(ObjId from, ObjId to) const {
  std::vector<MorId> out;
  for (MorId a = 0; a < num_arrows(); ++a)
    if (src[a] == from && tgt[a] == to) out.push_back(a);
  return out;
}

IndexCategory IndexCategory::from_compose(std::size_t num_objects, std::vector<ObjId> src, std::vector<ObjId> tgt,
                                          std::vector<MorId> identity,
                                          const std::function<MorId(MorId, MorId)>& compose) {
  IndexCategory c;
  c.num_objects = num_objects;
  c.src = std::move(src);
  c.tgt = std::move(tgt);
  c.identity = std::move(identity);
  const auto n = c.num_arrows();
  if (c.tgt.size() != n || c.identity.size() != num_objects) throw InputError("index category: table sizes differ");
  c.composition.assign(n * n, kNone);
  for (MorId a = 0; a < n; ++a)
    for (MorId b = 0; b < n; ++b)
      if (c.tgt[a] == c.src[b]) c.composition[a * n + b] = compose(a, b);
  for (ObjId i = 0; i < num_objects; ++i) c.object_labels.push_back(std::to_string(i));
  for (MorId a = 0; a < n; ++a) {
    bool is_identity = c.identity[c.src[a]] == a;
    c.arrow_labels.push_back(is_identity ? "id" + std::to_string(c.src[a]) : "a" + std::to_string(a));
  }
  return c;
}

IndexCategory IndexCategory::single() {
  return from_compose(1, {0}, {0}, {0}, [](MorId, MorId) { return MorId{0}; });
}

IndexCategory IndexCategory::poset(std::size_t n, std::span<const std::pair<ObjId, ObjId>> arrows) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
  for (auto [i, j] : arrows) {
    if (i >= n || j >= n) throw InputError("poset arrow out of range");
    leq[i][j] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  std::vector<ObjId> src, tgt;
  std::vector<MorId> identity(n);
  std::map<std::pair<ObjId, ObjId>, MorId> id_of;
  for (ObjId i = 0; i < n; ++i)
    for (ObjId j = 0; j < n; ++j)
      if (leq[i][j]) {
        auto a = static_cast<MorId>(src.size());
        id_of[{i, j}] = a;
        if (i == j) identity[i] = a;
        src.push_back(i);
        tgt.push_back(j);
      }
  auto s = src, t = tgt;
  return from_compose(n, std::move(src), std::move(tgt), std::move(identity),
                      [&](MorId a, MorId b) { return id_of.at({s[a], t[b]}); });
}

IndexCategory IndexCategory::monoid(std::vector<MorId> table, MorId unit) {
  std::size_t n = 0;
  while (n * n < table.size()) ++n;
  if (n * n != table.size() || unit >= n) throw InputError("monoid table is not square");
  return from_compose(1, std::vector<ObjId>(n, 0), std::vector<ObjId>(n, 0), {unit},
                      [&](MorId a, MorId b) { return table[a * n + b]; });
}

ValidationReport validate_index(const IndexCategory& c) {
  ValidationReport report;
  const auto n = c.num_arrows();
  if (c.tgt.size() != n || c.identity.size() != c.num_objects || c.composition.size() != n * n) {
    report.push_back({"shape", "index tables have inconsistent sizes"});
    return report;
  }
  for (MorId a = 0; a < n; ++a)
    if (c.src[a] >= c.num_objects || c.tgt[a] >= c.num_objects) {
      report.push_back({"shape", "arrow endpoint out of range"});
      return report;
    }
  for (ObjId i = 0; i < c.num_objects; ++i) {
    auto e = c.identity[i];
    if (e >= n || c.src[e] != i || c.tgt[e] != i) {
      report.push_back({"identity", "identity of object " + std::to_string(i) + " is not an endomorphism of it"});
      return report;
    }
  }
  for (MorId a = 0; a < n; ++a)
    for (MorId b = 0; b < n; ++b) {
      auto r = c.composition[a * n + b];
      if (c.tgt[a] != c.src[b]) {
        if (r != kNone) report.push_back({"composition", "non-composable pair has a composite"});
        continue;
      }
      if (r >= n) {
        report.push_back({"composition", "composable pair has no composite"});
        return report;
      }
      if (c.src[r] != c.src[a] || c.tgt[r] != c.tgt[b])
        report.push_back({"composition", "composite has the wrong endpoints"});
    }
  if (!report.empty()) return report;
  for (MorId a = 0; a < n; ++a)
    if (c.compose(c.identity[c.src[a]], a) != a || c.compose(a, c.identity[c.tgt[a]]) != a) {
      report.push_back({"unit", "identity law fails at arrow " + std::to_string(a)});
      break;
    }
  for (MorId a = 0; a < n; ++a)
    for (MorId b = 0; b < n; ++b) {
      if (c.tgt[a] != c.src[b]) continue;
      for (MorId e = 0; e < n; ++e)
        if (c.tgt[b] == c.src[e] && c.compose(c.compose(a, b), e) != c.compose(a, c.compose(b, e))) {
          report.push_back({"associativity", "associativity fails"});
          return report;
        }
    }
  return report;
}

std::optional<FilteredWitness> filtered_witness(const IndexCategory& c) {
  if (c.num_objects == 0) return FilteredWitness{"the index category is empty", {}, {}};
  const auto n = c.num_arrows();
  std::vector<std::vector<bool>> reach(c.num_objects, std::vector<bool>(c.num_objects, false));
  for (MorId a = 0; a < n; ++a) reach[c.src[a]][c.tgt[a]] = true;
  for (ObjId i = 0; i < c.num_objects; ++i)
    for (ObjId j = i + 1; j < c.num_objects; ++j) {
      bool cocone = false;
      for (ObjId k = 0; k < c.num_objects && !cocone; ++k) cocone = reach[i][k] && reach[j][k];
      if (!cocone)
        return FilteredWitness{"objects " + c.object_labels[i] + " and " + c.object_labels[j] + " have no cocone",
                               {i, j}, {}};
    }
  for (MorId u = 0; u < n; ++u)
    for (MorId v = u + 1; v < n; ++v) {
      if (c.src[u] != c.src[v] || c.tgt[u] != c.tgt[v]) continue;
      bool equalized = false;
      for (MorId w = 0; w < n && !equalized; ++w)
        equalized = c.src[w] == c.tgt[u] && c.compose(u, w) == c.compose(v, w);
      if (!equalized)
        return FilteredWitness{"arrows " + c.arrow_labels[u] + " and " + c.arrow_labels[v] + " are never equalized",
                               {}, {u, v}};
    }
  return std::nullopt;
}

namespace {

ValidationReport validate_shape(const IndexCategory& index, std::span<const FiniteGroupoid> nodes,
                                std::span<const GroupoidMap> arrows) {
  auto report = validate_index(index);
  if (!report.empty()) return report;
  if (nodes.size() != index.num_objects || arrows.size() != index.num_arrows()) {
    report.push_back({"shape", "diagram has the wrong number of nodes or arrows"});
    return report;
  }
  for (ObjId i = 0; i < nodes.size(); ++i) {
    auto r = validate_groupoid(nodes[i]);
    if (!r.empty()) report.push_back({"node", "node " + index.object_labels[i] + ": " + r.front().axiom});
  }
  for (MorId a = 0; a < arrows.size(); ++a) {
    const auto& f = arrows[a];
    if (!(f.dom == nodes[index.src[a]]) || !(f.cod == nodes[index.tgt[a]])) {
      report.push_back({"endpoints", "arrow " + index.arrow_labels[a] + " does not join its nodes"});
      continue;
    }
    auto r = validate_functor(f);
    if (!r.empty()) report.push_back({"functor", "arrow " + index.arrow_labels[a] + ": " + r.front().axiom});
  }
  if (!report.empty()) return report;
  for (ObjId i = 0; i < nodes.size(); ++i)
    if (!(arrows[index.identity[i]] == identity_functor(nodes[i])))
      report.push_back({"identity", "identity arrow of " + index.object_labels[i] + " is not the identity functor"});
  for (MorId a = 0; a < arrows.size(); ++a)
    for (MorId b = 0; b < arrows.size(); ++b)
      if (index.tgt[a] == index.src[b] && !(then(arrows[a], arrows[b]) == arrows[index.compose(a, b)]))
        report.push_back({"composition", "arrows " + index.arrow_labels[a] + " then " + index.arrow_labels[b] +
                                             " do not compose to their composite"});
  return report;
}

std::vector<FiniteGroupoid> carriers(const GammaDiagram& d) {
  std::vector<FiniteGroupoid> out;
  for (const auto& n : d.nodes) out.push_back(n.carrier);
  return out;
}

void require_valid(const ValidationReport& report) {
  if (!report.empty())
    throw InvalidStructure("invalid diagram: " + report.front().axiom + ": " + report.front().detail);
}

void require_filtered(const IndexCategory& c) {
  if (auto w = filtered_witness(c)) throw NotFiltered(w->objects, w->arrows, "index is not filtered: " + w->reason);
}

// The quotient of the disjoint union of node elements by the relation
// generated by the arrows.
struct Quotient {
  std::vector<std::uint32_t> offset;  ///< node -> first global id
  std::vector<std::uint32_t> cls;     ///< global id -> class
  std::vector<std::uint32_t> rep;     ///< class -> smallest global id
  std::vector<ObjId> node_of;         ///< global id -> node

  std::uint32_t of(ObjId node, std::uint32_t local) const { return cls[offset[node] + local]; }
  std::uint32_t local(std::uint32_t global) const { return global - offset[node_of[global]]; }
};

template <class SizeOf, class Apply>
Quotient quotient(const IndexCategory& index, SizeOf size_of, Apply apply) {
  Quotient q;
  std::uint32_t total = 0;
  for (ObjId i = 0; i < index.num_objects; ++i) {
    q.offset.push_back(total);
    auto n = static_cast<std::uint32_t>(size_of(i));
    q.node_of.insert(q.node_of.end(), n, i);
    total += n;
  }
  UnionFind uf(total);
  for (MorId a = 0; a < index.num_arrows(); ++a) {
    auto i = index.src[a], j = index.tgt[a];
    for (std::uint32_t x = 0; x < size_of(i); ++x) uf.unite(q.offset[i] + x, q.offset[j] + apply(a, x));
  }
  std::uint32_t count = 0;
  q.cls = uf.classes(&count);
  q.rep.assign(count, kNone);
  for (std::uint32_t g = 0; g < total; ++g)
    if (q.rep[q.cls[g]] == kNone) q.rep[q.cls[g]] = g;
  return q;
}

struct RawColimit {
  Colimit colimit;
  Quotient objects, morphisms;
};

RawColimit build(const IndexCategory& index, std::span<const FiniteGroupoid> nodes,
                 std::span<const GroupoidMap> arrows) {
  auto objects = quotient(
      index, [&](ObjId i) { return nodes[i].num_objects(); },
      [&](MorId a, std::uint32_t x) { return arrows[a].obj_map[x]; });
  auto morphisms = quotient(
      index, [&](ObjId i) { return nodes[i].num_morphisms(); },
      [&](MorId a, std::uint32_t m) { return arrows[a].mor_map[m]; });

  GroupoidTables t;
  t.num_objects = objects.rep.size();
  const auto n_mor = morphisms.rep.size();
  t.src.assign(n_mor, kNone);
  t.tgt.assign(n_mor, kNone);
  t.inverse.assign(n_mor, kNone);
  t.identity.assign(t.num_objects, kNone);

  auto assign = [](auto& slot, auto value, const char* what) {
    if (slot == kNone)
      slot = value;
    else if (slot != value)
      throw InvalidStructure(std::string("objectwise colimit: ") + what + " is not well defined");
  };
  std::map<std::pair<MorId, MorId>, MorId> comp;
  for (ObjId i = 0; i < nodes.size(); ++i) {
    const auto& g = nodes[i];
    for (ObjId x = 0; x < g.num_objects(); ++x)
      assign(t.identity[objects.of(i, x)], morphisms.of(i, g.identity(x)), "identity");
    for (MorId m = 0; m < g.num_morphisms(); ++m) {
      auto c = morphisms.of(i, m);
      assign(t.src[c], objects.of(i, g.src(m)), "source");
      assign(t.tgt[c], objects.of(i, g.tgt(m)), "target");
      assign(t.inverse[c], morphisms.of(i, g.inverse(m)), "inverse");
      for (auto n : g.out(g.tgt(m))) {
        auto [it, inserted] = comp.try_emplace({c, morphisms.of(i, n)}, morphisms.of(i, g.compose(m, n)));
        if (!inserted && it->second != morphisms.of(i, g.compose(m, n)))
          throw InvalidStructure("objectwise colimit: composition is not well defined");
      }
    }
  }
  for (const auto& [key, r] : comp) t.composition.push_back({key.first, key.second, r});
  for (auto r : objects.rep) {
    auto i = objects.node_of[r];
    t.object_labels.push_back(index.object_labels[i] + ":" + nodes[i].object_label(objects.local(r)));
  }
  for (auto r : morphisms.rep) {
    auto i = morphisms.node_of[r];
    t.morphism_labels.push_back(index.object_labels[i] + ":" + nodes[i].morphism_label(morphisms.local(r)));
  }
  FiniteGroupoid g(t);
  auto report = validate_groupoid(g);
  if (!report.empty())
    throw InvalidStructure("objectwise colimit is not a groupoid: " + report.front().axiom + ": " +
                           report.front().detail);

  RawColimit out{Colimit{g, {}}, std::move(objects), std::move(morphisms)};
  for (ObjId i = 0; i < nodes.size(); ++i) {
    GroupoidMap f{nodes[i], g, {}, {}};
    for (ObjId x = 0; x < nodes[i].num_objects(); ++x) f.obj_map.push_back(out.objects.of(i, x));
    for (MorId m = 0; m < nodes[i].num_morphisms(); ++m) f.mor_map.push_back(out.morphisms.of(i, m));
    out.colimit.cocone.push_back(std::move(f));
  }
  return out;
}

GammaColimit build_gamma(const GammaDiagram& d) {
  auto nodes = carriers(d);
  auto raw = build(d.index, nodes, d.arrows);
  const auto& g = raw.colimit.groupoid;
  GammaAction a{g, std::vector<ObjId>(g.num_objects(), kNone), std::vector<MorId>(g.num_morphisms(), kNone)};
  for (ObjId i = 0; i < nodes.size(); ++i) {
    const auto& f = raw.colimit.cocone[i];
    for (ObjId x = 0; x < nodes[i].num_objects(); ++x) {
      auto& slot = a.bar_obj[f.obj_map[x]];
      auto value = f.obj_map[d.nodes[i].bar_obj[x]];
      if (slot != kNone && slot != value) throw InvalidStructure("colimit: induced action is not well defined");
      slot = value;
    }
    for (MorId m = 0; m < nodes[i].num_morphisms(); ++m) {
      auto& slot = a.bar_mor[f.mor_map[m]];
      auto value = f.mor_map[d.nodes[i].bar_mor[m]];
      if (slot != kNone && slot != value) throw InvalidStructure("colimit: induced action is not well defined");
      slot = value;
    }
  }
  return GammaColimit{std::move(a), std::move(raw.colimit.cocone)};
}

}  // namespace

ValidationReport validate_diagram(const GroupoidDiagram& d) { return validate_shape(d.index, d.nodes, d.arrows); }

ValidationReport validate_diagram(const GammaDiagram& d) {
  auto nodes = carriers(d);
  auto report = validate_shape(d.index, nodes, d.arrows);
  if (!report.empty()) return report;
  for (ObjId i = 0; i < nodes.size(); ++i) {
    auto r = validate_gamma_action(d.nodes[i]);
    if (!r.empty()) report.push_back({"gamma", "action on node " + d.index.object_labels[i] + ": " + r.front().axiom});
  }
  if (!report.empty()) return report;
  for (MorId a = 0; a < d.arrows.size(); ++a)
    if (!is_equivariant({d.arrows[a], d.nodes[d.index.src[a]], d.nodes[d.index.tgt[a]]}))
      report.push_back({"equivariance", "arrow " + d.index.arrow_labels[a] + " is not equivariant"});
  return report;
}

GroupoidDiagram underlying(const GammaDiagram& d) { return GroupoidDiagram{d.index, carriers(d), d.arrows}; }

Colimit objectwise_colimit(const GroupoidDiagram& d) {
  require_valid(validate_diagram(d));
  return build(d.index, d.nodes, d.arrows).colimit;
}

Colimit colimit(const GroupoidDiagram& d) {
  require_valid(validate_diagram(d));
  require_filtered(d.index);
  return build(d.index, d.nodes, d.arrows).colimit;
}

GammaColimit objectwise_colimit(const GammaDiagram& d) {
  require_valid(validate_diagram(d));
  return build_gamma(d);
}

GammaColimit colimit(const GammaDiagram& d) {
  require_valid(validate_diagram(d));
  require_filtered(d.index);
  return build_gamma(d);
}

GroupoidMap colimit_map(const Colimit& source, const Colimit& target, std::span<const GroupoidMap> components) {
  if (components.size() != source.cocone.size() || components.size() != target.cocone.size())
    throw InputError("colimit map: one component per node is required");
  const auto& s = source.groupoid;
  GroupoidMap f{s, target.groupoid, std::vector<ObjId>(s.num_objects(), kNone),
                std::vector<MorId>(s.num_morphisms(), kNone)};
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    const auto& in = source.cocone[i];
    const auto& out = target.cocone[i];
    if (!(c.dom == in.dom) || !(c.cod == out.dom))
      throw InputError("colimit map: component " + std::to_string(i) + " does not join the nodes");
    for (ObjId x = 0; x < c.dom.num_objects(); ++x) {
      auto& slot = f.obj_map[in.obj_map[x]];
      auto value = out.obj_map[c.obj_map[x]];
      if (slot != kNone && slot != value) throw InvalidStructure("colimit map: components are not natural");
      slot = value;
    }
    for (MorId m = 0; m < c.dom.num_morphisms(); ++m) {
      auto& slot = f.mor_map[in.mor_map[m]];
      auto value = out.mor_map[c.mor_map[m]];
      if (slot != kNone && slot != value) throw InvalidStructure("colimit map: components are not natural");
      slot = value;
    }
  }
  return f;
}

HfpDiagram hfp_diagram(const GammaDiagram& d) {
  HfpDiagram h;
  h.diagram.index = d.index;
  for (const auto& n : d.nodes) {
    h.fixed_points.push_back(hfp(n));
    h.diagram.nodes.push_back(h.fixed_points.back().groupoid);
  }
  for (MorId a = 0; a < d.arrows.size(); ++a) {
    auto i = d.index.src[a], j = d.index.tgt[a];
    h.diagram.arrows.push_back(
        hfp_map({d.arrows[a], d.nodes[i], d.nodes[j]}, h.fixed_points[i], h.fixed_points[j]));
  }
  return h;
}

namespace {

HfpColimitComparison compare(const GammaDiagram& d, bool filtered) {
  require_valid(validate_diagram(d));
  if (filtered) require_filtered(d.index);
  auto c = build_gamma(d);
  auto fp = hfp(c.action);
  auto hd = hfp_diagram(d);
  auto hc = build(hd.diagram.index, hd.diagram.nodes, hd.diagram.arrows).colimit;

  const auto& dom = hc.groupoid;
  GroupoidMap f{dom, fp.groupoid, std::vector<ObjId>(dom.num_objects(), kNone),
                std::vector<MorId>(dom.num_morphisms(), kNone)};
  for (ObjId i = 0; i < d.nodes.size(); ++i) {
    const auto& h = hd.fixed_points[i];
    const auto& to_colim = c.cocone[i];
    std::vector<ObjId> image(h.objects.size());
    for (ObjId o = 0; o < h.objects.size(); ++o) {
      auto found = fp.find({to_colim.obj_map[h.objects[o].base], to_colim.mor_map[h.objects[o].phi]});
      if (!found) throw InvalidStructure("colimit comparison: a fixed point does not map to a fixed point");
      image[o] = *found;
      auto& slot = f.obj_map[hc.cocone[i].obj_map[o]];
      if (slot != kNone && slot != image[o]) throw InvalidStructure("colimit comparison is not well defined");
      slot = image[o];
    }
    for (MorId m = 0; m < h.groupoid.num_morphisms(); ++m) {
      auto value = fp.arrow(image[h.groupoid.src(m)], to_colim.mor_map[h.underlying[m]]);
      auto& slot = f.mor_map[hc.cocone[i].mor_map[m]];
      if (slot != kNone && slot != value) throw InvalidStructure("colimit comparison is not well defined");
      slot = value;
    }
  }
  HfpColimitComparison out{std::move(c), std::move(fp), std::move(hd), std::move(hc), std::move(f), false};
  out.isomorphism = is_isomorphism(out.map);
  return out;
}

}  // namespace

HfpColimitComparison hfp_colimit_comparison(const GammaDiagram& d) { return compare(d, true); }
HfpColimitComparison objectwise_hfp_colimit_comparison(const GammaDiagram& d) { return compare(d, false); }

}  // namespace hgrpd
