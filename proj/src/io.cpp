#include "hgrpd/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "hgrpd/cohomology.hpp"
#include "hgrpd/error.hpp"
#include "hgrpd/fixtures.hpp"

namespace hgrpd {

namespace {

// Runs a loader and reports nlohmann type errors as input errors.
template <class Fn>
auto guarded(const char* what, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw InputError(std::string("expected an object holding \"") + name + "\"");
  auto it = j.find(name);
  if (it == j.end()) throw InputError(std::string("missing field \"") + name + "\"");
  return *it;
}

const Json& array_field(const Json& j, const char* name) {
  const auto& a = field(j, name);
  if (!a.is_array()) throw InputError(std::string("field \"") + name + "\" must be an array");
  return a;
}

std::uint32_t index_in(const Json& v, std::size_t bound, const std::string& what) {
  if (!v.is_number_integer()) throw InputError(what + " must be an integer id");
  auto x = v.get<std::int64_t>();
  if (x < 0 || static_cast<std::size_t>(x) >= bound) throw InputError(what + " " + std::to_string(x) + " out of range");
  return static_cast<std::uint32_t>(x);
}

// An id or a label from `labels`.
std::uint32_t ref_in(const Json& v, const std::vector<std::string>& labels, const std::string& what) {
  if (v.is_string()) {
    auto it = std::find(labels.begin(), labels.end(), v.get<std::string>());
    if (it == labels.end()) throw InputError(what + " \"" + v.get<std::string>() + "\" is unknown");
    return static_cast<std::uint32_t>(it - labels.begin());
  }
  return index_in(v, labels.size(), what);
}

std::vector<std::uint32_t> ids_in(const Json& a, std::size_t expected, std::size_t bound, const std::string& what) {
  if (!a.is_array() || a.size() != expected)
    throw InputError(what + " must be an array of " + std::to_string(expected) + " ids");
  std::vector<std::uint32_t> out;
  for (const auto& v : a) out.push_back(index_in(v, bound, what));
  return out;
}

std::vector<std::string> object_labels(const FiniteGroupoid& g) {
  std::vector<std::string> out;
  for (ObjId x = 0; x < g.num_objects(); ++x) out.push_back(g.object_label(x));
  return out;
}

GroupoidMap map_from_json(const Json& j, const FiniteGroupoid& dom, const FiniteGroupoid& cod, const std::string& what) {
  GroupoidMap f{dom, cod, {}, {}};
  const auto cod_labels = object_labels(cod);
  const auto& objects = array_field(j, "objects");
  if (objects.size() != dom.num_objects())
    throw InputError(what + ": expected " + std::to_string(dom.num_objects()) + " object images");
  for (const auto& v : objects) f.obj_map.push_back(ref_in(v, cod_labels, what + " object image"));
  f.mor_map = ids_in(field(j, "morphisms"), dom.num_morphisms(), cod.num_morphisms(), what + " morphism image");
  return f;
}

Json map_to_json(const GroupoidMap& f) { return Json{{"objects", f.obj_map}, {"morphisms", f.mor_map}}; }

std::uint32_t open_mask(const Json& j, const FiniteSite& s) {
  if (!j.is_array()) throw InputError("an open is an array of point labels");
  std::uint32_t mask = 0;
  for (const auto& p : j) mask |= 1u << ref_in(p, s.point_labels, "point");
  return mask;
}

std::size_t open_index(const Json& j, const FiniteSite& s) {
  auto u = s.find(open_mask(j, s));
  if (!u) throw InputError("set " + j.dump() + " is not an open of the site");
  return *u;
}

Json open_to_json(const FiniteSite& s, std::size_t u) {
  Json out = Json::array();
  for (std::size_t t = 0; t < s.num_points; ++t)
    if (s.opens[u] >> t & 1u) out.push_back(s.point_labels[t]);
  return out;
}

IndexCategory index_from_json(const Json& j) {
  if (j.contains("poset")) {
    const auto& p = j["poset"];
    auto n = index_in(field(p, "size"), 64, "poset size");
    std::vector<std::pair<ObjId, ObjId>> covers;
    for (const auto& c : array_field(p, "covers")) {
      if (!c.is_array() || c.size() != 2) throw InputError("a cover is a pair [i, j]");
      auto i = index_in(c[0], n, "cover source"), k = index_in(c[1], n, "cover target");
      if (i > k) throw InputError("poset covers must go from lower to higher ids");
      covers.push_back({i, k});
    }
    return IndexCategory::poset(n, covers);
  }
  IndexCategory c;
  const auto& objects = field(j, "objects");
  if (objects.is_array()) {
    for (const auto& o : objects) c.object_labels.push_back(o.get<std::string>());
    c.num_objects = c.object_labels.size();
  } else {
    c.num_objects = index_in(objects, 64, "object count");
    for (std::size_t i = 0; i < c.num_objects; ++i) c.object_labels.push_back(std::to_string(i));
  }
  for (const auto& a : array_field(j, "arrows")) {
    c.src.push_back(ref_in(field(a, "src"), c.object_labels, "arrow source"));
    c.tgt.push_back(ref_in(field(a, "tgt"), c.object_labels, "arrow target"));
    c.arrow_labels.push_back(a.contains("label") ? a["label"].get<std::string>() : "a" + std::to_string(c.src.size() - 1));
  }
  const auto n = c.num_arrows();
  c.identity = ids_in(field(j, "identities"), c.num_objects, n, "identity arrow");
  c.composition.assign(n * n, kNone);
  for (const auto& t : array_field(j, "composition")) {
    auto ids = ids_in(t, 3, n, "composition entry");
    c.composition[ids[0] * n + ids[1]] = ids[2];
  }
  return c;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string document_kind(const Json& j) {
  return guarded("document", [&] {
    const auto& v = field(j, "schema");
    if (!v.is_number_integer() || v.get<int>() != kSchemaVersion)
      throw InputError("unsupported schema " + v.dump() + ", expected " + std::to_string(kSchemaVersion));
    return field(j, "kind").get<std::string>();
  });
}

FiniteGroupoid groupoid_from_json(const Json& j) {
  return guarded("groupoid", [&] {
    GroupoidTables t;
    for (const auto& o : array_field(j, "objects")) t.object_labels.push_back(o.get<std::string>());
    t.num_objects = t.object_labels.size();
    const auto& morphisms = array_field(j, "morphisms");
    const auto m = morphisms.size();
    t.src.assign(m, 0);
    t.tgt.assign(m, 0);
    t.inverse.assign(m, kNone);
    t.morphism_labels.assign(m, "");
    std::vector<bool> seen(m, false);
    for (const auto& e : morphisms) {
      auto id = index_in(field(e, "id"), m, "morphism id");
      if (seen[id]) throw InputError("morphism id " + std::to_string(id) + " repeated");
      seen[id] = true;
      t.src[id] = ref_in(field(e, "src"), t.object_labels, "morphism source");
      t.tgt[id] = ref_in(field(e, "tgt"), t.object_labels, "morphism target");
      if (e.contains("inverse")) t.inverse[id] = index_in(e["inverse"], m, "inverse");
      t.morphism_labels[id] = e.contains("label") ? e["label"].get<std::string>() : "m" + std::to_string(id);
    }
    t.identity = ids_in(field(j, "identities"), t.num_objects, m, "identity morphism");
    for (const auto& c : array_field(j, "composition")) {
      auto ids = ids_in(c, 3, m, "composition entry");
      t.composition.push_back({ids[0], ids[1], ids[2]});
    }
    // a missing inverse is read off the composition; failing that the
    // morphism stands in for itself and validation reports it
    for (MorId a = 0; a < m; ++a) {
      if (t.inverse[a] != kNone) continue;
      for (const auto& [x, y, r] : t.composition)
        if (x == a && r == t.identity[t.src[a]]) t.inverse[a] = y;
      if (t.inverse[a] == kNone) t.inverse[a] = a;
    }
    return FiniteGroupoid(t);
  });
}

Json to_json(const FiniteGroupoid& g) {
  auto t = g.tables();
  Json morphisms = Json::array();
  for (MorId m = 0; m < t.src.size(); ++m)
    morphisms.push_back(
        {{"id", m}, {"src", t.src[m]}, {"tgt", t.tgt[m]}, {"inverse", t.inverse[m]}, {"label", t.morphism_labels[m]}});
  Json composition = Json::array();
  auto triples = t.composition;
  std::sort(triples.begin(), triples.end());
  for (const auto& c : triples) composition.push_back(c);
  return Json{{"schema", kSchemaVersion}, {"kind", "groupoid"},  {"objects", t.object_labels},
              {"morphisms", morphisms},   {"identities", t.identity}, {"composition", composition}};
}

FiniteGroup group_from_json(const Json& j) {
  return guarded("group", [&] {
    if (j.contains("catalog")) return catalog_group(j["catalog"].get<std::string>());
    if (j.contains("generators")) {
      const auto degree = field(j, "degree").get<std::size_t>();
      std::vector<Permutation> gens;
      for (const auto& g : array_field(j, "generators")) {
        auto images = ids_in(g, degree, degree, "permutation image");
        std::vector<bool> hit(degree, false);
        for (auto i : images) hit[i] = true;
        if (std::find(hit.begin(), hit.end(), false) != hit.end()) throw InputError("generator is not a permutation");
        gens.push_back(Permutation(images.begin(), images.end()));
      }
      return FiniteGroup::from_permutations(degree, gens);
    }
    std::vector<std::string> labels;
    for (const auto& l : array_field(j, "labels")) labels.push_back(l.get<std::string>());
    const auto n = labels.size();
    const auto& rows = array_field(j, "table");
    if (rows.size() != n) throw InputError("group table needs one row per element");
    std::vector<Elem> table;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != n) throw InputError("group table rows need one entry per element");
      for (const auto& v : row) table.push_back(ref_in(v, labels, "group element"));
    }
    auto report = validate_group_table(n, table);
    if (!report.empty())
      throw InvalidStructure("group table: " + report.front().axiom + ": " + report.front().detail);
    return FiniteGroup(std::move(table), std::move(labels));
  });
}

Json to_json(const FiniteGroup& g) {
  Json rows = Json::array();
  for (Elem a = 0; a < g.order(); ++a) {
    Json row = Json::array();
    for (Elem b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
    rows.push_back(row);
  }
  return Json{{"schema", kSchemaVersion}, {"kind", "group"}, {"labels", g.labels()}, {"table", rows}};
}

std::vector<Elem> elements_from_json(const FiniteGroup& g, const Json& j) {
  return guarded("elements", [&] {
    if (!j.is_array()) throw InputError("expected an array of group elements");
    std::vector<Elem> out;
    for (const auto& v : j) out.push_back(ref_in(v, g.labels(), "group element"));
    return out;
  });
}

GammaAction gamma_action_from_json(const Json& j, const std::optional<FiniteGroupoid>& carrier) {
  return guarded("gamma action", [&] {
    FiniteGroupoid g;
    if (j.contains("groupoid")) g = groupoid_from_json(j["groupoid"]);
    else if (carrier) g = *carrier;
    else throw InputError("gamma action without a groupoid");
    GammaAction a{g, {}, {}};
    const auto labels = object_labels(g);
    const auto& objects = array_field(j, "objects");
    if (objects.size() != g.num_objects()) throw InputError("gamma action needs one image per object");
    for (const auto& v : objects) a.bar_obj.push_back(ref_in(v, labels, "object image"));
    a.bar_mor = ids_in(field(j, "morphisms"), g.num_morphisms(), g.num_morphisms(), "morphism image");
    return a;
  });
}

Json to_json(const GammaAction& a, bool embed_groupoid) {
  Json out{{"schema", kSchemaVersion}, {"kind", "gamma-action"}};
  if (embed_groupoid) out["groupoid"] = to_json(a.carrier);
  out["objects"] = a.bar_obj;
  out["morphisms"] = a.bar_mor;
  return out;
}

GroupGammaAction group_involution_from_json(const Json& j, const std::optional<FiniteGroup>& group) {
  return guarded("group involution", [&] {
    std::optional<FiniteGroup> g;
    if (j.contains("group")) g = group_from_json(j["group"]);
    else if (group) g = *group;
    else throw InputError("group involution without a group");
    auto theta = elements_from_json(*g, field(j, "theta"));
    if (theta.size() != g->order()) throw InputError("theta needs one image per element");
    return GroupGammaAction{*g, std::move(theta)};
  });
}

std::vector<Elem> subgroup_from_json(const Json& j, const FiniteGroup& group) {
  return guarded("subgroup", [&] { return elements_from_json(group, field(j, "elements")); });
}

LoadedDiagram diagram_from_json(const Json& j) {
  return guarded("diagram", [&] {
    auto index = index_from_json(field(j, "index"));
    const auto& nodes = array_field(j, "nodes");
    if (nodes.size() != index.num_objects) throw InputError("diagram needs one node per index object");
    LoadedDiagram out;
    out.diagram.index = index;
    std::vector<GammaAction> actions;
    for (const auto& n : nodes) {
      out.diagram.nodes.push_back(groupoid_from_json(field(n, "groupoid")));
      if (n.contains("action")) actions.push_back(gamma_action_from_json(n["action"], out.diagram.nodes.back()));
    }
    std::vector<std::optional<GroupoidMap>> arrows(index.num_arrows());
    for (const auto& a : array_field(j, "arrows")) {
      MorId id = kNone;
      if (a.contains("arrow")) {
        id = index_in(a["arrow"], index.num_arrows(), "arrow");
      } else {
        auto s = index_in(field(a, "src"), index.num_objects, "arrow source");
        auto t = index_in(field(a, "tgt"), index.num_objects, "arrow target");
        auto hom = index.hom(s, t);
        if (hom.size() != 1) throw InputError("src/tgt name an arrow only when there is exactly one");
        id = hom.front();
      }
      if (arrows[id]) throw InputError("arrow " + std::to_string(id) + " given twice");
      arrows[id] = map_from_json(a, out.diagram.nodes[index.src[id]], out.diagram.nodes[index.tgt[id]],
                                 "arrow " + std::to_string(id));
    }
    for (MorId a = 0; a < index.num_arrows(); ++a) {
      if (!arrows[a]) {
        if (index.src[a] == index.tgt[a] && index.identity[index.src[a]] == a)
          arrows[a] = identity_functor(out.diagram.nodes[index.src[a]]);
        else
          throw InputError("arrow " + std::to_string(a) + " has no functor");
      }
      out.diagram.arrows.push_back(*arrows[a]);
    }
    if (!actions.empty()) {
      if (actions.size() != nodes.size()) throw InputError("either every node carries an action or none does");
      out.gamma = GammaDiagram{index, actions, out.diagram.arrows};
    }
    return out;
  });
}

Json to_json(const IndexCategory& c) {
  Json arrows = Json::array();
  for (MorId a = 0; a < c.num_arrows(); ++a)
    arrows.push_back({{"src", c.src[a]}, {"tgt", c.tgt[a]}, {"label", c.arrow_labels[a]}});
  Json composition = Json::array();
  for (MorId a = 0; a < c.num_arrows(); ++a)
    for (MorId b = 0; b < c.num_arrows(); ++b)
      if (auto r = c.compose(a, b); r != kNone) composition.push_back({a, b, r});
  return Json{{"objects", c.object_labels}, {"arrows", arrows}, {"identities", c.identity}, {"composition", composition}};
}

Json to_json(const GammaDiagram& d) {
  Json nodes = Json::array();
  for (const auto& n : d.nodes) nodes.push_back({{"groupoid", to_json(n.carrier)}, {"action", to_json(n, false)}});
  Json arrows = Json::array();
  for (MorId a = 0; a < d.arrows.size(); ++a) {
    auto entry = map_to_json(d.arrows[a]);
    entry["arrow"] = a;
    arrows.push_back(entry);
  }
  return Json{{"schema", kSchemaVersion}, {"kind", "diagram"}, {"index", to_json(d.index)}, {"nodes", nodes}, {"arrows", arrows}};
}

FiniteSite site_from_json(const Json& j) {
  return guarded("site", [&] {
    std::vector<std::string> labels;
    for (const auto& p : array_field(j, "points")) labels.push_back(p.get<std::string>());
    if (labels.size() > 16) throw InputError("at most 16 points");
    FiniteSite s{labels.size(), {}, labels};
    std::vector<std::uint32_t> opens;
    for (const auto& o : array_field(j, "opens")) opens.push_back(open_mask(o, s));
    const auto n = labels.size();
    return FiniteSite::from_opens(n, std::move(opens), std::move(labels));
  });
}

Json to_json(const FiniteSite& s) {
  Json opens = Json::array();
  for (std::size_t u = 0; u < s.num_opens(); ++u) opens.push_back(open_to_json(s, u));
  return Json{{"schema", kSchemaVersion}, {"kind", "site"}, {"points", s.point_labels}, {"opens", opens}};
}

LoadedPresheaf presheaf_from_json(const Json& j) {
  return guarded("presheaf", [&] {
    auto site = site_from_json(field(j, "site"));
    auto report = validate_site(site);
    if (!report.empty()) throw InvalidStructure("site: " + report.front().axiom + ": " + report.front().detail);
    const auto n = site.num_opens();
    std::vector<std::optional<FiniteGroupoid>> sections(n);
    std::vector<std::optional<GammaAction>> actions(n);
    for (const auto& s : array_field(j, "sections")) {
      auto u = open_index(field(s, "open"), site);
      if (sections[u]) throw InputError("two sections over " + site.open_label(u));
      sections[u] = groupoid_from_json(field(s, "groupoid"));
      if (s.contains("action")) actions[u] = gamma_action_from_json(s["action"], sections[u]);
    }
    std::vector<FiniteGroupoid> values;
    for (std::size_t u = 0; u < n; ++u) {
      if (!sections[u]) throw InputError("no section over " + site.open_label(u));
      values.push_back(*sections[u]);
    }
    std::map<std::pair<std::size_t, std::size_t>, GroupoidMap> given;
    for (const auto& r : array_field(j, "restrictions")) {
      auto u = open_index(field(r, "from"), site), v = open_index(field(r, "to"), site);
      if (!site.contains(u, v)) throw InputError("restriction from " + site.open_label(u) + " to a non-subset");
      if (given.count({u, v})) throw InputError("restriction " + site.open_label(u) + " -> " + site.open_label(v) + " given twice");
      given[{u, v}] = map_from_json(r, values[u], values[v], "restriction");
    }
    auto x = make_presheaf(site, values, [&](std::size_t u, std::size_t v) {
      auto it = given.find({u, v});
      if (it != given.end()) return it->second;
      if (u == v) return identity_functor(values[u]);
      throw InputError("no restriction " + site.open_label(u) + " -> " + site.open_label(v));
    });
    LoadedPresheaf out{std::move(x), std::nullopt};
    auto with = std::count_if(actions.begin(), actions.end(), [](const auto& a) { return a.has_value(); });
    if (with == static_cast<long>(n)) {
      PresheafGammaAction a;
      for (auto& s : actions) a.sections.push_back(*s);
      out.action = std::move(a);
    } else if (with != 0) {
      throw InputError("either every section carries an action or none does");
    }
    return out;
  });
}

Json to_json(const GroupoidPresheaf& x, const std::optional<PresheafGammaAction>& a) {
  const auto& s = x.site;
  Json sections = Json::array();
  for (std::size_t u = 0; u < s.num_opens(); ++u) {
    Json entry{{"open", open_to_json(s, u)}, {"groupoid", to_json(x.sections[u])}};
    if (a) entry["action"] = to_json(a->sections[u], false);
    sections.push_back(entry);
  }
  Json restrictions = Json::array();
  for (std::size_t u = 0; u < s.num_opens(); ++u)
    for (std::size_t v = 0; v < s.num_opens(); ++v)
      if (u != v && s.contains(u, v)) {
        auto entry = map_to_json(x.restriction(u, v));
        entry["from"] = open_to_json(s, u);
        entry["to"] = open_to_json(s, v);
        restrictions.push_back(entry);
      }
  auto site = to_json(s);
  site.erase("schema");
  site.erase("kind");
  return Json{{"schema", kSchemaVersion}, {"kind", "presheaf"}, {"site", site}, {"sections", sections},
              {"restrictions", restrictions}};
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const FiniteGroupoid& g, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << quoted(name) << " {\n";
  for (ObjId x = 0; x < g.num_objects(); ++x) out << "  " << x << " [label=" << quoted(g.object_label(x)) << "];\n";
  for (MorId m = 0; m < g.num_morphisms(); ++m)
    if (g.identity(g.src(m)) != m)
      out << "  " << g.src(m) << " -> " << g.tgt(m) << " [label=" << quoted(g.morphism_label(m)) << "];\n";
  out << "}\n";
  return out.str();
}

}  // namespace hgrpd
