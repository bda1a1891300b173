#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "hgrpd/error.hpp"
#include "hgrpd/fixtures.hpp"
#include "hgrpd/io.hpp"
#include "hgrpd/suites.hpp"

using namespace hgrpd;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kInputError = 2;

struct RunConfig {
  std::vector<std::string> inputs;
  std::string out;
  std::string suite;
  std::string point;
  std::uint64_t seed = kDefaultSeed;
  std::size_t size = kDefaultSize;
  bool json = false;
  bool corpus = false;
};

// What a command produces: text for the terminal, a JSON document for
// --json, and the exit code.
struct Output {
  std::string text;
  Json json;
  int code = kOk;
};

std::string rational(const Rational& r) {
  std::ostringstream out;
  out << r.numerator();
  if (r.denominator() != 1) out << "/" << r.denominator();
  return out.str();
}

std::string violations_text(const ValidationReport& report) {
  std::string out;
  for (const auto& v : report) out += "  violated " + v.axiom + ": " + v.detail + "\n";
  return out;
}

Json violations_json(const ValidationReport& report) {
  Json out = Json::array();
  for (const auto& v : report) out.push_back({{"axiom", v.axiom}, {"detail", v.detail}});
  return out;
}

// Left-aligned columns separated by two spaces.
std::string table(const std::vector<std::vector<std::string>>& rows, const std::string& indent = "") {
  std::vector<std::size_t> width;
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], row[c].size());
    }
  std::string out;
  for (const auto& row : rows) {
    std::string line = indent;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

Json document(const std::string& kind) { return Json{{"schema", kSchemaVersion}, {"kind", kind}}; }

const std::string& input(const RunConfig& cfg, std::size_t i, const char* what) {
  if (cfg.inputs.size() <= i) throw InputError(std::string("missing ") + what + " path");
  return cfg.inputs[i];
}

Output finish_validation(const std::string& kind, const ValidationReport& report) {
  Output o;
  o.code = report.empty() ? kOk : kFailure;
  o.text = kind + ": " + (report.empty() ? "valid" : "invalid") + "\n" + violations_text(report);
  o.json = document("validation");
  o.json["document"] = kind;
  o.json["valid"] = report.empty();
  o.json["violations"] = violations_json(report);
  return o;
}

Output cmd_validate(const RunConfig& cfg) {
  auto j = read_json_file(input(cfg, 0, "input"));
  auto kind = document_kind(j);
  ValidationReport report;
  if (kind == "groupoid") {
    report = validate_groupoid(groupoid_from_json(j));
  } else if (kind == "group") {
    try {
      group_from_json(j);
    } catch (const InvalidStructure& e) {
      report.push_back({"group", e.what()});
    }
  } else if (kind == "gamma-action") {
    auto a = gamma_action_from_json(j);
    report = validate_groupoid(a.carrier);
    if (report.empty()) report = validate_gamma_action(a);
  } else if (kind == "group-involution") {
    report = validate_group_gamma_action(group_involution_from_json(j));
  } else if (kind == "diagram") {
    auto d = diagram_from_json(j);
    report = d.gamma ? validate_diagram(*d.gamma) : validate_diagram(d.diagram);
  } else if (kind == "site") {
    try {
      report = validate_site(site_from_json(j));
    } catch (const InvalidStructure& e) {
      report.push_back({"site", e.what()});
    }
  } else if (kind == "presheaf") {
    try {
      auto p = presheaf_from_json(j);
      report = validate_presheaf(p.presheaf);
      if (report.empty() && p.action) report = validate_presheaf_action(p.presheaf, *p.action);
    } catch (const InvalidStructure& e) {
      report.push_back({"site", e.what()});
    }
  } else {
    throw InputError("unknown document kind \"" + kind + "\"");
  }
  return finish_validation(kind, report);
}

// A Γ-groupoid from either an action file with an embedded groupoid, a
// groupoid file plus an action file, or a bare groupoid with the trivial action.
GammaAction load_gamma_action(const RunConfig& cfg) {
  auto first = read_json_file(input(cfg, 0, "groupoid"));
  if (document_kind(first) == "gamma-action") return gamma_action_from_json(first);
  auto carrier = groupoid_from_json(first);
  if (cfg.inputs.size() < 2) return trivial_gamma_action(carrier);
  return gamma_action_from_json(read_json_file(cfg.inputs[1]), carrier);
}

Output invalid_input(const std::string& what, const ValidationReport& report) {
  Output o;
  o.code = kFailure;
  o.text = what + ": invalid\n" + violations_text(report);
  o.json = document("validation");
  o.json["document"] = what;
  o.json["valid"] = false;
  o.json["violations"] = violations_json(report);
  return o;
}

Output cmd_hfp(const RunConfig& cfg) {
  auto a = load_gamma_action(cfg);
  if (auto r = validate_groupoid(a.carrier); !r.empty()) return invalid_input("groupoid", r);
  if (auto r = validate_gamma_action(a); !r.empty()) return invalid_input("gamma-action", r);
  auto h = hfp(a);
  const auto& g = h.groupoid;
  std::vector<std::vector<std::string>> rows{{"class", "representative", "|Aut|"}};
  Json classes = Json::array();
  for (std::size_t c = 0; c < g.num_components(); ++c) {
    auto rep = g.component_representatives()[c];
    auto aut = g.hom(rep, rep).size();
    rows.push_back({std::to_string(c), g.object_label(rep), std::to_string(aut)});
    classes.push_back({{"representative", g.object_label(rep)}, {"automorphisms", aut}});
  }
  Output o;
  o.text = "homotopy fixed points\n" + table({{"objects", std::to_string(g.num_objects())},
                                                {"morphisms", std::to_string(g.num_morphisms())},
                                                {"classes", std::to_string(g.num_components())},
                                                {"cardinality", rational(groupoid_cardinality(g))}},
                                               "  ");
  if (g.num_components()) o.text += table(rows, "  ");
  o.json = document("hfp");
  o.json["objects"] = g.num_objects();
  o.json["classes"] = classes;
  o.json["cardinality"] = rational(groupoid_cardinality(g));
  o.json["groupoid"] = to_json(g);
  return o;
}

Output cmd_h1(const RunConfig& cfg) {
  auto first = read_json_file(input(cfg, 0, "group"));
  auto a = document_kind(first) == "group-involution"
               ? group_involution_from_json(first)
               : group_involution_from_json(read_json_file(input(cfg, 1, "involution")), group_from_json(first));
  if (auto r = validate_group_gamma_action(a); !r.empty()) return invalid_input("group-involution", r);
  auto classes = h1(a);
  std::vector<std::vector<std::string>> rows{{"representative", "orbit", "|K|"}};
  Json entries = Json::array();
  Rational total = 0;
  for (const auto& c : classes) {
    auto k = c.stabilizer.elements.size();
    total += Rational(1, static_cast<std::int64_t>(k));
    rows.push_back({a.group.label(c.representative), std::to_string(c.members.size()), std::to_string(k)});
    entries.push_back({{"representative", a.group.label(c.representative)},
                       {"orbit", c.members.size()},
                       {"stabilizer", k}});
  }
  Output o;
  o.text = "|G| " + std::to_string(a.group.order()) + "  |Z1| " + std::to_string(z1(a).size()) + "  |H1| " +
           std::to_string(classes.size()) + "\n" + table(rows) + "total sum 1/|K| = " + rational(total) + "\n";
  o.json = document("h1");
  o.json["group_order"] = a.group.order();
  o.json["cocycles"] = z1(a).size();
  o.json["classes"] = entries;
  o.json["total"] = rational(total);
  return o;
}

struct TwistedReport {
  std::string text;
  Json json;
  bool acyclic = false;
};

TwistedReport twisted_report(const std::string& name, const InvolutiveGroupData& d) {
  const auto& g = d.group;
  auto z = z1_theta(d);
  auto orbits = twisted_orbits(d);
  auto pf = parameter_fibration(d);
  std::vector<std::vector<std::string>> rows{{"representative", "size", "|stabilizer|"}};
  Json entries = Json::array();
  Rational card = 0;
  for (const auto& orbit : orbits) {
    auto k = orbit.stabilizer.elements.size();
    card += Rational(1, static_cast<std::int64_t>(k));
    rows.push_back({g.label(orbit.representative), std::to_string(orbit.members.size()), std::to_string(k)});
    entries.push_back(
        {{"representative", g.label(orbit.representative)}, {"size", orbit.members.size()}, {"stabilizer", k}});
  }
  TwistedReport r;
  r.acyclic = pf.acyclic();
  r.text = name + "\n  |G| " + std::to_string(g.order()) + "  |B| " + std::to_string(d.subgroup.size()) + "  |Z| " +
           std::to_string(z.elements.size()) + "  orbits " + std::to_string(orbits.size()) + "  cardinality " +
           rational(card) + "\n" + table(rows, "  ") + "  parameter map: fibration " + (pf.fibration ? "yes" : "no") +
           ", weak equivalence " + (pf.weak_equivalence ? "yes" : "no") + "\n";
  r.json = {{"name", name},
            {"group_order", g.order()},
            {"subgroup_order", d.subgroup.size()},
            {"cocycles", z.elements.size()},
            {"orbits", entries},
            {"cardinality", rational(card)},
            {"fibration", pf.fibration},
            {"weak_equivalence", pf.weak_equivalence}};
  return r;
}

Output cmd_twisted(const RunConfig& cfg) {
  std::vector<NamedInvolutiveData> cases;
  if (cfg.corpus) {
    cases = involutive_data_corpus();
  } else {
    auto group = group_from_json(read_json_file(input(cfg, 0, "group")));
    auto theta = group_involution_from_json(read_json_file(input(cfg, 1, "involution")), group);
    auto subgroup = subgroup_from_json(read_json_file(input(cfg, 2, "subgroup")), group);
    cases.push_back({cfg.inputs[0], InvolutiveGroupData{group, theta.bar, subgroup}});
  }
  Output o;
  o.json = document("twisted");
  o.json["cases"] = Json::array();
  for (const auto& [name, d] : cases) {
    if (auto r = validate_involutive_data(d); !r.empty()) return invalid_input("involutive-data", r);
    auto r = twisted_report(name, d);
    o.text += r.text;
    o.json["cases"].push_back(r.json);
    if (!r.acyclic) o.code = kFailure;
  }
  return o;
}

Output cmd_colimit(const RunConfig& cfg) {
  auto loaded = diagram_from_json(read_json_file(input(cfg, 0, "diagram")));
  if (auto r = validate_diagram(loaded.diagram); !r.empty()) return invalid_input("diagram", r);
  if (loaded.gamma)
    if (auto r = validate_diagram(*loaded.gamma); !r.empty()) return invalid_input("diagram", r);
  Output o;
  o.json = document("colimit");
  if (auto w = filtered_witness(loaded.diagram.index)) {
    o.code = kFailure;
    o.text = "index not filtered: " + w->reason + "\n";
    o.json["filtered"] = false;
    o.json["reason"] = w->reason;
    return o;
  }
  auto c = colimit(loaded.diagram);
  const auto& g = c.groupoid;
  o.text = "colimit\n" + table({{"objects", std::to_string(g.num_objects())},
                                  {"morphisms", std::to_string(g.num_morphisms())},
                                  {"classes", std::to_string(g.num_components())}},
                                 "  ");
  o.json["filtered"] = true;
  o.json["groupoid"] = to_json(g);
  if (loaded.gamma) {
    auto cmp = hfp_colimit_comparison(*loaded.gamma);
    o.text += "  fixed points commute with the colimit: " + std::string(cmp.isomorphism ? "yes" : "no") + "\n";
    o.json["hfp_commutes"] = cmp.isomorphism;
    if (!cmp.isomorphism) o.code = kFailure;
  }
  return o;
}

Output cmd_stalk(const RunConfig& cfg) {
  auto loaded = presheaf_from_json(read_json_file(input(cfg, 0, "presheaf")));
  const auto& x = loaded.presheaf;
  if (auto r = validate_presheaf(x); !r.empty()) return invalid_input("presheaf", r);
  if (loaded.action)
    if (auto r = validate_presheaf_action(x, *loaded.action); !r.empty()) return invalid_input("presheaf", r);
  std::vector<std::uint32_t> points;
  for (std::uint32_t t = 0; t < x.site.num_points; ++t)
    if (cfg.point.empty() || x.site.point_labels[t] == cfg.point) points.push_back(t);
  if (points.empty()) throw InputError("no point labelled \"" + cfg.point + "\"");
  std::vector<std::string> header{"point", "minimal open", "objects", "morphisms", "matches section"};
  if (loaded.action) header.push_back("hfp commutes");
  std::vector<std::vector<std::string>> rows{header};
  Output o;
  o.json = document("stalks");
  o.json["points"] = Json::array();
  for (auto t : points) {
    auto s = stalk_computation(x, t);
    const auto& g = s.colimit.groupoid;
    std::vector<std::string> row{x.site.point_labels[t], x.site.open_label(s.minimal_open),
                                 std::to_string(g.num_objects()), std::to_string(g.num_morphisms()),
                                 s.matches_minimal_open ? "yes" : "no"};
    Json entry{{"point", x.site.point_labels[t]},
               {"minimal_open", x.site.open_label(s.minimal_open)},
               {"matches_section", s.matches_minimal_open},
               {"stalk", to_json(g)}};
    if (!s.matches_minimal_open) o.code = kFailure;
    if (loaded.action) {
      auto c = stalk_commutation_check(x, *loaded.action, t);
      row.push_back(c.isomorphism ? "yes" : "no");
      entry["hfp_commutes"] = c.isomorphism;
      if (!c.isomorphism) o.code = kFailure;
    }
    rows.push_back(row);
    o.json["points"].push_back(entry);
  }
  o.text = table(rows);
  return o;
}

Output cmd_check(const RunConfig& cfg) {
  std::vector<std::string> names;
  if (cfg.suite == "all") {
    names = suite_names();
  } else {
    names.push_back(cfg.suite);
  }
  Output o;
  o.json = document("check");
  o.json["reports"] = Json::array();
  bool passed = true;
  for (const auto& name : names) {
    auto r = run_suite(name, cfg.seed, cfg.size);
    o.text += format_report(r);
    o.json["reports"].push_back(to_json(r));
    passed = passed && r.passed();
  }
  o.json["passed"] = passed;
  if (!passed) o.code = kFailure;
  return o;
}

Output cmd_export_dot(const RunConfig& cfg) {
  auto j = read_json_file(input(cfg, 0, "groupoid"));
  auto g = document_kind(j) == "gamma-action" ? gamma_action_from_json(j).carrier : groupoid_from_json(j);
  Output o;
  o.text = to_dot(g);
  o.json = document("dot");
  o.json["dot"] = o.text;
  return o;
}

void emit(const RunConfig& cfg, const Output& o) {
  std::string body = cfg.json ? o.json.dump(2) + "\n" : o.text;
  if (cfg.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw InputError("cannot write " + cfg.out);
  file << body;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite groupoids with Z/2-actions: homotopy fixed points, H1, colimits and stalks"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto global = [&](CLI::App* sub) {
    sub->add_flag("--json", cfg.json, "Print JSON instead of text");
    sub->add_option("--out", cfg.out, "Write the report to this file");
  };
  global(&app);
  app.fallthrough();

  auto add = [&](const char* name, const char* about, const char* inputs, std::size_t min, std::size_t max) {
    auto* sub = app.add_subcommand(name, about);
    sub->add_option("inputs", cfg.inputs, inputs)->expected(static_cast<int>(min), static_cast<int>(max));
    return sub;
  };
  auto* validate = add("validate", "Check the axioms of a JSON document", "document", 1, 1);
  auto* hfp_cmd = add("hfp", "Homotopy fixed points of a groupoid with an action", "groupoid [action]", 1, 2);
  auto* h1_cmd = add("h1", "Nonabelian H1 of Z/2 acting on a group", "group [involution]", 1, 2);
  auto* twisted = add("twisted", "Twisted conjugation orbits and the parameter map", "group involution subgroup", 0, 3);
  twisted->add_flag("--corpus", cfg.corpus, "Run the built-in (G, theta, B) triples");
  auto* colimit_cmd = add("colimit", "Colimit of a diagram of groupoids", "diagram", 1, 1);
  auto* stalk_cmd = add("stalk", "Stalks of a presheaf of groupoids", "presheaf", 1, 1);
  stalk_cmd->add_option("--point", cfg.point, "Only this point");
  auto* check = app.add_subcommand("check", "Run a property suite");
  check->add_option("suite", cfg.suite, "Suite name or \"all\"")->required();
  check->add_option("--seed", cfg.seed, "Random seed");
  check->add_option("--size", cfg.size, "Random instances per property");
  auto* dot = add("export-dot", "Graphviz rendering of a groupoid", "groupoid", 1, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    Output o;
    if (validate->parsed()) o = cmd_validate(cfg);
    else if (hfp_cmd->parsed()) o = cmd_hfp(cfg);
    else if (h1_cmd->parsed()) o = cmd_h1(cfg);
    else if (twisted->parsed()) o = cmd_twisted(cfg);
    else if (colimit_cmd->parsed()) o = cmd_colimit(cfg);
    else if (stalk_cmd->parsed()) o = cmd_stalk(cfg);
    else if (check->parsed()) o = cmd_check(cfg);
    else if (dot->parsed()) o = cmd_export_dot(cfg);
    emit(cfg, o);
    return o.code;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
