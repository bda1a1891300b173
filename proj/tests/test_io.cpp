#include "doctest.h"
#include "hgrpd/error.hpp"
#include "hgrpd/fixtures.hpp"
#include "hgrpd/io.hpp"
#include "hgrpd/random.hpp"
#include "hgrpd/suites.hpp"

using namespace hgrpd;

namespace {

Json fixture(const std::string& name) { return read_json_file(std::string(HGRPD_FIXTURES) + "/" + name); }

// Serializing and reading back through text gives the same tables.
Json through_text(const Json& j) { return Json::parse(j.dump()); }

void same_presheaf(const GroupoidPresheaf& a, const GroupoidPresheaf& b) {
  CHECK(a.site.opens == b.site.opens);
  CHECK(a.site.point_labels == b.site.point_labels);
  REQUIRE(a.sections.size() == b.sections.size());
  for (std::size_t u = 0; u < a.sections.size(); ++u) CHECK(a.sections[u] == b.sections[u]);
  for (std::size_t u = 0; u < a.site.num_opens(); ++u)
    for (std::size_t v = 0; v < a.site.num_opens(); ++v)
      if (a.site.contains(u, v)) CHECK(a.restriction(u, v) == b.restriction(u, v));
}

}  // namespace

TEST_CASE("groupoids round-trip") {
  auto s3 = FiniteGroup::symmetric(3);
  std::vector<FiniteGroupoid> cases{FiniteGroupoid(), FiniteGroupoid::terminal(), FiniteGroupoid::codiscrete(3),
                                    build_bg(s3), build_eg(FiniteGroup::cyclic(4))};
  Sampler s(3);
  for (int i = 0; i < 20; ++i) cases.push_back(random_gamma_groupoid(s, 40).action.carrier);
  for (const auto& g : cases) {
    auto back = groupoid_from_json(through_text(to_json(g)));
    CHECK(back == g);
    CHECK(validate_groupoid(back).empty());
  }
}

TEST_CASE("fixture files load") {
  auto bz2 = groupoid_from_json(fixture("bz2.json"));
  CHECK(bz2 == build_bg(FiniteGroup::cyclic(2)));
  CHECK(validate_groupoid(bz2).empty());

  auto bad = groupoid_from_json(fixture("bz2_bad_composition.json"));
  CHECK_FALSE(validate_groupoid(bad).empty());

  CHECK_THROWS_AS(read_json_file(std::string(HGRPD_FIXTURES) + "/malformed.json"), InputError);
  CHECK_THROWS_AS(read_json_file(std::string(HGRPD_FIXTURES) + "/absent.json"), InputError);

  auto neg = gamma_action_from_json(fixture("bz4_negation.json"));
  CHECK(validate_gamma_action(neg).empty());
  CHECK(neg.bar_mor == std::vector<MorId>{0, 3, 2, 1});

  auto g = group_from_json(fixture("s3.json"));
  CHECK(g == FiniteGroup::symmetric(3));
  auto b = subgroup_from_json(fixture("s3_transposition.json"), g);
  CHECK(b.size() == 2);
  CHECK(is_subgroup(g, b));

  auto z4 = group_involution_from_json(fixture("z4_negation.json"));
  CHECK(z4.group.order() == 4);
  CHECK(validate_group_gamma_action(z4).empty());

  auto chain = diagram_from_json(fixture("chain_bz4_bz2.json"));
  REQUIRE(chain.gamma);
  CHECK(validate_diagram(*chain.gamma).empty());
  CHECK(hfp_colimit_comparison(*chain.gamma).isomorphism);

  auto coeq = diagram_from_json(fixture("coequalizer.json"));
  CHECK_FALSE(coeq.gamma);
  CHECK(validate_diagram(coeq.diagram).empty());
  CHECK(filtered_witness(coeq.diagram.index));

  auto sierpinski = presheaf_from_json(fixture("sierpinski.json"));
  REQUIRE(sierpinski.action);
  same_presheaf(sierpinski.presheaf, sierpinski_presheaf().presheaf);
}

TEST_CASE("documents carry schema and kind") {
  auto j = to_json(FiniteGroupoid::terminal());
  CHECK(document_kind(j) == "groupoid");
  j["schema"] = 2;
  CHECK_THROWS_AS(document_kind(j), InputError);
  j.erase("schema");
  CHECK_THROWS_AS(document_kind(j), InputError);
}

TEST_CASE("malformed groupoids are input errors") {
  auto j = to_json(build_bg(FiniteGroup::cyclic(2)));
  auto broken = j;
  broken["morphisms"][1]["src"] = 5;
  CHECK_THROWS_AS(groupoid_from_json(broken), InputError);
  broken = j;
  broken.erase("identities");
  CHECK_THROWS_AS(groupoid_from_json(broken), InputError);
  broken = j;
  broken["composition"][0] = Json::array({0, 1});
  CHECK_THROWS_AS(groupoid_from_json(broken), InputError);
  broken = j;
  broken["morphisms"][1]["id"] = 0;
  CHECK_THROWS_AS(groupoid_from_json(broken), InputError);
}

TEST_CASE("groups, actions and involutions round-trip") {
  for (const auto& inv : involution_catalog()) {
    auto g = group_from_json(through_text(to_json(inv.group)));
    CHECK(g == inv.group);
  }
  Json table{{"labels", Json::array({"e", "x"})},
             {"table", Json::array({Json::array({"e", "x"}), Json::array({"x", "x"})})}};
  CHECK_THROWS_AS(group_from_json(table), InvalidStructure);

  Json generators{{"degree", 3}, {"generators", Json::array({Json::array({1, 0, 2}), Json::array({1, 2, 0})})}};
  CHECK(group_from_json(generators) == FiniteGroup::symmetric(3));
  generators["generators"][0] = Json::array({0, 0, 2});
  CHECK_THROWS_AS(group_from_json(generators), InputError);

  Sampler s(5);
  for (int i = 0; i < 20; ++i) {
    auto a = random_gamma_groupoid(s, 40).action;
    auto back = gamma_action_from_json(through_text(to_json(a)));
    CHECK(back.carrier == a.carrier);
    CHECK(back.bar_obj == a.bar_obj);
    CHECK(back.bar_mor == a.bar_mor);
    auto bare = gamma_action_from_json(through_text(to_json(a, false)), a.carrier);
    CHECK(bare.bar_mor == a.bar_mor);
  }
  CHECK_THROWS_AS(gamma_action_from_json(to_json(trivial_gamma_action(FiniteGroupoid::terminal()), false)),
                  InputError);
}

TEST_CASE("diagrams round-trip") {
  Sampler s(11);
  for (int i = 0; i < 20; ++i) {
    auto d = random_filtered_diagram(s, 30);
    auto back = diagram_from_json(through_text(to_json(d.diagram)));
    REQUIRE(back.gamma);
    CHECK(back.gamma->index.composition == d.diagram.index.composition);
    REQUIRE(back.gamma->nodes.size() == d.diagram.nodes.size());
    for (std::size_t n = 0; n < d.diagram.nodes.size(); ++n) {
      CHECK(back.gamma->nodes[n].carrier == d.diagram.nodes[n].carrier);
      CHECK(back.gamma->nodes[n].bar_mor == d.diagram.nodes[n].bar_mor);
    }
    CHECK(back.gamma->arrows == d.diagram.arrows);
  }
}

TEST_CASE("sites and presheaves round-trip") {
  for (const auto& n : presheaf_corpus()) {
    auto back = presheaf_from_json(through_text(to_json(n.presheaf, n.action)));
    same_presheaf(back.presheaf, n.presheaf);
    REQUIRE(back.action);
    for (std::size_t u = 0; u < n.action.sections.size(); ++u)
      CHECK(back.action->sections[u].bar_mor == n.action.sections[u].bar_mor);
    auto bare = presheaf_from_json(through_text(to_json(n.presheaf)));
    CHECK_FALSE(bare.action);
  }
  Sampler s(2);
  for (int i = 0; i < 10; ++i) {
    auto site = random_site(s, 2, 5);
    auto back = site_from_json(through_text(to_json(site)));
    CHECK(back.opens == site.opens);
  }
  Json missing_top{{"site", {{"points", Json::array({"a", "b"})}, {"opens", Json::array({Json::array(), Json::array({"a"})})}}},
                   {"sections", Json::array()},
                   {"restrictions", Json::array()}};
  CHECK_THROWS_AS(presheaf_from_json(missing_top), InvalidStructure);
}

TEST_CASE("dot export") {
  CHECK(to_dot(FiniteGroupoid::terminal()) == "digraph \"G\" {\n  0 [label=\"*\"];\n}\n");
  auto dot = to_dot(FiniteGroupoid::codiscrete(2), "C");
  CHECK(dot.find("digraph \"C\"") == 0);
  CHECK(std::count(dot.begin(), dot.end(), '>') == 2);
}

TEST_CASE("suite reports") {
  CHECK(suite_names().size() == 8);
  CHECK_THROWS_AS(run_suite("nope", 1, 1), InputError);
  auto a = run_suite("swap", 4, 5), b = run_suite("swap", 4, 5);
  CHECK(format_report(a) == format_report(b));
  CHECK(a.passed());
  CHECK(to_json(a)["passed"] == true);
  PropertyResult p{"p", 0, 0, {}};
  CHECK_FALSE(p.passed());
  p.record(true, "x");
  p.record(false, "first");
  p.record(false, "second");
  CHECK(p.checked == 3);
  CHECK(p.failed == 2);
  CHECK(p.first_failure == "first");
}
