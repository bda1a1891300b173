#include "doctest.h"
#include "hgrpd/error.hpp"
#include "hgrpd/fixtures.hpp"
#include "hgrpd/presheaf.hpp"
#include "hgrpd/random.hpp"
#include "oracles.hpp"

using namespace hgrpd;

namespace {

// sign of a permutation by counting inversions
Elem sign(const Permutation& p) {
  Elem odd = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) odd ^= p[i] > p[j];
  return odd;
}

bool bijective_on_objects(const GroupoidMap& f) {
  if (f.dom.num_objects() != f.cod.num_objects()) return false;
  std::vector<bool> hit(f.cod.num_objects(), false);
  for (auto y : f.obj_map) hit[y] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

// Checked on the section over U_t, with no colimit involved.
bool oracle_local(const PresheafMap& f, bool (*predicate)(const GroupoidMap&)) {
  const auto& s = f.dom.site;
  for (std::uint32_t t = 0; t < s.num_points; ++t)
    if (!predicate(f.components[s.minimal_open(t)])) return false;
  return true;
}

bool oracle_weq(const GroupoidMap& f) { return oracle::weak_equivalence(f); }
bool oracle_fib(const GroupoidMap& f) { return oracle::fibration(f); }

}  // namespace

TEST_CASE("sites") {
  auto s = FiniteSite::sierpinski();
  CHECK(validate_site(s).empty());
  CHECK(s.num_opens() == 3);
  CHECK(s.opens[s.minimal_open(0)] == 0b01);
  CHECK(s.opens[s.minimal_open(1)] == 0b11);
  CHECK(s.open_label(1) == "{a}");
  CHECK(s.neighbourhoods(1) == std::vector<std::size_t>{2});

  auto d = FiniteSite::discrete(3);
  CHECK(validate_site(d).empty());
  CHECK(d.num_opens() == 8);
  for (std::uint32_t t = 0; t < 3; ++t) CHECK(d.opens[d.minimal_open(t)] == 1u << t);

  auto no_meet = FiniteSite::from_opens(3, {0b000, 0b011, 0b110, 0b111});
  CHECK(has_violation(validate_site(no_meet), "meet"));
  auto no_join = FiniteSite::from_opens(2, {0b00, 0b01, 0b10});
  CHECK(has_violation(validate_site(no_join), "top"));
  CHECK(has_violation(validate_site(FiniteSite::from_opens(2, {0b00, 0b01, 0b01, 0b11})), "separation"));

  Sampler rng(9);
  for (int i = 0; i < 50; ++i) {
    auto r = random_site(rng, 2, 5);
    CHECK(validate_site(r).empty());
    for (std::uint32_t t = 0; t < r.num_points; ++t) CHECK(((r.opens[r.minimal_open(t)] >> t) & 1u) == 1u);
  }
}

TEST_CASE("presheaf validation") {
  auto p = sierpinski_presheaf();
  CHECK(validate_presheaf(p.presheaf).empty());
  CHECK(validate_presheaf_action(p.presheaf, p.action).empty());

  // the identity would not compose with the reduction on the nose
  auto lax = p.presheaf;
  lax.restrictions[2 * 3 + 1].mor_map = {0, 1, 1, 0};
  CHECK_FALSE(validate_presheaf(lax).empty());
  CHECK_THROWS_AS(stalk(lax, 0), InvalidStructure);

  auto bz4 = build_bg(FiniteGroup::cyclic(4));
  auto wrong = p.action;
  wrong.sections[2] = trivial_gamma_action(bz4);
  wrong.sections[1] = GammaAction{p.presheaf.sections[1], {0}, {0, 1}};
  CHECK(validate_presheaf_action(p.presheaf, wrong).empty());
  // negation on B(Z/4) over {a,b} and on B(Z/2) is fine; a bad involution is not
  wrong.sections[2] = GammaAction{bz4, {0}, {0, 2, 1, 3}};
  CHECK_FALSE(validate_presheaf_action(p.presheaf, wrong).empty());
}

TEST_CASE("stalks") {
  auto bz3 = build_bg(FiniteGroup::cyclic(3));
  auto site = FiniteSite::from_opens(3, {0b000, 0b001, 0b011, 0b111});
  auto constant = constant_presheaf(site, bz3);
  for (std::uint32_t t = 0; t < 3; ++t) {
    auto c = stalk_computation(constant, t);
    CHECK(c.matches_minimal_open);
    CHECK(c.colimit.groupoid.num_morphisms() == 3);
  }

  auto p = sierpinski_presheaf();
  auto a = stalk(p.presheaf, 0), b = stalk(p.presheaf, 1);
  CHECK(a.num_objects() == 1);
  CHECK(a.num_morphisms() == 2);
  CHECK(b.num_morphisms() == 4);
  CHECK(stalk_computation(p.presheaf, 0).matches_minimal_open);

  // the empty open never appears in a neighbourhood diagram
  auto altered = p.presheaf;
  altered.sections[0] = FiniteGroupoid::discrete(2);
  for (std::size_t u = 0; u < 3; ++u) {
    const auto& g = altered.sections[u];
    altered.restrictions[u * 3 + 0] = GroupoidMap{g, altered.sections[0], std::vector<ObjId>(g.num_objects(), 0),
                                                  std::vector<MorId>(g.num_morphisms(), 0)};
  }
  altered.restrictions[0] = identity_functor(altered.sections[0]);
  REQUIRE(validate_presheaf(altered).empty());
  CHECK(stalk(altered, 0) == a);
  CHECK(stalk(altered, 1) == b);
}

TEST_CASE("sectionwise and local predicates") {
  auto p = sierpinski_presheaf().presheaf;
  auto id = identity_presheaf_map(p);
  CHECK(is_sectionwise_weq(id));
  CHECK(is_sectionwise_fib(id));
  CHECK(is_local_weq(id));

  // E G -> point for the group presheaf Z/4 -> Z/2 -> 1
  auto site = FiniteSite::sierpinski();
  std::vector<FiniteGroup> groups{FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(4)};
  auto g = make_group_presheaf(site, groups, [&](std::size_t u, std::size_t v) {
    std::vector<Elem> h;
    for (Elem x = 0; x < groups[u].order(); ++x) h.push_back(static_cast<Elem>(x % groups[v].order()));
    return h;
  });
  REQUIRE(validate_group_presheaf(g).empty());
  auto eg = build_presheaf_action_groupoid(translation_action_presheaf(g));
  auto bg = build_presheaf_action_groupoid(point_action_presheaf(g));
  CHECK(validate_presheaf(eg).empty());
  CHECK(bg.sections[2].num_morphisms() == 4);
  auto bang = to_terminal(eg);
  CHECK(is_sectionwise_weq(bang));
  CHECK(is_sectionwise_fib(bang));
  CHECK(is_local_weq(bang));
  // B G -> point is a weak equivalence only over ∅
  CHECK_FALSE(is_sectionwise_weq(to_terminal(bg)));
  CHECK(is_sectionwise_fib(to_terminal(bg)));

  // a weak equivalence over the whole space only: the point into {p, q} over {a}
  auto two = FiniteSite::discrete(2);
  auto pt = FiniteGroupoid::terminal();
  auto x = constant_presheaf(two, pt);
  std::vector<FiniteGroupoid> ys{pt, FiniteGroupoid::discrete(2), pt, pt};
  auto y = make_presheaf(two, ys, [&](std::size_t u, std::size_t v) {
    if (u == v) return identity_functor(ys[u]);
    if (v == 1) return GroupoidMap{ys[u], ys[1], {0}, {0}};
    return to_terminal(ys[u]);
  });
  PresheafMap top_only{x, y, {}};
  for (std::size_t u = 0; u < 4; ++u) top_only.components.push_back(GroupoidMap{pt, ys[u], {0}, {0}});
  REQUIRE(validate_presheaf_map(top_only).empty());
  CHECK(is_weak_equivalence(top_only.components[3]));
  CHECK_FALSE(is_sectionwise_weq(top_only));
  CHECK_FALSE(is_local_weq(top_only));

  for (const auto& m : local_not_sectionwise_corpus()) {
    INFO(m.name);
    REQUIRE(validate_presheaf_map(m.map).empty());
    CHECK(is_local_weq(m.map));
    CHECK_FALSE(is_sectionwise_weq(m.map));
    CHECK(is_local_weq(m.map) == oracle_local(m.map, oracle_weq));
  }
}

TEST_CASE("sectionwise fixed points") {
  for (const auto& n : presheaf_corpus()) {
    INFO(n.name);
    REQUIRE(validate_presheaf(n.presheaf).empty());
    REQUIRE(validate_presheaf_action(n.presheaf, n.action).empty());
    auto h = presheaf_hfp(n.presheaf, n.action);
    CHECK(validate_presheaf(h.presheaf).empty());
    CHECK(validate_presheaf_map(h.iota).empty());
    CHECK(is_sectionwise_fib(h.iota));
    for (std::size_t u = 0; u < n.presheaf.sections.size(); ++u) {
      const auto& a = n.action.sections[u];
      auto count = oracle::hfp_count(a.carrier, a.bar_obj, a.bar_mor);
      CHECK(h.presheaf.sections[u].num_objects() == count.objects.size());
    }
    for (std::uint32_t t = 0; t < n.presheaf.site.num_points; ++t) CHECK(stalk_commutation_check(n.presheaf, n.action, t).isomorphism);
  }
  auto c = presheaf_corpus().front();
  auto h = presheaf_hfp(c.presheaf, c.action);
  for (const auto& s : h.presheaf.sections) {
    CHECK(s.num_objects() == 2);
    CHECK(s.num_components() == 2);
  }
  // the exchange on {p, q} has no fixed points over the whole space
  auto sets = presheaf_corpus()[2];
  auto hs = presheaf_hfp(sets.presheaf, sets.action);
  CHECK(hs.presheaf.sections[3].num_objects() == 0);
  CHECK(hs.presheaf.sections[1].num_objects() == 1);
}

TEST_CASE("random presheaves") {
  Sampler s(77);
  int models[2] = {0, 0};
  for (int i = 0; i < 60; ++i) {
    auto site = random_site(s, 2, 5);
    auto x = random_presheaf(s, site, 64);
    INFO(x.description);
    models[x.description.rfind("rank", 0) == 0]++;
    REQUIRE(validate_presheaf(x.presheaf).empty());
    REQUIRE(validate_presheaf_action(x.presheaf, x.action).empty());
    for (const auto& g : x.presheaf.sections) CHECK(g.num_morphisms() <= 64);
    auto h = presheaf_hfp(x.presheaf, x.action);
    CHECK(oracle_local(h.iota, oracle_fib));
    CHECK(is_sectionwise_fib(h.iota));
    for (std::uint32_t t = 0; t < site.num_points; ++t) {
      auto c = stalk_computation(x.presheaf, t);
      CHECK(c.matches_minimal_open);
      CHECK(c.colimit.groupoid.num_morphisms() == x.presheaf.sections[site.minimal_open(t)].num_morphisms());
      CHECK(stalk_commutation_check(x.presheaf, x.action, t).isomorphism);
    }
    auto f = random_presheaf_map(s, x);
    INFO(f.description);
    REQUIRE(validate_presheaf_map(f.map).empty());
    CHECK(validate_presheaf_action(f.map.cod, f.cod_action).empty());
    if (is_sectionwise_weq(f.map)) CHECK(is_local_weq(f.map));
    if (is_sectionwise_fib(f.map)) CHECK(is_local_fib(f.map));
    CHECK(is_local_weq(f.map) == oracle_local(f.map, oracle_weq));
    CHECK(is_local_fib(f.map) == oracle_local(f.map, oracle_fib));
  }
  CHECK(models[0] > 10);
  CHECK(models[1] > 10);
}

TEST_CASE("fixed points preserve local fibrations and weak equivalences") {
  Sampler s(101);
  int fibrations = 0, equivalences = 0;
  for (int i = 0; i < 60; ++i) {
    auto site = random_site(s, 2, 4);
    auto f = random_product_map(s, site, 64);
    INFO(f.description);
    REQUIRE(validate_presheaf_map(f.map).empty());
    REQUIRE(validate_presheaf_action(f.map.dom, f.dom_action).empty());
    REQUIRE(validate_presheaf_action(f.map.cod, f.cod_action).empty());
    if (is_sectionwise_weq(f.map)) CHECK(is_local_weq(f.map));
    if (is_sectionwise_fib(f.map)) CHECK(is_local_fib(f.map));
    auto fh = presheaf_hfp_map(f.map, f.dom_action, f.cod_action);
    CHECK(validate_presheaf_map(fh).empty());
    if (is_local_fib(f.map)) {
      ++fibrations;
      CHECK(is_local_fib(fh));
      CHECK(oracle_local(fh, oracle_fib));
    }
    if (is_local_weq(f.map)) {
      ++equivalences;
      CHECK(is_local_weq(fh));
      CHECK(oracle_local(fh, oracle_weq));
    }
  }
  CHECK(fibrations > 5);
  CHECK(equivalences > 5);
}

TEST_CASE("discrete presheaves: local weak equivalences are stalkwise bijections") {
  Sampler s(55);
  int local = 0;
  for (int i = 0; i < 80; ++i) {
    auto site = random_site(s, 2, 4);
    auto f = random_discrete_map(s, site);
    REQUIRE(validate_presheaf_map(f.map).empty());
    bool bijective = true;
    for (std::uint32_t t = 0; t < site.num_points; ++t)
      bijective = bijective && bijective_on_objects(f.map.components[site.minimal_open(t)]);
    CHECK(is_local_weq(f.map) == bijective);
    local += bijective;
  }
  CHECK(local > 0);
}

TEST_CASE("parameter fibration over a site") {
  auto point = FiniteSite::discrete(1);
  for (const auto& n : involutive_data_corpus()) {
    INFO(n.name);
    auto pf = parameter_fibration_presheaf(constant_involutive_presheaf(point, n.data));
    CHECK(pf.acyclic());
  }

  // S3 -> Z/2 -> 1 by the sign, θ = id, B = <(1 2)> -> Z/2 -> 1
  auto site = FiniteSite::sierpinski();
  auto s3 = FiniteGroup::symmetric(3);
  std::vector<FiniteGroup> groups{FiniteGroup::trivial(), FiniteGroup::cyclic(2), s3};
  auto g = make_group_presheaf(site, groups, [&](std::size_t u, std::size_t v) {
    if (u == v) return identity_map(groups[u]);
    std::vector<Elem> h;
    for (Elem x = 0; x < groups[u].order(); ++x) {
      Elem image = u == 2 ? sign(s3.permutations()[x]) : x;
      h.push_back(groups[v].order() == 1 ? 0 : image);
    }
    return h;
  });
  REQUIRE(validate_group_presheaf(g).empty());
  auto t12 = *s3.find("(1 2)");
  InvolutivePresheaf d{g, {{0}, {0, 1}, identity_map(s3)}, {{0}, {0, 1}, {s3.identity(), t12}}};
  REQUIRE(validate_involutive_presheaf(d).empty());
  auto pf = parameter_fibration_presheaf(d);
  CHECK(pf.natural);
  CHECK(pf.acyclic());
  CHECK(pf.fixed_points.presheaf.sections[2].num_objects() == 8);

  auto bad = d;
  bad.subgroups[1] = {0};
  CHECK(has_violation(validate_involutive_presheaf(bad), "subgroup"));
}
