#include <set>

#include "doctest.h"
#include "hgrpd/cohomology.hpp"
#include "hgrpd/error.hpp"
#include "hgrpd/fixtures.hpp"
#include "hgrpd/twisted.hpp"
#include "oracles.hpp"

using namespace hgrpd;

namespace {

InvolutiveGroupData s3_id() {
  auto s3 = FiniteGroup::symmetric(3);
  return {s3, identity_map(s3), {s3.identity(), *s3.find("(1 2)")}};
}

InvolutiveGroupData z4_neg() {
  auto z4 = FiniteGroup::cyclic(4);
  return {z4, inversion_map(z4), {0, 2}};
}

InvolutiveGroupData trivial() { return {FiniteGroup::trivial(), {0}, {0}}; }

// Orbits of b.g = θ(b) g b⁻¹ by pairwise search; stabilizer orders by counting.
std::vector<std::pair<std::set<Elem>, std::size_t>> brute_orbits(const InvolutiveGroupData& d) {
  const auto& g = d.group;
  std::vector<Elem> z;
  for (Elem x = 0; x < g.order(); ++x)
    if (g.mul(x, d.theta[x]) == g.identity()) z.push_back(x);
  std::vector<std::pair<std::set<Elem>, std::size_t>> out;
  std::set<Elem> placed;
  for (auto x : z) {
    if (placed.count(x)) continue;
    std::set<Elem> orbit;
    std::size_t stab = 0;
    for (auto b : d.subgroup) {
      auto y = g.mul(g.mul(d.theta[b], x), g.inverse(b));
      orbit.insert(y);
      stab += y == x;
    }
    placed.insert(orbit.begin(), orbit.end());
    out.push_back({orbit, stab});
  }
  return out;
}

}  // namespace

TEST_CASE("validate_involutive_data") {
  CHECK(validate_involutive_data(s3_id()).empty());
  CHECK(validate_involutive_data(z4_neg()).empty());
  auto s3 = FiniteGroup::symmetric(3);
  InvolutiveGroupData bad{s3, identity_map(s3), {s3.identity(), *s3.find("(1 2)"), *s3.find("(1 3)")}};
  CHECK(has_violation(validate_involutive_data(bad), "subgroup"));
  InvolutiveGroupData unstable{s3, conjugation_map(s3, *s3.find("(1 2)")), {s3.identity(), *s3.find("(1 3)")}};
  CHECK(has_violation(validate_involutive_data(unstable), "theta-stable"));
  InvolutiveGroupData not_aut{s3, inversion_map(s3), {s3.identity()}};
  CHECK(has_violation(validate_involutive_data(not_aut), "automorphism"));
  CHECK_THROWS_AS(build_double_coset_groupoid(bad), InvalidStructure);
  for (const auto& [name, d] : involutive_data_corpus()) {
    CAPTURE(name);
    CHECK(validate_involutive_data(d).empty());
  }
}

TEST_CASE("double coset groupoid") {
  auto a = build_double_coset_groupoid(s3_id());
  CHECK(a.carrier.num_objects() == 6);
  CHECK(a.carrier.num_morphisms() == 24);
  CHECK(validate_gamma_action(a).empty());

  auto t = build_double_coset_groupoid(trivial());
  CHECK(t.carrier == FiniteGroupoid::terminal());
  CHECK(t == trivial_gamma_action(FiniteGroupoid::terminal()));

  auto z = build_double_coset_groupoid(z4_neg());
  CHECK(z.carrier.num_objects() == 4);
  CHECK(z.carrier.num_morphisms() == 16);
  CHECK(validate_gamma_action(z).empty());

  for (const auto& [name, d] : involutive_data_corpus()) {
    CAPTURE(name);
    CHECK(validate_action(double_coset_action(d)).empty());
    CHECK(validate_gamma_action(build_double_coset_groupoid(d)).empty());
  }
}

TEST_CASE("z1_theta and twisted orbits") {
  auto s3 = FiniteGroup::symmetric(3);
  auto z = z1_theta(s3_id());
  std::vector<Elem> expected{s3.identity(), *s3.find("(1 2)"), *s3.find("(1 3)"), *s3.find("(2 3)")};
  std::sort(expected.begin(), expected.end());
  CHECK(z.elements == expected);
  CHECK(validate_action(z.action).empty());

  auto orbits = twisted_orbits(s3_id());
  REQUIRE(orbits.size() == 3);
  std::multiset<std::size_t> stabs;
  for (const auto& o : orbits) stabs.insert(o.stabilizer.elements.size());
  CHECK(stabs == std::multiset<std::size_t>{1, 2, 2});
  std::set<std::vector<Elem>> members;
  for (const auto& o : orbits) members.insert(o.members);
  std::vector<Elem> pair{*s3.find("(1 3)"), *s3.find("(2 3)")};
  std::sort(pair.begin(), pair.end());
  CHECK(members.count(pair) == 1);
  CHECK(members.count({s3.identity()}) == 1);
  CHECK(members.count({*s3.find("(1 2)")}) == 1);

  CHECK(z1_theta(trivial()).elements == std::vector<Elem>{0});
  CHECK(twisted_orbits(trivial()).size() == 1);

  CHECK(z1_theta(z4_neg()).elements == std::vector<Elem>{0, 1, 2, 3});
  auto zo = twisted_orbits(z4_neg());
  REQUIRE(zo.size() == 4);
  for (const auto& o : zo) {
    CHECK(o.members.size() == 1);
    CHECK(o.stabilizer.elements.size() == 2);
  }
}

TEST_CASE("twisted orbits match brute force") {
  for (const auto& [name, d] : involutive_data_corpus()) {
    CAPTURE(name);
    auto orbits = twisted_orbits(d);
    auto brute = brute_orbits(d);
    REQUIRE(orbits.size() == brute.size());
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      CHECK(std::set<Elem>(orbits[i].members.begin(), orbits[i].members.end()) == brute[i].first);
      CHECK(orbits[i].stabilizer.elements.size() == brute[i].second);
      CHECK(orbits[i].representative == *brute[i].first.begin());
    }
  }
}

TEST_CASE("with theta = id the orbits are conjugacy classes of B on involutions and the identity") {
  for (const auto& [name, d] : involutive_data_corpus()) {
    if (d.theta != identity_map(d.group)) continue;
    CAPTURE(name);
    const auto& g = d.group;
    std::set<std::set<Elem>> conj;
    for (Elem x = 0; x < g.order(); ++x) {
      if (g.mul(x, x) != g.identity()) continue;
      std::set<Elem> cls;
      for (auto b : d.subgroup) cls.insert(g.mul(g.mul(b, x), g.inverse(b)));
      conj.insert(cls);
    }
    std::set<std::set<Elem>> got;
    for (const auto& o : twisted_orbits(d)) got.insert(std::set<Elem>(o.members.begin(), o.members.end()));
    CHECK(got == conj);
  }
}

TEST_CASE("with B = G the orbits are the classes of H1 for bar = theta") {
  for (const auto& [name, d] : involutive_data_corpus()) {
    if (d.subgroup.size() != d.group.order()) continue;
    CAPTURE(name);
    auto orbits = twisted_orbits(d);
    auto classes = h1(GroupGammaAction{d.group, d.theta});
    REQUIRE(orbits.size() == classes.size());
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      CHECK(orbits[i].members == classes[i].members);
      CHECK(orbits[i].stabilizer.elements == classes[i].stabilizer.elements);
    }
  }
}

TEST_CASE("X and Y") {
  CHECK(xy_isomorphism(trivial()).x.size() == 1);
  auto s = xy_isomorphism(s3_id());
  CHECK(s.x.size() == 8);
  CHECK(s.y.size() == 8);
  CHECK(xy_isomorphism(z4_neg()).x.size() == 8);
  for (const auto& [name, d] : involutive_data_corpus()) {
    CAPTURE(name);
    auto r = xy_isomorphism(d);
    CHECK(r.mutually_inverse);
    CHECK(r.equivariant);
    CHECK(r.x.size() == d.subgroup.size() * z1_theta(d).elements.size());
    CHECK(r.y.size() == r.x.size());
  }
}

TEST_CASE("parameter fibration examples") {
  auto t = parameter_fibration(trivial());
  CHECK(is_isomorphism(t.map));
  CHECK(t.map.cod == FiniteGroupoid::terminal());

  auto s = parameter_fibration(s3_id());
  CHECK(s.acyclic());
  CHECK(s.map.cod.num_objects() == 4);
  CHECK(s.map.cod.num_morphisms() == 8);
  CHECK(groupoid_cardinality(s.map.cod) == Rational(2));
  CHECK(s.fixed_points.groupoid.num_objects() == 8);
  CHECK(s.fixed_points.groupoid.num_components() == 3);
  CHECK(groupoid_cardinality(s.fixed_points.groupoid) == Rational(2));

  auto z = parameter_fibration(z4_neg());
  CHECK(z.acyclic());
  CHECK(groupoid_cardinality(z.map.cod) == Rational(2));
}

TEST_CASE("parameter fibration over the corpus") {
  for (const auto& [name, d] : involutive_data_corpus()) {
    CAPTURE(name);
    auto r = parameter_fibration(d);
    CHECK(validate_functor(r.map).empty());
    CHECK(r.fibration);
    CHECK(r.weak_equivalence);
    CHECK(oracle::fibration(r.map));
    CHECK(oracle::weak_equivalence(r.map));
    CHECK_FALSE(r.left_freeness_witness);
    CHECK_FALSE(r.right_freeness_witness);

    auto z = z1_theta(d);
    CHECK(r.fixed_points.objects.size() == d.subgroup.size() * z.elements.size());
    auto orbits = twisted_orbits(d);
    Rational expected(0);
    for (const auto& o : orbits) expected += Rational(1, static_cast<std::int64_t>(o.stabilizer.elements.size()));
    CHECK(groupoid_cardinality(r.fixed_points.groupoid) == expected);
    CHECK(groupoid_cardinality(r.map.cod) == expected);
    CHECK(r.map.cod.num_components() == orbits.size());

    auto count = oracle::hfp_count(r.fixed_points.action.carrier, r.fixed_points.action.bar_obj,
                                   r.fixed_points.action.bar_mor);
    CHECK(count.objects.size() == r.fixed_points.objects.size());

    // the last map is also the quotient by the free kernel B x 1
    std::vector<Elem> kernel;
    auto nb = d.subgroup.size();
    auto e = *make_subgroup(d.group, d.subgroup).local(d.group.identity());
    for (Elem b = 0; b < nb; ++b) kernel.push_back(static_cast<Elem>(b * nb + e));
    std::sort(kernel.begin(), kernel.end());
    CHECK(quotient_comparison(r.xy.y_action, kernel).acyclic());
  }
}
