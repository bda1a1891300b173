#include <set>

#include "doctest.h"
#include "hgrpd/cohomology.hpp"
#include "hgrpd/error.hpp"
#include "hgrpd/fixtures.hpp"
#include "hgrpd/group_action.hpp"
#include "oracles.hpp"

using namespace hgrpd;

namespace {

// Classes of the relation σ ~ ḡσg⁻¹ found by pairwise search, and |K_σ| by
// counting, straight from the definitions.
struct BruteH1 {
  std::vector<std::set<Elem>> classes;
  std::vector<std::size_t> stabilizer_orders;
};

BruteH1 brute_h1(const GroupGammaAction& a) {
  const auto& g = a.group;
  std::vector<Elem> z;
  for (Elem s = 0; s < g.order(); ++s)
    if (g.mul(s, a.bar[s]) == g.identity()) z.push_back(s);
  BruteH1 out;
  std::set<Elem> placed;
  for (auto s : z) {
    if (placed.count(s)) continue;
    std::set<Elem> cls;
    std::size_t stab = 0;
    for (auto t : z)
      for (Elem x = 0; x < g.order(); ++x)
        if (g.mul(g.mul(a.bar[x], s), g.inverse(x)) == t) {
          cls.insert(t);
          if (t == s) ++stab;
        }
    placed.insert(cls.begin(), cls.end());
    out.classes.push_back(cls);
    out.stabilizer_orders.push_back(stab);
  }
  return out;
}

GroupGammaAction product_action(const GroupGammaAction& a, const GroupGammaAction& b) {
  auto g = FiniteGroup::direct_product(a.group, b.group);
  std::vector<Elem> bar(g.order());
  for (Elem x = 0; x < a.group.order(); ++x)
    for (Elem y = 0; y < b.group.order(); ++y)
      bar[x * b.group.order() + y] = static_cast<Elem>(a.bar[x] * b.group.order() + b.bar[y]);
  return {g, bar};
}

}  // namespace

TEST_CASE("z1 examples") {
  CHECK(z1({FiniteGroup::trivial(), {0}}) == std::vector<Elem>{0});
  CHECK(z1({FiniteGroup::cyclic(2), {0, 1}}) == std::vector<Elem>{0, 1});
  auto z4 = FiniteGroup::cyclic(4);
  CHECK(z1({z4, inversion_map(z4)}) == std::vector<Elem>{0, 1, 2, 3});
  CHECK(z1({z4, identity_map(z4)}) == std::vector<Elem>{0, 2});
}

TEST_CASE("h1 examples") {
  auto t = h1({FiniteGroup::trivial(), {0}});
  CHECK(t.size() == 1);

  auto z2 = h1({FiniteGroup::cyclic(2), {0, 1}});
  REQUIRE(z2.size() == 2);
  for (const auto& c : z2) CHECK(c.stabilizer.group.order() == 2);

  auto z4 = FiniteGroup::cyclic(4);
  auto neg = h1({z4, inversion_map(z4)});
  REQUIRE(neg.size() == 2);
  CHECK(neg[0].members == std::vector<Elem>{0, 2});
  CHECK(neg[1].members == std::vector<Elem>{1, 3});
  CHECK(neg[0].representative == 0);
  CHECK(neg[1].representative == 1);
  for (const auto& c : neg) CHECK(c.stabilizer.elements == std::vector<Elem>{0, 2});
}

TEST_CASE("invalid involutions are rejected") {
  auto s3 = FiniteGroup::symmetric(3);
  GroupGammaAction bad{s3, inversion_map(s3)};
  CHECK(has_violation(validate_group_gamma_action(bad), "automorphism"));
  CHECK_THROWS_AS(z1(bad), InvalidStructure);
  auto z3 = FiniteGroup::cyclic(3);
  CHECK(has_violation(validate_group_gamma_action({z3, {0, 2, 0}}), "involutive"));
  CHECK(has_violation(validate_group_gamma_action({z3, {0, 1}}), "shape"));
}

TEST_CASE("h1 matches brute force over the corpus") {
  auto corpus = group_involution_corpus();
  CHECK(corpus.size() >= 10);
  for (const auto& [name, a] : corpus) {
    CAPTURE(name);
    REQUIRE(validate_group_gamma_action(a).empty());
    auto classes = h1(a);
    auto brute = brute_h1(a);
    REQUIRE(classes.size() == brute.classes.size());
    std::size_t total = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      CHECK(std::set<Elem>(classes[i].members.begin(), classes[i].members.end()) == brute.classes[i]);
      CHECK(classes[i].representative == *brute.classes[i].begin());
      CHECK(classes[i].stabilizer.elements.size() == brute.stabilizer_orders[i]);
      CHECK(is_subgroup(a.group, classes[i].stabilizer.elements));
      // orbit-stabilizer
      CHECK(classes[i].members.size() * classes[i].stabilizer.elements.size() == a.group.order());
      total += classes[i].members.size();
    }
    CHECK(total == z1(a).size());
  }
}

TEST_CASE("fixed points of BG are the cocycles, classes are H1, automorphisms are K") {
  for (const auto& [name, a] : group_involution_corpus()) {
    CAPTURE(name);
    auto act = bg_gamma_action(a);
    CHECK(validate_gamma_action(act).empty());
    auto h = hfp(act);
    auto count = oracle::hfp_count(act.carrier, act.bar_obj, act.bar_mor);
    CHECK(h.objects.size() == z1(a).size());
    CHECK(count.objects.size() == z1(a).size());
    auto classes = h1(a);
    CHECK(h.groupoid.num_components() == classes.size());
    Rational expected(0);
    for (const auto& c : classes) {
      expected += Rational(1, static_cast<std::int64_t>(c.stabilizer.elements.size()));
      auto o = *h.find({0, c.representative});
      CHECK(h.groupoid.hom(o, o).size() == c.stabilizer.elements.size());
    }
    CHECK(groupoid_cardinality(h.groupoid) == expected);
    CHECK(oracle::cardinality(h.groupoid) == expected);
  }
}

TEST_CASE("BG decomposition") {
  auto t = bg_hfp_decomposition({FiniteGroup::trivial(), {0}});
  CHECK(t.weak_equivalence);
  CHECK(is_isomorphism(t.map));
  CHECK(t.map.dom == FiniteGroupoid::terminal());

  auto z2 = bg_hfp_decomposition({FiniteGroup::cyclic(2), {0, 1}});
  CHECK(z2.weak_equivalence);
  CHECK(z2.map.dom.num_components() == 2);
  CHECK(groupoid_cardinality(z2.map.dom) == Rational(1));

  auto s3 = FiniteGroup::symmetric(3);
  auto d = bg_hfp_decomposition({s3, conjugation_map(s3, *s3.find("(1 2)"))});
  CHECK(d.weak_equivalence);
  CHECK(d.classes.size() == d.fixed_points.groupoid.num_components());

  for (const auto& [name, a] : group_involution_corpus()) {
    CAPTURE(name);
    auto dec = bg_hfp_decomposition(a);
    CHECK(validate_functor(dec.map).empty());
    CHECK(dec.weak_equivalence);
    CHECK(oracle::weak_equivalence(dec.map));
  }
}

TEST_CASE("h1 of a product is the product of h1") {
  auto corpus = group_involution_corpus();
  std::vector<GroupGammaAction> small;
  for (const auto& [name, a] : corpus)
    if (a.group.order() <= 6) small.push_back(a);
  for (const auto& a : small)
    for (const auto& b : small) {
      auto p = product_action(a, b);
      REQUIRE(validate_group_gamma_action(p).empty());
      auto ca = h1(a), cb = h1(b), cp = h1(p);
      CHECK(cp.size() == ca.size() * cb.size());
      std::set<std::set<Elem>> expected, got;
      for (const auto& x : ca)
        for (const auto& y : cb) {
          std::set<Elem> cls;
          for (auto u : x.members)
            for (auto v : y.members) cls.insert(static_cast<Elem>(u * b.group.order() + v));
          expected.insert(cls);
        }
      for (const auto& c : cp) got.insert(std::set<Elem>(c.members.begin(), c.members.end()));
      CHECK(got == expected);
    }
}

TEST_CASE("skeletonize") {
  auto ez2 = skeletonize(build_eg(FiniteGroup::cyclic(2)));
  REQUIRE(ez2.pieces.size() == 1);
  CHECK(ez2.pieces[0].automorphisms.order() == 1);
  CHECK(ez2.weak_equivalence);

  auto two = skeletonize(FiniteGroupoid::discrete(2));
  REQUIRE(two.pieces.size() == 2);
  CHECK(two.pieces[1].representative == 1);
  CHECK(two.weak_equivalence);

  auto h = hfp(trivial_gamma_action(build_bg(FiniteGroup::cyclic(2))));
  auto s = skeletonize(h.groupoid);
  REQUIRE(s.pieces.size() == 2);
  for (const auto& p : s.pieces) CHECK(p.automorphisms.order() == 2);

  std::vector<FiniteGroupoid> gs{FiniteGroupoid(), build_eg(FiniteGroup::symmetric(3)),
                                 build_action_groupoid(coset_action(FiniteGroup::dihedral(4), std::vector<Elem>{0})),
                                 swap_comparison(build_bg(FiniteGroup::symmetric(3))).fixed_points.groupoid};
  for (const auto& [name, a] : group_involution_corpus()) gs.push_back(hfp(bg_gamma_action(a)).groupoid);
  for (const auto& g : gs) {
    auto sk = skeletonize(g);
    CHECK(validate_functor(sk.map).empty());
    CHECK(sk.weak_equivalence);
    CHECK(oracle::weak_equivalence(sk.map));
    Rational total(0);
    for (const auto& p : sk.pieces) total += Rational(1, static_cast<std::int64_t>(p.automorphisms.order()));
    CHECK(total == groupoid_cardinality(g));
  }
}
