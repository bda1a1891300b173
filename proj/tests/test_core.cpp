#include <algorithm>
#include <random>

#include "doctest.h"
#include "hgrpd/error.hpp"
#include "hgrpd/group.hpp"
#include "hgrpd/group_action.hpp"
#include "hgrpd/groupoid.hpp"
#include "oracles.hpp"

using namespace hgrpd;

TEST_CASE("catalog groups have the expected orders and labels") {
  CHECK(FiniteGroup::trivial().order() == 1);
  CHECK(FiniteGroup::cyclic(4).mul(3, 2) == 1);
  auto s3 = FiniteGroup::symmetric(3);
  CHECK(s3.order() == 6);
  CHECK(s3.label(s3.identity()) == "()");
  auto t = s3.find("(1 2)");
  REQUIRE(t);
  CHECK(s3.mul(*t, *t) == s3.identity());
  CHECK(FiniteGroup::dihedral(4).order() == 8);
  CHECK(FiniteGroup::symmetric(4).order() == 24);
  auto gl = FiniteGroup::gl2_f2();
  CHECK(gl.order() == 6);
  CHECK(gl.label(gl.identity()) == "[10;01]");
  bool abelian = true;
  for (Elem a = 0; a < 6; ++a)
    for (Elem b = 0; b < 6; ++b) abelian = abelian && gl.mul(a, b) == gl.mul(b, a);
  CHECK_FALSE(abelian);
  auto p = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3));
  CHECK(p.order() == 6);
  CHECK(p.label(5) == "(1,2)");
}

TEST_CASE("group table validation names the failing axiom") {
  std::vector<Elem> not_assoc = {0, 1, 2, 1, 0, 0, 2, 2, 0};
  auto report = validate_group_table(3, not_assoc);
  CHECK_FALSE(report.empty());
  CHECK_THROWS_AS(FiniteGroup(std::vector<Elem>{0, 1, 1, 1}), InvalidStructure);
  CHECK(validate_group_table(2, std::vector<Elem>{0, 1, 1, 0}).empty());
  CHECK(has_violation(validate_group_table(2, std::vector<Elem>{0, 1, 1, 1}), "inverse"));
}

TEST_CASE("subgroups, normality and quotients") {
  auto s3 = FiniteGroup::symmetric(3);
  CHECK(small_subgroups(s3).size() == 6);
  CHECK(small_subgroups(FiniteGroup::symmetric(4)).size() == 30);
  auto t = *s3.find("(1 2)");
  std::vector<Elem> b = generated_subgroup(s3, std::vector<Elem>{t});
  CHECK(b.size() == 2);
  CHECK(normality_witness(s3, b).has_value());
  CHECK_THROWS_AS(quotient_group(s3, b), NotNormal);
  auto q = quotient_group(FiniteGroup::cyclic(4), std::vector<Elem>{0, 2});
  CHECK(q.group.order() == 2);
  CHECK(q.projection == std::vector<Elem>{0, 1, 0, 1});
  CHECK(is_homomorphism(FiniteGroup::cyclic(4), q.group, q.projection));
  auto sub = make_subgroup(s3, b);
  CHECK(sub.group.order() == 2);
  CHECK(sub.local(t) == Elem{1});
  CHECK_THROWS_AS(make_subgroup(s3, {0, t, *s3.find("(1 3)")}), InvalidStructure);
}

TEST_CASE("involutive automorphisms are enumerated exactly") {
  CHECK(involutive_automorphisms(FiniteGroup::cyclic(4)).size() == 2);
  CHECK(involutive_automorphisms(FiniteGroup::cyclic(3)).size() == 2);
  // Aut(S3) = S3 and Aut(Z2 x Z2) = S3 each have one identity and three involutions
  CHECK(involutive_automorphisms(FiniteGroup::symmetric(3)).size() == 4);
  auto v4 = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  CHECK(involutive_automorphisms(v4).size() == 4);
  for (const auto& t : involutive_automorphisms(FiniteGroup::dihedral(4))) {
    CHECK(is_automorphism(FiniteGroup::dihedral(4), t));
  }
  CHECK(is_automorphism(FiniteGroup::cyclic(4), inversion_map(FiniteGroup::cyclic(4))));
  CHECK_FALSE(is_automorphism(FiniteGroup::symmetric(3), inversion_map(FiniteGroup::symmetric(3))));
}

TEST_CASE("validate_groupoid") {
  CHECK(validate_groupoid(FiniteGroupoid::terminal()).empty());
  CHECK(validate_groupoid(FiniteGroupoid()).empty());
  auto bz2 = build_bg(FiniteGroup::cyclic(2));
  CHECK(validate_groupoid(bz2).empty());

  auto t = bz2.tables();
  for (auto& triple : t.composition)
    if (triple[0] == 1 && triple[1] == 1) triple[2] = 1;
  auto report = validate_groupoid(FiniteGroupoid(t));
  CHECK(has_violation(report, "inverse"));

  auto missing = bz2.tables();
  missing.composition.pop_back();
  CHECK(has_violation(validate_groupoid(FiniteGroupoid(missing)), "composition-total"));

  auto bad_shape = bz2.tables();
  bad_shape.src[1] = 7;
  CHECK_THROWS_AS(FiniteGroupoid{bad_shape}, InputError);
}

TEST_CASE("action groupoids") {
  auto ez2 = build_eg(FiniteGroup::cyclic(2));
  CHECK(ez2.num_objects() == 2);
  CHECK(ez2.num_morphisms() == 4);
  CHECK(ez2.num_components() == 1);
  CHECK(ez2.hom(0, 0).size() == 1);

  CHECK(build_action_groupoid(trivial_action(FiniteGroup::trivial())) == FiniteGroupoid::terminal());
  CHECK(build_bg(FiniteGroup::trivial()) == FiniteGroupoid::terminal());

  auto bz2 = build_bg(FiniteGroup::cyclic(2));
  CHECK(bz2.num_objects() == 1);
  CHECK(bz2.num_morphisms() == 2);
  CHECK(bz2.hom(0, 0).size() == 2);

  auto es3 = build_eg(FiniteGroup::symmetric(3));
  CHECK(es3.num_objects() == 6);
  CHECK(es3.num_morphisms() == 36);
  CHECK(es3.num_components() == 1);
  for (ObjId x = 0; x < 6; ++x) CHECK(es3.hom(x, x).size() == 1);

  auto bz4 = build_bg(FiniteGroup::cyclic(4));
  CHECK(bz4.num_objects() == 1);
  CHECK(bz4.num_morphisms() == 4);

  // every coset action of every subgroup of S4 gives a valid groupoid
  auto s4 = FiniteGroup::symmetric(4);
  for (const auto& h : small_subgroups(s4)) {
    auto a = coset_action(s4, h);
    CHECK(validate_action(a).empty());
    CHECK(validate_groupoid(build_action_groupoid(a)).empty());
  }
}

TEST_CASE("fibration examples") {
  auto es3 = build_eg(FiniteGroup::symmetric(3));
  CHECK(is_fibration(identity_functor(es3)));
  CHECK(is_fibration(to_terminal(es3)));
  auto ez2 = build_eg(FiniteGroup::cyclic(2));
  auto inc = full_subgroupoid_inclusion(ez2, {0});
  CHECK(validate_functor(inc).empty());
  CHECK_FALSE(is_fibration(inc));
  CHECK_FALSE(oracle::fibration(inc));
}

TEST_CASE("weak equivalence examples") {
  auto es3 = build_eg(FiniteGroup::symmetric(3));
  CHECK(is_weak_equivalence(to_terminal(es3)));
  auto bz2 = build_bg(FiniteGroup::cyclic(2));
  CHECK_FALSE(is_weak_equivalence(to_terminal(bz2)));
  CHECK_FALSE(is_faithful(to_terminal(bz2)));

  std::vector<FiniteGroupoid> parts{FiniteGroupoid::terminal(), bz2};
  auto u = coproduct(parts);
  GroupoidMap inc{FiniteGroupoid::terminal(), u.groupoid, {0}, {0}};
  CHECK(validate_functor(inc).empty());
  CHECK_FALSE(is_essentially_surjective(inc));
  CHECK_FALSE(is_weak_equivalence(inc));
  CHECK(is_full(inc));
  CHECK(is_faithful(inc));
}

TEST_CASE("quotient comparison") {
  auto z4 = FiniteGroup::cyclic(4);
  auto q = quotient_comparison(left_multiplication(z4), std::vector<Elem>{0, 2});
  CHECK(q.acyclic());
  CHECK(q.map.cod.num_objects() == 2);
  CHECK(q.map.cod.num_morphisms() == 4);
  CHECK(validate_functor(q.map).empty());

  auto trivial_n = quotient_comparison(left_multiplication(z4), std::vector<Elem>{0});
  CHECK(trivial_n.acyclic());
  CHECK(is_isomorphism(trivial_n.map));

  auto z2 = FiniteGroup::cyclic(2);
  try {
    quotient_comparison(trivial_action(z2), std::vector<Elem>{0, 1});
    FAIL("expected NotFree");
  } catch (const NotFree& e) {
    CHECK(e.point == 0);
    CHECK(e.element == 1);
  }
  auto s3 = FiniteGroup::symmetric(3);
  CHECK_THROWS_AS(quotient_comparison(left_multiplication(s3), std::vector<Elem>{0, *s3.find("(1 2)")}),
                  NotNormal);
}

TEST_CASE("quotient comparison is acyclic for every free normal subgroup") {
  std::vector<FiniteGroup> groups{FiniteGroup::cyclic(4), FiniteGroup::cyclic(6),
                                  FiniteGroup::symmetric(3), FiniteGroup::dihedral(4),
                                  FiniteGroup::symmetric(4)};
  int checked = 0;
  for (const auto& g : groups)
    for (const auto& h : small_subgroups(g))
      for (const auto& n : small_subgroups(g)) {
        if (normality_witness(g, n)) continue;
        auto a = coset_action(g, h);
        if (freeness_witness(a, n)) continue;
        CHECK(quotient_comparison(a, n).acyclic());
        ++checked;
      }
  CHECK(checked > 20);
}

TEST_CASE("groupoid cardinality") {
  CHECK(groupoid_cardinality(build_bg(FiniteGroup::cyclic(2))) == Rational(1, 2));
  CHECK(groupoid_cardinality(build_eg(FiniteGroup::symmetric(3))) == Rational(1));
  std::vector<FiniteGroupoid> parts{FiniteGroupoid::terminal(), build_bg(FiniteGroup::cyclic(3))};
  CHECK(groupoid_cardinality(disjoint_union(parts)) == Rational(4, 3));
  CHECK(groupoid_cardinality(FiniteGroupoid()) == Rational(0));
}

TEST_CASE("products and disjoint unions") {
  auto bz3 = build_bg(FiniteGroup::cyclic(3));
  CHECK(product(FiniteGroupoid::terminal(), bz3) == bz3);
  CHECK(disjoint_union(std::vector<FiniteGroupoid>{}).num_objects() == 0);
  auto bz2 = build_bg(FiniteGroup::cyclic(2));
  auto p = product(bz2, bz2);
  CHECK(p.num_objects() == 1);
  CHECK(p.num_morphisms() == 4);
  CHECK(validate_groupoid(p).empty());
  // Aut is Z2 x Z2: abelian, every element squares to the identity
  for (MorId a = 0; a < 4; ++a) {
    CHECK(p.compose(a, a) == p.identity(0));
    for (MorId b = 0; b < 4; ++b) CHECK(p.compose(a, b) == p.compose(b, a));
  }
}

TEST_CASE("codiscrete reflection and components map are fibrations") {
  auto a = coset_action(FiniteGroup::symmetric(3), std::vector<Elem>{0, 2});
  std::vector<FiniteGroupoid> parts{build_action_groupoid(a), build_bg(FiniteGroup::cyclic(2))};
  auto g = disjoint_union(parts);
  auto r = codiscrete_reflection(g);
  CHECK(validate_groupoid(r.cod).empty());
  CHECK(validate_functor(r).empty());
  CHECK(is_fibration(r));
  CHECK_FALSE(is_faithful(r));
  auto c = components_map(g);
  CHECK(validate_functor(c).empty());
  CHECK(c.cod.num_objects() == 2);
  CHECK(is_fibration(c));
}

TEST_CASE("predicates agree with brute force; weak equivalences preserve cardinality") {
  std::vector<FiniteGroupoid> small{
      FiniteGroupoid(),
      FiniteGroupoid::terminal(),
      FiniteGroupoid::discrete(2),
      FiniteGroupoid::codiscrete(2),
      build_bg(FiniteGroup::cyclic(2)),
      build_bg(FiniteGroup::cyclic(3)),
      build_eg(FiniteGroup::cyclic(2)),
      disjoint_union(std::vector<FiniteGroupoid>{FiniteGroupoid::terminal(), build_bg(FiniteGroup::cyclic(2))}),
  };
  int maps = 0;
  for (const auto& d : small)
    for (const auto& c : small)
      for (const auto& f : oracle::all_functors(d, c)) {
        REQUIRE(validate_functor(f).empty());
        CHECK(is_fibration(f) == oracle::fibration(f));
        CHECK(is_full(f) == oracle::full(f));
        CHECK(is_faithful(f) == oracle::faithful(f));
        CHECK(is_essentially_surjective(f) == oracle::essentially_surjective(f));
        CHECK(is_weak_equivalence(f) == oracle::weak_equivalence(f));
        if (is_weak_equivalence(f)) CHECK(groupoid_cardinality(d) == groupoid_cardinality(c));
        ++maps;
      }
  CHECK(maps > 100);
  for (const auto& g : small) CHECK(groupoid_cardinality(g) == oracle::cardinality(g));
}

TEST_CASE("then composes functors") {
  auto es3 = build_eg(FiniteGroup::symmetric(3));
  auto inc = full_subgroupoid_inclusion(es3, {1, 3});
  auto f = then(inc, to_terminal(es3));
  CHECK(validate_functor(f).empty());
  CHECK(f.dom == inc.dom);
  CHECK(is_weak_equivalence(inc));
  CHECK_THROWS_AS(then(to_terminal(es3), inc), InputError);
}
