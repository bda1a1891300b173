#include "doctest.h"
#include "hgrpd/error.hpp"
#include "hgrpd/gamma.hpp"
#include "hgrpd/group.hpp"
#include "hgrpd/group_action.hpp"
#include "oracles.hpp"

using namespace hgrpd;

namespace {

GammaAction on_bg(const FiniteGroup& g, std::vector<Elem> theta) {
  return GammaAction{build_bg(g), {0}, std::move(theta)};
}

// For groupoids with at most one morphism between any two objects the object
// involution determines the action.
GammaAction on_thin(const FiniteGroupoid& g, std::vector<ObjId> bar_obj) {
  std::vector<MorId> bar_mor(g.num_morphisms());
  for (MorId m = 0; m < g.num_morphisms(); ++m)
    bar_mor[m] = g.hom(bar_obj[g.src(m)], bar_obj[g.tgt(m)]).front();
  return GammaAction{g, std::move(bar_obj), std::move(bar_mor)};
}

// Translation by the element of order two on E(Z/2).
GammaAction translate_ez2() {
  auto a = left_multiplication(FiniteGroup::cyclic(2));
  auto g = build_action_groupoid(a);
  std::vector<MorId> bar_mor(4);
  for (Elem h = 0; h < 2; ++h)
    for (std::uint32_t x = 0; x < 2; ++x) bar_mor[action_morphism(a, h, x)] = action_morphism(a, h, 1 - x);
  return GammaAction{g, {1, 0}, bar_mor};
}

std::vector<GammaAction> corpus() {
  auto z3 = FiniteGroup::cyclic(3);
  auto z4 = FiniteGroup::cyclic(4);
  return {
      trivial_gamma_action(FiniteGroupoid::terminal()),
      set_as_groupoid(std::vector<std::uint32_t>{1, 0}),
      set_as_groupoid(std::vector<std::uint32_t>{0, 1}),
      trivial_gamma_action(build_bg(FiniteGroup::cyclic(2))),
      on_bg(z3, inversion_map(z3)),
      trivial_gamma_action(build_eg(FiniteGroup::cyclic(2))),
      translate_ez2(),
      on_thin(FiniteGroupoid::codiscrete(2), {1, 0}),
      on_bg(z4, inversion_map(z4)),
  };
}

void check_against_oracle(const GammaAction& a) {
  auto h = hfp(a);
  auto count = oracle::hfp_count(a.carrier, a.bar_obj, a.bar_mor);
  REQUIRE(h.objects.size() == count.objects.size());
  for (std::size_t i = 0; i < h.objects.size(); ++i) {
    CHECK(h.objects[i].base == count.objects[i].first);
    CHECK(h.objects[i].phi == count.objects[i].second);
  }
  for (ObjId i = 0; i < h.objects.size(); ++i)
    for (ObjId j = 0; j < h.objects.size(); ++j) {
      auto it = count.arrows.find({i, j});
      CHECK(h.groupoid.hom(i, j).size() == (it == count.arrows.end() ? 0 : it->second));
    }
  CHECK(validate_groupoid(h.groupoid).empty());
}

}  // namespace

TEST_CASE("gamma action validation") {
  for (const auto& a : corpus()) CHECK(validate_gamma_action(a).empty());
  auto s3 = FiniteGroup::symmetric(3);
  auto bad = on_bg(s3, inversion_map(s3));
  CHECK(has_violation(validate_gamma_action(bad), "composition"));
  auto z3 = FiniteGroup::cyclic(3);
  auto not_involutive = on_bg(z3, std::vector<Elem>{0, 2, 0});
  CHECK_FALSE(validate_gamma_action(not_involutive).empty());
}

TEST_CASE("fixed points of a set") {
  auto swap = hfp(set_as_groupoid(std::vector<std::uint32_t>{1, 0}));
  CHECK(swap.groupoid.num_objects() == 0);
  CHECK(is_fibration(iota(swap)));

  auto h = hfp(set_as_groupoid(std::vector<std::uint32_t>{1, 0, 2}, {"a", "b", "c"}));
  CHECK(h.groupoid.num_objects() == 1);
  CHECK(h.groupoid.num_morphisms() == 1);
  CHECK(h.objects[0].base == 2);

  auto all = hfp(set_as_groupoid(std::vector<std::uint32_t>{0, 1, 2}));
  CHECK(all.groupoid == FiniteGroupoid::discrete(3));
  CHECK(iota(all).obj_map == std::vector<ObjId>{0, 1, 2});
}

TEST_CASE("trivial action on BZ/2 and BZ/3") {
  auto h = hfp(trivial_gamma_action(build_bg(FiniteGroup::cyclic(2))));
  CHECK(h.groupoid.num_objects() == 2);
  CHECK(h.groupoid.num_components() == 2);
  CHECK(h.groupoid.hom(0, 0).size() == 2);
  CHECK(h.groupoid.hom(1, 1).size() == 2);
  CHECK(groupoid_cardinality(h.groupoid) == Rational(1));
  auto i = iota(h);
  CHECK(validate_functor(i).empty());
  CHECK(is_fibration(i));
  CHECK(i.obj_map == std::vector<ObjId>{0, 0});

  auto z3 = hfp(trivial_gamma_action(build_bg(FiniteGroup::cyclic(3))));
  CHECK(z3.groupoid.num_objects() == 1);
  CHECK(z3.objects[0].phi == 0);
  CHECK(z3.groupoid.hom(0, 0).size() == 3);
}

TEST_CASE("negation on BZ/4") {
  auto z4 = FiniteGroup::cyclic(4);
  auto h = hfp(on_bg(z4, inversion_map(z4)));
  CHECK(h.groupoid.num_objects() == 4);
  CHECK(h.groupoid.num_components() == 2);
  for (ObjId o = 0; o < 4; ++o) CHECK(h.groupoid.hom(o, o).size() == 2);
}

TEST_CASE("swap on X x X") {
  auto bz3 = build_bg(FiniteGroup::cyclic(3));
  auto h = hfp(swap_action(bz3));
  CHECK(h.groupoid.num_components() == 1);
  CHECK(h.groupoid.hom(0, 0).size() == 3);

  auto point = swap_comparison(FiniteGroupoid::terminal());
  CHECK(is_isomorphism(point.map));

  auto two = swap_comparison(FiniteGroupoid::discrete(2, {"a", "b"}));
  CHECK(two.weak_equivalence);
  CHECK(two.fixed_points.groupoid.num_components() == 2);

  auto bs3 = build_bg(FiniteGroup::symmetric(3));
  auto c = swap_comparison(bs3);
  CHECK(c.full);
  CHECK(c.faithful);
  CHECK(c.weak_equivalence);
  CHECK(validate_functor(c.map).empty());
  CHECK(groupoid_cardinality(c.fixed_points.groupoid) == Rational(1, 6));
  CHECK(oracle::weak_equivalence(c.map));

  for (const auto& a : corpus()) {
    auto s = swap_comparison(a.carrier);
    CHECK(s.weak_equivalence);
    CHECK(oracle::weak_equivalence(s.map));
    CHECK(groupoid_cardinality(s.fixed_points.groupoid) == groupoid_cardinality(a.carrier));
  }
}

TEST_CASE("hfp agrees with the definitional oracle and iota is a fibration") {
  for (const auto& a : corpus()) {
    check_against_oracle(a);
    auto h = hfp(a);
    CHECK(is_fibration(iota(h)));
    CHECK(oracle::fibration(iota(h)));
    check_against_oracle(swap_action(a.carrier));
  }
  auto s3 = FiniteGroup::symmetric(3);
  for (const auto& theta : involutive_automorphisms(s3)) check_against_oracle(on_bg(s3, theta));
  auto d4 = FiniteGroup::dihedral(4);
  for (const auto& theta : involutive_automorphisms(d4)) check_against_oracle(on_bg(d4, theta));
}

TEST_CASE("equivariance is checked with a witness") {
  auto t = trivial_gamma_action(build_eg(FiniteGroup::cyclic(2)));
  auto s = translate_ez2();
  EquivariantMap f{identity_functor(t.carrier), t, s};
  CHECK_FALSE(is_equivariant(f));
  try {
    hfp_map(f);
    FAIL("expected NotEquivariant");
  } catch (const NotEquivariant& e) {
    CHECK(e.on_object);
    CHECK(e.witness == 0);
  }
  EquivariantMap wrong{identity_functor(t.carrier), t, trivial_gamma_action(FiniteGroupoid::terminal())};
  CHECK_THROWS_AS(check_equivariant(wrong), InputError);
}

TEST_CASE("hfp_map of the identity is the identity") {
  for (const auto& a : corpus()) {
    auto m = hfp_map(EquivariantMap{identity_functor(a.carrier), a, a});
    CHECK(m == identity_functor(m.dom));
  }
}

TEST_CASE("E(Z/2) -> point induces an acyclic map on fixed points") {
  auto point = trivial_gamma_action(FiniteGroupoid::terminal());
  for (const auto& a : {trivial_gamma_action(build_eg(FiniteGroup::cyclic(2))), translate_ez2()}) {
    auto m = hfp_map(EquivariantMap{to_terminal(a.carrier), a, point});
    CHECK(validate_functor(m).empty());
    CHECK(is_fibration(m));
    CHECK(is_weak_equivalence(m));
  }
}

TEST_CASE("fibrations and weak equivalences are preserved, hfp_map is functorial") {
  auto acts = corpus();
  int fibrations = 0, equivalences = 0, composites = 0;
  for (const auto& a : acts)
    for (const auto& b : acts) {
      auto ha = hfp(a), hb = hfp(b);
      for (const auto& f : oracle::all_functors(a.carrier, b.carrier, 4000)) {
        EquivariantMap ef{f, a, b};
        if (!is_equivariant(ef)) continue;
        auto m = hfp_map(ef, ha, hb);
        REQUIRE(validate_functor(m).empty());
        CHECK(then(m, iota(hb)) == then(iota(ha), f));
        if (is_fibration(f)) {
          CHECK(is_fibration(m));
          CHECK(oracle::fibration(m));
          ++fibrations;
        }
        if (is_weak_equivalence(f)) {
          CHECK(is_weak_equivalence(m));
          CHECK(oracle::weak_equivalence(m));
          ++equivalences;
        }
        for (const auto& c : {acts[0], acts[3]}) {
          auto hc = hfp(c);
          for (const auto& g : oracle::all_functors(b.carrier, c.carrier, 8)) {
            EquivariantMap eg{g, b, c};
            if (!is_equivariant(eg)) continue;
            auto gf = hfp_map(EquivariantMap{then(f, g), a, c}, ha, hc);
            CHECK(gf == then(m, hfp_map(eg, hb, hc)));
            ++composites;
          }
        }
      }
    }
  CHECK(fibrations > 20);
  CHECK(equivalences > 10);
  CHECK(composites > 20);
}
