#include "hgrpd/fixtures.hpp"

#include <charconv>

#include "hgrpd/error.hpp"

namespace hgrpd {

FiniteGroup catalog_group(std::string_view name) {
  if (name == "trivial") return FiniteGroup::trivial();
  if (name == "V4") return FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  if (name == "GL2F2") return FiniteGroup::gl2_f2();
  if (name.size() >= 2) {
    std::size_t n = 0;
    auto digits = name.substr(1);
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc() && end == digits.data() + digits.size()) {
      if (name[0] == 'Z' && n >= 1 && n <= 64) return FiniteGroup::cyclic(n);
      if (name[0] == 'D' && n >= 3 && n <= 12) return FiniteGroup::dihedral(n);
      if (name[0] == 'S' && n >= 1 && n <= 5) return FiniteGroup::symmetric(n);
    }
  }
  throw InputError("unknown group '" + std::string(name) +
                   "'; expected trivial, Z<n>, D<n>, S<n>, V4 or GL2F2");
}

Elem noncentral_involution(const FiniteGroup& g) {
  for (Elem x = 0; x < g.order(); ++x)
    if (x != g.identity() && g.mul(x, x) == g.identity() && conjugation_map(g, x) != identity_map(g)) return x;
  throw InputError("group has no noncentral element of order two");
}

std::vector<NamedGroupoid> groupoid_corpus() {
  auto s3 = FiniteGroup::symmetric(3);
  std::vector<FiniteGroupoid> pair{build_bg(FiniteGroup::cyclic(2)), FiniteGroupoid::codiscrete(2)};
  return {
      {"empty", FiniteGroupoid()},
      {"point", FiniteGroupoid::terminal()},
      {"discrete2", FiniteGroupoid::discrete(2)},
      {"codiscrete2", FiniteGroupoid::codiscrete(2)},
      {"codiscrete3", FiniteGroupoid::codiscrete(3)},
      {"BZ2", build_bg(FiniteGroup::cyclic(2))},
      {"BZ3", build_bg(FiniteGroup::cyclic(3))},
      {"BS3", build_bg(s3)},
      {"EZ2", build_eg(FiniteGroup::cyclic(2))},
      {"E_S3(S3/<(1 2)>)",
       build_action_groupoid(coset_action(s3, std::vector<Elem>{s3.identity(), *s3.find("(1 2)")}))},
      {"BZ2+codiscrete2", disjoint_union(pair)},
  };
}

std::vector<NamedGroupInvolution> group_involution_corpus() {
  auto z3 = FiniteGroup::cyclic(3), z4 = FiniteGroup::cyclic(4), z6 = FiniteGroup::cyclic(6);
  auto v4 = catalog_group("V4");
  auto s3 = FiniteGroup::symmetric(3), d4 = FiniteGroup::dihedral(4), s4 = FiniteGroup::symmetric(4);
  // (a, b) -> (b, a) on Z/2 x Z/2, element (a, b) having id 2a + b
  std::vector<Elem> swap{0, 2, 1, 3};
  return {
      {"trivial", {FiniteGroup::trivial(), {0}}},
      {"Z2-trivial", {FiniteGroup::cyclic(2), {0, 1}}},
      {"Z3-trivial", {z3, identity_map(z3)}},
      {"Z3-negation", {z3, inversion_map(z3)}},
      {"Z4-trivial", {z4, identity_map(z4)}},
      {"Z4-negation", {z4, inversion_map(z4)}},
      {"V4-swap", {v4, swap}},
      {"S3-trivial", {s3, identity_map(s3)}},
      {"S3-conj12", {s3, conjugation_map(s3, *s3.find("(1 2)"))}},
      {"D4-trivial", {d4, identity_map(d4)}},
      {"D4-reflection", {d4, conjugation_map(d4, noncentral_involution(d4))}},
      {"Z6-negation", {z6, inversion_map(z6)}},
      {"S4-conj12", {s4, conjugation_map(s4, *s4.find("(1 2)"))}},
  };
}

std::vector<NamedInvolutiveData> involutive_data_corpus() {
  auto z2 = FiniteGroup::cyclic(2), z4 = FiniteGroup::cyclic(4);
  auto s3 = FiniteGroup::symmetric(3), d4 = FiniteGroup::dihedral(4), gl = FiniteGroup::gl2_f2();
  auto t12 = *s3.find("(1 2)");
  auto r = noncentral_involution(d4);
  auto upper = *gl.find("[11;01]");
  std::vector<Elem> all4{0, 1, 2, 3};
  std::vector<Elem> all_s3, all_d4;
  for (Elem x = 0; x < 6; ++x) all_s3.push_back(x);
  for (Elem x = 0; x < 8; ++x) all_d4.push_back(x);
  return {
      {"trivial", {FiniteGroup::trivial(), {0}, {0}}},
      {"Z2-id-G", {z2, {0, 1}, {0, 1}}},
      {"Z2-id-1", {z2, {0, 1}, {0}}},
      {"Z4-id-2Z4", {z4, identity_map(z4), {0, 2}}},
      {"Z4-neg-2Z4", {z4, inversion_map(z4), {0, 2}}},
      {"Z4-neg-G", {z4, inversion_map(z4), all4}},
      {"S3-id-<(1 2)>", {s3, identity_map(s3), {s3.identity(), t12}}},
      {"S3-conj12-<(1 2)>", {s3, conjugation_map(s3, t12), {s3.identity(), t12}}},
      {"S3-conj12-G", {s3, conjugation_map(s3, t12), all_s3}},
      {"D4-id-G", {d4, identity_map(d4), all_d4}},
      {"D4-conj-<r>", {d4, conjugation_map(d4, r), {d4.identity(), r}}},
      {"GL2F2-id-upper", {gl, identity_map(gl), {gl.identity(), upper}}},
  };
}

}  // namespace hgrpd

namespace hgrpd {

NamedPresheaf sierpinski_presheaf() {
  auto site = FiniteSite::sierpinski();
  auto z4 = FiniteGroup::cyclic(4), z2 = FiniteGroup::cyclic(2);
  auto b4 = build_bg(z4), b2 = build_bg(z2), pt = FiniteGroupoid::terminal();
  // opens in order: ∅, {a}, {a,b}
  std::vector<FiniteGroupoid> sections{pt, b2, b4};
  GroupoidMap reduce{b4, b2, {0}, {0, 1, 0, 1}};
  auto x = make_presheaf(site, sections, [&](std::size_t u, std::size_t v) {
    if (u == v) return identity_functor(sections[u]);
    if (v == 0) return to_terminal(sections[u]);
    return reduce;
  });
  PresheafGammaAction a{{trivial_gamma_action(pt), GammaAction{b2, {0}, inversion_map(z2)},
                         GammaAction{b4, {0}, inversion_map(z4)}}};
  return {"sierpinski-Z4-Z2-negation", std::move(x), std::move(a)};
}

std::vector<NamedPresheaf> presheaf_corpus() {
  std::vector<NamedPresheaf> out;
  auto sierpinski = FiniteSite::sierpinski();
  auto bz2 = build_bg(FiniteGroup::cyclic(2));
  auto constant = constant_presheaf(sierpinski, bz2);
  out.push_back({"constant-BZ2-trivial", constant, trivial_presheaf_action(constant)});
  out.push_back(sierpinski_presheaf());

  auto two = FiniteSite::discrete(2);
  auto sets = discrete_presheaf(two, {1, 1, 1, 2}, [](std::size_t u, std::size_t v) {
    return u == 3 && v == 3 ? std::vector<std::uint32_t>{0, 1} : std::vector<std::uint32_t>(u == 3 ? 2 : 1, 0);
  });
  PresheafGammaAction exchange;
  for (std::size_t u = 0; u < 4; ++u)
    exchange.sections.push_back(u == 3 ? GammaAction{sets.sections[u], {1, 0}, {1, 0}}
                                       : trivial_gamma_action(sets.sections[u]));
  out.push_back({"discrete-exchange-on-top", sets, exchange});

  std::pair<std::uint32_t, std::uint32_t> chain[] = {{0, 1}, {1, 2}};
  auto line = FiniteSite::from_preorder(3, chain);
  auto z3 = constant_group_presheaf(line, FiniteGroup::cyclic(3));
  for (auto [name, x] : {std::pair{"constant-EZ3", build_presheaf_action_groupoid(translation_action_presheaf(z3))},
                         std::pair{"constant-BZ3", build_presheaf_action_groupoid(point_action_presheaf(z3))}})
    out.push_back({name, x, trivial_presheaf_action(x)});
  return out;
}

std::vector<NamedPresheafMap> local_not_sectionwise_corpus() {
  std::vector<NamedPresheafMap> out;
  auto two = FiniteSite::discrete(2);
  auto pq = FiniteGroupoid::discrete(2, {"p", "q"});
  std::vector<FiniteGroupoid> sections{FiniteGroupoid::terminal(), FiniteGroupoid::terminal(),
                                       FiniteGroupoid::terminal(), pq};
  auto x = make_presheaf(two, sections, [&](std::size_t u, std::size_t v) {
    return u == v ? identity_functor(sections[u]) : to_terminal(sections[u]);
  });
  auto f = to_terminal(x);
  PresheafGammaAction exchange;
  for (std::size_t u = 0; u < 4; ++u)
    exchange.sections.push_back(u == 3 ? GammaAction{pq, {1, 0}, {1, 0}} : trivial_gamma_action(sections[u]));
  out.push_back({"discrete-two-points-to-point", f, exchange, trivial_presheaf_action(f.cod)});

  auto sierpinski = FiniteSite::sierpinski();
  auto bz2 = build_bg(FiniteGroup::cyclic(2));
  std::vector<FiniteGroupoid> xs{pq, bz2, bz2}, ys{FiniteGroupoid::terminal(), bz2, bz2};
  auto restrict_to = [](const std::vector<FiniteGroupoid>& s) {
    return [s](std::size_t u, std::size_t v) {
      if (u == v) return identity_functor(s[u]);
      if (v != 0) return identity_functor(s[u]);
      return GroupoidMap{s[u], s[0], std::vector<ObjId>(s[u].num_objects(), 0),
                         std::vector<MorId>(s[u].num_morphisms(), s[0].identity(0))};
    };
  };
  auto dom = make_presheaf(sierpinski, xs, restrict_to(xs));
  auto cod = make_presheaf(sierpinski, ys, restrict_to(ys));
  PresheafMap g{dom, cod, {to_terminal(pq), identity_functor(bz2), identity_functor(bz2)}};
  out.push_back({"sierpinski-differs-over-empty", g, trivial_presheaf_action(dom), trivial_presheaf_action(cod)});
  return out;
}

}  // namespace hgrpd
