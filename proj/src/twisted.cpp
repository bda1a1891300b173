#include "hgrpd/twisted.hpp"

#include <algorithm>
#include <map>

#include "hgrpd/error.hpp"

namespace hgrpd {

ValidationReport validate_involutive_data(const InvolutiveGroupData& d) {
  ValidationReport report;
  const auto& g = d.group;
  if (d.theta.size() != g.order()) {
    report.push_back({"shape", "theta has " + std::to_string(d.theta.size()) + " entries for a group of order " +
                                   std::to_string(g.order())});
    return report;
  }
  for (auto x : d.theta)
    if (x >= g.order()) {
      report.push_back({"shape", "theta value out of range"});
      return report;
    }
  for (auto b : d.subgroup)
    if (b >= g.order()) {
      report.push_back({"shape", "subgroup element out of range"});
      return report;
    }
  for (Elem x = 0; x < g.order(); ++x)
    if (d.theta[d.theta[x]] != x) {
      report.push_back({"involutive", "theta is not involutive on " + g.label(x)});
      break;
    }
  if (!is_automorphism(g, d.theta)) report.push_back({"automorphism", "theta is not a group automorphism"});
  if (!is_subgroup(g, d.subgroup)) {
    report.push_back({"subgroup", "B is not a subgroup"});
    return report;
  }
  std::vector<bool> in(g.order(), false);
  for (auto b : d.subgroup) in[b] = true;
  for (auto b : d.subgroup)
    if (!in[d.theta[b]]) {
      report.push_back({"theta-stable", "theta moves " + g.label(b) + " out of B"});
      break;
    }
  return report;
}

Subgroup subgroup_of(const InvolutiveGroupData& d) {
  auto report = validate_involutive_data(d);
  if (!report.empty())
    throw InvalidStructure("involutive group data: " + report.front().axiom + ": " + report.front().detail);
  return make_subgroup(d.group, d.subgroup);
}

namespace {

// Everything the constructions below share: B, B × B and θ restricted to B.
struct Setting {
  const InvolutiveGroupData& d;
  Subgroup b;
  FiniteGroup bb;

  explicit Setting(const InvolutiveGroupData& data)
      : d(data), b(subgroup_of(data)), bb(FiniteGroup::direct_product(b.group, b.group)) {}

  std::size_t nb() const { return b.elements.size(); }
  Elem parent(Elem local) const { return b.elements[local]; }
  Elem local(Elem parent) const { return *b.local(parent); }
  Elem theta_local(Elem local) const { return this->local(d.theta[parent(local)]); }
  Elem pair(Elem b1, Elem b2) const { return static_cast<Elem>(b1 * nb() + b2); }
  Elem first(Elem p) const { return static_cast<Elem>(p / nb()); }
  Elem second(Elem p) const { return static_cast<Elem>(p % nb()); }

  Elem mul(Elem x, Elem y) const { return d.group.mul(x, y); }
  Elem mul(Elem x, Elem y, Elem z) const { return mul(mul(x, y), z); }
  Elem inv(Elem x) const { return d.group.inverse(x); }
  Elem theta(Elem x) const { return d.theta[x]; }
};

template <class T>
std::uint32_t position(const std::vector<T>& sorted, const T& value) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), value);
  if (it == sorted.end() || *it != value) throw InvalidStructure("element left its invariant set");
  return static_cast<std::uint32_t>(it - sorted.begin());
}

template <class F>
GroupAction tabulate(const FiniteGroup& group, std::size_t n, std::vector<std::string> labels, F act) {
  GroupAction a{group, n, std::vector<std::uint32_t>(group.order() * n), std::move(labels)};
  for (Elem g = 0; g < group.order(); ++g)
    for (std::uint32_t x = 0; x < n; ++x) a.table[g * n + x] = act(g, x);
  if (!validate_action(a).empty()) throw InvalidStructure("tabulated action violates the action axioms");
  return a;
}

TwistedCocycleSet cocycles(const Setting& s) {
  TwistedCocycleSet z;
  std::vector<std::string> labels;
  for (Elem g = 0; g < s.d.group.order(); ++g)
    if (s.mul(g, s.theta(g)) == s.d.group.identity()) {
      z.elements.push_back(g);
      labels.push_back(s.d.group.label(g));
    }
  z.action = tabulate(s.b.group, z.elements.size(), std::move(labels), [&](Elem b, std::uint32_t i) {
    auto bp = s.parent(b);
    return position(z.elements, s.mul(s.theta(bp), z.elements[i], s.inv(bp)));
  });
  return z;
}

XYIsomorphism build_xy(const Setting& s) {
  XYIsomorphism r;
  const auto& g = s.d.group;
  const auto e = g.identity();
  for (auto b1 : s.b.elements)
    for (auto b2 : s.b.elements)
      for (Elem x = 0; x < g.order(); ++x)
        if (s.mul(b1, x, s.inv(b2)) == s.theta(s.inv(x)) && s.mul(b1, s.theta(b2)) == e)
          r.x.push_back({b1, b2, x});
  for (auto b : s.b.elements)
    for (Elem x = 0; x < g.order(); ++x)
      if (s.mul(s.mul(b, x), s.theta(s.mul(b, x))) == e) r.y.push_back({b, x});

  auto label3 = [&](const std::array<Elem, 3>& t) {
    return "(" + g.label(t[0]) + "," + g.label(t[1]) + "," + g.label(t[2]) + ")";
  };
  auto label2 = [&](const std::array<Elem, 2>& t) { return "(" + g.label(t[0]) + "," + g.label(t[1]) + ")"; };
  std::vector<std::string> xl, yl;
  for (const auto& t : r.x) xl.push_back(label3(t));
  for (const auto& t : r.y) yl.push_back(label2(t));

  r.x_action = tabulate(s.bb, r.x.size(), xl, [&](Elem p, std::uint32_t i) {
    auto be1 = s.parent(s.first(p)), be2 = s.parent(s.second(p));
    auto [b1, b2, x] = r.x[i];
    return position(r.x, std::array<Elem, 3>{s.mul(s.theta(be2), b1, s.inv(be1)),
                                              s.mul(s.theta(be1), b2, s.inv(be2)), s.mul(be1, x, s.inv(be2))});
  });
  r.y_action = tabulate(s.bb, r.y.size(), yl, [&](Elem p, std::uint32_t i) {
    auto be1 = s.parent(s.first(p)), be2 = s.parent(s.second(p));
    auto [b, x] = r.y[i];
    return position(r.y, std::array<Elem, 2>{s.mul(s.theta(be2), b, s.inv(be1)), s.mul(be1, x, s.inv(be2))});
  });

  // The maps are computed without assuming they land in X or Y; a miss is
  // recorded as kNone and makes the verdicts false.
  auto find_y = [&](const std::array<Elem, 2>& t) -> std::uint32_t {
    auto it = std::lower_bound(r.y.begin(), r.y.end(), t);
    return it != r.y.end() && *it == t ? static_cast<std::uint32_t>(it - r.y.begin()) : kNone;
  };
  auto find_x = [&](const std::array<Elem, 3>& t) -> std::uint32_t {
    auto it = std::lower_bound(r.x.begin(), r.x.end(), t);
    return it != r.x.end() && *it == t ? static_cast<std::uint32_t>(it - r.x.begin()) : kNone;
  };
  for (const auto& [b1, b2, x] : r.x) r.forward.push_back(find_y({b1, x}));
  for (const auto& [b, x] : r.y) r.inverse.push_back(find_x({b, s.theta(s.inv(b)), x}));

  r.mutually_inverse = r.x.size() == r.y.size();
  for (std::uint32_t i = 0; i < r.x.size() && r.mutually_inverse; ++i)
    r.mutually_inverse = r.forward[i] != kNone && r.inverse[r.forward[i]] == i;
  for (std::uint32_t j = 0; j < r.y.size() && r.mutually_inverse; ++j)
    r.mutually_inverse = r.inverse[j] != kNone && r.forward[r.inverse[j]] == j;

  r.equivariant = r.mutually_inverse;
  for (Elem p = 0; p < s.bb.order() && r.equivariant; ++p)
    for (std::uint32_t i = 0; i < r.x.size() && r.equivariant; ++i)
      r.equivariant = r.forward[r.x_action.act(p, i)] == r.y_action.act(p, r.forward[i]);
  return r;
}

}  // namespace

GroupAction double_coset_action(const InvolutiveGroupData& d) {
  Setting s(d);
  return tabulate(s.bb, d.group.order(), d.group.labels(), [&](Elem p, std::uint32_t x) {
    return s.mul(s.parent(s.first(p)), x, s.inv(s.parent(s.second(p))));
  });
}

GammaAction build_double_coset_groupoid(const InvolutiveGroupData& d) {
  Setting s(d);
  auto a = double_coset_action(d);
  GammaAction out{build_action_groupoid(a), {}, {}};
  for (Elem x = 0; x < d.group.order(); ++x) out.bar_obj.push_back(s.theta(s.inv(x)));
  out.bar_mor.resize(out.carrier.num_morphisms());
  for (Elem p = 0; p < s.bb.order(); ++p) {
    auto bar_p = s.pair(s.theta_local(s.second(p)), s.theta_local(s.first(p)));
    for (Elem x = 0; x < d.group.order(); ++x)
      out.bar_mor[action_morphism(a, p, x)] = action_morphism(a, bar_p, out.bar_obj[x]);
  }
  return out;
}

TwistedCocycleSet z1_theta(const InvolutiveGroupData& d) { return cocycles(Setting(d)); }

std::vector<TwistedOrbit> twisted_orbits(const InvolutiveGroupData& d) {
  Setting s(d);
  auto z = cocycles(s);
  std::vector<bool> seen(z.elements.size(), false);
  std::vector<TwistedOrbit> out;
  for (std::uint32_t i = 0; i < z.elements.size(); ++i) {
    if (seen[i]) continue;
    std::vector<Elem> members, stabilizer;
    for (Elem b = 0; b < s.nb(); ++b) {
      auto j = z.action.act(b, i);
      if (!seen[j]) {
        seen[j] = true;
        members.push_back(z.elements[j]);
      }
      if (j == i) stabilizer.push_back(s.parent(b));
    }
    std::sort(members.begin(), members.end());
    out.push_back(TwistedOrbit{z.elements[i], std::move(members), make_subgroup(d.group, std::move(stabilizer))});
  }
  return out;
}

XYIsomorphism xy_isomorphism(const InvolutiveGroupData& d) { return build_xy(Setting(d)); }

ParameterFibration parameter_fibration(const InvolutiveGroupData& d) {
  Setting s(d);
  auto coset = double_coset_action(d);
  ParameterFibration r{hfp(build_double_coset_groupoid(d)), build_xy(s), cocycles(s), {}, {}, {}, {}, {}, {},
                       false, false};
  const auto& h = r.fixed_points;
  const auto n = d.group.order();

  // An object (g, φ) of the fixed points has φ = ((b₁, b₂), g) : g -> ḡ, which
  // is the point (b₁, b₂, g) of X; the arrow labelled ((β₁, β₂), g) is the
  // morphism ((β₁, β₂), (b₁, b₂, g)) of E_{B×B}X.
  auto ex = build_action_groupoid(r.xy.x_action);
  r.to_x = GroupoidMap{h.groupoid, ex, {}, std::vector<MorId>(h.groupoid.num_morphisms())};
  for (const auto& o : h.objects) {
    auto p = o.phi / n;
    r.to_x.obj_map.push_back(position(r.xy.x, std::array<Elem, 3>{s.parent(s.first(p)), s.parent(s.second(p)), o.base}));
  }
  for (MorId m = 0; m < h.groupoid.num_morphisms(); ++m)
    r.to_x.mor_map[m] = action_morphism(r.xy.x_action, h.underlying[m] / n, r.to_x.obj_map[h.groupoid.src(m)]);
  if (!validate_functor(r.to_x).empty() || !is_isomorphism(r.to_x))
    throw InvalidStructure("fixed points do not match E_{BxB}X");

  auto ey = build_action_groupoid(r.xy.y_action);
  r.x_to_y = action_groupoid_map(r.xy.x_action, ex, r.xy.y_action, ey, identity_map(s.bb), r.xy.forward);
  if (!is_isomorphism(r.x_to_y)) throw InvalidStructure("E_{BxB}X -> E_{BxB}Y is not an isomorphism");

  std::vector<Elem> project(s.bb.order());
  for (Elem p = 0; p < s.bb.order(); ++p) project[p] = s.second(p);
  std::vector<std::uint32_t> multiply;
  for (const auto& [b, x] : r.xy.y) multiply.push_back(position(r.z.elements, s.mul(b, x)));
  r.y_to_z = action_groupoid_map(r.xy.y_action, ey, r.z.action, build_action_groupoid(r.z.action), project,
                                 multiply);

  std::vector<Elem> left, right;
  for (Elem b = 0; b < s.nb(); ++b) {
    left.push_back(s.pair(b, s.local(d.group.identity())));
    right.push_back(s.pair(s.local(d.group.identity()), b));
  }
  r.left_freeness_witness = freeness_witness(r.xy.y_action, left);
  r.right_freeness_witness = freeness_witness(r.xy.y_action, right);

  r.map = then(then(r.to_x, r.x_to_y), r.y_to_z);
  r.fibration = is_fibration(r.map);
  r.weak_equivalence = is_weak_equivalence(r.map);
  return r;
}

}  // namespace hgrpd
