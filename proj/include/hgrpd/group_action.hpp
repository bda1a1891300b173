#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hgrpd/group.hpp"
#include "hgrpd/groupoid.hpp"

namespace hgrpd {

/// A left action of a finite group on {0..carrier_size-1}.
struct GroupAction {
  FiniteGroup group = FiniteGroup::trivial();
  std::size_t carrier_size = 0;
  std::vector<std::uint32_t> table;  ///< act(g, x) = table[g * carrier_size + x]
  std::vector<std::string> carrier_labels;

  std::uint32_t act(Elem g, std::uint32_t x) const { return table[g * carrier_size + x]; }
};

/// Empty iff act(e, x) = x and act(g, act(h, x)) = act(gh, x).
ValidationReport validate_action(const GroupAction& a);

GroupAction left_multiplication(const FiniteGroup& g);
GroupAction trivial_action(const FiniteGroup& g, std::size_t carrier_size = 1,
                           std::vector<std::string> labels = {});
/// G acting on its left cosets gH; each coset is labelled by its minimal element.
GroupAction coset_action(const FiniteGroup& g, std::span<const Elem> subgroup);

/// Element g -> the index of the coset gH in coset_action(g, subgroup).
std::vector<std::uint32_t> coset_index(const FiniteGroup& g, std::span<const Elem> subgroup);

/// The action groupoid: objects are carrier points, morphism (g, x) : x -> g.x
/// has id g * carrier_size + x, and "(g, x) then (h, g.x)" is (hg, x).
FiniteGroupoid build_action_groupoid(const GroupAction& a);
/// G acting on itself by left multiplication.
FiniteGroupoid build_eg(const FiniteGroup& g);
/// G acting on a point; morphism ids are element ids.
FiniteGroupoid build_bg(const FiniteGroup& g);

inline MorId action_morphism(const GroupAction& a, Elem g, std::uint32_t x) {
  return static_cast<MorId>(g * a.carrier_size + x);
}

/// The functor between action groupoids induced by a group homomorphism and a
/// compatible map of carriers: (g, x) -> (hom(g), set_map(x)). Throws
/// NotEquivariant when set_map(g.x) != hom(g).set_map(x).
GroupoidMap action_groupoid_map(const GroupAction& a, const FiniteGroupoid& a_groupoid,
                                const GroupAction& b, const FiniteGroupoid& b_groupoid,
                                std::span<const Elem> hom, std::span<const std::uint32_t> set_map);
GroupoidMap action_groupoid_map(const GroupAction& a, const GroupAction& b,
                                std::span<const Elem> hom, std::span<const std::uint32_t> set_map);

/// (x, n) with n != e fixing x, or nullopt when the subgroup acts freely.
std::optional<std::pair<std::uint32_t, Elem>> freeness_witness(const GroupAction& a,
                                                                std::span<const Elem> subgroup);

/// The canonical map E_G X -> E_{G/N}(X/N).
struct QuotientComparison {
  QuotientGroup quotient;
  GroupAction quotient_action;   ///< G/N on the N-orbits
  std::vector<std::uint32_t> orbit_of;  ///< carrier point -> orbit id
  GroupoidMap map;
  bool fibration = false;
  bool weak_equivalence = false;

  bool acyclic() const { return fibration && weak_equivalence; }
};

/// The same map for any normal subgroup, free or not. Throws NotNormal.
QuotientComparison quotient_map(const GroupAction& a, std::span<const Elem> normal);
/// Throws NotNormal or NotFree with a witness. Orbits and cosets are
/// represented by their minimal ids.
QuotientComparison quotient_comparison(const GroupAction& a, std::span<const Elem> normal);

}  // namespace hgrpd
