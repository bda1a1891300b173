#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "hgrpd/gamma.hpp"
#include "hgrpd/group.hpp"
#include "hgrpd/group_action.hpp"

namespace hgrpd {

/// A group G with an involutive automorphism θ and a θ-stable subgroup B.
struct InvolutiveGroupData {
  FiniteGroup group;
  std::vector<Elem> theta;
  std::vector<Elem> subgroup;  ///< elements of B, any order
};

/// Empty iff θ is an involutive automorphism and B is a θ-stable subgroup.
ValidationReport validate_involutive_data(const InvolutiveGroupData& d);

/// B as a group in its own right; throws InvalidStructure when d is invalid.
Subgroup subgroup_of(const InvolutiveGroupData& d);

/// B × B acting on G by (b₁, b₂).g = b₁ g b₂⁻¹. The acting group is
/// direct_product(B, B) over B's local ids.
GroupAction double_coset_action(const InvolutiveGroupData& d);

/// E_{B×B}G with ḡ = θ(g⁻¹) on objects and ((b₁, b₂), g) -> ((θb₂, θb₁), ḡ)
/// on morphisms.
GammaAction build_double_coset_groupoid(const InvolutiveGroupData& d);

/// Z = {g | g θ(g) = 1} with B acting by b.g = θ(b) g b⁻¹. The action is on
/// positions in `elements`.
struct TwistedCocycleSet {
  std::vector<Elem> elements;  ///< sorted
  GroupAction action;
};

TwistedCocycleSet z1_theta(const InvolutiveGroupData& d);

struct TwistedOrbit {
  Elem representative;        ///< minimal element of G in the orbit
  std::vector<Elem> members;  ///< sorted
  Subgroup stabilizer;        ///< as a subgroup of G, contained in B
};

/// Orbits ordered by representative.
std::vector<TwistedOrbit> twisted_orbits(const InvolutiveGroupData& d);

/// X = {(b₁, b₂, g) | b₁ g b₂⁻¹ = θ(g⁻¹), b₁ θ(b₂) = 1} and
/// Y = {(b, g) | bg θ(bg) = 1}, both as B × B-sets, with the bijection
/// (b₁, b₂, g) -> (b₁, g) and its inverse (b, g) -> (b, θ(b⁻¹), g).
/// Entries are elements of G, sorted.
struct XYIsomorphism {
  std::vector<std::array<Elem, 3>> x;
  std::vector<std::array<Elem, 2>> y;
  GroupAction x_action, y_action;
  std::vector<std::uint32_t> forward, inverse;
  bool mutually_inverse = false;
  bool equivariant = false;
};

XYIsomorphism xy_isomorphism(const InvolutiveGroupData& d);

/// (E_{B×B}G)^{hΓ} -> E_{B×B}X -> E_{B×B}Y -> E_B Z. The last map is induced
/// by (β₁, β₂) -> β₂ and (b, g) -> bg; its kernel B × 1 acts freely on Y, as
/// does 1 × B.
struct ParameterFibration {
  HomotopyFixedPoints fixed_points;
  XYIsomorphism xy;
  TwistedCocycleSet z;
  GroupoidMap to_x, x_to_y, y_to_z;
  GroupoidMap map;  ///< the composite
  std::optional<std::pair<std::uint32_t, Elem>> left_freeness_witness, right_freeness_witness;
  bool fibration = false;
  bool weak_equivalence = false;

  bool acyclic() const { return fibration && weak_equivalence; }
};

/// Throws InvalidStructure when an intermediate map fails to be a functor or
/// an isomorphism, which would indicate a bug rather than bad input.
ParameterFibration parameter_fibration(const InvolutiveGroupData& d);

}  // namespace hgrpd
