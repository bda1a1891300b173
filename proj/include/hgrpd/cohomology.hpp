#pragma once

#include <vector>

#include "hgrpd/gamma.hpp"
#include "hgrpd/group.hpp"
#include "hgrpd/groupoid.hpp"

namespace hgrpd {

/// Z/2 acting on a finite group through an involutive automorphism g -> ḡ.
struct GroupGammaAction {
  FiniteGroup group;
  std::vector<Elem> bar;
};

/// Empty iff bar is an involutive automorphism.
ValidationReport validate_group_gamma_action(const GroupGammaAction& a);

/// The cocycles σ with σσ̄ = 1, in increasing id order.
std::vector<Elem> z1(const GroupGammaAction& a);

/// One orbit of twisted conjugation g.σ = ḡσg⁻¹ on the cocycles.
struct CocycleClass {
  Elem representative;        ///< minimal id in the orbit
  std::vector<Elem> members;  ///< sorted
  Subgroup stabilizer;        ///< {g | ḡσ = σg} for σ = representative
};

/// Orbits ordered by representative.
std::vector<CocycleClass> h1(const GroupGammaAction& a);

/// The induced action on BG: one object, morphism g -> ḡ.
GammaAction bg_gamma_action(const GroupGammaAction& a);

/// The comparison ⊔ BK_σ -> (BG)^{hΓ}: component i goes to the fixed point
/// (*, σᵢ) and k ∈ K_σ to the arrow labelled k.
struct BgDecomposition {
  std::vector<CocycleClass> classes;
  HomotopyFixedPoints fixed_points;
  GroupoidMap map;
  bool weak_equivalence = false;
};

BgDecomposition bg_hfp_decomposition(const GroupGammaAction& a);

/// One isomorphism class of a groupoid: its minimal object and the
/// automorphism group of that object. Element i of the group is the
/// morphism morphisms[i]; the product "a times b" is "b then a".
struct SkeletonPiece {
  ObjId representative;
  FiniteGroup automorphisms;
  std::vector<MorId> morphisms;
};

struct Skeleton {
  std::vector<SkeletonPiece> pieces;
  GroupoidMap map;  ///< ⊔ B(Aut xᵢ) -> g
  bool weak_equivalence = false;
};

Skeleton skeletonize(const FiniteGroupoid& g);

}  // namespace hgrpd
