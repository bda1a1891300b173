#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hgrpd/group_action.hpp"
#include "hgrpd/groupoid.hpp"

namespace hgrpd {

/// An action of Z/2 on a groupoid: an involutive functor x -> x̄, α -> ᾱ.
struct GammaAction {
  FiniteGroupoid carrier;
  std::vector<ObjId> bar_obj;
  std::vector<MorId> bar_mor;

  friend bool operator==(const GammaAction&, const GammaAction&) = default;
};

/// Empty iff the bar maps are involutive and commute with src, tgt,
/// identities, composition and inverses.
ValidationReport validate_gamma_action(const GammaAction& a);

GammaAction trivial_gamma_action(const FiniteGroupoid& g);
/// A set with an involution, viewed as a discrete groupoid.
GammaAction set_as_groupoid(std::span<const std::uint32_t> involution,
                            std::vector<std::string> labels = {});
/// (a, b) -> (b, a) on product(x, x).
GammaAction swap_action(const FiniteGroupoid& x);

/// The action on an action groupoid induced by an automorphism θ of the group
/// and an involution s of the set with s(g.x) = θ(g).s(x): x -> s(x),
/// (g, x) -> (θ g, s x). Throws NotEquivariant otherwise.
GammaAction induced_gamma_action(const GroupAction& a, std::span<const Elem> theta,
                                 std::span<const std::uint32_t> involution);

GammaAction coproduct_action(std::span<const GammaAction> parts);
GammaAction product_action(const GammaAction& a, const GammaAction& b);
/// The action carried along an isomorphism onto iso.cod.
GammaAction transport(const GammaAction& a, const GroupoidMap& iso);
/// The action on f.cod making f equivariant, for f surjective on objects and
/// morphisms. Throws NotEquivariant when no such action exists.
GammaAction pushforward(const GammaAction& a, const GroupoidMap& f);

/// The action restricted along an injective map whose image is stable under
/// bar. Throws NotEquivariant when the image is not stable.
GammaAction restrict_action(const GammaAction& a, const GroupoidMap& inclusion);

/// An object (x, φ) of the homotopy fixed points: φ : x -> x̄ with φ̄ = φ⁻¹.
struct HfpObject {
  ObjId base;
  MorId phi;
  friend auto operator<=>(const HfpObject&, const HfpObject&) = default;
};

/// The groupoid X^{hΓ}. Its objects are ordered by (base, phi). For each
/// object o = (x, φ) and each α out of x there is exactly one arrow out of o,
/// namely the one to (x₁, ᾱ φ α⁻¹); its id is arrow(o, α).
struct HomotopyFixedPoints {
  GammaAction action;
  FiniteGroupoid groupoid;
  std::vector<HfpObject> objects;
  std::vector<MorId> underlying;  ///< arrow -> the carrier morphism α it is labelled by
  std::vector<MorId> arrows_begin;

  std::optional<ObjId> find(HfpObject o) const;
  MorId arrow(ObjId source, MorId alpha) const;
};

HomotopyFixedPoints hfp(const GammaAction& a);

/// (x, φ) -> x; an arrow goes to the carrier morphism it is labelled by.
GroupoidMap iota(const HomotopyFixedPoints& h);

/// A functor together with actions on its domain and codomain.
struct EquivariantMap {
  GroupoidMap map;
  GammaAction dom_action, cod_action;
};

/// Throws NotEquivariant with a witness when f does not commute with bar, and
/// InputError when the actions do not sit on f's domain and codomain.
void check_equivariant(const EquivariantMap& f);
bool is_equivariant(const EquivariantMap& f);

/// (x, φ) -> (f x, f φ), arrows labelled α -> arrows labelled f α.
GroupoidMap hfp_map(const EquivariantMap& f);
GroupoidMap hfp_map(const EquivariantMap& f, const HomotopyFixedPoints& dom,
                    const HomotopyFixedPoints& cod);

/// The comparison X -> (X × X)^{hΓ}, x -> ((x, x), (id, id)).
struct SwapComparison {
  HomotopyFixedPoints fixed_points;
  GroupoidMap map;
  bool full = false;
  bool faithful = false;
  bool weak_equivalence = false;
};

SwapComparison swap_comparison(const FiniteGroupoid& x);

}  // namespace hgrpd
