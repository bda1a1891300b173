#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hgrpd/colimit.hpp"
#include "hgrpd/gamma.hpp"
#include "hgrpd/group.hpp"
#include "hgrpd/group_action.hpp"
#include "hgrpd/twisted.hpp"

namespace hgrpd {

/// The opens of a topology on points 0..num_points-1, each a bitmask of
/// points. Opens are kept sorted by size, then by mask, so the empty set
/// comes first and the whole space last.
struct FiniteSite {
  std::size_t num_points = 0;
  std::vector<std::uint32_t> opens;
  std::vector<std::string> point_labels;

  std::size_t num_opens() const { return opens.size(); }
  /// opens[v] ⊆ opens[u]
  bool contains(std::size_t u, std::size_t v) const { return (opens[v] & ~opens[u]) == 0; }
  std::optional<std::size_t> find(std::uint32_t mask) const;
  /// The intersection of the opens containing t. Throws InvalidStructure when
  /// it is not open.
  std::size_t minimal_open(std::uint32_t t) const;
  /// Opens containing t, largest first.
  std::vector<std::size_t> neighbourhoods(std::uint32_t t) const;
  std::string open_label(std::size_t u) const;

  /// Sorts the opens; does not validate.
  static FiniteSite from_opens(std::size_t num_points, std::vector<std::uint32_t> opens,
                               std::vector<std::string> point_labels = {});
  /// The topology in which each pair (s, t) puts s in every open containing t.
  static FiniteSite from_preorder(std::size_t num_points, std::span<const std::pair<std::uint32_t, std::uint32_t>> pairs,
                                  std::vector<std::string> point_labels = {});
  static FiniteSite discrete(std::size_t num_points);
  /// Opens ∅ ⊂ {a} ⊂ {a, b}.
  static FiniteSite sierpinski();
};

/// Empty iff the opens form a topology: ∅ and the whole space are open,
/// opens are closed under ∩ and ∪, and no open is listed twice.
ValidationReport validate_site(const FiniteSite& s);

/// X(U) for every open and a restriction X(U) -> X(V) for every V ⊆ U.
struct GroupoidPresheaf {
  FiniteSite site;
  std::vector<FiniteGroupoid> sections;
  std::vector<GroupoidMap> restrictions;  ///< u * num_opens + v; used only when V ⊆ U

  const GroupoidMap& restriction(std::size_t u, std::size_t v) const {
    return restrictions[u * site.num_opens() + v];
  }
};

/// Calls restrict(u, v) for every pair with opens[v] ⊆ opens[u], u = v included.
GroupoidPresheaf make_presheaf(const FiniteSite& site, std::vector<FiniteGroupoid> sections,
                               const std::function<GroupoidMap(std::size_t u, std::size_t v)>& restrict);
GroupoidPresheaf constant_presheaf(const FiniteSite& site, const FiniteGroupoid& g);

/// Empty iff the site is valid, every restriction is a functor between the
/// right sections, and restrictions compose strictly.
ValidationReport validate_presheaf(const GroupoidPresheaf& x);

/// An action on every section; restrictions must be equivariant.
struct PresheafGammaAction {
  std::vector<GammaAction> sections;
};

ValidationReport validate_presheaf_action(const GroupoidPresheaf& x, const PresheafGammaAction& a);
PresheafGammaAction trivial_presheaf_action(const GroupoidPresheaf& x);

/// A presheaf of sets, as discrete groupoids with sizes[u] points over U.
GroupoidPresheaf discrete_presheaf(const FiniteSite& site, const std::vector<std::size_t>& sizes,
                                   const std::function<std::vector<std::uint32_t>(std::size_t u, std::size_t v)>& restrict);

/// Components f_U : X(U) -> Y(U).
struct PresheafMap {
  GroupoidPresheaf dom, cod;
  std::vector<GroupoidMap> components;
};

/// Empty iff every component is a functor X(U) -> Y(U) and every naturality
/// square commutes on the nose.
ValidationReport validate_presheaf_map(const PresheafMap& f);
PresheafMap identity_presheaf_map(const GroupoidPresheaf& x);
PresheafMap to_terminal(const GroupoidPresheaf& x);
/// Y(U) = the codomain of f_U, with restrictions forced by naturality. The
/// f_U must be surjective on objects and morphisms. Throws InvalidStructure
/// when the forced restrictions are not well defined.
PresheafMap image_presheaf(const GroupoidPresheaf& x, std::vector<GroupoidMap> components);

bool is_sectionwise_weq(const PresheafMap& f);
bool is_sectionwise_fib(const PresheafMap& f);
bool is_local_weq(const PresheafMap& f);
bool is_local_fib(const PresheafMap& f);

/// The diagram of sections over the opens containing t, arrows U -> V for V ⊆ U.
struct Neighbourhoods {
  std::vector<std::size_t> opens;  ///< index object i is opens[i]
  GroupoidDiagram diagram;
};

Neighbourhoods neighbourhood_diagram(const GroupoidPresheaf& x, std::uint32_t t);
GammaDiagram neighbourhood_diagram(const GroupoidPresheaf& x, const PresheafGammaAction& a, std::uint32_t t);

/// The stalk as a filtered colimit, and whether the leg from X(U_t) is an
/// isomorphism, which it must be since U_t is the smallest neighbourhood.
struct StalkComputation {
  std::uint32_t point = 0;
  std::size_t minimal_open = 0;
  Neighbourhoods neighbourhoods;
  Colimit colimit;
  bool matches_minimal_open = false;
};

StalkComputation stalk_computation(const GroupoidPresheaf& x, std::uint32_t t);
FiniteGroupoid stalk(const GroupoidPresheaf& x, std::uint32_t t);
/// The induced action on the stalk.
GammaAction stalk_action(const GroupoidPresheaf& x, const PresheafGammaAction& a, std::uint32_t t);
/// f_t : X_t -> Y_t, through colimit_map.
GroupoidMap stalk_map(const PresheafMap& f, std::uint32_t t);

/// Sectionwise homotopy fixed points with restrictions f^{hΓ}, and ι.
struct PresheafHfp {
  std::vector<HomotopyFixedPoints> fixed_points;
  GroupoidPresheaf presheaf;
  PresheafMap iota;
};

/// Throws InvalidStructure when a is not a valid presheaf action.
PresheafHfp presheaf_hfp(const GroupoidPresheaf& x, const PresheafGammaAction& a);
/// f^{hΓ} between the fixed points. Throws NotEquivariant.
PresheafMap presheaf_hfp_map(const PresheafMap& f, const PresheafGammaAction& dom_action,
                             const PresheafGammaAction& cod_action);

/// colim_{t ∈ U} X(U)^{hΓ} -> (colim_{t ∈ U} X(U))^{hΓ}. The fixed-point
/// diagram must coincide with the neighbourhood diagram of presheaf_hfp.
struct StalkCommutation {
  std::uint32_t point = 0;
  HfpColimitComparison comparison;
  bool restrictions_match = false;
  bool isomorphism = false;
};

StalkCommutation stalk_commutation_check(const GroupoidPresheaf& x, const PresheafGammaAction& a, std::uint32_t t);

/// A group at every open with restriction homomorphisms.
struct GroupPresheaf {
  FiniteSite site;
  std::vector<FiniteGroup> groups;
  std::vector<std::vector<Elem>> restrictions;  ///< u * num_opens + v

  const std::vector<Elem>& restriction(std::size_t u, std::size_t v) const {
    return restrictions[u * site.num_opens() + v];
  }
};

GroupPresheaf make_group_presheaf(const FiniteSite& site, std::vector<FiniteGroup> groups,
                                  const std::function<std::vector<Elem>(std::size_t u, std::size_t v)>& restrict);
GroupPresheaf constant_group_presheaf(const FiniteSite& site, const FiniteGroup& g);
ValidationReport validate_group_presheaf(const GroupPresheaf& g);

/// A G(U)-set X(U) at every open with restrictions r satisfying
/// r(g.x) = res(g).r(x).
struct ActionPresheaf {
  GroupPresheaf groups;
  std::vector<GroupAction> actions;
  std::vector<std::vector<std::uint32_t>> restrictions;  ///< u * num_opens + v

  const std::vector<std::uint32_t>& restriction(std::size_t u, std::size_t v) const {
    return restrictions[u * groups.site.num_opens() + v];
  }
};

ValidationReport validate_action_presheaf(const ActionPresheaf& x);
/// G acting on a point at every open.
ActionPresheaf point_action_presheaf(const GroupPresheaf& g);
/// G acting on itself by left multiplication at every open.
ActionPresheaf translation_action_presheaf(const GroupPresheaf& g);

/// (E_G X)(U) = E_{G(U)} X(U). Throws InvalidStructure on invalid input.
GroupoidPresheaf build_presheaf_action_groupoid(const ActionPresheaf& x);

/// Involutive group data at every open, natural in the restrictions: they
/// commute with θ and carry B(U) into B(V).
struct InvolutivePresheaf {
  GroupPresheaf groups;
  std::vector<std::vector<Elem>> theta;
  std::vector<std::vector<Elem>> subgroups;

  InvolutiveGroupData section(std::size_t u) const { return {groups.groups[u], theta[u], subgroups[u]}; }
};

ValidationReport validate_involutive_presheaf(const InvolutivePresheaf& d);
InvolutivePresheaf constant_involutive_presheaf(const FiniteSite& site, const InvolutiveGroupData& d);

/// The parameter fibration at every open, assembled into a map of presheaves
/// (E_{B×B}G)^{hΓ} -> E_B Z.
struct ParameterFibrationPresheaf {
  GroupoidPresheaf source;
  PresheafGammaAction action;
  PresheafHfp fixed_points;
  GroupoidPresheaf target;
  PresheafMap map;
  std::vector<ParameterFibration> sections;
  bool natural = false;
  bool sectionwise_fibration = false;
  bool sectionwise_weak_equivalence = false;

  bool acyclic() const { return natural && sectionwise_fibration && sectionwise_weak_equivalence; }
};

ParameterFibrationPresheaf parameter_fibration_presheaf(const InvolutivePresheaf& d);

}  // namespace hgrpd
