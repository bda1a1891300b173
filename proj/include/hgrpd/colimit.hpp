#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hgrpd/gamma.hpp"
#include "hgrpd/groupoid.hpp"

namespace hgrpd {

/// A finite category used to index diagrams. Composition is diagrammatic
/// like everywhere else: compose(a, b) is "a then b".
struct IndexCategory {
  std::size_t num_objects = 0;
  std::vector<ObjId> src, tgt;
  std::vector<MorId> identity;
  std::vector<MorId> composition;  ///< first * num_arrows() + then; kNone when not composable
  std::vector<std::string> object_labels, arrow_labels;

  std::size_t num_arrows() const { return src.size(); }
  MorId compose(MorId first, MorId then) const { return composition[first * num_arrows() + then]; }
  std::vector<MorId> hom(ObjId from, ObjId to) const;

  /// One object, one arrow.
  static IndexCategory single();
  /// The preorder generated by `arrows` (reflexive transitive closure) on
  /// 0..n-1. Arrow ids run over pairs i <= j in lexicographic order.
  static IndexCategory poset(std::size_t n, std::span<const std::pair<ObjId, ObjId>> arrows);
  /// One object whose endomorphism monoid has the given table,
  /// table[a * n + b] = "a then b", with `unit` as the identity.
  static IndexCategory monoid(std::vector<MorId> table, MorId unit);
  static IndexCategory from_compose(std::size_t num_objects, std::vector<ObjId> src, std::vector<ObjId> tgt,
                                    std::vector<MorId> identity,
                                    const std::function<MorId(MorId, MorId)>& compose);
};

/// Empty iff the tables describe a category.
ValidationReport validate_index(const IndexCategory& c);

struct FilteredWitness {
  std::string reason;
  std::vector<ObjId> objects;
  std::vector<MorId> arrows;
};

/// nullopt iff c is nonempty, every two objects map to a common object, and
/// every parallel pair u, v : i -> j has w : j -> k with "u then w" = "v then w".
/// These conditions cover every finite subdiagram by induction.
std::optional<FilteredWitness> filtered_witness(const IndexCategory& c);

/// A functor from an index category to groupoids: nodes[i] for each object,
/// arrows[a] : nodes[src a] -> nodes[tgt a] for each arrow.
struct GroupoidDiagram {
  IndexCategory index;
  std::vector<FiniteGroupoid> nodes;
  std::vector<GroupoidMap> arrows;
};

/// The same with an action on every node and equivariant arrows.
struct GammaDiagram {
  IndexCategory index;
  std::vector<GammaAction> nodes;
  std::vector<GroupoidMap> arrows;
};

ValidationReport validate_diagram(const GroupoidDiagram& d);
ValidationReport validate_diagram(const GammaDiagram& d);
GroupoidDiagram underlying(const GammaDiagram& d);

/// The colimit of sets on objects and on morphisms, with the induced
/// structure, and the cocone maps nodes[i] -> groupoid.
struct Colimit {
  FiniteGroupoid groupoid;
  std::vector<GroupoidMap> cocone;
};

struct GammaColimit {
  GammaAction action;
  std::vector<GroupoidMap> cocone;
};

/// Throws NotFiltered when the index is not filtered and InvalidStructure
/// when the diagram is invalid.
Colimit colimit(const GroupoidDiagram& d);
GammaColimit colimit(const GammaDiagram& d);

/// The same construction without the filtered check. Throws InvalidStructure
/// when the quotient sets do not carry a well-defined groupoid, which can
/// happen for non-filtered indices.
Colimit objectwise_colimit(const GroupoidDiagram& d);
GammaColimit objectwise_colimit(const GammaDiagram& d);

/// The map of colimits induced by a natural family of maps
/// components[i] : source.cocone[i].dom -> target.cocone[i].dom. Throws
/// InvalidStructure when the family is not compatible with the colimits.
GroupoidMap colimit_map(const Colimit& source, const Colimit& target, std::span<const GroupoidMap> components);

/// The diagram i -> nodes[i]^{hΓ} with the induced maps.
struct HfpDiagram {
  std::vector<HomotopyFixedPoints> fixed_points;
  GroupoidDiagram diagram;
};

HfpDiagram hfp_diagram(const GammaDiagram& d);

/// The canonical map colim X^{hΓ} -> (colim X)^{hΓ}.
struct HfpColimitComparison {
  GammaColimit colimit;
  HomotopyFixedPoints colimit_fixed_points;
  HfpDiagram fixed_point_diagram;
  Colimit fixed_point_colimit;
  GroupoidMap map;
  bool isomorphism = false;
};

/// Throws NotFiltered when the index is not filtered.
HfpColimitComparison hfp_colimit_comparison(const GammaDiagram& d);
/// Builds both sides with objectwise colimits whatever the index.
HfpColimitComparison objectwise_hfp_colimit_comparison(const GammaDiagram& d);

}  // namespace hgrpd
