#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hgrpd/colimit.hpp"
#include "hgrpd/gamma.hpp"
#include "hgrpd/group.hpp"
#include "hgrpd/presheaf.hpp"

namespace hgrpd {

/// Deterministic draws from mt19937_64, whose output sequence the standard
/// fixes. Indices are drawn as rng() % n and permutations by Fisher-Yates on
/// top of that, so samples do not depend on the standard library in use.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n);
  bool coin() { return below(2) == 1; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }
  std::vector<std::uint32_t> permutation(std::size_t n);

 private:
  std::mt19937_64 rng_;
};

/// A catalog group with an involutive automorphism and its θ-stable subgroups.
struct Involution {
  std::string name;
  FiniteGroup group;
  std::vector<Elem> theta;
  std::vector<std::vector<Elem>> stable_subgroups;
};

/// trivial, Z2, Z3, Z4, V4, Z6, S3, D4 and S4 with every involutive automorphism.
const std::vector<Involution>& involution_catalog();

/// E_G(G/H) with xH -> θ(x)H and (g, xH) -> (θ g, θ(x)H), for θ-stable H.
struct CosetBlock {
  const Involution* involution;
  std::vector<Elem> subgroup;

  std::size_t num_morphisms() const;
  std::string describe() const;
};

GammaAction coset_block_action(const CosetBlock& b);
/// A block with at most max_morphisms morphisms; the trivial block always fits.
CosetBlock random_coset_block(Sampler& s, std::size_t max_morphisms);

/// Y ⊔ Y with the two copies exchanged.
GammaAction swapped_pair(const FiniteGroupoid& y);

struct GammaSample {
  std::string description;
  GammaAction action;
};

/// A disjoint union of coset blocks, swapped pairs, double-coset groupoids and
/// swap actions on squares, with objects and morphisms randomly renumbered.
GammaSample random_gamma_groupoid(Sampler& s, std::size_t max_morphisms);

struct MapSample {
  std::string description;
  EquivariantMap map;
};

/// Equivariant maps that are fibrations by construction: coset projections,
/// quotients by θ-stable normal subgroups, codiscrete reflections, component
/// maps, folds and maps to the point, summed over blocks and renumbered.
MapSample random_fibration(Sampler& s, std::size_t max_morphisms);
/// Equivariant weak equivalences by construction: quotients by free θ-stable
/// normal subgroups, inclusions of stable full subgroupoids meeting every
/// component, and E_G G -> point.
MapSample random_weak_equivalence(Sampler& s, std::size_t max_morphisms);
/// Inclusions of stable full subgroupoids that may miss components; usually
/// neither fibrations nor weak equivalences.
MapSample random_inclusion(Sampler& s, std::size_t max_morphisms);

struct DiagramSample {
  std::string description;
  GammaDiagram diagram;
};

/// A filtered diagram: a single node, a chain, a V, a diamond, an idempotent,
/// a pair of retractions, or a coequalized parallel pair, with values built
/// from coset blocks and the maps above.
DiagramSample random_filtered_diagram(Sampler& s, std::size_t max_morphisms);

/// 0 ⇉ 1 carrying the identity and the exchange of {a, b}, with the exchange
/// action at both nodes. Not filtered, and the comparison map fails there.
GammaDiagram coequalizer_control();
/// Two objects and only identity arrows. Not filtered, yet the comparison
/// map is an isomorphism since fixed points commute with coproducts.
GammaDiagram coproduct_control();

/// The topology of a random preorder on min_points..max_points points.
FiniteSite random_site(Sampler& s, std::size_t min_points, std::size_t max_points);

struct PresheafSample {
  std::string description;
  GroupoidPresheaf presheaf;
  PresheafGammaAction action;
};

/// Either a product over the points of U of small groupoids with actions,
/// restricting by projection, or a chain of coset blocks indexed by the
/// number of points U shares with a fixed subset, optionally plus a constant
/// summand. Sections stay within max_morphisms.
PresheafSample random_presheaf(Sampler& s, const FiniteSite& site, std::size_t max_morphisms);

struct PresheafMapSample {
  std::string description;
  PresheafMap map;
  PresheafGammaAction dom_action, cod_action;
};

/// A map out of x: the identity, the map to the point, or the images under
/// codiscrete reflection or components.
PresheafMapSample random_presheaf_map(Sampler& s, const PresheafSample& x);
/// A product over the points of U of random equivariant maps Y_t -> Y'_t.
PresheafMapSample random_product_map(Sampler& s, const FiniteSite& site, std::size_t max_morphisms);
/// A product over the points of U of random functions between small sets,
/// with trivial actions.
PresheafMapSample random_discrete_map(Sampler& s, const FiniteSite& site);

}  // namespace hgrpd
