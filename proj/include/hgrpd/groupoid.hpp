#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "hgrpd/report.hpp"

namespace hgrpd {

using ObjId = std::uint32_t;
using MorId = std::uint32_t;
inline constexpr std::uint32_t kNone = UINT32_MAX;

using Rational = boost::rational<std::int64_t>;

/// Raw groupoid data, possibly violating the axioms. Composition triples are
/// (first, then, result) in diagrammatic order: `first` is applied before `then`.
struct GroupoidTables {
  std::size_t num_objects = 0;
  std::vector<ObjId> src, tgt;
  std::vector<MorId> identity;
  std::vector<MorId> inverse;
  std::vector<std::array<MorId, 3>> composition;
  std::vector<std::string> object_labels, morphism_labels;
};

/// An immutable, fully tabulated finite groupoid.
///
/// Composition is diagrammatic throughout the library: compose(a, b) is
/// "a, then b", defined when tgt(a) == src(b). The usual right-to-left
/// product "b a" of category theory is compose(a, b).
///
/// Copies share the underlying tables.
class FiniteGroupoid {
 public:
  using ComposeFn = std::function<MorId(MorId first, MorId then)>;

  /// The empty groupoid.
  FiniteGroupoid();

  /// Throws InputError on shape errors (table sizes, ids out of range,
  /// triples on non-composable pairs, conflicting triples). The category
  /// axioms are not checked here; see validate_groupoid.
  explicit FiniteGroupoid(const GroupoidTables& tables);

  /// Fills composition by calling `compose` on every composable pair.
  FiniteGroupoid(std::size_t num_objects, std::vector<ObjId> src, std::vector<ObjId> tgt,
                 std::vector<MorId> identity, std::vector<MorId> inverse,
                 const ComposeFn& compose, std::vector<std::string> object_labels = {},
                 std::vector<std::string> morphism_labels = {});

  /// The final object: one object, one morphism.
  static FiniteGroupoid terminal();
  /// A set viewed as a groupoid with identity morphisms only.
  static FiniteGroupoid discrete(std::size_t n, std::vector<std::string> labels = {});
  /// Exactly one morphism between any two objects.
  static FiniteGroupoid codiscrete(std::size_t n, std::vector<std::string> labels = {});

  std::size_t num_objects() const;
  std::size_t num_morphisms() const;
  ObjId src(MorId m) const;
  ObjId tgt(MorId m) const;
  MorId identity(ObjId x) const;
  MorId inverse(MorId m) const;
  /// kNone when the pair is not composable or the table has no entry.
  MorId compose(MorId first, MorId then) const;

  /// Morphisms with source x, sorted by (tgt, id).
  std::span<const MorId> out(ObjId x) const;
  /// Hom(x, y), sorted by id.
  std::span<const MorId> hom(ObjId x, ObjId y) const;
  /// Index of m inside out(src(m)).
  std::size_t out_position(MorId m) const;

  /// Connected components (= isomorphism classes), numbered by smallest object.
  std::size_t num_components() const;
  std::uint32_t component(ObjId x) const;
  /// Smallest object id of each component.
  const std::vector<ObjId>& component_representatives() const;

  const std::string& object_label(ObjId x) const;
  const std::string& morphism_label(MorId m) const;

  GroupoidTables tables() const;

  /// True when both handles share the same tables.
  bool same_as(const FiniteGroupoid& other) const { return rep_ == other.rep_; }
  /// Structural equality of all tables (labels ignored).
  friend bool operator==(const FiniteGroupoid& a, const FiniteGroupoid& b);

 private:
  struct Rep;
  std::shared_ptr<const Rep> rep_;
};

/// Empty iff every groupoid axiom holds. Axiom names: identity-endpoints,
/// composition-total, composition-endpoints, identity-law, associativity,
/// inverse.
ValidationReport validate_groupoid(const FiniteGroupoid& g);

/// A functor between finite groupoids.
struct GroupoidMap {
  FiniteGroupoid dom, cod;
  std::vector<ObjId> obj_map;
  std::vector<MorId> mor_map;

  friend bool operator==(const GroupoidMap&, const GroupoidMap&) = default;
};

/// Empty iff the map is a functor (preserves src, tgt, identities,
/// composition and inverses).
ValidationReport validate_functor(const GroupoidMap& f);

GroupoidMap identity_functor(const FiniteGroupoid& g);
/// "f, then g", i.e. g after f. Throws InputError when f.cod != g.dom.
GroupoidMap then(const GroupoidMap& f, const GroupoidMap& g);
/// The unique map to the final object.
GroupoidMap to_terminal(const FiniteGroupoid& g);

/// Isomorphism lifting: for every x and every α out of f(x) some β out of x maps to α.
bool is_fibration(const GroupoidMap& f);
bool is_full(const GroupoidMap& f);
bool is_faithful(const GroupoidMap& f);
bool is_essentially_surjective(const GroupoidMap& f);
/// Full, faithful and essentially surjective.
bool is_weak_equivalence(const GroupoidMap& f);
/// Bijective on objects and on morphisms.
bool is_isomorphism(const GroupoidMap& f);

/// Sum over isomorphism classes of 1/|Aut|.
Rational groupoid_cardinality(const FiniteGroupoid& g);

struct Coproduct {
  FiniteGroupoid groupoid;
  std::vector<ObjId> object_offset;
  std::vector<MorId> morphism_offset;
};

Coproduct coproduct(std::span<const FiniteGroupoid> parts);
FiniteGroupoid disjoint_union(std::span<const FiniteGroupoid> parts);

/// The coproduct of the domains to the coproduct of the codomains.
GroupoidMap coproduct_map(std::span<const GroupoidMap> parts);
/// `copies` copies of g folded onto g.
GroupoidMap fold(const FiniteGroupoid& g, std::size_t copies);

/// Object (a, b) has id a * h.num_objects() + b; likewise for morphisms.
FiniteGroupoid product(const FiniteGroupoid& g, const FiniteGroupoid& h);
GroupoidMap product_map(const GroupoidMap& f, const GroupoidMap& g);

/// The isomorphism from g to the same groupoid with object x renamed
/// obj_perm[x] and morphism m renamed mor_perm[m].
GroupoidMap relabel(const FiniteGroupoid& g, std::span<const ObjId> obj_perm, std::span<const MorId> mor_perm);

/// Full subgroupoid on a sorted object subset, with its inclusion.
GroupoidMap full_subgroupoid_inclusion(const FiniteGroupoid& g, std::vector<ObjId> objects);

/// g -> the groupoid with the same objects and exactly one morphism between
/// any two objects of the same component.
GroupoidMap codiscrete_reflection(const FiniteGroupoid& g);

/// g -> its set of components as a discrete groupoid.
GroupoidMap components_map(const FiniteGroupoid& g);

}  // namespace hgrpd
