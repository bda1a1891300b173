#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hgrpd/report.hpp"

namespace hgrpd {

using Elem = std::uint32_t;
using Permutation = std::vector<std::uint32_t>;

/// Checks closure, identity, inverses and associativity of an n x n Cayley table.
ValidationReport validate_group_table(std::size_t n, std::span<const Elem> table);

/// A finite group given by its full multiplication table. Elements are the
/// dense ids 0..order()-1; mul(a, b) is the product "a times b".
class FiniteGroup {
 public:
  /// Throws InvalidStructure when the table violates the group axioms.
  explicit FiniteGroup(std::vector<Elem> table, std::vector<std::string> labels = {});

  static FiniteGroup trivial();
  static FiniteGroup cyclic(std::size_t n);
  /// Symmetry group of the regular n-gon, order 2n, n >= 3.
  static FiniteGroup dihedral(std::size_t n);
  static FiniteGroup symmetric(std::size_t n);
  /// Closure of permutation generators on {0..degree-1}. Elements are ordered
  /// lexicographically by one-line notation; labels use 1-based cycle notation.
  static FiniteGroup from_permutations(std::size_t degree, const std::vector<Permutation>& gens);
  /// Element (a, b) has id a * other.order() + b.
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
  /// Invertible 2x2 matrices over F_2, labelled "[ab;cd]".
  static FiniteGroup gl2_f2();

  std::size_t order() const { return n_; }
  Elem identity() const { return identity_; }
  Elem mul(Elem a, Elem b) const { return table_[a * n_ + b]; }
  Elem inverse(Elem a) const { return inverse_[a]; }
  const std::string& label(Elem a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Elem> find(std::string_view label) const;
  const std::vector<Elem>& table() const { return table_; }

  /// Permutation representation, when the group was built from permutations.
  const std::vector<Permutation>& permutations() const { return perms_; }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.table_ == b.table_;
  }

 private:
  FiniteGroup() = default;
  void init(std::vector<Elem> table, std::vector<std::string> labels);

  std::size_t n_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  Elem identity_ = 0;
  std::vector<std::string> labels_;
  std::vector<Permutation> perms_;
};

/// 1-based cycle notation, "()" for the identity.
std::string cycle_notation(const Permutation& p);

/// A subgroup as a sorted element subset of its parent, together with the
/// induced table: local element i is parent element elements[i].
struct Subgroup {
  FiniteGroup group;
  std::vector<Elem> elements;

  /// Local id of a parent element; nullopt if it is not in the subgroup.
  std::optional<Elem> local(Elem parent) const;
};

bool is_subgroup(const FiniteGroup& g, std::span<const Elem> subset);
/// Throws InvalidStructure when the subset is not a subgroup.
Subgroup make_subgroup(const FiniteGroup& g, std::vector<Elem> subset);
/// Sorted element list of the subgroup generated by gens.
std::vector<Elem> generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens);
/// Every subgroup generated by at most two elements, sorted, without duplicates.
/// This is every subgroup for the small groups used here.
std::vector<std::vector<Elem>> small_subgroups(const FiniteGroup& g);
/// A small generating set, chosen greedily by element id.
std::vector<Elem> generating_set(const FiniteGroup& g);

/// (n, c) with c n c^-1 outside the subset, or nullopt when the subset is normal.
std::optional<std::pair<Elem, Elem>> normality_witness(const FiniteGroup& g,
                                                       std::span<const Elem> subset);

struct QuotientGroup {
  FiniteGroup group;
  std::vector<Elem> projection;  ///< parent element -> coset id
  std::vector<Elem> coset_rep;   ///< coset id -> minimal parent element
};

/// Throws NotNormal (with witness) when n is not normal.
QuotientGroup quotient_group(const FiniteGroup& g, std::span<const Elem> n);

bool is_homomorphism(const FiniteGroup& from, const FiniteGroup& to, std::span<const Elem> map);
bool is_automorphism(const FiniteGroup& g, std::span<const Elem> map);
/// g -> c g c^-1
std::vector<Elem> conjugation_map(const FiniteGroup& g, Elem c);
/// g -> g^-1; an automorphism only when g is abelian.
std::vector<Elem> inversion_map(const FiniteGroup& g);
std::vector<Elem> identity_map(const FiniteGroup& g);
/// All automorphisms t with t(t(x)) = x, identity first, then lexicographic.
std::vector<std::vector<Elem>> involutive_automorphisms(const FiniteGroup& g);

}  // namespace hgrpd
