#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hgrpd/cohomology.hpp"
#include "hgrpd/group.hpp"
#include "hgrpd/presheaf.hpp"
#include "hgrpd/twisted.hpp"

namespace hgrpd {

/// "trivial", "Z<n>", "D<n>", "S<n>", "V4" and "GL2F2". Throws InputError on
/// anything else.
FiniteGroup catalog_group(std::string_view name);

/// The least element of order two whose conjugation is not the identity.
/// Throws InputError when there is none.
Elem noncentral_involution(const FiniteGroup& g);

struct NamedGroupoid {
  std::string name;
  FiniteGroupoid groupoid;
};

/// Small groupoids: empty, point, discrete, codiscrete, B of small groups,
/// E(Z/2), a coset action groupoid and a disjoint union.
std::vector<NamedGroupoid> groupoid_corpus();

struct NamedGroupInvolution {
  std::string name;
  GroupGammaAction action;
};

struct NamedInvolutiveData {
  std::string name;
  InvolutiveGroupData data;
};

/// Small groups with involutions covering trivial, inversion, swap and inner
/// involutions on abelian and nonabelian groups.
std::vector<NamedGroupInvolution> group_involution_corpus();

/// (G, θ, B) triples: trivial, Z/2, Z/4 with θ = id and negation, S3 with
/// θ = id and conjugation by (1 2), D4, and GL2(F2) with B upper triangular.
std::vector<NamedInvolutiveData> involutive_data_corpus();

struct NamedPresheaf {
  std::string name;
  GroupoidPresheaf presheaf;
  PresheafGammaAction action;
};

/// Hand-built presheaves: constant ones, the Sierpinski presheaf
/// B(Z/4) -> B(Z/2) with negation, a set with an exchange over two points,
/// and E_G, B_G for a constant group.
std::vector<NamedPresheaf> presheaf_corpus();

/// B(Z/4) over {a, b} restricting to B(Z/2) over {a}, point over ∅.
NamedPresheaf sierpinski_presheaf();

struct NamedPresheafMap {
  std::string name;
  PresheafMap map;
  PresheafGammaAction dom_action, cod_action;
};

/// Maps that are weak equivalences on every stalk but not on every section:
/// over the discrete two-point space, {p, q} over the whole space and the
/// point elsewhere, mapped to the point; and over the Sierpinski space a map
/// that fails only over ∅.
std::vector<NamedPresheafMap> local_not_sectionwise_corpus();

}  // namespace hgrpd
