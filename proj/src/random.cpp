#include "hgrpd/random.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "hgrpd/error.hpp"
#include "hgrpd/fixtures.hpp"
#include "hgrpd/group_action.hpp"
#include "hgrpd/twisted.hpp"

namespace hgrpd {

std::size_t Sampler::below(std::size_t n) {
  if (n == 0) throw InputError("sampler: empty range");
  return static_cast<std::size_t>(rng_() % n);
}

std::vector<std::uint32_t> Sampler::permutation(std::size_t n) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), std::uint32_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[below(i)]);
  return p;
}

namespace {

std::string theta_name(const FiniteGroup& g, const std::vector<Elem>& theta, std::size_t index) {
  if (theta == identity_map(g)) return "id";
  if (theta == inversion_map(g)) return "neg";
  for (Elem c = 0; c < g.order(); ++c)
    if (conjugation_map(g, c) == theta) return "conj" + g.label(c);
  return "t" + std::to_string(index);
}

bool contains(const std::vector<Elem>& big, const std::vector<Elem>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

const std::vector<Involution>& involution_catalog() {
  static const std::vector<Involution> catalog = [] {
    std::vector<Involution> out;
    for (const char* name : {"trivial", "Z2", "Z3", "Z4", "V4", "Z6", "S3", "D4", "S4"}) {
      auto g = catalog_group(name);
      auto subgroups = small_subgroups(g);
      auto thetas = involutive_automorphisms(g);
      for (std::size_t i = 0; i < thetas.size(); ++i) {
        Involution inv{std::string(name) + "/" + theta_name(g, thetas[i], i), g, thetas[i], {}};
        for (const auto& h : subgroups) {
          std::vector<Elem> image;
          for (auto x : h) image.push_back(thetas[i][x]);
          std::sort(image.begin(), image.end());
          if (image == h) inv.stable_subgroups.push_back(h);
        }
        out.push_back(std::move(inv));
      }
    }
    return out;
  }();
  return catalog;
}

std::size_t CosetBlock::num_morphisms() const {
  auto n = involution->group.order();
  return n * (n / subgroup.size());
}

std::string CosetBlock::describe() const {
  std::string h = "{";
  for (std::size_t i = 0; i < subgroup.size(); ++i)
    h += (i ? "," : "") + involution->group.label(subgroup[i]);
  return "E(" + involution->name + "; H=" + h + "})";
}

GammaAction coset_block_action(const CosetBlock& b) {
  const auto& g = b.involution->group;
  auto a = coset_action(g, b.subgroup);
  auto index = coset_index(g, b.subgroup);
  std::vector<Elem> rep(a.carrier_size, kNone);
  for (Elem x = g.order(); x-- > 0;) rep[index[x]] = x;
  std::vector<std::uint32_t> involution;
  for (auto r : rep) involution.push_back(index[b.involution->theta[r]]);
  return induced_gamma_action(a, b.involution->theta, involution);
}

CosetBlock random_coset_block(Sampler& s, std::size_t max_morphisms) {
  const auto& catalog = involution_catalog();
  std::vector<const Involution*> fits;
  for (const auto& inv : catalog) {
    auto n = inv.group.order();
    if (n * n / inv.stable_subgroups.back().size() <= max_morphisms) fits.push_back(&inv);
  }
  if (fits.empty()) throw InputError("no coset block fits in " + std::to_string(max_morphisms) + " morphisms");
  const auto* inv = fits[s.below(fits.size())];
  std::vector<std::vector<Elem>> subgroups;
  for (const auto& h : inv->stable_subgroups)
    if (inv->group.order() * inv->group.order() / h.size() <= max_morphisms) subgroups.push_back(h);
  return CosetBlock{inv, s.pick(subgroups)};
}

GammaAction swapped_pair(const FiniteGroupoid& y) {
  std::vector<FiniteGroupoid> parts{y, y};
  auto c = coproduct(parts);
  const auto n = y.num_objects(), m = y.num_morphisms();
  GammaAction out{c.groupoid, {}, {}};
  for (ObjId x = 0; x < 2 * n; ++x) out.bar_obj.push_back(x < n ? x + n : x - n);
  for (MorId a = 0; a < 2 * m; ++a) out.bar_mor.push_back(a < m ? a + m : a - m);
  return out;
}

namespace {

struct Renumbered {
  GroupoidMap iso;
  GammaAction action;
};

Renumbered renumber(Sampler& s, const GammaAction& a) {
  auto po = s.permutation(a.carrier.num_objects());
  auto pm = s.permutation(a.carrier.num_morphisms());
  auto iso = relabel(a.carrier, po, pm);
  auto moved = transport(a, iso);
  return {std::move(iso), std::move(moved)};
}

// Renumber both ends of an equivariant map.
EquivariantMap renumber(Sampler& s, const EquivariantMap& f) {
  auto d = renumber(s, f.dom_action);
  auto c = renumber(s, f.cod_action);
  GroupoidMap g{d.iso.cod, c.iso.cod, std::vector<ObjId>(f.map.obj_map.size()),
                std::vector<MorId>(f.map.mor_map.size())};
  for (ObjId x = 0; x < f.map.obj_map.size(); ++x) g.obj_map[d.iso.obj_map[x]] = c.iso.obj_map[f.map.obj_map[x]];
  for (MorId m = 0; m < f.map.mor_map.size(); ++m) g.mor_map[d.iso.mor_map[m]] = c.iso.mor_map[f.map.mor_map[m]];
  return EquivariantMap{std::move(g), std::move(d.action), std::move(c.action)};
}

struct Piece {
  std::string description;
  EquivariantMap map;
};

Piece sum(const std::vector<Piece>& pieces) {
  std::vector<GroupoidMap> maps;
  std::vector<GammaAction> doms, cods;
  std::string description;
  for (const auto& p : pieces) {
    maps.push_back(p.map.map);
    doms.push_back(p.map.dom_action);
    cods.push_back(p.map.cod_action);
    description += (description.empty() ? "" : " + ") + p.description;
  }
  return Piece{description, EquivariantMap{coproduct_map(maps), coproduct_action(doms), coproduct_action(cods)}};
}

// The projection E_G(G/H) -> E_G(G/H') for H ⊆ H'.
Piece projection(const CosetBlock& from, const std::vector<Elem>& to) {
  const auto& g = from.involution->group;
  CosetBlock target{from.involution, to};
  auto a = coset_action(g, from.subgroup), b = coset_action(g, to);
  auto ia = coset_index(g, from.subgroup), ib = coset_index(g, to);
  std::vector<std::uint32_t> set_map(a.carrier_size, kNone);
  for (Elem x = 0; x < g.order(); ++x) set_map[ia[x]] = ib[x];
  auto da = coset_block_action(from), db = coset_block_action(target);
  auto f = action_groupoid_map(a, da.carrier, b, db.carrier, identity_map(g), set_map);
  return Piece{from.describe() + " -> " + target.describe(), EquivariantMap{f, da, db}};
}

std::vector<std::vector<Elem>> stable_supergroups(const CosetBlock& b) {
  std::vector<std::vector<Elem>> out;
  for (const auto& h : b.involution->stable_subgroups)
    if (contains(h, b.subgroup)) out.push_back(h);
  return out;
}

std::vector<std::vector<Elem>> stable_normal_subgroups(const Involution& inv) {
  std::vector<std::vector<Elem>> out;
  for (const auto& n : inv.stable_subgroups)
    if (!normality_witness(inv.group, n)) out.push_back(n);
  return out;
}

Piece pushed(const std::string& what, const GammaAction& a, const GroupoidMap& f) {
  return Piece{what, EquivariantMap{f, a, pushforward(a, f)}};
}

Piece quotient(const CosetBlock& b, const std::vector<Elem>& n) {
  auto a = coset_block_action(b);
  auto q = quotient_map(coset_action(b.involution->group, b.subgroup), n);
  return pushed(b.describe() + " / N" + std::to_string(n.size()), a, q.map);
}

// A full subgroupoid closed under bar. With `every_component` it contains a
// representative of each component.
Piece stable_inclusion(Sampler& s, const GammaAction& a, const std::string& what, bool every_component) {
  const auto& g = a.carrier;
  std::vector<bool> chosen(g.num_objects(), false);
  auto take = [&](ObjId x) { chosen[x] = chosen[a.bar_obj[x]] = true; };
  if (every_component) {
    std::vector<std::vector<ObjId>> members(g.num_components());
    for (ObjId x = 0; x < g.num_objects(); ++x) members[g.component(x)].push_back(x);
    for (const auto& m : members) take(s.pick(m));
  }
  for (ObjId x = 0; x < g.num_objects(); ++x)
    if (s.below(3) == 0) take(x);
  std::vector<ObjId> objects;
  for (ObjId x = 0; x < g.num_objects(); ++x)
    if (chosen[x]) objects.push_back(x);
  auto inc = full_subgroupoid_inclusion(g, objects);
  return Piece{what + " sub" + std::to_string(objects.size()), EquivariantMap{inc, restrict_action(a, inc), a}};
}

Piece fibration_piece(Sampler& s, std::size_t budget) {
  if (budget >= 2 && s.below(5) == 0) {
    // a swapped pair over a plain coset groupoid, mapped copywise or folded
    auto b = random_coset_block(s, budget / 2);
    auto y = coset_block_action(b).carrier;
    auto a = swapped_pair(y);
    if (s.coin()) {
      auto f = fold(y, 2);
      return Piece{"fold " + b.describe(), EquivariantMap{f, a, trivial_gamma_action(y)}};
    }
    auto p = projection(b, s.pick(stable_supergroups(b)));
    std::vector<GroupoidMap> copies{p.map.map, p.map.map};
    return Piece{"pair " + p.description,
                 EquivariantMap{coproduct_map(copies), a, swapped_pair(p.map.map.cod)}};
  }
  auto b = random_coset_block(s, budget);
  auto a = coset_block_action(b);
  switch (s.below(6)) {
    case 0:
      return projection(b, s.pick(stable_supergroups(b)));
    case 1:
      return quotient(b, s.pick(stable_normal_subgroups(*b.involution)));
    case 2:
      return pushed("codiscrete " + b.describe(), a, codiscrete_reflection(a.carrier));
    case 3:
      return pushed("components " + b.describe(), a, components_map(a.carrier));
    case 4:
      return Piece{"point " + b.describe(),
                   EquivariantMap{to_terminal(a.carrier), a, trivial_gamma_action(FiniteGroupoid::terminal())}};
    default:
      return Piece{"identity " + b.describe(), EquivariantMap{identity_functor(a.carrier), a, a}};
  }
}

Piece equivalence_piece(Sampler& s, std::size_t budget) {
  auto b = random_coset_block(s, budget);
  auto a = coset_block_action(b);
  switch (s.below(4)) {
    case 0: {
      auto a0 = coset_action(b.involution->group, b.subgroup);
      std::vector<std::vector<Elem>> free;
      for (const auto& n : stable_normal_subgroups(*b.involution))
        if (!freeness_witness(a0, n)) free.push_back(n);
      return quotient(b, s.pick(free));
    }
    case 1:
      return stable_inclusion(s, a, b.describe(), true);
    case 2:
      if (b.subgroup.size() == 1)
        return Piece{"point " + b.describe(),
                     EquivariantMap{to_terminal(a.carrier), a, trivial_gamma_action(FiniteGroupoid::terminal())}};
      [[fallthrough]];
    default: {
      auto y = a.carrier;
      if (budget >= 2 * y.num_morphisms() && s.coin()) {
        auto inner = stable_inclusion(s, trivial_gamma_action(y), b.describe(), true).map.map;
        std::vector<GroupoidMap> copies{inner, inner};
        return Piece{"pair sub " + b.describe(),
                     EquivariantMap{coproduct_map(copies), swapped_pair(inner.dom), swapped_pair(y)}};
      }
      return Piece{"identity " + b.describe(), EquivariantMap{identity_functor(y), a, a}};
    }
  }
}

template <class Make>
MapSample random_map(Sampler& s, std::size_t max_morphisms, Make make) {
  std::vector<Piece> pieces;
  std::size_t used = 0;
  const auto parts = 1 + s.below(3);
  for (std::size_t i = 0; i < parts && used < max_morphisms; ++i) {
    auto p = make(s, max_morphisms - used);
    used += std::max(p.map.map.dom.num_morphisms(), p.map.map.cod.num_morphisms());
    pieces.push_back(std::move(p));
  }
  auto total = sum(pieces);
  return MapSample{total.description, renumber(s, total.map)};
}

}  // namespace

GammaSample random_gamma_groupoid(Sampler& s, std::size_t max_morphisms) {
  std::vector<GammaAction> parts;
  std::string description;
  std::size_t used = 0;
  const auto count = 1 + s.below(3);
  for (std::size_t i = 0; i < count && used < max_morphisms; ++i) {
    const auto budget = max_morphisms - used;
    GammaAction a;
    std::string what;
    switch (s.below(6)) {
      case 0:
        if (budget >= 2) {
          auto b = random_coset_block(s, budget / 2);
          a = swapped_pair(coset_block_action(b).carrier);
          what = "pair " + b.describe();
          break;
        }
        [[fallthrough]];
      case 1: {
        std::vector<NamedInvolutiveData> fits;
        for (auto& d : involutive_data_corpus())
          if (d.data.subgroup.size() * d.data.subgroup.size() * d.data.group.order() <= budget)
            fits.push_back(std::move(d));
        const auto& d = s.pick(fits);
        a = build_double_coset_groupoid(d.data);
        what = "double-coset " + d.name;
        break;
      }
      case 2: {
        auto b = random_coset_block(s, 1 + static_cast<std::size_t>(std::sqrt(static_cast<double>(budget))));
        auto y = coset_block_action(b).carrier;
        if (y.num_morphisms() * y.num_morphisms() <= budget) {
          a = swap_action(y);
          what = "square " + b.describe();
          break;
        }
        a = coset_block_action(b);
        what = b.describe();
        break;
      }
      default: {
        auto b = random_coset_block(s, budget);
        a = coset_block_action(b);
        what = b.describe();
      }
    }
    used += a.carrier.num_morphisms();
    parts.push_back(std::move(a));
    description += (description.empty() ? "" : " + ") + what;
  }
  auto r = renumber(s, coproduct_action(parts));
  return GammaSample{description, std::move(r.action)};
}

MapSample random_fibration(Sampler& s, std::size_t max_morphisms) {
  return random_map(s, max_morphisms, fibration_piece);
}

MapSample random_weak_equivalence(Sampler& s, std::size_t max_morphisms) {
  return random_map(s, max_morphisms, equivalence_piece);
}

MapSample random_inclusion(Sampler& s, std::size_t max_morphisms) {
  return random_map(s, max_morphisms, [](Sampler& s, std::size_t budget) {
    auto b = random_coset_block(s, budget);
    return stable_inclusion(s, coset_block_action(b), b.describe(), false);
  });
}

namespace {

// Nodes and maps for a poset diagram whose nodes are sums of coset blocks
// over the same involutions, with subgroups growing along the order.
struct BlockPoset {
  std::vector<const Involution*> involutions;
  std::vector<std::vector<std::vector<Elem>>> subgroups;  ///< node -> block -> H

  GammaAction node(std::size_t i) const {
    std::vector<GammaAction> parts;
    for (std::size_t b = 0; b < involutions.size(); ++b)
      parts.push_back(coset_block_action({involutions[b], subgroups[i][b]}));
    return coproduct_action(parts);
  }
  GroupoidMap map(std::size_t i, std::size_t j) const {
    std::vector<Piece> pieces;
    for (std::size_t b = 0; b < involutions.size(); ++b)
      pieces.push_back(projection({involutions[b], subgroups[i][b]}, subgroups[j][b]));
    return sum(pieces).map.map;
  }
};

std::vector<Elem> random_superset(Sampler& s, const Involution& inv, const std::vector<Elem>& h) {
  std::vector<std::vector<Elem>> options;
  for (const auto& k : inv.stable_subgroups)
    if (contains(k, h)) options.push_back(k);
  return s.pick(options);
}

std::vector<Elem> join(const Involution& inv, const std::vector<Elem>& a, const std::vector<Elem>& b) {
  std::vector<Elem> gens(a);
  gens.insert(gens.end(), b.begin(), b.end());
  return generated_subgroup(inv.group, gens);
}

GammaDiagram poset_diagram(const IndexCategory& index, const std::vector<GammaAction>& nodes,
                           const std::function<GroupoidMap(std::size_t, std::size_t)>& map) {
  GammaDiagram d{index, nodes, {}};
  for (MorId a = 0; a < index.num_arrows(); ++a)
    d.arrows.push_back(index.src[a] == index.tgt[a] ? identity_functor(nodes[index.src[a]].carrier)
                                                    : map(index.src[a], index.tgt[a]));
  return d;
}

// covers: the generating arrows; shape: which subgroups to build from them
DiagramSample block_poset(Sampler& s, std::size_t budget, const std::string& shape) {
  BlockPoset p;
  const auto blocks = 1 + s.below(2);
  std::vector<CosetBlock> base;
  for (std::size_t b = 0; b < blocks; ++b) {
    base.push_back(random_coset_block(s, budget / blocks));
    p.involutions.push_back(base.back().involution);
  }
  std::vector<std::pair<ObjId, ObjId>> covers;
  std::size_t n = 0;
  auto grow = [&](auto choose) {
    for (std::size_t b = 0; b < blocks; ++b) choose(b);
  };
  if (shape == "chain") {
    n = 2 + s.below(3);
    p.subgroups.assign(n, std::vector<std::vector<Elem>>(blocks));
    grow([&](std::size_t b) {
      p.subgroups[0][b] = base[b].subgroup;
      for (std::size_t i = 1; i < n; ++i) p.subgroups[i][b] = random_superset(s, *p.involutions[b], p.subgroups[i - 1][b]);
    });
    for (ObjId i = 0; i + 1 < n; ++i) covers.push_back({i, i + 1});
  } else if (shape == "V") {
    n = 3;
    p.subgroups.assign(n, std::vector<std::vector<Elem>>(blocks));
    grow([&](std::size_t b) {
      const auto& inv = *p.involutions[b];
      p.subgroups[0][b] = base[b].subgroup;
      std::vector<std::vector<Elem>> fit;
      for (const auto& h : inv.stable_subgroups)
        if (CosetBlock{&inv, h}.num_morphisms() <= budget / blocks) fit.push_back(h);
      p.subgroups[1][b] = s.pick(fit);
      p.subgroups[2][b] = random_superset(s, inv, join(inv, p.subgroups[0][b], p.subgroups[1][b]));
    });
    covers = {{0, 2}, {1, 2}};
  } else {
    n = 4;
    p.subgroups.assign(n, std::vector<std::vector<Elem>>(blocks));
    grow([&](std::size_t b) {
      const auto& inv = *p.involutions[b];
      p.subgroups[0][b] = base[b].subgroup;
      p.subgroups[1][b] = random_superset(s, inv, p.subgroups[0][b]);
      p.subgroups[2][b] = random_superset(s, inv, p.subgroups[0][b]);
      p.subgroups[3][b] = join(inv, p.subgroups[1][b], p.subgroups[2][b]);
    });
    covers = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  }
  std::vector<GammaAction> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back(p.node(i));
  auto index = IndexCategory::poset(n, covers);
  std::string description = shape;
  for (const auto& b : base) description += " " + b.describe();

  // Sometimes finish with a generic map out of the top node.
  if (s.below(3) == 0) {
    auto top = static_cast<ObjId>(n - 1);
    GroupoidMap end;
    switch (s.below(3)) {
      case 0:
        end = codiscrete_reflection(nodes[top].carrier);
        description += " then codiscrete";
        break;
      case 1:
        end = components_map(nodes[top].carrier);
        description += " then components";
        break;
      default:
        end = to_terminal(nodes[top].carrier);
        description += " then point";
    }
    nodes.push_back(pushforward(nodes[top], end));
    covers.push_back({top, static_cast<ObjId>(n)});
    index = IndexCategory::poset(n + 1, covers);
    auto inner = [&](std::size_t i, std::size_t j) {
      return j < n ? p.map(i, j) : (i == top ? end : then(p.map(i, top), end));
    };
    return {description, poset_diagram(index, nodes, inner)};
  }
  return {description, poset_diagram(index, nodes, [&](std::size_t i, std::size_t j) { return p.map(i, j); })};
}

// X = Y ⊔ T₁ ⊔ ... ⊔ T_k where Y -> T is a fibration piece and each retraction
// e_i sends Y and every T_j onto T_i.
DiagramSample retractions(Sampler& s, std::size_t budget, std::size_t k) {
  Piece p;
  do p = fibration_piece(s, budget / (k + 1));
  while (p.map.map.cod.num_morphisms() * k + p.map.map.dom.num_morphisms() > budget);
  std::vector<GammaAction> parts{p.map.dom_action};
  for (std::size_t i = 0; i < k; ++i) parts.push_back(p.map.cod_action);
  auto x = coproduct_action(parts);
  std::vector<FiniteGroupoid> carriers;
  for (const auto& a : parts) carriers.push_back(a.carrier);
  auto c = coproduct(carriers);
  const auto& t = p.map.map.cod;

  std::vector<GroupoidMap> arrows{identity_functor(x.carrier)};
  for (std::size_t i = 1; i <= k; ++i) {
    GroupoidMap e{x.carrier, x.carrier, {}, {}};
    for (auto y : p.map.map.obj_map) e.obj_map.push_back(c.object_offset[i] + y);
    for (auto m : p.map.map.mor_map) e.mor_map.push_back(c.morphism_offset[i] + m);
    for (std::size_t j = 1; j <= k; ++j) {
      for (ObjId y = 0; y < t.num_objects(); ++y) e.obj_map.push_back(c.object_offset[i] + y);
      for (MorId m = 0; m < t.num_morphisms(); ++m) e.mor_map.push_back(c.morphism_offset[i] + m);
    }
    arrows.push_back(std::move(e));
  }
  // "e_i then e_j" = e_j for i, j >= 1
  const auto n = k + 1;
  std::vector<MorId> table(n * n);
  for (MorId a = 0; a < n; ++a)
    for (MorId b = 0; b < n; ++b) table[a * n + b] = b == 0 ? a : b;
  auto index = IndexCategory::monoid(table, 0);
  return {(k == 1 ? "idempotent " : "retractions ") + p.description, GammaDiagram{index, {x}, arrows}};
}

DiagramSample coequalized(Sampler& s, std::size_t budget) {
  Piece p;
  do p = fibration_piece(s, budget / 3);
  while (2 * p.map.map.dom.num_morphisms() > budget);
  const auto& y = p.map.dom_action;
  std::vector<GammaAction> two{y, y};
  auto x1 = coproduct_action(two);
  const auto n = y.carrier.num_objects(), m = y.carrier.num_morphisms();
  GroupoidMap u{y.carrier, x1.carrier, {}, {}}, v{y.carrier, x1.carrier, {}, {}};
  for (ObjId o = 0; o < n; ++o) {
    u.obj_map.push_back(o);
    v.obj_map.push_back(o + n);
  }
  for (MorId a = 0; a < m; ++a) {
    u.mor_map.push_back(a);
    v.mor_map.push_back(a + m);
  }
  auto w = then(fold(y.carrier, 2), p.map.map);
  w.dom = x1.carrier;
  // arrows: id0, id1, id2, u, v, w, c = "u then w" = "v then w"
  auto index = IndexCategory::from_compose(3, {0, 1, 2, 0, 0, 1, 0}, {0, 1, 2, 1, 1, 2, 2}, {0, 1, 2},
                                           [](MorId a, MorId b) -> MorId {
                                             if (a <= 2) return b;
                                             if (b <= 2) return a;
                                             return 6;  // u or v, then w
                                           });
  GammaDiagram d{index, {y, x1, p.map.cod_action}, {}};
  d.arrows = {identity_functor(y.carrier), identity_functor(x1.carrier), identity_functor(p.map.map.cod), u, v, w,
              then(u, w)};
  return {"coequalized " + p.description, std::move(d)};
}

}  // namespace

DiagramSample random_filtered_diagram(Sampler& s, std::size_t max_morphisms) {
  switch (s.below(7)) {
    case 0: {
      auto g = random_gamma_groupoid(s, max_morphisms);
      return {"single " + g.description,
              GammaDiagram{IndexCategory::single(), {g.action}, {identity_functor(g.action.carrier)}}};
    }
    case 1:
      return block_poset(s, max_morphisms, "chain");
    case 2:
      return block_poset(s, max_morphisms, "V");
    case 3:
      return block_poset(s, max_morphisms, "diamond");
    case 4:
      return retractions(s, max_morphisms, 1);
    case 5:
      return retractions(s, max_morphisms, 2);
    default:
      return coequalized(s, max_morphisms);
  }
}

GammaDiagram coequalizer_control() {
  auto x = set_as_groupoid(std::vector<std::uint32_t>{1, 0}, {"a", "b"});
  auto index = IndexCategory::from_compose(2, {0, 1, 0, 0}, {0, 1, 1, 1}, {0, 1}, [](MorId a, MorId b) {
    return a <= 1 ? b : a;
  });
  GroupoidMap swap{x.carrier, x.carrier, x.bar_obj, x.bar_mor};
  return GammaDiagram{index, {x, x}, {identity_functor(x.carrier), identity_functor(x.carrier),
                                      identity_functor(x.carrier), swap}};
}

GammaDiagram coproduct_control() {
  auto x = set_as_groupoid(std::vector<std::uint32_t>{1, 0}, {"a", "b"});
  auto y = trivial_gamma_action(build_bg(FiniteGroup::cyclic(2)));
  auto index = IndexCategory::from_compose(2, {0, 1}, {0, 1}, {0, 1}, [](MorId a, MorId) { return a; });
  return GammaDiagram{index, {x, y}, {identity_functor(x.carrier), identity_functor(y.carrier)}};
}

}  // namespace hgrpd

namespace hgrpd {

FiniteSite random_site(Sampler& s, std::size_t min_points, std::size_t max_points) {
  const auto n = min_points + s.below(max_points - min_points + 1);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      if (a != b && s.below(4) == 0) pairs.push_back({a, b});
  return FiniteSite::from_preorder(n, pairs);
}

namespace {

std::vector<std::uint32_t> points_of(std::uint32_t mask, std::size_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t t = 0; t < n; ++t)
    if (mask >> t & 1u) out.push_back(t);
  return out;
}

// Ids in a left-folded product over the points of U: the last point is the
// least significant digit.
std::uint32_t project_id(std::uint32_t id, const std::vector<std::uint32_t>& from, const std::vector<std::uint32_t>& to,
                         const std::vector<std::size_t>& radix) {
  std::vector<std::uint32_t> digit(radix.size(), 0);
  for (auto it = from.rbegin(); it != from.rend(); ++it) {
    digit[*it] = static_cast<std::uint32_t>(id % radix[*it]);
    id = static_cast<std::uint32_t>(id / radix[*it]);
  }
  std::uint32_t out = 0;
  for (auto t : to) out = static_cast<std::uint32_t>(out * radix[t] + digit[t]);
  return out;
}

struct ProductPresheaf {
  GroupoidPresheaf presheaf;
  PresheafGammaAction action;
};

ProductPresheaf product_presheaf(const FiniteSite& site, const std::vector<GammaAction>& factors) {
  std::vector<std::size_t> obj_radix, mor_radix;
  for (const auto& f : factors) {
    obj_radix.push_back(f.carrier.num_objects());
    mor_radix.push_back(f.carrier.num_morphisms());
  }
  ProductPresheaf out;
  std::vector<FiniteGroupoid> sections;
  for (auto mask : site.opens) {
    auto a = trivial_gamma_action(FiniteGroupoid::terminal());
    for (auto t : points_of(mask, site.num_points)) a = product_action(a, factors[t]);
    sections.push_back(a.carrier);
    out.action.sections.push_back(std::move(a));
  }
  out.presheaf = make_presheaf(site, sections, [&](std::size_t u, std::size_t v) {
    if (u == v) return identity_functor(sections[u]);
    auto from = points_of(site.opens[u], site.num_points), to = points_of(site.opens[v], site.num_points);
    GroupoidMap r{sections[u], sections[v], {}, {}};
    for (ObjId x = 0; x < sections[u].num_objects(); ++x) r.obj_map.push_back(project_id(x, from, to, obj_radix));
    for (MorId m = 0; m < sections[u].num_morphisms(); ++m) r.mor_map.push_back(project_id(m, from, to, mor_radix));
    return r;
  });
  return out;
}

PresheafMapSample product_map(const FiniteSite& site, const std::vector<EquivariantMap>& factors,
                              std::string description) {
  std::vector<GammaAction> doms, cods;
  for (const auto& f : factors) {
    doms.push_back(f.dom_action);
    cods.push_back(f.cod_action);
  }
  auto dom = product_presheaf(site, doms), cod = product_presheaf(site, cods);
  PresheafMap map{dom.presheaf, cod.presheaf, {}};
  for (auto mask : site.opens) {
    auto c = identity_functor(FiniteGroupoid::terminal());
    for (auto t : points_of(mask, site.num_points)) c = product_map(c, factors[t].map);
    map.components.push_back(std::move(c));
  }
  return {std::move(description), std::move(map), std::move(dom.action), std::move(cod.action)};
}

GammaAction small_factor(Sampler& s, std::string& description) {
  if (s.below(4) == 0) {
    description += " swap2";
    return set_as_groupoid(std::vector<std::uint32_t>{1, 0});
  }
  auto b = random_coset_block(s, 4);
  description += " " + b.describe();
  return coset_block_action(b);
}

std::size_t product_size(const std::vector<std::size_t>& sizes) {
  std::size_t p = 1;
  for (auto k : sizes) p *= k;
  return p;
}

// Shrinks the largest factors to the point until the full product fits.
template <class Size, class Shrink>
void fit_product(std::size_t n, std::size_t max_morphisms, Size size, Shrink shrink) {
  while (true) {
    std::vector<std::size_t> sizes;
    for (std::size_t t = 0; t < n; ++t) sizes.push_back(size(t));
    if (product_size(sizes) <= max_morphisms) return;
    shrink(static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin()));
  }
}

PresheafSample product_sample(Sampler& s, const FiniteSite& site, std::size_t max_morphisms) {
  std::vector<GammaAction> factors;
  std::vector<std::string> names;
  for (std::size_t t = 0; t < site.num_points; ++t) {
    std::string name;
    factors.push_back(small_factor(s, name));
    names.push_back(name);
  }
  fit_product(
      site.num_points, max_morphisms, [&](std::size_t t) { return factors[t].carrier.num_morphisms(); },
      [&](std::size_t t) {
        factors[t] = trivial_gamma_action(FiniteGroupoid::terminal());
        names[t] = " point";
      });
  std::string description = "product";
  for (const auto& n : names) description += n;
  auto p = product_presheaf(site, factors);
  return {description, std::move(p.presheaf), std::move(p.action)};
}

PresheafSample rank_sample(Sampler& s, const FiniteSite& site, std::size_t max_morphisms) {
  std::uint32_t subset = 0;
  while (subset == 0) subset = static_cast<std::uint32_t>(s.below(std::size_t{1} << site.num_points));
  const auto m = static_cast<std::size_t>(std::popcount(subset));
  GammaSample constant{"", trivial_gamma_action(FiniteGroupoid::discrete(0))};
  std::size_t budget = max_morphisms;
  if (s.coin()) {
    constant = random_gamma_groupoid(s, std::max<std::size_t>(1, max_morphisms / 4));
    budget -= constant.action.carrier.num_morphisms();
  }
  auto top = random_coset_block(s, budget);
  std::vector<std::vector<Elem>> chain(m + 1);
  chain[m] = top.subgroup;
  for (std::size_t k = m; k-- > 0;) chain[k] = random_superset(s, *top.involution, chain[k + 1]);
  std::vector<GammaAction> blocks;
  for (const auto& h : chain) {
    GammaAction parts[] = {coset_block_action({top.involution, h}), constant.action};
    blocks.push_back(coproduct_action(parts));
  }
  auto rank = [&](std::size_t u) { return static_cast<std::size_t>(std::popcount(site.opens[u] & subset)); };
  PresheafSample out;
  std::vector<FiniteGroupoid> sections;
  for (std::size_t u = 0; u < site.num_opens(); ++u) {
    out.action.sections.push_back(blocks[rank(u)]);
    sections.push_back(blocks[rank(u)].carrier);
  }
  out.presheaf = make_presheaf(site, sections, [&](std::size_t u, std::size_t v) {
    if (rank(u) == rank(v)) return identity_functor(sections[u]);
    GroupoidMap parts[] = {projection({top.involution, chain[rank(u)]}, chain[rank(v)]).map.map,
                           identity_functor(constant.action.carrier)};
    auto r = coproduct_map(parts);
    r.dom = sections[u];
    r.cod = sections[v];
    return r;
  });
  out.description = "rank " + top.describe() + (constant.description.empty() ? "" : " + " + constant.description);
  return out;
}

}  // namespace

PresheafSample random_presheaf(Sampler& s, const FiniteSite& site, std::size_t max_morphisms) {
  return s.coin() ? product_sample(s, site, max_morphisms) : rank_sample(s, site, max_morphisms);
}

PresheafMapSample random_presheaf_map(Sampler& s, const PresheafSample& x) {
  const auto& p = x.presheaf;
  std::vector<GroupoidMap> components;
  std::string what;
  switch (s.below(4)) {
    case 0:
      return {"identity", identity_presheaf_map(p), x.action, x.action};
    case 1: {
      auto f = to_terminal(p);
      return {"point", f, x.action, trivial_presheaf_action(f.cod)};
    }
    case 2:
      for (const auto& g : p.sections) components.push_back(codiscrete_reflection(g));
      what = "codiscrete";
      break;
    default:
      for (const auto& g : p.sections) components.push_back(components_map(g));
      what = "components";
  }
  auto f = image_presheaf(p, std::move(components));
  PresheafGammaAction cod;
  for (std::size_t u = 0; u < p.sections.size(); ++u)
    cod.sections.push_back(pushforward(x.action.sections[u], f.components[u]));
  return {what, std::move(f), x.action, std::move(cod)};
}

PresheafMapSample random_product_map(Sampler& s, const FiniteSite& site, std::size_t max_morphisms) {
  std::vector<MapSample> factors;
  for (std::size_t t = 0; t < site.num_points; ++t) {
    switch (s.below(3)) {
      case 0:
        factors.push_back(random_fibration(s, 4));
        break;
      case 1:
        factors.push_back(random_weak_equivalence(s, 4));
        break;
      default:
        factors.push_back(random_inclusion(s, 4));
    }
  }
  auto size = [&](std::size_t t) {
    return std::max(factors[t].map.map.dom.num_morphisms(), factors[t].map.map.cod.num_morphisms());
  };
  fit_product(site.num_points, max_morphisms, size, [&](std::size_t t) {
    auto pt = trivial_gamma_action(FiniteGroupoid::terminal());
    factors[t] = {"point", EquivariantMap{identity_functor(pt.carrier), pt, pt}};
  });
  std::vector<EquivariantMap> maps;
  std::string description = "product";
  for (const auto& f : factors) {
    maps.push_back(f.map);
    description += " [" + f.description + "]";
  }
  return product_map(site, maps, description);
}

PresheafMapSample random_discrete_map(Sampler& s, const FiniteSite& site) {
  std::vector<EquivariantMap> maps;
  std::string description = "sets";
  for (std::size_t t = 0; t < site.num_points; ++t) {
    // half the time a bijection, so that local isomorphisms occur
    const bool bijection = s.coin();
    const auto n = 1 + s.below(3), m = bijection ? n : 1 + s.below(3);
    auto dom = FiniteGroupoid::discrete(n), cod = FiniteGroupoid::discrete(m);
    std::vector<std::uint32_t> f;
    if (bijection) f = s.permutation(n);
    else
      for (std::size_t i = 0; i < n; ++i) f.push_back(static_cast<std::uint32_t>(s.below(m)));
    maps.push_back({GroupoidMap{dom, cod, f, f}, trivial_gamma_action(dom), trivial_gamma_action(cod)});
    description += " " + std::to_string(n) + "->" + std::to_string(m);
  }
  return product_map(site, maps, description);
}

}  // namespace hgrpd
