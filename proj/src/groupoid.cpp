#include "hgrpd/groupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "hgrpd/error.hpp"
#include "hgrpd/union_find.hpp"

namespace hgrpd {

struct FiniteGroupoid::Rep {
  std::size_t num_objects = 0;
  std::vector<ObjId> src, tgt;
  std::vector<MorId> identity, inverse;
  std::vector<MorId> out_list;
  std::vector<std::uint32_t> out_begin;
  std::vector<std::uint32_t> out_pos;
  std::vector<std::size_t> comp_offset;
  std::vector<MorId> comp;
  std::vector<std::uint32_t> component;
  std::vector<ObjId> representatives;
  std::vector<std::string> object_labels, morphism_labels;

  // Checks shape and builds the indices; comp is left undefined.
  void index() {
    const auto n_mor = src.size();
    if (tgt.size() != n_mor || inverse.size() != n_mor)
      throw InputError("groupoid tables: src, tgt and inverse must have one entry per morphism");
    if (identity.size() != num_objects)
      throw InputError("groupoid tables: identity must have one entry per object");
    for (std::size_t m = 0; m < n_mor; ++m) {
      if (src[m] >= num_objects || tgt[m] >= num_objects)
        throw InputError("morphism " + std::to_string(m) + " has an endpoint out of range");
      if (inverse[m] >= n_mor)
        throw InputError("inverse of morphism " + std::to_string(m) + " is out of range");
    }
    for (std::size_t x = 0; x < num_objects; ++x)
      if (identity[x] >= n_mor)
        throw InputError("identity of object " + std::to_string(x) + " is out of range");
    if (object_labels.empty())
      for (std::size_t x = 0; x < num_objects; ++x) object_labels.push_back("o" + std::to_string(x));
    if (morphism_labels.empty())
      for (std::size_t m = 0; m < n_mor; ++m) morphism_labels.push_back("m" + std::to_string(m));
    if (object_labels.size() != num_objects || morphism_labels.size() != n_mor)
      throw InputError("groupoid label count mismatch");

    out_list.resize(n_mor);
    std::iota(out_list.begin(), out_list.end(), MorId{0});
    std::sort(out_list.begin(), out_list.end(), [&](MorId a, MorId b) {
      if (src[a] != src[b]) return src[a] < src[b];
      if (tgt[a] != tgt[b]) return tgt[a] < tgt[b];
      return a < b;
    });
    out_begin.assign(num_objects + 1, 0);
    for (auto m : src) ++out_begin[m + 1];
    for (std::size_t x = 0; x < num_objects; ++x) out_begin[x + 1] += out_begin[x];
    out_pos.resize(n_mor);
    for (std::size_t i = 0; i < n_mor; ++i) out_pos[out_list[i]] = static_cast<std::uint32_t>(i - out_begin[src[out_list[i]]]);
    comp_offset.resize(n_mor + 1);
    comp_offset[0] = 0;
    for (std::size_t m = 0; m < n_mor; ++m) {
      auto t = tgt[m];
      comp_offset[m + 1] = comp_offset[m] + (out_begin[t + 1] - out_begin[t]);
    }
    comp.assign(comp_offset[n_mor], kNone);

    UnionFind uf(num_objects);
    for (std::size_t m = 0; m < n_mor; ++m) uf.unite(src[m], tgt[m]);
    std::uint32_t count = 0;
    component = uf.classes(&count);
    representatives.assign(count, kNone);
    for (ObjId x = 0; x < num_objects; ++x)
      if (representatives[component[x]] == kNone) representatives[component[x]] = x;
  }

  std::size_t slot(MorId first, MorId then) const {
    return comp_offset[first] + out_pos[then];
  }
};

FiniteGroupoid::FiniteGroupoid() {
  auto rep = std::make_shared<Rep>();
  rep->index();
  rep_ = std::move(rep);
}

FiniteGroupoid::FiniteGroupoid(const GroupoidTables& t) {
  auto rep = std::make_shared<Rep>();
  rep->num_objects = t.num_objects;
  rep->src = t.src;
  rep->tgt = t.tgt;
  rep->identity = t.identity;
  rep->inverse = t.inverse;
  rep->object_labels = t.object_labels;
  rep->morphism_labels = t.morphism_labels;
  rep->index();
  const auto n_mor = rep->src.size();
  for (const auto& [a, b, c] : t.composition) {
    if (a >= n_mor || b >= n_mor || c >= n_mor)
      throw InputError("composition triple refers to a morphism out of range");
    if (rep->tgt[a] != rep->src[b])
      throw InputError("composition triple on a non-composable pair (" + std::to_string(a) + ", " +
                       std::to_string(b) + ")");
    auto& slot = rep->comp[rep->slot(a, b)];
    if (slot != kNone && slot != c)
      throw InputError("conflicting composition triples for (" + std::to_string(a) + ", " +
                       std::to_string(b) + ")");
    slot = c;
  }
  rep_ = std::move(rep);
}

FiniteGroupoid::FiniteGroupoid(std::size_t num_objects, std::vector<ObjId> src,
                               std::vector<ObjId> tgt, std::vector<MorId> identity,
                               std::vector<MorId> inverse, const ComposeFn& compose,
                               std::vector<std::string> object_labels,
                               std::vector<std::string> morphism_labels) {
  auto rep = std::make_shared<Rep>();
  rep->num_objects = num_objects;
  rep->src = std::move(src);
  rep->tgt = std::move(tgt);
  rep->identity = std::move(identity);
  rep->inverse = std::move(inverse);
  rep->object_labels = std::move(object_labels);
  rep->morphism_labels = std::move(morphism_labels);
  rep->index();
  const auto n_mor = rep->src.size();
  for (MorId m = 0; m < n_mor; ++m) {
    auto t = rep->tgt[m];
    for (auto i = rep->out_begin[t]; i < rep->out_begin[t + 1]; ++i) {
      auto n = rep->out_list[i];
      auto c = compose(m, n);
      if (c != kNone && c >= n_mor) throw InputError("composite out of range");
      rep->comp[rep->slot(m, n)] = c;
    }
  }
  rep_ = std::move(rep);
}

FiniteGroupoid FiniteGroupoid::terminal() {
  return FiniteGroupoid(1, {0}, {0}, {0}, {0}, [](MorId, MorId) { return MorId{0}; }, {"*"},
                        {"id"});
}

FiniteGroupoid FiniteGroupoid::discrete(std::size_t n, std::vector<std::string> labels) {
  std::vector<ObjId> ends(n);
  std::iota(ends.begin(), ends.end(), ObjId{0});
  std::vector<std::string> mor_labels;
  if (!labels.empty())
    for (const auto& l : labels) mor_labels.push_back("id_" + l);
  return FiniteGroupoid(
      n, ends, ends, ends, ends, [](MorId a, MorId) { return a; }, std::move(labels),
      std::move(mor_labels));
}

FiniteGroupoid FiniteGroupoid::codiscrete(std::size_t n, std::vector<std::string> labels) {
  std::vector<ObjId> src(n * n), tgt(n * n);
  std::vector<MorId> identity(n), inverse(n * n);
  for (std::uint32_t x = 0; x < n; ++x) {
    identity[x] = static_cast<MorId>(x * n + x);
    for (std::uint32_t y = 0; y < n; ++y) {
      src[x * n + y] = x;
      tgt[x * n + y] = y;
      inverse[x * n + y] = static_cast<MorId>(y * n + x);
    }
  }
  const auto k = static_cast<MorId>(n);
  return FiniteGroupoid(
      n, std::move(src), std::move(tgt), std::move(identity), std::move(inverse),
      [k](MorId a, MorId b) { return (a / k) * k + b % k; }, std::move(labels));
}

std::size_t FiniteGroupoid::num_objects() const { return rep_->num_objects; }
std::size_t FiniteGroupoid::num_morphisms() const { return rep_->src.size(); }
ObjId FiniteGroupoid::src(MorId m) const { return rep_->src[m]; }
ObjId FiniteGroupoid::tgt(MorId m) const { return rep_->tgt[m]; }
MorId FiniteGroupoid::identity(ObjId x) const { return rep_->identity[x]; }
MorId FiniteGroupoid::inverse(MorId m) const { return rep_->inverse[m]; }

MorId FiniteGroupoid::compose(MorId first, MorId then) const {
  if (rep_->tgt[first] != rep_->src[then]) return kNone;
  return rep_->comp[rep_->slot(first, then)];
}

std::span<const MorId> FiniteGroupoid::out(ObjId x) const {
  const auto& r = *rep_;
  return std::span<const MorId>(r.out_list.data() + r.out_begin[x], r.out_begin[x + 1] - r.out_begin[x]);
}

std::span<const MorId> FiniteGroupoid::hom(ObjId x, ObjId y) const {
  auto o = out(x);
  const auto& tgt = rep_->tgt;
  auto lo = std::lower_bound(o.begin(), o.end(), y, [&](MorId m, ObjId v) { return tgt[m] < v; });
  auto hi = std::upper_bound(lo, o.end(), y, [&](ObjId v, MorId m) { return v < tgt[m]; });
  return o.subspan(static_cast<std::size_t>(lo - o.begin()), static_cast<std::size_t>(hi - lo));
}

std::size_t FiniteGroupoid::out_position(MorId m) const { return rep_->out_pos[m]; }
std::size_t FiniteGroupoid::num_components() const { return rep_->representatives.size(); }
std::uint32_t FiniteGroupoid::component(ObjId x) const { return rep_->component[x]; }
const std::vector<ObjId>& FiniteGroupoid::component_representatives() const {
  return rep_->representatives;
}
const std::string& FiniteGroupoid::object_label(ObjId x) const { return rep_->object_labels[x]; }
const std::string& FiniteGroupoid::morphism_label(MorId m) const {
  return rep_->morphism_labels[m];
}

GroupoidTables FiniteGroupoid::tables() const {
  const auto& r = *rep_;
  GroupoidTables t;
  t.num_objects = r.num_objects;
  t.src = r.src;
  t.tgt = r.tgt;
  t.identity = r.identity;
  t.inverse = r.inverse;
  t.object_labels = r.object_labels;
  t.morphism_labels = r.morphism_labels;
  for (MorId m = 0; m < r.src.size(); ++m)
    for (auto n : out(r.tgt[m])) {
      auto c = r.comp[r.slot(m, n)];
      if (c != kNone) t.composition.push_back({m, n, c});
    }
  return t;
}

bool operator==(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  if (a.same_as(b)) return true;
  const auto& x = *a.rep_;
  const auto& y = *b.rep_;
  return x.num_objects == y.num_objects && x.src == y.src && x.tgt == y.tgt &&
         x.identity == y.identity && x.inverse == y.inverse && x.comp == y.comp;
}

namespace {

// Keeps reports readable on badly broken input.
class ReportSink {
 public:
  explicit ReportSink(ValidationReport& report) : report_(report) {}
  void add(const std::string& axiom, std::string detail) {
    if (++counts_[axiom] <= kPerAxiom) report_.push_back({axiom, std::move(detail)});
  }

 private:
  static constexpr int kPerAxiom = 16;
  ValidationReport& report_;
  std::map<std::string, int> counts_;
};

std::string mor_name(const FiniteGroupoid& g, MorId m) {
  return g.morphism_label(m) + "#" + std::to_string(m);
}

}  // namespace

ValidationReport validate_groupoid(const FiniteGroupoid& g) {
  ValidationReport report;
  ReportSink sink(report);
  const auto n_mor = static_cast<MorId>(g.num_morphisms());
  for (ObjId x = 0; x < g.num_objects(); ++x) {
    auto id = g.identity(x);
    if (g.src(id) != x || g.tgt(id) != x)
      sink.add("identity-endpoints", "identity of " + g.object_label(x) + " is not an endomorphism of it");
  }
  for (MorId m = 0; m < n_mor; ++m)
    for (auto n : g.out(g.tgt(m))) {
      auto c = g.compose(m, n);
      if (c == kNone)
        sink.add("composition-total", mor_name(g, m) + " then " + mor_name(g, n) + " is undefined");
      else if (g.src(c) != g.src(m) || g.tgt(c) != g.tgt(n))
        sink.add("composition-endpoints",
                 mor_name(g, m) + " then " + mor_name(g, n) + " has the wrong endpoints");
    }
  for (MorId m = 0; m < n_mor; ++m) {
    auto left = g.compose(g.identity(g.src(m)), m);
    auto right = g.compose(m, g.identity(g.tgt(m)));
    if (left != m || right != m) sink.add("identity-law", "identities do not fix " + mor_name(g, m));
  }
  for (MorId a = 0; a < n_mor; ++a)
    for (auto b : g.out(g.tgt(a))) {
      auto ab = g.compose(a, b);
      if (ab == kNone) continue;
      for (auto c : g.out(g.tgt(b))) {
        auto bc = g.compose(b, c);
        if (bc == kNone) continue;
        auto lhs = g.compose(ab, c);
        auto rhs = g.compose(a, bc);
        if (lhs != rhs)
          sink.add("associativity", "(" + mor_name(g, a) + ", " + mor_name(g, b) + ", " +
                                        mor_name(g, c) + ")");
      }
    }
  for (MorId m = 0; m < n_mor; ++m) {
    auto i = g.inverse(m);
    bool ok = g.src(i) == g.tgt(m) && g.tgt(i) == g.src(m) &&
              g.compose(m, i) == g.identity(g.src(m)) && g.compose(i, m) == g.identity(g.tgt(m));
    if (!ok) sink.add("inverse", "listed inverse of " + mor_name(g, m) + " is not a two-sided inverse");
  }
  return report;
}

ValidationReport validate_functor(const GroupoidMap& f) {
  ValidationReport report;
  ReportSink sink(report);
  const auto& d = f.dom;
  const auto& c = f.cod;
  if (f.obj_map.size() != d.num_objects() || f.mor_map.size() != d.num_morphisms()) {
    sink.add("shape", "map tables do not match the domain");
    return report;
  }
  for (auto x : f.obj_map)
    if (x >= c.num_objects()) {
      sink.add("shape", "object image out of range");
      return report;
    }
  for (auto m : f.mor_map)
    if (m >= c.num_morphisms()) {
      sink.add("shape", "morphism image out of range");
      return report;
    }
  for (MorId m = 0; m < d.num_morphisms(); ++m) {
    auto fm = f.mor_map[m];
    if (c.src(fm) != f.obj_map[d.src(m)]) sink.add("source", "source of " + mor_name(d, m));
    if (c.tgt(fm) != f.obj_map[d.tgt(m)]) sink.add("target", "target of " + mor_name(d, m));
    if (f.mor_map[d.inverse(m)] != c.inverse(fm)) sink.add("inverse", "inverse of " + mor_name(d, m));
  }
  for (ObjId x = 0; x < d.num_objects(); ++x)
    if (f.mor_map[d.identity(x)] != c.identity(f.obj_map[x]))
      sink.add("identity", "identity of " + d.object_label(x));
  for (MorId a = 0; a < d.num_morphisms(); ++a)
    for (auto b : d.out(d.tgt(a))) {
      auto ab = d.compose(a, b);
      if (ab == kNone) continue;
      if (f.mor_map[ab] != c.compose(f.mor_map[a], f.mor_map[b]))
        sink.add("composition", mor_name(d, a) + " then " + mor_name(d, b));
    }
  return report;
}

GroupoidMap identity_functor(const FiniteGroupoid& g) {
  GroupoidMap f{g, g, std::vector<ObjId>(g.num_objects()), std::vector<MorId>(g.num_morphisms())};
  std::iota(f.obj_map.begin(), f.obj_map.end(), ObjId{0});
  std::iota(f.mor_map.begin(), f.mor_map.end(), MorId{0});
  return f;
}

GroupoidMap then(const GroupoidMap& f, const GroupoidMap& g) {
  if (!(f.cod == g.dom)) throw InputError("cannot compose maps: codomain and domain differ");
  GroupoidMap h{f.dom, g.cod, std::vector<ObjId>(f.obj_map.size()),
                std::vector<MorId>(f.mor_map.size())};
  for (std::size_t x = 0; x < f.obj_map.size(); ++x) h.obj_map[x] = g.obj_map[f.obj_map[x]];
  for (std::size_t m = 0; m < f.mor_map.size(); ++m) h.mor_map[m] = g.mor_map[f.mor_map[m]];
  return h;
}

GroupoidMap to_terminal(const FiniteGroupoid& g) {
  return GroupoidMap{g, FiniteGroupoid::terminal(), std::vector<ObjId>(g.num_objects(), 0),
                     std::vector<MorId>(g.num_morphisms(), 0)};
}

bool is_fibration(const GroupoidMap& f) {
  const auto& d = f.dom;
  const auto& c = f.cod;
  std::vector<std::uint32_t> stamp(c.num_morphisms(), kNone);
  for (ObjId x = 0; x < d.num_objects(); ++x) {
    std::size_t distinct = 0;
    for (auto b : d.out(x)) {
      auto a = f.mor_map[b];
      if (stamp[a] != x) {
        stamp[a] = x;
        ++distinct;
      }
    }
    if (distinct != c.out(f.obj_map[x]).size()) return false;
  }
  return true;
}

namespace {

// Per ordered pair (x, y) inside one domain component: whether the images of
// Hom(x, y) are pairwise distinct, and whether they exhaust Hom(fx, fy).
struct HomSetCheck {
  bool injective = true;
  bool surjective = true;
};

HomSetCheck check_hom_sets(const GroupoidMap& f) {
  const auto& d = f.dom;
  const auto& c = f.cod;
  HomSetCheck out;
  std::vector<std::uint64_t> stamp(c.num_morphisms(), UINT64_MAX);
  std::uint64_t round = 0;
  for (ObjId x = 0; x < d.num_objects(); ++x) {
    auto o = d.out(x);
    std::size_t i = 0;
    while (i < o.size()) {
      auto y = d.tgt(o[i]);
      ++round;
      std::size_t distinct = 0, j = i;
      for (; j < o.size() && d.tgt(o[j]) == y; ++j) {
        auto a = f.mor_map[o[j]];
        if (stamp[a] == round) {
          out.injective = false;
        } else {
          stamp[a] = round;
          ++distinct;
        }
      }
      if (distinct != c.hom(f.obj_map[x], f.obj_map[y]).size()) out.surjective = false;
      i = j;
    }
  }
  return out;
}

// Distinct domain components land in distinct codomain components.
bool injective_on_components(const GroupoidMap& f) {
  std::vector<std::uint32_t> seen(f.cod.num_components(), kNone);
  for (auto r : f.dom.component_representatives()) {
    auto k = f.cod.component(f.obj_map[r]);
    if (seen[k] != kNone) return false;
    seen[k] = r;
  }
  return true;
}

}  // namespace

bool is_full(const GroupoidMap& f) {
  return injective_on_components(f) && check_hom_sets(f).surjective;
}

bool is_faithful(const GroupoidMap& f) { return check_hom_sets(f).injective; }

bool is_essentially_surjective(const GroupoidMap& f) {
  std::vector<bool> hit(f.cod.num_components(), false);
  for (auto y : f.obj_map) hit[f.cod.component(y)] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool is_weak_equivalence(const GroupoidMap& f) {
  if (!is_essentially_surjective(f) || !injective_on_components(f)) return false;
  auto h = check_hom_sets(f);
  return h.injective && h.surjective;
}

bool is_isomorphism(const GroupoidMap& f) {
  if (f.dom.num_objects() != f.cod.num_objects() ||
      f.dom.num_morphisms() != f.cod.num_morphisms())
    return false;
  std::vector<bool> hit_o(f.cod.num_objects(), false), hit_m(f.cod.num_morphisms(), false);
  for (auto y : f.obj_map) {
    if (hit_o[y]) return false;
    hit_o[y] = true;
  }
  for (auto m : f.mor_map) {
    if (hit_m[m]) return false;
    hit_m[m] = true;
  }
  return true;
}

Rational groupoid_cardinality(const FiniteGroupoid& g) {
  Rational total(0);
  for (auto r : g.component_representatives())
    total += Rational(1, static_cast<std::int64_t>(g.hom(r, r).size()));
  return total;
}

Coproduct coproduct(std::span<const FiniteGroupoid> parts) {
  Coproduct out;
  std::size_t n_obj = 0, n_mor = 0;
  for (const auto& p : parts) {
    out.object_offset.push_back(static_cast<ObjId>(n_obj));
    out.morphism_offset.push_back(static_cast<MorId>(n_mor));
    n_obj += p.num_objects();
    n_mor += p.num_morphisms();
  }
  std::vector<ObjId> src, tgt;
  std::vector<MorId> identity, inverse;
  std::vector<std::uint32_t> part_of(n_mor);
  std::vector<std::string> olabels, mlabels;
  const bool prefix = parts.size() > 1;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    const auto oo = out.object_offset[i];
    const auto mo = out.morphism_offset[i];
    const auto tag = prefix ? std::to_string(i) + "/" : std::string();
    for (ObjId x = 0; x < p.num_objects(); ++x) {
      identity.push_back(mo + p.identity(x));
      olabels.push_back(tag + p.object_label(x));
    }
    for (MorId m = 0; m < p.num_morphisms(); ++m) {
      src.push_back(oo + p.src(m));
      tgt.push_back(oo + p.tgt(m));
      inverse.push_back(mo + p.inverse(m));
      part_of[mo + m] = static_cast<std::uint32_t>(i);
      mlabels.push_back(tag + p.morphism_label(m));
    }
  }
  auto offsets = out.morphism_offset;
  out.groupoid = FiniteGroupoid(
      n_obj, std::move(src), std::move(tgt), std::move(identity), std::move(inverse),
      [&](MorId a, MorId b) {
        auto i = part_of[a];
        auto c = parts[i].compose(a - offsets[i], b - offsets[i]);
        return c == kNone ? kNone : c + offsets[i];
      },
      std::move(olabels), std::move(mlabels));
  return out;
}

GroupoidMap coproduct_map(std::span<const GroupoidMap> parts) {
  std::vector<FiniteGroupoid> doms, cods;
  for (const auto& f : parts) {
    doms.push_back(f.dom);
    cods.push_back(f.cod);
  }
  auto d = coproduct(doms), c = coproduct(cods);
  GroupoidMap out{d.groupoid, c.groupoid, {}, {}};
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (auto x : parts[i].obj_map) out.obj_map.push_back(c.object_offset[i] + x);
    for (auto m : parts[i].mor_map) out.mor_map.push_back(c.morphism_offset[i] + m);
  }
  return out;
}

GroupoidMap fold(const FiniteGroupoid& g, std::size_t copies) {
  std::vector<FiniteGroupoid> parts(copies, g);
  GroupoidMap out{disjoint_union(parts), g, {}, {}};
  auto id = identity_functor(g);
  for (std::size_t i = 0; i < copies; ++i) {
    out.obj_map.insert(out.obj_map.end(), id.obj_map.begin(), id.obj_map.end());
    out.mor_map.insert(out.mor_map.end(), id.mor_map.begin(), id.mor_map.end());
  }
  return out;
}

FiniteGroupoid disjoint_union(std::span<const FiniteGroupoid> parts) {
  return coproduct(parts).groupoid;
}

FiniteGroupoid product(const FiniteGroupoid& g, const FiniteGroupoid& h) {
  const auto go = g.num_objects(), ho = h.num_objects();
  const auto gm = g.num_morphisms(), hm = h.num_morphisms();
  std::vector<ObjId> src(gm * hm), tgt(gm * hm);
  std::vector<MorId> identity(go * ho), inverse(gm * hm);
  std::vector<std::string> olabels(go * ho), mlabels(gm * hm);
  for (ObjId a = 0; a < go; ++a)
    for (ObjId b = 0; b < ho; ++b) {
      identity[a * ho + b] = static_cast<MorId>(g.identity(a) * hm + h.identity(b));
      olabels[a * ho + b] = "(" + g.object_label(a) + "," + h.object_label(b) + ")";
    }
  for (MorId a = 0; a < gm; ++a)
    for (MorId b = 0; b < hm; ++b) {
      auto m = a * hm + b;
      src[m] = static_cast<ObjId>(g.src(a) * ho + h.src(b));
      tgt[m] = static_cast<ObjId>(g.tgt(a) * ho + h.tgt(b));
      inverse[m] = static_cast<MorId>(g.inverse(a) * hm + h.inverse(b));
      mlabels[m] = "(" + g.morphism_label(a) + "," + h.morphism_label(b) + ")";
    }
  const auto k = static_cast<MorId>(hm);
  return FiniteGroupoid(
      go * ho, std::move(src), std::move(tgt), std::move(identity), std::move(inverse),
      [&](MorId x, MorId y) {
        auto a = g.compose(x / k, y / k);
        auto b = h.compose(x % k, y % k);
        return (a == kNone || b == kNone) ? kNone : a * k + b;
      },
      std::move(olabels), std::move(mlabels));
}

GroupoidMap product_map(const GroupoidMap& f, const GroupoidMap& g) {
  GroupoidMap out{product(f.dom, g.dom), product(f.cod, g.cod), {}, {}};
  for (auto a : f.obj_map)
    for (auto b : g.obj_map) out.obj_map.push_back(static_cast<ObjId>(a * g.cod.num_objects() + b));
  for (auto a : f.mor_map)
    for (auto b : g.mor_map) out.mor_map.push_back(static_cast<MorId>(a * g.cod.num_morphisms() + b));
  return out;
}

GroupoidMap relabel(const FiniteGroupoid& g, std::span<const ObjId> obj_perm, std::span<const MorId> mor_perm) {
  const auto n = g.num_objects(), m = g.num_morphisms();
  auto is_perm = [](auto perm, std::size_t size) {
    if (perm.size() != size) return false;
    std::vector<bool> seen(size, false);
    for (auto v : perm) {
      if (v >= size || seen[v]) return false;
      seen[v] = true;
    }
    return true;
  };
  if (!is_perm(obj_perm, n) || !is_perm(mor_perm, m)) throw InputError("relabel needs permutations of the ids");
  GroupoidTables t;
  t.num_objects = n;
  t.src.resize(m);
  t.tgt.resize(m);
  t.inverse.resize(m);
  t.identity.resize(n);
  t.object_labels.resize(n);
  t.morphism_labels.resize(m);
  for (ObjId x = 0; x < n; ++x) {
    t.identity[obj_perm[x]] = mor_perm[g.identity(x)];
    t.object_labels[obj_perm[x]] = g.object_label(x);
  }
  for (MorId a = 0; a < m; ++a) {
    t.src[mor_perm[a]] = obj_perm[g.src(a)];
    t.tgt[mor_perm[a]] = obj_perm[g.tgt(a)];
    t.inverse[mor_perm[a]] = mor_perm[g.inverse(a)];
    t.morphism_labels[mor_perm[a]] = g.morphism_label(a);
    for (auto b : g.out(g.tgt(a))) t.composition.push_back({mor_perm[a], mor_perm[b], mor_perm[g.compose(a, b)]});
  }
  return GroupoidMap{g, FiniteGroupoid(t), {obj_perm.begin(), obj_perm.end()}, {mor_perm.begin(), mor_perm.end()}};
}

GroupoidMap full_subgroupoid_inclusion(const FiniteGroupoid& g, std::vector<ObjId> objects) {
  std::sort(objects.begin(), objects.end());
  objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
  std::vector<ObjId> local(g.num_objects(), kNone);
  for (ObjId i = 0; i < objects.size(); ++i) {
    if (objects[i] >= g.num_objects()) throw InputError("subgroupoid object out of range");
    local[objects[i]] = i;
  }
  std::vector<MorId> mors, local_mor(g.num_morphisms(), kNone);
  for (MorId m = 0; m < g.num_morphisms(); ++m)
    if (local[g.src(m)] != kNone && local[g.tgt(m)] != kNone) {
      local_mor[m] = static_cast<MorId>(mors.size());
      mors.push_back(m);
    }
  std::vector<ObjId> src, tgt;
  std::vector<MorId> identity, inverse;
  std::vector<std::string> olabels, mlabels;
  for (auto x : objects) {
    identity.push_back(local_mor[g.identity(x)]);
    olabels.push_back(g.object_label(x));
  }
  for (auto m : mors) {
    src.push_back(local[g.src(m)]);
    tgt.push_back(local[g.tgt(m)]);
    inverse.push_back(local_mor[g.inverse(m)]);
    mlabels.push_back(g.morphism_label(m));
  }
  FiniteGroupoid sub(
      objects.size(), std::move(src), std::move(tgt), std::move(identity), std::move(inverse),
      [&](MorId a, MorId b) {
        auto c = g.compose(mors[a], mors[b]);
        return c == kNone ? kNone : local_mor[c];
      },
      std::move(olabels), std::move(mlabels));
  return GroupoidMap{sub, g, std::move(objects), std::move(mors)};
}

GroupoidMap codiscrete_reflection(const FiniteGroupoid& g) {
  const auto n = g.num_objects();
  // morphism id of the unique arrow x -> y, for x, y in one component
  std::map<std::pair<ObjId, ObjId>, MorId> index;
  std::vector<ObjId> src, tgt;
  std::vector<std::vector<ObjId>> members(g.num_components());
  for (ObjId x = 0; x < n; ++x) members[g.component(x)].push_back(x);
  for (ObjId x = 0; x < n; ++x)
    for (auto y : members[g.component(x)]) {
      index[{x, y}] = static_cast<MorId>(src.size());
      src.push_back(x);
      tgt.push_back(y);
    }
  std::vector<MorId> identity(n), inverse(src.size());
  std::vector<std::string> olabels, mlabels;
  for (ObjId x = 0; x < n; ++x) {
    identity[x] = index.at({x, x});
    olabels.push_back(g.object_label(x));
  }
  for (MorId m = 0; m < src.size(); ++m) {
    inverse[m] = index.at({tgt[m], src[m]});
    mlabels.push_back(g.object_label(src[m]) + "->" + g.object_label(tgt[m]));
  }
  auto s = src, t = tgt;
  FiniteGroupoid cod(
      n, std::move(src), std::move(tgt), std::move(identity), std::move(inverse),
      [&](MorId a, MorId b) { return index.at({s[a], t[b]}); }, std::move(olabels),
      std::move(mlabels));
  GroupoidMap f{g, cod, std::vector<ObjId>(n), std::vector<MorId>(g.num_morphisms())};
  std::iota(f.obj_map.begin(), f.obj_map.end(), ObjId{0});
  for (MorId m = 0; m < g.num_morphisms(); ++m) f.mor_map[m] = index.at({g.src(m), g.tgt(m)});
  return f;
}

GroupoidMap components_map(const FiniteGroupoid& g) {
  std::vector<std::string> labels;
  for (auto r : g.component_representatives()) labels.push_back("[" + g.object_label(r) + "]");
  auto cod = FiniteGroupoid::discrete(g.num_components(), std::move(labels));
  GroupoidMap f{g, cod, std::vector<ObjId>(g.num_objects()), std::vector<MorId>(g.num_morphisms())};
  for (ObjId x = 0; x < g.num_objects(); ++x) f.obj_map[x] = g.component(x);
  for (MorId m = 0; m < g.num_morphisms(); ++m) f.mor_map[m] = g.component(g.src(m));
  return f;
}

}  // namespace hgrpd
