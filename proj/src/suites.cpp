#include "hgrpd/suites.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "hgrpd/cohomology.hpp"
#include "hgrpd/error.hpp"
#include "hgrpd/fixtures.hpp"
#include "hgrpd/random.hpp"

namespace hgrpd {

void PropertyResult::record(bool ok, const std::string& description) {
  ++checked;
  if (ok) return;
  if (failed++ == 0) first_failure = description;
}

bool SuiteReport::passed() const {
  return !properties.empty() &&
         std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.passed(); });
}

namespace {

SuiteReport make_report(std::string suite, std::uint64_t seed, std::size_t size, std::vector<std::string> names) {
  SuiteReport r{std::move(suite), seed, size, {}};
  for (auto& n : names) r.properties.push_back(PropertyResult{std::move(n), 0, 0, {}});
  return r;
}

// Runs fn and records an exception as a failure of `p`.
template <class Fn>
void checked(PropertyResult& p, const std::string& description, Fn fn) {
  try {
    p.record(fn(), description);
  } catch (const std::exception& e) {
    p.record(false, description + ": " + e.what());
  }
}

SuiteReport iota_fibration(std::uint64_t seed, std::size_t size) {
  auto r = make_report("iota-fibration", seed, size, {"iota-is-fibration", "fixed-points-valid"});
  Sampler s(seed);
  for (std::size_t i = 0; i < size; ++i) {
    auto g = random_gamma_groupoid(s, kRandomMorphisms);
    auto h = hfp(g.action);
    checked(r.properties[0], g.description, [&] { return is_fibration(iota(h)); });
    checked(r.properties[1], g.description, [&] { return validate_groupoid(h.groupoid).empty(); });
  }
  return r;
}

// The point into B(Z/2) with the trivial action: neither the map nor its
// fixed points are fibrations.
EquivariantMap point_into_bz2() {
  auto b = build_bg(FiniteGroup::cyclic(2));
  auto pt = FiniteGroupoid::terminal();
  return {GroupoidMap{pt, b, {0}, {0}}, trivial_gamma_action(pt), trivial_gamma_action(b)};
}

SuiteReport hfp_fibration(std::uint64_t seed, std::size_t size) {
  auto r = make_report("hfp-fibration", seed, size, {"input-is-fibration", "fixed-points-preserve-fibrations", "control-non-fibration-detected"});
  Sampler s(seed);
  for (std::size_t i = 0; i < size; ++i) {
    auto m = random_fibration(s, kRandomMorphisms);
    checked(r.properties[0], m.description, [&] { return is_fibration(m.map.map); });
    checked(r.properties[1], m.description, [&] { return is_fibration(hfp_map(m.map)); });
  }
  // the control passes when some non-fibration has a non-fibration as its
  // fixed-point map; the fixed instance always qualifies
  auto& control = r.properties[2];
  std::size_t found = 0, inputs = 0;
  auto look = [&](const EquivariantMap& f) {
    if (is_fibration(f.map)) return;
    ++inputs;
    found += !is_fibration(hfp_map(f));
  };
  look(point_into_bz2());
  for (std::size_t i = 0; i < size; ++i) look(random_inclusion(s, kRandomMorphisms).map);
  control.record(found > 0, "no non-fibration among " + std::to_string(inputs) + " inputs kept failing");
  return r;
}

SuiteReport hfp_weak_equivalence(std::uint64_t seed, std::size_t size) {
  auto r = make_report("hfp-weak-equivalence", seed, size, {"input-is-weak-equivalence", "fixed-points-preserve-weak-equivalences"});
  Sampler s(seed);
  for (std::size_t i = 0; i < size; ++i) {
    auto m = random_weak_equivalence(s, kRandomMorphisms);
    checked(r.properties[0], m.description, [&] { return is_weak_equivalence(m.map.map); });
    checked(r.properties[1], m.description, [&] { return is_weak_equivalence(hfp_map(m.map)); });
  }
  return r;
}

SuiteReport swap(std::uint64_t seed, std::size_t size) {
  auto r = make_report("swap", seed, size, {"swap-comparison-is-weak-equivalence", "cardinality-preserved"});
  auto check = [&](const std::string& name, const FiniteGroupoid& x) {
    auto c = swap_comparison(x);
    checked(r.properties[0], name, [&] { return c.weak_equivalence; });
    checked(r.properties[1], name,
            [&] { return groupoid_cardinality(x) == groupoid_cardinality(c.fixed_points.groupoid); });
  };
  for (const auto& [name, x] : groupoid_corpus()) check(name, x);
  Sampler s(seed);
  for (std::size_t i = 0; i < size; ++i) {
    auto g = random_gamma_groupoid(s, 16);
    check(g.description, g.action.carrier);
  }
  return r;
}

std::vector<NamedGroupInvolution> all_group_involutions() {
  auto out = group_involution_corpus();
  for (const auto& inv : involution_catalog()) out.push_back({inv.name, GroupGammaAction{inv.group, inv.theta}});
  return out;
}

SuiteReport bg_decomposition(std::uint64_t seed, std::size_t size) {
  auto r = make_report("bg-decomposition", seed, size, {"decomposition-is-weak-equivalence",
                 "cocycles-match-fixed-point-objects",
                 "classes-match-components",
                 "stabilizers-match-automorphisms"});
  for (const auto& [name, a] : all_group_involutions()) {
    auto d = bg_hfp_decomposition(a);
    auto h = hfp(bg_gamma_action(a));
    checked(r.properties[0], name, [&] { return d.weak_equivalence; });
    checked(r.properties[1], name, [&] { return z1(a).size() == h.objects.size(); });
    checked(r.properties[2], name, [&] { return h1(a).size() == h.groupoid.num_components(); });
    checked(r.properties[3], name, [&] {
      for (const auto& c : h1(a)) {
        auto o = h.find({0, c.representative});
        if (!o || c.stabilizer.elements.size() != h.groupoid.hom(*o, *o).size()) return false;
      }
      return true;
    });
  }
  return r;
}

SuiteReport parameter_space(std::uint64_t seed, std::size_t size) {
  auto r = make_report("parameter-space", seed, size, {"xy-isomorphism", "parameter-map-is-acyclic-fibration", "sectionwise-over-sierpinski"});
  auto check = [&](const std::string& name, const InvolutiveGroupData& d) {
    auto pf = parameter_fibration(d);
    checked(r.properties[0], name, [&] { return pf.xy.mutually_inverse && pf.xy.equivariant; });
    checked(r.properties[1], name, [&] { return pf.acyclic(); });
  };
  for (const auto& n : involutive_data_corpus()) {
    check(n.name, n.data);
    checked(r.properties[2], n.name, [&] {
      return parameter_fibration_presheaf(constant_involutive_presheaf(FiniteSite::sierpinski(), n.data)).acyclic();
    });
  }
  Sampler s(seed);
  std::vector<std::pair<const Involution*, const std::vector<Elem>*>> triples;
  for (const auto& inv : involution_catalog())
    for (const auto& b : inv.stable_subgroups)
      if (b.size() * b.size() * inv.group.order() <= 576) triples.push_back({&inv, &b});
  for (std::size_t i = 0; i < size; ++i) {
    auto [inv, b] = s.pick(triples);
    std::string name = inv->name + "/B" + std::to_string(b->size());
    check(name, InvolutiveGroupData{inv->group, inv->theta, *b});
  }
  return r;
}

SuiteReport colimit_suite(std::uint64_t seed, std::size_t size) {
  auto r = make_report("colimit", seed, size, {"index-is-filtered",
                 "fixed-points-commute-with-colimit",
                 "control-coequalizer-not-filtered",
                 "control-coequalizer-comparison-fails",
                 "control-coproduct-comparison-holds"});
  Sampler s(seed);
  for (std::size_t i = 0; i < size; ++i) {
    auto d = random_filtered_diagram(s, 48);
    checked(r.properties[0], d.description, [&] { return !filtered_witness(d.diagram.index); });
    checked(r.properties[1], d.description, [&] { return hfp_colimit_comparison(d.diagram).isomorphism; });
  }
  auto coeq = coequalizer_control();
  checked(r.properties[2], "coequalizer", [&] { return filtered_witness(coeq.index).has_value(); });
  checked(r.properties[3], "coequalizer", [&] { return !objectwise_hfp_colimit_comparison(coeq).isomorphism; });
  checked(r.properties[4], "coproduct", [&] { return objectwise_hfp_colimit_comparison(coproduct_control()).isomorphism; });
  return r;
}

SuiteReport stalk_suite(std::uint64_t seed, std::size_t size) {
  auto r = make_report("stalk", seed, size, {"stalk-is-minimal-section",
                 "fixed-points-commute-with-stalks",
                 "iota-is-sectionwise-fibration",
                 "sectionwise-implies-local",
                 "control-local-not-sectionwise"});
  auto points = [&](const std::string& name, const GroupoidPresheaf& x, const PresheafGammaAction& a) {
    for (std::uint32_t t = 0; t < x.site.num_points; ++t) {
      auto at = name + " at " + x.site.point_labels[t];
      checked(r.properties[0], at, [&] { return stalk_computation(x, t).matches_minimal_open; });
      checked(r.properties[1], at, [&] { return stalk_commutation_check(x, a, t).isomorphism; });
    }
    checked(r.properties[2], name, [&] { return is_sectionwise_fib(presheaf_hfp(x, a).iota); });
  };
  auto implication = [&](const std::string& name, const PresheafMap& f) {
    checked(r.properties[3], name, [&] {
      return (!is_sectionwise_weq(f) || is_local_weq(f)) && (!is_sectionwise_fib(f) || is_local_fib(f));
    });
  };
  for (const auto& n : presheaf_corpus()) points(n.name, n.presheaf, n.action);
  Sampler s(seed);
  for (std::size_t i = 0; i < size; ++i) {
    auto site = random_site(s, 2, 5);
    auto x = random_presheaf(s, site, 64);
    auto name = std::to_string(site.num_points) + " points, " + x.description;
    points(name, x.presheaf, x.action);
    auto f = random_presheaf_map(s, x);
    implication(name + " -> " + f.description, f.map);
    auto g = random_product_map(s, site, 64);
    implication(g.description, g.map);
  }
  for (const auto& m : local_not_sectionwise_corpus())
    checked(r.properties[4], m.name, [&] { return is_local_weq(m.map) && !is_sectionwise_weq(m.map); });
  return r;
}

using SuiteFn = SuiteReport (*)(std::uint64_t, std::size_t);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites{
      {"iota-fibration", iota_fibration}, {"hfp-fibration", hfp_fibration},
      {"hfp-weak-equivalence", hfp_weak_equivalence}, {"swap", swap},
      {"bg-decomposition", bg_decomposition}, {"parameter-space", parameter_space},
      {"colimit", colimit_suite}, {"stalk", stalk_suite},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t size) {
  for (const auto& [n, fn] : registry())
    if (n == name) return fn(seed, size);
  throw InputError("unknown suite \"" + name + "\"");
}

std::string format_report(const SuiteReport& r) {
  std::size_t width = 0;
  for (const auto& p : r.properties) width = std::max(width, p.name.size());
  std::ostringstream out;
  out << "suite " << r.suite << " seed=" << r.seed << " size=" << r.size << "\n";
  for (const auto& p : r.properties) {
    out << "  " << (p.passed() ? "PASS" : "FAIL") << "  " << p.name << std::string(width - p.name.size() + 2, ' ')
        << (p.checked - p.failed) << "/" << p.checked << "\n";
    if (p.failed) out << "        first failure: " << p.first_failure << "\n";
  }
  out << "result " << (r.passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

Json to_json(const SuiteReport& r) {
  Json properties = Json::array();
  for (const auto& p : r.properties) {
    Json entry{{"name", p.name}, {"checked", p.checked}, {"failed", p.failed}, {"passed", p.passed()}};
    if (p.failed) entry["first_failure"] = p.first_failure;
    properties.push_back(entry);
  }
  return Json{{"schema", kSchemaVersion}, {"kind", "suite-report"}, {"suite", r.suite}, {"seed", r.seed},
              {"size", r.size}, {"properties", properties}, {"passed", r.passed()}};
}

}  // namespace hgrpd
