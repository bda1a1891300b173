#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "hgrpd/cohomology.hpp"
#include "hgrpd/colimit.hpp"
#include "hgrpd/gamma.hpp"
#include "hgrpd/group.hpp"
#include "hgrpd/presheaf.hpp"
#include "hgrpd/twisted.hpp"

namespace hgrpd {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Parses a file. Throws InputError when it cannot be read or parsed.
Json read_json_file(const std::filesystem::path& path);
/// The "kind" of a document after checking "schema". Throws InputError.
std::string document_kind(const Json& j);

// Every *_from_json throws InputError on malformed input: missing fields,
// wrong types, ids out of range. Structural axioms are left to the
// validate_* functions unless noted.

/// {"objects": [label...], "morphisms": [{"id", "src", "tgt", "inverse",
/// "label"?}...], "identities": [morphism per object],
/// "composition": [[first, then, result]...]}. Objects may be referred to by
/// index or by label.
FiniteGroupoid groupoid_from_json(const Json& j);
Json to_json(const FiniteGroupoid& g);

/// {"catalog": name}, {"degree": n, "generators": [[images of 0..n-1]...]},
/// or {"labels": [...], "table": [[row]...]}, where row a lists the products
/// "a times b". Throws InvalidStructure when the table is not a group.
FiniteGroup group_from_json(const Json& j);
Json to_json(const FiniteGroup& g);
/// Elements by id or by label.
std::vector<Elem> elements_from_json(const FiniteGroup& g, const Json& j);

/// {"objects": [x̄ per object], "morphisms": [ᾱ per morphism]}, with an
/// optional embedded "groupoid" that takes precedence over `carrier`.
GammaAction gamma_action_from_json(const Json& j, const std::optional<FiniteGroupoid>& carrier = std::nullopt);
Json to_json(const GammaAction& a, bool embed_groupoid = true);

/// {"group": ..., "theta": [θ(g) per element]}; also used for bar in H¹.
GroupGammaAction group_involution_from_json(const Json& j, const std::optional<FiniteGroup>& group = std::nullopt);
/// {"group"?: ..., "elements": [...]}
std::vector<Elem> subgroup_from_json(const Json& j, const FiniteGroup& group);

/// {"index": {...}, "nodes": [{"groupoid", "action"?}...], "arrows":
/// [{"arrow" | "src" + "tgt", "objects", "morphisms"}...]}. The index is
/// either {"poset": {"size", "covers"}} or {"objects", "arrows": [{"src",
/// "tgt"}...], "identities", "composition"}. Identity arrows may be omitted.
struct LoadedDiagram {
  GroupoidDiagram diagram;
  std::optional<GammaDiagram> gamma;  ///< when every node carries an action
};

LoadedDiagram diagram_from_json(const Json& j);
Json to_json(const IndexCategory& c);
Json to_json(const GammaDiagram& d);

/// {"points": [label...], "opens": [[point label...]...]}
FiniteSite site_from_json(const Json& j);
Json to_json(const FiniteSite& s);

/// {"site", "sections": [{"open", "groupoid", "action"?}...], "restrictions":
/// [{"from", "to", "objects", "morphisms"}...]}. Every proper inclusion needs
/// a restriction; identities may be omitted.
struct LoadedPresheaf {
  GroupoidPresheaf presheaf;
  std::optional<PresheafGammaAction> action;  ///< when every section carries one
};

LoadedPresheaf presheaf_from_json(const Json& j);
Json to_json(const GroupoidPresheaf& x, const std::optional<PresheafGammaAction>& a = std::nullopt);

/// Objects as nodes, non-identity morphisms as labelled edges.
std::string to_dot(const FiniteGroupoid& g, const std::string& name = "G");

}  // namespace hgrpd
