#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hgrpd/io.hpp"

namespace hgrpd {

/// One checked property: how many instances were checked, how many failed,
/// and a description of the first failure.
struct PropertyResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first_failure;

  bool passed() const { return checked > 0 && failed == 0; }
  void record(bool ok, const std::string& description);
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t size = 0;
  std::vector<PropertyResult> properties;

  bool passed() const;
};

inline constexpr std::uint64_t kDefaultSeed = 1;
inline constexpr std::size_t kDefaultSize = 50;
/// Morphism bound for randomly generated groupoids.
inline constexpr std::size_t kRandomMorphisms = 60;

/// iota-fibration, hfp-fibration, hfp-weak-equivalence, swap,
/// bg-decomposition, parameter-space, colimit, stalk.
const std::vector<std::string>& suite_names();

/// Runs one suite on `size` random instances drawn from `seed`, plus its
/// fixed fixtures and controls. Throws InputError on an unknown name.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t size);

/// Aligned plain text; no timings, so equal inputs give equal bytes.
std::string format_report(const SuiteReport& r);
Json to_json(const SuiteReport& r);

}  // namespace hgrpd
