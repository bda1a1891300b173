#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace hgrpd {

/// One violated axiom; `axiom` is a stable short name, `detail` names the witness.
struct Violation {
  std::string axiom;
  std::string detail;
};

using ValidationReport = std::vector<Violation>;

inline bool has_violation(const ValidationReport& report, std::string_view axiom) {
  return std::any_of(report.begin(), report.end(),
                     [&](const Violation& v) { return v.axiom == axiom; });
}

}  // namespace hgrpd
