#pragma once

#include <cstddef>
#include <optional>
#include <string>

namespace collapse {

/// Outcome of a property suite: how many instances were checked and the
/// first counterexample, if any.
struct CheckReport {
  std::string name;
  std::size_t checks = 0;
  std::optional<std::string> violation;

  bool ok() const { return !violation; }
  std::string summary() const {
    std::string s = name + ": " + (ok() ? "pass" : "FAIL") + " (" + std::to_string(checks) + " checks)";
    if (violation) s += ": " + *violation;
    return s;
  }
};

}  // namespace collapse
