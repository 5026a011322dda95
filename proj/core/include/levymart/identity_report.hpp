// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levymart/multipoly.hpp"

namespace levymart {

/// One instance of an exact identity: `residual` is lhs - rhs and must be the
/// zero polynomial for `pass`.
struct IdentityCheck {
  int index = 0;
  std::string label;
  bool pass = false;
  MultiPoly residual;
};

struct IdentityReport {
  std::string identity;
  std::vector<IdentityCheck> checks;

  [[nodiscard]] bool all_pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }

  [[nodiscard]] std::optional<int> first_failure() const {
    for (const auto& c : checks) {
      if (!c.pass) return c.index;
    }
    return std::nullopt;
  }

  void record(int index, MultiPoly residual, std::string label = {}) {
    const bool ok = residual.is_zero();
    checks.push_back(IdentityCheck{index, std::move(label), ok, std::move(residual)});
  }
};

}  // namespace levymart
