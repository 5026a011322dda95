// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace levymart {

/// One published formula checked against an independent computation.
struct AuditItem {
  std::string id;
  std::string published_form;
  std::string corrected_form;
  /// What decided the question.
  std::string oracle;
  bool published_agrees = false;
  bool corrected_agrees = false;
  nlohmann::json evidence = nlohmann::json::object();

  /// "published-confirmed", "published-corrected", or "undecided" when the
  /// oracle agrees with neither form.
  [[nodiscard]] std::string verdict() const;
};

/// Runs every audit item. Ids: tangent-recursion-index, case3-exponent,
/// moment-sensitivity-coefficient, cross-moment-coefficients,
/// yablonski-arguments, case-conditions, case1-density-constant,
/// trig-hyperbolic-closed-forms, case1-psi.
std::vector<AuditItem> formula_audit();

nlohmann::json to_json(const AuditItem& item);
/// {"items": [...], "all_decided": bool}.
nlohmann::json audit_report(const std::vector<AuditItem>& items);

}  // namespace levymart
