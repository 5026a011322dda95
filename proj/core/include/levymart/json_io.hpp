// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include <nlohmann/json.hpp>

#include "levymart/cumulant_model.hpp"

#include "levymart/multipoly.hpp"
#include "levymart/rational.hpp"

namespace levymart {

/// {"variables": [...], "terms": [{"exp": [...], "coef": "p/q"}, ...]}
nlohmann::json to_json(const MultiPoly& poly);
/// Inverse of to_json(MultiPoly); throws InvalidArgument on schema violations.
MultiPoly multipoly_from_json(const nlohmann::json& doc);

/// Rationals cross JSON boundaries as "p/q" strings.
nlohmann::json to_json(const Rational& value);
/// Accepts "p/q" / "p" strings and JSON integers.
Rational rational_from_json(const nlohmann::json& value);

/// A parsed CLI config. `measure` is set for the measure form, in which case
/// `spec` holds its first `order` cumulants.
struct SpecConfig {
  CumulantSpec spec;
  std::optional<KolmogorovMeasure> measure;
};

/// Either {"cumulants": ["p/q", ...]} (c_1 first) or
/// {"c1": "p/q", "sigma2": "p/q", "atoms": [{"y": "p/q", "w": "p/q"}, ...]};
/// exactly one form. Throws InvalidArgument otherwise.
SpecConfig spec_config_from_json(const nlohmann::json& doc, int order = 12);

}  // namespace levymart
