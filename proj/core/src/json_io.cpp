// SPDX-License-Identifier: Apache-2.0
#include "levymart/json_io.hpp"

#include "levymart/errors.hpp"

namespace levymart {

nlohmann::json to_json(const MultiPoly& poly) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [exps, coef] : poly.terms()) {
    terms.push_back({{"exp", exps}, {"coef", coef.to_string()}});
  }
  return {{"variables", poly.variables()}, {"terms", std::move(terms)}};
}

MultiPoly multipoly_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("variables") || !doc.contains("terms")) {
    throw InvalidArgument("polynomial JSON needs 'variables' and 'terms'");
  }
  try {
    const auto variables = doc.at("variables").get<std::vector<std::string>>();
    MultiPoly::TermMap terms;
    for (const auto& term : doc.at("terms")) {
      auto exps = term.at("exp").get<MultiPoly::Exponents>();
      const Rational coef = rational_from_json(term.at("coef"));
      if (!terms.emplace(std::move(exps), coef).second) {
        throw InvalidArgument("polynomial JSON repeats an exponent vector");
      }
    }
    return MultiPoly::from_terms(variables, terms);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("polynomial JSON: ") + e.what());
  }
}

nlohmann::json to_json(const Rational& value) { return value.to_string(); }

Rational rational_from_json(const nlohmann::json& value) {
  if (value.is_string()) return Rational::parse(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<long>());
  throw InvalidArgument("expected a rational string \"p/q\" or an integer, got " + value.dump());
}

SpecConfig spec_config_from_json(const nlohmann::json& doc, int order) {
  if (!doc.is_object()) throw InvalidArgument("config must be a JSON object");
  const bool has_cumulants = doc.contains("cumulants");
  const bool has_measure = doc.contains("c1") || doc.contains("sigma2") || doc.contains("atoms");
  if (has_cumulants == has_measure) {
    throw InvalidArgument("config needs exactly one of \"cumulants\" or {\"c1\", \"sigma2\", \"atoms\"}");
  }
  try {
    if (has_cumulants) {
      const nlohmann::json& list = doc.at("cumulants");
      if (!list.is_array()) throw InvalidArgument("\"cumulants\" must be an array");
      std::vector<Rational> c;
      for (const nlohmann::json& v : list) c.push_back(rational_from_json(v));
      return SpecConfig{CumulantSpec(std::move(c)), std::nullopt};
    }
    std::vector<Atom> atoms;
    if (doc.contains("atoms")) {
      for (const nlohmann::json& a : doc.at("atoms")) {
        atoms.push_back(Atom{rational_from_json(a.at("y")), rational_from_json(a.at("w"))});
      }
    }
    const Rational c1 = doc.contains("c1") ? rational_from_json(doc.at("c1")) : Rational(0);
    const Rational sigma2 = doc.contains("sigma2") ? rational_from_json(doc.at("sigma2")) : Rational(0);
    KolmogorovMeasure m(sigma2, std::move(atoms), c1);
    CumulantSpec spec = cumulants_from_measure(m, order);
    return SpecConfig{std::move(spec), std::move(m)};
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("config JSON: ") + e.what());
  }
}

}  // namespace levymart
