// SPDX-License-Identifier: Apache-2.0
#include "levymart/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "levymart/errors.hpp"

namespace levymart {

namespace {

std::vector<std::string> normalized(std::vector<std::string> variables) {
  std::sort(variables.begin(), variables.end());
  if (std::adjacent_find(variables.begin(), variables.end()) != variables.end()) {
    throw InvalidArgument("duplicate variable name in polynomial variable list");
  }
  for (const auto& v : variables) {
    if (v.empty()) throw InvalidArgument("empty variable name");
  }
  return variables;
}

}  // namespace

MultiPoly::MultiPoly(std::vector<std::string> variables) : variables_(normalized(std::move(variables))) {}

MultiPoly MultiPoly::constant(std::vector<std::string> variables, const Rational& value) {
  MultiPoly p(std::move(variables));
  p.add_term(Exponents(p.variables_.size(), 0), value);
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> variables, std::string_view name) {
  MultiPoly p(std::move(variables));
  Exponents e(p.variables_.size(), 0);
  e[p.index_of(name)] = 1;
  p.add_term(e, Rational(1));
  return p;
}

MultiPoly MultiPoly::monomial(std::vector<std::string> variables, const Exponents& exponents, const Rational& coef) {
  MultiPoly p(std::move(variables));
  if (exponents.size() != p.variables_.size()) {
    throw InvalidArgument("exponent vector length does not match the variable list");
  }
  p.add_term(exponents, coef);
  return p;
}

MultiPoly MultiPoly::from_terms(std::vector<std::string> variables, const TermMap& terms) {
  // Callers list exponents in their own variable order; reorder if sorting moved them.
  std::vector<std::string> original = variables;
  MultiPoly p(std::move(variables));
  std::vector<std::size_t> perm(original.size());
  for (std::size_t i = 0; i < original.size(); ++i) perm[i] = p.index_of(original[i]);
  for (const auto& [exps, coef] : terms) {
    if (exps.size() != original.size()) {
      throw InvalidArgument("exponent vector length does not match the variable list");
    }
    Exponents sorted(exps.size(), 0);
    for (std::size_t i = 0; i < exps.size(); ++i) sorted[perm[i]] = exps[i];
    p.add_term(sorted, coef);
  }
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
}

std::size_t MultiPoly::index_of(std::string_view name) const {
  const auto it = std::lower_bound(variables_.begin(), variables_.end(), name);
  if (it == variables_.end() || *it != name) {
    throw InvalidArgument("unknown variable '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - variables_.begin());
}

bool MultiPoly::has_variable(std::string_view name) const {
  return std::binary_search(variables_.begin(), variables_.end(), name);
}

int MultiPoly::degree(std::string_view name) const {
  const std::size_t idx = index_of(name);
  int best = -1;
  for (const auto& [e, c] : terms_) best = std::max(best, static_cast<int>(e[idx]));
  return best;
}

int MultiPoly::total_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    best = std::max(best, static_cast<int>(std::accumulate(e.begin(), e.end(), 0U)));
  }
  return best;
}

Rational MultiPoly::coefficient(const Exponents& exponents) const {
  const auto it = terms_.find(exponents);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiPoly::constant_term() const { return coefficient(Exponents(variables_.size(), 0)); }

Rational MultiPoly::to_constant() const {
  if (!is_constant()) throw InvalidArgument("polynomial is not constant: " + to_string());
  return constant_term();
}

MultiPoly MultiPoly::coefficient_of(std::string_view name, unsigned power) const {
  const std::size_t idx = index_of(name);
  std::vector<std::string> rest = variables_;
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(idx));
  MultiPoly out(rest);
  for (const auto& [e, c] : terms_) {
    if (e[idx] != power) continue;
    Exponents reduced = e;
    reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(idx));
    out.add_term(reduced, c);
  }
  return out;
}

MultiPoly MultiPoly::lift(const std::vector<std::string>& variables) const {
  MultiPoly out(variables);
  std::vector<std::size_t> where(variables_.size());
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (!out.has_variable(variables_[i])) {
      throw InvalidArgument("lift target lacks variable '" + variables_[i] + "'");
    }
    where[i] = out.index_of(variables_[i]);
  }
  for (const auto& [e, c] : terms_) {
    Exponents wide(out.variables_.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) wide[where[i]] = e[i];
    out.terms_.emplace(std::move(wide), c);
  }
  return out;
}

MultiPoly MultiPoly::drop(const std::vector<std::string>& unused) const {
  std::map<std::string, Rational> zero_bindings;
  for (const auto& name : unused) {
    if (degree(name) > 0) throw InvalidArgument("cannot drop variable '" + name + "' that occurs in the polynomial");
    zero_bindings.emplace(name, Rational(0));
  }
  return evaluate(zero_bindings);
}

MultiPoly MultiPoly::derivative(std::string_view name) const {
  const std::size_t idx = index_of(name);
  MultiPoly out(variables_);
  for (const auto& [e, c] : terms_) {
    if (e[idx] == 0) continue;
    Exponents d = e;
    d[idx] -= 1;
    out.add_term(d, c * Rational(static_cast<long>(e[idx])));
  }
  return out;
}

MultiPoly MultiPoly::evaluate(const std::map<std::string, Rational>& bindings) const {
  if (bindings.empty()) return *this;
  std::vector<bool> bound(variables_.size(), false);
  std::vector<const Rational*> value(variables_.size(), nullptr);
  for (const auto& [name, v] : bindings) {
    const std::size_t idx = index_of(name);
    bound[idx] = true;
    value[idx] = &v;
  }
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (!bound[i]) rest.push_back(variables_[i]);
  }
  MultiPoly out(rest);
  for (const auto& [e, c] : terms_) {
    Rational coef = c;
    Exponents reduced;
    reduced.reserve(rest.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (bound[i]) {
        if (e[i] > 0) coef *= pow(*value[i], e[i]);
      } else {
        reduced.push_back(e[i]);
      }
    }
    out.add_term(reduced, coef);
  }
  return out;
}

Rational MultiPoly::evaluate_at(const std::map<std::string, Rational>& bindings) const {
  const MultiPoly rest = evaluate(bindings);
  if (!rest.variables_.empty()) {
    throw InvalidArgument("total evaluation left variable '" + rest.variables_.front() + "' unbound");
  }
  return rest.constant_term();
}

double MultiPoly::evaluate_double(const std::map<std::string, double>& bindings) const {
  std::vector<double> value(variables_.size(), 0.0);
  std::vector<bool> bound(variables_.size(), false);
  for (const auto& [name, v] : bindings) {
    const std::size_t idx = index_of(name);
    value[idx] = v;
    bound[idx] = true;
  }
  for (std::size_t i = 0; i < bound.size(); ++i) {
    if (!bound[i]) throw InvalidArgument("floating evaluation left variable '" + variables_[i] + "' unbound");
  }
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c.to_double();
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::uint32_t k = 0; k < e[i]; ++k) term *= value[i];
    }
    sum += term;
  }
  return sum;
}

MultiPoly MultiPoly::substitute(std::string_view name, const MultiPoly& replacement) const {
  require_same_variables(replacement, "substitute");
  const std::size_t idx = index_of(name);
  const int max_power = degree(name);
  std::vector<MultiPoly> powers;
  powers.reserve(static_cast<std::size_t>(std::max(max_power, 0)) + 1);
  powers.push_back(constant(variables_, Rational(1)));
  for (int k = 1; k <= max_power; ++k) powers.push_back(powers.back() * replacement);

  MultiPoly out(variables_);
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    rest[idx] = 0;
    out += monomial(variables_, rest, c) * powers[e[idx]];
  }
  return out;
}

MultiPoly MultiPoly::filter(const std::function<bool(const Exponents&)>& keep) const {
  MultiPoly out(variables_);
  for (const auto& [e, c] : terms_) {
    if (keep(e)) out.terms_.emplace(e, c);
  }
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  require_same_variables(rhs, "+");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
  require_same_variables(rhs, "-");
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& scalar) {
  if (scalar.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

MultiPoly operator*(const MultiPoly& lhs, const MultiPoly& rhs) {
  lhs.require_same_variables(rhs, "*");
  MultiPoly out(lhs.variables_);
  const std::size_t n = lhs.variables_.size();
  MultiPoly::Exponents e(n, 0);
  for (const auto& [ea, ca] : lhs.terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool is_const = std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
    Rational mag = abs(c);
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (is_const || mag != Rational(1)) {
      os << (mag.is_integer() ? mag.numerator().get_str() : mag.to_string());
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << variables_[i];
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

void MultiPoly::require_same_variables(const MultiPoly& other, const char* op) const {
  if (variables_ != other.variables_) {
    throw InvalidArgument(std::string("polynomial operation '") + op + "' on mismatched variable lists");
  }
}

void MultiPoly::add_term(const Exponents& exponents, const Rational& coef) {
  if (coef.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly pow(const MultiPoly& base, unsigned exponent) {
  MultiPoly result = MultiPoly::constant(base.variables(), Rational(1));
  MultiPoly square = base;
  while (exponent > 0) {
    if ((exponent & 1U) != 0) result *= square;
    exponent >>= 1U;
    if (exponent > 0) square *= square;
  }
  return result;
}

MultiPoly constant_like(const MultiPoly& like, const Rational& value) {
  return MultiPoly::constant(like.variables(), value);
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& poly) { return os << poly.to_string(); }

}  // namespace levymart
