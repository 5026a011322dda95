// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "levymart/rational.hpp"

namespace levymart {

/// Sparse polynomial over Rational in a fixed, lexicographically sorted list
/// of named variables.
///
/// Canonical form is enforced by every constructor and operation: no stored
/// coefficient is zero, every exponent vector has one entry per variable.
/// Structural equality is therefore polynomial equality, which is what lets
/// identity checks compare residuals against the zero polynomial.
///
/// Binary operations require identical variable lists; use lift() to move a
/// polynomial into a larger variable set first.
class MultiPoly {
 public:
  using Exponents = std::vector<std::uint32_t>;
  using TermMap = std::map<Exponents, Rational>;

  /// Zero polynomial with no variables.
  MultiPoly() = default;
  /// Zero polynomial over `variables` (sorted on construction, duplicates rejected).
  explicit MultiPoly(std::vector<std::string> variables);

  static MultiPoly constant(std::vector<std::string> variables, const Rational& value);
  static MultiPoly variable(std::vector<std::string> variables, std::string_view name);
  static MultiPoly monomial(std::vector<std::string> variables, const Exponents& exponents, const Rational& coef);
  /// Builds from an explicit term map; zero coefficients are dropped.
  static MultiPoly from_terms(std::vector<std::string> variables, const TermMap& terms);

  [[nodiscard]] const std::vector<std::string>& variables() const { return variables_; }
  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  /// True for the zero polynomial and for nonzero constants.
  [[nodiscard]] bool is_constant() const;

  /// Index of `name` in variables(); throws InvalidArgument when absent.
  [[nodiscard]] std::size_t index_of(std::string_view name) const;
  [[nodiscard]] bool has_variable(std::string_view name) const;

  /// Degree in one variable; -1 for the zero polynomial.
  [[nodiscard]] int degree(std::string_view name) const;
  [[nodiscard]] int total_degree() const;

  [[nodiscard]] Rational coefficient(const Exponents& exponents) const;
  /// Constant term (all exponents zero).
  [[nodiscard]] Rational constant_term() const;
  /// Value of a constant polynomial; throws InvalidArgument otherwise.
  [[nodiscard]] Rational to_constant() const;

  /// Coefficient of name^power as a polynomial in the remaining variables.
  [[nodiscard]] MultiPoly coefficient_of(std::string_view name, unsigned power) const;

  /// Re-expresses the polynomial over a superset of its variables.
  [[nodiscard]] MultiPoly lift(const std::vector<std::string>& variables) const;
  /// Drops variables that do not occur in any term.
  [[nodiscard]] MultiPoly drop(const std::vector<std::string>& unused) const;

  [[nodiscard]] MultiPoly derivative(std::string_view name) const;

  /// Partial evaluation. The bound variables are removed from the result; an
  /// empty binding map returns *this.
  [[nodiscard]] MultiPoly evaluate(const std::map<std::string, Rational>& bindings) const;
  /// Total evaluation; throws InvalidArgument if some variable is left unbound.
  [[nodiscard]] Rational evaluate_at(const std::map<std::string, Rational>& bindings) const;
  /// Floating evaluation; every variable must be bound.
  [[nodiscard]] double evaluate_double(const std::map<std::string, double>& bindings) const;

  /// Replaces `name` by `replacement`, which must share this variable list.
  [[nodiscard]] MultiPoly substitute(std::string_view name, const MultiPoly& replacement) const;

  /// Keeps only the terms whose exponent vectors satisfy `keep`.
  [[nodiscard]] MultiPoly filter(const std::function<bool(const Exponents&)>& keep) const;

  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(const MultiPoly& rhs);
  MultiPoly& operator*=(const Rational& scalar);

  friend MultiPoly operator+(MultiPoly lhs, const MultiPoly& rhs) { return lhs += rhs; }
  friend MultiPoly operator-(MultiPoly lhs, const MultiPoly& rhs) { return lhs -= rhs; }
  friend MultiPoly operator*(const MultiPoly& lhs, const MultiPoly& rhs);
  friend MultiPoly operator*(MultiPoly lhs, const Rational& rhs) { return lhs *= rhs; }
  friend MultiPoly operator*(const Rational& lhs, MultiPoly rhs) { return rhs *= lhs; }
  MultiPoly operator-() const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) = default;

  /// Human-readable form, e.g. "x^2 - 2*t*x + t^2".
  [[nodiscard]] std::string to_string() const;

 private:
  void require_same_variables(const MultiPoly& other, const char* op) const;
  void add_term(const Exponents& exponents, const Rational& coef);

  std::vector<std::string> variables_;
  TermMap terms_;
};

MultiPoly pow(const MultiPoly& base, unsigned exponent);
/// Polynomial with the same variables as `like` and constant value `value`.
MultiPoly constant_like(const MultiPoly& like, const Rational& value);

std::ostream& operator<<(std::ostream& os, const MultiPoly& poly);

}  // namespace levymart
