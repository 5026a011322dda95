// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "levymart/multipoly.hpp"

namespace levymart {

/// num(t)/den(t) over the single variable t. The denominator is scaled to be
/// monic; no gcd cancellation is attempted, so equality is decided by
/// cross-multiplication rather than by comparing fields.
class RationalFunction {
 public:
  /// Throws DegenerateSpec when `den` is the zero polynomial.
  RationalFunction(MultiPoly num, MultiPoly den);

  [[nodiscard]] const MultiPoly& numerator() const { return num_; }
  [[nodiscard]] const MultiPoly& denominator() const { return den_; }
  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
  /// Exact test: num' den - num den' = 0.
  [[nodiscard]] bool is_constant() const;
  /// Value when is_constant() holds (taken as the ratio of leading coefficients).
  [[nodiscard]] Rational constant_value() const;
  [[nodiscard]] Rational evaluate(const Rational& t) const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const MultiPoly& p);
  /// Equality as functions: a.num b.den == b.num a.den.
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);

  [[nodiscard]] std::string to_string() const;

 private:
  MultiPoly num_;
  MultiPoly den_;
};

}  // namespace levymart
