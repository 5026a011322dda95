// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace levymart {

/// Exact fraction with arbitrary-precision numerator and denominator.
///
/// Always stored in lowest terms with a positive denominator, so two
/// Rationals are equal iff their numerators and denominators are equal.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)

  /// Throws InvalidArgument when `den == 0`.
  Rational(long num, long den);
  static Rational from_integers(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpq_class& value);

  /// Parses "[+-]p[/q]". Throws InvalidArgument on malformed text or q == 0.
  static Rational parse(std::string_view text);

  [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }
  [[nodiscard]] const mpq_class& raw() const { return value_; }

  [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
  [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }
  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] double to_double() const { return value_.get_d(); }

  /// Exact square root when both numerator and denominator are perfect squares.
  [[nodiscard]] std::optional<Rational> exact_sqrt() const;

  /// Canonical "p/q" text; the denominator is always written, e.g. "1/1".
  [[nodiscard]] std::string to_string() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  /// Throws InvalidArgument on division by zero.
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

Rational pow(const Rational& base, unsigned exponent);
Rational abs(const Rational& value);
/// n! as a Rational.
Rational factorial(unsigned n);
/// Binomial coefficient C(n, k); zero when k > n.
Rational binomial(unsigned n, unsigned k);

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace levymart
