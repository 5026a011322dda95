// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "levymart/errors.hpp"
#include "levymart/multipoly.hpp"
#include "levymart/rational.hpp"

namespace levymart {

inline Rational one_like(const Rational&) { return Rational(1); }
inline MultiPoly one_like(const MultiPoly& zero) { return constant_like(zero, Rational(1)); }
inline bool coefficient_is_zero(const Rational& c) { return c.is_zero(); }
inline bool coefficient_is_zero(const MultiPoly& c) { return c.is_zero(); }

/// Power series a_0 + a_1 z + ... known exactly through degree order().
///
/// Coefficient is Rational or MultiPoly. Every result carries the order it is
/// exact to, and asking for a coefficient past that order throws
/// TruncationError instead of returning zero.
template <typename Coef>
class TruncatedSeries {
 public:
  /// All-zero series through degree `order`; `zero` fixes the coefficient ring
  /// (for MultiPoly, its variable list).
  TruncatedSeries(int order, Coef zero) : zero_(std::move(zero)) {
    if (order < 0) throw InvalidArgument("series order must be non-negative");
    coeffs_.assign(static_cast<std::size_t>(order) + 1, zero_);
  }

  TruncatedSeries(std::vector<Coef> coeffs, Coef zero) : coeffs_(std::move(coeffs)), zero_(std::move(zero)) {
    if (coeffs_.empty()) throw InvalidArgument("series needs at least one coefficient");
  }

  [[nodiscard]] int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] const Coef& zero() const { return zero_; }

  [[nodiscard]] const Coef& operator[](int k) const {
    if (k < 0 || k > order()) {
      throw TruncationError("series coefficient " + std::to_string(k) + " requested beyond tracked order " +
                            std::to_string(order()));
    }
    return coeffs_[static_cast<std::size_t>(k)];
  }

  void set(int k, Coef value) {
    if (k < 0 || k > order()) throw TruncationError("series coefficient index out of tracked range");
    coeffs_[static_cast<std::size_t>(k)] = std::move(value);
  }

  [[nodiscard]] TruncatedSeries truncated(int new_order) const {
    if (new_order > order()) throw TruncationError("cannot extend a truncated series");
    return TruncatedSeries(std::vector<Coef>(coeffs_.begin(), coeffs_.begin() + new_order + 1), zero_);
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int n = std::min(a.order(), b.order());
    TruncatedSeries out(n, a.zero_);
    for (int k = 0; k <= n; ++k) out.coeffs_[k] = a[k] + b[k];
    return out;
  }

  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int n = std::min(a.order(), b.order());
    TruncatedSeries out(n, a.zero_);
    for (int k = 0; k <= n; ++k) out.coeffs_[k] = a[k] - b[k];
    return out;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int n = std::min(a.order(), b.order());
    TruncatedSeries out(n, a.zero_);
    for (int i = 0; i <= n; ++i) {
      if (coefficient_is_zero(a[i])) continue;
      for (int j = 0; i + j <= n; ++j) {
        if (coefficient_is_zero(b[j])) continue;
        out.coeffs_[i + j] = out.coeffs_[i + j] + a[i] * b[j];
      }
    }
    return out;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const Coef& scalar) {
    TruncatedSeries out = a;
    for (auto& c : out.coeffs_) c = c * scalar;
    return out;
  }

  /// Formal derivative; the result is exact through order() - 1.
  [[nodiscard]] TruncatedSeries derivative() const {
    if (order() == 0) throw TruncationError("derivative of an order-0 series has no known coefficients");
    TruncatedSeries out(order() - 1, zero_);
    for (int k = 1; k <= order(); ++k) out.coeffs_[k - 1] = coeffs_[k] * Rational(k);
    return out;
  }

  /// exp(s) for a series with zero constant term, via n g_n = sum_k k s_k g_{n-k}.
  [[nodiscard]] TruncatedSeries exp() const {
    if (!coefficient_is_zero(coeffs_[0])) {
      throw InvalidArgument("series exp() requires a zero constant term");
    }
    TruncatedSeries out(order(), zero_);
    out.coeffs_[0] = one_like(zero_);
    for (int n = 1; n <= order(); ++n) {
      Coef acc = zero_;
      for (int k = 1; k <= n; ++k) {
        if (coefficient_is_zero(coeffs_[k])) continue;
        acc = acc + coeffs_[k] * out.coeffs_[n - k] * Rational(k);
      }
      out.coeffs_[n] = acc * Rational(1, n);
    }
    return out;
  }

  [[nodiscard]] TruncatedSeries pow(unsigned exponent) const {
    TruncatedSeries out(order(), zero_);
    out.coeffs_[0] = one_like(zero_);
    for (unsigned e = 0; e < exponent; ++e) out = out * *this;
    return out;
  }

 private:
  std::vector<Coef> coeffs_;
  Coef zero_;
};

}  // namespace levymart
