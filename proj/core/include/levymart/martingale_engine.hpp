// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "levymart/cumulant_model.hpp"
#include "levymart/identity_report.hpp"
#include "levymart/moment_engine.hpp"
#include "levymart/multipoly.hpp"

namespace levymart {

/// M_n(x,t) = sum_j C(n,j) m_{n-j}(-t) x^j over variables {t, x}.
MultiPoly martingale_poly(const CumulantSpec& spec, int n);
/// Same polynomial read off n! [r^n] exp(r x) exp(-t f(r)); independent route.
MultiPoly martingale_poly_from_exponential(const CumulantSpec& spec, int n);

class MartingaleFamily {
 public:
  /// M_0..M_N; the two construction routes are asserted equal (std::logic_error otherwise).
  MartingaleFamily(const CumulantSpec& spec, int N);

  [[nodiscard]] const CumulantSpec& spec() const { return spec_; }
  [[nodiscard]] int order() const { return static_cast<int>(M_.size()) - 1; }
  [[nodiscard]] const MultiPoly& M(int n) const;
  [[nodiscard]] const MomentTable& moment_table() const { return moments_; }

 private:
  CumulantSpec spec_;
  MomentTable moments_;
  std::vector<MultiPoly> M_;
};

/// E[p(X_t, t) | X_s = x] for p over a subset of {t, x}; the result is over {s, t, x}.
/// TruncationError when deg_x p exceeds the cumulant order.
MultiPoly conditional_expectation(const CumulantSpec& spec, const MultiPoly& p);

/// E[p(X_t, t)] for p over a subset of {t, x}; the result is over {t}.
MultiPoly expectation(const MomentTable& table, const MultiPoly& p);

/// E[M_n(X_t,t) | X_s = x] - M_n(x,s) = 0 for n = 0..N.
IdentityReport check_martingale_property(const CumulantSpec& spec, int N);
/// E M_n(X_t,t) = 0 for n = 1..N (and 1 for n = 0).
IdentityReport check_zero_mean(const CumulantSpec& spec, int N);

/// Coefficients a_j(t) with p = sum_j a_j(t) M_j(x,t), by back-substitution in
/// the monic triangular M-basis. p must be over a subset of {t, x}.
std::vector<MultiPoly> expand_in_martingale_basis(const MartingaleFamily& family, const MultiPoly& p);

struct ProductExpansion {
  int n = 0;
  /// Coefficient of M_j, j = 0..n+degree, from the closed formula (polynomials in t).
  std::vector<MultiPoly> formula;
  /// Same coefficients from multiplying out and back-substituting.
  std::vector<MultiPoly> direct;
  /// Coefficient of M_0, i.e. E[M_i M_n](t) for i = 1 or 2.
  MultiPoly expectation;
  /// Closed-form scalar expectation stated alongside the expansion.
  MultiPoly expectation_formula;
  bool agrees = false;
};

/// M_1 M_n = M_{n+1} + t sum_{k=1}^n C(n,k) c_{k+1} M_{n-k}. Needs n + 1 <= order.
ProductExpansion product_expand_M1(const CumulantSpec& spec, int n);
/// M_2 M_n expansion with the three sums. Needs n + 2 <= order.
ProductExpansion product_expand_M2(const CumulantSpec& spec, int n);

struct CrossMomentPoly {
  int n = 0;
  int k = 0;
  /// E[M_n M_k](t) over {t}.
  MultiPoly poly;
  /// d_1..d_{min(n,k)}: poly = sum_j d_j t^j.
  std::vector<Rational> d;
};

/// E[M_n M_k](t) with d_j = n! k! [u^n v^k] g(u,v)^j / j!, where
/// g(u,v) = f(u+v) - f(u) - f(v). Needs cumulants up to c_{n+k}.
CrossMomentPoly cross_moment(const CumulantSpec& spec, int n, int k);
/// The published coefficient list d_j = (n+k-j)! [x^{n+k-j}] h(x)^j with
/// h = f' - c_1. Kept for the formula audit; it disagrees with cross_moment
/// for 1 < j < min(n,k).
std::vector<Rational> cross_moment_published_coefficients(const CumulantSpec& spec, int n, int k);

}  // namespace levymart
