// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "levymart/cumulant_model.hpp"
#include "levymart/identity_report.hpp"
#include "levymart/multipoly.hpp"
#include "levymart/series.hpp"

namespace levymart {

/// Variable names shared by every module.
inline constexpr const char* kT = "t";
inline constexpr const char* kS = "s";
inline constexpr const char* kX = "x";

/// m_0(t), ..., m_N(t) with m_n(t) = E X_t^n, polynomials in the single variable t.
class MomentTable {
 public:
  MomentTable(CumulantSpec spec, std::vector<MultiPoly> m);

  [[nodiscard]] const CumulantSpec& spec() const { return spec_; }
  [[nodiscard]] int order() const { return static_cast<int>(m_.size()) - 1; }
  /// m_n(t); TruncationError past order().
  [[nodiscard]] const MultiPoly& m(int n) const;
  [[nodiscard]] const std::vector<MultiPoly>& all() const { return m_; }
  /// m_n evaluated at a rational time.
  [[nodiscard]] Rational at(int n, const Rational& t) const;

  /// Copy with m_n replaced. Only meant for fault injection in identity checks.
  [[nodiscard]] MomentTable with_override(int n, MultiPoly poly) const;

 private:
  CumulantSpec spec_;
  std::vector<MultiPoly> m_;
};

/// Moments via m_{n+1} = t sum_j C(n,j) c_{j+1} m_{n-j}. The derivative identity
/// m_n' = sum_j C(n,j) c_j m_{n-j} is asserted on the result (std::logic_error
/// if it ever fails). TruncationError when N > spec.order().
MomentTable moments(const CumulantSpec& spec, int N);

/// m_n(-t).
MultiPoly negative_time_moment(const MomentTable& table, int n);

/// E (X_t - c_1 t)^n for n = 0..N. Computed by binomial centering and,
/// independently, as the moments of the same cumulants with c_1 = 0; the two must agree.
std::vector<MultiPoly> central_moments(const CumulantSpec& spec, int N);

/// m_n(s+t) = sum_j C(n,j) m_j(s) m_{n-j}(t) as a polynomial identity in (s,t), n = 0..order.
IdentityReport check_convolution(const MomentTable& table);
IdentityReport check_convolution(const CumulantSpec& spec, int N);

/// m_n'(t) = sum_{j=1}^n C(n,j) c_j m_{n-j}(t), n = 1..order.
IdentityReport check_derivative_identity(const MomentTable& table);

/// sum_j C(n,j) m_{n-j}(-s) m_{j+i}(s) against the n-th u-derivative at 0 of
/// exp(-s f(u)) d^i/du^i exp(s f(u)), via series over polynomials in s.
IdentityReport check_identity_v(const CumulantSpec& spec, int n, int i);

/// Yablonski polynomial P_n in variables x01, x02, ..., defined by
/// exp(sum_k (-1)^(k-1) x_k z^k / k) = sum_n P_n z^n.
MultiPoly yablonski_polynomial(int n);

/// Argument list x_k = (-1)^(k-1) c_k t / (k-1)! under which n! P_n = m_n(t).
std::vector<MultiPoly> yablonski_arguments(const CumulantSpec& spec, int n);

/// Three reports: "mY" (n! P_n(x) = m_n(t)), "Y3" (additivity against
/// `partner`), "Y4" (scaling by `alpha`), each for n = 0..N.
std::vector<IdentityReport> yablonski_check(const CumulantSpec& spec, int N, const CumulantSpec& partner,
                                            const Rational& alpha);
/// Same with a partner spec drawn from a fixed seed and alpha = 2.
std::vector<IdentityReport> yablonski_check(const CumulantSpec& spec, int N);

/// dm_n/dc_l = C(n,l) t m_{n-l}(t) for l <= n, zero otherwise.
MultiPoly cumulant_sensitivity(const CumulantSpec& spec, int n, int l);
/// The published form n t m_{n-l}(t); kept for the formula audit.
MultiPoly cumulant_sensitivity_published(const CumulantSpec& spec, int n, int l);

/// p(scale * var) for a polynomial p in t alone, returned over {var}.
MultiPoly rescaled_time(const MultiPoly& p, const std::string& var, const Rational& scale);

/// s f(u) truncated at u^order as a series with coefficients in variables {var}.
TruncatedSeries<MultiPoly> scaled_exponent_series(const CumulantSpec& spec, int order, const std::string& var);

}  // namespace levymart
