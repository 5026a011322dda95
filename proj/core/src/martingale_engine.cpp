// SPDX-License-Identifier: Apache-2.0
#include "levymart/martingale_engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "levymart/errors.hpp"
#include "levymart/series.hpp"

namespace levymart {

namespace {

const std::vector<std::string> kTVars{kT};
const std::vector<std::string> kTXVars{kT, kX};
const std::vector<std::string> kSTXVars{kS, kT, kX};

void require_index(const CumulantSpec& spec, int needed, const char* what) {
  if (needed > spec.order()) {
    throw TruncationError(std::string(what) + " needs cumulants up to c_" + std::to_string(needed) +
                          " but the input stops at c_" + std::to_string(spec.order()));
  }
}

MultiPoly x_power(const std::vector<std::string>& vars, unsigned j) {
  MultiPoly::Exponents e(vars.size(), 0);
  MultiPoly probe(vars);
  e[probe.index_of(kX)] = j;
  return MultiPoly::monomial(vars, e, Rational(1));
}

MultiPoly build_martingale(const MomentTable& table, int n) {
  MultiPoly out(kTXVars);
  for (int j = 0; j <= n; ++j) {
    out += negative_time_moment(table, n - j).lift(kTXVars) * x_power(kTXVars, static_cast<unsigned>(j)) *
           binomial(n, j);
  }
  return out;
}

MultiPoly t_monomial(unsigned power, const Rational& coef) { return MultiPoly::monomial(kTVars, {power}, coef); }

}  // namespace

MultiPoly martingale_poly(const CumulantSpec& spec, int n) {
  if (n < 0) throw InvalidArgument("martingale index must be non-negative");
  require_index(spec, n, "martingale M_n");
  return build_martingale(moments(spec, n), n);
}

MultiPoly martingale_poly_from_exponential(const CumulantSpec& spec, int n) {
  if (n < 0) throw InvalidArgument("martingale index must be non-negative");
  require_index(spec, n, "martingale M_n");
  const MultiPoly t = MultiPoly::variable(kTXVars, kT);
  TruncatedSeries<MultiPoly> exponent(n, MultiPoly(kTXVars));
  TruncatedSeries<MultiPoly> rx(n, MultiPoly(kTXVars));
  for (int k = 1; k <= n; ++k) {
    exponent.set(k, t * (-spec.c(k) / factorial(k)));
  }
  if (n >= 1) rx.set(1, x_power(kTXVars, 1));
  const TruncatedSeries<MultiPoly> product = rx.exp() * exponent.exp();
  return product[n] * factorial(n);
}

MartingaleFamily::MartingaleFamily(const CumulantSpec& spec, int N) : spec_(spec), moments_(moments(spec, N)) {
  for (int n = 0; n <= N; ++n) {
    M_.push_back(build_martingale(moments_, n));
    if (M_.back() != martingale_poly_from_exponential(spec, n)) {
      throw std::logic_error("martingale M_" + std::to_string(n) + " disagrees with the exponential-martingale route");
    }
  }
}

const MultiPoly& MartingaleFamily::M(int n) const {
  if (n < 0 || n > order()) {
    throw TruncationError("martingale M_" + std::to_string(n) + " is beyond the family order " +
                          std::to_string(order()));
  }
  return M_[static_cast<std::size_t>(n)];
}

MultiPoly conditional_expectation(const CumulantSpec& spec, const MultiPoly& p) {
  const MultiPoly lifted = p.lift(kSTXVars);
  const int degree = lifted.degree(kX);
  if (degree < 0) return lifted;
  require_index(spec, degree, "conditional expectation of a polynomial of this x-degree");

  // Increment moments m_i(t - s).
  const MomentTable table = moments(spec, degree);
  const MultiPoly s = MultiPoly::variable(kSTXVars, kS);
  const MultiPoly t = MultiPoly::variable(kSTXVars, kT);
  std::vector<MultiPoly> increment;
  for (int i = 0; i <= degree; ++i) increment.push_back(table.m(i).lift(kSTXVars).substitute(kT, t - s));

  MultiPoly out(kSTXVars);
  for (int j = 0; j <= degree; ++j) {
    const MultiPoly coef = lifted.coefficient_of(kX, static_cast<unsigned>(j)).lift(kSTXVars);
    if (coef.is_zero()) continue;
    MultiPoly power(kSTXVars);
    for (int i = 0; i <= j; ++i) {
      power += x_power(kSTXVars, static_cast<unsigned>(j - i)) * increment[static_cast<std::size_t>(i)] *
               binomial(j, i);
    }
    out += coef * power;
  }
  return out;
}

MultiPoly expectation(const MomentTable& table, const MultiPoly& p) {
  const MultiPoly lifted = p.lift(kTXVars);
  MultiPoly out(kTVars);
  for (int j = 0; j <= lifted.degree(kX); ++j) {
    const MultiPoly coef = lifted.coefficient_of(kX, static_cast<unsigned>(j));
    if (coef.is_zero()) continue;
    out += coef * table.m(j);
  }
  return out;
}

IdentityReport check_martingale_property(const CumulantSpec& spec, int N) {
  IdentityReport report{"martingale", {}};
  const MartingaleFamily family(spec, N);
  const MultiPoly s = MultiPoly::variable(kSTXVars, kS);
  for (int n = 0; n <= N; ++n) {
    const MultiPoly at_s = family.M(n).lift(kSTXVars).substitute(kT, s);
    report.record(n, conditional_expectation(spec, family.M(n)) - at_s);
  }
  return report;
}

IdentityReport check_zero_mean(const CumulantSpec& spec, int N) {
  IdentityReport report{"zero-mean", {}};
  const MartingaleFamily family(spec, N);
  for (int n = 0; n <= N; ++n) {
    MultiPoly residual = expectation(family.moment_table(), family.M(n));
    if (n == 0) residual -= MultiPoly::constant(kTVars, Rational(1));
    report.record(n, std::move(residual));
  }
  return report;
}

std::vector<MultiPoly> expand_in_martingale_basis(const MartingaleFamily& family, const MultiPoly& p) {
  MultiPoly rest = p.lift(kTXVars);
  const int degree = rest.degree(kX);
  if (degree > family.order()) {
    throw TruncationError("polynomial degree exceeds the martingale family order");
  }
  std::vector<MultiPoly> coeffs(static_cast<std::size_t>(std::max(degree, 0)) + 1, MultiPoly(kTVars));
  for (int d = degree; d >= 0; --d) {
    MultiPoly a = rest.coefficient_of(kX, static_cast<unsigned>(d));
    if (a.is_zero()) continue;
    rest -= a.lift(kTXVars) * family.M(d);
    coeffs[static_cast<std::size_t>(d)] = std::move(a);
  }
  if (!rest.is_zero()) throw std::logic_error("martingale-basis back-substitution left a remainder");
  return coeffs;
}

namespace {

ProductExpansion finish_expansion(const MartingaleFamily& family, int i, int n, std::vector<MultiPoly> formula,
                                  MultiPoly expectation_formula) {
  ProductExpansion out;
  out.n = n;
  out.formula = std::move(formula);
  out.direct = expand_in_martingale_basis(family, family.M(i) * family.M(n));
  out.direct.resize(out.formula.size(), MultiPoly(kTVars));
  out.expectation = out.direct[0];
  out.expectation_formula = std::move(expectation_formula);
  out.agrees = out.formula == out.direct && out.expectation == out.expectation_formula;
  return out;
}

}  // namespace

ProductExpansion product_expand_M1(const CumulantSpec& spec, int n) {
  if (n < 1) throw InvalidArgument("product expansion needs n >= 1");
  require_index(spec, n + 1, "M_1 M_n expansion");
  const MartingaleFamily family(spec, n + 1);
  std::vector<MultiPoly> formula(static_cast<std::size_t>(n) + 2, MultiPoly(kTVars));
  formula[static_cast<std::size_t>(n) + 1] = MultiPoly::constant(kTVars, Rational(1));
  for (int k = 1; k <= n; ++k) {
    formula[static_cast<std::size_t>(n - k)] += t_monomial(1, binomial(n, k) * spec.c(k + 1));
  }
  return finish_expansion(family, 1, n, std::move(formula), t_monomial(1, spec.c(n + 1)));
}

ProductExpansion product_expand_M2(const CumulantSpec& spec, int n) {
  if (n < 1) throw InvalidArgument("product expansion needs n >= 1");
  require_index(spec, n + 2, "M_2 M_n expansion");
  const MartingaleFamily family(spec, n + 2);
  std::vector<MultiPoly> formula(static_cast<std::size_t>(n) + 3, MultiPoly(kTVars));
  auto at = [&formula](int j) -> MultiPoly& { return formula[static_cast<std::size_t>(j)]; };
  at(n + 2) = MultiPoly::constant(kTVars, Rational(1));
  at(n) += t_monomial(1, Rational(2 * n) * spec.c(2));
  for (int k = 2; k <= n + 1; ++k) {
    at(n - k + 1) += t_monomial(1, (binomial(n, k - 1) + Rational(2) * binomial(n, k)) * spec.c(k + 1));
  }
  for (int l = 2; l <= n; ++l) {
    Rational inner(0);
    for (int k = 1; k <= l - 1; ++k) inner += binomial(l, k) * spec.c(k + 1) * spec.c(l - k + 1);
    at(n - l) += t_monomial(2, binomial(n, l) * inner);
  }
  Rational quadratic(0);
  for (int k = 1; k <= n - 1; ++k) quadratic += binomial(n, k) * spec.c(k + 1) * spec.c(n + 1 - k);
  MultiPoly scalar = t_monomial(1, spec.c(n + 2)) + t_monomial(2, quadratic);
  return finish_expansion(family, 2, n, std::move(formula), std::move(scalar));
}

CrossMomentPoly cross_moment(const CumulantSpec& spec, int n, int k) {
  if (n < 0 || k < 0) throw InvalidArgument("cross moment indices must be non-negative");
  require_index(spec, std::max(n + k, 1), "cross moment E[M_n M_k]");
  CrossMomentPoly out;
  out.n = n;
  out.k = k;
  out.poly = MultiPoly(kTVars);
  if (n == 0 || k == 0) {
    if (n == k) out.poly = MultiPoly::constant(kTVars, Rational(1));
    return out;
  }
  const std::vector<std::string> uv{"u", "v"};
  MultiPoly g(uv);
  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= k; ++b) {
      g += MultiPoly::monomial(uv, {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)},
                               spec.c(a + b) / (factorial(a) * factorial(b)));
    }
  }
  const auto un = static_cast<std::uint32_t>(n);
  const auto vk = static_cast<std::uint32_t>(k);
  auto keep = [un, vk](const MultiPoly::Exponents& e) { return e[0] <= un && e[1] <= vk; };
  MultiPoly power = MultiPoly::constant(uv, Rational(1));
  const Rational scale = factorial(n) * factorial(k);
  for (int j = 1; j <= std::min(n, k); ++j) {
    power = (power * g).filter(keep);
    const Rational dj = power.coefficient({un, vk}) * scale / factorial(j);
    out.d.push_back(dj);
    out.poly += t_monomial(static_cast<unsigned>(j), dj);
  }
  return out;
}

std::vector<Rational> cross_moment_published_coefficients(const CumulantSpec& spec, int n, int k) {
  if (n < 1 || k < 1) throw InvalidArgument("published cross-moment coefficients need n, k >= 1");
  require_index(spec, n + k, "cross moment E[M_n M_k]");
  const int top = n + k - 1;
  TruncatedSeries<Rational> h(top, Rational(0));
  for (int m = 1; m <= top; ++m) h.set(m, spec.c(m + 1) / factorial(m));
  std::vector<Rational> d;
  TruncatedSeries<Rational> power = h.pow(0);
  for (int j = 1; j <= std::min(n, k); ++j) {
    power = power * h;
    d.push_back(power[n + k - j] * factorial(n + k - j));
  }
  return d;
}

}  // namespace levymart
