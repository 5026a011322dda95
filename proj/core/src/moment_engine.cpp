// SPDX-License-Identifier: Apache-2.0
#include "levymart/moment_engine.hpp"

#include <cstdio>
#include <random>
#include <stdexcept>

#include "levymart/errors.hpp"

namespace levymart {

namespace {

const std::vector<std::string>& t_vars() {
  static const std::vector<std::string> vars{kT};
  return vars;
}

MultiPoly t_poly() { return MultiPoly::variable(t_vars(), kT); }

MultiPoly t_constant(const Rational& v) { return MultiPoly::constant(t_vars(), v); }

void require_order(const CumulantSpec& spec, int N) {
  if (N < 0) throw InvalidArgument("moment order must be non-negative");
  if (N > spec.order()) {
    throw TruncationError("moments up to order " + std::to_string(N) + " need cumulants up to c_" +
                          std::to_string(N) + " but the input stops at c_" + std::to_string(spec.order()));
  }
}

}  // namespace

MultiPoly rescaled_time(const MultiPoly& p, const std::string& var, const Rational& scale) {
  const std::size_t idx = p.index_of(kT);
  MultiPoly out(std::vector<std::string>{var});
  for (const auto& [e, c] : p.terms()) {
    out += MultiPoly::monomial({var}, {e[idx]}, c * pow(scale, e[idx]));
  }
  return out;
}

MomentTable::MomentTable(CumulantSpec spec, std::vector<MultiPoly> m) : spec_(std::move(spec)), m_(std::move(m)) {
  if (m_.empty()) throw InvalidArgument("moment table needs m_0");
}

const MultiPoly& MomentTable::m(int n) const {
  if (n < 0 || n > order()) {
    throw TruncationError("moment m_" + std::to_string(n) + " is beyond the table order " + std::to_string(order()));
  }
  return m_[static_cast<std::size_t>(n)];
}

Rational MomentTable::at(int n, const Rational& t) const { return m(n).evaluate_at({{kT, t}}); }

MomentTable MomentTable::with_override(int n, MultiPoly poly) const {
  MomentTable copy = *this;
  if (n < 0 || n > order()) throw TruncationError("override index beyond the table order");
  copy.m_[static_cast<std::size_t>(n)] = std::move(poly);
  return copy;
}

MomentTable moments(const CumulantSpec& spec, int N) {
  require_order(spec, N);
  std::vector<MultiPoly> m;
  m.reserve(static_cast<std::size_t>(N) + 1);
  m.push_back(t_constant(Rational(1)));
  const MultiPoly t = t_poly();
  for (int n = 0; n < N; ++n) {
    MultiPoly acc(t_vars());
    for (int j = 0; j <= n; ++j) {
      const Rational& c = spec.c(j + 1);
      if (c.is_zero()) continue;
      acc += m[static_cast<std::size_t>(n - j)] * (binomial(n, j) * c);
    }
    m.push_back(t * acc);
  }
  MomentTable table(spec, std::move(m));
  const IdentityReport check = check_derivative_identity(table);
  if (!check.all_pass()) {
    throw std::logic_error("moment recursion disagrees with the derivative identity at n = " +
                           std::to_string(*check.first_failure()));
  }
  return table;
}

MultiPoly negative_time_moment(const MomentTable& table, int n) {
  const MultiPoly& p = table.m(n);
  return p.substitute(kT, -t_poly());
}

std::vector<MultiPoly> central_moments(const CumulantSpec& spec, int N) {
  const MomentTable raw = moments(spec, N);
  const MultiPoly shift = t_poly() * (-spec.c(1));
  std::vector<MultiPoly> by_centering;
  for (int n = 0; n <= N; ++n) {
    MultiPoly acc(t_vars());
    MultiPoly shift_power = t_constant(Rational(1));
    for (int i = 0; i <= n; ++i) {
      acc += raw.m(n - i) * shift_power * binomial(n, i);
      shift_power *= shift;
    }
    by_centering.push_back(std::move(acc));
  }
  const MomentTable driftless = moments(spec.with_drift(Rational(0)), N);
  for (int n = 0; n <= N; ++n) {
    if (by_centering[static_cast<std::size_t>(n)] != driftless.m(n)) {
      throw std::logic_error("central moment routes disagree at n = " + std::to_string(n));
    }
  }
  return by_centering;
}

IdentityReport check_convolution(const MomentTable& table) {
  IdentityReport report{"convolution", {}};
  const std::vector<std::string> st{kS, kT};
  const MultiPoly s = MultiPoly::variable(st, kS);
  const MultiPoly t = MultiPoly::variable(st, kT);
  std::vector<MultiPoly> in_s;
  std::vector<MultiPoly> in_t;
  for (int n = 0; n <= table.order(); ++n) {
    const MultiPoly lifted = table.m(n).lift(st);
    in_t.push_back(lifted);
    in_s.push_back(lifted.substitute(kT, s));
  }
  for (int n = 0; n <= table.order(); ++n) {
    MultiPoly lhs = in_t[static_cast<std::size_t>(n)].substitute(kT, s + t);
    for (int j = 0; j <= n; ++j) {
      lhs -= in_s[static_cast<std::size_t>(j)] * in_t[static_cast<std::size_t>(n - j)] * binomial(n, j);
    }
    report.record(n, std::move(lhs));
  }
  return report;
}

IdentityReport check_convolution(const CumulantSpec& spec, int N) { return check_convolution(moments(spec, N)); }

IdentityReport check_derivative_identity(const MomentTable& table) {
  IdentityReport report{"moment-derivative", {}};
  const CumulantSpec& spec = table.spec();
  for (int n = 1; n <= table.order(); ++n) {
    MultiPoly residual = table.m(n).derivative(kT);
    for (int j = 1; j <= n; ++j) {
      const Rational& c = spec.c(j);
      if (c.is_zero()) continue;
      residual -= table.m(n - j) * (binomial(n, j) * c);
    }
    report.record(n, std::move(residual));
  }
  return report;
}

TruncatedSeries<MultiPoly> scaled_exponent_series(const CumulantSpec& spec, int order, const std::string& var) {
  require_order(spec, order);
  const std::vector<std::string> vars{var};
  const MultiPoly v = MultiPoly::variable(vars, var);
  TruncatedSeries<MultiPoly> out(order, MultiPoly(vars));
  for (int k = 1; k <= order; ++k) out.set(k, v * (spec.c(k) / factorial(k)));
  return out;
}

IdentityReport check_identity_v(const CumulantSpec& spec, int n, int i) {
  if (n < 0 || i < 0) throw InvalidArgument("identity v needs n, i >= 0");
  const int order = n + i;
  require_order(spec, order);
  IdentityReport report{"moment-shift", {}};

  const MomentTable table = moments(spec, order);
  const std::vector<std::string> s_vars{kS};
  const MultiPoly s = MultiPoly::variable(s_vars, kS);
  MultiPoly lhs(s_vars);
  for (int j = 0; j <= n; ++j) {
    lhs += rescaled_time(table.m(n - j), kS, Rational(-1)) * rescaled_time(table.m(j + i), kS, Rational(1)) *
           binomial(n, j);
  }

  const TruncatedSeries<MultiPoly> sf = scaled_exponent_series(spec, order, kS);
  TruncatedSeries<MultiPoly> growth = sf.exp();
  for (int d = 0; d < i; ++d) growth = growth.derivative();
  const TruncatedSeries<MultiPoly> decay = (sf * constant_like(s, Rational(-1))).exp().truncated(growth.order());
  const TruncatedSeries<MultiPoly> product = decay * growth;
  const MultiPoly rhs = product[n] * factorial(n);
  report.record(n, lhs - rhs, "i=" + std::to_string(i));
  return report;
}

namespace {

std::string yab_var(int k) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "x%02d", k);
  return buf;
}

std::vector<std::string> yab_vars(int n) {
  std::vector<std::string> v;
  for (int k = 1; k <= n; ++k) v.push_back(yab_var(k));
  return v;
}

}  // namespace

MultiPoly yablonski_polynomial(int n) {
  if (n < 0) throw InvalidArgument("Yablonski polynomial index must be non-negative");
  if (n == 0) return MultiPoly::constant({}, Rational(1));
  const std::vector<std::string> vars = yab_vars(n);
  TruncatedSeries<MultiPoly> arg(n, MultiPoly(vars));
  for (int k = 1; k <= n; ++k) {
    const Rational sign = (k % 2 == 1) ? Rational(1) : Rational(-1);
    arg.set(k, MultiPoly::variable(vars, yab_var(k)) * (sign / Rational(k)));
  }
  return arg.exp()[n];
}

std::vector<MultiPoly> yablonski_arguments(const CumulantSpec& spec, int n) {
  require_order(spec, n);
  std::vector<MultiPoly> out;
  for (int k = 1; k <= n; ++k) {
    const Rational sign = (k % 2 == 1) ? Rational(1) : Rational(-1);
    out.push_back(t_poly() * (sign * spec.c(k) / factorial(k - 1)));
  }
  return out;
}

namespace {

// Substitutes x_k -> args[k-1] (polynomials in t) into a polynomial in x01..x0n.
MultiPoly substitute_yablonski(const MultiPoly& p, const std::vector<MultiPoly>& args) {
  if (p.variables().empty()) return t_constant(p.constant_term());
  MultiPoly out(t_vars());
  for (const auto& [e, c] : p.terms()) {
    MultiPoly term = t_constant(c);
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] > 0) term *= pow(args[k], e[k]);
    }
    out += term;
  }
  return out;
}

CumulantSpec sum_spec(const CumulantSpec& a, const CumulantSpec& b, int N) {
  std::vector<Rational> c;
  for (int i = 1; i <= N; ++i) c.push_back(a.c(i) + b.c(i));
  return CumulantSpec(std::move(c));
}

CumulantSpec scaled_spec(const CumulantSpec& a, const Rational& alpha, int N) {
  std::vector<Rational> c;
  for (int i = 1; i <= N; ++i) c.push_back(a.c(i) * pow(alpha, static_cast<unsigned>(i)));
  return CumulantSpec(std::move(c));
}

}  // namespace

std::vector<IdentityReport> yablonski_check(const CumulantSpec& spec, int N, const CumulantSpec& partner,
                                            const Rational& alpha) {
  require_order(spec, N);
  require_order(partner, N);
  const MomentTable table = moments(spec, N);

  IdentityReport my{"mY", {}};
  const std::vector<MultiPoly> args = yablonski_arguments(spec, N);
  for (int n = 0; n <= N; ++n) {
    const MultiPoly value = substitute_yablonski(yablonski_polynomial(n), args) * factorial(n);
    my.record(n, value - table.m(n));
  }

  IdentityReport y3{"Y3", {}};
  const MomentTable other = moments(partner, N);
  const MomentTable combined = moments(sum_spec(spec, partner, N), N);
  for (int n = 0; n <= N; ++n) {
    MultiPoly residual = combined.m(n);
    for (int k = 0; k <= n; ++k) residual -= table.m(k) * other.m(n - k) * binomial(n, k);
    y3.record(n, std::move(residual));
  }

  IdentityReport y4{"Y4", {}};
  const MomentTable scaled = moments(scaled_spec(spec, alpha, N), N);
  for (int n = 0; n <= N; ++n) {
    y4.record(n, scaled.m(n) - table.m(n) * pow(alpha, static_cast<unsigned>(n)), "alpha=" + alpha.to_string());
  }
  return {my, y3, y4};
}

std::vector<IdentityReport> yablonski_check(const CumulantSpec& spec, int N) {
  std::mt19937_64 rng(0x59ab1095ULL);
  std::uniform_int_distribution<long> num(-5, 5);
  std::uniform_int_distribution<long> den(1, 4);
  std::vector<Rational> c;
  for (int i = 1; i <= N; ++i) c.push_back(Rational(num(rng), den(rng)));
  c[1] = abs(c[1]);
  return yablonski_check(spec, N, CumulantSpec(std::move(c)), Rational(2));
}

MultiPoly cumulant_sensitivity(const CumulantSpec& spec, int n, int l) {
  if (l < 1) throw InvalidArgument("cumulant index l must be at least 1");
  require_order(spec, n);
  if (l > n) return MultiPoly(t_vars());
  const MomentTable table = moments(spec, n);
  return t_poly() * table.m(n - l) * binomial(n, l);
}

MultiPoly cumulant_sensitivity_published(const CumulantSpec& spec, int n, int l) {
  if (l < 1) throw InvalidArgument("cumulant index l must be at least 1");
  require_order(spec, n);
  if (l > n) return MultiPoly(t_vars());
  const MomentTable table = moments(spec, n);
  return t_poly() * table.m(n - l) * Rational(n);
}

}  // namespace levymart
