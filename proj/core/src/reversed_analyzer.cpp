// SPDX-License-Identifier: Apache-2.0
#include "levymart/reversed_analyzer.hpp"

#include <algorithm>
#include <cmath>

#include "levymart/errors.hpp"
#include "levymart/martingale_engine.hpp"
#include "levymart/moment_engine.hpp"

namespace levymart {

namespace {

const std::vector<std::string> kTVars{kT};

MultiPoly t_mono(unsigned power, const Rational& coef) { return MultiPoly::monomial(kTVars, {power}, coef); }

}  // namespace

ReversedVerdict reversed_feasibility(const CumulantSpec& spec, int k) {
  if (k < 2) throw InvalidArgument("reversed-martingale analysis needs k >= 2");
  if (spec.order() < 2 * k) {
    throw TruncationError("analysing M_" + std::to_string(k) + " needs cumulants up to c_" + std::to_string(2 * k) +
                          " (for E[M_k^2])");
  }
  ReversedVerdict out;
  out.k = k;
  for (int j = std::max(3, k - 1); j <= 2 * k - 1; ++j) out.forced_zero_cumulants.push_back(j);

  const MultiPoly pk = cross_moment(spec, k, k).poly;
  if (pk.is_zero()) {
    out.notes.push_back("E[M_k^2] vanishes identically (c_2 = 0); mu is undefined");
    out.feasible = false;
    return out;
  }
  out.mu = RationalFunction(MultiPoly::constant(kTVars, Rational(1)), pk);
  const MultiPoly dpk = pk.derivative(kT);
  for (int l = 1; l + k <= spec.order(); ++l) {
    if (l == k) continue;
    const MultiPoly pl = cross_moment(spec, k, l).poly;
    if (!(pl.derivative(kT) * pk - pl * dpk).is_zero()) out.nonconstant_l.push_back(l);
  }

  std::optional<int> first_nonzero;
  for (int i = 3; i <= spec.order(); ++i) {
    if (!spec.c(i).is_zero()) {
      first_nonzero = i;
      break;
    }
  }
  if (k >= 3) {
    out.cascade_ok = !first_nonzero.has_value();
    if (first_nonzero) out.witness = first_nonzero;
    for (int j : out.forced_zero_cumulants) {
      if (!spec.c(j).is_zero()) {
        out.notes.push_back("c_" + std::to_string(j) + " is in the forced-zero range but nonzero");
        break;
      }
    }
  } else if (!out.nonconstant_l.empty()) {
    out.witness = spec.c(3).is_zero() ? out.nonconstant_l.front() + 2 : 3;
  }
  out.feasible = out.nonconstant_l.empty() && out.cascade_ok;
  if (k >= 3 && out.nonconstant_l.empty() && !out.cascade_ok) {
    out.notes.push_back("constancy holds for every l the cumulant list supports, but c_4 = 0 with a nonzero higher cumulant "
                        "contradicts c_2 c_4 >= c_3^2 for any Kolmogorov measure");
  }
  return out;
}

MuFunctions mu_functions(const Rational& c2, const Rational& c3, const Rational& c4, const Rational& beta) {
  const MultiPoly den = t_mono(2, Rational(2) * pow(c2, 3)) + t_mono(1, c2 * c4 - c3 * c3);
  if (den.is_zero()) throw DegenerateSpec("mu denominator t(2 c2^3 t + c2 c4 - c3^2) vanishes identically");
  const MultiPoly num2 = MultiPoly::constant(kTVars, c2 - beta * c3);
  const MultiPoly num1 = t_mono(1, beta * Rational(2) * c2 * c2) + MultiPoly::constant(kTVars, beta * c4 - c3);
  return MuFunctions{RationalFunction(num1, den), RationalFunction(num2, den)};
}

std::vector<std::pair<RationalFunction, bool>> two_term_constancy(const CumulantSpec& spec, const Rational& beta,
                                                                  int lmax) {
  if (spec.order() < std::max(lmax + 2, 4)) {
    throw TruncationError("two-term constancy up to l = " + std::to_string(lmax) + " needs cumulants up to c_" +
                          std::to_string(std::max(lmax + 2, 4)));
  }
  const MuFunctions mu = mu_functions(spec.c(2), spec.c(3), spec.c(4), beta);
  std::vector<std::pair<RationalFunction, bool>> out;
  for (int l = 1; l <= lmax; ++l) {
    const RationalFunction q = mu.mu1 * cross_moment(spec, 1, l).poly + mu.mu2 * cross_moment(spec, 2, l).poly;
    const bool constant = q.is_constant();
    out.emplace_back(q, constant);
  }
  return out;
}

GlowneCase glowne_classify(const Rational& c2, const Rational& c3, const Rational& c4, const Rational& c1) {
  if (c2.sign() <= 0) throw InvalidArgument("case classification needs c2 > 0");
  GlowneCase g;
  g.c1 = c1;
  g.c2 = c2;
  g.c3 = c3;
  g.c4 = c4;
  g.chi3 = c3 / c2;
  g.chi4 = c4 / c2;
  g.v = g.chi4 - g.chi3 * g.chi3;
  g.valid_measure = g.v.sign() >= 0;
  const Rational two_v = Rational(2) * g.v;
  const Rational chi3sq = g.chi3 * g.chi3;

  if (g.v.is_zero()) {
    g.case_id = 2;
  } else if (c3.is_zero() && g.v.sign() > 0) {
    g.case_id = 1;
  } else if (two_v == chi3sq) {
    g.case_id = 3;
  } else if (two_v > chi3sq) {
    g.case_id = 4;
  } else {
    g.case_id = 5;
  }

  const Rational lhs = c4 * c2;
  const Rational csq = c3 * c3;
  if (c3.is_zero() && c4.is_zero()) {
    g.printed_case_id = 2;
  } else if (c3.is_zero()) {
    g.printed_case_id = c4.sign() > 0 ? 1 : 5;
  } else if (lhs == csq) {
    g.printed_case_id = 2;
  } else if (Rational(2) * lhs == csq) {
    g.printed_case_id = 3;
  } else if (Rational(2) * lhs > csq) {
    g.printed_case_id = 4;
  } else {
    g.printed_case_id = 5;
  }

  if (g.case_id == 4 || g.case_id == 5) {
    const Rational alpha_sq = abs(two_v - chi3sq) / Rational(4);
    g.alpha_exact = alpha_sq.exact_sqrt();
    g.alpha = std::sqrt(alpha_sq.to_double());
  }
  if (!g.valid_measure) {
    g.notes.push_back("c2 c4 < c3^2: no Kolmogorov measure has these cumulants; closed forms are formal only");
  }
  if (g.printed_case_id != g.case_id) {
    g.notes.push_back("published case conditions select case " + std::to_string(g.printed_case_id) +
                      "; the ODE for psi selects case " + std::to_string(g.case_id));
  }
  return g;
}

CumulantSpec cumulant_closure(const Rational& c2, const Rational& c3, const Rational& c4, int N, const Rational& c1) {
  if (c2.sign() <= 0) throw InvalidArgument("cumulant closure needs c2 > 0");
  if (N < 4) throw InvalidArgument("cumulant closure needs N >= 4");
  std::vector<Rational> chi(static_cast<std::size_t>(N) + 1, Rational(0));
  chi[2] = Rational(1);
  chi[3] = c3 / c2;
  chi[4] = c4 / c2;
  const Rational half_v = (chi[4] - chi[3] * chi[3]) / Rational(2);
  for (int l = 3; l + 2 <= N; ++l) {
    Rational sum(0);
    for (int k = 1; k <= l - 1; ++k) sum += binomial(l, k) * chi[k + 1] * chi[l + 1 - k];
    chi[l + 2] = chi[3] * chi[l + 1] + half_v * sum;
  }
  std::vector<Rational> c(static_cast<std::size_t>(N));
  c[0] = c1;
  for (int i = 2; i <= N; ++i) c[static_cast<std::size_t>(i - 1)] = c2 * chi[static_cast<std::size_t>(i)];
  return CumulantSpec(std::move(c));
}

std::vector<Rational> psi_series(const Rational& chi3, const Rational& v, int n) {
  std::vector<Rational> a(static_cast<std::size_t>(std::max(n, 1)) + 1, Rational(0));
  a[1] = Rational(1);
  for (int k = 0; k + 2 <= n; ++k) {
    Rational rhs = chi3 * Rational(k + 1) * a[k + 1];
    if (!v.is_zero()) {
      Rational conv(0);
      for (int i = 0; i <= k; ++i) conv += Rational(i + 1) * a[i + 1] * a[k - i];
      rhs += v * conv;
    }
    a[k + 2] = rhs / Rational((k + 2) * (k + 1));
  }
  a.resize(static_cast<std::size_t>(n) + 1);
  return a;
}

CumulantSpec ode_series(const Rational& c2, const Rational& c3, const Rational& c4, int N, const Rational& c1) {
  if (c2.sign() <= 0) throw InvalidArgument("ODE series needs c2 > 0");
  if (N < 4) throw InvalidArgument("ODE series needs N >= 4");
  const Rational chi3 = c3 / c2;
  const Rational v = c4 / c2 - chi3 * chi3;
  const std::vector<Rational> a = psi_series(chi3, v, N - 1);
  std::vector<Rational> c(static_cast<std::size_t>(N));
  c[0] = c1;
  for (int k = 1; k <= N - 1; ++k) c[static_cast<std::size_t>(k)] = c2 * factorial(k) * a[static_cast<std::size_t>(k)];
  return CumulantSpec(std::move(c));
}

namespace {

std::vector<mpz_class> tangent_recursion(int kmax, bool published) {
  if (kmax < 1) throw InvalidArgument("tangent numbers need kmax >= 1");
  std::vector<mpz_class> T(static_cast<std::size_t>(kmax) + 1, 0);
  T[1] = 1;
  for (int k = 1; k < kmax; ++k) {
    mpz_class sum = 0;
    for (int s = 1; s <= k; ++s) {
      const int lower = published ? 2 * k - 1 : 2 * s - 1;
      sum += binomial(2 * k, lower).numerator() * T[s] * T[k - s + 1];
    }
    T[k + 1] = sum;
  }
  return {T.begin() + 1, T.end()};
}

}  // namespace

std::vector<mpz_class> tangent_numbers(int kmax) { return tangent_recursion(kmax, false); }

std::vector<mpz_class> tangent_numbers_published(int kmax) { return tangent_recursion(kmax, true); }

std::vector<mpz_class> tangent_numbers_from_closure(int kmax) {
  if (kmax < 1) throw InvalidArgument("tangent numbers need kmax >= 1");
  const CumulantSpec spec = cumulant_closure(Rational(1), Rational(0), Rational(2), std::max(2 * kmax, 4));
  std::vector<mpz_class> out;
  for (int j = 1; j <= kmax; ++j) {
    // T_j = chi_{2j} (2/chi_4)^(j-1) with chi_4 = 2.
    const Rational& c = spec.c(2 * j);
    if (!c.is_integer()) throw std::logic_error("closure produced a non-integer tangent number");
    out.push_back(c.numerator());
  }
  return out;
}

}  // namespace levymart
