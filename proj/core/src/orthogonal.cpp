// SPDX-License-Identifier: Apache-2.0
#include "levymart/orthogonal.hpp"

#include "levymart/errors.hpp"
#include "levymart/martingale_engine.hpp"
#include "levymart/moment_engine.hpp"

namespace levymart {

namespace {

const std::vector<std::string> kXVars{kX};

std::vector<Rational> moments_at(const CumulantSpec& spec, const Rational& t0, int order) {
  const MomentTable table = moments(spec, order);
  std::vector<Rational> out;
  for (int n = 0; n <= order; ++n) out.push_back(table.at(n, t0));
  return out;
}

Rational inner(const std::vector<Rational>& mom, const MultiPoly& p, const MultiPoly& q) {
  Rational sum(0);
  for (const auto& [ep, cp] : p.terms()) {
    for (const auto& [eq, cq] : q.terms()) {
      const std::size_t idx = ep[0] + eq[0];
      if (idx >= mom.size()) throw TruncationError("inner product needs moments beyond the computed order");
      sum += cp * cq * mom[idx];
    }
  }
  return sum;
}

MultiPoly x_pow(unsigned k) { return MultiPoly::monomial(kXVars, {k}, Rational(1)); }

void require_time(const Rational& t0) {
  if (t0.sign() <= 0) throw InvalidArgument("orthogonal polynomials need a positive time t0");
}

}  // namespace

Rational inner_product(const CumulantSpec& spec, const Rational& t0, const MultiPoly& p, const MultiPoly& q) {
  const int order = std::max(p.degree(kX), 0) + std::max(q.degree(kX), 0);
  return inner(moments_at(spec, t0, order), p, q);
}

OrthogonalBasis orthogonal_basis(const CumulantSpec& spec, const Rational& t0, int nmax) {
  require_time(t0);
  if (nmax < 0) throw InvalidArgument("basis degree must be non-negative");
  if (2 * nmax > spec.order()) {
    throw TruncationError("an orthogonal basis to degree " + std::to_string(nmax) + " needs cumulants up to c_" +
                          std::to_string(2 * nmax));
  }
  const std::vector<Rational> mom = moments_at(spec, t0, 2 * nmax);
  OrthogonalBasis basis;
  basis.t0 = t0;
  basis.Q.push_back(MultiPoly::constant(kXVars, Rational(1)));
  basis.norms.push_back(Rational(1));
  for (int n = 1; n <= nmax; ++n) {
    MultiPoly q = x_pow(static_cast<unsigned>(n));
    const MultiPoly xn = q;
    for (int j = 0; j < n; ++j) {
      q -= basis.Q[static_cast<std::size_t>(j)] *
           (inner(mom, xn, basis.Q[static_cast<std::size_t>(j)]) / basis.norms[static_cast<std::size_t>(j)]);
    }
    const Rational norm = inner(mom, q, q);
    if (norm.sign() <= 0) {
      basis.degenerate_at = n;
      basis.degeneracy_reason = norm.is_zero()
                                    ? "norm of Q_" + std::to_string(n) + " vanishes: the law of X_t0 has only " +
                                          std::to_string(n) + " support point(s)"
                                    : "norm of Q_" + std::to_string(n) + " is negative: moments are not a moment sequence";
      break;
    }
    basis.Q.push_back(std::move(q));
    basis.norms.push_back(norm);
  }
  const MultiPoly x = x_pow(1);
  for (int n = 0; n < basis.size(); ++n) {
    const auto& qn = basis.Q[static_cast<std::size_t>(n)];
    if (n + 1 < basis.size()) basis.a.push_back(inner(mom, x * qn, qn) / basis.norms[static_cast<std::size_t>(n)]);
    basis.b.push_back(n == 0 ? Rational(0)
                             : basis.norms[static_cast<std::size_t>(n)] / basis.norms[static_cast<std::size_t>(n - 1)]);
  }
  return basis;
}

bool favard_consistent(const OrthogonalBasis& basis) {
  const MultiPoly x = x_pow(1);
  for (int n = 0; n + 1 < basis.size(); ++n) {
    const auto idx = static_cast<std::size_t>(n);
    MultiPoly next = (x - MultiPoly::constant(kXVars, basis.a[idx])) * basis.Q[idx];
    if (n > 0) {
      if (basis.b[idx].sign() <= 0) return false;
      next -= basis.Q[idx - 1] * basis.b[idx];
    }
    if (next != basis.Q[idx + 1]) return false;
  }
  return true;
}

Rational second_column_formula(const CumulantSpec& spec, int n, const Rational& t) {
  const Rational& c2 = spec.c(2);
  const Rational& c3 = spec.c(3);
  Rational sum(0);
  for (int k = 1; k <= n - 1; ++k) sum += binomial(n, k) * spec.c(k + 1) * spec.c(n + 1 - k);
  const Rational num = t * c2 * sum + spec.c(n + 2) * c2 - c3 * spec.c(n + 1);
  const Rational den = Rational(2) * t * pow(c2, 3) + c2 * spec.c(4) - c3 * c3;
  if (den.is_zero()) throw DegenerateSpec("second-column formula has a vanishing denominator");
  return num / den;
}

ConnectionCoeffs connection_coeffs(const CumulantSpec& spec, const Rational& t0, int nmax) {
  const OrthogonalBasis basis = orthogonal_basis(spec, t0, nmax);
  const int size = basis.size();
  const std::vector<Rational> mom = moments_at(spec, t0, 2 * nmax);
  ConnectionCoeffs out;
  out.t0 = t0;
  out.complete = !basis.degenerate_at.has_value();

  std::vector<MultiPoly> M;
  for (int n = 0; n < size; ++n) M.push_back(martingale_poly(spec, n).evaluate({{kT, t0}}));

  out.b_hat.assign(static_cast<std::size_t>(size), std::vector<Rational>(static_cast<std::size_t>(size), Rational(0)));
  for (int n = 0; n < size; ++n) {
    for (int j = 0; j < size; ++j) {
      out.b_hat[n][j] = inner(mom, M[n], basis.Q[j]) / basis.norms[j];
    }
  }
  // Lower-triangular inverse by forward substitution: sum_j b[n][j] b_hat[j][i] = [n = i].
  out.b.assign(static_cast<std::size_t>(size), std::vector<Rational>(static_cast<std::size_t>(size), Rational(0)));
  for (int n = 0; n < size; ++n) {
    out.b[n][n] = Rational(1) / out.b_hat[n][n];
    for (int i = n - 1; i >= 0; --i) {
      Rational acc(0);
      for (int j = i + 1; j <= n; ++j) acc += out.b[n][j] * out.b_hat[j][i];
      out.b[n][i] = -acc / out.b_hat[i][i];
    }
  }

  out.mutual_inverse = true;
  for (int n = 0; n < size; ++n) {
    MultiPoly rebuilt(kXVars);
    for (int j = 0; j <= n; ++j) rebuilt += M[j] * out.b[n][j];
    if (rebuilt != basis.Q[n]) out.mutual_inverse = false;
    for (int i = 0; i < size; ++i) {
      Rational acc(0);
      for (int j = 0; j < size; ++j) acc += out.b[n][j] * out.b_hat[j][i];
      if (acc != Rational(n == i ? 1 : 0)) out.mutual_inverse = false;
      if (i > n && !out.b_hat[n][i].is_zero()) out.mutual_inverse = false;
    }
  }
  if (!out.mutual_inverse) out.mismatches.push_back("b and b_hat are not mutually inverse lower-triangular matrices");

  out.unit_diagonal = true;
  out.zero_constant_column = true;
  for (int n = 0; n < size; ++n) {
    if (out.b[n][n] != Rational(1) || out.b_hat[n][n] != Rational(1)) out.unit_diagonal = false;
    if (n >= 1 && (!out.b[n][0].is_zero() || !out.b_hat[n][0].is_zero())) out.zero_constant_column = false;
  }
  if (!out.unit_diagonal) out.mismatches.push_back("diagonal entries differ from 1");
  if (!out.zero_constant_column) out.mismatches.push_back("constant column has nonzero entries below row 0");

  out.first_column_formula = true;
  for (int n = 1; n < size; ++n) {
    const Rational expected = spec.c(n + 1) / spec.c(2);
    if (out.b_hat[n][1] != expected) {
      out.first_column_formula = false;
      out.mismatches.push_back("b_hat[" + std::to_string(n) + "][1] = " + out.b_hat[n][1].to_string() +
                               ", formula gives " + expected.to_string());
    }
  }
  out.second_column_formula = true;
  for (int n = 2; n < size; ++n) {
    const Rational expected = second_column_formula(spec, n, t0);
    if (out.b_hat[n][2] != expected) {
      out.second_column_formula = false;
      out.mismatches.push_back("b_hat[" + std::to_string(n) + "][2] = " + out.b_hat[n][2].to_string() +
                               ", formula gives " + expected.to_string());
    }
  }
  return out;
}

OrthogonalityWitness orthogonality_witness(const CumulantSpec& spec, int nmax) {
  OrthogonalityWitness out;
  const int top = std::min(2 * nmax - 1, spec.order());
  for (int sum = 3; sum <= top; ++sum) {
    for (int n = 1; 2 * n < sum; ++n) {
      const int k = sum - n;
      if (k > nmax) continue;
      CrossMomentPoly cm = cross_moment(spec, n, k);
      if (!cm.poly.is_zero()) {
        out.orthogonal = false;
        out.n = n;
        out.k = k;
        out.value = std::move(cm.poly);
        return out;
      }
    }
  }
  return out;
}

}  // namespace levymart
