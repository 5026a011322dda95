// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levymart/cumulant_model.hpp"
#include "levymart/multipoly.hpp"

namespace levymart {

/// Monic orthogonal polynomials of the law of X_{t0}, built by Gram-Schmidt
/// on 1, x, x^2, ... with the exact inner product <p,q> = E p(X_t0) q(X_t0).
struct OrthogonalBasis {
  Rational t0;
  /// Q_0..Q_m over {x}; m = nmax unless the construction stopped early.
  std::vector<MultiPoly> Q;
  /// E Q_n(X_t0)^2.
  std::vector<Rational> norms;
  /// Three-term recurrence Q_{n+1} = (x - a_n) Q_n - b_n Q_{n-1}; a_n for n < size()-1,
  /// b_n for n < size() with b_0 unused (0).
  std::vector<Rational> a;
  std::vector<Rational> b;
  /// Degree at which the norm vanished (or went negative); the basis stops below it.
  std::optional<int> degenerate_at;
  std::string degeneracy_reason;

  [[nodiscard]] int size() const { return static_cast<int>(Q.size()); }
};

/// Throws InvalidArgument for t0 <= 0 and TruncationError when the cumulant list has fewer than 2 nmax cumulants.
OrthogonalBasis orthogonal_basis(const CumulantSpec& spec, const Rational& t0, int nmax);

/// Exact inner product of two polynomials over {x} under the law of X_t0.
Rational inner_product(const CumulantSpec& spec, const Rational& t0, const MultiPoly& p, const MultiPoly& q);

/// Q_{n+1} = (x - a_n) Q_n - b_n Q_{n-1} holds exactly with every b_n > 0.
bool favard_consistent(const OrthogonalBasis& basis);

struct ConnectionCoeffs {
  Rational t0;
  /// Q_n = sum_j b[n][j] M_j(x,t0).
  std::vector<std::vector<Rational>> b;
  /// M_n(x,t0) = sum_j b_hat[n][j] Q_j.
  std::vector<std::vector<Rational>> b_hat;
  bool mutual_inverse = false;
  bool unit_diagonal = false;
  bool zero_constant_column = false;
  /// b_hat[n][1] = c_{n+1}/c_2 for n >= 1.
  bool first_column_formula = false;
  /// b_hat[n][2] against its closed form, n >= 2.
  bool second_column_formula = false;
  std::vector<std::string> mismatches;
  /// False when the orthogonal basis stopped before nmax.
  bool complete = false;

  [[nodiscard]] bool all_pass() const {
    return mutual_inverse && unit_diagonal && zero_constant_column && first_column_formula && second_column_formula;
  }
};

ConnectionCoeffs connection_coeffs(const CumulantSpec& spec, const Rational& t0, int nmax);

/// Closed form of b_hat[n][2](t).
Rational second_column_formula(const CumulantSpec& spec, int n, const Rational& t);

struct OrthogonalityWitness {
  bool orthogonal = true;
  int n = 0;
  int k = 0;
  /// E[M_n M_k](t) for the witness pair.
  MultiPoly value;
};

/// Smallest pair (ordered by n + k, then n) with n < k <= nmax and E[M_n M_k] != 0.
OrthogonalityWitness orthogonality_witness(const CumulantSpec& spec, int nmax);

}  // namespace levymart
