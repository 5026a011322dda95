// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "levymart/cumulant_model.hpp"
#include "levymart/rational_function.hpp"

namespace levymart {

/// Whether mu(t) M_k(X_t, t) can be a reversed martingale for some function mu.
struct ReversedVerdict {
  int k = 0;
  bool feasible = false;
  /// mu(t) = 1/E[M_k^2](t).
  std::optional<RationalFunction> mu;
  /// Indices l (l != k, l + k <= order) where mu(t) E[M_k M_l](t) is not constant.
  std::vector<int> nonconstant_l;
  /// c_j that must vanish: j = max(3, k-1), ..., 2k-1.
  std::vector<int> forced_zero_cumulants;
  /// Index i of a nonzero cumulant that rules the process out.
  std::optional<int> witness;
  /// For k >= 3: no c_i (3 <= i <= order) is nonzero.
  bool cascade_ok = true;
  std::vector<std::string> notes;
};

/// Exact constancy test of mu(t) E[M_k M_l](t) for every l the cumulant list supports,
/// combined with the forced-zero cascade for k >= 3.
/// Throws InvalidArgument for k < 2 and TruncationError when order < 2k.
ReversedVerdict reversed_feasibility(const CumulantSpec& spec, int k);

/// mu_1, mu_2 making mu_1 M_1 + mu_2 M_2 satisfy the l = 1, 2 constancy
/// conditions with constants beta and 1:
///   mu_2 = (c2 - beta c3) / (t (2 c2^3 t + c2 c4 - c3^2)),
///   mu_1 = (beta (2 c2^2 t + c4) - c3) / (t (2 c2^3 t + c2 c4 - c3^2)).
struct MuFunctions {
  RationalFunction mu1;
  RationalFunction mu2;
};
/// Throws DegenerateSpec when the common denominator vanishes identically.
MuFunctions mu_functions(const Rational& c2, const Rational& c3, const Rational& c4, const Rational& beta);

/// For l = 1..lmax: mu_1(t) E[M_1 M_l](t) + mu_2(t) E[M_2 M_l](t), each entry
/// paired with whether it is constant in t.
std::vector<std::pair<RationalFunction, bool>> two_term_constancy(const CumulantSpec& spec, const Rational& beta,
                                                                  int lmax);

/// The five families of processes for which mu_1 M_1 + mu_2 M_2 can be a
/// reversed martingale, with chi_i = c_i/c_2 and v = chi_4 - chi_3^2:
///   1: c_3 = 0, v > 0         (symmetric, log-cos exponent)
///   2: v = 0                  (single jump size c_3/c_2, or Gaussian)
///   3: 2v = chi_3^2, c_3 != 0 (shifted gamma)
///   4: 2v > chi_3^2           (trigonometric)
///   5: 2v < chi_3^2           (hyperbolic)
/// Equalities are tested before inequalities.
struct GlowneCase {
  int case_id = 0;
  /// Case number selected by the conditions as published, which compare
  /// chi_4 (not v) with chi_3^2 and so disagree with case_id off the Gaussian/Poisson line.
  int printed_case_id = 0;
  Rational c1;
  Rational c2;
  Rational c3;
  Rational c4;
  Rational chi3;
  Rational chi4;
  Rational v;
  /// alpha = sqrt(|2v - chi_3^2|)/2 for cases 4 and 5; exact when rational.
  std::optional<Rational> alpha_exact;
  double alpha = 0.0;
  /// v >= 0, i.e. c_2 c_4 >= c_3^2: necessary for a genuine Kolmogorov measure.
  bool valid_measure = true;
  std::vector<std::string> notes;
};

/// Throws InvalidArgument when c2 <= 0.
GlowneCase glowne_classify(const Rational& c2, const Rational& c3, const Rational& c4, const Rational& c1 = Rational(0));

/// Cumulants forced by the two-term reversed-martingale condition:
/// chi_{l+2} = chi_3 chi_{l+1} + (v/2) sum_{k=1}^{l-1} C(l,k) chi_{k+1} chi_{l+1-k}, c_i = c_2 chi_i.
/// Requires c2 > 0 and N >= 4.
CumulantSpec cumulant_closure(const Rational& c2, const Rational& c3, const Rational& c4, int N,
                              const Rational& c1 = Rational(0));

/// Power-series coefficients a_0..a_n of psi solving psi'' = chi_3 psi' + v psi' psi, psi(0) = 0, psi'(0) = 1.
std::vector<Rational> psi_series(const Rational& chi3, const Rational& v, int n);

/// Same cumulants read off psi = (f' - c_1)/c_2: chi_{k+1} = k! [r^k] psi.
CumulantSpec ode_series(const Rational& c2, const Rational& c3, const Rational& c4, int N,
                        const Rational& c1 = Rational(0));

/// T_1..T_kmax via T_{k+1} = sum_{s=1}^k C(2k, 2s-1) T_s T_{k-s+1}.
std::vector<mpz_class> tangent_numbers(int kmax);
/// The recursion with the published binomial C(2k, 2k-1) in every term; kept for the formula audit.
std::vector<mpz_class> tangent_numbers_published(int kmax);
/// T_j = chi_{2j} read from cumulant_closure(1, 0, 2, 2 kmax).
std::vector<mpz_class> tangent_numbers_from_closure(int kmax);

}  // namespace levymart
