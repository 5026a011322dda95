// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levymart/rational.hpp"

namespace levymart {

/// Cumulants c_1..c_N of X_1, i.e. E exp(x X_t) = exp(t f(x)) with
/// f(x) = sum_k c_k x^k / k!. Indexing is 1-based to match c_k.
class CumulantSpec {
 public:
  /// Throws InvalidArgument unless N >= 2 and c_2 >= 0.
  explicit CumulantSpec(std::vector<Rational> cumulants);

  [[nodiscard]] int order() const { return static_cast<int>(c_.size()); }
  /// c_i for 1 <= i <= order(); TruncationError past the order.
  [[nodiscard]] const Rational& c(int i) const;
  [[nodiscard]] const std::vector<Rational>& values() const { return c_; }

  /// Same spec with c_1 replaced.
  [[nodiscard]] CumulantSpec with_drift(const Rational& c1) const;
  /// First `n` cumulants.
  [[nodiscard]] CumulantSpec truncated(int n) const;

  friend bool operator==(const CumulantSpec&, const CumulantSpec&) = default;

 private:
  std::vector<Rational> c_;
};

struct Atom {
  Rational y;  ///< jump location, nonzero
  Rational w;  ///< Kolmogorov mass at y, positive

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Discrete Kolmogorov measure dK = sigma2 * delta_0 + sum_i w_i delta_{y_i}, plus drift c_1.
class KolmogorovMeasure {
 public:
  /// Throws InvalidArgument on negative sigma2, zero/duplicate locations or non-positive weights.
  KolmogorovMeasure(Rational sigma2, std::vector<Atom> atoms, Rational drift);

  [[nodiscard]] const Rational& sigma2() const { return sigma2_; }
  [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
  [[nodiscard]] const Rational& drift() const { return drift_; }
  /// Total mass sigma2 + sum w_i (equals c_2).
  [[nodiscard]] Rational total_mass() const;

 private:
  Rational sigma2_;
  std::vector<Atom> atoms_;
  Rational drift_;
};

/// c_1 = drift, c_i = sigma2 [i = 2] + sum_j w_j y_j^(i-2).
CumulantSpec cumulants_from_measure(const KolmogorovMeasure& measure, int order);

enum class HankelVerdict { PositiveDefinite, Degenerate, Invalid };
std::string to_string(HankelVerdict verdict);

struct Diagnostics {
  HankelVerdict hankel_verdict = HankelVerdict::Invalid;
  /// Leading principal minors of H[i][j] = c_{i+j+2}.
  std::vector<Rational> hankel_minors;
  /// Number of atoms of dK when the verdict is Degenerate.
  std::optional<int> support_size;
  bool jensen_chain_ok = true;
  /// c_4/c_2 - (c_3/c_2)^2, the variance of dK/c_2. Absent when N < 4 or c_2 = 0.
  std::optional<Rational> variance_gap;
  /// Partial Carleman sum; heuristic only, never a determinacy verdict.
  double carleman_partial_sum = 0.0;
  std::vector<std::string> notes;
};

Diagnostics validate_cumulants(const CumulantSpec& spec);

enum class MeasureClass { Gaussian, PoissonGaussianMixture, General };
std::string to_string(MeasureClass kind);

struct MeasureClassification {
  MeasureClass kind = MeasureClass::General;
  /// Location c_3/c_2 of the single jump atom for the mixture case.
  std::optional<Rational> atom;
  std::optional<Rational> variance_gap;
};

/// Gaussian / single-atom mixture / general. Requires N >= 4; throws
/// RejectedSpec when validate_cumulants reports Invalid.
MeasureClassification classify_measure(const CumulantSpec& spec);

}  // namespace levymart
