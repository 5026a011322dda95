// SPDX-License-Identifier: Apache-2.0
#include "levymart/cumulant_model.hpp"

#include <cmath>
#include <sstream>

#include "levymart/errors.hpp"

namespace levymart {

CumulantSpec::CumulantSpec(std::vector<Rational> cumulants) : c_(std::move(cumulants)) {
  if (c_.size() < 2) throw InvalidArgument("a cumulant spec needs at least c_1 and c_2");
  if (c_[1].sign() < 0) throw InvalidArgument("c_2 is a variance rate and must be non-negative");
}

const Rational& CumulantSpec::c(int i) const {
  if (i < 1) throw InvalidArgument("cumulants are indexed from 1");
  if (i > order()) {
    throw TruncationError("cumulant c_" + std::to_string(i) + " requested but the input stops at c_" +
                          std::to_string(order()));
  }
  return c_[static_cast<std::size_t>(i - 1)];
}

CumulantSpec CumulantSpec::with_drift(const Rational& c1) const {
  std::vector<Rational> copy = c_;
  copy[0] = c1;
  return CumulantSpec(std::move(copy));
}

CumulantSpec CumulantSpec::truncated(int n) const {
  if (n > order()) throw TruncationError("cannot truncate a spec to a longer order");
  return CumulantSpec(std::vector<Rational>(c_.begin(), c_.begin() + n));
}

KolmogorovMeasure::KolmogorovMeasure(Rational sigma2, std::vector<Atom> atoms, Rational drift)
    : sigma2_(std::move(sigma2)), atoms_(std::move(atoms)), drift_(std::move(drift)) {
  if (sigma2_.sign() < 0) throw InvalidArgument("Gaussian mass sigma2 must be non-negative");
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].y.is_zero()) throw InvalidArgument("atom locations must be nonzero (mass at 0 is sigma2)");
    if (atoms_[i].w.sign() <= 0) throw InvalidArgument("atom weights must be positive");
    for (std::size_t j = 0; j < i; ++j) {
      if (atoms_[j].y == atoms_[i].y) throw InvalidArgument("atom locations must be pairwise distinct");
    }
  }
}

Rational KolmogorovMeasure::total_mass() const {
  Rational total = sigma2_;
  for (const auto& a : atoms_) total += a.w;
  return total;
}

CumulantSpec cumulants_from_measure(const KolmogorovMeasure& measure, int order) {
  if (order < 2) throw InvalidArgument("cumulant order must be at least 2");
  std::vector<Rational> c(static_cast<std::size_t>(order));
  c[0] = measure.drift();
  for (int i = 2; i <= order; ++i) {
    Rational ci = i == 2 ? measure.sigma2() : Rational(0);
    for (const auto& a : measure.atoms()) ci += a.w * pow(a.y, static_cast<unsigned>(i - 2));
    c[static_cast<std::size_t>(i - 1)] = ci;
  }
  return CumulantSpec(std::move(c));
}

std::string to_string(HankelVerdict verdict) {
  switch (verdict) {
    case HankelVerdict::PositiveDefinite:
      return "positive-definite";
    case HankelVerdict::Degenerate:
      return "degenerate";
    case HankelVerdict::Invalid:
      return "invalid";
  }
  return "invalid";
}

std::string to_string(MeasureClass kind) {
  switch (kind) {
    case MeasureClass::Gaussian:
      return "GAUSSIAN";
    case MeasureClass::PoissonGaussianMixture:
      return "POISSON_GAUSSIAN_MIXTURE";
    case MeasureClass::General:
      return "GENERAL";
  }
  return "GENERAL";
}

namespace {

using Matrix = std::vector<std::vector<Rational>>;

Rational determinant(Matrix a) {
  const std::size_t n = a.size();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (a[row][col].is_zero()) continue;
      const Rational factor = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
    }
  }
  return det;
}

// Solves a x = b for a nonsingular square system.
std::vector<Rational> solve(Matrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (a[pivot][col].is_zero()) ++pivot;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col].is_zero()) continue;
      const Rational factor = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
      b[row] -= factor * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

// Moments of dK: s_j = c_{j+2}, j = 0..N-2.
std::vector<Rational> kolmogorov_moments(const CumulantSpec& spec) {
  std::vector<Rational> s;
  for (int i = 2; i <= spec.order(); ++i) s.push_back(spec.c(i));
  return s;
}

// Whether the whole moment list obeys the linear recursion of a measure
// supported on `r` points, given that the r x r leading Hankel block is
// positive definite.
bool recursively_generated(const std::vector<Rational>& s, std::size_t r) {
  if (r == 0) {
    for (const auto& v : s) {
      if (!v.is_zero()) return false;
    }
    return true;
  }
  Matrix h(r, std::vector<Rational>(r));
  std::vector<Rational> rhs(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) h[i][j] = s[i + j];
    rhs[i] = -s[i + r];
  }
  const std::vector<Rational> a = solve(h, rhs);
  for (std::size_t j = 0; j + r < s.size(); ++j) {
    Rational acc = s[j + r];
    for (std::size_t i = 0; i < r; ++i) acc += a[i] * s[j + i];
    if (!acc.is_zero()) return false;
  }
  return true;
}

}  // namespace

Diagnostics validate_cumulants(const CumulantSpec& spec) {
  Diagnostics d;
  const std::vector<Rational> s = kolmogorov_moments(spec);
  const std::size_t dim = static_cast<std::size_t>(spec.order() / 2);

  std::optional<std::size_t> first_nonpositive;
  for (std::size_t m = 1; m <= dim; ++m) {
    Matrix h(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) h[i][j] = s[i + j];
    }
    d.hankel_minors.push_back(determinant(std::move(h)));
    if (!first_nonpositive && d.hankel_minors.back().sign() <= 0) first_nonpositive = m;
  }

  if (!first_nonpositive) {
    d.hankel_verdict = HankelVerdict::PositiveDefinite;
  } else if (d.hankel_minors[*first_nonpositive - 1].sign() < 0) {
    d.hankel_verdict = HankelVerdict::Invalid;
    d.notes.push_back("Hankel leading minor " + std::to_string(*first_nonpositive) +
                      " is negative: not the moment sequence of a Kolmogorov measure");
  } else {
    const std::size_t atoms = *first_nonpositive - 1;
    if (recursively_generated(s, atoms)) {
      d.hankel_verdict = HankelVerdict::Degenerate;
      d.support_size = static_cast<int>(atoms);
      d.notes.push_back("dK is supported on " + std::to_string(atoms) + " point(s)");
    } else {
      d.hankel_verdict = HankelVerdict::Invalid;
      d.notes.push_back("Hankel minor " + std::to_string(*first_nonpositive) +
                        " vanishes but the higher cumulants are not generated by a " + std::to_string(atoms) +
                        "-point measure");
    }
  }

  const Rational& c2 = spec.c(2);
  if (c2.is_zero()) {
    d.notes.push_back("c_2 = 0: Jensen chain and variance gap are vacuous");
  } else {
    std::vector<Rational> ratios;  // c_{2k+2}/c_2, k >= 1
    for (int k = 1; 2 * k + 2 <= spec.order(); ++k) ratios.push_back(spec.c(2 * k + 2) / c2);
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      if (ratios[i].sign() < 0) {
        d.jensen_chain_ok = false;
        break;
      }
      if (i + 1 < ratios.size()) {
        // (r_k)^(1/2k) <= (r_{k+1})^(1/(2k+2))  <=>  r_k^(k+1) <= r_{k+1}^k
        const auto k = static_cast<unsigned>(i + 1);
        if (pow(ratios[i], k + 1) > pow(ratios[i + 1], k)) {
          d.jensen_chain_ok = false;
          break;
        }
      }
    }
    if (spec.order() >= 4) {
      const Rational chi3 = spec.c(3) / c2;
      d.variance_gap = spec.c(4) / c2 - chi3 * chi3;
    }
  }

  double carleman = 0.0;
  bool skipped = false;
  for (int n = 1; 2 * n <= spec.order(); ++n) {
    const double c2n = spec.c(2 * n).to_double();
    if (c2n <= 0.0) {
      skipped = true;
      continue;
    }
    carleman += std::pow(c2n, -1.0 / (2.0 * n));
  }
  d.carleman_partial_sum = carleman;
  std::ostringstream note;
  note << "Carleman partial sum over even cumulants up to c_" << (spec.order() / 2) * 2
       << " is heuristic only; divergence cannot be decided from finitely many terms";
  if (skipped) note << " (non-positive even cumulants skipped)";
  d.notes.push_back(note.str());
  return d;
}

MeasureClassification classify_measure(const CumulantSpec& spec) {
  if (spec.order() < 4) throw InvalidArgument("measure classification needs cumulants up to c_4");
  const Diagnostics diag = validate_cumulants(spec);
  if (diag.hankel_verdict == HankelVerdict::Invalid) {
    throw RejectedSpec("cumulants do not come from any Kolmogorov measure");
  }
  MeasureClassification out;
  out.variance_gap = diag.variance_gap;
  if (spec.c(2).is_zero()) {
    out.kind = MeasureClass::Gaussian;
    return out;
  }
  for (int k = 2; 2 * k <= spec.order(); ++k) {
    if (spec.c(2 * k).is_zero()) {
      out.kind = MeasureClass::Gaussian;
      return out;
    }
  }
  if (diag.variance_gap && diag.variance_gap->is_zero()) {
    if (spec.c(3).is_zero()) {
      out.kind = MeasureClass::Gaussian;
    } else {
      out.kind = MeasureClass::PoissonGaussianMixture;
      out.atom = spec.c(3) / spec.c(2);
    }
    return out;
  }
  out.kind = MeasureClass::General;
  return out;
}

}  // namespace levymart
