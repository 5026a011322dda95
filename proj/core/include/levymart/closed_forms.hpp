// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "levymart/reversed_analyzer.hpp"

namespace levymart {

/// Radius of convergence in x of the cumulant series f(x) for a classified
/// case; +infinity for case 2 (entire).
double convergence_radius(const GlowneCase& g);

/// exp(t f(x)) evaluated three ways.
struct ClosedFormValue {
  double x = 0.0;
  double t = 0.0;
  /// Power series of f from ode_series; this is the value callers should use.
  double series = 0.0;
  /// Closed form obtained by integrating psi.
  double derived = 0.0;
  /// Closed form as published; absent for case 2, which has none.
  std::optional<double> printed;
  double derived_rel_error = 0.0;
  /// NaN when the printed form is undefined at (x, t).
  std::optional<double> printed_rel_error;
  /// Relative mismatch of the printed form beyond the tolerance, or printed form undefined.
  bool printed_discrepancy = false;
};

/// Throws DomainError when |x| >= convergence_radius(g) or t <= 0.
ClosedFormValue closed_form_eval(const GlowneCase& g, double x, double t, double tol = 1e-8);

/// exp(t f(x)) from the cumulant series alone, with enough terms for |x|/R.
double series_exponential(const GlowneCase& g, double x, double t);

struct ClosedFormValidation {
  GlowneCase case_info;
  double radius = 0.0;
  double tolerance = 1e-8;
  std::vector<ClosedFormValue> points;
  /// Every derived value within tolerance of the series.
  bool derived_ok = true;
  /// Some printed value differs from the series (or is undefined).
  bool printed_discrepancy = false;
  /// Printed form mismatch summary, e.g. which constant disagrees.
  std::vector<std::string> notes;
};

/// Checks the closed forms at x = +-R/4, +-R/2 (x = +-1/2, +-1 when entire)
/// and t in {1/2, 1, 2}.
ClosedFormValidation validate_closed_forms(const GlowneCase& g, double tol = 1e-8);

/// Case 1 with c_1 = 0 at t = c4/(2 c2^2): density of X_t.
/// Derived: h(y) = sqrt(c2/(2 c4)) / cosh(pi y sqrt(2 c2)/(2 sqrt(c4))).
double case1_density(double c2, double c4, double y);
/// Same with the published normalising constant sqrt(c4)/sqrt(8 c2).
double case1_density_printed(double c2, double c4, double y);
/// Integral of y^n h(y) over |y| <= half_width by adaptive Gauss-Kronrod quadrature.
double density_moment(const std::function<double(double)>& h, int n, double half_width = 40.0);

}  // namespace levymart
